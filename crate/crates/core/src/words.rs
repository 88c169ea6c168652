//! Ultimately periodic words: finite presentations of infinite sequences.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use thiserror::Error;

/// An entry of a sequence that may contain a "no output" step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol<V = u64> {
    Value(V),
    Pause,
}

impl<V> Symbol<V> {
    pub fn value(&self) -> Option<&V> {
        match self {
            Symbol::Value(v) => Some(v),
            Symbol::Pause => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("period must be nonempty")]
    EmptyPeriod,
}

/// `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word<S> {
    prefix: Vec<S>,
    period: Vec<S>,
}

/// Where a value occurs in a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OccurrenceInfo {
    /// The value occurs in the period block; `first` is its first position.
    Infinite { first: u64 },
    /// Every occurrence, in increasing order (possibly none).
    Finite { positions: Vec<u64> },
}

impl OccurrenceInfo {
    pub fn is_infinite(&self) -> bool {
        matches!(self, OccurrenceInfo::Infinite { .. })
    }

    pub fn first(&self) -> Option<u64> {
        match self {
            OccurrenceInfo::Infinite { first } => Some(*first),
            OccurrenceInfo::Finite { positions } => positions.first().copied(),
        }
    }
}

impl<S: Clone + Eq> Word<S> {
    pub fn new(prefix: Vec<S>, period: Vec<S>) -> Result<Self, WordError> {
        if period.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        Ok(Word { prefix, period })
    }

    pub fn periodic(period: Vec<S>) -> Result<Self, WordError> {
        Self::new(Vec::new(), period)
    }

    pub fn constant(s: S) -> Self {
        Word {
            prefix: Vec::new(),
            period: alloc::vec![s],
        }
    }

    pub fn prefix(&self) -> &[S] {
        &self.prefix
    }

    pub fn period(&self) -> &[S] {
        &self.period
    }

    /// `|prefix| + |period|`.
    pub fn size(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn at(&self, n: u64) -> &S {
        let p = self.prefix.len() as u64;
        if n < p {
            &self.prefix[n as usize]
        } else {
            let q = self.period.len() as u64;
            &self.period[((n - p) % q) as usize]
        }
    }

    pub fn stream_prefix(&self, len: usize) -> Vec<S> {
        (0..len as u64).map(|n| self.at(n).clone()).collect()
    }

    pub fn map<T: Clone + Eq>(&self, mut f: impl FnMut(&S) -> T) -> Word<T> {
        Word {
            prefix: self.prefix.iter().map(&mut f).collect(),
            period: self.period.iter().map(&mut f).collect(),
        }
    }

    /// The presentation with minimal period length and, among those,
    /// minimal prefix length, denoting the same stream.
    pub fn canonicalize(&self) -> Self {
        let p = self.prefix.len();
        let q = self.period.len();
        for cand_q in 1..=q {
            // the minimal period of the eventual stream divides q
            if q % cand_q != 0 {
                continue;
            }
            let window = p + q;
            for cand_p in 0..=p {
                let ok = (cand_p..window).all(|n| {
                    let m = cand_p + (n - cand_p) % cand_q;
                    self.at(n as u64) == self.at(m as u64)
                });
                if ok {
                    let cand = Word {
                        prefix: self.stream_prefix(cand_p),
                        period: (cand_p..cand_p + cand_q)
                            .map(|n| self.at(n as u64).clone())
                            .collect(),
                    };
                    return cand;
                }
            }
        }
        unreachable!("the presentation itself is always a candidate")
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicalize() == *self
    }

    /// Occurrences of `v`. Correct on any presentation: a value absent from
    /// the period occurs only inside the prefix.
    pub fn occurrence_info(&self, v: &S) -> OccurrenceInfo {
        if self.period.contains(v) {
            OccurrenceInfo::Infinite {
                first: self.next_occurrence(v, 0).expect("value occurs in the period"),
            }
        } else {
            OccurrenceInfo::Finite {
                positions: self.prefix_positions(v),
            }
        }
    }

    /// First position `≥ from` holding `v`.
    pub fn next_occurrence(&self, v: &S, from: u64) -> Option<u64> {
        let p = self.prefix.len() as u64;
        let q = self.period.len() as u64;
        let end = from.max(p) + q;
        (from..end).find(|&n| self.at(n) == v)
    }

    /// Number of positions `< end` holding `v`.
    pub fn count_below(&self, v: &S, end: u64) -> u64 {
        let p = self.prefix.len() as u64;
        let in_prefix = self.prefix[..end.min(p) as usize]
            .iter()
            .filter(|s| *s == v)
            .count() as u64;
        if end <= p {
            return in_prefix;
        }
        let q = self.period.len() as u64;
        let per_block = self.period.iter().filter(|s| *s == v).count() as u64;
        let tail = end - p;
        let partial = self.period[..(tail % q) as usize]
            .iter()
            .filter(|s| *s == v)
            .count() as u64;
        in_prefix + (tail / q) * per_block + partial
    }

    fn prefix_positions(&self, v: &S) -> Vec<u64> {
        self.prefix
            .iter()
            .enumerate()
            .filter(|(_, s)| *s == v)
            .map(|(i, _)| i as u64)
            .collect()
    }
}

impl<S: Clone + Ord> Word<S> {
    /// The values occurring infinitely often: exactly those in the period.
    pub fn infinite_values(&self) -> BTreeSet<S> {
        self.period.iter().cloned().collect()
    }

    /// Every value that occurs at all.
    pub fn values(&self) -> BTreeSet<S> {
        self.prefix.iter().chain(&self.period).cloned().collect()
    }
}

/// Interleaves a fixed separator before every symbol: `sep, w(0), sep, w(1), …`.
pub fn interleave<S: Clone + Eq>(sep: S, w: &Word<S>) -> Word<S> {
    let spread = |xs: &[S]| -> Vec<S> {
        xs.iter().flat_map(|x| [sep.clone(), x.clone()]).collect()
    };
    Word {
        prefix: spread(&w.prefix),
        period: spread(&w.period),
    }
}
