//! Enumerations of complements: the inputs of C_N, TC_N and C#max.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::ProblemError;
use crate::coding::Code;
use crate::words::{Symbol, Word};

/// What an enumeration emits after its explicit part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tail<V> {
    /// Pause forever.
    Pauses,
    /// The values `0, 1, 2, …` in code order, skipping exactly `skip`.
    AllExcept(BTreeSet<V>),
    /// The values whose index `n` has `mask(n)` set, in increasing order;
    /// pauses once they run out. Presents ranges whose complement is
    /// infinite and co-infinite.
    Mask(Word<bool>),
}

/// `explicit` followed by `tail`. Denotes the target set `A = ℕ ∖ range`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enumeration<V = u64> {
    pub explicit: Vec<Symbol<V>>,
    pub tail: Tail<V>,
}

/// The set `A` named by an enumeration of its complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetSet<V> {
    Finite(BTreeSet<V>),
    CoFinite { excluded: BTreeSet<V> },
    /// `{ v : !mask(index v) } ∖ excluded`.
    Masked { mask: Word<bool>, excluded: BTreeSet<V> },
}

impl<V: Code> Enumeration<V> {
    pub fn new(explicit: Vec<Symbol<V>>, tail: Tail<V>) -> Self {
        Enumeration { explicit, tail }
    }

    pub fn all_except(skip: impl IntoIterator<Item = V>) -> Self {
        Enumeration::new(Vec::new(), Tail::AllExcept(skip.into_iter().collect()))
    }

    pub fn then_pause(values: impl IntoIterator<Item = V>) -> Self {
        Enumeration::new(values.into_iter().map(Symbol::Value).collect(), Tail::Pauses)
    }

    /// An enumeration whose range is exactly `{from_index(n) : mask(n)}`,
    /// using the simplest tail rule that presents it.
    pub fn from_mask(mask: &Word<bool>) -> Self {
        let mask = mask.canonicalize();
        let idx = |i: usize| V::from_index(i as u64);
        if mask.period().iter().all(|&b| b) {
            let skip = mask.prefix().iter().enumerate().filter(|(_, b)| !**b);
            Enumeration::all_except(skip.map(|(i, _)| idx(i)))
        } else if mask.period().iter().all(|&b| !b) {
            let hits = mask.prefix().iter().enumerate().filter(|(_, b)| **b);
            Enumeration::then_pause(hits.map(|(i, _)| idx(i)))
        } else {
            Enumeration::new(Vec::new(), Tail::Mask(mask))
        }
    }

    /// The same stream with a mask tail replaced by a skip or pause tail
    /// whenever the mask is eventually constant.
    pub fn normalized(&self) -> Self {
        match &self.tail {
            Tail::Mask(mask) => {
                let tail = Enumeration::<V>::from_mask(mask);
                let mut explicit = self.explicit.clone();
                explicit.extend(tail.explicit);
                Enumeration::new(explicit, tail.tail)
            }
            _ => self.clone(),
        }
    }

    fn explicit_values(&self) -> BTreeSet<V> {
        self.explicit.iter().filter_map(|s| s.value().cloned()).collect()
    }

    pub fn target_set(&self) -> TargetSet<V> {
        let excluded = self.explicit_values();
        match &self.tail {
            Tail::Pauses => TargetSet::CoFinite { excluded },
            Tail::AllExcept(skip) => {
                TargetSet::Finite(skip.difference(&excluded).cloned().collect())
            }
            Tail::Mask(mask) => TargetSet::Masked {
                mask: mask.clone(),
                excluded,
            },
        }
    }

    /// The `s`-th entry of the denoted stream.
    pub fn at(&self, s: u64) -> Symbol<V> {
        let e = self.explicit.len() as u64;
        if s < e {
            return self.explicit[s as usize].clone();
        }
        let t = s - e;
        match &self.tail {
            Tail::Pauses => Symbol::Pause,
            Tail::AllExcept(skip) => {
                // the t-th index not taken by skip
                let mut n = t;
                for v in skip {
                    match v.index() {
                        Some(i) if i <= n => n += 1,
                        _ => break,
                    }
                }
                Symbol::Value(V::from_index(n))
            }
            Tail::Mask(mask) => nth_set(mask, t).map_or(Symbol::Pause, |n| Symbol::Value(V::from_index(n))),
        }
    }

    pub fn stream_prefix(&self, len: usize) -> Vec<Symbol<V>> {
        (0..len as u64).map(|s| self.at(s)).collect()
    }

    /// Is `v` ever emitted?
    pub fn in_range(&self, v: &V) -> bool {
        !self.target_set().contains(v)
    }

    /// First stage at which `v` is emitted.
    pub fn emission_stage(&self, v: &V) -> Option<u64> {
        if let Some(i) = self.explicit.iter().position(|s| s.value() == Some(v)) {
            return Some(i as u64);
        }
        let e = self.explicit.len() as u64;
        let n = v.index()?;
        match &self.tail {
            Tail::Pauses => None,
            Tail::AllExcept(skip) => {
                if skip.contains(v) {
                    return None;
                }
                let before = skip.iter().filter(|x| x.index().is_some_and(|i| i < n)).count();
                Some(e + n - before as u64)
            }
            Tail::Mask(mask) => mask.at(n).then(|| e + mask.count_below(&true, n)),
        }
    }
}

/// Position of the `t`-th set entry of `mask`.
fn nth_set(mask: &Word<bool>, t: u64) -> Option<u64> {
    let p = mask.prefix().len() as u64;
    let in_prefix = mask.count_below(&true, p);
    if t < in_prefix {
        return (0..p).filter(|&n| *mask.at(n)).nth(t as usize);
    }
    let per = mask.period().iter().filter(|b| **b).count() as u64;
    if per == 0 {
        return None;
    }
    let r = t - in_prefix;
    let q = mask.period().len() as u64;
    let offset = (0..q).filter(|&i| mask.period()[i as usize]).nth((r % per) as usize)?;
    Some(p + (r / per) * q + offset)
}

impl<V: Code> TargetSet<V> {
    pub fn contains(&self, v: &V) -> bool {
        match self {
            TargetSet::Finite(a) => a.contains(v),
            TargetSet::CoFinite { excluded } => !excluded.contains(v),
            TargetSet::Masked { mask, excluded } => {
                !excluded.contains(v) && v.index().is_none_or(|n| !*mask.at(n))
            }
        }
    }

    /// Members in increasing order, up to `limit` of them. Members whose
    /// index exceeds `u64` are omitted from the co-finite and masked cases.
    pub fn members(&self, limit: usize) -> Vec<V> {
        match self {
            TargetSet::Finite(a) => a.iter().take(limit).cloned().collect(),
            TargetSet::CoFinite { .. } | TargetSet::Masked { .. } => {
                // an infinite target always has `limit` members; a finite
                // masked one lives below the search span
                let span = if self.is_finite() { self.search_span() } else { u64::MAX };
                (0..span)
                    .map(V::from_index)
                    .filter(|v| self.contains(v))
                    .take(limit)
                    .collect()
            }
        }
    }

    /// Every member of a finite masked target has index below this bound.
    fn search_span(&self) -> u64 {
        match self {
            TargetSet::Masked { mask, .. } => mask.prefix().len() as u64,
            _ => 0,
        }
    }

    pub fn min(&self) -> Option<V> {
        self.members(1).into_iter().next()
    }

    pub fn is_empty(&self) -> bool {
        self.min().is_none()
    }

    pub fn is_finite(&self) -> bool {
        match self {
            TargetSet::Finite(_) => true,
            TargetSet::CoFinite { .. } => false,
            TargetSet::Masked { mask, .. } => mask.period().iter().all(|&b| b),
        }
    }
}

/// `min(A)`, or 0 when `A` is empty.
pub fn tcn_solve(e: &Enumeration) -> u64 {
    e.target_set().min().unwrap_or(0)
}

/// `s ∈ A`, or anything when `A` is empty.
pub fn tcn_validate(e: &Enumeration, s: u64) -> bool {
    let a = e.target_set();
    a.is_empty() || a.contains(&s)
}

pub fn cn_solve(e: &Enumeration) -> Result<u64, ProblemError> {
    e.target_set().min().ok_or(ProblemError::EmptyTarget)
}

pub fn cn_validate(e: &Enumeration, s: u64) -> bool {
    e.target_set().contains(&s)
}
