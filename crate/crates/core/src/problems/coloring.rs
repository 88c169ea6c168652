//! Finite colorings of ℕ and the tail-bound problems ERT, ERT(j), ECT and
//! their minimal variants.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::ProblemError;
use crate::coding::{pair, unpair};
use crate::words::{OccurrenceInfo, Word};

/// Occurrence data for every color that occurs at least once.
pub type Profile = BTreeMap<u64, OccurrenceInfo>;

/// A color sequence `ℕ → ℕ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ColorSeq {
    Lasso(Word<u64>),
    /// `r(π(n,m)) = π(l(n), r(m))` where `l` is `left` with position 0
    /// recolored to `left_head` (likewise `r`). Not ultimately periodic in
    /// general, but every tail question about it reduces to its components.
    Paired(Box<PairedSeq>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairedSeq {
    pub left: ColorSeq,
    pub left_head: u64,
    pub right: ColorSeq,
    pub right_head: u64,
}

impl ColorSeq {
    pub fn at(&self, n: u64) -> u64 {
        match self {
            ColorSeq::Lasso(w) => *w.at(n),
            ColorSeq::Paired(p) => {
                let (a, b) = unpair(n);
                let l = if a == 0 { p.left_head } else { p.left.at(a) };
                let r = if b == 0 { p.right_head } else { p.right.at(b) };
                pair(l, r)
            }
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<u64> {
        (0..len as u64).map(|n| self.at(n)).collect()
    }

    pub fn as_lasso(&self) -> Option<&Word<u64>> {
        match self {
            ColorSeq::Lasso(w) => Some(w),
            ColorSeq::Paired(_) => None,
        }
    }

    pub fn profile(&self) -> Profile {
        match self {
            ColorSeq::Lasso(w) => w
                .values()
                .into_iter()
                .map(|v| (v, w.occurrence_info(&v)))
                .collect(),
            ColorSeq::Paired(p) => {
                let left = recolor_head(&p.left, p.left_head);
                let right = recolor_head(&p.right, p.right_head);
                let mut out = Profile::new();
                for (&c0, i0) in &left {
                    for (&c1, i1) in &right {
                        let info = match (i0, i1) {
                            (
                                OccurrenceInfo::Finite { positions: a },
                                OccurrenceInfo::Finite { positions: b },
                            ) => {
                                let mut positions: Vec<u64> = a
                                    .iter()
                                    .flat_map(|&n| b.iter().map(move |&m| pair(n, m)))
                                    .collect();
                                positions.sort_unstable();
                                OccurrenceInfo::Finite { positions }
                            }
                            _ => OccurrenceInfo::Infinite {
                                // π is monotone, so the least pair of first
                                // occurrences is the first occurrence
                                first: pair(i0.first().unwrap(), i1.first().unwrap()),
                            },
                        };
                        out.insert(pair(c0, c1), info);
                    }
                }
                out
            }
        }
    }

    /// First position `≥ from` with color `v`.
    pub fn next_occurrence(&self, v: u64, from: u64) -> Option<u64> {
        match self {
            ColorSeq::Lasso(w) => w.next_occurrence(&v, from),
            ColorSeq::Paired(_) => match self.profile().get(&v)? {
                OccurrenceInfo::Finite { positions } => {
                    positions.iter().copied().find(|&n| n >= from)
                }
                OccurrenceInfo::Infinite { .. } => (from..).find(|&n| self.at(n) == v),
            },
        }
    }

    /// Largest position holding a finitely-occurring color.
    pub fn last_finite_position(&self) -> Option<u64> {
        finite_positions(&self.profile()).max()
    }
}

fn finite_positions(profile: &Profile) -> impl Iterator<Item = u64> + '_ {
    profile.values().filter_map(|info| match info {
        OccurrenceInfo::Finite { positions } => positions.last().copied(),
        OccurrenceInfo::Infinite { .. } => None,
    })
}

/// Profile of `seq` with position 0 recolored to the fresh color `head`.
fn recolor_head(seq: &ColorSeq, head: u64) -> Profile {
    let mut out = Profile::new();
    for (c, info) in seq.profile() {
        match info {
            OccurrenceInfo::Finite { positions } => {
                let rest: Vec<u64> = positions.into_iter().filter(|&n| n != 0).collect();
                if !rest.is_empty() {
                    out.insert(c, OccurrenceInfo::Finite { positions: rest });
                }
            }
            OccurrenceInfo::Infinite { first } => {
                let first = if first == 0 {
                    seq.next_occurrence(c, 1).expect("infinite color recurs")
                } else {
                    first
                };
                out.insert(c, OccurrenceInfo::Infinite { first });
            }
        }
    }
    out.insert(
        head,
        OccurrenceInfo::Finite {
            positions: alloc::vec![0],
        },
    );
    out
}

/// A coloring `f: ℕ → k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    pub seq: ColorSeq,
    pub palette: u64,
}

impl Coloring {
    pub fn lasso(word: Word<u64>, palette: u64) -> Result<Self, ProblemError> {
        let c = Coloring {
            seq: ColorSeq::Lasso(word),
            palette,
        };
        c.check()?;
        Ok(c)
    }

    pub fn at(&self, n: u64) -> u64 {
        self.seq.at(n)
    }

    pub fn word(&self) -> Option<&Word<u64>> {
        self.seq.as_lasso()
    }

    pub fn profile(&self) -> Profile {
        self.seq.profile()
    }

    pub fn check(&self) -> Result<(), ProblemError> {
        if self.palette == 0 {
            return Err(ProblemError::EmptyPalette);
        }
        check_heads(&self.seq)?;
        if let Some(&color) = self.profile().keys().next_back() {
            if color >= self.palette {
                return Err(ProblemError::ColorOutOfRange {
                    color,
                    palette: self.palette,
                });
            }
        }
        Ok(())
    }

    /// A bound at which only infinitely-occurring colors remain.
    pub fn settled_from(&self) -> u64 {
        self.seq.last_finite_position().map_or(0, |n| n + 1)
    }
}

fn check_heads(seq: &ColorSeq) -> Result<(), ProblemError> {
    if let ColorSeq::Paired(p) = seq {
        check_heads(&p.left)?;
        check_heads(&p.right)?;
        for (side, head) in [(&p.left, p.left_head), (&p.right, p.right_head)] {
            if side.profile().contains_key(&head) {
                return Err(ProblemError::HeadNotFresh { color: head });
            }
        }
    }
    Ok(())
}

fn count_from(positions: &[u64], b: u64) -> usize {
    positions.iter().filter(|&&n| n >= b).count()
}

/// Every color occurring at or after `b` occurs there at least `j` times.
pub fn ertj_validate(c: &Coloring, j: u64, b: u64) -> bool {
    c.profile().values().all(|info| match info {
        OccurrenceInfo::Infinite { .. } => true,
        OccurrenceInfo::Finite { positions } => {
            let n = count_from(positions, b) as u64;
            n == 0 || n >= j
        }
    })
}

/// `∀x ≥ b ∃y ≥ b (x ≠ y ∧ f(x) = f(y))`.
pub fn ert_validate(c: &Coloring, b: u64) -> bool {
    ertj_validate(c, 2, b)
}

/// `∀x ≥ b ∃y > x f(x) = f(y)`: only infinitely-occurring colors at or after `b`.
pub fn ect_validate(c: &Coloring, b: u64) -> bool {
    c.profile().values().all(|info| match info {
        OccurrenceInfo::Infinite { .. } => true,
        OccurrenceInfo::Finite { positions } => positions.iter().all(|&n| n < b),
    })
}

/// Least `b` with `ertj_validate`. The scan stops at [`Coloring::settled_from`],
/// which is always a valid bound.
pub fn min_ertj_oracle(c: &Coloring, j: u64) -> u64 {
    let top = c.settled_from();
    (0..=top)
        .find(|&b| ertj_validate(c, j, b))
        .expect("settled bound is valid")
}

pub fn min_ert_oracle(c: &Coloring) -> u64 {
    min_ertj_oracle(c, 2)
}

pub fn min_ect_oracle(c: &Coloring) -> u64 {
    c.settled_from()
}

/// A bound together with the least witness pair for each color of the tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTable {
    pub bound: u64,
    pub pairs: BTreeMap<u64, (u64, u64)>,
}

impl WitnessTable {
    /// The tail palette `I`.
    pub fn colors(&self) -> BTreeSet<u64> {
        self.pairs.keys().copied().collect()
    }
}

/// Upgrades an ERT bound to a witness table: for each color `i` occurring at
/// or after `b`, the lexicographically least pair `b ≤ x < y` colored `i`.
pub fn ert_prime_witness(c: &Coloring, b: u64) -> Result<WitnessTable, ProblemError> {
    if !ert_validate(c, b) {
        return Err(ProblemError::InvalidBound { bound: b });
    }
    let mut pairs = BTreeMap::new();
    for color in c.profile().keys().copied() {
        let Some(x) = c.seq.next_occurrence(color, b) else {
            continue;
        };
        let y = c
            .seq
            .next_occurrence(color, x + 1)
            .expect("valid bound gives a second occurrence");
        pairs.insert(color, (x, y));
    }
    Ok(WitnessTable { bound: b, pairs })
}
