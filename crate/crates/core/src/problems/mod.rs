//! Problem instances, solutions, validators and semantic solvers.
//!
//! A validator decides whether `(instance, solution)` lies in the problem
//! relation; a solver returns one canonical solution (the least one for the
//! bound problems). Both work from the presentation alone.

mod coloring;
mod enumeration;
mod family;

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use thiserror::Error;

use crate::coding::FiniteSet;
use crate::words::Word;

pub use coloring::{
    ColorSeq, Coloring, PairedSeq, Profile, WitnessTable, ect_validate, ert_prime_witness,
    ert_validate, ertj_validate, min_ect_oracle, min_ert_oracle, min_ertj_oracle,
};
pub use enumeration::{
    Enumeration, TargetSet, Tail, cn_solve, cn_validate, tcn_solve, tcn_validate,
};
pub use family::{FamilyInstance, csharpmax_solve, csharpmax_validate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProblemError {
    #[error("C_N target set is empty")]
    EmptyTarget,
    #[error("C#max family is empty")]
    EmptyFamily,
    #[error("C#max family is infinite")]
    InfiniteFamily,
    #[error("family member of size {size} exceeds bound {bound}")]
    OversizedMember { size: u64, bound: u64 },
    #[error("{bound} is not a valid bound")]
    InvalidBound { bound: u64 },
    #[error("color {color} outside palette {palette}")]
    ColorOutOfRange { color: u64, palette: u64 },
    #[error("palette must be positive")]
    EmptyPalette,
    #[error("recolored head {color} already occurs")]
    HeadNotFresh { color: u64 },
    #[error("isInfinite word has non-binary symbol {0}")]
    NonBinary(u64),
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("star member is {found}, expected {expected}")]
    StarMemberMismatch { expected: ProblemId, found: ProblemId },
    #[error("solution does not have the shape of a {0} solution")]
    SolutionShape(ProblemId),
}

/// Names of problems, including star and product compounds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemId {
    Lpo,
    IsInfinite,
    Cn,
    Tcn,
    Ert,
    ErtJ,
    Ect,
    MinErt,
    MinEct,
    CSharpMax,
    Star(Box<ProblemId>),
    Product(Vec<ProblemId>),
}

impl ProblemId {
    pub fn star(inner: ProblemId) -> Self {
        ProblemId::Star(Box::new(inner))
    }

    fn simple_name(&self) -> Option<&'static str> {
        Some(match self {
            ProblemId::Lpo => "lpo",
            ProblemId::IsInfinite => "isinf",
            ProblemId::Cn => "cn",
            ProblemId::Tcn => "tcn",
            ProblemId::Ert => "ert",
            ProblemId::ErtJ => "ertj",
            ProblemId::Ect => "ect",
            ProblemId::MinErt => "minert",
            ProblemId::MinEct => "minect",
            ProblemId::CSharpMax => "csharpmax",
            ProblemId::Star(_) | ProblemId::Product(_) => return None,
        })
    }

    pub const SIMPLE: [ProblemId; 10] = [
        ProblemId::Lpo,
        ProblemId::IsInfinite,
        ProblemId::Cn,
        ProblemId::Tcn,
        ProblemId::Ert,
        ProblemId::ErtJ,
        ProblemId::Ect,
        ProblemId::MinErt,
        ProblemId::MinEct,
        ProblemId::CSharpMax,
    ];
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemId::Star(inner) => write!(f, "star({inner})"),
            ProblemId::Product(items) => {
                f.write_str("product(")?;
                for (i, p) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            simple => f.write_str(simple.simple_name().unwrap()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown problem id `{0}`")]
pub struct UnknownProblem(pub String);

impl FromStr for ProblemId {
    type Err = UnknownProblem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || UnknownProblem(s.to_string());
        let s = s.trim();
        if let Some(simple) = Self::SIMPLE.iter().find(|p| p.simple_name() == Some(s)) {
            return Ok(simple.clone());
        }
        let args = |head: &str| {
            s.strip_prefix(head)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
        };
        if let Some(inner) = args("star") {
            return Ok(ProblemId::star(inner.parse().map_err(|_| bad())?));
        }
        if let Some(inner) = args("product") {
            // split on top-level commas
            let mut items = Vec::new();
            let (mut depth, mut start) = (0usize, 0usize);
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth = depth.checked_sub(1).ok_or_else(bad)?,
                    ',' if depth == 0 => {
                        items.push(inner[start..i].parse().map_err(|_| bad())?);
                        start = i + 1;
                    }
                    _ => {}
                }
            }
            if !inner.trim().is_empty() {
                items.push(inner[start..].parse().map_err(|_| bad())?);
            }
            return Ok(ProblemId::Product(items));
        }
        Err(bad())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Instance {
    Lpo(Word<u64>),
    IsInfinite(Word<u64>),
    Cn(Enumeration),
    Tcn(Enumeration),
    Ert(Coloring),
    ErtJ { coloring: Coloring, j: u64 },
    Ect(Coloring),
    MinErt(Coloring),
    MinEct(Coloring),
    CSharpMax(FamilyInstance),
    Star { problem: ProblemId, items: Vec<Instance> },
    Product(Vec<Instance>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Solution {
    Bit(u8),
    Number(u64),
    Set(FiniteSet),
    Tuple(Vec<Solution>),
}

impl Solution {
    pub fn as_bit(&self) -> Option<u8> {
        match self {
            Solution::Bit(b) if *b <= 1 => Some(*b),
            _ => None,
        }
    }

    pub fn as_number(&self) -> Option<u64> {
        match self {
            Solution::Number(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<&FiniteSet> {
        match self {
            Solution::Set(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[Solution]> {
        match self {
            Solution::Tuple(t) => Some(t),
            _ => None,
        }
    }
}

/// `0` iff `f` has a zero.
pub fn lpo_solve(f: &Word<u64>) -> u8 {
    if f.values().contains(&0) { 0 } else { 1 }
}

/// `1` iff `p` has infinitely many ones.
pub fn is_infinite_solve(p: &Word<u64>) -> u8 {
    u8::from(p.infinite_values().contains(&1))
}

impl Instance {
    pub fn id(&self) -> ProblemId {
        match self {
            Instance::Lpo(_) => ProblemId::Lpo,
            Instance::IsInfinite(_) => ProblemId::IsInfinite,
            Instance::Cn(_) => ProblemId::Cn,
            Instance::Tcn(_) => ProblemId::Tcn,
            Instance::Ert(_) => ProblemId::Ert,
            Instance::ErtJ { .. } => ProblemId::ErtJ,
            Instance::Ect(_) => ProblemId::Ect,
            Instance::MinErt(_) => ProblemId::MinErt,
            Instance::MinEct(_) => ProblemId::MinEct,
            Instance::CSharpMax(_) => ProblemId::CSharpMax,
            Instance::Star { problem, .. } => ProblemId::star(problem.clone()),
            Instance::Product(items) => ProblemId::Product(items.iter().map(Instance::id).collect()),
        }
    }

    /// The coloring of an ERT-family instance.
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            Instance::Ert(c)
            | Instance::Ect(c)
            | Instance::MinErt(c)
            | Instance::MinEct(c)
            | Instance::ErtJ { coloring: c, .. } => Some(c),
            _ => None,
        }
    }

    /// Checks the instance invariants of its problem.
    pub fn check(&self) -> Result<(), ProblemError> {
        match self {
            Instance::Lpo(_) | Instance::Tcn(_) => Ok(()),
            Instance::IsInfinite(p) => match p.values().into_iter().find(|&v| v > 1) {
                Some(v) => Err(ProblemError::NonBinary(v)),
                None => Ok(()),
            },
            Instance::Cn(e) => match e.target_set().is_empty() {
                true => Err(ProblemError::EmptyTarget),
                false => Ok(()),
            },
            Instance::Ert(c) | Instance::Ect(c) | Instance::MinErt(c) | Instance::MinEct(c) => {
                c.check()
            }
            Instance::ErtJ { coloring, j } => {
                if *j == 0 {
                    return Err(ProblemError::ZeroMultiplicity);
                }
                coloring.check()
            }
            Instance::CSharpMax(f) => f.check(),
            Instance::Star { problem, items } => {
                for item in items {
                    let found = item.id();
                    if found != *problem {
                        return Err(ProblemError::StarMemberMismatch {
                            expected: problem.clone(),
                            found,
                        });
                    }
                    item.check()?;
                }
                Ok(())
            }
            Instance::Product(items) => items.iter().try_for_each(Instance::check),
        }
    }

    /// The canonical solution: the unique one, or the least one for bound
    /// and choice problems.
    pub fn solve(&self) -> Result<Solution, ProblemError> {
        self.check()?;
        Ok(match self {
            Instance::Lpo(f) => Solution::Bit(lpo_solve(f)),
            Instance::IsInfinite(p) => Solution::Bit(is_infinite_solve(p)),
            Instance::Cn(e) => Solution::Number(cn_solve(e)?),
            Instance::Tcn(e) => Solution::Number(tcn_solve(e)),
            Instance::Ert(c) | Instance::MinErt(c) => Solution::Number(min_ert_oracle(c)),
            Instance::Ect(c) | Instance::MinEct(c) => Solution::Number(min_ect_oracle(c)),
            Instance::ErtJ { coloring, j } => Solution::Number(min_ertj_oracle(coloring, *j)),
            Instance::CSharpMax(f) => Solution::Set(csharpmax_solve(f)?),
            Instance::Star { items, .. } | Instance::Product(items) => Solution::Tuple(
                items.iter().map(Instance::solve).collect::<Result<_, _>>()?,
            ),
        })
    }

    /// Is `(self, s)` in the problem relation?
    pub fn validate(&self, s: &Solution) -> bool {
        match (self, s) {
            (Instance::Lpo(f), Solution::Bit(b)) => *b == lpo_solve(f),
            (Instance::IsInfinite(p), Solution::Bit(b)) => *b == is_infinite_solve(p),
            (Instance::Cn(e), Solution::Number(n)) => cn_validate(e, *n),
            (Instance::Tcn(e), Solution::Number(n)) => tcn_validate(e, *n),
            (Instance::Ert(c), Solution::Number(b)) => ert_validate(c, *b),
            (Instance::Ect(c), Solution::Number(b)) => ect_validate(c, *b),
            (Instance::ErtJ { coloring, j }, Solution::Number(b)) => {
                ertj_validate(coloring, *j, *b)
            }
            (Instance::MinErt(c), Solution::Number(b)) => *b == min_ert_oracle(c),
            (Instance::MinEct(c), Solution::Number(b)) => *b == min_ect_oracle(c),
            (Instance::CSharpMax(f), Solution::Set(s)) => csharpmax_validate(f, s),
            (Instance::Star { items, .. } | Instance::Product(items), Solution::Tuple(sols)) => {
                items.len() == sols.len() && items.iter().zip(sols).all(|(i, s)| i.validate(s))
            }
            _ => false,
        }
    }

    /// Maps every lasso word inside the instance through `f`.
    pub fn map_words(&self, f: &impl Fn(&Word<u64>) -> Word<u64>) -> Instance {
        let map_seq = |c: &Coloring| Coloring {
            seq: map_color_seq(&c.seq, f),
            palette: c.palette,
        };
        match self {
            Instance::Lpo(w) => Instance::Lpo(f(w)),
            Instance::IsInfinite(w) => Instance::IsInfinite(f(w)),
            Instance::Ert(c) => Instance::Ert(map_seq(c)),
            Instance::Ect(c) => Instance::Ect(map_seq(c)),
            Instance::MinErt(c) => Instance::MinErt(map_seq(c)),
            Instance::MinEct(c) => Instance::MinEct(map_seq(c)),
            Instance::ErtJ { coloring, j } => Instance::ErtJ {
                coloring: map_seq(coloring),
                j: *j,
            },
            Instance::Star { problem, items } => Instance::Star {
                problem: problem.clone(),
                items: items.iter().map(|i| i.map_words(f)).collect(),
            },
            Instance::Product(items) => {
                Instance::Product(items.iter().map(|i| i.map_words(f)).collect())
            }
            other => other.clone(),
        }
    }
}

fn map_color_seq(seq: &ColorSeq, f: &impl Fn(&Word<u64>) -> Word<u64>) -> ColorSeq {
    match seq {
        ColorSeq::Lasso(w) => ColorSeq::Lasso(f(w)),
        ColorSeq::Paired(p) => ColorSeq::Paired(Box::new(PairedSeq {
            left: map_color_seq(&p.left, f),
            left_head: p.left_head,
            right: map_color_seq(&p.right, f),
            right_head: p.right_head,
        })),
    }
}
