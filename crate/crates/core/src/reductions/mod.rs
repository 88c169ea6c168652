//! Weihrauch reductions between the problems, as named forward/backward pairs.
//!
//! Forward maps work symbolically on presentations: the emitted instance has
//! the same solution set as the literal stream functional, which is checked
//! separately against the streaming forwards in [`streaming`].

mod csharp;
mod ect;
mod ert;
mod minect;
pub mod streaming;
mod stz;

use alloc::vec::Vec;
use thiserror::Error;

use crate::problems::{Coloring, Instance, ProblemError, ProblemId, Solution};
use crate::words::WordError;

pub use csharp::ones_count_gadget;
pub use ect::least_unenumerated_before;
pub use ert::reconstructed_t;
pub use minect::{decode_pair, pair_colorings};
pub use stz::{
    Candidate, StzSets, bound_from_t0, bound_from_t0_sets, candidates, first_witness,
    min_ert_last_singleton, stz_sets, t0_of,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("expected a {expected} instance, got {found}")]
    SourceMismatch { expected: ProblemId, found: ProblemId },
    #[error("expected {expected} components, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("solution does not have the expected shape")]
    SolutionShape,
    #[error("reduction needs an ultimately periodic coloring")]
    NotLasso,
    #[error("unknown reduction `{0}`")]
    UnknownReduction(alloc::string::String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Word(#[from] WordError),
}

pub type Forward = fn(&Instance) -> Result<Instance, ReductionError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strength {
    Ordinary,
    Strong,
}

/// The backward functional. A strong one never sees the source instance.
#[derive(Clone, Copy)]
pub enum Backward {
    Ordinary(fn(&Instance, &Solution) -> Result<Solution, ReductionError>),
    Strong(fn(&Solution) -> Result<Solution, ReductionError>),
}

#[derive(Clone, Copy)]
pub struct ReductionRecord {
    pub name: &'static str,
    pub source: fn() -> ProblemId,
    pub target: fn() -> ProblemId,
    pub forward: Forward,
    pub backward: Backward,
    /// Whether a literal stream functional exists to compare against.
    pub streaming: bool,
}

impl core::fmt::Debug for ReductionRecord {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ReductionRecord")
            .field("name", &self.name)
            .field("strength", &self.strength())
            .finish()
    }
}

impl ReductionRecord {
    pub fn strength(&self) -> Strength {
        match self.backward {
            Backward::Ordinary(_) => Strength::Ordinary,
            Backward::Strong(_) => Strength::Strong,
        }
    }

    /// Runs the forward map after checking the source instance.
    pub fn forward(&self, source: &Instance) -> Result<Instance, ReductionError> {
        source.check()?;
        (self.forward)(source)
    }

    pub fn backward(&self, source: &Instance, s: &Solution) -> Result<Solution, ReductionError> {
        match self.backward {
            Backward::Ordinary(f) => f(source, s),
            Backward::Strong(f) => f(s),
        }
    }
}

/// Every registered reduction, in a fixed order.
pub fn registry() -> Vec<ReductionRecord> {
    alloc::vec![
        ert::LPOSTAR_TO_ERT,
        ert::ERT_TO_LPOSTAR,
        ect::ECT_TO_TCN_STAR,
        ect::TCN_STAR_TO_ECT,
        ect::LPO_TO_TCN_STRONG,
        minect::MINECT_TO_TCN_ISINF,
        minect::ISINF_TO_MINECT,
        minect::MINECT_PAIR,
        minect::MINECT_STAR_FOLD,
        csharp::MINECT_TO_CSHARPMAX,
        csharp::CSHARPMAX_TO_TCN_ISINF,
        ert::ERTJ_TO_ERT,
    ]
}

pub fn find(name: &str) -> Result<ReductionRecord, ReductionError> {
    registry()
        .into_iter()
        .find(|r| r.name == name)
        .ok_or_else(|| ReductionError::UnknownReduction(name.into()))
}

fn mismatch(expected: ProblemId, found: &Instance) -> ReductionError {
    ReductionError::SourceMismatch {
        expected,
        found: found.id(),
    }
}

/// Members of a star instance over `problem`.
fn star_items(i: &Instance, problem: ProblemId) -> Result<&[Instance], ReductionError> {
    match i {
        Instance::Star { problem: p, items } if *p == problem => Ok(items),
        other => Err(mismatch(ProblemId::star(problem), other)),
    }
}

fn tuple(s: &Solution, len: usize) -> Result<&[Solution], ReductionError> {
    let t = s.as_tuple().ok_or(ReductionError::SolutionShape)?;
    if t.len() != len {
        return Err(ReductionError::ArityMismatch {
            expected: len,
            found: t.len(),
        });
    }
    Ok(t)
}

fn number(s: &Solution) -> Result<u64, ReductionError> {
    s.as_number().ok_or(ReductionError::SolutionShape)
}

fn bit(s: &Solution) -> Result<u8, ReductionError> {
    s.as_bit().ok_or(ReductionError::SolutionShape)
}

/// The coloring of an instance of `problem` from the ERT family.
fn coloring_of(i: &Instance, problem: ProblemId) -> Result<&Coloring, ReductionError> {
    match (i, &problem) {
        (Instance::Ert(c), ProblemId::Ert)
        | (Instance::Ect(c), ProblemId::Ect)
        | (Instance::MinErt(c), ProblemId::MinErt)
        | (Instance::MinEct(c), ProblemId::MinEct) => Ok(c),
        _ => Err(mismatch(problem, i)),
    }
}
