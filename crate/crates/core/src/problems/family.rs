//! C#max: families of small finite sets presented by enumerating their
//! complement among set codes.

use alloc::collections::BTreeSet;

use super::ProblemError;
use super::enumeration::{Enumeration, TargetSet};
use crate::coding::FiniteSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyInstance {
    /// Inclusive bound on member cardinality.
    pub size_bound: u64,
    pub enumeration: Enumeration<FiniteSet>,
}

impl FamilyInstance {
    pub fn new(size_bound: u64, enumeration: Enumeration<FiniteSet>) -> Self {
        FamilyInstance {
            size_bound,
            enumeration,
        }
    }

    /// The denoted family `A`, checked against the size bound.
    ///
    /// A co-finite or infinitely masked target always contains sets of
    /// every size, so only finite targets can satisfy the bound.
    pub fn family(&self) -> Result<BTreeSet<FiniteSet>, ProblemError> {
        let family = match self.enumeration.target_set() {
            TargetSet::Finite(a) => a,
            t @ TargetSet::Masked { .. } if t.is_finite() => t.members(usize::MAX).into_iter().collect(),
            _ => return Err(ProblemError::InfiniteFamily),
        };
        if let Some(big) = family.iter().find(|s| s.len() as u64 > self.size_bound) {
            return Err(ProblemError::OversizedMember {
                size: big.len() as u64,
                bound: self.size_bound,
            });
        }
        Ok(family)
    }

    pub fn check(&self) -> Result<(), ProblemError> {
        if self.family()?.is_empty() {
            return Err(ProblemError::EmptyFamily);
        }
        Ok(())
    }

    fn max_cardinality(family: &BTreeSet<FiniteSet>) -> Option<usize> {
        family.iter().map(FiniteSet::len).max()
    }

    /// Members of maximum cardinality in increasing code order.
    pub fn maximal_members(&self) -> Result<impl Iterator<Item = FiniteSet>, ProblemError> {
        let family = self.family()?;
        let top = Self::max_cardinality(&family).ok_or(ProblemError::EmptyFamily)?;
        Ok(family.into_iter().filter(move |s| s.len() == top))
    }
}

/// The least-code member of maximum cardinality.
pub fn csharpmax_solve(f: &FamilyInstance) -> Result<FiniteSet, ProblemError> {
    f.maximal_members()?.next().ok_or(ProblemError::EmptyFamily)
}

pub fn csharpmax_validate(f: &FamilyInstance, s: &FiniteSet) -> bool {
    match f.family() {
        Ok(family) => {
            family.contains(s) && FamilyInstance::max_cardinality(&family) == Some(s.len())
        }
        Err(_) => false,
    }
}
