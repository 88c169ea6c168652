//! Executable tail-coloring principles (ERT, ECT and their minimal-bound
//! variants) and choice problems (LPO, C_N, TC_N, isInfinite, C#max) over
//! finitely presented infinite sequences, together with the Weihrauch
//! reductions between them.
//!
//! Every infinite input is an ultimately periodic [`Word`]; every question
//! about a tail of such a word is decidable by inspecting the presentation.
//! Where a reduction produces a sequence that is not ultimately periodic in
//! its literal order, the target is given by a richer presentation with the
//! same solution set (see [`problems::ColorSeq`] and [`problems::Tail`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod coding;
pub mod problems;
pub mod reductions;
pub mod words;

pub use coding::{pair, unpair, FiniteSet};
pub use problems::{
    Coloring, ColorSeq, Enumeration, FamilyInstance, Instance, ProblemError, ProblemId, Solution,
    Tail, TargetSet,
};
pub use reductions::{registry, ReductionError, ReductionRecord, Strength};
pub use words::{OccurrenceInfo, Symbol, Word, WordError};
