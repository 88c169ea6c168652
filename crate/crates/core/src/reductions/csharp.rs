//! minECT ≡ C#max, through TC_N* × isInfinite*.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{Backward, ReductionError, ReductionRecord, bit, coloring_of, mismatch, number, tuple};
use crate::coding::{FiniteSet, pair, unpair};
use crate::problems::{Enumeration, FamilyInstance, Instance, ProblemId, Solution, Tail};
use crate::words::{OccurrenceInfo, Symbol, Word};

pub const MINECT_TO_CSHARPMAX: ReductionRecord = ReductionRecord {
    name: "minect_to_csharpmax",
    source: || ProblemId::MinEct,
    target: || ProblemId::CSharpMax,
    forward: minect_to_csharpmax_forward,
    backward: Backward::Ordinary(minect_to_csharpmax_backward),
    streaming: false,
};

/// The family of all sets of pairs `(j, n)` with `n` the last occurrence of
/// color `j`. Its only largest member holds every finite color.
fn minect_to_csharpmax_forward(i: &Instance) -> Result<Instance, ReductionError> {
    let c = coloring_of(i, ProblemId::MinEct)?;
    let last: Vec<u64> = c
        .profile()
        .into_iter()
        .filter_map(|(j, info)| match info {
            OccurrenceInfo::Finite { positions } => Some(pair(j, *positions.last().unwrap())),
            OccurrenceInfo::Infinite { .. } => None,
        })
        .collect();
    let family = (0..1u64 << last.len()).map(|bits| {
        last.iter()
            .enumerate()
            .filter(|(n, _)| bits >> n & 1 == 1)
            .map(|(_, &x)| x)
            .collect::<FiniteSet>()
    });
    Ok(Instance::CSharpMax(FamilyInstance::new(
        c.palette,
        Enumeration::all_except(family),
    )))
}

fn minect_to_csharpmax_backward(_: &Instance, s: &Solution) -> Result<Solution, ReductionError> {
    let f = s.as_set().ok_or(ReductionError::SolutionShape)?;
    let b = f.iter().map(|x| unpair(x).1 + 1).max().unwrap_or(0);
    Ok(Solution::Number(b))
}

/// The moving-marker enumeration for a binary word `p`, over pair codes.
///
/// Even steps emit the least code that is neither enumerated nor the marker.
/// Odd step `2t+1` reads `p(t)`: on a one it emits the marker and moves it to
/// the first free code in the next column. With finitely many ones the
/// marker settles in column `#ones` and is the single member of the target;
/// otherwise every code is eventually emitted.
pub fn ones_count_gadget(p: &Word<u64>) -> Enumeration {
    let p = p.canonicalize();
    let finite = !p.period().contains(&1);
    let steps = p.prefix().len() + if finite { 0 } else { p.period().len() };
    let mut seen = BTreeSet::new();
    let mut column = 0;
    let mut marker = pair(0, 0);
    let mut explicit = Vec::with_capacity(2 * steps);
    let free = |seen: &BTreeSet<u64>, x: u64| !seen.contains(&x);
    for t in 0..steps as u64 {
        let least = (0..).find(|&x| x != marker && free(&seen, x)).unwrap();
        seen.insert(least);
        explicit.push(Symbol::Value(least));
        if *p.at(t) == 1 {
            seen.insert(marker);
            explicit.push(Symbol::Value(marker));
            column += 1;
            let row = (0..).find(|&y| free(&seen, pair(column, y))).unwrap();
            marker = pair(column, row);
        } else {
            explicit.push(Symbol::Pause);
        }
    }
    let skip = if finite { BTreeSet::from([marker]) } else { BTreeSet::new() };
    Enumeration::new(explicit, Tail::AllExcept(skip))
}

pub const CSHARPMAX_TO_TCN_ISINF: ReductionRecord = ReductionRecord {
    name: "csharpmax_to_tcn_isinf",
    source: || ProblemId::CSharpMax,
    target: || {
        ProblemId::Product(alloc::vec![
            ProblemId::star(ProblemId::IsInfinite),
            ProblemId::star(ProblemId::Tcn),
        ])
    },
    forward: csharpmax_to_tcn_isinf_forward,
    backward: Backward::Ordinary(csharpmax_to_tcn_isinf_backward),
    streaming: false,
};

fn family_of(i: &Instance) -> Result<&FamilyInstance, ReductionError> {
    match i {
        Instance::CSharpMax(f) => Ok(f),
        other => Err(mismatch(ProblemId::CSharpMax, other)),
    }
}

/// For each size `i` in `1..=n`, `p_i` has one 1 per size-`i` set that
/// precedes the first size-`i` member of the family, and infinitely many
/// when there is none.
fn csharpmax_to_tcn_isinf_forward(i: &Instance) -> Result<Instance, ReductionError> {
    let f = family_of(i)?;
    let family = f.family()?;
    let mut isinf = Vec::new();
    let mut tcn = Vec::new();
    for size in 1..=f.size_bound as usize {
        let p = match family.iter().find(|s| s.len() == size) {
            Some(first) => {
                let rank = first.colex_rank().expect("colex rank fits in u64");
                Word::new(alloc::vec![1; rank as usize], alloc::vec![0])?
            }
            None => Word::constant(1),
        };
        tcn.push(Instance::Tcn(ones_count_gadget(&p)));
        isinf.push(Instance::IsInfinite(p));
    }
    Ok(Instance::Product(alloc::vec![
        Instance::Star {
            problem: ProblemId::IsInfinite,
            items: isinf,
        },
        Instance::Star {
            problem: ProblemId::Tcn,
            items: tcn,
        },
    ]))
}

fn csharpmax_to_tcn_isinf_backward(i: &Instance, s: &Solution) -> Result<Solution, ReductionError> {
    let n = family_of(i)?.size_bound as usize;
    let halves = tuple(s, 2)?;
    let (isinf, tcn) = (tuple(&halves[0], n)?, tuple(&halves[1], n)?);
    for size in (1..=n).rev() {
        if bit(&isinf[size - 1])? == 0 {
            let count = unpair(number(&tcn[size - 1])?).0;
            return Ok(Solution::Set(FiniteSet::colex_unrank(size as u64, count)));
        }
    }
    Ok(Solution::Set(FiniteSet::new()))
}
