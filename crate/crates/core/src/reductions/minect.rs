//! minECT ≡ TC_N* × isInfinite*, isInfinite ≤ minECT, and the idempotence of
//! minECT under parallel products.

use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{Backward, ReductionError, ReductionRecord, bit, coloring_of, mismatch, number, tuple};
use crate::coding::{pair, unpair};
use crate::problems::{
    ColorSeq, Coloring, Enumeration, Instance, PairedSeq, ProblemId, Solution,
};
use crate::words::{OccurrenceInfo, Word, interleave};

pub const MINECT_TO_TCN_ISINF: ReductionRecord = ReductionRecord {
    name: "minect_to_tcn_isinf",
    source: || ProblemId::MinEct,
    target: || {
        ProblemId::Product(alloc::vec![
            ProblemId::star(ProblemId::Tcn),
            ProblemId::star(ProblemId::IsInfinite),
        ])
    },
    forward: minect_to_tcn_isinf_forward,
    backward: Backward::Ordinary(minect_to_tcn_isinf_backward),
    streaming: false,
};

/// Per color `j`: a TC_N instance whose only solution is the last occurrence
/// of `j` (when `j` occurs finitely often), and the indicator of `j`.
fn minect_to_tcn_isinf_forward(i: &Instance) -> Result<Instance, ReductionError> {
    let c = coloring_of(i, ProblemId::MinEct)?;
    let f = c.word().ok_or(ReductionError::NotLasso)?;
    let mut tcn = Vec::new();
    let mut isinf = Vec::new();
    for j in 0..c.palette {
        let last = match f.occurrence_info(&j) {
            OccurrenceInfo::Finite { positions } => positions.last().copied(),
            OccurrenceInfo::Infinite { .. } => None,
        };
        tcn.push(Instance::Tcn(Enumeration::all_except(last)));
        isinf.push(Instance::IsInfinite(f.map(|&v| u64::from(v == j))));
    }
    Ok(Instance::Product(alloc::vec![
        Instance::Star {
            problem: ProblemId::Tcn,
            items: tcn,
        },
        Instance::Star {
            problem: ProblemId::IsInfinite,
            items: isinf,
        },
    ]))
}

fn minect_to_tcn_isinf_backward(i: &Instance, s: &Solution) -> Result<Solution, ReductionError> {
    let c = coloring_of(i, ProblemId::MinEct)?;
    let k = c.palette as usize;
    let halves = tuple(s, 2)?;
    let (tcn, isinf) = (tuple(&halves[0], k)?, tuple(&halves[1], k)?);
    let occurs = c.profile();
    let mut bound = 0;
    for j in 0..k {
        if bit(&isinf[j])? == 0 && occurs.contains_key(&(j as u64)) {
            bound = bound.max(number(&tcn[j])? + 1);
        }
    }
    Ok(Solution::Number(bound))
}

pub const ISINF_TO_MINECT: ReductionRecord = ReductionRecord {
    name: "isinf_to_minect",
    source: || ProblemId::IsInfinite,
    target: || ProblemId::MinEct,
    forward: isinf_to_minect_forward,
    backward: Backward::Ordinary(isinf_to_minect_backward),
    streaming: true,
};

/// `r = 1, 0, p(0), 0, p(1), …`: the leading 1 is finite iff `p` has finitely
/// many ones.
fn isinf_to_minect_forward(i: &Instance) -> Result<Instance, ReductionError> {
    let Instance::IsInfinite(p) = i else {
        return Err(mismatch(ProblemId::IsInfinite, i));
    };
    let spread = interleave(0, p);
    let mut prefix = alloc::vec![1];
    prefix.extend_from_slice(spread.prefix());
    let word = Word::new(prefix, spread.period().to_vec())?.canonicalize();
    Ok(Instance::MinEct(Coloring::lasso(word, 2)?))
}

fn isinf_to_minect_backward(_: &Instance, s: &Solution) -> Result<Solution, ReductionError> {
    Ok(Solution::Bit(u8::from(number(s)? == 0)))
}

pub const MINECT_PAIR: ReductionRecord = ReductionRecord {
    name: "minect_pair",
    source: || ProblemId::Product(alloc::vec![ProblemId::MinEct, ProblemId::MinEct]),
    target: || ProblemId::MinEct,
    forward: minect_pair_forward,
    backward: Backward::Ordinary(minect_pair_backward),
    streaming: false,
};

fn minect_product(i: &Instance) -> Result<(&Coloring, &Coloring), ReductionError> {
    let expected = || ProblemId::Product(alloc::vec![ProblemId::MinEct, ProblemId::MinEct]);
    match i {
        Instance::Product(items) if items.len() == 2 => Ok((
            coloring_of(&items[0], ProblemId::MinEct).map_err(|_| mismatch(expected(), i))?,
            coloring_of(&items[1], ProblemId::MinEct).map_err(|_| mismatch(expected(), i))?,
        )),
        _ => Err(mismatch(expected(), i)),
    }
}

/// `r(π(n,m)) = π(p′(n), q′(m))`, where `p′` recolors position 0 of `p` with
/// the fresh color `k_p` (likewise `q′`).
pub fn pair_colorings(p: &Coloring, q: &Coloring) -> Coloring {
    Coloring {
        seq: ColorSeq::Paired(Box::new(PairedSeq {
            left: p.seq.clone(),
            left_head: p.palette,
            right: q.seq.clone(),
            right_head: q.palette,
        })),
        palette: pair(p.palette, q.palette) + 1,
    }
}

/// minECT of `p` from minECT of `p′`.
fn undo_head(c: &Coloring, adjusted: u64) -> u64 {
    let all_infinite = c.profile().values().all(OccurrenceInfo::is_infinite);
    if adjusted == 1 && all_infinite { 0 } else { adjusted }
}

/// Splits minECT of a paired coloring into the minECT values of its sides.
/// The last finitely-colored position of `r` is the pair of the last ones of
/// `p′` and `q′`, by monotonicity of `π`.
pub fn decode_pair(p: &Coloring, q: &Coloring, b: u64) -> (u64, u64) {
    let (u, v) = unpair(b.saturating_sub(1));
    (undo_head(p, u + 1), undo_head(q, v + 1))
}

fn minect_pair_forward(i: &Instance) -> Result<Instance, ReductionError> {
    let (p, q) = minect_product(i)?;
    Ok(Instance::MinEct(pair_colorings(p, q)))
}

fn minect_pair_backward(i: &Instance, s: &Solution) -> Result<Solution, ReductionError> {
    let (p, q) = minect_product(i)?;
    let (a, b) = decode_pair(p, q, number(s)?);
    Ok(Solution::Tuple(alloc::vec![Solution::Number(a), Solution::Number(b)]))
}

pub const MINECT_STAR_FOLD: ReductionRecord = ReductionRecord {
    name: "minect_star_fold",
    source: || ProblemId::star(ProblemId::MinEct),
    target: || ProblemId::MinEct,
    forward: minect_star_fold_forward,
    backward: Backward::Ordinary(minect_star_fold_backward),
    streaming: false,
};

fn minect_members(i: &Instance) -> Result<Vec<&Coloring>, ReductionError> {
    super::star_items(i, ProblemId::MinEct)?
        .iter()
        .map(|item| coloring_of(item, ProblemId::MinEct))
        .collect()
}

/// Right-nested pairing `c_0 ⊗ (c_1 ⊗ (… ⊗ c_{n−1}))`.
fn fold(cs: &[&Coloring]) -> Coloring {
    match cs {
        [] => Coloring {
            seq: ColorSeq::Lasso(Word::constant(0)),
            palette: 1,
        },
        [c] => (*c).clone(),
        [c, rest @ ..] => pair_colorings(c, &fold(rest)),
    }
}

fn minect_star_fold_forward(i: &Instance) -> Result<Instance, ReductionError> {
    Ok(Instance::MinEct(fold(&minect_members(i)?)))
}

fn minect_star_fold_backward(i: &Instance, s: &Solution) -> Result<Solution, ReductionError> {
    let cs = minect_members(i)?;
    let mut b = number(s)?;
    let mut out = Vec::with_capacity(cs.len());
    for n in 0..cs.len() {
        if n + 1 == cs.len() {
            out.push(Solution::Number(b));
        } else {
            let (head, rest) = decode_pair(cs[n], &fold(&cs[n + 1..]), b);
            out.push(Solution::Number(head));
            b = rest;
        }
    }
    Ok(Solution::Tuple(out))
}
