//! LPO* ≡ ERT and ERT(j) ≤ ERT.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::stz::{Candidate, bound_from_t0_sets, candidates, first_witness, t0_of};
use super::{
    Backward, ReductionError, ReductionRecord, bit, coloring_of, mismatch, number, star_items,
    tuple,
};
use crate::problems::{Coloring, Instance, ProblemId, Solution};
use crate::words::Word;

pub const LPOSTAR_TO_ERT: ReductionRecord = ReductionRecord {
    name: "lpostar_to_ert",
    source: || ProblemId::star(ProblemId::Lpo),
    target: || ProblemId::Ert,
    forward: lpostar_to_ert_forward,
    backward: Backward::Ordinary(lpostar_to_ert_backward),
    streaming: true,
};

fn lpo_words(i: &Instance) -> Result<Vec<&Word<u64>>, ReductionError> {
    star_items(i, ProblemId::Lpo)?
        .iter()
        .map(|item| match item {
            Instance::Lpo(w) => Ok(w),
            other => Err(mismatch(ProblemId::Lpo, other)),
        })
        .collect()
}

/// `g(nk+i) = i` exactly at the first zero of `f_i`, and `k` elsewhere.
fn lpostar_to_ert_forward(i: &Instance) -> Result<Instance, ReductionError> {
    let fs = lpo_words(i)?;
    let k = fs.len() as u64;
    let zeros: Vec<Option<u64>> = fs.iter().map(|f| f.next_occurrence(&0, 0)).collect();
    let end = zeros
        .iter()
        .enumerate()
        .filter_map(|(i, z)| z.map(|n| n * k + i as u64 + 1))
        .max()
        .unwrap_or(0);
    let prefix = (0..end)
        .map(|pos| {
            let (n, member) = (pos / k, (pos % k) as usize);
            if zeros[member] == Some(n) { member as u64 } else { k }
        })
        .collect();
    let word = Word::new(prefix, alloc::vec![k])?.canonicalize();
    Ok(Instance::Ert(Coloring::lasso(word, k + 1)?))
}

/// Any ERT bound lies beyond every first-zero position.
fn lpostar_to_ert_backward(i: &Instance, s: &Solution) -> Result<Solution, ReductionError> {
    let b = number(s)?;
    let bits = lpo_words(i)?
        .iter()
        .map(|f| Solution::Bit(if (0..=b).any(|n| *f.at(n) == 0) { 0 } else { 1 }))
        .collect();
    Ok(Solution::Tuple(bits))
}

pub const ERT_TO_LPOSTAR: ReductionRecord = ReductionRecord {
    name: "ert_to_lpostar",
    source: || ProblemId::Ert,
    target: || ProblemId::star(ProblemId::Lpo),
    forward: ert_to_lpostar_forward,
    backward: Backward::Ordinary(ert_to_lpostar_backward),
    streaming: false,
};

/// `1` before `threshold`, `0` from there on; all ones when there is none.
fn threshold(threshold: Option<u64>) -> Word<u64> {
    match threshold {
        Some(t) => Word::new(alloc::vec![1; t as usize], alloc::vec![0]).unwrap(),
        None => Word::constant(1),
    }
}

/// Per nonempty candidate `σ`: `h_σ` turns 0 once its first witness is
/// complete, `h′_σ` once the last color of that witness reappears. All `h`
/// words come first, then all `h′` words.
fn ert_to_lpostar_forward(i: &Instance) -> Result<Instance, ReductionError> {
    let c = coloring_of(i, ProblemId::Ert)?;
    let mut h = Vec::new();
    let mut h_prime = Vec::new();
    for sigma in candidates(c.palette).into_iter().skip(1) {
        let tau = first_witness(&c.seq, &sigma);
        let done = tau.as_ref().map(|t| *t.last().unwrap());
        let again = done.and_then(|x| c.seq.next_occurrence(*sigma.last().unwrap(), x + 1));
        h.push(Instance::Lpo(threshold(done)));
        h_prime.push(Instance::Lpo(threshold(again)));
    }
    h.extend(h_prime);
    Ok(Instance::Star {
        problem: ProblemId::Lpo,
        items: h,
    })
}

fn ert_to_lpostar_backward(i: &Instance, s: &Solution) -> Result<Solution, ReductionError> {
    let c = coloring_of(i, ProblemId::Ert)?;
    let nonempty: Vec<Candidate> = candidates(c.palette).into_iter().skip(1).collect();
    let bits = tuple(s, 2 * nonempty.len())?;
    let (in_s, recurs) = bits.split_at(nonempty.len());
    let mut t: BTreeSet<Candidate> = BTreeSet::new();
    t.insert(Vec::new());
    for (n, sigma) in nonempty.iter().enumerate() {
        if bit(&in_s[n])? == 0 && bit(&recurs[n])? == 1 {
            t.insert(sigma.clone());
        }
    }
    let t0 = t0_of(&t, c.palette);
    let mut witnesses = BTreeMap::new();
    for sigma in &t0 {
        witnesses.insert(sigma.clone(), first_witness(&c.seq, sigma));
    }
    Ok(Solution::Number(bound_from_t0_sets(&t0, |sigma| {
        witnesses.get(sigma).cloned().flatten()
    })))
}

/// The reconstructed `T` for inspection: `{ε} ∪ (S ∖ T′)` from the LPO answers.
pub fn reconstructed_t(c: &Coloring, answers: &[u8]) -> BTreeSet<Candidate> {
    let nonempty: Vec<Candidate> = candidates(c.palette).into_iter().skip(1).collect();
    let (in_s, recurs) = answers.split_at(nonempty.len());
    core::iter::once(Vec::new())
        .chain(
            nonempty
                .into_iter()
                .enumerate()
                .filter(|(n, _)| in_s[*n] == 0 && recurs[*n] == 1)
                .map(|(_, sigma)| sigma),
        )
        .collect()
}

pub const ERTJ_TO_ERT: ReductionRecord = ReductionRecord {
    name: "ertj_to_ert",
    source: || ProblemId::ErtJ,
    target: || ProblemId::Ert,
    forward: ertj_to_ert_forward,
    backward: Backward::Ordinary(ertj_to_ert_backward),
    streaming: true,
};

fn ertj_of(i: &Instance) -> Result<(&Word<u64>, u64, u64), ReductionError> {
    match i {
        Instance::ErtJ { coloring, j } => {
            let w = coloring.word().ok_or(ReductionError::NotLasso)?;
            Ok((w, coloring.palette, *j))
        }
        other => Err(mismatch(ProblemId::ErtJ, other)),
    }
}

/// Recolors position `n` by `(f(n), |{i < n : f(i) = f(n)}| mod j)`, coded as
/// `f(n)·j + count`. Past the prefix the counters repeat every `j` periods.
fn ertj_to_ert_forward(i: &Instance) -> Result<Instance, ReductionError> {
    let (f, k, j) = ertj_of(i)?;
    let p = f.prefix().len() as u64;
    let q = f.period().len() as u64;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let g: Vec<u64> = (0..p + j * q)
        .map(|n| {
            let color = *f.at(n);
            let seen = counts.entry(color).or_insert(0);
            let out = color * j + *seen % j;
            *seen += 1;
            out
        })
        .collect();
    let (prefix, period) = g.split_at(p as usize);
    let word = Word::new(prefix.to_vec(), period.to_vec())?.canonicalize();
    Ok(Instance::Ert(Coloring::lasso(word, k * j)?))
}

fn ertj_to_ert_backward(_: &Instance, s: &Solution) -> Result<Solution, ReductionError> {
    Ok(Solution::Number(number(s)?))
}
