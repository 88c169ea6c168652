//! Minimum ERT bounds from chains of colors that never reappear.
//!
//! A candidate is a non-repeating color sequence `σ` of length `< k`. Its
//! first witness `τ` is the greedy earliest increasing list of positions with
//! `f(τ(i)) = σ(i)`. `S` holds the candidates that have a witness, `T` those
//! whose last color never occurs after its witness position, and `T0` the
//! maximal chains of `T`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::problems::{ColorSeq, Coloring};
use crate::words::OccurrenceInfo;

pub type Candidate = Vec<u64>;

/// All non-repeating sequences over `[0,k)` of length `< k`, by length and
/// then lexicographically.
pub fn candidates(k: u64) -> Vec<Candidate> {
    let mut out = alloc::vec![Vec::new()];
    let mut layer: Vec<Candidate> = alloc::vec![Vec::new()];
    for _ in 1..k {
        let mut next = Vec::new();
        for sigma in &layer {
            for c in 0..k {
                if !sigma.contains(&c) {
                    let mut ext = sigma.clone();
                    ext.push(c);
                    next.push(ext);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// The greedy earliest witness positions for `sigma`, if it occurs in order.
pub fn first_witness(seq: &ColorSeq, sigma: &[u64]) -> Option<Vec<u64>> {
    let mut tau = Vec::with_capacity(sigma.len());
    let mut from = 0;
    for &color in sigma {
        let x = seq.next_occurrence(color, from)?;
        tau.push(x);
        from = x + 1;
    }
    if let ColorSeq::Lasso(w) = seq {
        let cap = w.prefix().len() + (sigma.len() + 2) * w.period().len() + sigma.len();
        assert!(tau.last().is_none_or(|&x| (x as usize) < cap), "witness beyond search cap");
    }
    Some(tau)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StzSets {
    /// Members of `S` with their first witnesses.
    pub s: BTreeMap<Candidate, Vec<u64>>,
    pub t: BTreeSet<Candidate>,
    pub t0: BTreeSet<Candidate>,
}

pub fn stz_sets(c: &Coloring) -> StzSets {
    let mut s = BTreeMap::new();
    let mut t = BTreeSet::new();
    for sigma in candidates(c.palette) {
        let Some(tau) = first_witness(&c.seq, &sigma) else {
            continue;
        };
        let settled = match (sigma.last(), tau.last()) {
            (Some(&last), Some(&x)) => c.seq.next_occurrence(last, x + 1).is_none(),
            _ => true,
        };
        if settled {
            t.insert(sigma.clone());
        }
        s.insert(sigma, tau);
    }
    let t0 = t0_of(&t, c.palette);
    StzSets { s, t, t0 }
}

/// Members of `t` all of whose proper prefixes lie in `t` and which have no
/// one-color extension in `t`.
pub fn t0_of(t: &BTreeSet<Candidate>, k: u64) -> BTreeSet<Candidate> {
    t.iter()
        .filter(|sigma| (0..sigma.len()).all(|n| t.contains(&sigma[..n])))
        .filter(|sigma| {
            !(0..k).filter(|c| !sigma.contains(c)).any(|c| {
                let mut ext = (*sigma).clone();
                ext.push(c);
                t.contains(&ext)
            })
        })
        .cloned()
        .collect()
}

/// The least bound over the chains of `t0`, reading witnesses from `witness`.
pub fn bound_from_t0_sets(
    t0: &BTreeSet<Candidate>,
    witness: impl Fn(&Candidate) -> Option<Vec<u64>>,
) -> u64 {
    t0.iter()
        .map(|sigma| match sigma.is_empty() {
            true => 0,
            false => {
                let tau = witness(sigma).expect("members of T0 have witnesses");
                tau.last().unwrap() + 1
            }
        })
        .min()
        .expect("T0 always has a member")
}

pub fn bound_from_t0(c: &Coloring) -> u64 {
    let sets = stz_sets(c);
    bound_from_t0_sets(&sets.t0, |sigma| sets.s.get(sigma).cloned())
}

/// Follows the chain of last-appearing colors that occur exactly once after
/// the previous link.
pub fn min_ert_last_singleton(c: &Coloring) -> u64 {
    let profile = c.profile();
    let mut bound = 0;
    loop {
        let single = profile
            .values()
            .filter_map(|info| match info {
                OccurrenceInfo::Finite { positions } => {
                    let mut after = positions.iter().filter(|&&n| n >= bound);
                    match (after.next(), after.next()) {
                        (Some(&n), None) => Some(n),
                        _ => None,
                    }
                }
                OccurrenceInfo::Infinite { .. } => None,
            })
            .max();
        match single {
            Some(n) => bound = n + 1,
            None => return bound,
        }
    }
}
