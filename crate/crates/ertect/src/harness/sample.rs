//! Fixed sampling policy for target solutions.

use ertect_core::problems::{ertj_validate, min_ect_oracle};
use ertect_core::{Coloring, Instance, Solution};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Window of target members scanned for the TC_N samples.
const WINDOW: usize = 8;

fn dedup(xs: Vec<Solution>) -> Vec<Solution> {
    let mut out: Vec<Solution> = Vec::with_capacity(xs.len());
    for x in xs {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn bounds(min: u64) -> Vec<Solution> {
    [min, min + 1, min + 7].map(Solution::Number).to_vec()
}

/// ERT(j) bounds are not upward closed, so the policy points are moved to
/// the next valid bound: the least, the next above it, and the first at or
/// past `min + 7`. Every `b` from the settled point on is valid.
fn ertj_bounds(c: &Coloring, j: u64) -> Vec<Solution> {
    let next = |from: u64| (from..).find(|&b| ertj_validate(c, j, b)).unwrap();
    let min = next(0);
    dedup([min, next(min + 1), next(min + 7)].map(Solution::Number).to_vec())
}

/// Valid solutions of `i` chosen by policy: ECT gives `{min, min+1, min+7}`
/// and ERT(j) the valid bounds nearest those points, TC_N its least member,
/// the top of a window and a seeded member (or `{0, 5, 13}` when the target
/// is empty), C#max up to three maximal members, and compounds mix their
/// components' samples.
pub fn sample_solutions(i: &Instance, rng: &mut ChaCha8Rng) -> Vec<Solution> {
    match i {
        Instance::Lpo(_) | Instance::IsInfinite(_) | Instance::MinErt(_) | Instance::MinEct(_) => {
            vec![i.solve().expect("checked instance")]
        }
        Instance::Ert(c) => ertj_bounds(c, 2),
        Instance::Ect(c) => bounds(min_ect_oracle(c)),
        Instance::ErtJ { coloring, j } => ertj_bounds(coloring, *j),
        Instance::Cn(e) | Instance::Tcn(e) => {
            let members = e.target_set().members(WINDOW);
            if members.is_empty() {
                return [0, 5, 13].map(Solution::Number).to_vec();
            }
            let picks = vec![
                members[0],
                *members.last().unwrap(),
                *members.choose(rng).unwrap(),
            ];
            dedup(picks.into_iter().map(Solution::Number).collect())
        }
        Instance::CSharpMax(f) => f
            .maximal_members()
            .expect("checked instance")
            .take(3)
            .map(Solution::Set)
            .collect(),
        Instance::Star { items, .. } | Instance::Product(items) => {
            let parts: Vec<Vec<Solution>> = items.iter().map(|x| sample_solutions(x, rng)).collect();
            let mut out = Vec::new();
            for r in 0..3 {
                out.push(Solution::Tuple(
                    parts.iter().enumerate().map(|(j, p)| p[(r + j) % p.len()].clone()).collect(),
                ));
            }
            for _ in 0..2 {
                out.push(Solution::Tuple(
                    parts.iter().map(|p| p[rng.gen_range(0..p.len())].clone()).collect(),
                ));
            }
            dedup(out)
        }
    }
}
