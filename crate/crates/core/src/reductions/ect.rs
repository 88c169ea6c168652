//! ECT ≡ TC_N* and the strong reduction LPO ≤ TC_N.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{
    Backward, ReductionError, ReductionRecord, coloring_of, mismatch, number, star_items, tuple,
};
use crate::problems::{Coloring, Enumeration, Instance, ProblemId, Solution, Tail};
use crate::words::{OccurrenceInfo, Symbol, Word};

pub const ECT_TO_TCN_STAR: ReductionRecord = ReductionRecord {
    name: "ect_to_tcn_star",
    source: || ProblemId::Ect,
    target: || ProblemId::star(ProblemId::Tcn),
    forward: ect_to_tcn_star_forward,
    backward: Backward::Ordinary(ect_to_tcn_star_backward),
    streaming: true,
};

/// Per color `i`, enumerates the complement of `A_i = {n : ∀m ≥ n f(m) ≠ i}`.
fn ect_to_tcn_star_forward(i: &Instance) -> Result<Instance, ReductionError> {
    let c = coloring_of(i, ProblemId::Ect)?;
    let profile = c.profile();
    let items = (0..c.palette)
        .map(|color| {
            let e = match profile.get(&color) {
                Some(OccurrenceInfo::Infinite { .. }) => Enumeration::all_except([]),
                Some(OccurrenceInfo::Finite { positions }) => {
                    Enumeration::then_pause(0..=*positions.last().unwrap())
                }
                None => Enumeration::then_pause([]),
            };
            Instance::Tcn(e)
        })
        .collect();
    Ok(Instance::Star {
        problem: ProblemId::Tcn,
        items,
    })
}

fn ect_to_tcn_star_backward(i: &Instance, s: &Solution) -> Result<Solution, ReductionError> {
    let c = coloring_of(i, ProblemId::Ect)?;
    let answers = tuple(s, c.palette as usize)?;
    let top = answers.iter().map(number).collect::<Result<Vec<_>, _>>()?;
    Ok(Solution::Number(1 + top.into_iter().max().unwrap_or(0)))
}

pub const TCN_STAR_TO_ECT: ReductionRecord = ReductionRecord {
    name: "tcn_star_to_ect",
    source: || ProblemId::star(ProblemId::Tcn),
    target: || ProblemId::Ect,
    forward: tcn_star_to_ect_forward,
    backward: Backward::Ordinary(tcn_star_to_ect_backward),
    streaming: false,
};

fn tcn_members(i: &Instance) -> Result<Vec<&Enumeration>, ReductionError> {
    star_items(i, ProblemId::Tcn)?
        .iter()
        .map(|item| match item {
            Instance::Tcn(e) => Ok(e),
            other => Err(mismatch(ProblemId::Tcn, other)),
        })
        .collect()
}

/// The least value not emitted at stages `< s`.
pub fn least_unenumerated_before(e: &Enumeration, s: u64) -> u64 {
    let seen: BTreeSet<u64> = (0..s).filter_map(|t| e.at(t).value().copied()).collect();
    (0..).find(|v| !seen.contains(v)).unwrap()
}

/// Whether stage `s` emits the least value not yet emitted.
fn hits_least(e: &Enumeration, s: u64) -> bool {
    e.at(s) == Symbol::Value(least_unenumerated_before(e, s))
}

/// A stage from which [`hits_least`] is constant.
fn stabilization_stage(e: &Enumeration) -> u64 {
    let e = e.normalized();
    let a = e.target_set();
    match a.min() {
        // every smaller value is out by then, and `a` never is
        Some(a) => (0..a)
            .map(|v| e.emission_stage(&v).expect("values below min A are emitted") + 1)
            .max()
            .unwrap_or(0),
        None => match &e.tail {
            // all of [0, M) is out once the tail reaches M; from then on the
            // tail emits exactly the least missing value
            Tail::AllExcept(skip) => {
                let top = e
                    .explicit
                    .iter()
                    .filter_map(|s| s.value())
                    .chain(skip)
                    .max()
                    .map_or(0, |m| m + 1);
                let below = skip.iter().filter(|&&v| v < top).count() as u64;
                e.explicit.len() as u64 + top - below
            }
            _ => unreachable!("an empty target has a skip tail once normalized"),
        },
    }
}

/// Colors the pair code `s·k + i` with `i` when member `i` (counting from 1)
/// emits its least unenumerated value at stage `s`, and with 0 otherwise.
fn tcn_star_to_ect_forward(i: &Instance) -> Result<Instance, ReductionError> {
    let members = tcn_members(i)?;
    let k = members.len() as u64 + 1;
    let settled = members.iter().map(|e| stabilization_stage(e)).max().unwrap_or(0);
    let color = |s: u64, i: u64| -> u64 {
        if i > 0 && hits_least(members[(i - 1) as usize], s) { i } else { 0 }
    };
    let prefix = (0..settled).flat_map(|s| (0..k).map(move |i| (s, i))).map(|(s, i)| color(s, i));
    let period = (0..k).map(|i| color(settled, i)).collect();
    let word = Word::new(prefix.collect(), period)?.canonicalize();
    Ok(Instance::Ect(Coloring::lasso(word, k)?))
}

fn tcn_star_to_ect_backward(i: &Instance, s: &Solution) -> Result<Solution, ReductionError> {
    let members = tcn_members(i)?;
    let k = members.len() as u64 + 1;
    let b = number(s)?;
    let answers = members
        .iter()
        .enumerate()
        .map(|(n, e)| {
            let i = n as u64 + 1;
            let stage = if b > i { (b - i).div_ceil(k) } else { 0 };
            Solution::Number(least_unenumerated_before(e, stage))
        })
        .collect();
    Ok(Solution::Tuple(answers))
}

pub const LPO_TO_TCN_STRONG: ReductionRecord = ReductionRecord {
    name: "lpo_to_tcn_strong",
    source: || ProblemId::Lpo,
    target: || ProblemId::Tcn,
    forward: lpo_to_tcn_forward,
    backward: Backward::Strong(lpo_to_tcn_backward),
    streaming: true,
};

/// Range `{n+1 : f(n) ≠ 0} ∪ {0 : f has a zero}`.
fn lpo_to_tcn_forward(i: &Instance) -> Result<Instance, ReductionError> {
    let Instance::Lpo(f) = i else {
        return Err(mismatch(ProblemId::Lpo, i));
    };
    let nonzero = f.map(|&v| v != 0);
    let has_zero = f.values().contains(&0);
    let mut prefix = alloc::vec![has_zero];
    prefix.extend_from_slice(nonzero.prefix());
    let mask = Word::new(prefix, nonzero.period().to_vec())?;
    Ok(Instance::Tcn(Enumeration::from_mask(&mask)))
}

fn lpo_to_tcn_backward(s: &Solution) -> Result<Solution, ReductionError> {
    Ok(Solution::Bit(if number(s)? > 0 { 0 } else { 1 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{TargetSet, ect_validate, min_ect_oracle, tcn_solve};
    use alloc::vec;

    fn col(prefix: Vec<u64>, period: Vec<u64>, k: u64) -> Coloring {
        Coloring::lasso(Word::new(prefix, period).unwrap(), k).unwrap()
    }

    fn members(i: &Instance) -> Vec<Enumeration> {
        tcn_members(i).unwrap().into_iter().cloned().collect()
    }

    #[test]
    fn ect_to_tcn_star_examples() {
        let c = col(vec![1, 1], vec![0], 2);
        let src = Instance::Ect(c.clone());
        let img = ECT_TO_TCN_STAR.forward(&src).unwrap();
        assert_eq!(
            members(&img),
            vec![Enumeration::all_except([]), Enumeration::then_pause([0, 1])]
        );
        let tuple = Solution::Tuple(vec![Solution::Number(0), Solution::Number(2)]);
        let b = ECT_TO_TCN_STAR.backward(&src, &tuple).unwrap();
        assert_eq!(b, Solution::Number(3));
        assert!(ect_validate(&c, 3));

        let c = col(vec![], vec![0], 1);
        let src = Instance::Ect(c);
        assert_eq!(members(&ECT_TO_TCN_STAR.forward(&src).unwrap()), vec![Enumeration::all_except([])]);
        for s in [0, 6] {
            let b = ECT_TO_TCN_STAR.backward(&src, &Solution::Tuple(vec![Solution::Number(s)]));
            assert_eq!(b, Ok(Solution::Number(s + 1)));
        }

        let c = col(vec![0], vec![1], 2);
        let src = Instance::Ect(c.clone());
        assert_eq!(
            members(&ECT_TO_TCN_STAR.forward(&src).unwrap()),
            vec![Enumeration::then_pause([0]), Enumeration::all_except([])]
        );
        let tuple = Solution::Tuple(vec![Solution::Number(1), Solution::Number(0)]);
        assert_eq!(ECT_TO_TCN_STAR.backward(&src, &tuple), Ok(Solution::Number(2)));
        assert!(ect_validate(&c, 2));
    }

    fn tcnstar(es: Vec<Enumeration>) -> Instance {
        Instance::Star {
            problem: ProblemId::Tcn,
            items: es.into_iter().map(Instance::Tcn).collect(),
        }
    }

    #[test]
    fn tcn_star_to_ect_examples() {
        let src = tcnstar(vec![Enumeration::all_except([4])]);
        let Instance::Ect(c) = TCN_STAR_TO_ECT.forward(&src).unwrap() else { panic!() };
        assert_eq!(c, col(vec![0, 1, 0, 1, 0, 1, 0, 1], vec![0], 2));
        assert_eq!(min_ect_oracle(&c), 8);
        let back = TCN_STAR_TO_ECT.backward(&src, &Solution::Number(8)).unwrap();
        assert_eq!(back, Solution::Tuple(vec![Solution::Number(4)]));

        let src = tcnstar(vec![Enumeration::all_except([])]);
        let Instance::Ect(c) = TCN_STAR_TO_ECT.forward(&src).unwrap() else { panic!() };
        assert_eq!(c, col(vec![], vec![0, 1], 2));
        let back = TCN_STAR_TO_ECT.backward(&src, &Solution::Number(0)).unwrap();
        assert!(src.validate(&back));

        let src = tcnstar(vec![]);
        let Instance::Ect(c) = TCN_STAR_TO_ECT.forward(&src).unwrap() else { panic!() };
        assert_eq!(c, col(vec![], vec![0], 1));
        assert_eq!(TCN_STAR_TO_ECT.backward(&src, &Solution::Number(0)), Ok(Solution::Tuple(vec![])));
    }

    #[test]
    fn stabilization_covers_skip_tails() {
        let e = Enumeration::new(
            vec![Symbol::Value(3), Symbol::Pause, Symbol::Value(1)],
            Tail::AllExcept([1, 3].into()),
        );
        let s = stabilization_stage(&e);
        assert!((s..s + 20).all(|t| hits_least(&e, t)));
        let e = Enumeration::then_pause([0, 2, 1]);
        let s = stabilization_stage(&e);
        assert!((s..s + 20).all(|t| !hits_least(&e, t)));
    }

    #[test]
    fn lpo_to_tcn_examples() {
        let lpo = |prefix: Vec<u64>, period: Vec<u64>| Instance::Lpo(Word::new(prefix, period).unwrap());
        let Instance::Tcn(e) = LPO_TO_TCN_STRONG.forward(&lpo(vec![], vec![7])).unwrap() else {
            panic!()
        };
        assert_eq!(e.target_set(), TargetSet::Finite([0].into()));
        assert_eq!(tcn_solve(&e), 0);
        assert_eq!(lpo_to_tcn_backward(&Solution::Number(0)), Ok(Solution::Bit(1)));

        let Instance::Tcn(e) = LPO_TO_TCN_STRONG.forward(&lpo(vec![1, 0], vec![1])).unwrap() else {
            panic!()
        };
        assert_eq!(e.target_set(), TargetSet::Finite([2].into()));
        assert_eq!(lpo_to_tcn_backward(&Solution::Number(2)), Ok(Solution::Bit(0)));

        let Instance::Tcn(e) = LPO_TO_TCN_STRONG.forward(&lpo(vec![], vec![0])).unwrap() else {
            panic!()
        };
        let a = e.target_set();
        assert!(!a.contains(&0));
        assert_eq!(a.members(3), vec![1, 2, 3]);
    }
}
