//! Verification harness: seeded generators, the reduction checker, semantic
//! law checks, stream agreement and the strong-reduction refuters.

pub mod gen;
pub mod refute;
pub mod sample;
pub mod stream;

use ertect_core::problems::{
    cn_solve, cn_validate, ect_validate, ert_prime_witness, ert_validate, ertj_validate,
    min_ect_oracle, min_ert_oracle, tcn_solve, tcn_validate,
};
use ertect_core::reductions::{
    bound_from_t0, decode_pair, find, min_ert_last_singleton, ones_count_gadget, pair_colorings,
    stz_sets, reconstructed_t,
};
use ertect_core::{unpair, Coloring, Instance, Solution, TargetSet, Word};
use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::json::{instance_to_json, solution_to_json};
pub use gen::{gen_instance, trial_seed, Generator, Limits};
pub use refute::{Counterexample, RefuteError, StrongCandidate};
pub use sample::sample_solutions;
pub use stream::{stream_agreement, StreamError};

/// Symbols compared by the stream checks in the suite.
pub const STREAM_LEN: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HarnessError {
    #[error("unknown reduction `{0}`")]
    UnknownReduction(String),
    #[error("instance is not a valid `{0}` instance")]
    InvalidSource(String),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("invalid limits: {0}")]
    Limits(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub instance: Instance,
    pub target_solution: Option<Solution>,
    pub decoded: Option<Solution>,
    pub violated: String,
}

impl Failure {
    fn new(instance: &Instance, violated: impl Into<String>) -> Self {
        Failure {
            instance: instance.clone(),
            target_solution: None,
            decoded: None,
            violated: violated.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "instance": instance_to_json(&self.instance),
            "target_solution": self.target_solution.as_ref().map(solution_to_json),
            "decoded": self.decoded.as_ref().map(solution_to_json),
            "violated": self.violated,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub reduction: String,
    pub trials: u64,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(reduction: impl Into<String>) -> Self {
        Report {
            reduction: reduction.into(),
            trials: 0,
            failures: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// Folds another report on the same subject into this one.
    pub fn merge(&mut self, other: Report) {
        self.trials += other.trials;
        self.failures.extend(other.failures);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "reduction": self.reduction,
            "trials": self.trials,
            "failures": self.failures.iter().map(Failure::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Suite {
    pub reports: Vec<Report>,
}

impl Suite {
    pub fn ok(&self) -> bool {
        self.reports.iter().all(Report::ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok(),
            "reports": self.reports.iter().map(Report::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Runs the named reduction on one source instance and validates every
/// decoded sample of the target.
pub fn check_reduction(name: &str, instance: &Instance, seed: u64) -> Result<Report, HarnessError> {
    let record = find(name).map_err(|_| HarnessError::UnknownReduction(name.into()))?;
    let source = (record.source)();
    if instance.id() != source || instance.check().is_err() {
        return Err(HarnessError::InvalidSource(source.to_string()));
    }
    let mut report = Report::new(name);
    report.trials = 1;
    let target = match record.forward(instance) {
        Ok(t) => t,
        Err(e) => {
            report.failures.push(Failure::new(instance, format!("forward failed: {e}")));
            return Ok(report);
        }
    };
    if target.id() != (record.target)() {
        report
            .failures
            .push(Failure::new(instance, format!("forward produced a `{}` instance", target.id())));
        return Ok(report);
    }
    if let Err(e) = target.check() {
        report.failures.push(Failure::new(instance, format!("target instance invalid: {e}")));
        return Ok(report);
    }
    let mut rng = Generator::new(seed, Limits::default());
    for s in sample_solutions(&target, rng.rng()) {
        let fail = |violated: String, decoded: Option<Solution>| Failure {
            instance: instance.clone(),
            target_solution: Some(s.clone()),
            decoded,
            violated,
        };
        if !target.validate(&s) {
            report.failures.push(fail("sampled target solution is invalid".into(), None));
            continue;
        }
        match record.backward(instance, &s) {
            Ok(d) if instance.validate(&d) => {}
            Ok(d) => report.failures.push(fail("decoded solution is invalid".into(), Some(d))),
            Err(e) => report.failures.push(fail(format!("backward failed: {e}"), None)),
        }
    }
    Ok(report)
}

/// `trials` generated instances of the record's source.
pub fn check_record(name: &str, seed: u64, trials: u64, limits: &Limits) -> Result<Report, HarnessError> {
    let record = find(name).map_err(|_| HarnessError::UnknownReduction(name.into()))?;
    let source = (record.source)();
    let mut report = Report::new(name);
    for t in 0..trials {
        let s = trial_seed(seed, name, t);
        let instance = gen_instance(&source, s, limits);
        report.merge(check_reduction(name, &instance, s)?);
    }
    Ok(report)
}

/// Stream agreement over `trials` generated instances, at [`STREAM_LEN`].
pub fn check_stream(name: &str, seed: u64, trials: u64, limits: &Limits) -> Result<Report, HarnessError> {
    let record = find(name).map_err(|_| HarnessError::UnknownReduction(name.into()))?;
    let tag = format!("stream:{name}");
    let mut report = Report::new(&tag);
    for t in 0..trials {
        let instance = gen_instance(&(record.source)(), trial_seed(seed, &tag, t), limits);
        report.trials += 1;
        match stream_agreement(name, &instance, STREAM_LEN) {
            Ok(true) => {}
            Ok(false) => report.failures.push(Failure::new(&instance, "streams disagree")),
            Err(e) => report.failures.push(Failure::new(&instance, e.to_string())),
        }
    }
    Ok(report)
}

type Law = fn(u64, u64, &Limits) -> Report;

/// Runs `body` on `trials` seeded generators, recording what it returns.
fn law(name: &str, seed: u64, trials: u64, limits: &Limits, mut body: impl FnMut(u64, &mut Generator) -> Option<Failure>) -> Report {
    let tag = format!("law:{name}");
    let mut report = Report::new(&tag);
    for t in 0..trials {
        let mut g = Generator::new(trial_seed(seed, &tag, t), *limits);
        report.trials += 1;
        report.failures.extend(body(t, &mut g));
    }
    report
}

fn colored(c: &Coloring, violated: String) -> Option<Failure> {
    Some(Failure::new(&Instance::Ert(c.clone()), violated))
}

/// The three minimum-ERT computations agree.
pub fn min_ert_agreement(seed: u64, trials: u64, limits: &Limits) -> Report {
    law("min_ert_agreement", seed, trials, limits, |_, g| {
        let c = g.coloring();
        let (a, b, o) = (bound_from_t0(&c), min_ert_last_singleton(&c), min_ert_oracle(&c));
        (a != o || b != o).then(|| Failure {
            decoded: Some(Solution::Number(a)),
            ..Failure::new(&Instance::MinErt(c), format!("t0 {a}, last singleton {b}, oracle {o}"))
        })
    })
}

/// At a seeded `(coloring, b, j)`: ECT is upward closed, ECT ⇒ ERT,
/// ERT(2) ⇔ ERT, ERT(j+1) ⇒ ERT(j), ERT(1) holds at 0, and ERT(j) holds at
/// every bound from the settled point on.
pub fn validator_laws(seed: u64, trials: u64, limits: &Limits) -> Report {
    law("validators", seed, trials, limits, |_, g| {
        let c = g.coloring();
        let settled = c.settled_from();
        let b = g.rng().gen_range(0..=settled + 2);
        let j = g.rng().gen_range(1..=5);
        let fail = |what: &str| colored(&c, format!("{what} at b={b}, j={j}"));
        if ect_validate(&c, b) && !ect_validate(&c, b + 1) {
            return fail("ECT not upward closed");
        }
        if ect_validate(&c, b) && !ert_validate(&c, b) {
            return fail("ECT bound is not an ERT bound");
        }
        if ertj_validate(&c, 2, b) != ert_validate(&c, b) {
            return fail("ERT(2) differs from ERT");
        }
        if ertj_validate(&c, j + 1, b) && !ertj_validate(&c, j, b) {
            return fail("ERT(j+1) does not imply ERT(j)");
        }
        if !ertj_validate(&c, 1, 0) {
            return fail("ERT(1) fails at 0");
        }
        if b >= settled && !ertj_validate(&c, j, b) {
            return fail("ERT(j) fails past the settled point");
        }
        if min_ect_oracle(&c) < min_ert_oracle(&c) {
            return fail("minECT below minERT");
        }
        let p = c.word().unwrap().prefix().len() as u64;
        if !ect_validate(&c, p) || !ert_validate(&c, p) {
            return fail("end of prefix is not a valid bound");
        }
        None
    })
}

/// Seeded `(coloring, b, j)` where an ERT(j) bound `b` is valid but `b+1` is
/// not. A color seen exactly twice from `b` on, once at `b`, is enough, so
/// ERT bounds are not upward closed; the failures list the witnesses.
pub fn ertj_upward_breaks(seed: u64, trials: u64, limits: &Limits) -> Report {
    law("ertj_upward_breaks", seed, trials, limits, |_, g| {
        let c = g.coloring();
        let b = g.rng().gen_range(0..=c.settled_from() + 2);
        let j = g.rng().gen_range(1..=5);
        let broken = ertj_validate(&c, j, b) && !ertj_validate(&c, j, b + 1);
        broken.then(|| Failure::new(&Instance::ErtJ { coloring: c, j }, format!("valid at {b}, not at {}", b + 1)))
    })
}

/// The validators against their quantifier definitions, read over a window
/// that covers every residue class of the period.
pub fn direct_definitions(seed: u64, trials: u64, limits: &Limits) -> Report {
    law("direct_definitions", seed, trials, limits, |_, g| {
        let c = g.coloring();
        let w = c.word().unwrap();
        let b = g.rng().gen_range(0..=c.settled_from() + 1);
        let q = w.period().len() as u64;
        let end = b.max(w.prefix().len() as u64) + q;
        let f = |n: u64| c.at(n);
        let ert = (b..end).all(|x| (b..end + q).any(|y| y != x && f(y) == f(x)));
        let ect = (b..end).all(|x| (x + 1..end + q).any(|y| f(y) == f(x)));
        if ert != ert_validate(&c, b) || ect != ect_validate(&c, b) {
            return colored(&c, format!("validator differs from its definition at b={b}"));
        }
        None
    })
}

/// Witness tables hold least pairs inside the tail, for exactly its colors.
pub fn witness_tables(seed: u64, trials: u64, limits: &Limits) -> Report {
    law("witness_tables", seed, trials, limits, |_, g| {
        let c = g.coloring();
        let min = min_ert_oracle(&c);
        if min > 0 && ert_prime_witness(&c, min - 1).is_ok() {
            return colored(&c, "witness table for an invalid bound".into());
        }
        let b = (min + g.rng().gen_range(0..3)..).find(|&b| ert_validate(&c, b)).unwrap();
        let Ok(table) = ert_prime_witness(&c, b) else {
            return colored(&c, format!("no witness table at valid bound {b}"));
        };
        let w = c.word().unwrap();
        let end = b.max(w.prefix().len() as u64) + w.period().len() as u64;
        let tail = (b..end).map(|n| c.at(n)).collect();
        let good = table.bound == b
            && table.colors() == tail
            && table.pairs.iter().all(|(&i, &(x, y))| {
                b <= x
                    && x < y
                    && c.at(x) == i
                    && c.at(y) == i
                    && (b..x).all(|n| c.at(n) != i)
                    && (x + 1..y).all(|n| c.at(n) != i)
            });
        (!good).then(|| Failure::new(&Instance::Ert(c.clone()), format!("bad witness table at {b}")))
    })
}

/// `tcn_solve` and `cn_solve` return members of the target.
pub fn choice_solvers(seed: u64, trials: u64, limits: &Limits) -> Report {
    law("choice_solvers", seed, trials, limits, |_, g| {
        let e = g.enumeration();
        if !tcn_validate(&e, tcn_solve(&e)) {
            return Some(Failure::new(&Instance::Tcn(e), "tcn_solve is invalid"));
        }
        match (e.target_set(), cn_solve(&e)) {
            (t, Ok(n)) if !t.is_empty() && cn_validate(&e, n) => None,
            (t, Err(_)) if t.is_empty() => None,
            _ => Some(Failure::new(&Instance::Cn(e), "cn_solve is wrong")),
        }
    })
}

/// The chains rebuilt from LPO answers are the chains of the coloring.
pub fn reconstructed_chains(seed: u64, trials: u64, limits: &Limits) -> Report {
    let record = find("ert_to_lpostar").unwrap();
    law("reconstructed_chains", seed, trials, limits, |_, g| {
        let c = g.coloring();
        let source = Instance::Ert(c.clone());
        let answers: Vec<u8> = match record.forward(&source).map(|t| t.solve()) {
            Ok(Ok(Solution::Tuple(bits))) => bits.iter().filter_map(Solution::as_bit).collect(),
            _ => return colored(&c, "LPO* image does not solve".into()),
        };
        (reconstructed_t(&c, &answers) != stz_sets(&c).t).then(|| Failure::new(&source, "reconstructed T differs"))
    })
}

/// Decodes of the two exact minECT reductions equal the least bound.
pub fn exact_minect(seed: u64, trials: u64, limits: &Limits) -> Report {
    let mut report = Report::new("law:exact_minect");
    for name in ["minect_to_tcn_isinf", "minect_to_csharpmax"] {
        let record = find(name).unwrap();
        report.merge(law(&format!("exact_minect:{name}"), seed, trials, limits, |_, g| {
            let c = g.coloring();
            let source = Instance::MinEct(c.clone());
            let target = record.forward(&source).ok()?;
            let want = Solution::Number(min_ect_oracle(&c));
            sample_solutions(&target, g.rng()).into_iter().find_map(|s| {
                let d = record.backward(&source, &s).ok();
                (d.as_ref() != Some(&want)).then(|| Failure {
                    instance: source.clone(),
                    target_solution: Some(s),
                    decoded: d,
                    violated: format!("{name} decode differs from {want:?}"),
                })
            })
        }));
    }
    report
}

/// Pair decodes equal both least bounds. Every fourth pair has a right member
/// whose colors all occur infinitely often; returns how many such pairs ran.
pub fn pair_decode(seed: u64, trials: u64, limits: &Limits) -> (Report, u64) {
    let mut all_infinite = 0;
    let report = law("pair_decode", seed, trials, limits, |t, g| {
        let p = g.coloring();
        let mut q = g.coloring();
        if t % 4 == 0 {
            let period = q.word().unwrap().period().to_vec();
            q = Coloring::lasso(Word::periodic(period).unwrap(), q.palette).unwrap();
        }
        if q.profile().values().all(|i| i.is_infinite()) {
            all_infinite += 1;
        }
        let source = Instance::Product(vec![Instance::MinEct(p.clone()), Instance::MinEct(q.clone())]);
        let b = min_ect_oracle(&pair_colorings(&p, &q));
        let got = decode_pair(&p, &q, b);
        let want = (min_ect_oracle(&p), min_ect_oracle(&q));
        (got != want).then(|| Failure {
            target_solution: Some(Solution::Number(b)),
            decoded: Some(Solution::Tuple(vec![Solution::Number(got.0), Solution::Number(got.1)])),
            ..Failure::new(&source, format!("decode {got:?}, expected {want:?}"))
        })
    });
    (report, all_infinite)
}

fn pair_decode_law(seed: u64, trials: u64, limits: &Limits) -> Report {
    pair_decode(seed, trials, limits).0
}

/// The gadget's target is the single code in column `#ones` when the word
/// has finitely many ones, and empty otherwise.
pub fn ones_gadget(seed: u64, finite: u64, infinite: u64, limits: &Limits) -> Report {
    law("ones_gadget", seed, finite + infinite, limits, |t, g| {
        let mut p = g.binary_word();
        let want_finite = t < finite;
        let period = p.period().to_vec();
        if want_finite {
            p = Word::new(p.prefix().to_vec(), vec![0]).unwrap();
        } else if !period.contains(&1) {
            p = Word::new(p.prefix().to_vec(), vec![1]).unwrap();
        }
        let target = ones_count_gadget(&p).target_set();
        let ones = p.prefix().iter().filter(|&&x| x == 1).count() as u64;
        let good = match (&target, want_finite) {
            (TargetSet::Finite(members), true) => {
                members.len() == 1 && unpair(*members.iter().next().unwrap()).0 == ones
            }
            (t, false) => t.is_empty(),
            _ => false,
        };
        (!good).then(|| Failure::new(&Instance::IsInfinite(p.clone()), format!("gadget target {target:?}")))
    })
}

fn ones_gadget_law(seed: u64, trials: u64, limits: &Limits) -> Report {
    ones_gadget(seed, trials - trials / 4, trials / 4, limits)
}

pub const LAWS: [(&str, Law); 10] = [
    ("min_ert_agreement", min_ert_agreement),
    ("validators", validator_laws),
    ("direct_definitions", direct_definitions),
    ("witness_tables", witness_tables),
    ("choice_solvers", choice_solvers),
    ("reconstructed_chains", reconstructed_chains),
    ("exact_minect", exact_minect),
    ("pair_decode", pair_decode_law),
    ("ones_gadget", ones_gadget_law),
    ("ect_bounds", ect_bounds),
];

/// The least ECT bound is valid, minimal, and never below the least ERT bound.
pub fn ect_bounds(seed: u64, trials: u64, limits: &Limits) -> Report {
    law("ect_bounds", seed, trials, limits, |_, g| {
        let c = g.coloring();
        let m = min_ect_oracle(&c);
        let good = ect_validate(&c, m) && (m == 0 || !ect_validate(&c, m - 1)) && m >= min_ert_oracle(&c);
        (!good).then(|| Failure::new(&Instance::MinEct(c.clone()), format!("least ECT bound {m}")))
    })
}

/// Every registered reduction on `trials` instances, then the stream checks
/// and the laws. With `only`, just that reduction and its stream check.
pub fn run_suite(seed: u64, trials: u64, limits: &Limits, only: Option<&str>) -> Result<Suite, HarnessError> {
    if trials == 0 {
        return Err(HarnessError::NoTrials);
    }
    limits.validate().map_err(HarnessError::Limits)?;
    let records: Vec<_> = match only {
        Some(name) => vec![find(name).map_err(|_| HarnessError::UnknownReduction(name.into()))?],
        None => ertect_core::registry(),
    };
    let mut reports = Vec::new();
    for r in &records {
        reports.push(check_record(r.name, seed, trials, limits)?);
    }
    for r in records.iter().filter(|r| r.streaming) {
        reports.push(check_stream(r.name, seed, trials, limits)?);
    }
    if only.is_none() {
        reports.extend(LAWS.iter().map(|(_, run)| run(seed, trials, limits)));
    }
    Ok(Suite { reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let limits = Limits::default();
        let a = run_suite(42, 8, &limits, None).unwrap();
        for r in &a.reports {
            assert!(r.ok(), "{}", r.to_json());
        }
        assert_eq!(a, run_suite(42, 8, &limits, None).unwrap());
        assert_eq!(run_suite(42, 0, &limits, None), Err(HarnessError::NoTrials));
        let only = run_suite(1, 3, &limits, Some("minect_pair")).unwrap();
        assert_eq!(only.reports.len(), 1);
    }

    #[test]
    fn rejects_wrong_sources() {
        let i = Instance::Lpo(Word::constant(0));
        assert!(matches!(check_reduction("nope", &i, 0), Err(HarnessError::UnknownReduction(_))));
        assert!(matches!(check_reduction("minect_pair", &i, 0), Err(HarnessError::InvalidSource(_))));
    }

    #[test]
    fn source_ids_are_stable() {
        assert_eq!(find("minect_pair").map(|r| (r.source)()).unwrap().to_string(), "product(minect,minect)");
    }
}
