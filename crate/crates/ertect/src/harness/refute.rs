//! Adversaries against claimed strong reductions ERT ≤sW LPO* and LPO ≤sW ECT.
//!
//! A candidate reads its source only through a [`Probe`], which records how
//! far the forward looked; its backward sees the target solution alone.

use std::cell::Cell;

use ertect_core::problems::{ect_validate, ert_validate, lpo_solve, min_ect_oracle, min_ert_oracle};
use ertect_core::reductions::find;
use ertect_core::{Coloring, Instance, ProblemId, Solution, Word};
use serde_json::{Value, json};
use thiserror::Error;

use crate::json::{instance_to_json, solution_to_json};

/// An instrumented source stream.
pub struct Probe<'a> {
    source: &'a dyn Fn(u64) -> u64,
    used: Cell<u64>,
}

impl<'a> Probe<'a> {
    pub fn new(source: &'a dyn Fn(u64) -> u64) -> Self {
        Probe {
            source,
            used: Cell::new(0),
        }
    }

    pub fn read(&self, n: u64) -> u64 {
        self.used.set(self.used.get().max(n + 1));
        (self.source)(n)
    }

    /// Length of the prefix inspected so far.
    pub fn used(&self) -> u64 {
        self.used.get()
    }
}

#[derive(Clone, Copy)]
pub struct StrongCandidate {
    pub name: &'static str,
    pub forward: fn(&Probe<'_>) -> Instance,
    pub backward: fn(&Solution) -> Solution,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RefuteError {
    #[error("candidate not refuted: {0}")]
    NotRefuted(String),
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),
    #[error("unknown refuter `{0}`")]
    UnknownRefuter(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub refuter: &'static str,
    pub candidate: &'static str,
    /// The source instance the candidate answers wrongly.
    pub instance: Instance,
    pub target_solution: Solution,
    pub decoded: Solution,
    pub violated: String,
    /// Source positions read by the forward.
    pub use_bound: Option<u64>,
    /// Least valid ERT bound of the instance, for the ERT refuter.
    pub min_bound: Option<u64>,
}

impl Counterexample {
    pub fn to_json(&self) -> Value {
        json!({
            "refuter": self.refuter,
            "candidate": self.candidate,
            "instance": instance_to_json(&self.instance),
            "target_solution": solution_to_json(&self.target_solution),
            "decoded": solution_to_json(&self.decoded),
            "violated": self.violated,
            "use": self.use_bound,
            "min_bound": self.min_bound,
        })
    }

    /// Re-runs `c` on the counterexample instance and confirms its answer
    /// still fails there.
    pub fn revalidate(&self, c: &StrongCandidate) -> bool {
        let (target, _) = run_forward(c, &self.instance);
        let decoded = (c.backward)(&self.target_solution);
        target.validate(&self.target_solution) && decoded == self.decoded && !self.instance.validate(&decoded)
    }
}

fn stream_of(i: &Instance) -> Box<dyn Fn(u64) -> u64 + '_> {
    match i {
        Instance::Lpo(w) => Box::new(move |n| *w.at(n)),
        other => {
            let c = other.coloring().expect("refuter sources are words or colorings");
            Box::new(move |n| c.at(n))
        }
    }
}

fn run_forward(c: &StrongCandidate, source: &Instance) -> (Instance, u64) {
    let read = stream_of(source);
    let probe = Probe::new(&*read);
    let target = (c.forward)(&probe);
    (target, probe.used())
}

fn two_coloring(prefix: Vec<u64>, period: Vec<u64>) -> Instance {
    Instance::Ert(Coloring::lasso(Word::new(prefix, period).unwrap(), 2).unwrap())
}

fn lpostar(words: Vec<Word<u64>>) -> Instance {
    Instance::Star {
        problem: ProblemId::Lpo,
        items: words.into_iter().map(Instance::Lpo).collect(),
    }
}

/// Runs the candidate on the constant-0 coloring with use `k` and answer `m`,
/// then moves a lone 1 to position `k+m`: the forward cannot tell the two
/// apart, but every valid bound for the new coloring is at least `k+m+1`.
pub fn refute_strong_ert_to_lpostar(c: &StrongCandidate) -> Result<Counterexample, RefuteError> {
    let f1 = two_coloring(vec![], vec![0]);
    let (g1, k) = run_forward(c, &f1);
    if g1.check().is_err() || g1.id() != ProblemId::star(ProblemId::Lpo) {
        return Err(RefuteError::NotRefuted("forward did not produce an LPO* instance".into()));
    }
    let s = g1.solve().expect("checked target");
    let Solution::Number(m) = (c.backward)(&s) else {
        return Err(RefuteError::NotRefuted("backward did not produce a bound".into()));
    };
    let mut prefix = vec![0; (k + m) as usize];
    prefix.push(1);
    let f2 = two_coloring(prefix, vec![0]);
    let (g2, k2) = run_forward(c, &f2);
    if g2 != g1 || k2 != k {
        return Err(RefuteError::NotRefuted(
            "forward output changed on an input agreeing with the used prefix".into(),
        ));
    }
    let coloring = f2.coloring().unwrap();
    let min_bound = min_ert_oracle(coloring);
    if ert_validate(coloring, m) {
        return Err(RefuteError::NotRefuted(format!("bound {m} is valid for the shifted coloring")));
    }
    Ok(Counterexample {
        refuter: "strong_ert_lpostar",
        candidate: c.name,
        instance: f2,
        target_solution: s,
        decoded: Solution::Number(m),
        violated: format!("ert_validate(f2, {m}) is false"),
        use_bound: Some(k),
        min_bound: Some(min_bound),
    })
}

/// Both constant LPO inputs get ECT images with one common valid bound, so a
/// solution-only backward must answer them alike; one of them is wrong.
pub fn refute_strong_lpo_to_ect(c: &StrongCandidate) -> Result<Counterexample, RefuteError> {
    let f1 = Instance::Lpo(Word::constant(1));
    let f2 = Instance::Lpo(Word::constant(0));
    let (g1, _) = run_forward(c, &f1);
    let (g2, _) = run_forward(c, &f2);
    let (Instance::Ect(c1), Instance::Ect(c2)) = (&g1, &g2) else {
        return Err(RefuteError::NotRefuted("forward did not produce ECT instances".into()));
    };
    if c1.check().is_err() || c2.check().is_err() {
        return Err(RefuteError::NotRefuted("forward produced an invalid coloring".into()));
    }
    let b = min_ect_oracle(c1).max(min_ect_oracle(c2));
    debug_assert!(ect_validate(c1, b) && ect_validate(c2, b));
    let s = Solution::Number(b);
    let a = (c.backward)(&s);
    let wrong = [f1, f2].into_iter().find(|f| !f.validate(&a));
    let Some(instance) = wrong else {
        return Err(RefuteError::NotRefuted("one answer satisfied two different inputs".into()));
    };
    let Instance::Lpo(w) = &instance else { unreachable!() };
    Ok(Counterexample {
        refuter: "strong_lpo_ect",
        candidate: c.name,
        violated: format!("LPO answer should be {}", lpo_solve(w)),
        instance,
        target_solution: s,
        decoded: a,
        use_bound: None,
        min_bound: None,
    })
}

fn blind_forward(p: &Probe<'_>) -> Instance {
    let guess = Coloring::lasso(Word::constant(p.read(0)), 2).unwrap();
    p.read(1);
    let record = find("ert_to_lpostar").unwrap();
    record.forward(&Instance::Ert(guess)).unwrap()
}

fn blind_backward(s: &Solution) -> Solution {
    let record = find("ert_to_lpostar").unwrap();
    let assumed = Instance::Ert(Coloring::lasso(Word::constant(0), 2).unwrap());
    record.backward(&assumed, s).unwrap_or(Solution::Number(0))
}

/// Candidates for ERT ≤sW LPO*.
pub fn ert_candidates() -> Vec<StrongCandidate> {
    vec![
        StrongCandidate {
            name: "blind_ert_via_lpostar",
            forward: blind_forward,
            backward: blind_backward,
        },
        StrongCandidate {
            name: "input_ignoring",
            forward: |_| lpostar(vec![Word::constant(1)]),
            backward: |_| Solution::Number(3),
        },
        StrongCandidate {
            name: "use0_zero",
            forward: |_| lpostar(vec![]),
            backward: |_| Solution::Number(0),
        },
    ]
}

fn constant_image(p: &Probe<'_>) -> Instance {
    p.read(0);
    Instance::Ect(Coloring::lasso(Word::constant(0), 1).unwrap())
}

/// A lone finite color at position 0 exactly when `f(0) = 0`.
fn gadget_forward(p: &Probe<'_>) -> Instance {
    let word = match p.read(0) {
        0 => Word::new(vec![1], vec![0]).unwrap(),
        _ => Word::constant(0),
    };
    Instance::Ect(Coloring::lasso(word, 2).unwrap())
}

/// Candidates for LPO ≤sW ECT.
pub fn lpo_ect_candidates() -> Vec<StrongCandidate> {
    vec![
        StrongCandidate {
            name: "constant_zero",
            forward: constant_image,
            backward: |_| Solution::Bit(0),
        },
        StrongCandidate {
            name: "constant_one",
            forward: constant_image,
            backward: |_| Solution::Bit(1),
        },
        StrongCandidate {
            name: "lpostar_gadget_decoder",
            forward: gadget_forward,
            backward: |s| Solution::Bit(u8::from(s.as_number() == Some(0))),
        },
    ]
}

pub const REFUTERS: [&str; 2] = ["strong_ert_lpostar", "strong_lpo_ect"];

/// Runs the named refuter against the named candidate.
pub fn refute(refuter: &str, candidate: &str) -> Result<(Counterexample, StrongCandidate), RefuteError> {
    let (pool, run): (Vec<StrongCandidate>, fn(&StrongCandidate) -> Result<Counterexample, RefuteError>) =
        match refuter {
            "strong_ert_lpostar" => (ert_candidates(), refute_strong_ert_to_lpostar),
            "strong_lpo_ect" => (lpo_ect_candidates(), refute_strong_lpo_to_ect),
            other => return Err(RefuteError::UnknownRefuter(other.into())),
        };
    let c = pool
        .into_iter()
        .find(|c| c.name == candidate)
        .ok_or_else(|| RefuteError::UnknownCandidate(candidate.into()))?;
    Ok((run(&c)?, c))
}
