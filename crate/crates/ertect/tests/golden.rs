//! Worked examples for the harness, the refuters and the command line.

use std::io::Write;
use std::process::Command;

use ertect::harness::refute::{refute, ert_candidates, lpo_ect_candidates};
use ertect::harness::{check_reduction, gen_instance, run_suite, stream_agreement, HarnessError, Limits};
use ertect_core::problems::{ert_validate, min_ert_oracle};
use ertect_core::reductions::find;
use ertect_core::{Coloring, Instance, ProblemId, Solution, Tail, Word};
use serde_json::{json, Value};

fn w(prefix: &[u64], period: &[u64]) -> Word<u64> {
    Word::new(prefix.to_vec(), period.to_vec()).unwrap()
}

fn col(prefix: &[u64], period: &[u64], k: u64) -> Coloring {
    Coloring::lasso(w(prefix, period), k).unwrap()
}

/// Runs the binary on an instance file, returning exit code and stdout JSON.
fn cli(args: &[&str], instance: Option<Value>) -> (i32, Value) {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ertect"));
    cmd.args(args);
    if let Some(v) = instance {
        write!(file, "{v}").unwrap();
        cmd.arg(file.path());
    }
    let out = cmd.output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let payload = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), payload)
}

/// Declares each case as a test, and lists them all in `CASES` so the
/// acceptance run can replay them.
macro_rules! golden {
    ($(fn $name:ident() $body:block)*) => {
        $(fn $name() $body)*

        mod cases {
            $(#[test] fn $name() { super::$name() })*
        }

        #[allow(dead_code)]
        pub const CASES: &[(&str, fn())] = &[$((stringify!($name), $name)),*];
    };
}

golden! {
    fn generator_contract() {
        let limits = Limits::default();
        let Instance::Ert(c) = gen_instance(&ProblemId::Ert, 1, &limits) else { panic!() };
        assert!(c.palette <= limits.max_palette);
        assert_eq!(gen_instance(&ProblemId::Ert, 1, &limits), Instance::Ert(c));
        let Instance::Tcn(e) = gen_instance(&ProblemId::Tcn, 2, &limits) else { panic!() };
        if let Tail::AllExcept(skip) = e.tail {
            assert!(skip.len() <= limits.max_skip_set);
        }
    }

    fn checked_reductions() {
        let ect = Instance::Ect(col(&[1, 1], &[0], 2));
        assert!(check_reduction("ect_to_tcn_star", &ect, 1).unwrap().ok());

        let lpo = Instance::Lpo(w(&[], &[7]));
        assert!(check_reduction("lpo_to_tcn_strong", &lpo, 1).unwrap().ok());
        let r = find("lpo_to_tcn_strong").unwrap();
        let s = r.forward(&lpo).unwrap().solve().unwrap();
        assert_eq!(r.backward(&lpo, &s).unwrap(), Solution::Bit(1));

        let pair = Instance::Product(vec![
            Instance::MinEct(col(&[1], &[0], 2)),
            Instance::MinEct(col(&[], &[0], 1)),
        ]);
        assert!(check_reduction("minect_pair", &pair, 1).unwrap().ok());
        let r = find("minect_pair").unwrap();
        let s = r.forward(&pair).unwrap().solve().unwrap();
        let decoded = r.backward(&pair, &s).unwrap();
        assert_eq!(decoded, Solution::Tuple(vec![Solution::Number(1), Solution::Number(0)]));
    }

    fn stream_examples() {
        assert_eq!(stream_agreement("isinf_to_minect", &Instance::IsInfinite(w(&[], &[1])), 64), Ok(true));
        let ertj = Instance::ErtJ { coloring: col(&[], &[0, 1], 2), j: 2 };
        assert_eq!(stream_agreement("ertj_to_ert", &ertj, 64), Ok(true));
        assert_eq!(stream_agreement("lpo_to_tcn_strong", &Instance::Lpo(w(&[], &[0])), 16), Ok(true));
    }

    fn ert_refutations() {
        let (cx, _) = refute("strong_ert_lpostar", "blind_ert_via_lpostar").unwrap();
        let Instance::Ert(f2) = &cx.instance else { panic!() };
        let m = cx.decoded.as_number().unwrap();
        assert!(!ert_validate(f2, m));

        let (cx, _) = refute("strong_ert_lpostar", "input_ignoring").unwrap();
        let Instance::Ert(f2) = &cx.instance else { panic!() };
        assert!(!ert_validate(f2, cx.decoded.as_number().unwrap()));

        let (cx, _) = refute("strong_ert_lpostar", "use0_zero").unwrap();
        assert_eq!((cx.use_bound, cx.decoded.clone()), (Some(0), Solution::Number(0)));
        let Instance::Ert(f2) = &cx.instance else { panic!() };
        assert_eq!(f2.word().unwrap(), &w(&[1], &[0]));
        assert_eq!(min_ert_oracle(f2), 1);
        assert!(ert_candidates().len() >= 2);
    }

    fn lpo_ect_refutations() {
        let f1 = Instance::Lpo(w(&[], &[1]));
        let f2 = Instance::Lpo(w(&[], &[0]));
        assert_eq!(refute("strong_lpo_ect", "constant_zero").unwrap().0.instance, f1);
        assert_eq!(refute("strong_lpo_ect", "constant_one").unwrap().0.instance, f2);
        let (cx, c) = refute("strong_lpo_ect", "lpostar_gadget_decoder").unwrap();
        assert!(cx.instance == f1 || cx.instance == f2);
        assert!(cx.revalidate(&c));
        assert!(lpo_ect_candidates().len() >= 2);
    }

    fn suite_examples() {
        let limits = Limits::default();
        let a = run_suite(42, 200, &limits, None).unwrap();
        assert!(a.ok(), "{}", a.to_json());
        assert_eq!(a, run_suite(42, 200, &limits, None).unwrap());
        assert_eq!(run_suite(42, 0, &limits, None), Err(HarnessError::NoTrials));
    }

    fn cli_solve() {
        let ert = json!({"kind":"ert","k":2,"word":{"prefix":[0,1,0],"period":[0]}});
        assert_eq!(cli(&["solve", "minert"], Some(ert)), (0, json!({"solution":{"number":2}})));
        let lpo = json!({"kind":"lpo","word":{"prefix":[],"period":[0]}});
        assert_eq!(cli(&["solve", "lpo"], Some(lpo)), (0, json!({"solution":{"bit":0}})));
        let tcn = json!({"kind":"tcn","explicit":[],"tail":{"type":"all_except","skip":[4]}});
        assert_eq!(cli(&["solve", "tcn"], Some(tcn)), (0, json!({"solution":{"number":4}})));
    }

    fn cli_reduce() {
        let all_valid = |v: &Value| v["samples"].as_array().unwrap().iter().all(|s| s["valid"] == json!(true));
        let ect = json!({"kind":"ect","k":2,"word":{"prefix":[1,1],"period":[0]}});
        let (code, out) = cli(&["reduce", "ect_to_tcn_star"], Some(ect));
        assert_eq!(code, 0);
        assert!(all_valid(&out));

        let lpo = json!({"kind":"lpo","word":{"prefix":[],"period":[7]}});
        let (code, out) = cli(&["reduce", "lpo_to_tcn_strong"], Some(lpo));
        assert_eq!(code, 0);
        assert_eq!(out["samples"][0]["decoded"], json!({"bit":1}));
        assert!(all_valid(&out));

        let ertj = json!({"kind":"ertj","k":2,"j":3,"word":{"prefix":[1,1,1],"period":[0]}});
        let (code, out) = cli(&["reduce", "ertj_to_ert"], Some(ertj));
        assert_eq!(code, 0);
        assert_eq!(out["samples"][0]["decoded"], json!({"number":3}));
        assert!(all_valid(&out));
    }

    fn cli_verify() {
        let (code, out) = cli(&["verify", "--trials", "200", "--seed", "42"], None);
        assert_eq!((code, &out["ok"]), (0, &json!(true)));
        assert_eq!(cli(&["verify", "--only", "minect_pair", "--trials", "50"], None).0, 0);
        assert_eq!(cli(&["verify", "--trials", "0"], None).0, 2);
    }

    fn cli_refute() {
        let (code, out) = cli(&["refute", "strong_ert_lpostar", "--candidate", "blind_ert_via_lpostar"], None);
        assert_eq!(code, 0);
        assert_eq!(out["candidate"], json!("blind_ert_via_lpostar"));
        let (code, out) = cli(&["refute", "strong_lpo_ect", "--candidate", "constant_zero"], None);
        assert_eq!((code, &out["instance"]["word"]), (0, &json!({"prefix":[],"period":[1]})));
        let (code, out) = cli(&["refute", "strong_lpo_ect", "--candidate", "constant_one"], None);
        assert_eq!((code, &out["instance"]["word"]), (0, &json!({"prefix":[],"period":[0]})));
    }
}
