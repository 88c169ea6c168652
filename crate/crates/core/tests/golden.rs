//! Worked examples, checked end to end through the public API.

use std::collections::BTreeSet;

use ertect_core::problems::{
    csharpmax_solve, csharpmax_validate, ect_validate, ert_prime_witness, ert_validate,
    ertj_validate, lpo_solve, is_infinite_solve, min_ect_oracle, min_ert_oracle, tcn_solve,
    tcn_validate,
};
use ertect_core::reductions::{
    bound_from_t0, candidates, find, min_ert_last_singleton, ones_count_gadget, stz_sets,
};
use ertect_core::{
    pair, unpair, Coloring, Enumeration, FamilyInstance, FiniteSet, Instance, OccurrenceInfo,
    ProblemId, Solution, Symbol, TargetSet, Word,
};

fn w(prefix: &[u64], period: &[u64]) -> Word<u64> {
    Word::new(prefix.to_vec(), period.to_vec()).unwrap()
}

fn col(prefix: &[u64], period: &[u64], k: u64) -> Coloring {
    Coloring::lasso(w(prefix, period), k).unwrap()
}

fn num(n: u64) -> Solution {
    Solution::Number(n)
}

fn bits(bs: &[u8]) -> Solution {
    Solution::Tuple(bs.iter().map(|&b| Solution::Bit(b)).collect())
}

fn star(problem: ProblemId, items: Vec<Instance>) -> Instance {
    Instance::Star { problem, items }
}

fn lpos(words: Vec<Word<u64>>) -> Instance {
    star(ProblemId::Lpo, words.into_iter().map(Instance::Lpo).collect())
}

fn set(xs: &[u64]) -> FiniteSet {
    FiniteSet::from(xs.to_vec())
}

fn family(bound: u64, sets: &[&[u64]]) -> FamilyInstance {
    FamilyInstance::new(bound, Enumeration::all_except(sets.iter().map(|s| set(s))))
}

/// Forward, then decode the given target solution.
fn decode(name: &str, source: &Instance, s: &Solution) -> Solution {
    find(name).unwrap().backward(source, s).unwrap()
}

fn image(name: &str, source: &Instance) -> Instance {
    let t = find(name).unwrap().forward(source).unwrap();
    t.check().unwrap();
    t
}

/// Forward, solve the target semantically, decode.
fn through(name: &str, source: &Instance) -> Solution {
    let s = image(name, source).solve().unwrap();
    decode(name, source, &s)
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
    fn word_reading() {
        assert_eq!(*w(&[1, 2], &[3]).at(0), 1);
        assert_eq!(*w(&[1, 2], &[3]).at(5), 3);
        assert_eq!(*w(&[], &[0]).at(1_000_000), 0);
        assert_eq!(w(&[1], &[2]).stream_prefix(4), vec![1, 2, 2, 2]);
        assert!(w(&[3], &[4, 5]).stream_prefix(0).is_empty());
        assert_eq!(w(&[], &[0, 1]).stream_prefix(3), vec![0, 1, 0]);
    }

    fn canonical_forms() {
        assert_eq!(w(&[0], &[0, 0]).canonicalize(), w(&[], &[0]));
        assert_eq!(w(&[1], &[2, 3, 2, 3]).canonicalize(), w(&[1], &[2, 3]));
        assert_eq!(w(&[1, 2], &[2]).canonicalize(), w(&[1], &[2]));
    }

    fn occurrences() {
        let f = w(&[1, 1], &[0]);
        assert_eq!(f.occurrence_info(&1), OccurrenceInfo::Finite { positions: vec![0, 1] });
        assert_eq!(f.occurrence_info(&0), OccurrenceInfo::Infinite { first: 2 });
        assert_eq!(w(&[], &[0, 1]).occurrence_info(&1), OccurrenceInfo::Infinite { first: 1 });
        assert_eq!(f.infinite_values(), BTreeSet::from([0]));
        assert_eq!(w(&[], &[0, 1]).infinite_values(), BTreeSet::from([0, 1]));
        assert_eq!(w(&[5], &[5]).infinite_values(), BTreeSet::from([5]));
    }

    fn bit_problems() {
        assert_eq!(lpo_solve(&w(&[], &[1])), 1);
        assert_eq!(lpo_solve(&w(&[1, 0], &[1])), 0);
        assert_eq!(lpo_solve(&w(&[], &[0])), 0);
        assert_eq!(is_infinite_solve(&w(&[1, 1], &[0])), 0);
        assert_eq!(is_infinite_solve(&w(&[], &[0, 1])), 1);
        assert_eq!(is_infinite_solve(&w(&[], &[0])), 0);
    }

    fn enumeration_targets() {
        let values = |xs: &[u64]| xs.iter().map(|&x| Symbol::Value(x)).collect::<Vec<_>>();
        let e = Enumeration::new(values(&[0, 1, 3]), ertect_core::Tail::Pauses);
        assert_eq!(e.target_set(), TargetSet::CoFinite { excluded: BTreeSet::from([0, 1, 3]) });
        assert_eq!(tcn_solve(&e), 2);
        assert!(tcn_validate(&e, 7));
        let e = Enumeration::all_except([4]);
        assert_eq!(e.target_set(), TargetSet::Finite(BTreeSet::from([4])));
        assert_eq!(tcn_solve(&e), 4);
        assert!(!tcn_validate(&e, 5));
        let e = Enumeration::<u64>::all_except([]);
        assert_eq!(e.target_set(), TargetSet::Finite(BTreeSet::new()));
        assert_eq!(tcn_solve(&e), 0);
        assert!(tcn_validate(&e, 13));
    }

    fn validators() {
        let c = col(&[0, 1, 0], &[0], 2);
        assert!(!ert_validate(&c, 0));
        assert!(ert_validate(&c, 2));
        assert!(ert_validate(&col(&[], &[0], 1), 0));
        let c = col(&[1, 1], &[0], 2);
        assert!(ert_validate(&c, 0));
        assert!(!ect_validate(&c, 1));
        assert!(ect_validate(&c, 2));
        assert!(ect_validate(&col(&[], &[0, 1], 2), 0));
        assert!(ect_validate(&col(&[0, 1, 0], &[0], 2), 2));
        assert!(ertj_validate(&col(&[], &[0, 1], 2), 5, 0));
        assert!(ertj_validate(&c, 2, 0));
        assert!(!ertj_validate(&c, 3, 0));
        assert!(ertj_validate(&c, 3, 2));
    }

    fn least_bounds() {
        assert_eq!(min_ert_oracle(&col(&[0, 1, 0], &[0], 2)), 2);
        assert_eq!(min_ect_oracle(&col(&[1, 1], &[0], 2)), 2);
        let c = col(&[], &[0, 1], 2);
        assert_eq!((min_ert_oracle(&c), min_ect_oracle(&c)), (0, 0));
    }

    fn witness_tables() {
        let t = ert_prime_witness(&col(&[1, 1], &[0], 2), 0).unwrap();
        assert_eq!(t.colors(), BTreeSet::from([0, 1]));
        assert_eq!((t.pairs[&1], t.pairs[&0]), ((0, 1), (2, 3)));
        let t = ert_prime_witness(&col(&[], &[0], 1), 0).unwrap();
        assert_eq!(t.pairs[&0], (0, 1));
        let t = ert_prime_witness(&col(&[0, 1, 0], &[0], 2), 2).unwrap();
        assert_eq!(t.colors(), BTreeSet::from([0]));
        assert_eq!(t.pairs[&0], (2, 3));
    }

    fn families() {
        let f = family(2, &[&[], &[1], &[3, 5]]);
        assert_eq!(csharpmax_solve(&f).unwrap(), set(&[3, 5]));
        assert_eq!(csharpmax_solve(&family(1, &[&[]])).unwrap(), set(&[]));
        let f = family(1, &[&[], &[2], &[7]]);
        assert_eq!(csharpmax_solve(&f).unwrap(), set(&[2]));
        assert!(csharpmax_validate(&f, &set(&[7])));
    }

    fn compounds() {
        let i = lpos(vec![w(&[], &[1]), w(&[], &[0])]);
        assert_eq!(i.solve().unwrap(), bits(&[1, 0]));
        assert_eq!(star(ProblemId::Lpo, vec![]).solve().unwrap(), Solution::Tuple(vec![]));
        let i = Instance::Product(vec![
            Instance::Tcn(Enumeration::all_except([4])),
            Instance::IsInfinite(w(&[], &[0, 1])),
        ]);
        assert_eq!(i.solve().unwrap(), Solution::Tuple(vec![num(4), Solution::Bit(1)]));
    }

    fn chain_candidates() {
        assert_eq!(candidates(1), vec![Vec::<u64>::new()]);
        assert_eq!(candidates(2), vec![vec![], vec![0], vec![1]]);
        assert_eq!(candidates(3).len(), 10);
    }

    fn chain_sets() {
        let sets = stz_sets(&col(&[0, 1, 0], &[0], 2));
        let keys: BTreeSet<Vec<u64>> = sets.s.keys().cloned().collect();
        assert_eq!(keys, BTreeSet::from([vec![], vec![0], vec![1]]));
        assert_eq!(sets.t, BTreeSet::from([vec![], vec![1]]));
        assert_eq!(sets.t0, BTreeSet::from([vec![1]]));
        assert_eq!(sets.s[&vec![1]], vec![1]);
        let sets = stz_sets(&col(&[], &[0, 1], 2));
        assert_eq!((sets.t.clone(), sets.t0), (BTreeSet::from([vec![]]), BTreeSet::from([vec![]])));
        assert_eq!(stz_sets(&col(&[], &[0], 1)).t0, BTreeSet::from([vec![]]));
    }

    fn chain_bounds() {
        assert_eq!(bound_from_t0(&col(&[0, 1, 0], &[0], 2)), 2);
        assert_eq!(bound_from_t0(&col(&[], &[0, 1], 2)), 0);
        assert_eq!(bound_from_t0(&col(&[1, 1], &[0], 2)), 0);
        assert_eq!(min_ert_last_singleton(&col(&[0, 1, 0], &[0], 2)), 2);
        assert_eq!(min_ert_last_singleton(&col(&[], &[0, 1], 2)), 0);
        assert_eq!(min_ert_last_singleton(&col(&[2, 0, 1, 0, 1], &[0, 1], 3)), 1);
    }

    fn lpostar_into_ert() {
        let src = lpos(vec![w(&[], &[1]), w(&[5, 0], &[3])]);
        let Instance::Ert(g) = image("lpostar_to_ert", &src) else { panic!() };
        assert_eq!(g, col(&[2, 2, 2, 1], &[2], 3));
        assert_eq!(min_ert_oracle(&g), 4);
        assert_eq!(decode("lpostar_to_ert", &src, &num(4)), bits(&[1, 0]));

        let src = lpos(vec![w(&[], &[0])]);
        assert_eq!(image("lpostar_to_ert", &src), Instance::Ert(col(&[0], &[1], 2)));
        assert_eq!(decode("lpostar_to_ert", &src, &num(1)), bits(&[0]));

        let src = lpos(vec![]);
        assert_eq!(image("lpostar_to_ert", &src), Instance::Ert(col(&[], &[0], 1)));
        assert_eq!(decode("lpostar_to_ert", &src, &num(0)), bits(&[]));
    }

    fn ert_into_lpostar() {
        // answers are h_[0], h_[1], h′_[0], h′_[1]
        let src = Instance::Ert(col(&[0, 1, 0], &[0], 2));
        assert_eq!(image("ert_to_lpostar", &src).solve().unwrap(), bits(&[0, 0, 0, 1]));
        assert_eq!(through("ert_to_lpostar", &src), num(2));
        let src = Instance::Ert(col(&[], &[0, 1], 2));
        assert_eq!(image("ert_to_lpostar", &src).solve().unwrap(), bits(&[0, 0, 0, 0]));
        assert_eq!(through("ert_to_lpostar", &src), num(0));
        let src = Instance::Ert(col(&[], &[0], 1));
        assert_eq!(image("ert_to_lpostar", &src).solve().unwrap(), bits(&[]));
        assert_eq!(through("ert_to_lpostar", &src), num(0));
    }

    fn ect_into_tcn_star() {
        let src = Instance::Ect(col(&[1, 1], &[0], 2));
        let expect = star(
            ProblemId::Tcn,
            vec![
                Instance::Tcn(Enumeration::all_except([])),
                Instance::Tcn(Enumeration::then_pause([0, 1])),
            ],
        );
        assert_eq!(image("ect_to_tcn_star", &src), expect);
        let b = decode("ect_to_tcn_star", &src, &Solution::Tuple(vec![num(0), num(2)]));
        assert_eq!(b, num(3));
        assert!(src.validate(&b));

        let src = Instance::Ect(col(&[], &[0], 1));
        for s in [0, 4, 9] {
            let b = decode("ect_to_tcn_star", &src, &Solution::Tuple(vec![num(s)]));
            assert_eq!(b, num(s + 1));
            assert!(src.validate(&b));
        }

        let src = Instance::Ect(col(&[0], &[1], 2));
        let expect = star(
            ProblemId::Tcn,
            vec![
                Instance::Tcn(Enumeration::then_pause([0])),
                Instance::Tcn(Enumeration::all_except([])),
            ],
        );
        assert_eq!(image("ect_to_tcn_star", &src), expect);
        let b = decode("ect_to_tcn_star", &src, &Solution::Tuple(vec![num(1), num(0)]));
        assert_eq!(b, num(2));
        assert!(src.validate(&b));
    }

    fn tcn_star_into_ect() {
        let src = star(ProblemId::Tcn, vec![Instance::Tcn(Enumeration::all_except([4]))]);
        let Instance::Ect(c) = image("tcn_star_to_ect", &src) else { panic!() };
        assert_eq!(c.word().unwrap().canonicalize(), w(&[0, 1, 0, 1, 0, 1, 0, 1], &[0]));
        assert_eq!(c.palette, 2);
        assert_eq!(min_ect_oracle(&c), 8);
        assert_eq!(decode("tcn_star_to_ect", &src, &num(8)), Solution::Tuple(vec![num(4)]));

        let src = star(ProblemId::Tcn, vec![Instance::Tcn(Enumeration::all_except([]))]);
        let Instance::Ect(c) = image("tcn_star_to_ect", &src) else { panic!() };
        assert!(c.profile()[&1].is_infinite());
        let s = through("tcn_star_to_ect", &src);
        assert!(src.validate(&s));

        let src = star(ProblemId::Tcn, vec![]);
        let Instance::Ect(c) = image("tcn_star_to_ect", &src) else { panic!() };
        assert_eq!(c.word().unwrap().canonicalize(), w(&[], &[0]));
        assert_eq!(min_ect_oracle(&c), 0);
        assert_eq!(decode("tcn_star_to_ect", &src, &num(0)), Solution::Tuple(vec![]));
    }

    fn lpo_into_tcn() {
        let r = find("lpo_to_tcn_strong").unwrap();
        let answer = |s: u64| r.backward(&Instance::Lpo(w(&[], &[1])), &num(s)).unwrap();

        let src = Instance::Lpo(w(&[], &[7]));
        let Instance::Tcn(e) = image("lpo_to_tcn_strong", &src) else { panic!() };
        assert_eq!(e.target_set(), TargetSet::Finite(BTreeSet::from([0])));
        // solution 0 means no zero was seen
        assert_eq!(answer(0), Solution::Bit(1));
        assert_eq!(through("lpo_to_tcn_strong", &src), Solution::Bit(1));

        let src = Instance::Lpo(w(&[1, 0], &[1]));
        let Instance::Tcn(e) = image("lpo_to_tcn_strong", &src) else { panic!() };
        assert_eq!(e.target_set(), TargetSet::Finite(BTreeSet::from([2])));
        assert_eq!(answer(2), Solution::Bit(0));

        let src = Instance::Lpo(w(&[], &[0]));
        let Instance::Tcn(e) = image("lpo_to_tcn_strong", &src) else { panic!() };
        assert_eq!(e.target_set(), TargetSet::CoFinite { excluded: BTreeSet::from([0]) });
        for s in [1, 2, 30] {
            assert_eq!(answer(s), Solution::Bit(0));
        }
    }

    fn minect_into_tcn_isinf() {
        let src = Instance::MinEct(col(&[1, 1], &[0], 2));
        let Instance::Product(halves) = image("minect_to_tcn_isinf", &src) else { panic!() };
        let solved: Vec<Solution> = halves.iter().map(|h| h.solve().unwrap()).collect();
        assert_eq!(solved[1], bits(&[1, 0]));
        assert_eq!(solved[0].as_tuple().unwrap()[1], num(1));
        assert_eq!(through("minect_to_tcn_isinf", &src), num(2));
        let src = Instance::MinEct(col(&[], &[0, 1], 2));
        assert_eq!(through("minect_to_tcn_isinf", &src), num(0));
        let src = Instance::MinEct(col(&[2], &[0, 1], 3));
        assert_eq!(through("minect_to_tcn_isinf", &src), num(1));
    }

    fn isinf_into_minect() {
        let cases: [(&[u64], &[u64], &[u64], &[u64], u64, u8); 3] = [
            (&[], &[0], &[1], &[0], 1, 0),
            (&[], &[1], &[1], &[0, 1], 0, 1),
            (&[1], &[0], &[1, 0, 1], &[0], 3, 0),
        ];
        for (pp, pq, rp, rq, min, answer) in cases {
            let src = Instance::IsInfinite(w(pp, pq));
            let Instance::MinEct(r) = image("isinf_to_minect", &src) else { panic!() };
            assert_eq!(r.word().unwrap(), &w(rp, rq).canonicalize());
            assert_eq!(min_ect_oracle(&r), min);
            assert_eq!(decode("isinf_to_minect", &src, &num(min)), Solution::Bit(answer));
        }
    }

    fn minect_pairs() {
        let cases = [
            (col(&[1], &[0], 2), col(&[], &[0], 1), 1, (1, 0)),
            (col(&[], &[0], 1), col(&[], &[0], 1), 1, (0, 0)),
            (col(&[0, 1, 0], &[0], 2), col(&[], &[1], 2), 2, (2, 0)),
        ];
        for (p, q, b, (u, v)) in cases {
            let src = Instance::Product(vec![Instance::MinEct(p), Instance::MinEct(q)]);
            let Instance::MinEct(r) = image("minect_pair", &src) else { panic!() };
            assert_eq!(min_ect_oracle(&r), b);
            assert_eq!(decode("minect_pair", &src, &num(b)), Solution::Tuple(vec![num(u), num(v)]));
        }
        assert_eq!(1 + pair(1, 0), 2);
    }

    fn minect_star_folds() {
        let src = star(
            ProblemId::MinEct,
            vec![
                Instance::MinEct(col(&[1], &[0], 2)),
                Instance::MinEct(col(&[], &[0], 1)),
                Instance::MinEct(col(&[0, 1, 0], &[0], 2)),
            ],
        );
        assert_eq!(through("minect_star_fold", &src), Solution::Tuple(vec![num(1), num(0), num(2)]));
        assert_eq!(through("minect_star_fold", &star(ProblemId::MinEct, vec![])), Solution::Tuple(vec![]));
    }

    fn minect_into_csharpmax() {
        let src = Instance::MinEct(col(&[1, 1], &[0], 2));
        assert_eq!(image("minect_to_csharpmax", &src).solve().unwrap(), Solution::Set(set(&[pair(1, 1)])));
        assert_eq!(through("minect_to_csharpmax", &src), num(2));
        let src = Instance::MinEct(col(&[], &[0], 1));
        assert_eq!(image("minect_to_csharpmax", &src).solve().unwrap(), Solution::Set(set(&[])));
        assert_eq!(through("minect_to_csharpmax", &src), num(0));
        let src = Instance::MinEct(col(&[2, 1], &[0], 3));
        let expect = set(&[pair(2, 0), pair(1, 1)]);
        assert_eq!(image("minect_to_csharpmax", &src).solve().unwrap(), Solution::Set(expect));
        assert_eq!(through("minect_to_csharpmax", &src), num(2));
    }

    fn ones_counting() {
        let single = |e: Enumeration| match e.target_set() {
            TargetSet::Finite(a) if a.len() == 1 => unpair(*a.first().unwrap()).0,
            other => panic!("{other:?}"),
        };
        assert_eq!(single(ones_count_gadget(&w(&[1, 1], &[0]))), 2);
        assert!(ones_count_gadget(&w(&[], &[1])).target_set().is_empty());
        assert_eq!(single(ones_count_gadget(&w(&[], &[0]))), 0);
    }

    fn csharpmax_into_tcn_isinf() {
        let src = Instance::CSharpMax(family(2, &[&[], &[1], &[3, 5]]));
        let Instance::Product(halves) = image("csharpmax_to_tcn_isinf", &src) else { panic!() };
        assert_eq!(halves[0].solve().unwrap(), bits(&[0, 0]));
        let counts: Vec<u64> = halves[1]
            .solve()
            .unwrap()
            .as_tuple()
            .unwrap()
            .iter()
            .map(|s| unpair(s.as_number().unwrap()).0)
            .collect();
        assert_eq!(counts, vec![1, 13]);
        assert_eq!(through("csharpmax_to_tcn_isinf", &src), Solution::Set(set(&[3, 5])));

        let src = Instance::CSharpMax(family(2, &[&[]]));
        let Instance::Product(halves) = image("csharpmax_to_tcn_isinf", &src) else { panic!() };
        assert_eq!(halves[0].solve().unwrap(), bits(&[1, 1]));
        assert_eq!(through("csharpmax_to_tcn_isinf", &src), Solution::Set(set(&[])));

        let src = Instance::CSharpMax(family(1, &[&[], &[2]]));
        assert_eq!(through("csharpmax_to_tcn_isinf", &src), Solution::Set(set(&[2])));
    }

    fn ertj_into_ert() {
        let src = Instance::ErtJ { coloring: col(&[], &[0, 1], 2), j: 2 };
        let Instance::Ert(g) = image("ertj_to_ert", &src) else { panic!() };
        let g_word = g.word().unwrap();
        assert_eq!(g_word.canonicalize().period().len(), 4);
        assert_eq!(g_word.values(), BTreeSet::from([0, 1, 2, 3]));
        assert_eq!(through("ertj_to_ert", &src), num(0));

        let f = col(&[1, 1, 1], &[0], 2);
        let src = Instance::ErtJ { coloring: f.clone(), j: 3 };
        let Instance::Ert(g) = image("ertj_to_ert", &src) else { panic!() };
        assert_eq!(min_ert_oracle(&g), 3);
        assert_eq!(through("ertj_to_ert", &src), num(3));
        assert!(ertj_validate(&f, 3, 3) && ertj_validate(&f, 3, 0));

        let src = Instance::ErtJ { coloring: col(&[], &[0], 1), j: 5 };
        let Instance::Ert(g) = image("ertj_to_ert", &src) else { panic!() };
        assert_eq!(g.word().unwrap().canonicalize().period().len(), 5);
        assert_eq!(through("ertj_to_ert", &src), num(0));
    }

    fn registry_names() {
        let names: Vec<&str> = ertect_core::registry().iter().map(|r| r.name).collect();
        assert_eq!(
            names,
            [
                "lpostar_to_ert",
                "ert_to_lpostar",
                "ect_to_tcn_star",
                "tcn_star_to_ect",
                "lpo_to_tcn_strong",
                "minect_to_tcn_isinf",
                "isinf_to_minect",
                "minect_pair",
                "minect_star_fold",
                "minect_to_csharpmax",
                "csharpmax_to_tcn_isinf",
                "ertj_to_ert",
            ]
        );
    }
}
