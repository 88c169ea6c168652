//! Seeded instance generators.

use std::collections::BTreeSet;

use ertect_core::problems::{Coloring, Enumeration, FamilyInstance, Tail};
use ertect_core::{FiniteSet, Instance, ProblemId, Symbol, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Size limits for generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    pub max_palette: u64,
    pub max_prefix: usize,
    pub max_period: usize,
    pub max_skip_set: usize,
    pub max_star_arity: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_palette: 5,
            max_prefix: 12,
            max_period: 6,
            max_skip_set: 4,
            max_star_arity: 3,
        }
    }
}

impl Limits {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_palette == 0 || self.max_prefix == 0 || self.max_period == 0 || self.max_star_arity == 0 {
            return Err("limits other than max_skip_set must be at least 1".into());
        }
        Ok(())
    }
}

/// Largest value drawn for enumeration entries.
const VALUE_SPAN: u64 = 20;

pub struct Generator {
    rng: ChaCha8Rng,
    limits: Limits,
}

impl Generator {
    pub fn new(seed: u64, limits: Limits) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            limits,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn lasso(&mut self, period_values: impl Fn(&mut ChaCha8Rng) -> u64, prefix_len: usize) -> Word<u64> {
        let q = self.rng.gen_range(1..=self.limits.max_period);
        let period: Vec<u64> = (0..q).map(|_| period_values(&mut self.rng)).collect();
        // a quarter of prefixes reuse period colors only, so that all colors
        // occur infinitely often
        let recurring = self.rng.gen_bool(0.25);
        let prefix = (0..prefix_len)
            .map(|_| match recurring {
                true => *period.choose(&mut self.rng).unwrap(),
                false => period_values(&mut self.rng),
            })
            .collect();
        Word::new(prefix, period).unwrap()
    }

    fn prefix_len(&mut self) -> usize {
        self.rng.gen_range(0..=self.limits.max_prefix)
    }

    pub fn coloring(&mut self) -> Coloring {
        let k = self.rng.gen_range(1..=self.limits.max_palette);
        let p = self.prefix_len();
        let word = self.lasso(|r| r.gen_range(0..k), p);
        Coloring::lasso(word, k).unwrap()
    }

    pub fn binary_word(&mut self) -> Word<u64> {
        let p = self.prefix_len();
        let finite_ones = self.rng.gen_bool(0.5);
        let mut w = self.lasso(|r| u64::from(r.gen_bool(0.5)), p);
        if finite_ones {
            w = Word::new(w.prefix().to_vec(), vec![0]).unwrap();
        }
        w
    }

    pub fn lpo_word(&mut self) -> Word<u64> {
        let p = self.prefix_len();
        match self.rng.gen_bool(1.0 / 3.0) {
            true => self.lasso(|r| r.gen_range(1..=3), p),
            false => self.lasso(|r| r.gen_range(0..=3), p),
        }
    }

    fn symbol(&mut self) -> Symbol {
        match self.rng.gen_bool(0.25) {
            true => Symbol::Pause,
            false => Symbol::Value(self.rng.gen_range(0..VALUE_SPAN)),
        }
    }

    pub fn enumeration(&mut self) -> Enumeration {
        let len = self.prefix_len();
        let explicit: Vec<Symbol> = (0..len).map(|_| self.symbol()).collect();
        let roll = self.rng.gen_range(0..20);
        let tail = if roll < 7 {
            Tail::Pauses
        } else if roll < 16 {
            let size = self.rng.gen_range(0..=self.limits.max_skip_set);
            let seen: Vec<u64> = explicit.iter().filter_map(|s| s.value().copied()).collect();
            // often skip only explicit values, which empties the target
            let covered = !seen.is_empty() && self.rng.gen_bool(0.3);
            let skip: BTreeSet<u64> = (0..size)
                .map(|_| match covered {
                    true => *seen.choose(&mut self.rng).unwrap(),
                    false => self.rng.gen_range(0..VALUE_SPAN),
                })
                .collect();
            Tail::AllExcept(skip)
        } else {
            let p = self.rng.gen_range(0..=self.limits.max_prefix / 2);
            let mask = self.lasso(|r| u64::from(r.gen_bool(0.5)), p).map(|&b| b == 1).canonicalize();
            match mask.period().len() {
                // an eventually constant mask is a skip or pause tail in disguise
                1 => Tail::Pauses,
                _ => Tail::Mask(mask),
            }
        };
        Enumeration::new(explicit, tail)
    }

    pub fn family(&mut self) -> FamilyInstance {
        loop {
            let bound = self.rng.gen_range(1..=3u64);
            let count = self.rng.gen_range(1..=5);
            let sets: BTreeSet<FiniteSet> = (0..count)
                .map(|_| {
                    let size = self.rng.gen_range(0..=bound);
                    let mut pool: Vec<u64> = (0..8).collect();
                    pool.shuffle(&mut self.rng);
                    pool.into_iter().take(size as usize).collect()
                })
                .collect();
            let len = self.rng.gen_range(0..=self.limits.max_prefix / 2);
            let members: Vec<&FiniteSet> = sets.iter().collect();
            let explicit = (0..len)
                .map(|_| match self.rng.gen_range(0..3) {
                    0 => Symbol::Pause,
                    1 => Symbol::Value((*members.choose(&mut self.rng).unwrap()).clone()),
                    _ => Symbol::Value(FiniteSet::from_code(self.rng.gen_range(0..256))),
                })
                .collect();
            let f = FamilyInstance::new(bound, Enumeration::new(explicit, Tail::AllExcept(sets)));
            if f.check().is_ok() {
                return f;
            }
        }
    }

    pub fn instance(&mut self, id: &ProblemId) -> Instance {
        match id {
            ProblemId::Lpo => Instance::Lpo(self.lpo_word()),
            ProblemId::IsInfinite => Instance::IsInfinite(self.binary_word()),
            ProblemId::Cn => loop {
                let e = self.enumeration();
                if !e.target_set().is_empty() {
                    return Instance::Cn(e);
                }
            },
            ProblemId::Tcn => Instance::Tcn(self.enumeration()),
            ProblemId::Ert => Instance::Ert(self.coloring()),
            ProblemId::Ect => Instance::Ect(self.coloring()),
            ProblemId::MinErt => Instance::MinErt(self.coloring()),
            ProblemId::MinEct => Instance::MinEct(self.coloring()),
            ProblemId::ErtJ => Instance::ErtJ {
                coloring: self.coloring(),
                j: self.rng.gen_range(1..=4),
            },
            ProblemId::CSharpMax => Instance::CSharpMax(self.family()),
            ProblemId::Star(inner) => {
                let n = self.rng.gen_range(0..=self.limits.max_star_arity);
                Instance::Star {
                    problem: (**inner).clone(),
                    items: (0..n).map(|_| self.instance(inner)).collect(),
                }
            }
            ProblemId::Product(ids) => Instance::Product(ids.iter().map(|p| self.instance(p)).collect()),
        }
    }
}

/// Deterministic in `(id, seed, limits)`.
pub fn gen_instance(id: &ProblemId, seed: u64, limits: &Limits) -> Instance {
    Generator::new(seed, *limits).instance(id)
}

/// Mixes a base seed with a tag and trial index.
pub fn trial_seed(seed: u64, tag: &str, trial: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut x = seed ^ h ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    // splitmix finalizer
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}
