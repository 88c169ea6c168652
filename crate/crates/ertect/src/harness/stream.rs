//! Agreement between symbolic forwards and the literal stream functionals.

use std::collections::BTreeSet;

use ertect_core::problems::Enumeration;
use ertect_core::reductions::{find, streaming};
use ertect_core::{Instance, Symbol, Word};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StreamError {
    #[error("`{0}` has no streaming forward")]
    NoStreamingForward(String),
    #[error("forward failed: {0}")]
    Forward(String),
    #[error("instance does not match the reduction source")]
    Source,
}

fn emitted(symbols: &[Symbol]) -> BTreeSet<u64> {
    symbols.iter().filter_map(|s| s.value().copied()).collect()
}

/// Literal emissions within `len` steps lie in the symbolic range, and every
/// symbolic range value below `len` is emitted literally within `horizon`.
fn enumeration_agrees(symbolic: &Enumeration, literal: impl Fn(usize) -> Vec<Symbol>, len: usize, horizon: usize) -> bool {
    let early = emitted(&literal(len));
    if !early.iter().all(|v| symbolic.in_range(v)) {
        return false;
    }
    let late = emitted(&literal(horizon));
    (0..len as u64).filter(|v| symbolic.in_range(v)).all(|v| late.contains(&v))
}

fn horizon(len: usize, words: &[&Word<u64>]) -> usize {
    let size: usize = words.iter().map(|w| w.prefix().len() + w.period().len()).max().unwrap_or(0);
    2 * len + 2 * size + 2
}

/// Compares the first `len` symbols of the symbolic and literal forwards of
/// the named reduction on `instance`.
pub fn stream_agreement(name: &str, instance: &Instance, len: usize) -> Result<bool, StreamError> {
    let record = find(name).map_err(|_| StreamError::NoStreamingForward(name.into()))?;
    if !record.streaming {
        return Err(StreamError::NoStreamingForward(name.into()));
    }
    let target = record
        .forward(instance)
        .map_err(|e| StreamError::Forward(e.to_string()))?;
    let colors = |t: &Instance| -> Result<Vec<u64>, StreamError> {
        let c = t.coloring().ok_or(StreamError::Source)?;
        Ok(c.seq.prefix(len))
    };
    match (name, instance) {
        ("lpostar_to_ert", Instance::Star { items, .. }) => {
            let words: Vec<&Word<u64>> = items
                .iter()
                .map(|i| match i {
                    Instance::Lpo(w) => Ok(w),
                    _ => Err(StreamError::Source),
                })
                .collect::<Result<_, _>>()?;
            let read = |i: usize, n: u64| *words[i].at(n);
            Ok(colors(&target)? == streaming::lpostar_to_ert(words.len(), &read, len))
        }
        ("ertj_to_ert", Instance::ErtJ { coloring, j }) => {
            let read = |_: usize, n: u64| coloring.at(n);
            Ok(colors(&target)? == streaming::ertj_to_ert(*j, &read, len))
        }
        ("isinf_to_minect", Instance::IsInfinite(p)) => {
            let read = |_: usize, n: u64| *p.at(n);
            Ok(colors(&target)? == streaming::isinf_to_minect(&read, len))
        }
        ("lpo_to_tcn_strong", Instance::Lpo(f)) => {
            let Instance::Tcn(e) = &target else {
                return Err(StreamError::Source);
            };
            let read = |_: usize, n: u64| *f.at(n);
            let literal = |l: usize| streaming::lpo_to_tcn(&read, l);
            Ok(enumeration_agrees(e, literal, len, horizon(len, &[f])))
        }
        ("ect_to_tcn_star", Instance::Ect(c)) => {
            let Instance::Star { items, .. } = &target else {
                return Err(StreamError::Source);
            };
            let w = c.word().ok_or(StreamError::Source)?;
            let read = |_: usize, n: u64| c.at(n);
            let h = horizon(len, &[w]);
            let late = streaming::ect_to_tcn_star(c.palette, &read, h);
            let early = streaming::ect_to_tcn_star(c.palette, &read, len);
            Ok(items.iter().enumerate().all(|(i, item)| match item {
                Instance::Tcn(e) => {
                    let literal = |l: usize| if l == len { early[i].clone() } else { late[i].clone() };
                    enumeration_agrees(e, literal, len, h)
                }
                _ => false,
            }))
        }
        _ => Err(StreamError::Source),
    }
}
