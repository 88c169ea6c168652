//! Literal stream functionals for the reductions whose forward map is a
//! simple pointwise transformer. Each reads its source only through `read`
//! and produces the first `len` output symbols.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::words::Symbol;

/// Reads position `n` of source member `i`.
pub type Reader<'a> = &'a dyn Fn(usize, u64) -> u64;

/// `g(nk+i) = i` iff `n` is the first zero of `f_i`; `k` otherwise. With no
/// members the output is constantly 0.
pub fn lpostar_to_ert(k: usize, read: Reader<'_>, len: usize) -> Vec<u64> {
    if k == 0 {
        return alloc::vec![0; len];
    }
    let mut seen_zero = alloc::vec![false; k];
    (0..len as u64)
        .map(|pos| {
            let (n, i) = (pos / k as u64, (pos % k as u64) as usize);
            if !seen_zero[i] && read(i, n) == 0 {
                seen_zero[i] = true;
                i as u64
            } else {
                k as u64
            }
        })
        .collect()
}

/// `g(n) = f(n)·j + |{i < n : f(i) = f(n)}| mod j`.
pub fn ertj_to_ert(j: u64, read: Reader<'_>, len: usize) -> Vec<u64> {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    (0..len as u64)
        .map(|n| {
            let c = read(0, n);
            let seen = counts.entry(c).or_insert(0);
            let out = c * j + *seen % j;
            *seen += 1;
            out
        })
        .collect()
}

/// `1, 0, p(0), 0, p(1), …`.
pub fn isinf_to_minect(read: Reader<'_>, len: usize) -> Vec<u64> {
    (0..len as u64)
        .map(|n| match n {
            0 => 1,
            n if n % 2 == 1 => 0,
            n => read(0, n / 2 - 1),
        })
        .collect()
}

/// Emits `n+1` at step `n` when `f(n) ≠ 0`, and `0` otherwise.
pub fn lpo_to_tcn(read: Reader<'_>, len: usize) -> Vec<Symbol> {
    (0..len as u64)
        .map(|n| Symbol::Value(if read(0, n) != 0 { n + 1 } else { 0 }))
        .collect()
}

/// One enumeration per color `i < k` of the positions up to the latest
/// occurrence of `i` so far: each step emits the next such position once the
/// stream has shown an occurrence at or after it.
pub fn ect_to_tcn_star(k: u64, read: Reader<'_>, len: usize) -> Vec<Vec<Symbol>> {
    let mut latest: Vec<Option<u64>> = alloc::vec![None; k as usize];
    let mut next = alloc::vec![0u64; k as usize];
    let mut out = alloc::vec![Vec::with_capacity(len); k as usize];
    for s in 0..len as u64 {
        let c = read(0, s);
        if c < k {
            latest[c as usize] = Some(s);
        }
        for i in 0..k as usize {
            let sym = match latest[i] {
                Some(h) if next[i] <= h => {
                    next[i] += 1;
                    Symbol::Value(next[i] - 1)
                }
                _ => Symbol::Pause,
            };
            out[i].push(sym);
        }
    }
    out
}
