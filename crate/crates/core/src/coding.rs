//! Integer codings: Cantor pairs and bitmask codes of finite sets.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Cantor pairing `π(m, n) = (m+n)(m+n+1)/2 + n`.
///
/// Monotone in each argument: `m0 ≤ m1 ∧ n0 ≤ n1 ⇒ π(m0,n0) ≤ π(m1,n1)`.
pub fn pair(m: u64, n: u64) -> u64 {
    let s = m.checked_add(n).expect("pair code overflow");
    let tri = s
        .checked_mul(s + 1)
        .map(|v| v / 2)
        .expect("pair code overflow");
    tri.checked_add(n).expect("pair code overflow")
}

/// Inverse of [`pair`].
pub fn unpair(z: u64) -> (u64, u64) {
    // w = floor((sqrt(8z+1) - 1) / 2), computed in u128 to avoid overflow.
    let w = ((8 * z as u128 + 1).isqrt() - 1) / 2;
    let w = w as u64;
    let tri = w * (w + 1) / 2;
    let n = z - tri;
    (w - n, n)
}

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// A finite set of naturals ordered by its code `Σ_{x∈F} 2^x`.
///
/// The code is never materialised as an integer: comparing the elements in
/// descending order lexicographically is the same as comparing codes, so
/// sets with arbitrarily large elements are handled exactly.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FiniteSet(BTreeSet<u64>);

impl FiniteSet {
    pub fn new() -> Self {
        FiniteSet(BTreeSet::new())
    }

    /// Decodes a bitmask code.
    pub fn from_code(code: u64) -> Self {
        FiniteSet((0..64).filter(|b| code >> b & 1 == 1).collect())
    }

    /// The bitmask code, if it fits in a `u64`.
    pub fn code(&self) -> Option<u64> {
        match self.0.last() {
            Some(&max) if max >= 64 => None,
            _ => Some(self.0.iter().fold(0, |acc, &x| acc | 1 << x)),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.contains(&x)
    }

    pub fn insert(&mut self, x: u64) -> bool {
        self.0.insert(x)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn as_btree(&self) -> &BTreeSet<u64> {
        &self.0
    }

    /// Position of this set among all sets of the same size in increasing
    /// code order (colex rank).
    pub fn colex_rank(&self) -> Option<u64> {
        self.iter().enumerate().try_fold(0u64, |acc, (j, c)| {
            acc.checked_add(binomial(c, j as u64 + 1)?)
        })
    }

    /// The `rank`-th set of size `size` in increasing code order.
    pub fn colex_unrank(size: u64, mut rank: u64) -> Self {
        let mut out = BTreeSet::new();
        for j in (1..=size).rev() {
            // largest c with C(c, j) ≤ rank
            let mut c = j - 1;
            while binomial(c + 1, j).is_some_and(|v| v <= rank) {
                c += 1;
            }
            rank -= binomial(c, j).unwrap_or(0);
            out.insert(c);
        }
        FiniteSet(out)
    }
}

impl Ord for FiniteSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for FiniteSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl FromIterator<u64> for FiniteSet {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        FiniteSet(iter.into_iter().collect())
    }
}

impl From<Vec<u64>> for FiniteSet {
    fn from(v: Vec<u64>) -> Self {
        v.into_iter().collect()
    }
}

/// Values that can be enumerated in a fixed increasing order `0, 1, 2, …`.
///
/// Naturals are their own index; finite sets are indexed by their code.
pub trait Code: Ord + Clone + fmt::Debug {
    fn from_index(n: u64) -> Self;
    /// Index in code order; `None` when it does not fit in a `u64`.
    fn index(&self) -> Option<u64>;
}

impl Code for u64 {
    fn from_index(n: u64) -> Self {
        n
    }
    fn index(&self) -> Option<u64> {
        Some(*self)
    }
}

impl Code for FiniteSet {
    fn from_index(n: u64) -> Self {
        FiniteSet::from_code(n)
    }
    fn index(&self) -> Option<u64> {
        self.code()
    }
}
