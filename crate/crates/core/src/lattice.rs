//! Multi-indices `k ∈ ℤⁿ` and their enumeration by weight.

use std::fmt;

use crate::error::{arg, Error, Result};
use crate::point::Point;
use crate::scalar::{Real, Scalar};
use num_bigint::BigInt;

/// Largest supported dimension.
pub const MAX_DIM: usize = 4;

/// Which index set is enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexMode {
    /// Coordinates `≥ −1`, at most one equal to `−1`, weight `≥ 1`.
    N0,
    /// Non-negative coordinates, weight `≥ 2`.
    Nn,
}

/// An integer vector with weight `|k| = Σ k_i` (signed sum).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    coords: Vec<i64>,
}

impl MultiIndex {
    pub fn new(coords: Vec<i64>) -> Self {
        MultiIndex { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn weight(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// All coordinates non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    /// Membership in the union of the sets `{k_i ≥ 0 (i ≠ j), k_j ≥ −1}`.
    pub fn in_n0(&self) -> bool {
        self.coords.iter().all(|&c| c >= -1) && self.coords.iter().filter(|&&c| c == -1).count() <= 1
    }

    /// Euclidean norm squared.
    pub fn norm_sq(&self) -> i64 {
        self.coords.iter().map(|c| c * c).sum()
    }

    /// Total order used to break ties: `(|k|, k)` lexicographically.
    pub fn order_key(&self) -> (i64, &[i64]) {
        (self.weight(), &self.coords)
    }

    /// `k·z = Σ k_i z_i`.
    pub fn dot(&self, z: &Point) -> Result<Scalar> {
        if z.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: z.dim() });
        }
        let mut acc = Scalar::zero();
        for (k, c) in self.coords.iter().zip(z.coords()) {
            if *k != 0 {
                acc = acc.add(&c.mul_int(&BigInt::from(*k)));
            }
        }
        Ok(acc)
    }

    /// `k·x` for a real vector.
    pub fn dot_real(&self, x: &[Real]) -> Real {
        let mut acc = Real::zero();
        for (k, c) in self.coords.iter().zip(x) {
            if *k != 0 {
                acc = acc.add(&c.mul_int(&BigInt::from(*k)));
            }
        }
        acc
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return arg(format!("dimension must be in 1..={MAX_DIM}, got {n}"));
    }
    Ok(())
}

/// All indices of weight exactly `w` in lexicographic order of coordinates.
pub fn weight_class(n: usize, w: i64, mode: IndexMode) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let neg_ok = mode == IndexMode::N0 && n > 1;
    fill(n, w, neg_ok, &mut cur, &mut out);
    out
}

fn fill(n: usize, rem: i64, neg_ok: bool, cur: &mut Vec<i64>, out: &mut Vec<MultiIndex>) {
    let left = n - cur.len();
    if left == 1 {
        let min = if neg_ok { -1 } else { 0 };
        if rem >= min {
            cur.push(rem);
            out.push(MultiIndex::new(cur.clone()));
            cur.pop();
        }
        return;
    }
    let lo = if neg_ok { -1 } else { 0 };
    // the remaining coordinates can absorb at most one -1
    let hi = rem + if neg_ok { 1 } else { 0 };
    for v in lo..=hi {
        cur.push(v);
        fill(n, rem - v, neg_ok && v != -1, cur, out);
        cur.pop();
    }
}

/// Indices with `1 ≤ |k| ≤ m` in `ℕ₀` (mode `N0`) or `2 ≤ |k| ≤ m` in `ℕⁿ`
/// (mode `Nn`), ordered by `(|k|, k)`.
pub fn enumerate_indices(n: usize, m: i64, mode: IndexMode) -> Result<impl Iterator<Item = MultiIndex>> {
    check_dim(n)?;
    let lo = match mode {
        IndexMode::N0 => 1,
        IndexMode::Nn => 2,
    };
    if m < lo {
        return arg(format!("weight bound must be at least {lo}, got {m}"));
    }
    Ok((lo..=m).flat_map(move |w| weight_class(n, w, mode)))
}

/// Number of indices of weight exactly `w`.
pub fn weight_class_len(n: usize, w: i64, mode: IndexMode) -> u64 {
    fn binom(a: i64, b: i64) -> u64 {
        if b < 0 || a < b {
            return 0;
        }
        let mut r: u128 = 1;
        for i in 0..b {
            r = r * (a - i) as u128 / (i + 1) as u128;
        }
        r as u64
    }
    let n = n as i64;
    let nonneg = binom(w + n - 1, n - 1);
    match mode {
        IndexMode::Nn => nonneg,
        IndexMode::N0 if n == 1 => nonneg,
        IndexMode::N0 => nonneg + n as u64 * binom(w + 1 + n - 2, n - 2),
    }
}
