//! Exact counting and canonical ranking/unranking of `k`-subsets and
//! `k`-multisets.
//!
//! All counting paths are exact: [`binomial`] and [`multichoose`] return
//! arbitrary-precision integers, and no floating point is used anywhere.
//! The canonical order for both object classes is lexicographic on the
//! sorted element list, so ranks are stable across runs and usable as graph
//! vertex identifiers and golden-file keys.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Exact, never-negative cardinality of a combinatorial class.
pub type BigCount = BigUint;

/// Position of an object in the canonical (lexicographic) order of its class.
pub type Rank = u64;

/// Pascal's triangle for `n < 64`; every entry fits in a `u64`.
static PASCAL: [[u64; 64]; 64] = {
    let mut t = [[0u64; 64]; 64];
    let mut n = 0;
    while n < 64 {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    t
};

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> BigCount {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient `C(n, k)` as an exact integer.
///
/// Total: returns 0 whenever `k < 0` or `k > n`, which lets sum formulas
/// with vanishing terms (for example `C(k-1, k-j)` with `j > k`) be written
/// without case splits.
pub fn binomial(n: u64, k: i64) -> BigCount {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        // Multiply before dividing; the running product of i+1 consecutive
        // ratios is always an integer.
        acc = acc * (n - k + i + 1) / (i + 1);
    }
    acc
}

/// `C(n, k)` when it fits in a `u64`, `None` otherwise.
pub fn binomial_u64(n: u64, k: i64) -> Option<u64> {
    if k < 0 || k as u64 > n {
        return Some(0);
    }
    let k = (k as u64).min(n - k as u64);
    if n < 64 {
        return Some(PASCAL[n as usize][k as usize]);
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - k + i + 1) as u128)? / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Number of `k`-multisets over a universe of `m` elements,
/// `C(m + k - 1, k)`.
///
/// # Panics
/// When `m == 0` with `k > 0` (no multiset can be formed from an empty
/// universe).
pub fn multichoose(m: u64, k: u64) -> BigCount {
    if k == 0 {
        return BigUint::one();
    }
    assert!(m >= 1, "multichoose: empty universe with k = {k} > 0");
    binomial(m + k - 1, k as i64)
}

/// `multichoose(m, k)` when it fits in a `u64`.
pub fn multichoose_u64(m: u64, k: u64) -> Option<u64> {
    if k == 0 {
        return Some(1);
    }
    assert!(m >= 1, "multichoose: empty universe with k = {k} > 0");
    binomial_u64(m + k - 1, k as i64)
}

fn binomial_rank_term(n: u64, k: i64) -> Result<u64> {
    binomial_u64(n, k).ok_or_else(|| {
        Error::CountOverflow(format!("binomial({n}, {k}) does not fit in 64 bits"))
    })
}

/// Lexicographic rank of a sorted `k`-subset of `[n]` (1-based elements).
pub fn rank_combination(elements: &[u32], n: u32) -> Result<Rank> {
    validate_combination(elements, n)?;
    let k = elements.len() as u64;
    let mut rank: u64 = 0;
    let mut prev = 0u32;
    for (i, &c) in elements.iter().enumerate() {
        // Σ_{j=prev+1}^{c-1} C(n-j, r) collapses by the hockey-stick
        // identity to C(n-prev, r+1) - C(n-c+1, r+1).
        let r = (k - 1 - i as u64) as i64;
        let skipped = binomial_rank_term((n - prev) as u64, r + 1)?
            - binomial_rank_term((n - c + 1) as u64, r + 1)?;
        rank = rank
            .checked_add(skipped)
            .ok_or_else(|| Error::CountOverflow("combination rank".into()))?;
        prev = c;
    }
    Ok(rank)
}

/// Inverse of [`rank_combination`]: the `rank`-th `k`-subset of `[n]` in
/// lexicographic order.
pub fn unrank_combination(rank: Rank, n: u32, k: u32) -> Result<Vec<u32>> {
    let total = binomial_u64(n as u64, k as i64)
        .ok_or_else(|| Error::CountOverflow(format!("binomial({n}, {k})")))?;
    if rank >= total {
        return Err(Error::RankOutOfRange { rank, count: total });
    }
    let mut rank = rank;
    let mut elements = Vec::with_capacity(k as usize);
    let mut cand = 1u32;
    for i in 0..k {
        loop {
            let count = binomial_rank_term((n - cand) as u64, (k - 1 - i) as i64)?;
            if rank < count {
                elements.push(cand);
                cand += 1;
                break;
            }
            rank -= count;
            cand += 1;
        }
    }
    Ok(elements)
}

/// Lexicographic rank of a `k`-multiset of `[m]` given as a nondecreasing
/// element list, via the stars-and-bars shift onto `k`-subsets of
/// `[m + k - 1]`.
pub fn rank_multiset_elements(elements: &[u32], m: u32) -> Result<Rank> {
    validate_multiset_elements(elements, m)?;
    let k = elements.len() as u32;
    let shifted: Vec<u32> = elements
        .iter()
        .enumerate()
        .map(|(j, &e)| e + j as u32)
        .collect();
    rank_combination(&shifted, m + k - 1)
}

/// Inverse of [`rank_multiset_elements`].
pub fn unrank_multiset_elements(rank: Rank, m: u32, k: u32) -> Result<Vec<u32>> {
    if m == 0 {
        return Err(Error::InvalidParameter("multiset universe must be ≥ 1".into()));
    }
    let subset = unrank_combination(rank, m + k - 1, k)?;
    Ok(subset
        .iter()
        .enumerate()
        .map(|(j, &s)| s - j as u32)
        .collect())
}

fn validate_combination(elements: &[u32], n: u32) -> Result<()> {
    let mut prev = 0u32;
    for &e in elements {
        if e <= prev {
            return Err(Error::NotCanonical(format!(
                "subset elements must be strictly increasing, saw {e} after {prev}"
            )));
        }
        if e > n {
            return Err(Error::NotCanonical(format!(
                "subset element {e} exceeds universe size {n}"
            )));
        }
        prev = e;
    }
    Ok(())
}

fn validate_multiset_elements(elements: &[u32], m: u32) -> Result<()> {
    let mut prev = 1u32;
    for &e in elements {
        if e < prev || e == 0 {
            return Err(Error::NotCanonical(format!(
                "multiset elements must be nondecreasing and positive, saw {e} after {prev}"
            )));
        }
        if e > m {
            return Err(Error::NotCanonical(format!(
                "multiset element {e} exceeds universe size {m}"
            )));
        }
        prev = e;
    }
    Ok(())
}

/// Iterator over all `k`-subsets of `[n]` in lexicographic order.
pub fn combinations(n: u32, k: u32) -> Combinations {
    let state = if k > n {
        None
    } else {
        Some((1..=k).collect())
    };
    Combinations { n, k, state }
}

pub struct Combinations {
    n: u32,
    k: u32,
    state: Option<Vec<u32>>,
}

impl Iterator for Combinations {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.state.take()?;
        let out = current.clone();
        // Advance: bump the rightmost element that still has headroom.
        let k = self.k as usize;
        let mut next = current;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - (k - 1 - i) as u32 {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.state = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Iterator over all `k`-multisets of `[m]` as nondecreasing element lists,
/// in lexicographic order.
pub fn multisets(m: u32, k: u32) -> Multisets {
    let state = if m == 0 && k > 0 {
        None
    } else {
        Some(vec![1u32; k as usize])
    };
    Multisets { m, state }
}

pub struct Multisets {
    m: u32,
    state: Option<Vec<u32>>,
}

impl Iterator for Multisets {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.state.take()?;
        let out = current.clone();
        let mut next = current;
        let mut i = next.len();
        while i > 0 {
            i -= 1;
            if next[i] < self.m {
                let v = next[i] + 1;
                for item in next.iter_mut().skip(i) {
                    *item = v;
                }
                self.state = Some(next);
                break;
            }
        }
        Some(out)
    }
}
