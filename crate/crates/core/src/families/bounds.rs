//! Closed-form size bounds for maximum `t`-intersecting families of
//! `k`-multisets, with explicit regime flags.
//!
//! Out-of-regime queries return the formula value with `in_regime = false`
//! instead of erroring, so exploratory sweeps can probe past the proven
//! ranges.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, BigCount};

/// A bound value together with the parameters and regime that produced it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    /// Which formula produced the value.
    pub formula: String,
    pub m: u32,
    pub k: u32,
    pub t: u32,
    /// Exact value, as a decimal string so arbitrary precision survives JSON.
    pub value: String,
    /// Whether `(m, k, t)` lies inside the regime where the bound is proven
    /// (or, for the `t`-star bound with `t ≥ 2`, conjectured).
    pub in_regime: bool,
    /// Human-readable description of the regime condition.
    pub regime: String,
}

impl BoundReport {
    fn new(formula: &str, m: u32, k: u32, t: u32, value: BigCount, in_regime: bool, regime: String) -> Self {
        BoundReport {
            formula: formula.to_string(),
            m,
            k,
            t,
            value: value.to_string(),
            in_regime,
            regime,
        }
    }

    /// The exact value re-parsed from its decimal form.
    pub fn value_big(&self) -> BigCount {
        self.value.parse().expect("bound value is a decimal integer")
    }

    pub fn value_u64(&self) -> Option<u64> {
        self.value.parse().ok()
    }
}

/// Maximum size of a 1-intersecting family of `k`-multisets of `[m]` in the
/// star regime `m ≥ k + 1`: the size `C(m + k - 2, k - 1)` of a star.
pub fn star_bound(m: u32, k: u32) -> BoundReport {
    let value = if k == 0 {
        BigUint::zero()
    } else {
        binomial((m + k - 2) as u64, (k - 1) as i64)
    };
    BoundReport::new(
        "star_bound",
        m,
        k,
        1,
        value,
        m > k,
        format!("m ≥ k + 1 (here {m} vs {})", k + 1),
    )
}

/// Maximum size of a 1-intersecting family of `k`-multisets of `[m]` in the
/// regime `m ≤ k`: everything above half support, plus half of the exactly-
/// half-support level when `m` is even.
pub fn above_half_bound(m: u32, k: u32) -> BoundReport {
    let mut value = BigUint::zero();
    for j in m / 2 + 1..=m {
        value += binomial(m as u64, j as i64) * binomial((k - 1) as u64, k as i64 - j as i64);
    }
    if m.is_multiple_of(2) {
        let level =
            binomial(m as u64, (m / 2) as i64) * binomial((k - 1) as u64, k as i64 - (m / 2) as i64);
        // C(m, m/2) is even for even m ≥ 2: the half is exact.
        debug_assert!((&level % 2u32).is_zero());
        value += level / 2u32;
    }
    BoundReport::new(
        "above_half_bound",
        m,
        k,
        1,
        value,
        m <= k,
        format!("m ≤ k (here {m} vs {k})"),
    )
}

/// Size `C(m + k - t - 1, k - t)` of a `t`-star, the conjectured maximum for
/// `t`-intersecting families when `m ≥ t(k - t) + 2`.
pub fn t_star_bound(m: u32, k: u32, t: u32) -> crate::Result<BoundReport> {
    if t == 0 || t > k {
        return Err(crate::Error::InvalidParameter(format!(
            "t = {t} outside [1, k] = [1, {k}]"
        )));
    }
    let value = binomial((m + k - t - 1) as u64, (k - t) as i64);
    let threshold = t as u64 * (k - t) as u64 + 2;
    Ok(BoundReport::new(
        "t_star_bound",
        m,
        k,
        t,
        value,
        m as u64 >= threshold,
        format!("m ≥ t(k - t) + 2 (here {m} vs {threshold})"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_bound_values() {
        assert_eq!(star_bound(4, 3).value, "10");
        assert!(star_bound(4, 3).in_regime);
        assert_eq!(star_bound(3, 2).value, "3");
        for m in 1..8 {
            assert_eq!(star_bound(m, 1).value, "1");
        }
        assert!(!star_bound(3, 3).in_regime);
    }

    #[test]
    fn above_half_bound_values() {
        assert_eq!(above_half_bound(3, 3).value, "7");
        assert_eq!(above_half_bound(4, 4).value, "22");
        assert_eq!(above_half_bound(2, 3).value, "3");
        assert_eq!(above_half_bound(2, 2).value, "2");
        assert!(above_half_bound(2, 3).in_regime);
        assert!(!above_half_bound(5, 3).in_regime);
    }

    #[test]
    fn t_star_bound_values() {
        let b = t_star_bound(7, 5, 2).unwrap();
        assert_eq!(b.value, "84");
        assert!(!b.in_regime); // 7 < 2·3 + 2 = 8

        let b = t_star_bound(8, 5, 2).unwrap();
        assert_eq!(b.value, "120");
        assert!(b.in_regime);

        for (m, k) in [(4u32, 3u32), (6, 4), (9, 2)] {
            let b = t_star_bound(m, k, k).unwrap();
            assert_eq!(b.value, "1");
            assert!(b.in_regime); // m ≥ k(k-k) + 2 = 2
        }

        assert!(t_star_bound(7, 5, 6).is_err());
        assert!(t_star_bound(7, 5, 0).is_err());
    }

    #[test]
    fn bounds_do_not_overflow_u64_paths() {
        // m, k ≈ 40 overflows 64-bit counts; the report must stay exact.
        let b = star_bound(40, 40);
        assert_eq!(b.value_big(), binomial(78, 39));
        assert!(b.value_u64().is_none());
    }
}
