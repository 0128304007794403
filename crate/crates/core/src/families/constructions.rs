//! The extremal family constructions: stars, fixed-`t`-multiset stars,
//! support levels, the above-half-support family, half-support selections,
//! and the Frankl-type `t`-intersecting families.

use super::family::Family;
use super::multiset::{all_multisets, Multiset};
use crate::combinatorics::{combinations, multisets};
use crate::{Error, Result};

/// All `k`-multisets of `[m]` containing the fixed element `x`.
///
/// Size: `C(m + k - 2, k - 1)` — remove one forced copy of `x` and count the
/// remaining `(k-1)`-multisets.
pub fn star_family(m: u32, k: u32, x: u32) -> Result<Family> {
    if x == 0 || x > m {
        return Err(Error::InvalidParameter(format!(
            "star element {x} outside universe [{m}]"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("star requires k ≥ 1".into()));
    }
    let members = multisets(m, k - 1).map(|rest| {
        let mut counts = vec![0u32; m as usize];
        for e in rest {
            counts[e as usize - 1] += 1;
        }
        counts[x as usize - 1] += 1;
        Multiset::from_counts(counts).expect("star member is canonical")
    });
    Family::new(m, k, members)
}

/// All `k`-multisets of `[m]` that contain the fixed `t`-multiset `fixed`
/// with multiplicity (pointwise dominance of counts vectors).
///
/// Size: `C(m + k - t - 1, k - t)`, independent of the choice of `fixed`.
pub fn t_star_family(m: u32, k: u32, fixed: &Multiset) -> Result<Family> {
    if fixed.m() != m {
        return Err(Error::ContextMismatch(format!(
            "fixed multiset lives over [{}], expected [{m}]",
            fixed.m()
        )));
    }
    let t = fixed.k();
    if t > k {
        return Err(Error::InvalidParameter(format!(
            "fixed multiset has cardinality {t} > k = {k}"
        )));
    }
    let members = multisets(m, k - t).map(|rest| {
        let mut counts = fixed.counts().to_vec();
        for e in rest {
            counts[e as usize - 1] += 1;
        }
        Multiset::from_counts(counts).expect("t-star member is canonical")
    });
    Family::new(m, k, members)
}

/// Level members with support size exactly `j`, possibly empty when `j > k`.
fn level_members(m: u32, k: u32, j: u32) -> Vec<Multiset> {
    if j > k || j > m || j == 0 {
        return Vec::new();
    }
    let mut members = Vec::new();
    for support in combinations(m, j) {
        // Everything in the support once, then distribute the k-j extras.
        for extra in multisets(j, k - j) {
            let mut counts = vec![0u32; m as usize];
            for &s in &support {
                counts[s as usize - 1] = 1;
            }
            for e in extra {
                counts[support[e as usize - 1] as usize - 1] += 1;
            }
            members.push(Multiset::from_counts(counts).expect("level member is canonical"));
        }
    }
    members
}

/// All `k`-multisets of `[m]` with exactly `j` distinct elements.
///
/// Size: `C(m, j) · C(k-1, k-j)`.
pub fn level_family(m: u32, k: u32, j: u32) -> Result<Family> {
    if j == 0 || j > m.min(k) {
        return Err(Error::InvalidParameter(format!(
            "level j = {j} outside [1, min(m, k)] = [1, {}]",
            m.min(k)
        )));
    }
    Family::new(m, k, level_members(m, k, j))
}

/// All `k`-multisets of `[m]` with more than `m/2` distinct elements. Any
/// two such multisets share an element, so the family is 1-intersecting.
pub fn above_half_family(m: u32, k: u32) -> Result<Family> {
    let mut members = Vec::new();
    for j in m / 2 + 1..=m {
        members.extend(level_members(m, k, j));
    }
    Family::new(m, k, members)
}

/// Which support of a complementary pair a half-support selection keeps.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairChoice {
    /// Keep the presented support (the one containing element 1).
    First,
    /// Keep its complement.
    Second,
}

/// Half-support selection with the canonical chooser: from each
/// complementary pair of `(m/2)`-subsets keep the one containing element 1.
pub fn half_selection_family(m: u32, k: u32) -> Result<Family> {
    half_selection_family_with(m, k, |_, _| PairChoice::First)
}

/// All `k`-multisets whose support is one chosen `(m/2)`-subset from each
/// complementary pair. `chooser` is called once per pair with the member
/// containing element 1 first.
///
/// Size: `½ · C(m, m/2) · C(k-1, k - m/2)` for every choice; the union with
/// [`above_half_family`] is 1-intersecting and attains the `m ≤ k` bound.
pub fn half_selection_family_with(
    m: u32,
    k: u32,
    mut chooser: impl FnMut(&[u32], &[u32]) -> PairChoice,
) -> Result<Family> {
    if !m.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "half-support selection needs even m, got {m}"
        )));
    }
    if m > k {
        return Err(Error::InvalidParameter(format!(
            "half-support selection applies in the m ≤ k regime, got m = {m} > k = {k}"
        )));
    }
    let half = m / 2;
    let mut members = Vec::new();
    for support in combinations(m, half) {
        // Each complementary pair is visited once, via the side containing 1.
        if support[0] != 1 {
            continue;
        }
        let complement: Vec<u32> = (1..=m).filter(|x| !support.contains(x)).collect();
        let chosen = match chooser(&support, &complement) {
            PairChoice::First => &support,
            PairChoice::Second => &complement,
        };
        for extra in multisets(half, k - half) {
            let mut counts = vec![0u32; m as usize];
            for &s in chosen {
                counts[s as usize - 1] = 1;
            }
            for e in extra {
                counts[chosen[e as usize - 1] as usize - 1] += 1;
            }
            members.push(Multiset::from_counts(counts).expect("selection member is canonical"));
        }
    }
    Family::new(m, k, members)
}

/// All `k`-multisets of `[m]` whose support contains at least `t + 1`
/// distinct elements of the fixed `(t+2)`-set `fixed_set`.
///
/// The overlap is counted on distinct elements (support against set), not on
/// multiplicities. Any two members share at least `t` support elements of
/// `fixed_set`, so the family is `t`-intersecting.
pub fn frankl_family(m: u32, k: u32, t: u32, fixed_set: &[u32]) -> Result<Family> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be ≥ 1".into()));
    }
    if fixed_set.len() as u32 != t + 2 {
        return Err(Error::InvalidParameter(format!(
            "fixed set must have t + 2 = {} elements, got {}",
            t + 2,
            fixed_set.len()
        )));
    }
    let mut sorted = fixed_set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != fixed_set.len() {
        return Err(Error::InvalidParameter("fixed set has repeated elements".into()));
    }
    if sorted[0] == 0 || *sorted.last().unwrap() > m {
        return Err(Error::InvalidParameter(format!(
            "fixed set must lie inside [{m}]"
        )));
    }
    if t + 1 > k {
        return Err(Error::InvalidParameter(format!(
            "need t + 1 = {} ≤ k = {k}",
            t + 1
        )));
    }
    let members =
        all_multisets(m, k).filter(|a| a.support().intersection_with_set(&sorted) > t);
    Family::new(m, k, members)
}

/// Checks whether `family` is the above-half family together with a
/// half-sized intersecting selection at exactly half support (the extremal
/// shape in the `m ≤ k` regime). Returns the selection size when the shape
/// matches: zero for odd `m`, `½·|level(m/2)|` for even `m`.
pub fn above_half_selection_split(family: &Family) -> Result<Option<u64>> {
    let m = family.m();
    let k = family.k();
    if m > k {
        return Ok(None);
    }
    let above = above_half_family(m, k)?;
    if !above.is_subfamily_of(family) {
        return Ok(None);
    }
    let selection = family.difference(&above);
    if !m.is_multiple_of(2) {
        return Ok(if selection.is_empty() { Some(0) } else { None });
    }
    let level = level_family(m, k, m / 2)?;
    let structured = selection.is_subfamily_of(&level)
        && 2 * selection.len() == level.len()
        && selection.is_t_intersecting(1);
    Ok(structured.then_some(selection.len() as u64))
}
