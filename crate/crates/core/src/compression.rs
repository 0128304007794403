//! The support-exchange step: inside an intersecting family, replace every
//! member whose support equals a fixed minimal support `S` (with `|S| <
//! m/2`) by *all* `k`-multisets supported exactly on `[m] \ S`. The removed
//! block has at most `C(k-1, k-i)` members, the added block has exactly
//! `C(k-1, k-m+i) > C(k-1, k-i)` members, and every remaining member meets
//! the complement, so the family grows strictly while staying intersecting.

use serde::Serialize;

use crate::combinatorics::{factorial, multisets};
use crate::families::{Family, Multiset};
use crate::{Error, Result};

/// Record of one exchange application.
#[derive(Clone, Debug, Serialize)]
pub struct ExchangeTrace {
    /// Element list of the multiset whose support class was exchanged.
    pub chosen: Vec<u32>,
    /// The exchanged support `S`.
    pub support: Vec<u32>,
    pub support_size: u32,
    /// `|B₁|`: members removed (the full support class inside the family).
    pub removed: u64,
    /// `|B₂|`: members added (every multiset supported on the complement).
    pub added: u64,
    pub family_size_before: u64,
    pub family_size_after: u64,
    /// `after - before`; equals `added - removed` for intersecting input.
    pub net_gain: i64,
}

/// A member of minimum support size, ties broken by canonical rank.
pub fn min_support_member(family: &Family) -> Result<&Multiset> {
    family
        .iter()
        .min_by_key(|a| a.support_size())
        .ok_or(Error::EmptyFamily)
    // members are stored in rank order and `min_by_key` keeps the first
    // minimum, which is exactly the rank tie-break.
}

/// Applies the exchange at `chosen`, returning the new family and a trace.
///
/// Preconditions checked: `m > 2`, `m ≤ k`, `chosen` is a member, its
/// support size `i` satisfies `i < m/2`, and no other member's support is a
/// proper subset of it (the minimality the growth argument rests on). The
/// caller supplies a 1-intersecting family; the result is then
/// 1-intersecting and strictly larger.
pub fn exchange(family: &Family, chosen: &Multiset) -> Result<(Family, ExchangeTrace)> {
    let m = family.m();
    let k = family.k();
    if m <= 2 {
        return Err(Error::InvalidParameter(format!(
            "exchange requires m > 2, got m = {m}"
        )));
    }
    if m > k {
        return Err(Error::InvalidParameter(format!(
            "exchange applies in the m ≤ k regime, got m = {m} > k = {k}"
        )));
    }
    if !family.contains(chosen) {
        return Err(Error::InvalidParameter(
            "chosen multiset is not a member of the family".into(),
        ));
    }
    let support = chosen.support();
    let i = support.len();
    if 2 * i >= m {
        return Err(Error::InvalidParameter(format!(
            "chosen support has size {i}, exchange requires |S| < m/2 = {}",
            m as f64 / 2.0
        )));
    }
    for member in family.iter() {
        let s = member.support();
        if s.len() < i && s.is_subset_of(&support) {
            return Err(Error::InvalidParameter(format!(
                "support of {{{member}}} is properly contained in the chosen support; \
                 exchange requires a member of minimal support"
            )));
        }
    }

    let removed_block: Vec<Multiset> = family
        .iter()
        .filter(|a| a.support().elements() == support.elements())
        .cloned()
        .collect();
    let complement = support.complement(m);
    let added_block = multisets_on_support(m, k, &complement);

    let removed = removed_block.len() as u64;
    let added = added_block.len() as u64;
    let before = family.len() as u64;

    let kept = Family::new(
        m,
        k,
        family
            .iter()
            .filter(|a| a.support().elements() != support.elements())
            .cloned(),
    )?;
    let new_family = kept.union(&Family::new(m, k, added_block)?);
    let after = new_family.len() as u64;

    let trace = ExchangeTrace {
        chosen: chosen.elements(),
        support: support.elements().to_vec(),
        support_size: i,
        removed,
        added,
        family_size_before: before,
        family_size_after: after,
        net_gain: after as i64 - before as i64,
    };
    Ok((new_family, trace))
}

/// All `k`-multisets whose support is exactly `support`.
fn multisets_on_support(m: u32, k: u32, support: &[u32]) -> Vec<Multiset> {
    let j = support.len() as u32;
    if j == 0 || j > k {
        return Vec::new();
    }
    multisets(j, k - j)
        .map(|extra| {
            let mut counts = vec![0u32; m as usize];
            for &s in support {
                counts[s as usize - 1] = 1;
            }
            for e in extra {
                counts[support[e as usize - 1] as usize - 1] += 1;
            }
            Multiset::from_counts(counts).expect("support class member is canonical")
        })
        .collect()
}

/// Exact evaluation of `(k-i)!(i-1)! > (k-m+i)!(m-i-1)!`, the inequality
/// equivalent to the exchange's strict growth. Must hold for every `m ≤ k`
/// and `1 ≤ i < m/2`.
pub fn factorial_inequality_holds(m: u32, k: u32, i: u32) -> Result<bool> {
    if m > k {
        return Err(Error::InvalidParameter(format!(
            "out of regime: m = {m} > k = {k}"
        )));
    }
    if i == 0 || 2 * i >= m {
        return Err(Error::InvalidParameter(format!(
            "out of regime: need 1 ≤ i < m/2, got i = {i}, m = {m}"
        )));
    }
    let lhs = factorial((k - i) as u64) * factorial((i - 1) as u64);
    let rhs = factorial((k - m + i) as u64) * factorial((m - i - 1) as u64);
    Ok(lhs > rhs)
}

/// Iterates the exchange at a minimal support until every support has size
/// at least `m/2`. Size never decreases, the intersecting property is
/// preserved, and the loop terminates because each step removes one support
/// class below `m/2` and adds only supports above `m/2`.
pub fn compress_to_fixpoint(family: &Family) -> Result<(Family, Vec<ExchangeTrace>)> {
    let m = family.m();
    let k = family.k();
    if m > k {
        return Err(Error::InvalidParameter(format!(
            "compression applies in the m ≤ k regime, got m = {m} > k = {k}"
        )));
    }
    if let Some((a, b)) = family.first_violating_pair(1) {
        return Err(Error::InvalidParameter(format!(
            "family is not intersecting: {{{a}}} and {{{b}}} are disjoint"
        )));
    }
    let mut current = family.clone();
    let mut traces = Vec::new();
    let iteration_cap = family.len() as u64 * m as u64 + 1;
    loop {
        if current.is_empty() {
            break;
        }
        let candidate = min_support_member(&current)?.clone();
        if 2 * candidate.support_size() >= m {
            break;
        }
        let (next, trace) = exchange(&current, &candidate)?;
        debug_assert!(trace.net_gain >= 0);
        traces.push(trace);
        current = next;
        assert!(
            traces.len() as u64 <= iteration_cap,
            "compression failed to terminate"
        );
    }
    Ok((current, traces))
}
