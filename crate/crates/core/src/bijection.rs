//! An explicit bijection from `k`-subsets of `[n]`, `n = m + k - 1`, onto
//! `k`-multisets of `[m]` that carries disjoint subsets to disjoint
//! multisets, making `K(n, k)` a spanning subgraph of `M(m, k)`.
//!
//! The defining constraint is that the image's distinct elements are exactly
//! `B ∩ [m]`. The tail `B ∩ {m+1, ..., n}` is re-encoded as extra
//! multiplicities: with tail elements `t_1 < ... < t_{k-a}`, the shifts
//! `d_j = (t_j - m) - (j - 1)` form a nondecreasing sequence in `[1, a]`,
//! and each `d_j` adds one copy of the `d_j`-th smallest element of
//! `B ∩ [m]`. Per support class both sides have `C(k-1, k-a)` objects, so
//! the map is a bijection, and it is the canonical choice of the map that
//! the counting argument only proves to exist.

use serde::Serialize;

use crate::combinatorics::{
    combinations, multichoose, multichoose_u64, rank_combination,
    unrank_combination, Rank,
};
use crate::families::Multiset;
use crate::{Error, Result};

/// A sorted `k`-subset of `[n]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KSubset {
    n: u32,
    elements: Vec<u32>,
}

impl KSubset {
    pub fn new(n: u32, elements: Vec<u32>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::NotCanonical("subset must have k ≥ 1 elements".into()));
        }
        let mut prev = 0u32;
        for &e in &elements {
            if e <= prev {
                return Err(Error::NotCanonical(
                    "subset elements must be strictly increasing".into(),
                ));
            }
            if e > n {
                return Err(Error::NotCanonical(format!(
                    "element {e} outside universe [{n}]"
                )));
            }
            prev = e;
        }
        Ok(KSubset { n, elements })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.elements.len() as u32
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn rank(&self) -> Result<Rank> {
        rank_combination(&self.elements, self.n)
    }

    pub fn unrank(rank: Rank, n: u32, k: u32) -> Result<Self> {
        Ok(KSubset {
            n,
            elements: unrank_combination(rank, n, k)?,
        })
    }

    pub fn intersection_size(&self, other: &KSubset) -> u32 {
        self.elements
            .iter()
            .filter(|e| other.elements.binary_search(e).is_ok())
            .count() as u32
    }

    pub fn is_disjoint(&self, other: &KSubset) -> bool {
        self.intersection_size(other) == 0
    }

    /// The subset viewed as a 0/1 multiset over its own universe.
    pub fn to_multiset(&self) -> Multiset {
        Multiset::from_elements(self.n, &self.elements).expect("subset is a valid multiset")
    }
}

impl std::fmt::Display for KSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strs: Vec<String> = self.elements.iter().map(u32::to_string).collect();
        write!(f, "{}", strs.join(" "))
    }
}

/// Image of a `k`-subset of `[m + k - 1]` under the canonical bijection: a
/// `k`-multiset of `[m]` whose support is `B ∩ [m]`.
pub fn subset_to_multiset(b: &KSubset, m: u32) -> Result<Multiset> {
    if b.n() != m + b.k() - 1 {
        return Err(Error::ContextMismatch(format!(
            "subset universe is [{}], expected [m + k - 1] = [{}]",
            b.n(),
            m + b.k() - 1
        )));
    }
    let head: Vec<u32> = b.elements().iter().copied().filter(|&e| e <= m).collect();
    let tail: Vec<u32> = b.elements().iter().copied().filter(|&e| e > m).collect();
    debug_assert!(!head.is_empty(), "at most k-1 elements can exceed m");
    let mut counts = vec![0u32; m as usize];
    for &e in &head {
        counts[e as usize - 1] = 1;
    }
    for (j, &t_j) in tail.iter().enumerate() {
        let d = (t_j - m) as usize - j;
        debug_assert!(d >= 1 && d <= head.len());
        counts[head[d - 1] as usize - 1] += 1;
    }
    Multiset::from_counts(counts)
}

/// Exact inverse of [`subset_to_multiset`]: re-encodes excess multiplicities
/// as the strictly increasing tail `t_j = m + d_j + (j - 1)`.
pub fn multiset_to_subset(a: &Multiset) -> KSubset {
    let m = a.m();
    let support = a.support();
    let mut elements: Vec<u32> = support.elements().to_vec();
    let mut j = 0u32;
    for (pos, &s) in support.elements().iter().enumerate() {
        for _ in 1..a.count_of(s) {
            // d = pos + 1; extras are emitted in support order, so the d
            // sequence is nondecreasing and the tail strictly increasing.
            elements.push(m + pos as u32 + 1 + j);
            j += 1;
        }
    }
    KSubset::new(m + a.k() - 1, elements).expect("inverse image is canonical")
}

/// A pair of vertices witnessing a homomorphism-check failure.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub kind: CounterexampleKind,
    pub first: Vec<u32>,
    pub second: Vec<u32>,
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CounterexampleKind {
    /// Two distinct subsets mapped to the same multiset.
    Collision,
    /// A disjoint subset pair mapped to an intersecting multiset pair.
    EdgeLost,
}

/// Outcome of the exhaustive bijectivity and edge-preservation check at one
/// `(m, k)`.
#[derive(Clone, Debug, Serialize)]
pub struct HomomorphismReport {
    pub m: u32,
    pub k: u32,
    pub vertices: u64,
    pub bijective: bool,
    pub edge_preserving: bool,
    pub disjoint_pairs_checked: u64,
    pub counterexample: Option<Counterexample>,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.edge_preserving
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub max_vertices: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_vertices: crate::graphs::DEFAULT_DENSE_LIMIT,
        }
    }
}

/// Exhaustively verifies, over all `C(m + k - 1, k)` subsets, that the map
/// is injective (hence bijective, the two classes being equinumerous) and
/// that every disjoint subset pair maps to a disjoint multiset pair. The
/// first counterexample in rank order is reported, if any.
pub fn check_homomorphism(m: u32, k: u32, opts: &CheckOptions) -> Result<HomomorphismReport> {
    let count = multichoose(m as u64, k as u64);
    if count > opts.max_vertices.into() {
        return Err(Error::TooLarge {
            vertices: count.to_string(),
            limit: opts.max_vertices,
            hint: "lower k or m, or raise the check limit",
        });
    }
    let total = multichoose_u64(m as u64, k as u64).expect("within limit");
    let n = m + k - 1;

    let mut bijective = true;
    let mut edge_preserving = true;
    let mut counterexample = None;

    // Precompute subset masks (n ≤ 63 whenever the count is in range) and
    // image counts; detect rank collisions with a seen table.
    let mut subsets: Vec<Vec<u32>> = Vec::with_capacity(total as usize);
    let mut masks: Vec<u64> = Vec::with_capacity(total as usize);
    let mut images: Vec<Vec<u32>> = Vec::with_capacity(total as usize);
    let mut seen: Vec<Option<usize>> = vec![None; total as usize];
    for (idx, elements) in combinations(n, k).enumerate() {
        let b = KSubset { n, elements };
        let image = subset_to_multiset(&b, m)?;
        let image_rank = image.rank()? as usize;
        if let Some(prev) = seen[image_rank] {
            if bijective {
                bijective = false;
                counterexample = Some(Counterexample {
                    kind: CounterexampleKind::Collision,
                    first: subsets[prev].clone(),
                    second: b.elements().to_vec(),
                });
            }
        } else {
            seen[image_rank] = Some(idx);
        }
        let mask = b
            .elements()
            .iter()
            .fold(0u64, |acc, &e| acc | 1u64 << (e - 1));
        subsets.push(b.elements().to_vec());
        masks.push(mask);
        images.push(image.counts().to_vec());
    }

    let mut disjoint_pairs = 0u64;
    'outer: for u in 0..subsets.len() {
        for v in u + 1..subsets.len() {
            if masks[u] & masks[v] != 0 {
                continue;
            }
            disjoint_pairs += 1;
            let intersecting = images[u]
                .iter()
                .zip(&images[v])
                .any(|(&a, &b)| a.min(b) > 0);
            if intersecting {
                edge_preserving = false;
                if counterexample.is_none() {
                    counterexample = Some(Counterexample {
                        kind: CounterexampleKind::EdgeLost,
                        first: subsets[u].clone(),
                        second: subsets[v].clone(),
                    });
                }
                break 'outer;
            }
        }
    }

    Ok(HomomorphismReport {
        m,
        k,
        vertices: total,
        bijective,
        edge_preserving,
        disjoint_pairs_checked: disjoint_pairs,
        counterexample,
    })
}

/// The full map as `(subset rank, multiset rank)` pairs in subset-rank
/// order, for golden-file diffing.
pub fn dump_map(m: u32, k: u32, opts: &CheckOptions) -> Result<Vec<(Rank, Rank)>> {
    let count = multichoose(m as u64, k as u64);
    if count > opts.max_vertices.into() {
        return Err(Error::TooLarge {
            vertices: count.to_string(),
            limit: opts.max_vertices,
            hint: "lower k or m, or raise the check limit",
        });
    }
    let n = m + k - 1;
    let mut pairs = Vec::new();
    for (idx, elements) in combinations(n, k).enumerate() {
        let b = KSubset { n, elements };
        let image = subset_to_multiset(&b, m)?;
        pairs.push((idx as Rank, image.rank()?));
    }
    Ok(pairs)
}

/// Empirical `t ≥ 2` adjacency-preservation scan for the canonical map:
/// collects subset pairs that are adjacent in `K(n, k, t)` (intersection
/// `< t`) but whose images are not adjacent in `M(m, k, t)`.
///
/// Finding none here proves nothing beyond the scanned range; the check only
/// reports failures it can exhibit.
#[derive(Clone, Debug, Serialize)]
pub struct TPreservationReport {
    pub m: u32,
    pub k: u32,
    pub t: u32,
    pub adjacent_pairs: u64,
    pub violations_found: u64,
    /// Up to `cap` violating pairs, as subset element lists.
    pub examples: Vec<(Vec<u32>, Vec<u32>)>,
}

pub fn t_edge_preservation(
    m: u32,
    k: u32,
    t: u32,
    cap: usize,
    opts: &CheckOptions,
) -> Result<TPreservationReport> {
    if t == 0 || t > k {
        return Err(Error::InvalidParameter(format!(
            "threshold t = {t} outside [1, k] = [1, {k}]"
        )));
    }
    let count = multichoose(m as u64, k as u64);
    if count > opts.max_vertices.into() {
        return Err(Error::TooLarge {
            vertices: count.to_string(),
            limit: opts.max_vertices,
            hint: "lower k or m, or raise the check limit",
        });
    }
    let n = m + k - 1;
    let mut subsets = Vec::new();
    let mut images = Vec::new();
    for elements in combinations(n, k) {
        let b = KSubset { n, elements };
        let image = subset_to_multiset(&b, m)?;
        images.push(image.counts().to_vec());
        subsets.push(b);
    }
    let mut adjacent_pairs = 0u64;
    let mut violations = 0u64;
    let mut examples = Vec::new();
    for u in 0..subsets.len() {
        for v in u + 1..subsets.len() {
            if subsets[u].intersection_size(&subsets[v]) >= t {
                continue;
            }
            adjacent_pairs += 1;
            let image_meet: u32 = images[u]
                .iter()
                .zip(&images[v])
                .map(|(&a, &b)| a.min(b))
                .sum();
            if image_meet >= t {
                violations += 1;
                if examples.len() < cap {
                    examples.push((
                        subsets[u].elements().to_vec(),
                        subsets[v].elements().to_vec(),
                    ));
                }
            }
        }
    }
    Ok(TPreservationReport {
        m,
        k,
        t,
        adjacent_pairs,
        violations_found: violations,
        examples,
    })
}

/// Exhaustive backtracking search for *any* vertex bijection from
/// `K(m+k-1, k, t)` to `M(m, k, t)` carrying every edge to an edge. Only
/// feasible for tiny graphs; `None` means no such bijection exists at these
/// parameters (the graphs were searched completely).
pub fn search_bijective_homomorphism(
    m: u32,
    k: u32,
    t: u32,
    max_vertices: u64,
) -> Result<Option<Vec<Rank>>> {
    use crate::graphs::{build_graph, BuildOptions, GraphSpec};

    let k_spec = GraphSpec::set(m + k - 1, k, t)?;
    let m_spec = GraphSpec::multiset(m, k, t)?;
    let opts = BuildOptions {
        max_vertices,
    };
    let kg = build_graph(&k_spec, &opts)?;
    let mg = build_graph(&m_spec, &opts)?;
    let n = kg.vertex_count();
    debug_assert_eq!(n, mg.vertex_count());

    // Map K-vertices in decreasing-degree order; a target must have at
    // least the source's degree and all previously mapped K-neighbors must
    // land on M-neighbors.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(kg.degree(v)), v));

    let mut assignment: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];

    fn backtrack(
        depth: usize,
        order: &[usize],
        kg: &crate::graphs::DenseGraph,
        mg: &crate::graphs::DenseGraph,
        assignment: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let source = order[depth];
        for target in 0..mg.vertex_count() {
            if used[target] || mg.degree(target) < kg.degree(source) {
                continue;
            }
            let consistent = order[..depth].iter().all(|&prev| {
                !kg.are_adjacent(source, prev)
                    || mg.are_adjacent(target, assignment[prev].expect("mapped"))
            });
            if !consistent {
                continue;
            }
            assignment[source] = Some(target);
            used[target] = true;
            if backtrack(depth + 1, order, kg, mg, assignment, used) {
                return true;
            }
            assignment[source] = None;
            used[target] = false;
        }
        false
    }

    if backtrack(0, &order, &kg, &mg, &mut assignment, &mut used) {
        Ok(Some(
            assignment
                .into_iter()
                .map(|a| a.expect("complete assignment") as Rank)
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial_u64;

    fn subset(n: u32, elems: &[u32]) -> KSubset {
        KSubset::new(n, elems.to_vec()).unwrap()
    }

    #[test]
    fn forward_examples() {
        // m = 4, k = 3, n = 6.
        let img = subset_to_multiset(&subset(6, &[1, 2, 3]), 4).unwrap();
        assert_eq!(img.elements(), vec![1, 2, 3]);

        let img = subset_to_multiset(&subset(6, &[2, 5, 6]), 4).unwrap();
        assert_eq!(img.elements(), vec![2, 2, 2]);

        let img = subset_to_multiset(&subset(6, &[1, 3, 5]), 4).unwrap();
        assert_eq!(img.elements(), vec![1, 1, 3]);

        assert!(subset_to_multiset(&subset(7, &[1, 2, 3]), 4).is_err());
    }

    #[test]
    fn inverse_examples() {
        let a = Multiset::from_elements(4, &[1, 2, 3]).unwrap();
        assert_eq!(multiset_to_subset(&a).elements(), &[1, 2, 3]);

        let a = Multiset::from_elements(4, &[2, 2, 2]).unwrap();
        assert_eq!(multiset_to_subset(&a).elements(), &[2, 5, 6]);
    }

    #[test]
    fn roundtrip_c63() {
        let n = 6;
        let k = 3;
        for elements in combinations(n, k) {
            let b = KSubset::new(n, elements).unwrap();
            let img = subset_to_multiset(&b, 4).unwrap();
            assert_eq!(multiset_to_subset(&img), b);
        }
    }

    #[test]
    fn support_equals_head_up_to_7() {
        for m in 1..=7u32 {
            for k in 1..=7u32 {
                let n = m + k - 1;
                for elements in combinations(n, k) {
                    let head: Vec<u32> =
                        elements.iter().copied().filter(|&e| e <= m).collect();
                    let b = KSubset::new(n, elements).unwrap();
                    let img = subset_to_multiset(&b, m).unwrap();
                    assert_eq!(img.support().elements(), head, "m={m} k={k} B={b}");
                }
            }
        }
    }

    #[test]
    fn per_support_class_bijection() {
        // Restricted to {B : B ∩ [m] = A}, the map hits every multiset with
        // support A exactly once; both classes have size C(k-1, k-a).
        let (m, k) = (4u32, 4u32);
        let n = m + k - 1;
        use std::collections::HashMap;
        let mut by_support: HashMap<Vec<u32>, Vec<u64>> = HashMap::new();
        for elements in combinations(n, k) {
            let b = KSubset::new(n, elements).unwrap();
            let img = subset_to_multiset(&b, m).unwrap();
            by_support
                .entry(img.support().elements().to_vec())
                .or_default()
                .push(img.rank().unwrap());
        }
        for (support, mut ranks) in by_support {
            let a = support.len() as u64;
            let expect = binomial_u64(k as u64 - 1, k as i64 - a as i64).unwrap();
            ranks.sort_unstable();
            ranks.dedup();
            assert_eq!(ranks.len() as u64, expect, "support {support:?}");
        }
    }

    #[test]
    fn homomorphism_check_small() {
        for (m, k) in [(4u32, 3u32), (3, 2), (2, 4)] {
            let report = check_homomorphism(m, k, &CheckOptions::default()).unwrap();
            assert!(report.passed(), "m={m} k={k}: {report:?}");
            assert_eq!(
                report.vertices,
                crate::combinatorics::multichoose_u64(m as u64, k as u64).unwrap()
            );
        }
    }

    #[test]
    fn check_respects_limit() {
        let err = check_homomorphism(10, 10, &CheckOptions { max_vertices: 50 }).unwrap_err();
        assert!(matches!(err, crate::Error::TooLarge { .. }));
    }

    #[test]
    fn dump_map_is_a_permutation() {
        let pairs = dump_map(3, 3, &CheckOptions::default()).unwrap();
        let mut targets: Vec<u64> = pairs.iter().map(|&(_, t)| t).collect();
        targets.sort_unstable();
        let expect: Vec<u64> = (0..pairs.len() as u64).collect();
        assert_eq!(targets, expect);
    }

    #[test]
    fn t_preservation_report_is_consistent() {
        // The scan must agree with a direct recomputation of each reported
        // pair; whether violations exist is an empirical question.
        let report = t_edge_preservation(4, 4, 2, 8, &CheckOptions::default()).unwrap();
        for (first, second) in &report.examples {
            let n = 4 + 4 - 1;
            let b1 = KSubset::new(n, first.clone()).unwrap();
            let b2 = KSubset::new(n, second.clone()).unwrap();
            assert!(b1.intersection_size(&b2) < 2);
            let i1 = subset_to_multiset(&b1, 4).unwrap();
            let i2 = subset_to_multiset(&b2, 4).unwrap();
            assert!(i1.intersection_size(&i2) >= 2);
        }
        assert!(report.violations_found as usize >= report.examples.len());
    }

    #[test]
    fn exhaustive_search_hook_runs_on_tiny_instances() {
        // t = 1: the canonical map itself is a bijective homomorphism, so
        // the search must find one.
        let found = search_bijective_homomorphism(3, 2, 1, 100).unwrap();
        assert!(found.is_some());
        if let Some(map) = found {
            use crate::graphs::{build_graph, BuildOptions, GraphSpec};
            let kg = build_graph(&GraphSpec::set(4, 2, 1).unwrap(), &BuildOptions::default())
                .unwrap();
            let mg = build_graph(
                &GraphSpec::multiset(3, 2, 1).unwrap(),
                &BuildOptions::default(),
            )
            .unwrap();
            for u in 0..kg.vertex_count() {
                for v in 0..kg.vertex_count() {
                    if u != v && kg.are_adjacent(u, v) {
                        assert!(mg.are_adjacent(map[u] as usize, map[v] as usize));
                    }
                }
            }
        }
    }
}
