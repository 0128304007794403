//! Exact maximum `t`-intersecting families via maximum independent set.
//!
//! The solver runs branch and bound on the complement graph (maximum clique
//! with a greedy-coloring upper bound, candidates processed in rank order),
//! so results are exact and the reported witness is deterministic: identical
//! input always reproduces the identical family. A census mode enumerates
//! *all* maximum independent sets — no symmetry pruning, because uniqueness
//! claims quantify over every maximum family — and an independent
//! certificate checker re-verifies any claimed family by direct pairwise
//! intersection, never consulting the solver.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bitset::Bitset;
use crate::combinatorics::Rank;
use crate::families::{
    above_half_family, above_half_selection_split, frankl_family, half_selection_family,
    t_star_family, Family, Multiset,
};
use crate::graphs::{build_graph, BuildOptions, DenseGraph, GraphKind, GraphSpec};
use crate::{Error, Result};

/// Default cap on vertices for exact solving.
pub const DEFAULT_SOLVE_LIMIT: u64 = 5_000;
/// Default cap on the number of families a census will collect.
pub const DEFAULT_CENSUS_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Maximum vertex count accepted for exact solving.
    pub max_vertices: u64,
    /// Optional branch-and-bound node budget; when exhausted the best family
    /// found so far is returned with `proven_optimal = false`.
    pub node_limit: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_vertices: DEFAULT_SOLVE_LIMIT,
            node_limit: None,
        }
    }
}

/// Result of one exact solve.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub spec: Option<GraphSpec>,
    /// Size of the best independent set found; the exact optimum when
    /// `proven_optimal` holds.
    pub optimum: u64,
    /// Vertex ranks of the witness, ascending.
    pub witness_ranks: Vec<Rank>,
    /// The witness as a family (multisets, or 0/1 multisets for the set
    /// kind); absent for bare DIMACS input.
    pub witness: Option<Family>,
    pub nodes: u64,
    pub wall: Duration,
    pub proven_optimal: bool,
}

/// Exact maximum `t`-intersecting family on the graph described by `spec`.
pub fn max_family(spec: &GraphSpec, opts: &SolveOptions) -> Result<SolveResult> {
    let graph = build_solver_graph(spec, opts)?;
    let started = Instant::now();
    let complement = graph.complement();
    let mut search = CliqueSearch::new(&complement, opts.node_limit);
    search.run();
    let mut witness_ranks: Vec<Rank> = search.best.iter().map(|&v| v as Rank).collect();
    witness_ranks.sort_unstable();
    let witness = decode_family(spec, &witness_ranks)?;
    Ok(SolveResult {
        spec: Some(*spec),
        optimum: witness_ranks.len() as u64,
        witness_ranks,
        witness: Some(witness),
        nodes: search.nodes,
        wall: started.elapsed(),
        proven_optimal: !search.aborted,
    })
}

/// Exact maximum independent set of an arbitrary dense graph (DIMACS input).
pub fn max_independent_set(graph: &DenseGraph, opts: &SolveOptions) -> Result<SolveResult> {
    let n = graph.vertex_count() as u64;
    if n > opts.max_vertices {
        return Err(Error::TooLarge {
            vertices: n.to_string(),
            limit: opts.max_vertices,
            hint: "raise the solver limit or export the instance for an external solver",
        });
    }
    let started = Instant::now();
    let complement = graph.complement();
    let mut search = CliqueSearch::new(&complement, opts.node_limit);
    search.run();
    let mut witness_ranks: Vec<Rank> = search.best.iter().map(|&v| v as Rank).collect();
    witness_ranks.sort_unstable();
    Ok(SolveResult {
        spec: graph.spec().copied(),
        optimum: search.best.len() as u64,
        witness_ranks,
        witness: None,
        nodes: search.nodes,
        wall: started.elapsed(),
        proven_optimal: !search.aborted,
    })
}

fn build_solver_graph(spec: &GraphSpec, opts: &SolveOptions) -> Result<DenseGraph> {
    let count = spec.vertex_count();
    if count > opts.max_vertices.into() {
        return Err(Error::TooLarge {
            vertices: count.to_string(),
            limit: opts.max_vertices,
            hint: "raise the solver limit or export the instance for an external solver",
        });
    }
    build_graph(
        spec,
        &BuildOptions {
            max_vertices: opts.max_vertices,
        },
    )
}

fn decode_family(spec: &GraphSpec, ranks: &[Rank]) -> Result<Family> {
    let members = ranks
        .iter()
        .map(|&r| {
            let elements = spec.vertex_elements(r)?;
            Multiset::from_elements(spec.universe, &elements)
        })
        .collect::<Result<Vec<_>>>()?;
    Family::new(spec.universe, spec.k, members)
}

/// Tomita-style maximum clique search with a greedy-coloring bound.
/// Deterministic: candidates are colored and expanded in rank order, and the
/// first optimum encountered is kept.
struct CliqueSearch<'g> {
    graph: &'g DenseGraph,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    node_limit: Option<u64>,
    aborted: bool,
}

impl<'g> CliqueSearch<'g> {
    fn new(graph: &'g DenseGraph, node_limit: Option<u64>) -> Self {
        CliqueSearch {
            graph,
            best: Vec::new(),
            current: Vec::new(),
            nodes: 0,
            node_limit,
            aborted: false,
        }
    }

    fn run(&mut self) {
        let n = self.graph.vertex_count();
        let mut all = Bitset::new(n);
        for v in 0..n {
            all.insert(v);
        }
        self.expand(all);
    }

    /// Greedy coloring of `candidates` in rank order; returns (vertex,
    /// color) pairs ordered by ascending color, then rank. A clique inside
    /// the candidate set uses at most `max color` vertices.
    fn color_order(&self, candidates: &Bitset) -> Vec<(usize, usize)> {
        let mut classes: Vec<(Bitset, Vec<usize>)> = Vec::new();
        for v in candidates.iter_ones() {
            let row = self.graph.neighbors(v);
            match classes
                .iter_mut()
                .find(|(class_set, _)| !class_set.intersects(row))
            {
                Some((class_set, members)) => {
                    class_set.insert(v);
                    members.push(v);
                }
                None => {
                    let mut class_set = Bitset::new(candidates.capacity());
                    class_set.insert(v);
                    classes.push((class_set, vec![v]));
                }
            }
        }
        let mut order = Vec::with_capacity(candidates.count());
        for (color, (_, members)) in classes.iter().enumerate() {
            for &v in members {
                order.push((v, color + 1));
            }
        }
        order.sort_by_key(|&(v, c)| (c, v));
        order
    }

    fn expand(&mut self, mut candidates: Bitset) {
        self.nodes += 1;
        if let Some(limit) = self.node_limit {
            if self.nodes > limit {
                self.aborted = true;
                return;
            }
        }
        if !candidates.any() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        let order = self.color_order(&candidates);
        for &(v, color) in order.iter().rev() {
            if self.current.len() + color <= self.best.len() {
                return;
            }
            let mut next = candidates.clone();
            next.intersect_with(self.graph.neighbors(v));
            self.current.push(v);
            self.expand(next);
            self.current.pop();
            if self.aborted {
                return;
            }
            candidates.remove(v);
        }
    }
}

/// How a maximum family is structured.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "class")]
pub enum FamilyClass {
    /// Every member contains the fixed element.
    Star { element: u32 },
    /// Everything above half support plus a half-sized selection at exactly
    /// half support (selection empty when the universe size is odd).
    AboveHalfPlusSelection { selection_size: u64 },
    Other,
}

/// All maximum independent sets of a spec, classified.
#[derive(Clone, Debug)]
pub struct MaximumCensus {
    pub spec: GraphSpec,
    pub optimum: u64,
    pub families: Vec<(Family, FamilyClass)>,
    /// False when the cap cut enumeration short.
    pub complete: bool,
    pub nodes: u64,
}

impl MaximumCensus {
    pub fn all_stars(&self) -> bool {
        self.families
            .iter()
            .all(|(_, class)| matches!(class, FamilyClass::Star { .. }))
    }
}

/// Enumerates every maximum family (up to `cap`), classifying each.
pub fn enumerate_maximum_families(
    spec: &GraphSpec,
    cap: usize,
    opts: &SolveOptions,
) -> Result<MaximumCensus> {
    let base = max_family(spec, opts)?;
    if !base.proven_optimal {
        return Err(Error::InvalidParameter(
            "census requires a proven optimum; raise or drop the node limit".into(),
        ));
    }
    let graph = build_solver_graph(spec, opts)?;
    let complement = graph.complement();
    let mut enumerator = CliqueEnumerator {
        graph: &complement,
        target: base.optimum as usize,
        current: Vec::new(),
        found: Vec::new(),
        cap,
        truncated: false,
        nodes: 0,
    };
    let n = complement.vertex_count();
    let mut all = Bitset::new(n);
    for v in 0..n {
        all.insert(v);
    }
    if base.optimum > 0 {
        enumerator.expand(all);
    }
    let mut families = Vec::with_capacity(enumerator.found.len());
    for ranks in &enumerator.found {
        let family = decode_family(spec, ranks)?;
        let class = classify_family(spec, &family)?;
        families.push((family, class));
    }
    Ok(MaximumCensus {
        spec: *spec,
        optimum: base.optimum,
        families,
        complete: !enumerator.truncated,
        nodes: enumerator.nodes,
    })
}

/// Exhaustive enumeration of all cliques of exactly `target` vertices,
/// pruned only by the coloring bound (which never removes a clique that
/// could still reach `target`).
struct CliqueEnumerator<'g> {
    graph: &'g DenseGraph,
    target: usize,
    current: Vec<usize>,
    found: Vec<Vec<Rank>>,
    cap: usize,
    truncated: bool,
    nodes: u64,
}

impl CliqueEnumerator<'_> {
    fn color_bound(&self, candidates: &Bitset) -> usize {
        let mut classes: Vec<Bitset> = Vec::new();
        for v in candidates.iter_ones() {
            let row = self.graph.neighbors(v);
            match classes.iter_mut().find(|class| !class.intersects(row)) {
                Some(class) => class.insert(v),
                None => {
                    let mut class = Bitset::new(candidates.capacity());
                    class.insert(v);
                    classes.push(class);
                }
            }
        }
        classes.len()
    }

    fn expand(&mut self, mut candidates: Bitset) {
        self.nodes += 1;
        if self.truncated {
            return;
        }
        if self.current.len() == self.target {
            if self.found.len() == self.cap {
                self.truncated = true;
                return;
            }
            let mut ranks: Vec<Rank> = self.current.iter().map(|&v| v as Rank).collect();
            ranks.sort_unstable();
            self.found.push(ranks);
            return;
        }
        if self.current.len() + self.color_bound(&candidates) < self.target {
            return;
        }
        // Branch on the lowest-ranked candidate: include it, then exclude it.
        while let Some(v) = candidates.iter_ones().next() {
            let mut next = candidates.clone();
            next.intersect_with(self.graph.neighbors(v));
            self.current.push(v);
            self.expand(next);
            self.current.pop();
            if self.truncated {
                return;
            }
            candidates.remove(v);
            if self.current.len() + self.color_bound(&candidates) < self.target {
                return;
            }
        }
    }
}

fn classify_family(spec: &GraphSpec, family: &Family) -> Result<FamilyClass> {
    if let Some(element) = family.common_element() {
        return Ok(FamilyClass::Star { element });
    }
    if spec.kind == GraphKind::Multiset && spec.t == 1 {
        if let Some(selection_size) = above_half_selection_split(family)? {
            return Ok(FamilyClass::AboveHalfPlusSelection { selection_size });
        }
    }
    Ok(FamilyClass::Other)
}

/// A family together with its claimed properties, checkable without any
/// solver involvement.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub family: Family,
    pub t: u32,
    pub claimed_size: u64,
}

impl Certificate {
    pub fn new(family: Family, t: u32, claimed_size: u64) -> Self {
        Certificate {
            family,
            t,
            claimed_size,
        }
    }
}

/// Outcome of independent certificate verification.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum CertificateVerdict {
    Valid,
    SizeMismatch {
        claimed: u64,
        actual: u64,
    },
    /// A witness pair with intersection below the claimed threshold.
    NotIntersecting {
        first: Vec<u32>,
        second: Vec<u32>,
        intersection: u32,
        required: u32,
    },
}

impl CertificateVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateVerdict::Valid)
    }
}

/// Re-checks a certificate by direct pairwise intersection computation and a
/// size comparison. Never consults the solver.
pub fn verify_certificate(certificate: &Certificate) -> CertificateVerdict {
    let actual = certificate.family.len() as u64;
    if actual != certificate.claimed_size {
        return CertificateVerdict::SizeMismatch {
            claimed: certificate.claimed_size,
            actual,
        };
    }
    if let Some((a, b)) = certificate.family.first_violating_pair(certificate.t) {
        return CertificateVerdict::NotIntersecting {
            first: a.elements(),
            second: b.elements(),
            intersection: a.intersection_size(b),
            required: certificate.t,
        };
    }
    CertificateVerdict::Valid
}

/// The best certified lower bound for `α(M(m, k, t))` obtainable from the
/// closed-form constructions; returns the construction label with a verified
/// certificate. Used when exact solving is out of reach, so the toolkit can
/// report a sound bound without claiming optimality.
pub fn best_known_certificate(m: u32, k: u32, t: u32) -> Result<(Certificate, String)> {
    if t == 0 || t > k {
        return Err(Error::InvalidParameter(format!(
            "threshold t = {t} outside [1, k] = [1, {k}]"
        )));
    }
    let mut candidates: Vec<(Family, String)> = Vec::new();

    let fixed = Multiset::from_elements(m, &vec![1u32; t as usize])?;
    candidates.push((
        t_star_family(m, k, &fixed)?,
        format!("t_star_family(fixed = 1^{t})"),
    ));

    if t + 2 <= m && t < k {
        let fixed_set: Vec<u32> = (1..=t + 2).collect();
        candidates.push((
            frankl_family(m, k, t, &fixed_set)?,
            format!("frankl_family(fixed_set = 1..{})", t + 2),
        ));
    }

    if t == 1 && m <= k {
        let mut family = above_half_family(m, k)?;
        if m.is_multiple_of(2) {
            family = family.union(&half_selection_family(m, k)?);
        }
        candidates.push((family, "above_half_family ∪ half_selection_family".into()));
    }

    let (family, label) = candidates
        .into_iter()
        .max_by_key(|(f, _)| f.len())
        .expect("at least the t-star candidate exists");
    let certificate = Certificate::new(family.clone(), t, family.len() as u64);
    debug_assert!(verify_certificate(&certificate).is_valid());
    Ok((certificate, label))
}
