//! Disjointness graphs for `k`-subsets and `k`-multisets.
//!
//! `K(n, k, t)` has the `k`-subsets of `[n]` as vertices with edges between
//! pairs sharing fewer than `t` elements; `M(m, k, t)` is the multiset
//! analogue, with intersection counted with repetitions. In both graphs an
//! independent set is exactly a `t`-intersecting family, which is what makes
//! them the bridge between the family constructions and the exact solver.
//!
//! Vertices are identified by canonical rank everywhere, including in the
//! DIMACS and edge-list writers, so output is reproducible across tools.

use std::io::{BufRead, Write};

use serde::Serialize;

use crate::bitset::Bitset;
use crate::combinatorics::{
    binomial, combinations, multichoose, multisets, unrank_combination,
    unrank_multiset_elements, BigCount, Rank,
};
use crate::{Error, Result};

/// Default cap on materialized (dense bitset) graphs.
pub const DEFAULT_DENSE_LIMIT: u64 = 50_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    /// Vertices are `k`-subsets of `[n]`.
    Set,
    /// Vertices are `k`-multisets of `[m]`.
    Multiset,
}

/// Parameters of a disjointness graph: kind, universe size, cardinality `k`,
/// and intersection threshold `t` (edges join pairs with intersection `< t`).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct GraphSpec {
    pub kind: GraphKind,
    pub universe: u32,
    pub k: u32,
    pub t: u32,
}

impl GraphSpec {
    /// The multiset graph `M(m, k, t)`.
    pub fn multiset(m: u32, k: u32, t: u32) -> Result<Self> {
        Self::validated(GraphKind::Multiset, m, k, t)
    }

    /// The subset graph `K(n, k, t)`.
    pub fn set(n: u32, k: u32, t: u32) -> Result<Self> {
        Self::validated(GraphKind::Set, n, k, t)
    }

    fn validated(kind: GraphKind, universe: u32, k: u32, t: u32) -> Result<Self> {
        if universe == 0 {
            return Err(Error::InvalidParameter("universe size must be ≥ 1".into()));
        }
        if t == 0 || t > k {
            return Err(Error::InvalidParameter(format!(
                "threshold t = {t} outside [1, k] = [1, {k}]"
            )));
        }
        Ok(GraphSpec {
            kind,
            universe,
            k,
            t,
        })
    }

    /// `M(3,2,1)` / `K(6,3,2)`-style display label.
    pub fn label(&self) -> String {
        let letter = match self.kind {
            GraphKind::Set => 'K',
            GraphKind::Multiset => 'M',
        };
        format!("{letter}({},{},{})", self.universe, self.k, self.t)
    }

    /// Exact vertex count: `C(n, k)` or `multichoose(m, k)`.
    pub fn vertex_count(&self) -> BigCount {
        match self.kind {
            GraphKind::Set => binomial(self.universe as u64, self.k as i64),
            GraphKind::Multiset => multichoose(self.universe as u64, self.k as u64),
        }
    }

    pub fn vertex_count_u64(&self) -> Option<u64> {
        match self.kind {
            GraphKind::Set => {
                crate::combinatorics::binomial_u64(self.universe as u64, self.k as i64)
            }
            GraphKind::Multiset => {
                crate::combinatorics::multichoose_u64(self.universe as u64, self.k as u64)
            }
        }
    }

    /// Element list of the vertex with the given rank (sorted; strictly
    /// increasing for sets, nondecreasing for multisets).
    pub fn vertex_elements(&self, rank: Rank) -> Result<Vec<u32>> {
        match self.kind {
            GraphKind::Set => unrank_combination(rank, self.universe, self.k),
            GraphKind::Multiset => unrank_multiset_elements(rank, self.universe, self.k),
        }
    }

    /// Multiplicity vector over the universe for the vertex with the given
    /// rank (0/1-valued for the set kind).
    pub fn vertex_counts(&self, rank: Rank) -> Result<Vec<u32>> {
        Ok(elements_to_counts(
            self.universe,
            &self.vertex_elements(rank)?,
        ))
    }

    /// Counts vectors of every vertex in rank order.
    pub fn all_vertex_counts(&self) -> Vec<Vec<u32>> {
        let m = self.universe;
        match self.kind {
            GraphKind::Set => combinations(m, self.k)
                .map(|e| elements_to_counts(m, &e))
                .collect(),
            GraphKind::Multiset => multisets(m, self.k)
                .map(|e| elements_to_counts(m, &e))
                .collect(),
        }
    }

    /// Lazy adjacency oracle: true iff the two vertices' intersection is
    /// smaller than `t`. Works without materializing the graph.
    pub fn adjacent(&self, u: Rank, v: Rank) -> Result<bool> {
        let cu = self.vertex_counts(u)?;
        let cv = self.vertex_counts(v)?;
        Ok(intersection_below(&cu, &cv, self.t))
    }
}

fn elements_to_counts(universe: u32, elements: &[u32]) -> Vec<u32> {
    let mut counts = vec![0u32; universe as usize];
    for &e in elements {
        counts[e as usize - 1] += 1;
    }
    counts
}

/// True iff `Σ min(a_i, b_i) < t`, with early exit once `t` is reached.
fn intersection_below(a: &[u32], b: &[u32], t: u32) -> bool {
    let mut total = 0u32;
    for (&x, &y) in a.iter().zip(b) {
        total += x.min(y);
        if total >= t {
            return false;
        }
    }
    true
}

/// Options controlling materialization.
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Maximum vertex count for a dense build.
    pub max_vertices: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_vertices: DEFAULT_DENSE_LIMIT,
        }
    }
}

/// Dense symmetric adjacency over vertices `0..n` in rank order.
#[derive(Debug)]
pub struct DenseGraph {
    spec: Option<GraphSpec>,
    rows: Vec<Bitset>,
    edge_count: u64,
}

impl DenseGraph {
    /// The spec this graph was built from, when it came from one (DIMACS
    /// input has none).
    pub fn spec(&self) -> Option<&GraphSpec> {
        self.spec.as_ref()
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    /// Complement graph (self-loops stay absent).
    pub fn complement(&self) -> DenseGraph {
        let n = self.rows.len();
        let mut rows = Vec::with_capacity(n);
        for (v, row) in self.rows.iter().enumerate() {
            let mut c = row.clone();
            c.invert();
            c.remove(v);
            rows.push(c);
        }
        let edge_count = (n as u64 * (n as u64 - 1)) / 2 - self.edge_count;
        DenseGraph {
            spec: None,
            rows,
            edge_count,
        }
    }

    fn from_rows(spec: Option<GraphSpec>, rows: Vec<Bitset>) -> DenseGraph {
        let edge_count = rows.iter().map(|r| r.count() as u64).sum::<u64>() / 2;
        DenseGraph {
            spec,
            rows,
            edge_count,
        }
    }
}

/// Materializes the graph as dense per-vertex bitsets (deterministic vertex
/// order = rank order).
pub fn build_graph(spec: &GraphSpec, opts: &BuildOptions) -> Result<DenseGraph> {
    let count = spec.vertex_count();
    if count > opts.max_vertices.into() {
        return Err(Error::TooLarge {
            vertices: count.to_string(),
            limit: opts.max_vertices,
            hint: "use the lazy adjacency oracle or the DIMACS export path",
        });
    }
    let vertices = spec.all_vertex_counts();
    let n = vertices.len();
    let mut rows = vec![Bitset::new(n); n];
    for u in 0..n {
        for v in u + 1..n {
            if intersection_below(&vertices[u], &vertices[v], spec.t) {
                rows[u].insert(v);
                rows[v].insert(u);
            }
        }
    }
    Ok(DenseGraph::from_rows(Some(*spec), rows))
}

/// Writes the DIMACS form: header `p edge V E`, then one `e u v` line per
/// undirected edge with 1-based endpoints, `u < v`, in rank order.
pub fn write_dimacs<W: Write>(graph: &DenseGraph, out: &mut W) -> Result<()> {
    writeln!(
        out,
        "p edge {} {}",
        graph.vertex_count(),
        graph.edge_count()
    )?;
    for u in 0..graph.vertex_count() {
        for v in graph.neighbors(u).iter_ones() {
            if v > u {
                writeln!(out, "e {} {}", u + 1, v + 1)?;
            }
        }
    }
    Ok(())
}

/// Writes `u v` pairs, 0-based, one edge per line in rank order.
pub fn write_edge_list<W: Write>(graph: &DenseGraph, out: &mut W) -> Result<()> {
    for u in 0..graph.vertex_count() {
        for v in graph.neighbors(u).iter_ones() {
            if v > u {
                writeln!(out, "{u} {v}")?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Manifest<'a> {
    kind: GraphKind,
    universe: u32,
    k: u32,
    t: u32,
    /// Element list of each vertex, indexed by rank.
    vertices: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<&'a str>,
}

/// Sidecar JSON manifest mapping rank to element list, for human inspection
/// of exported graphs.
pub fn write_manifest<W: Write>(spec: &GraphSpec, out: &mut W) -> Result<()> {
    let vertices = match spec.kind {
        GraphKind::Set => combinations(spec.universe, spec.k).collect(),
        GraphKind::Multiset => multisets(spec.universe, spec.k).collect(),
    };
    let label = spec.label();
    let manifest = Manifest {
        kind: spec.kind,
        universe: spec.universe,
        k: spec.k,
        t: spec.t,
        vertices,
        label: Some(&label),
    };
    serde_json::to_writer(&mut *out, &manifest)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Reads a DIMACS `p edge` file into a dense graph. Comment (`c`) lines are
/// skipped; endpoints are 1-based.
pub fn read_dimacs<R: BufRead>(input: R) -> Result<DenseGraph> {
    let mut rows: Option<Vec<Bitset>> = None;
    let mut declared_edges = 0u64;
    let mut seen_edges = 0u64;
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("p") => {
                if rows.is_some() {
                    return Err(Error::Parse("duplicate DIMACS header".into()));
                }
                let format = fields.next().unwrap_or("");
                if format != "edge" && format != "col" {
                    return Err(Error::Parse(format!(
                        "line {}: expected 'p edge', got 'p {format}'",
                        lineno + 1
                    )));
                }
                let n: usize = parse_field(fields.next(), lineno)?;
                declared_edges = parse_field(fields.next(), lineno)?;
                rows = Some(vec![Bitset::new(n); n]);
            }
            Some("e") => {
                let rows = rows
                    .as_mut()
                    .ok_or_else(|| Error::Parse("edge before DIMACS header".into()))?;
                let u: usize = parse_field(fields.next(), lineno)?;
                let v: usize = parse_field(fields.next(), lineno)?;
                let n = rows.len();
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::Parse(format!(
                        "line {}: endpoint outside [1, {n}]",
                        lineno + 1
                    )));
                }
                if u == v {
                    return Err(Error::Parse(format!("line {}: self-loop", lineno + 1)));
                }
                if !rows[u - 1].contains(v - 1) {
                    rows[u - 1].insert(v - 1);
                    rows[v - 1].insert(u - 1);
                    seen_edges += 1;
                }
            }
            Some(other) => {
                return Err(Error::Parse(format!(
                    "line {}: unknown record '{other}'",
                    lineno + 1
                )));
            }
            None => {}
        }
    }
    let rows = rows.ok_or_else(|| Error::Parse("missing DIMACS header".into()))?;
    if declared_edges != seen_edges {
        return Err(Error::Parse(format!(
            "header declares {declared_edges} edges but file has {seen_edges}"
        )));
    }
    Ok(DenseGraph::from_rows(None, rows))
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, lineno: usize) -> Result<T> {
    field
        .ok_or_else(|| Error::Parse(format!("line {}: missing field", lineno + 1)))?
        .parse()
        .map_err(|_| Error::Parse(format!("line {}: bad numeric field", lineno + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{all_multisets, Family};

    #[test]
    fn vertex_counts() {
        assert_eq!(
            GraphSpec::multiset(4, 3, 1).unwrap().vertex_count_u64(),
            Some(20)
        );
        assert_eq!(GraphSpec::set(6, 3, 1).unwrap().vertex_count_u64(), Some(20));
        assert_eq!(GraphSpec::multiset(2, 3, 1).unwrap().vertex_count_u64(), Some(4));
    }

    #[test]
    fn adjacency_examples() {
        let m231 = GraphSpec::multiset(2, 3, 1).unwrap();
        // {1,1,1} is rank 0, {2,2,2} is rank 3.
        assert!(m231.adjacent(0, 3).unwrap());

        let m752 = GraphSpec::multiset(7, 5, 2).unwrap();
        let u = crate::combinatorics::rank_multiset_elements(&[1, 1, 2, 3, 4], 7).unwrap();
        let v = crate::combinatorics::rank_multiset_elements(&[1, 5, 5, 6, 7], 7).unwrap();
        assert!(m752.adjacent(u, v).unwrap());

        let k521 = GraphSpec::set(5, 2, 1).unwrap();
        let u = crate::combinatorics::rank_combination(&[1, 2], 5).unwrap();
        let v = crate::combinatorics::rank_combination(&[1, 3], 5).unwrap();
        assert!(!k521.adjacent(u, v).unwrap());

        assert!(m231.adjacent(0, 99).is_err());
    }

    #[test]
    fn build_m321_exact_edges() {
        let spec = GraphSpec::multiset(3, 2, 1).unwrap();
        let g = build_graph(&spec, &BuildOptions::default()).unwrap();
        assert_eq!(g.vertex_count(), 6);
        // Brute force over all 15 pairs using the multiset oracle.
        let all: Vec<_> = all_multisets(3, 2).collect();
        let mut expected = Vec::new();
        for u in 0..all.len() {
            for v in u + 1..all.len() {
                if all[u].is_disjoint(&all[v]) {
                    expected.push((u, v));
                }
            }
        }
        let mut got = Vec::new();
        for u in 0..g.vertex_count() {
            for v in g.neighbors(u).iter_ones() {
                if v > u {
                    got.push((u, v));
                }
            }
        }
        assert_eq!(got, expected);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn build_k421_is_perfect_matching() {
        let spec = GraphSpec::set(4, 2, 1).unwrap();
        let g = build_graph(&spec, &BuildOptions::default()).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 3);
        for v in 0..6 {
            assert_eq!(g.degree(v), 1);
        }
    }

    #[test]
    fn build_m331_edge_census() {
        // Census by brute force: singleton-support vertices are disjoint
        // from each other and from the two multisets on the complementary
        // pair, giving 3 + 6 = 9 edges.
        let spec = GraphSpec::multiset(3, 3, 1).unwrap();
        let g = build_graph(&spec, &BuildOptions::default()).unwrap();
        assert_eq!(g.vertex_count(), 10);
        let all: Vec<_> = all_multisets(3, 3).collect();
        let brute = {
            let mut count = 0u64;
            for u in 0..all.len() {
                for v in u + 1..all.len() {
                    if all[u].is_disjoint(&all[v]) {
                        count += 1;
                    }
                }
            }
            count
        };
        assert_eq!(brute, 9);
        assert_eq!(g.edge_count(), brute);
    }

    #[test]
    fn dense_limit_is_enforced() {
        let spec = GraphSpec::multiset(30, 10, 1).unwrap();
        let err = build_graph(&spec, &BuildOptions { max_vertices: 1000 }).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
        assert!(err.to_string().contains("export"));
    }

    #[test]
    fn dimacs_golden_m321() {
        let spec = GraphSpec::multiset(3, 2, 1).unwrap();
        let g = build_graph(&spec, &BuildOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_dimacs(&g, &mut buf).unwrap();
        let expected = "p edge 6 6\ne 1 4\ne 1 5\ne 1 6\ne 2 6\ne 3 4\ne 4 6\n";
        assert_eq!(String::from_utf8(buf).unwrap(), expected);
    }

    #[test]
    fn dimacs_golden_k421_and_empty() {
        let spec = GraphSpec::set(4, 2, 1).unwrap();
        let g = build_graph(&spec, &BuildOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_dimacs(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("p edge 6 3\n"));

        // Single-vertex universe: no pair of disjoint multisets at all.
        let spec = GraphSpec::multiset(1, 3, 1).unwrap();
        let g = build_graph(&spec, &BuildOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_dimacs(&g, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "p edge 1 0\n");
    }

    #[test]
    fn edge_list_and_dimacs_roundtrip() {
        let spec = GraphSpec::multiset(3, 3, 1).unwrap();
        let g = build_graph(&spec, &BuildOptions::default()).unwrap();

        let mut edges = Vec::new();
        write_edge_list(&g, &mut edges).unwrap();
        let lines = String::from_utf8(edges).unwrap();
        assert_eq!(lines.lines().count() as u64, g.edge_count());
        assert!(lines.lines().all(|l| l.split_whitespace().count() == 2));

        let mut dimacs = Vec::new();
        write_dimacs(&g, &mut dimacs).unwrap();
        let parsed = read_dimacs(dimacs.as_slice()).unwrap();
        assert_eq!(parsed.vertex_count(), g.vertex_count());
        assert_eq!(parsed.edge_count(), g.edge_count());
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                if u != v {
                    assert_eq!(parsed.are_adjacent(u, v), g.are_adjacent(u, v));
                }
            }
        }
    }

    #[test]
    fn read_dimacs_rejects_malformed_input() {
        assert!(read_dimacs("e 1 2\n".as_bytes()).is_err());
        assert!(read_dimacs("p edge 2 1\ne 1 3\n".as_bytes()).is_err());
        assert!(read_dimacs("p edge 2 2\ne 1 2\n".as_bytes()).is_err());
        assert!(read_dimacs("p edge 2 0\ne 1 1\n".as_bytes()).is_err());
    }

    #[test]
    fn manifest_lists_vertices_in_rank_order() {
        let spec = GraphSpec::multiset(2, 3, 1).unwrap();
        let mut buf = Vec::new();
        write_manifest(&spec, &mut buf).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(value["universe"], 2);
        assert_eq!(value["vertices"][0], serde_json::json!([1, 1, 1]));
        assert_eq!(value["vertices"][3], serde_json::json!([2, 2, 2]));
    }

    #[test]
    fn independent_sets_are_t_intersecting_families() {
        // Exhaustive on all subsets of small multiset graphs.
        for (m, k, t) in [(2u32, 2u32, 1u32), (3, 2, 1), (2, 3, 2), (3, 3, 2)] {
            let spec = GraphSpec::multiset(m, k, t).unwrap();
            let g = build_graph(&spec, &BuildOptions::default()).unwrap();
            let n = g.vertex_count();
            assert!(n <= 16);
            let all: Vec<_> = all_multisets(m, k).collect();
            for mask in 0u32..1 << n {
                let chosen: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                let independent = chosen
                    .iter()
                    .all(|&u| chosen.iter().all(|&v| v == u || !g.are_adjacent(u, v)));
                let family = Family::new(m, k, chosen.iter().map(|&v| all[v].clone())).unwrap();
                assert_eq!(
                    independent,
                    family.is_t_intersecting(t),
                    "m={m} k={k} t={t} mask={mask:b}"
                );
            }
        }
    }

    #[test]
    fn degenerate_set_spec_has_no_vertices() {
        let spec = GraphSpec::set(3, 5, 1).unwrap();
        assert_eq!(spec.vertex_count_u64(), Some(0));
        let g = build_graph(&spec, &BuildOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_dimacs(&g, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "p edge 0 0\n");
    }

    #[test]
    fn spec_validation() {
        assert!(GraphSpec::multiset(0, 2, 1).is_err());
        assert!(GraphSpec::multiset(3, 2, 0).is_err());
        assert!(GraphSpec::multiset(3, 2, 3).is_err());
        assert_eq!(GraphSpec::multiset(3, 2, 1).unwrap().label(), "M(3,2,1)");
        assert_eq!(GraphSpec::set(6, 3, 2).unwrap().label(), "K(6,3,2)");
    }
}
