//! `ekr` — batch verification of intersecting `k`-multiset family bounds.
//!
//! Subcommands wire the library into reproducible runs: closed-form bounds,
//! exact solver verification of the bounds and uniqueness structure, the
//! `t`-intersecting boundary exploration, homomorphism checks, graph export,
//! and family compression. Every run emits a machine-readable report (JSON
//! by default) and exits 0 only when all checked claims hold; 1 flags a
//! failed claim, 2 a usage error, 3 a resource limit.

mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ekr_core::bijection::{check_homomorphism, dump_map, t_edge_preservation, CheckOptions};
use ekr_core::combinatorics::multichoose;
use ekr_core::compression::compress_to_fixpoint;
use ekr_core::families::{
    above_half_bound, above_half_selection_split, frankl_family, star_bound, t_star_bound, Family,
};
use ekr_core::graphs::{
    build_graph, read_dimacs, write_dimacs, write_edge_list, write_manifest, BuildOptions,
    GraphSpec,
};
use ekr_core::solver::{
    best_known_certificate, enumerate_maximum_families, max_family, max_independent_set,
    verify_certificate, FamilyClass, MaximumCensus, SolveOptions, SolveResult,
    DEFAULT_CENSUS_CAP, DEFAULT_SOLVE_LIMIT,
};

use report::RunReport;

#[derive(Parser)]
#[command(
    name = "ekr",
    version,
    about = "Exact verification toolkit for intersecting k-multiset families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Reserved for solver parallelism; report fields never depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print the applicable family-size bound(s) for (m, k) or (m, k, t).
    Bound {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        /// Intersection threshold; t ≥ 2 selects the t-star bound.
        #[arg(long)]
        t: Option<u32>,
    },

    /// Solve M(m, k, t) exactly and verify the bound and uniqueness
    /// structure claimed for the regime.
    Verify(VerifyArgs),

    /// Tabulate the t-star bound against the Frankl-type construction over
    /// parameter ranges.
    Conjecture {
        /// Universe sizes, as N or LO:HI.
        #[arg(long)]
        m: RangeSpec,
        /// Cardinalities, as N or LO:HI.
        #[arg(long)]
        k: RangeSpec,
        /// Thresholds, as N or LO:HI.
        #[arg(long, default_value = "1")]
        t: RangeSpec,
        /// Skip cells whose vertex class exceeds this enumeration size.
        #[arg(long, default_value_t = 2_000_000)]
        enumeration_limit: u64,
    },

    /// Check that the canonical subset-to-multiset map is bijective and
    /// edge-preserving at (m, k).
    Homomorphism {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        /// Also scan t-intersection adjacency preservation at this t ≥ 2.
        #[arg(long)]
        t: Option<u32>,
        /// Write the full map as two-column rank pairs to this file.
        #[arg(long)]
        dump_map: Option<PathBuf>,
        #[arg(long, default_value_t = ekr_core::graphs::DEFAULT_DENSE_LIMIT)]
        max_vertices: u64,
    },

    /// Materialize a graph and write DIMACS / edge-list / manifest files.
    Export(ExportArgs),

    /// Compress a family file to its exchange fixpoint.
    Compress {
        /// Family file: JSON array of counts vectors.
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the compressed family (same JSON form) here.
        #[arg(long)]
        out_family: Option<PathBuf>,
    },

    /// Exact maximum t-intersecting family (maximum independent set).
    Solve(SolveArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 1)]
    t: u32,
    #[arg(long, default_value_t = DEFAULT_CENSUS_CAP)]
    census_cap: usize,
    #[arg(long, default_value_t = DEFAULT_SOLVE_LIMIT)]
    max_vertices: u64,
}

#[derive(Args)]
#[group(id = "kind", required = true, multiple = false)]
struct KindArgs {
    /// Multiset graph M(m, k, t) over universe --m.
    #[arg(long, group = "kind", requires = "m")]
    multiset: bool,
    /// Subset graph K(n, k, t) over universe --n.
    #[arg(long, group = "kind", requires = "n")]
    set: bool,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    kind: KindArgs,
    /// Universe size for the multiset kind.
    #[arg(long)]
    m: Option<u32>,
    /// Universe size for the set kind.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 1)]
    t: u32,
    /// Write DIMACS (`p edge`) output here.
    #[arg(long)]
    dimacs: Option<PathBuf>,
    /// Write a 0-based edge list here.
    #[arg(long)]
    edge_list: Option<PathBuf>,
    /// Write the rank-to-element-list JSON manifest here.
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long, default_value_t = ekr_core::graphs::DEFAULT_DENSE_LIMIT)]
    max_vertices: u64,
}

#[derive(Args)]
struct SolveArgs {
    /// Multiset graph M(m, k, t) over universe --m.
    #[arg(long, group = "source", requires = "m")]
    multiset: bool,
    /// Subset graph K(n, k, t) over universe --n.
    #[arg(long, group = "source", requires = "n")]
    set: bool,
    /// Solve a DIMACS instance from this file instead of a spec.
    #[arg(long, group = "source")]
    dimacs: Option<PathBuf>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, required_unless_present = "dimacs")]
    k: Option<u32>,
    #[arg(long, default_value_t = 1)]
    t: u32,
    /// Also enumerate all maximum families.
    #[arg(long)]
    census: bool,
    #[arg(long, default_value_t = DEFAULT_CENSUS_CAP)]
    census_cap: usize,
    /// Abort branch and bound after this many nodes and report the best
    /// family found, without an optimality claim.
    #[arg(long)]
    node_limit: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SOLVE_LIMIT)]
    max_vertices: u64,
}

/// `N` or `LO:HI` (inclusive).
#[derive(Clone, Copy)]
struct RangeSpec {
    lo: u32,
    hi: u32,
}

impl FromStr for RangeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |tok: &str| {
            tok.parse::<u32>()
                .map_err(|_| format!("bad range bound {tok:?}"))
        };
        let (lo, hi) = match s.split_once(':') {
            Some((lo, hi)) => (parse(lo)?, parse(hi)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(RangeSpec { lo, hi })
    }
}

impl RangeSpec {
    fn iter(&self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = match &cli.command {
        Command::Bound { m, k, t } => cmd_bound(*m, *k, *t),
        Command::Verify(args) => cmd_verify(args),
        Command::Conjecture {
            m,
            k,
            t,
            enumeration_limit,
        } => cmd_conjecture(*m, *k, *t, *enumeration_limit),
        Command::Homomorphism {
            m,
            k,
            t,
            dump_map,
            max_vertices,
        } => cmd_homomorphism(*m, *k, *t, dump_map.as_deref(), *max_vertices),
        Command::Export(args) => cmd_export(args),
        Command::Compress { input, out_family } => cmd_compress(input, out_family.as_deref()),
        Command::Solve(args) => cmd_solve(args),
    };

    match outcome {
        Ok(mut report) => {
            report.timing = json!({ "total_ms": started.elapsed().as_millis() as u64 });
            let rendered = match cli.format {
                Format::Json => report.to_json_string(),
                Format::Text => report.to_text(),
            };
            if let Some(path) = &cli.out {
                if let Err(error) = fs::write(path, rendered) {
                    eprintln!("error: cannot write report to {}: {error}", path.display());
                    return ExitCode::from(3);
                }
            } else {
                print!("{rendered}");
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(match error {
                ekr_core::Error::TooLarge { .. } | ekr_core::Error::CountOverflow(_) => 3,
                _ => 2,
            })
        }
    }
}

fn new_report(command: &'static str, parameters: Value) -> RunReport {
    RunReport {
        command,
        parameters,
        results: Value::Null,
        pass: true,
        notes: Vec::new(),
        timing: Value::Null,
    }
}

fn bound_value(report: &ekr_core::families::BoundReport) -> Value {
    serde_json::to_value(report).expect("bound report serializes")
}

fn cmd_bound(m: u32, k: u32, t: Option<u32>) -> ekr_core::Result<RunReport> {
    let mut report = new_report("bound", json!({ "m": m, "k": k, "t": t.unwrap_or(1) }));
    let results = match t {
        None | Some(1) => {
            let star = star_bound(m, k);
            let above = above_half_bound(m, k);
            let applicable = if star.in_regime {
                "star_bound"
            } else {
                "above_half_bound"
            };
            json!({
                "applicable": applicable,
                "bounds": [bound_value(&star), bound_value(&above)],
            })
        }
        Some(t) => {
            let bound = t_star_bound(m, k, t)?;
            if !bound.in_regime {
                report
                    .notes
                    .push("parameters are outside the conjectured regime".into());
            }
            json!({
                "applicable": "t_star_bound",
                "bounds": [bound_value(&bound)],
            })
        }
    };
    report.results = results;
    Ok(report)
}

fn census_value(census: &MaximumCensus) -> Value {
    let families: Vec<Value> = census
        .families
        .iter()
        .map(|(family, class)| {
            json!({
                "class": serde_json::to_value(class).expect("class serializes"),
                "members": family.iter().map(|a| a.counts().to_vec()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "optimum": census.optimum,
        "count": census.families.len(),
        "complete": census.complete,
        "families": families,
    })
}

fn cmd_verify(args: &VerifyArgs) -> ekr_core::Result<RunReport> {
    let VerifyArgs {
        m,
        k,
        t,
        census_cap,
        max_vertices,
    } = *args;
    let mut report = new_report("verify", json!({ "m": m, "k": k, "t": t }));
    let spec = GraphSpec::multiset(m, k, t)?;
    let opts = SolveOptions {
        max_vertices,
        node_limit: None,
    };
    let solved = max_family(&spec, &opts)?;
    let census = enumerate_maximum_families(&spec, census_cap, &opts)?;

    let mut pass = true;
    let mut checks: Vec<Value> = Vec::new();

    if !census.complete {
        report.notes.push(format!(
            "census truncated at cap {census_cap}: uniqueness claims cannot be confirmed"
        ));
    }

    if t == 1 {
        let bound = if m > k {
            star_bound(m, k)
        } else {
            above_half_bound(m, k)
        };
        let bound_holds = bound.value_u64() == Some(solved.optimum);
        pass &= bound_holds;
        checks.push(json!({
            "check": "optimum_equals_bound",
            "bound": bound_value(&bound),
            "optimum": solved.optimum,
            "holds": bound_holds,
        }));

        if m > k + 1 {
            // Uniqueness: exactly the m stars.
            let all_stars = census.complete
                && census.families.len() == m as usize
                && census.all_stars();
            pass &= all_stars;
            checks.push(json!({
                "check": "maxima_are_exactly_the_stars",
                "family_count": census.families.len(),
                "expected_count": m,
                "holds": all_stars,
            }));
        } else if m == k + 1 {
            let non_star = census
                .families
                .iter()
                .filter(|(_, class)| !matches!(class, FamilyClass::Star { .. }))
                .count();
            report.notes.push(format!(
                "m = k + 1: uniqueness is not claimed; {non_star} non-star maximum families exist"
            ));
            checks.push(json!({
                "check": "boundary_census_reported",
                "family_count": census.families.len(),
                "non_star_count": non_star,
                "holds": true,
            }));
        } else {
            // m ≤ k: every maximum family has the above-half structure, and
            // for odd m the maximum family is unique.
            let mut structured = census.complete;
            for (family, _) in &census.families {
                structured &= above_half_selection_split(family)?.is_some();
            }
            if m % 2 != 0 {
                structured &= census.families.len() == 1;
            }
            pass &= structured;
            checks.push(json!({
                "check": "maxima_have_above_half_structure",
                "family_count": census.families.len(),
                "unique_required": m % 2 != 0,
                "holds": structured,
            }));
        }
    } else {
        let bound = t_star_bound(m, k, t)?;
        let value = bound.value_u64();
        let relation = match value {
            Some(v) if solved.optimum > v => "optimum_exceeds_bound",
            Some(v) if solved.optimum == v => "optimum_equals_bound",
            _ => "optimum_below_bound",
        };
        if bound.in_regime && relation == "optimum_exceeds_bound" {
            report.notes.push(
                "counterexample to the conjectured bound inside its regime".into(),
            );
            pass = false;
        }
        checks.push(json!({
            "check": "t_star_bound_comparison",
            "bound": bound_value(&bound),
            "optimum": solved.optimum,
            "relation": relation,
            "in_regime": bound.in_regime,
        }));
    }

    report.results = json!({
        "spec": spec.label(),
        "optimum": solved.optimum,
        "proven_optimal": solved.proven_optimal,
        "nodes": solved.nodes,
        "checks": checks,
        "census": census_value(&census),
    });
    report.pass = pass;
    Ok(report)
}

fn cmd_conjecture(
    m_range: RangeSpec,
    k_range: RangeSpec,
    t_range: RangeSpec,
    enumeration_limit: u64,
) -> ekr_core::Result<RunReport> {
    let mut report = new_report(
        "conjecture",
        json!({
            "m": format!("{}:{}", m_range.lo, m_range.hi),
            "k": format!("{}:{}", k_range.lo, k_range.hi),
            "t": format!("{}:{}", t_range.lo, t_range.hi),
            "enumeration_limit": enumeration_limit,
        }),
    );
    let mut rows: Vec<Value> = Vec::new();
    let mut exceed_cells = 0u32;
    let mut equality_cells = 0u32;
    for m in m_range.iter() {
        for k in k_range.iter() {
            for t in t_range.iter() {
                if t == 0 || t > k || m == 0 {
                    continue;
                }
                let bound = t_star_bound(m, k, t)?;
                let frankl = if t + 2 <= m
                    && t < k
                    && multichoose(m as u64, k as u64) <= enumeration_limit.into()
                {
                    Some(frankl_family(m, k, t, &(1..=t + 2).collect::<Vec<_>>())?)
                } else {
                    None
                };
                let comparison = match (&frankl, bound.value_u64()) {
                    (Some(f), Some(b)) if (f.len() as u64) > b => {
                        exceed_cells += 1;
                        "frankl_exceeds_bound"
                    }
                    (Some(f), Some(b)) if f.len() as u64 == b => {
                        equality_cells += 1;
                        "frankl_equals_bound"
                    }
                    (Some(_), _) => "frankl_below_bound",
                    (None, _) => "frankl_not_computed",
                };
                rows.push(json!({
                    "m": m,
                    "k": k,
                    "t": t,
                    "bound": bound.value,
                    "in_regime": bound.in_regime,
                    "frankl_size": frankl.as_ref().map(|f| f.len() as u64),
                    "comparison": comparison,
                }));
            }
        }
    }
    report.notes.push(format!(
        "{exceed_cells} cell(s) exceed the bound (expected only below the regime threshold), \
         {equality_cells} equality cell(s)"
    ));
    report.results = json!({ "cells": rows });
    Ok(report)
}

fn cmd_homomorphism(
    m: u32,
    k: u32,
    t: Option<u32>,
    dump: Option<&Path>,
    max_vertices: u64,
) -> ekr_core::Result<RunReport> {
    let mut report = new_report("homomorphism", json!({ "m": m, "k": k, "t": t }));
    let opts = CheckOptions { max_vertices };
    let base = check_homomorphism(m, k, &opts)?;
    report.pass = base.passed();
    let mut results = serde_json::to_value(&base)?;

    if let Some(t) = t {
        if t >= 2 {
            let scan = t_edge_preservation(m, k, t, 16, &opts)?;
            report.notes.push(format!(
                "t = {t}: {} of {} adjacent subset pairs lose adjacency under the map \
                 (an empty list proves nothing beyond this scan)",
                scan.violations_found, scan.adjacent_pairs
            ));
            results["t_preservation"] = serde_json::to_value(&scan)?;
        }
    }

    if let Some(path) = dump {
        let pairs = dump_map(m, k, &opts)?;
        let mut text = String::new();
        for (from, to) in &pairs {
            text.push_str(&format!("{from} {to}\n"));
        }
        fs::write(path, text)?;
        report
            .notes
            .push(format!("wrote {} map rows to {}", pairs.len(), path.display()));
    }

    report.results = results;
    Ok(report)
}

fn spec_from_kind(
    multiset: bool,
    m: Option<u32>,
    n: Option<u32>,
    k: u32,
    t: u32,
) -> ekr_core::Result<GraphSpec> {
    if multiset {
        GraphSpec::multiset(
            m.ok_or_else(|| {
                ekr_core::Error::InvalidParameter("--multiset requires --m".into())
            })?,
            k,
            t,
        )
    } else {
        GraphSpec::set(
            n.ok_or_else(|| ekr_core::Error::InvalidParameter("--set requires --n".into()))?,
            k,
            t,
        )
    }
}

fn cmd_export(args: &ExportArgs) -> ekr_core::Result<RunReport> {
    let spec = spec_from_kind(args.kind.multiset, args.m, args.n, args.k, args.t)?;
    let mut report = new_report(
        "export",
        json!({
            "spec": spec.label(),
            "dimacs": args.dimacs.as_ref().map(|p| p.display().to_string()),
            "edge_list": args.edge_list.as_ref().map(|p| p.display().to_string()),
            "manifest": args.manifest.as_ref().map(|p| p.display().to_string()),
        }),
    );
    if args.dimacs.is_none() && args.edge_list.is_none() && args.manifest.is_none() {
        return Err(ekr_core::Error::InvalidParameter(
            "nothing to do: pass --dimacs, --edge-list or --manifest".into(),
        ));
    }
    let graph = build_graph(
        &spec,
        &BuildOptions {
            max_vertices: args.max_vertices,
        },
    )?;
    let mut written: Vec<String> = Vec::new();
    if let Some(path) = &args.dimacs {
        let mut file = fs::File::create(path)?;
        write_dimacs(&graph, &mut file)?;
        written.push(path.display().to_string());
    }
    if let Some(path) = &args.edge_list {
        let mut file = fs::File::create(path)?;
        write_edge_list(&graph, &mut file)?;
        written.push(path.display().to_string());
    }
    if let Some(path) = &args.manifest {
        let mut file = fs::File::create(path)?;
        write_manifest(&spec, &mut file)?;
        written.push(path.display().to_string());
    }
    report.results = json!({
        "spec": spec.label(),
        "vertices": graph.vertex_count(),
        "edges": graph.edge_count(),
        "files": written,
    });
    Ok(report)
}

fn cmd_compress(input: &Path, out_family: Option<&Path>) -> ekr_core::Result<RunReport> {
    let text = fs::read_to_string(input)?;
    let family = Family::from_json(&text)?;
    let mut report = new_report(
        "compress",
        json!({
            "in": input.display().to_string(),
            "m": family.m(),
            "k": family.k(),
            "size": family.len(),
        }),
    );
    let (fixpoint, traces) = compress_to_fixpoint(&family)?;
    if let Some(path) = out_family {
        let mut file = fs::File::create(path)?;
        file.write_all(fixpoint.to_json().as_bytes())?;
        file.write_all(b"\n")?;
        report
            .notes
            .push(format!("wrote compressed family to {}", path.display()));
    }
    report.results = json!({
        "initial_size": family.len(),
        "final_size": fixpoint.len(),
        "exchanges": serde_json::to_value(&traces)?,
        "family": fixpoint.iter().map(|a| a.counts().to_vec()).collect::<Vec<_>>(),
    });
    Ok(report)
}

fn solve_result_value(result: &SolveResult) -> ekr_core::Result<Value> {
    let witness_elements: Option<Vec<Vec<u32>>> = match (&result.spec, &result.witness) {
        (Some(_), Some(family)) => Some(family.iter().map(|a| a.elements()).collect()),
        _ => None,
    };
    Ok(json!({
        "optimum": result.optimum,
        "proven_optimal": result.proven_optimal,
        "nodes": result.nodes,
        "witness_ranks": result.witness_ranks,
        "witness_elements": witness_elements,
    }))
}

fn cmd_solve(args: &SolveArgs) -> ekr_core::Result<RunReport> {
    let opts = SolveOptions {
        max_vertices: args.max_vertices,
        node_limit: args.node_limit,
    };

    if let Some(path) = &args.dimacs {
        let mut report = new_report(
            "solve",
            json!({
                "dimacs": path.display().to_string(),
                "node_limit": args.node_limit,
            }),
        );
        let file = fs::File::open(path)?;
        let graph = read_dimacs(std::io::BufReader::new(file))?;
        let result = max_independent_set(&graph, &opts)?;
        if !result.proven_optimal {
            report
                .notes
                .push("node limit reached: size is a lower bound, not the optimum".into());
        }
        report.results = solve_result_value(&result)?;
        return Ok(report);
    }

    let k = args
        .k
        .ok_or_else(|| ekr_core::Error::InvalidParameter("--k is required".into()))?;
    let spec = spec_from_kind(args.multiset, args.m, args.n, k, args.t)?;
    let mut report = new_report(
        "solve",
        json!({
            "spec": spec.label(),
            "census": args.census,
            "node_limit": args.node_limit,
        }),
    );
    let result = max_family(&spec, &opts)?;
    let mut results = solve_result_value(&result)?;

    if args.multiset {
        // Constructions give a solver-independent certified lower bound.
        let (certificate, construction) = best_known_certificate(spec.universe, k, args.t)?;
        let verdict = verify_certificate(&certificate);
        results["certified_lower_bound"] = json!({
            "size": certificate.claimed_size,
            "construction": construction,
            "verdict": serde_json::to_value(&verdict)?,
        });
        if !result.proven_optimal {
            report.notes.push(format!(
                "optimality not proven at this node limit; the certified lower bound \
                 {} stands on its own",
                certificate.claimed_size
            ));
        }
    } else if !result.proven_optimal {
        report
            .notes
            .push("node limit reached: size is a lower bound, not the optimum".into());
    }

    if args.census {
        let census = enumerate_maximum_families(&spec, args.census_cap, &opts)?;
        results["census"] = census_value(&census);
    }

    report.results = results;
    Ok(report)
}
