//! End-to-end checks of the `ekr` binary: exit codes, report shape and
//! reproducibility, and the documented file formats.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ekr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ekr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (Value, Output) {
    let out = ekr(args);
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON from {args:?}: {e}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (value, out)
}

#[test]
fn bound_reports_the_applicable_formula() {
    let (value, out) = report(&["bound", "--m", "4", "--k", "3"]);
    assert!(out.status.success());
    assert_eq!(value["results"]["applicable"], "star_bound");
    assert_eq!(value["results"]["bounds"][0]["value"], "10");
    assert_eq!(value["results"]["bounds"][0]["in_regime"], true);

    let (value, _) = report(&["bound", "--m", "4", "--k", "4"]);
    assert_eq!(value["results"]["applicable"], "above_half_bound");
    assert_eq!(value["results"]["bounds"][1]["value"], "22");

    let (value, _) = report(&["bound", "--m", "7", "--k", "5", "--t", "2"]);
    assert_eq!(value["results"]["bounds"][0]["value"], "84");
    assert_eq!(value["results"]["bounds"][0]["in_regime"], false);
}

#[test]
fn verify_confirms_the_claims() {
    for (m, k) in [("4", "2"), ("3", "3"), ("3", "2")] {
        let (value, out) = report(&["verify", "--m", m, "--k", k]);
        assert!(out.status.success(), "verify --m {m} --k {k}");
        assert_eq!(value["summary"]["pass"], true);
    }

    // m = k + 1 boundary reports non-star maxima without failing.
    let (value, _) = report(&["verify", "--m", "3", "--k", "2"]);
    let notes = value["summary"]["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("non-star")));

    let (value, _) = report(&["verify", "--m", "4", "--k", "2"]);
    assert_eq!(value["results"]["census"]["count"], 4);
}

#[test]
fn conjecture_flags_the_boundary_rows() {
    let (value, out) = report(&["conjecture", "--m", "7:9", "--k", "5", "--t", "2"]);
    assert!(out.status.success());
    let cells = value["results"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 3);
    assert_eq!(cells[0]["comparison"], "frankl_exceeds_bound");
    assert_eq!(cells[0]["frankl_size"], 91);
    assert_eq!(cells[0]["bound"], "84");
    assert_eq!(cells[1]["comparison"], "frankl_equals_bound");
    assert_eq!(cells[1]["frankl_size"], 120);
    assert_eq!(cells[2]["comparison"], "frankl_below_bound");
}

#[test]
fn homomorphism_passes_and_dumps_the_map() {
    let dir = tempfile::tempdir().unwrap();
    let map_path = dir.path().join("map.txt");
    let (value, out) = report(&[
        "homomorphism",
        "--m",
        "4",
        "--k",
        "3",
        "--dump-map",
        map_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(value["results"]["bijective"], true);
    assert_eq!(value["results"]["edge_preserving"], true);
    let map = std::fs::read_to_string(&map_path).unwrap();
    assert_eq!(map.lines().count(), 20);
    assert!(map.lines().all(|l| l.split_whitespace().count() == 2));
}

#[test]
fn export_writes_the_documented_formats() {
    let dir = tempfile::tempdir().unwrap();
    let dimacs = dir.path().join("m321.col");
    let manifest = dir.path().join("m321.json");
    let out = ekr(&[
        "export",
        "--multiset",
        "--m",
        "3",
        "--k",
        "2",
        "--dimacs",
        dimacs.to_str().unwrap(),
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&dimacs).unwrap();
    assert_eq!(
        text,
        "p edge 6 6\ne 1 4\ne 1 5\ne 1 6\ne 2 6\ne 3 4\ne 4 6\n"
    );
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(manifest["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(manifest["vertices"][0], serde_json::json!([1, 1]));
}

#[test]
fn solve_on_exported_dimacs_matches_the_spec_solve() {
    let dir = tempfile::tempdir().unwrap();
    let dimacs = dir.path().join("m331.col");
    assert!(ekr(&[
        "export",
        "--multiset",
        "--m",
        "3",
        "--k",
        "3",
        "--dimacs",
        dimacs.to_str().unwrap(),
    ])
    .status
    .success());

    let (from_file, _) = report(&["solve", "--dimacs", dimacs.to_str().unwrap()]);
    let (from_spec, _) = report(&["solve", "--multiset", "--m", "3", "--k", "3"]);
    assert_eq!(from_file["results"]["optimum"], 7);
    assert_eq!(
        from_file["results"]["optimum"],
        from_spec["results"]["optimum"]
    );
    assert_eq!(
        from_file["results"]["witness_ranks"],
        from_spec["results"]["witness_ranks"]
    );
    // Spec-based solves carry the certified construction lower bound.
    assert_eq!(
        from_spec["results"]["certified_lower_bound"]["verdict"]["verdict"],
        "valid"
    );
}

#[test]
fn solve_census_classifies_families() {
    let (value, out) = report(&["solve", "--multiset", "--m", "4", "--k", "2", "--census"]);
    assert!(out.status.success());
    let census = &value["results"]["census"];
    assert_eq!(census["count"], 4);
    assert_eq!(census["complete"], true);
    for family in census["families"].as_array().unwrap() {
        assert_eq!(family["class"]["class"], "star");
    }
}

#[test]
fn compress_reaches_the_fixpoint() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("fam.json");
    let output = dir.path().join("fixed.json");
    // {1,1,1} over [3]: one exchange replaces it with the two multisets on
    // support {2,3}.
    std::fs::write(&input, "[[3,0,0]]").unwrap();
    let (value, out) = report(&[
        "compress",
        "--in",
        input.to_str().unwrap(),
        "--out-family",
        output.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(value["results"]["initial_size"], 1);
    assert_eq!(value["results"]["final_size"], 2);
    assert_eq!(value["results"]["exchanges"].as_array().unwrap().len(), 1);
    let written = std::fs::read_to_string(&output).unwrap();
    assert_eq!(written.trim_end(), "[[0,2,1],[0,1,2]]");
}

#[test]
fn reports_are_reproducible_modulo_provenance() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("provenance");
        v
    };
    for args in [
        vec!["bound", "--m", "6", "--k", "3"],
        vec!["verify", "--m", "2", "--k", "2"],
        vec!["solve", "--multiset", "--m", "4", "--k", "4", "--census"],
    ] {
        let (a, _) = report(&args);
        let (b, _) = report(&args);
        assert_eq!(strip(a), strip(b), "{args:?}");
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    // Usage error: missing required arguments.
    let out = ekr(&["bound", "--m", "4"]);
    assert_eq!(out.status.code(), Some(2));

    // Usage error: invalid parameter combination.
    let out = ekr(&["bound", "--m", "4", "--k", "3", "--t", "9"]);
    assert_eq!(out.status.code(), Some(2));

    // Resource limit: instance larger than the allowed dense build.
    let out = ekr(&[
        "solve",
        "--multiset",
        "--m",
        "9",
        "--k",
        "9",
        "--max-vertices",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too large"));
}

#[test]
fn text_format_renders_a_table() {
    let out = ekr(&["bound", "--m", "4", "--k", "3", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("command: bound"));
    assert!(text.contains("result: PASS"));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = ekr(&[
        "bound",
        "--m",
        "5",
        "--k",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let value: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["command"], "bound");
    assert!(Path::new(&path).exists());
}
