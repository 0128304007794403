//! Golden-file checks: construction output keyed by (m, k, construction,
//! parameters) must stay bit-exact across releases, since downstream runs
//! diff serialized families and exported graphs.

use ekr_core::families::{
    above_half_family, frankl_family, half_selection_family, star_family, Family,
};
use ekr_core::graphs::{build_graph, write_dimacs, BuildOptions, GraphSpec};

#[test]
fn star_m3_k2_x1_json() {
    let family = star_family(3, 2, 1).unwrap();
    assert_eq!(
        family.to_json(),
        include_str!("golden/star_m3_k2_x1.json")
    );
}

#[test]
fn above_half_m3_k3_json_and_text() {
    let family = above_half_family(3, 3).unwrap();
    assert_eq!(
        family.to_json(),
        include_str!("golden/above_half_m3_k3.json")
    );
    assert_eq!(
        family.to_element_text(),
        include_str!("golden/above_half_m3_k3.txt")
    );
}

#[test]
fn half_selection_m4_k4_json() {
    let family = half_selection_family(4, 4).unwrap();
    assert_eq!(
        family.to_json(),
        include_str!("golden/half_selection_m4_k4.json")
    );
}

#[test]
fn golden_files_parse_back() {
    for text in [
        include_str!("golden/star_m3_k2_x1.json"),
        include_str!("golden/above_half_m3_k3.json"),
        include_str!("golden/half_selection_m4_k4.json"),
    ] {
        let family = Family::from_json(text).unwrap();
        assert_eq!(family.to_json(), text);
    }
}

#[test]
fn frankl_m7_k5_t2_pinned_members() {
    // The full 91-member family is pinned by size plus its first and last
    // members in canonical order.
    let family = frankl_family(7, 5, 2, &[1, 2, 3, 4]).unwrap();
    assert_eq!(family.len(), 91);
    assert_eq!(family.members()[0].to_string(), "1 1 1 2 3");
    assert_eq!(family.members()[90].to_string(), "2 3 4 7 7");
}

#[test]
fn dimacs_m321_golden() {
    let spec = GraphSpec::multiset(3, 2, 1).unwrap();
    let graph = build_graph(&spec, &BuildOptions::default()).unwrap();
    let mut buf = Vec::new();
    write_dimacs(&graph, &mut buf).unwrap();
    assert_eq!(
        String::from_utf8(buf).unwrap(),
        include_str!("golden/m321.col")
    );
}
