//! Replays the checked-in fuzz seeds on stable, without libFuzzer.

use std::fs;
use std::path::Path;

use probconn::*;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (
                path.display().to_string(),
                fs::read_to_string(&path).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn parse_seeds_never_panic() {
    let outcomes: Vec<bool> = seeds("parse_graph")
        .iter()
        .map(|(_, text)| parse_graph_file(text).is_ok())
        .collect();
    assert!(outcomes.contains(&true) && outcomes.contains(&false));
}

#[test]
fn roundtrip_seeds_survive_writing() {
    for (name, text) in seeds("graph_roundtrip") {
        let g = parse_graph_file(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(
            parse_graph_file(&write_graph_file(&g)).unwrap(),
            g,
            "{name}"
        );
    }
}

#[test]
fn analysis_seeds_satisfy_invariants() {
    for (name, text) in seeds("analyze_small") {
        let g = parse_graph_file(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let q = exact_connectivity(&g, 12).unwrap();
        let bounds = compute_bounds(&g.adjacency_matrix(), &q, 1e-12).unwrap();
        assert!(bounds.violations.is_empty(), "{name}");
        let s = spectral_report(&q, &g.support_components(), DEFAULT_SPECTRAL_TOLERANCE).unwrap();
        assert!(s.psd, "{name}");
        assert_eq!(q.positive_components(), g.support_components(), "{name}");
    }
}
