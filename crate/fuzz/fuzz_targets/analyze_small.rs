#![no_main]

use libfuzzer_sys::fuzz_target;
use probconn::*;

// Parsed graphs small enough to enumerate go through the exact engine and
// the invariants every connectivity matrix must satisfy.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(g) = parse_graph_file(text) else {
        return;
    };
    if g.n() > 8 || g.m() > 12 {
        return;
    }
    let q = exact_connectivity(&g, 12).unwrap();
    let bounds = compute_bounds(&g.adjacency_matrix(), &q, 1e-12).unwrap();
    assert!(bounds.violations.is_empty(), "{:?}", bounds.violations);

    let s = spectral_report(&q, &g.support_components(), DEFAULT_SPECTRAL_TOLERANCE).unwrap();
    assert!(s.psd);
    assert!(s.lambda_max >= 1.0 - 1e-9 && s.lambda_max <= g.n() as f64 + 1e-9);
    assert_eq!(q.positive_components(), g.support_components());

    let eig = sym_eig(q.matrix()).unwrap();
    let residual = eig
        .reconstruct()
        .map2(q.matrix(), |a, b| a - b)
        .frobenius_norm();
    assert!(residual <= 1e-9 * q.matrix().frobenius_norm());
});
