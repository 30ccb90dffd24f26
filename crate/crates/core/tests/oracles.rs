//! The oracles themselves, checked on hand-computed cases.

mod common;

#[test]
fn bareiss_small_matrices() {
    assert_eq!(common::bareiss(vec![]), 1);
    assert_eq!(common::bareiss(vec![vec![7]]), 7);
    assert_eq!(common::bareiss(vec![vec![0, 1], vec![1, 0]]), -1);
    assert_eq!(common::bareiss(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]), 4);
    assert_eq!(common::bareiss(vec![vec![1, 2], vec![2, 4]]), 0);
}

#[test]
fn goeritz_known_links() {
    // trefoil, figure-eight, Hopf link, Whitehead link, (3,2,3)
    assert_eq!(common::goeritz_determinant(&[3]), 3);
    assert_eq!(common::goeritz_determinant(&[2, 1, 1]), 5);
    assert_eq!(common::goeritz_determinant(&[-1, -2, 2]), 5);
    assert_eq!(common::goeritz_determinant(&[2]), 2);
    assert_eq!(common::goeritz_determinant(&[2, 1, 2]), 8);
    assert_eq!(common::goeritz_determinant(&[2, 2, 2]), 12);
    assert_eq!(common::goeritz_determinant(&[3, 2, 3]), 24);
    assert_eq!(common::goeritz_determinant(&[1, -2, 1]), 0);
}

#[test]
fn strand_tracing_known_links() {
    assert_eq!(common::plat_components(&[3]), 1);
    assert_eq!(common::plat_components(&[2]), 2);
    assert_eq!(common::plat_components(&[2, 2, 2]), 2);
    assert_eq!(common::plat_components(&[3, 2, 3]), 2);
    assert_eq!(common::plat_components(&[-1, -2, 2]), 1);
}

#[test]
fn brute_orbits() {
    assert_eq!(common::orbit_brute(5, 2, false).into_iter().collect::<Vec<_>>(), [2, 3]);
    assert_eq!(common::orbit_brute(7, 2, false).into_iter().collect::<Vec<_>>(), [2, 4]);
    assert_eq!(common::orbit_brute(7, 2, true).into_iter().collect::<Vec<_>>(), [2, 3, 4, 5]);
    assert_eq!(common::orbit_brute(8, 3, false).into_iter().collect::<Vec<_>>(), [3]);
}

#[test]
fn lobachevsky_values() {
    assert!(common::lobachevsky(0.0, 1000).abs() < 1e-15);
    // Catalan's constant is Λ(π/4) · 2
    let catalan = 0.915_965_594_177_219;
    assert!((2.0 * common::lobachevsky(std::f64::consts::FRAC_PI_4, 2_000_001) - catalan).abs() < 1e-12);
}

#[test]
fn corpus_shape() {
    let corpus = common::corpus();
    assert_eq!(corpus.len(), common::CORPUS_SIZE);
    assert_eq!(corpus, common::corpus());
    for w in &corpus {
        assert!((1..=6).contains(&w.m()));
        assert!(w.all_b_even());
        assert!(w.entries().iter().all(|e| (2..=10).contains(&e.abs())));
    }
}
