#![allow(dead_code)]

use qss::quantum::{Basis, BasisVector};

/// Assert a binomial count lies within five standard deviations of its
/// expectation. With p = 0 or 1 this degenerates to an exact equality check.
pub fn assert_within_5_sigma(observed: u64, trials: u64, p: f64, context: &str) {
    let mean = trials as f64 * p;
    let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
    let deviation = (observed as f64 - mean).abs();
    assert!(
        deviation <= 5.0 * sigma,
        "{context}: observed {observed} of {trials} (p={p}); \
         expected {mean:.1} +/- {:.1}",
        5.0 * sigma
    );
}

/// Every basis vector of length n, party 0 in the most significant position.
pub fn all_basis_vectors(n: usize) -> Vec<BasisVector> {
    (0..1usize << n)
        .map(|mask| {
            BasisVector::new(
                (0..n)
                    .map(|p| {
                        if mask >> (n - 1 - p) & 1 == 1 {
                            Basis::Y
                        } else {
                            Basis::X
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}
