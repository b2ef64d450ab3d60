//! Property tests for the structural invariants: the closed-form support law
//! against the dense expansion, normalization and repeatability of projective
//! measurement, sift semantics, and session replay determinism.

use proptest::prelude::*;
use qss::protocol::{classify_round, sift, Designation, RoundClass, RoundRecord};
use qss::quantum::{
    ghz_amplitude, index_to_outcomes, parity, Amplitude, Basis, BasisVector, Outcome, StateVector,
    NORM_TOLERANCE,
};
use qss::schemes::SchemeConfig;
use qss::session::{run_session, SessionConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn basis_strategy() -> impl Strategy<Value = Basis> {
    prop_oneof![Just(Basis::X), Just(Basis::Y)]
}

/// A random normalized n-qubit state.
fn state_strategy(n: usize) -> impl Strategy<Value = StateVector> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter_map("norm too small", move |parts| {
            let norm_sqr: f64 = parts.iter().map(|(re, im)| re * re + im * im).sum();
            if norm_sqr < 1e-3 {
                return None;
            }
            let scale = 1.0 / norm_sqr.sqrt();
            let amps = parts
                .into_iter()
                .map(|(re, im)| Amplitude::new(re * scale, im * scale))
                .collect();
            Some(StateVector::from_amplitudes(n, amps).expect("normalized by construction"))
        })
}

proptest! {
    #[test]
    fn ghz_amplitude_obeys_the_support_law_and_the_dense_expansion(
        n in 2usize..=6,
        mask in 0usize..64,
        idx in 0usize..64,
    ) {
        let mask = mask % (1 << n);
        let idx = idx % (1 << n);
        let bases = BasisVector::new(
            (0..n).map(|p| if mask >> p & 1 == 1 { Basis::Y } else { Basis::X }).collect(),
        );
        let outcomes = index_to_outcomes(idx, n);
        let amp = ghz_amplitude(n, &bases, &outcomes).unwrap();

        let m = bases.y_count();
        let expected_mag = if m % 2 == 1 {
            0.5f64.powf(n as f64 / 2.0)
        } else if parity(&outcomes).bit() as usize == (m / 2) % 2 {
            0.5f64.powf((n - 1) as f64 / 2.0)
        } else {
            0.0
        };
        prop_assert!((amp.norm() - expected_mag).abs() < 1e-12);

        let dense = StateVector::ghz(n).unwrap().coefficients_in(&bases).unwrap();
        prop_assert!((dense[idx] - amp).norm() < 1e-12);
    }

    #[test]
    fn measurement_preserves_norm_and_repeats(
        state in state_strategy(3),
        party in 0usize..3,
        basis in basis_strategy(),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let (outcome, post) = state.measure_qubit(party, basis, &mut rng).unwrap();
        prop_assert!((post.norm_sqr() - 1.0).abs() < NORM_TOLERANCE);

        // Measuring again in the same basis is deterministic and idempotent.
        let (again, post2) = post.measure_qubit(party, basis, &mut rng).unwrap();
        prop_assert_eq!(outcome, again);
        for (a, b) in post.amplitudes().iter().zip(post2.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn sift_is_an_order_preserving_filter(masks in proptest::collection::vec(0usize..8, 0..40)) {
        let records: Vec<RoundRecord> = masks
            .iter()
            .enumerate()
            .map(|(id, &mask)| {
                let bases = BasisVector::new(
                    (0..3).map(|p| if mask >> p & 1 == 1 { Basis::Y } else { Basis::X }).collect(),
                );
                let class = classify_round(&bases);
                RoundRecord {
                    round_id: id as u64,
                    bases,
                    outcomes: vec![Outcome::Zero; 3],
                    class,
                    designation: if class.is_valid() {
                        Designation::KeyBit
                    } else {
                        Designation::Discarded
                    },
                }
            })
            .collect();
        let expected: Vec<u64> = records
            .iter()
            .filter(|r| r.class != RoundClass::OddY)
            .map(|r| r.round_id)
            .collect();
        let sifted = sift(records);
        prop_assert_eq!(sifted.iter().map(|r| r.round_id).collect::<Vec<_>>(), expected);
        prop_assert!(sifted.iter().all(|r| r.designation == Designation::KeyBit));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sessions_replay_bit_identically(
        n in 2usize..=5,
        rounds in 1u64..300,
        seed in any::<u64>(),
        check_fraction in 0.0f64..=1.0,
        scheme_pick in 0usize..3,
        with_eve in any::<bool>(),
    ) {
        let scheme = match scheme_pick {
            0 => SchemeConfig::Symmetric,
            1 => SchemeConfig::Favored { epsilon: 0.2 },
            _ => SchemeConfig::Encrypted { key_length: 32 },
        };
        let mut config = SessionConfig::new(n, rounds, scheme);
        config.seed = seed;
        config.check_fraction = check_fraction;
        if with_eve {
            config.eve = Some(qss::adversary::EveModel::AllPartiesRandomBasis);
        }
        let a = run_session(&config).unwrap();
        let b = run_session(&config).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());
        prop_assert_eq!(a.class_counts.total(), rounds);
    }
}
