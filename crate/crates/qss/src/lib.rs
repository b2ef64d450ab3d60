//! Simulation of n-party quantum secret sharing over GHZ states.
//!
//! A dealer (Alice) distributes the qubits of a GHZ multiplet to n−1
//! participants; everyone measures in a randomly chosen σx or σy basis, rounds
//! with an odd σy count are sifted out, and on the surviving rounds the XOR of
//! the participants' bits (plus 1 when the σy count is ≡ 2 mod 4) equals
//! Alice's bit, which becomes the shared secret. Only the full coalition of
//! participants can reconstruct it.
//!
//! The crate provides:
//!
//! * [`quantum`] — dense state vectors, projective σx/σy measurement, and a
//!   closed-form amplitude oracle used as an independent correctness
//!   reference for the sampler.
//! * [`protocol`] — round classification, parity reconstruction, sifting, and
//!   check-round error estimation.
//! * [`schemes`] — the three basis-selection strategies: symmetric coin
//!   flips, favored (σx-biased) choices, and control-key-encrypted choices
//!   that make every round usable, including the on-site key bootstrap.
//! * [`adversary`] — intercept-resend eavesdropper models with closed-form
//!   error-rate predictions.
//! * [`session`] — a seedable end-to-end harness producing JSON reports and
//!   CSV round logs; identical configurations replay bit-identically.
//!
//! ```
//! use qss::schemes::SchemeConfig;
//! use qss::session::{run_session, SessionConfig};
//!
//! let mut config = SessionConfig::new(3, 2_000, SchemeConfig::Symmetric);
//! config.seed = 7;
//! let report = run_session(&config).unwrap();
//! assert_eq!(report.check_errors, 0);
//! assert!((report.valid_fraction - 0.5).abs() < 0.05);
//! ```

pub mod adversary;
pub mod error;
pub mod protocol;
pub mod quantum;
pub mod rng;
pub mod schemes;
pub mod session;

pub use error::{Error, Result};
pub use quantum::{Basis, BasisVector, Outcome, StateVector};
