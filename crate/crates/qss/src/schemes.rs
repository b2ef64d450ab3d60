//! Basis-selection strategies and control-key material.
//!
//! Three ways for the parties to pick their measuring bases each round:
//!
//! * **Symmetric** — every party flips a fair coin between σx and σy, so half
//!   of all rounds end up with an odd σy count and are wasted.
//! * **Favored** — every party picks σy only with a small probability ε. The
//!   all-σx rounds (fraction (1−ε)^n) become key bits directly; the rare
//!   even-σy rounds containing at least one σy choice are sacrificed for
//!   eavesdropping checks.
//! * **Encrypted** — each party owns a secret per-round basis sequence (the
//!   control key, reused cyclically) arranged so that every round has an even
//!   σy count: no round is ever discarded.
//!
//! Control keys are bootstrapped on-site from an ordinary symmetric run: each
//! retained round contributes one key entry per party, a participant's entry
//! being σy exactly when their retained bit is 1, while Alice's entry follows
//! [`derive_alice_control_entry`] (inverted on `m ≡ 2 mod 4` rounds, where
//! the total outcome parity is odd). That inversion is what makes every key
//! column carry an even σy count.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protocol::{classify_round, reconstruct_secret_bit, RoundClass};
use crate::quantum::{ghz_sample_outcomes, Basis, BasisVector, Outcome, MIN_QUBITS};

/// Default σy probability for the favored scheme.
pub const DEFAULT_EPSILON: f64 = 0.05;
/// Default control-key length for the encrypted scheme.
pub const DEFAULT_KEY_LENGTH: usize = 1000;
/// Version tag of the control-key JSON document.
pub const CONTROL_KEY_SCHEMA_VERSION: u32 = 1;

/// Which basis-selection strategy a session runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SchemeConfig {
    Symmetric,
    Favored { epsilon: f64 },
    Encrypted { key_length: usize },
}

impl SchemeConfig {
    pub fn name(&self) -> &'static str {
        match self {
            SchemeConfig::Symmetric => "symmetric",
            SchemeConfig::Favored { .. } => "favored",
            SchemeConfig::Encrypted { .. } => "encrypted",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SchemeConfig::Symmetric => Ok(()),
            SchemeConfig::Favored { epsilon } => {
                if epsilon > 0.0 && epsilon <= 0.5 {
                    Ok(())
                } else {
                    Err(Error::Config(format!(
                        "favored-scheme epsilon must lie in (0, 0.5], got {epsilon}"
                    )))
                }
            }
            SchemeConfig::Encrypted { key_length } => {
                if key_length >= 1 {
                    Ok(())
                } else {
                    Err(Error::Config("control key length must be at least 1".into()))
                }
            }
        }
    }
}

/// Every party flips a fair coin between σx and σy.
pub fn choose_bases_symmetric(n: usize, rng: &mut impl Rng) -> BasisVector {
    BasisVector::new(
        (0..n)
            .map(|_| if rng.random_bool(0.5) { Basis::Y } else { Basis::X })
            .collect(),
    )
}

/// Every party picks σy independently with probability `epsilon`, σx
/// otherwise. `epsilon` must lie in (0, 0.5]; at 0.5 this coincides with the
/// symmetric scheme.
pub fn choose_bases_favored(n: usize, epsilon: f64, rng: &mut impl Rng) -> Result<BasisVector> {
    SchemeConfig::Favored { epsilon }.validate()?;
    Ok(BasisVector::new(
        (0..n)
            .map(|_| if rng.random_bool(epsilon) { Basis::Y } else { Basis::X })
            .collect(),
    ))
}

/// Alice's control-key entry for a bootstrap round: σx on a 0 and σy on a 1
/// when the round's σy count is ≡ 0 (mod 4), and the opposite when it is
/// ≡ 2 (mod 4). Odd rounds never reach the bootstrap.
pub fn derive_alice_control_entry(alice_outcome: Outcome, class: RoundClass) -> Result<Basis> {
    match (class, alice_outcome) {
        (RoundClass::OddY, _) => Err(Error::OddRound),
        (RoundClass::ZeroMod4, Outcome::Zero) => Ok(Basis::X),
        (RoundClass::ZeroMod4, Outcome::One) => Ok(Basis::Y),
        (RoundClass::TwoMod4, Outcome::Zero) => Ok(Basis::Y),
        (RoundClass::TwoMod4, Outcome::One) => Ok(Basis::X),
    }
}

/// Per-party basis sequences for the encrypted scheme.
///
/// `participant_keys[p]` belongs to party p+2 (parties are numbered from 1,
/// Alice first). Every index across all n sequences has an even σy count, so
/// the basis vector it produces is always a valid round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlKeySet {
    n: usize,
    participant_keys: Vec<Vec<Basis>>,
    alice_key: Vec<Basis>,
}

#[derive(Serialize, Deserialize)]
struct ControlKeyFile {
    version: u32,
    n: usize,
    key_length: usize,
    participant_keys: Vec<Vec<Basis>>,
    alice_key: Vec<Basis>,
}

impl ControlKeySet {
    /// Assemble a key set from explicit sequences, enforcing the even-column
    /// invariant.
    pub fn from_parts(
        alice_key: Vec<Basis>,
        participant_keys: Vec<Vec<Basis>>,
    ) -> Result<ControlKeySet> {
        let n = participant_keys.len() + 1;
        if n < MIN_QUBITS {
            return Err(Error::ControlKey(
                "need at least one participant key sequence".into(),
            ));
        }
        let key_length = alice_key.len();
        if key_length == 0 {
            return Err(Error::ControlKey("control keys must be non-empty".into()));
        }
        if participant_keys.iter().any(|k| k.len() != key_length) {
            return Err(Error::ControlKey(
                "all control key sequences must share one length".into(),
            ));
        }
        let set = ControlKeySet {
            n,
            participant_keys,
            alice_key,
        };
        for index in 0..key_length {
            let y_count = set.column_y_count(index);
            if y_count % 2 == 1 {
                return Err(Error::ControlKey(format!(
                    "index {index} has an odd σy count ({y_count})"
                )));
            }
        }
        Ok(set)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn key_length(&self) -> usize {
        self.alice_key.len()
    }

    pub fn alice_key(&self) -> &[Basis] {
        &self.alice_key
    }

    pub fn participant_keys(&self) -> &[Vec<Basis>] {
        &self.participant_keys
    }

    fn column_y_count(&self, index: usize) -> usize {
        let alice = (self.alice_key[index] == Basis::Y) as usize;
        alice
            + self
                .participant_keys
                .iter()
                .filter(|k| k[index] == Basis::Y)
                .count()
    }

    /// Serialize to the versioned JSON document.
    pub fn to_json(&self) -> String {
        let file = ControlKeyFile {
            version: CONTROL_KEY_SCHEMA_VERSION,
            n: self.n,
            key_length: self.key_length(),
            participant_keys: self.participant_keys.clone(),
            alice_key: self.alice_key.clone(),
        };
        serde_json::to_string_pretty(&file).expect("control key serialization cannot fail")
    }

    /// Parse and validate the versioned JSON document.
    pub fn from_json(text: &str) -> Result<ControlKeySet> {
        let file: ControlKeyFile =
            serde_json::from_str(text).map_err(|e| Error::ControlKey(e.to_string()))?;
        if file.version != CONTROL_KEY_SCHEMA_VERSION {
            return Err(Error::ControlKey(format!(
                "unsupported control key version {}",
                file.version
            )));
        }
        let set = ControlKeySet::from_parts(file.alice_key, file.participant_keys)?;
        if set.n != file.n || set.key_length() != file.key_length {
            return Err(Error::ControlKey(
                "declared n/key_length do not match the key material".into(),
            ));
        }
        Ok(set)
    }
}

/// Counters from a control-key bootstrap run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BootstrapStats {
    /// Symmetric rounds consumed, including the discarded odd ones.
    pub rounds_run: u64,
    /// Valid rounds disclosed for checking instead of being kept as key
    /// entries (only when a check fraction is requested).
    pub check_samples: u64,
    /// Disclosed rounds whose reconstruction disagreed with Alice's bit.
    pub check_errors: u64,
}

/// Generate control keys by running the symmetric scheme until `key_length`
/// valid rounds have been retained.
pub fn bootstrap_control_keys(
    n: usize,
    key_length: usize,
    rng: &mut impl Rng,
) -> Result<ControlKeySet> {
    bootstrap_control_keys_checked(n, key_length, 0.0, rng).map(|(keys, _)| keys)
}

/// [`bootstrap_control_keys`] with an optional eavesdropping check folded in:
/// each valid round is disclosed for checking with probability
/// `check_fraction` (and then consumed) instead of becoming a key entry.
///
/// No interception is modeled during key generation, so `check_errors` stays
/// zero on a clean channel; the knob exists so a bootstrap can budget rounds
/// for verification the same way a live session does.
pub fn bootstrap_control_keys_checked(
    n: usize,
    key_length: usize,
    check_fraction: f64,
    rng: &mut impl Rng,
) -> Result<(ControlKeySet, BootstrapStats)> {
    if n < MIN_QUBITS {
        return Err(Error::QubitCount(n));
    }
    if key_length == 0 {
        return Err(Error::Config("control key length must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&check_fraction) {
        return Err(Error::Config(format!(
            "bootstrap check fraction must lie in [0, 1], got {check_fraction}"
        )));
    }

    let mut stats = BootstrapStats::default();
    let mut alice_key = Vec::with_capacity(key_length);
    let mut participant_keys = vec![Vec::with_capacity(key_length); n - 1];

    while alice_key.len() < key_length {
        stats.rounds_run += 1;
        let bases = choose_bases_symmetric(n, rng);
        let class = classify_round(&bases);
        if !class.is_valid() {
            continue;
        }
        let outcomes = ghz_sample_outcomes(n, &bases, rng)?;
        if check_fraction > 0.0 && rng.random_bool(check_fraction) {
            stats.check_samples += 1;
            if reconstruct_secret_bit(&outcomes[1..], class)? != outcomes[0] {
                stats.check_errors += 1;
            }
            continue;
        }
        alice_key.push(derive_alice_control_entry(outcomes[0], class)?);
        for (p, key) in participant_keys.iter_mut().enumerate() {
            key.push(if outcomes[p + 1].is_one() { Basis::Y } else { Basis::X });
        }
    }

    let keys = ControlKeySet::from_parts(alice_key, participant_keys)?;
    Ok((keys, stats))
}

/// The basis vector prescribed by the control keys for a given round,
/// reusing the sequences cyclically.
pub fn choose_bases_encrypted(keys: &ControlKeySet, round_index: u64) -> BasisVector {
    let index = (round_index % keys.key_length() as u64) as usize;
    let mut bases = Vec::with_capacity(keys.n());
    bases.push(keys.alice_key()[index]);
    for key in keys.participant_keys() {
        bases.push(key[index]);
    }
    BasisVector::new(bases)
}
