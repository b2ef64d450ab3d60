//! Round classification, parity reconstruction, sifting, and check-round
//! error estimation: the pure logic of the n-party secret sharing protocol.
//!
//! A round is classified by the number `m` of parties that measured in the σy
//! basis. Odd `m` carries no correlation and is discarded. On the survivors
//! the participants' bits determine Alice's bit exactly:
//!
//! * `m ≡ 2 (mod 4)`: Alice's bit = i₂ ⊕ … ⊕ iₙ ⊕ 1
//! * `m ≡ 0 (mod 4)`: Alice's bit = i₂ ⊕ … ⊕ iₙ
//!
//! Alice announces only the class, never the σy count itself; the class enum
//! is all the message carries.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{parity, BasisVector, Outcome};

/// Category of a round's σy count: odd (invalid), ≡ 2 (mod 4), or ≡ 0 (mod 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoundClass {
    OddY,
    TwoMod4,
    ZeroMod4,
}

impl RoundClass {
    /// Valid rounds are the even-σy classes.
    pub fn is_valid(self) -> bool {
        self != RoundClass::OddY
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RoundClass::OddY => "odd_y",
            RoundClass::TwoMod4 => "two_mod4",
            RoundClass::ZeroMod4 => "zero_mod4",
        }
    }
}

impl fmt::Display for RoundClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a round is used for after sifting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Designation {
    Discarded,
    CheckBit,
    KeyBit,
}

impl Designation {
    pub fn as_str(self) -> &'static str {
        match self {
            Designation::Discarded => "discarded",
            Designation::CheckBit => "check_bit",
            Designation::KeyBit => "key_bit",
        }
    }
}

impl fmt::Display for Designation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything recorded about one GHZ round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord {
    pub round_id: u64,
    pub bases: BasisVector,
    pub outcomes: Vec<Outcome>,
    pub class: RoundClass,
    pub designation: Designation,
}

impl RoundRecord {
    /// Alice's measured bit (party 1).
    pub fn alice_outcome(&self) -> Outcome {
        self.outcomes[0]
    }

    /// The participants' bits (parties 2..n).
    pub fn participant_outcomes(&self) -> &[Outcome] {
        &self.outcomes[1..]
    }
}

/// Classify a round by its σy count.
pub fn classify_round(bases: &BasisVector) -> RoundClass {
    let m = bases.y_count();
    if m % 2 == 1 {
        RoundClass::OddY
    } else if m % 4 == 2 {
        RoundClass::TwoMod4
    } else {
        RoundClass::ZeroMod4
    }
}

/// Reconstruct Alice's bit from the n−1 participants' bits.
///
/// Rejects odd-σy rounds: their outcomes leave Alice's bit undetermined.
pub fn reconstruct_secret_bit(
    participant_outcomes: &[Outcome],
    class: RoundClass,
) -> Result<Outcome> {
    match class {
        RoundClass::OddY => Err(Error::OddRound),
        RoundClass::TwoMod4 => Ok(parity(participant_outcomes) ^ Outcome::One),
        RoundClass::ZeroMod4 => Ok(parity(participant_outcomes)),
    }
}

/// Drop the odd-σy rounds, preserving order and designations.
pub fn sift(records: Vec<RoundRecord>) -> Vec<RoundRecord> {
    records
        .into_iter()
        .filter(|r| r.class.is_valid())
        .collect()
}

/// Outcome of comparing reconstructed bits against Alice's on check rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrorEstimate {
    pub errors: u64,
    pub samples: u64,
}

impl ErrorEstimate {
    /// Error fraction; an empty sample is reported as 0 together with
    /// [`ErrorEstimate::insufficient`].
    pub fn rate(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.errors as f64 / self.samples as f64
        }
    }

    /// True when there were no check samples to estimate from.
    pub fn insufficient(&self) -> bool {
        self.samples == 0
    }
}

/// Fraction of check rounds where the participants' reconstruction disagrees
/// with Alice's measured bit. Every record must be a valid (even-σy) round
/// and carry all n outcomes.
pub fn estimate_error_rate(check_records: &[RoundRecord]) -> Result<ErrorEstimate> {
    let mut errors = 0u64;
    for record in check_records {
        let reconstructed = reconstruct_secret_bit(record.participant_outcomes(), record.class)?;
        if reconstructed != record.alice_outcome() {
            errors += 1;
        }
    }
    Ok(ErrorEstimate {
        errors,
        samples: check_records.len() as u64,
    })
}
