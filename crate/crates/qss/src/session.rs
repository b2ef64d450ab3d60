//! End-to-end session orchestration: state preparation, optional
//! interception, basis choice, measurement, classical announcements, sifting,
//! check-bit disclosure, error estimation, and aggregate reporting.
//!
//! # Determinism
//!
//! Every stochastic step draws from a substream derived from the master seed
//! (see [`crate::rng`]): control-key bootstrap uses stream
//! [`crate::rng::STREAM_BOOTSTRAP`], and round `r` uses stream
//! [`crate::rng::STREAM_ROUND`] with index `r`, consuming draws in a fixed
//! order (interception, basis choice, measurements, check designation).
//! Rounds are therefore independent given the seed, may be replayed or
//! reordered, and two runs of the same [`SessionConfig`] serialize to
//! byte-identical reports.
//!
//! # Classical messages
//!
//! Announcements are modeled as explicit records so an audit log can confirm
//! what crosses the public channel. [`Announcement::ClassAnnouncement`]
//! carries only the [`RoundClass`] enum — the exact σy count is never sent.
//!
//! # Large registers
//!
//! Rounds for up to [`MAX_QUBITS`] parties run on the dense state vector;
//! beyond that, sessions without an eavesdropper sample outcomes directly
//! from the closed-form GHZ distribution.

use std::io::{self, Write};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::adversary::{intercept, EveModel, EveRecord};
use crate::error::{Error, Result};
use crate::protocol::{
    classify_round, estimate_error_rate, reconstruct_secret_bit, Designation, RoundClass,
    RoundRecord,
};
use crate::quantum::{
    ghz_sample_outcomes, outcomes_string, Basis, Outcome, StateVector, MAX_QUBITS, MIN_QUBITS,
};
use crate::rng::{substream, STREAM_BOOTSTRAP, STREAM_ROUND};
use crate::schemes::{
    bootstrap_control_keys, choose_bases_encrypted, choose_bases_favored, choose_bases_symmetric,
    SchemeConfig,
};

/// Version tag of the session report JSON document.
pub const REPORT_SCHEMA_VERSION: u32 = 1;
/// Default fraction of valid rounds sacrificed for eavesdropping checks.
pub const DEFAULT_CHECK_FRACTION: f64 = 0.5;
/// Default error-rate threshold above which a session is declared
/// compromised. An artifact convention borrowed from key-distribution
/// practice, not a derived bound; tune it per deployment.
pub const DEFAULT_ERROR_THRESHOLD: f64 = 0.11;

fn default_check_fraction() -> f64 {
    DEFAULT_CHECK_FRACTION
}

fn default_error_threshold() -> f64 {
    DEFAULT_ERROR_THRESHOLD
}

/// Full description of a session; the JSON config file uses this schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    /// Total party count, Alice included.
    pub n: usize,
    /// GHZ multiplets to distribute.
    pub rounds: u64,
    pub scheme: SchemeConfig,
    #[serde(default)]
    pub eve: Option<EveModel>,
    #[serde(default = "default_check_fraction")]
    pub check_fraction: f64,
    #[serde(default = "default_error_threshold")]
    pub error_threshold: f64,
    #[serde(default)]
    pub seed: u64,
}

impl SessionConfig {
    /// A config with the default check fraction, threshold, seed 0 and no
    /// eavesdropper.
    pub fn new(n: usize, rounds: u64, scheme: SchemeConfig) -> SessionConfig {
        SessionConfig {
            n,
            rounds,
            scheme,
            eve: None,
            check_fraction: DEFAULT_CHECK_FRACTION,
            error_threshold: DEFAULT_ERROR_THRESHOLD,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < MIN_QUBITS {
            return Err(Error::Config(format!(
                "need at least {MIN_QUBITS} parties, got {}",
                self.n
            )));
        }
        if self.rounds == 0 {
            return Err(Error::Config("rounds must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.check_fraction) {
            return Err(Error::Config(format!(
                "check fraction must lie in [0, 1], got {}",
                self.check_fraction
            )));
        }
        if !(0.0..=1.0).contains(&self.error_threshold) {
            return Err(Error::Config(format!(
                "error threshold must lie in [0, 1], got {}",
                self.error_threshold
            )));
        }
        self.scheme.validate()?;
        if let Some(eve) = &self.eve {
            eve.validate(self.n)?;
            if self.n > MAX_QUBITS {
                return Err(Error::Config(format!(
                    "interception needs the dense state vector, so n must stay <= {MAX_QUBITS}"
                )));
            }
        }
        Ok(())
    }
}

/// Session outcome from Alice's point of view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Clean,
    Compromised,
    InsufficientSamples,
}

/// How many rounds fell into each σy-count class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub odd_y: u64,
    pub two_mod4: u64,
    pub zero_mod4: u64,
}

impl ClassCounts {
    pub fn valid(&self) -> u64 {
        self.two_mod4 + self.zero_mod4
    }

    pub fn total(&self) -> u64 {
        self.odd_y + self.valid()
    }

    fn bump(&mut self, class: RoundClass) {
        match class {
            RoundClass::OddY => self.odd_y += 1,
            RoundClass::TwoMod4 => self.two_mod4 += 1,
            RoundClass::ZeroMod4 => self.zero_mod4 += 1,
        }
    }
}

/// Identity and class of one key round; shares are aligned with this list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyRound {
    pub round_id: u64,
    pub class: RoundClass,
}

/// One participant's retained key-round bits, as a '0'/'1' string aligned
/// with the report's `key_rounds`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParticipantShare {
    /// Party number, 2..=n.
    pub party: usize,
    pub bits: String,
}

/// Aggregate statistics of a finished session. Serializes to versioned JSON
/// with a stable field order; the seed travels inside `config`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionReport {
    pub schema_version: u32,
    pub config: SessionConfig,
    pub class_counts: ClassCounts,
    /// (two_mod4 + zero_mod4) / rounds.
    pub valid_fraction: f64,
    pub key_rounds: Vec<KeyRound>,
    /// Alice's secret bits on the key rounds.
    pub key_bits: String,
    /// Each participant's share material for the same rounds.
    pub shares: Vec<ParticipantShare>,
    pub check_samples: u64,
    pub check_errors: u64,
    pub check_error_rate: f64,
    pub verdict: Verdict,
    /// Fraction of valid rounds whose class-adjusted parity of Eve's own
    /// observations equals Alice's bit; present only when Eve is configured.
    pub eve_knowledge_fraction: Option<f64>,
}

impl SessionReport {
    /// Canonical JSON rendering; identical configs yield identical bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<SessionReport> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("bad report JSON: {e}")))
    }
}

/// One classical message on the public channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Announcement {
    /// A participant tells Alice which basis they used.
    BasisReveal {
        round_id: u64,
        party: usize,
        basis: Basis,
    },
    /// Alice announces the round class — the enum is the entire payload.
    ClassAnnouncement { round_id: u64, class: RoundClass },
    /// A participant discloses a check-round bit.
    CheckDisclosure {
        round_id: u64,
        party: usize,
        outcome: Outcome,
    },
}

/// Hook for streaming per-round data out of a running session.
pub trait SessionObserver {
    fn on_announcement(&mut self, _announcement: &Announcement) {}
    fn on_record(&mut self, _record: &RoundRecord) {}
}

/// Observer that ignores everything.
pub struct NoObserver;

impl SessionObserver for NoObserver {}

/// Observer that accumulates records and announcements in memory.
#[derive(Default)]
pub struct Collector {
    pub records: Vec<RoundRecord>,
    pub announcements: Vec<Announcement>,
}

impl SessionObserver for Collector {
    fn on_announcement(&mut self, announcement: &Announcement) {
        self.announcements.push(*announcement);
    }

    fn on_record(&mut self, record: &RoundRecord) {
        self.records.push(record.clone());
    }
}

/// Header of the CSV round log.
pub const ROUND_LOG_HEADER: &str = "round_id,bases,outcomes,class,designation";

/// Render one round as a CSV row.
pub fn round_log_row(record: &RoundRecord) -> String {
    format!(
        "{},{},{},{},{}",
        record.round_id,
        record.bases,
        outcomes_string(&record.outcomes),
        record.class,
        record.designation
    )
}

/// Observer that streams the round log to a writer as the session runs.
pub struct CsvRoundLogger<W: Write> {
    writer: W,
    error: Option<io::Error>,
}

impl<W: Write> CsvRoundLogger<W> {
    pub fn new(mut writer: W) -> io::Result<CsvRoundLogger<W>> {
        writeln!(writer, "{ROUND_LOG_HEADER}")?;
        Ok(CsvRoundLogger {
            writer,
            error: None,
        })
    }

    /// Flush and surface any write error hit while observing.
    pub fn finish(mut self) -> io::Result<W> {
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        self.writer.flush()?;
        Ok(self.writer)
    }
}

impl<W: Write> SessionObserver for CsvRoundLogger<W> {
    fn on_record(&mut self, record: &RoundRecord) {
        if self.error.is_some() {
            return;
        }
        if let Err(e) = writeln!(self.writer, "{}", round_log_row(record)) {
            self.error = Some(e);
        }
    }
}

/// Render a full round log (header plus one row per record).
pub fn write_round_log<W: Write>(mut writer: W, records: &[RoundRecord]) -> io::Result<()> {
    writeln!(writer, "{ROUND_LOG_HEADER}")?;
    for record in records {
        writeln!(writer, "{}", round_log_row(record))?;
    }
    Ok(())
}

/// Run a session and return the aggregate report.
pub fn run_session(config: &SessionConfig) -> Result<SessionReport> {
    run_session_observed(config, &mut NoObserver)
}

/// [`run_session`] with a streaming observer for round records and classical
/// announcements.
pub fn run_session_observed(
    config: &SessionConfig,
    observer: &mut dyn SessionObserver,
) -> Result<SessionReport> {
    config.validate()?;
    let n = config.n;

    let keys = match config.scheme {
        SchemeConfig::Encrypted { key_length } => Some(bootstrap_control_keys(
            n,
            key_length,
            &mut substream(config.seed, STREAM_BOOTSTRAP, 0),
        )?),
        _ => None,
    };

    let mut counts = ClassCounts::default();
    let mut key_rounds = Vec::new();
    let mut key_bits = String::new();
    let mut share_bits = vec![String::new(); n - 1];
    let mut check_records: Vec<RoundRecord> = Vec::new();
    let mut eve_hits = 0u64;
    let mut eve_valid = 0u64;

    for round_id in 0..config.rounds {
        let mut rng = substream(config.seed, STREAM_ROUND, round_id);

        // Interception happens on the freshly prepared state, before any
        // legitimate measurement; only dense registers support it.
        let (state, eve_record): (Option<StateVector>, Option<EveRecord>) = if n <= MAX_QUBITS {
            let ghz = StateVector::ghz(n)?;
            match &config.eve {
                Some(model) => {
                    let (post, record) = intercept(&ghz, model, &mut rng)?;
                    (Some(post), Some(record))
                }
                None => (Some(ghz), None),
            }
        } else {
            (None, None)
        };

        let bases = match &config.scheme {
            SchemeConfig::Symmetric => choose_bases_symmetric(n, &mut rng),
            SchemeConfig::Favored { epsilon } => choose_bases_favored(n, *epsilon, &mut rng)?,
            SchemeConfig::Encrypted { .. } => {
                choose_bases_encrypted(keys.as_ref().expect("keys exist"), round_id)
            }
        };
        for party in 2..=n {
            observer.on_announcement(&Announcement::BasisReveal {
                round_id,
                party,
                basis: bases[party - 1],
            });
        }

        let outcomes = match &state {
            Some(state) => state.measure_all(&bases, &mut rng)?,
            None => ghz_sample_outcomes(n, &bases, &mut rng)?,
        };

        let class = classify_round(&bases);
        observer.on_announcement(&Announcement::ClassAnnouncement { round_id, class });
        counts.bump(class);

        let designation = if !class.is_valid() {
            Designation::Discarded
        } else {
            match &config.scheme {
                // Refined analysis: all-σx rounds are key material, the rare
                // even-σy rounds with at least one σy are all checked.
                SchemeConfig::Favored { .. } => {
                    if bases.y_count() == 0 {
                        Designation::KeyBit
                    } else {
                        Designation::CheckBit
                    }
                }
                _ => {
                    if rng.random_bool(config.check_fraction) {
                        Designation::CheckBit
                    } else {
                        Designation::KeyBit
                    }
                }
            }
        };

        if class.is_valid() {
            if let Some(record) = &eve_record {
                eve_valid += 1;
                if record.parity_guess(class)? == outcomes[0] {
                    eve_hits += 1;
                }
            }
        }

        match designation {
            Designation::KeyBit => {
                key_rounds.push(KeyRound { round_id, class });
                key_bits.push(outcomes[0].as_char());
                for (p, bits) in share_bits.iter_mut().enumerate() {
                    bits.push(outcomes[p + 1].as_char());
                }
            }
            Designation::CheckBit => {
                for party in 2..=n {
                    observer.on_announcement(&Announcement::CheckDisclosure {
                        round_id,
                        party,
                        outcome: outcomes[party - 1],
                    });
                }
            }
            Designation::Discarded => {}
        }

        let record = RoundRecord {
            round_id,
            bases,
            outcomes,
            class,
            designation,
        };
        if record.designation == Designation::CheckBit {
            check_records.push(record.clone());
        }
        observer.on_record(&record);
    }

    let estimate = estimate_error_rate(&check_records)?;
    let verdict = if estimate.insufficient() {
        Verdict::InsufficientSamples
    } else if estimate.rate() > config.error_threshold {
        Verdict::Compromised
    } else {
        Verdict::Clean
    };

    let shares = share_bits
        .into_iter()
        .enumerate()
        .map(|(p, bits)| ParticipantShare { party: p + 2, bits })
        .collect();

    Ok(SessionReport {
        schema_version: REPORT_SCHEMA_VERSION,
        config: config.clone(),
        class_counts: counts,
        valid_fraction: counts.valid() as f64 / config.rounds as f64,
        key_rounds,
        key_bits,
        shares,
        check_samples: estimate.samples,
        check_errors: estimate.errors,
        check_error_rate: estimate.rate(),
        verdict,
        eve_knowledge_fraction: if config.eve.is_some() {
            Some(if eve_valid == 0 {
                0.0
            } else {
                eve_hits as f64 / eve_valid as f64
            })
        } else {
            None
        },
    })
}

/// Reconstruct Alice's secret from the participants' shares.
///
/// Refuses unless every party 2..=n contributes exactly one share of the
/// right length — by design, partial coalitions cannot reconstruct anything.
pub fn reconstruct_shared_secret(
    report: &SessionReport,
    shares: &[ParticipantShare],
) -> Result<String> {
    let n = report.config.n;
    let mut by_party: Vec<Option<&ParticipantShare>> = vec![None; n - 1];
    for share in shares {
        if !(2..=n).contains(&share.party) {
            return Err(Error::InvalidShare(format!(
                "party {} is not a participant of this {n}-party session",
                share.party
            )));
        }
        if by_party[share.party - 2].is_some() {
            return Err(Error::InvalidShare(format!(
                "duplicate share for party {}",
                share.party
            )));
        }
        by_party[share.party - 2] = Some(share);
    }
    let missing: Vec<usize> = (2..=n)
        .filter(|party| by_party[party - 2].is_none())
        .collect();
    if !missing.is_empty() {
        return Err(Error::IncompleteCoalition { missing });
    }

    let key_len = report.key_rounds.len();
    let streams: Vec<Vec<Outcome>> = by_party
        .into_iter()
        .map(|share| {
            let share = share.expect("checked above");
            if share.bits.chars().count() != key_len {
                return Err(Error::InvalidShare(format!(
                    "share for party {} has {} bits, expected {key_len}",
                    share.party,
                    share.bits.len()
                )));
            }
            share
                .bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(Outcome::Zero),
                    '1' => Ok(Outcome::One),
                    other => Err(Error::InvalidShare(format!(
                        "share for party {} contains {other:?}",
                        share.party
                    ))),
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut secret = String::with_capacity(key_len);
    let mut round_bits = Vec::with_capacity(n - 1);
    for (k, key_round) in report.key_rounds.iter().enumerate() {
        round_bits.clear();
        round_bits.extend(streams.iter().map(|s| s[k]));
        secret.push(reconstruct_secret_bit(&round_bits, key_round.class)?.as_char());
    }
    Ok(secret)
}
