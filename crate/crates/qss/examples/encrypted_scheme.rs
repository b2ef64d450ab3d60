//! Bootstrap per-party control keys from a plain symmetric run, inspect the
//! first few columns (every column carries an even number of y entries), and
//! then run a session whose basis choices follow the keys: no round is ever
//! discarded.
//!
//! ```bash
//! cargo run --release -p qss --example encrypted_scheme
//! ```

use qss::protocol::classify_round;
use qss::rng::{substream, STREAM_BOOTSTRAP};
use qss::schemes::{bootstrap_control_keys, choose_bases_encrypted, SchemeConfig};
use qss::session::{run_session, SessionConfig};

fn main() -> qss::Result<()> {
    let seed = 11u64;
    let keys = bootstrap_control_keys(3, 1000, &mut substream(seed, STREAM_BOOTSTRAP, 0))?;

    println!("bootstrapped control keys: n={} length={}", keys.n(), keys.key_length());
    println!();
    println!("first 10 entries of each party's secret key:");
    let show = |key: &[qss::Basis]| -> String {
        key.iter().take(10).map(|b| format!("{b} ")).collect()
    };
    println!("  Alice    {}", show(keys.alice_key()));
    println!("  party 2  {}", show(&keys.participant_keys()[0]));
    println!("  party 3  {}", show(&keys.participant_keys()[1]));
    println!();
    for round in 0..10u64 {
        let bases = choose_bases_encrypted(&keys, round);
        println!("  round {round}: bases {bases} -> class {}", classify_round(&bases));
    }

    // The sequences repeat cyclically for as long as the session runs.
    assert_eq!(choose_bases_encrypted(&keys, 0), choose_bases_encrypted(&keys, 1000));

    let mut config = SessionConfig::new(3, 50_000, SchemeConfig::Encrypted { key_length: 1000 });
    config.seed = seed;
    let report = run_session(&config)?;
    println!();
    println!(
        "session over {} rounds: odd-y rounds {}, valid fraction {}",
        config.rounds, report.class_counts.odd_y, report.valid_fraction
    );
    println!(
        "key bits {} + check bits {} account for every single multiplet",
        report.key_bits.len(),
        report.check_samples
    );
    assert_eq!(report.valid_fraction, 1.0);
    Ok(())
}
