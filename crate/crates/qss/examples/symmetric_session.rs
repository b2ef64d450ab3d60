//! Run one plain secret-sharing session and walk through its report:
//! classification counts, sifting yield, check-round error rate, and the
//! participants jointly reconstructing Alice's secret.
//!
//! ```bash
//! cargo run --release -p qss --example symmetric_session
//! ```

use qss::schemes::SchemeConfig;
use qss::session::{reconstruct_shared_secret, run_session, SessionConfig};

fn main() -> qss::Result<()> {
    let mut config = SessionConfig::new(3, 100_000, SchemeConfig::Symmetric);
    config.seed = 7;

    let report = run_session(&config)?;

    println!("symmetric session: n={} rounds={} seed={}", config.n, config.rounds, config.seed);
    println!();
    println!("round classes (by number of y-basis choices):");
    println!("  odd      {:>7}   (discarded)", report.class_counts.odd_y);
    println!("  2 mod 4  {:>7}", report.class_counts.two_mod4);
    println!("  0 mod 4  {:>7}", report.class_counts.zero_mod4);
    println!("valid fraction: {:.4}  (coin-flip bases waste half the rounds)", report.valid_fraction);
    println!();
    println!(
        "check rounds: {} disclosed, {} errors (rate {:.4}) -> verdict {:?}",
        report.check_samples, report.check_errors, report.check_error_rate, report.verdict
    );
    println!();
    println!("key rounds kept: {}", report.key_bits.len());
    println!("Alice's first 48 secret bits : {}", &report.key_bits[..48.min(report.key_bits.len())]);

    // The participants pool their shares and the announced round classes.
    let secret = reconstruct_shared_secret(&report, &report.shares)?;
    println!("participants' reconstruction : {}", &secret[..48.min(secret.len())]);
    assert_eq!(secret, report.key_bits);
    println!();
    println!("reconstruction matches Alice bit-for-bit on all {} key rounds", secret.len());
    Ok(())
}
