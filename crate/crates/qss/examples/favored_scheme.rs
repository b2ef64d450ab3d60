//! Sweep the favored scheme's y-basis probability and watch the yield climb
//! toward 100%: all-x rounds become key bits directly, while the rare even-y
//! rounds are burned as eavesdropping checks.
//!
//! ```bash
//! cargo run --release -p qss --example favored_scheme
//! ```

use qss::schemes::SchemeConfig;
use qss::session::{run_session, SessionConfig};

fn main() -> qss::Result<()> {
    let n = 3usize;
    let rounds = 100_000u64;

    println!("favored scheme, n={n}, {rounds} rounds per point");
    println!();
    println!("  eps     valid    key yield   (1-eps)^n   check rounds");
    for (i, epsilon) in [0.5, 0.2, 0.1, 0.05, 0.02].into_iter().enumerate() {
        let mut config = SessionConfig::new(n, rounds, SchemeConfig::Favored { epsilon });
        config.seed = 100 + i as u64;
        let report = run_session(&config)?;
        assert_eq!(report.check_errors, 0);
        println!(
            "  {epsilon:<5}   {:.4}   {:.4}      {:.4}      {}",
            report.valid_fraction,
            report.key_bits.len() as f64 / rounds as f64,
            (1.0 - epsilon).powi(n as i32),
            report.check_samples,
        );
    }
    println!();
    println!("as eps shrinks, nearly every multiplet turns into a key bit;");
    println!("the check population shrinks too, so eps trades yield against detection power");
    Ok(())
}
