//! Batch front end for the secret-sharing simulator.
//!
//! Subcommands: `run` a full session and emit a JSON report (plus an optional
//! CSV round log), `verify` the closed-form amplitudes against the dense
//! expansion, `bootstrap` a control-key file, and `predict` an eavesdropper's
//! error rate. All logic lives in the library; this binary only parses flags,
//! resolves the config, and moves bytes.
//!
//! Config precedence for `run`: command-line flags override `--config` file
//! values, which override defaults. The default seed may also be supplied via
//! the `QSS_SEED` environment variable (flags and config win over it).

use std::fs;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qss::adversary::{predict_error_rate, EveModel};
use qss::quantum::check_oracle_equivalence;
use qss::rng::{substream, STREAM_BOOTSTRAP};
use qss::schemes::{
    bootstrap_control_keys, SchemeConfig, DEFAULT_EPSILON, DEFAULT_KEY_LENGTH,
};
use qss::session::{
    run_session, run_session_observed, CsvRoundLogger, SessionConfig, DEFAULT_CHECK_FRACTION,
    DEFAULT_ERROR_THRESHOLD,
};

const SEED_ENV_VAR: &str = "QSS_SEED";

#[derive(Parser)]
#[command(
    name = "qss",
    version,
    about = "GHZ-state quantum secret sharing simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a full session and write the JSON report.
    Run(Box<RunArgs>),
    /// Check the closed-form GHZ amplitudes against the dense expansion.
    Verify(VerifyArgs),
    /// Generate a control-key file for the encrypted scheme.
    Bootstrap(BootstrapArgs),
    /// Print the error rate an eavesdropper model induces.
    Predict(PredictArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Symmetric,
    Favored,
    Encrypted,
}

#[derive(Clone, Copy, ValueEnum)]
enum EveArg {
    /// No eavesdropper (overrides a config-file eve).
    None,
    /// Intercept one participant's qubit in a random basis.
    SingleRandom,
    /// Intercept every transit qubit in random bases.
    AllRandom,
    /// Intercept every transit qubit in the x basis.
    AllX,
}

#[derive(Args)]
struct RunArgs {
    /// JSON config file with the SessionConfig schema.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Basis-selection scheme.
    #[arg(long)]
    scheme: Option<SchemeArg>,
    /// Total party count, Alice included.
    #[arg(long)]
    parties: Option<usize>,
    /// GHZ multiplets to distribute.
    #[arg(long)]
    rounds: Option<u64>,
    /// Master seed (also settable via QSS_SEED).
    #[arg(long)]
    seed: Option<u64>,
    /// σy probability for the favored scheme.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Control-key length for the encrypted scheme.
    #[arg(long)]
    key_length: Option<usize>,
    /// Eavesdropper model.
    #[arg(long)]
    eve: Option<EveArg>,
    /// Target participant (2..=n) for --eve single-random.
    #[arg(long)]
    eve_target: Option<usize>,
    /// Fraction of valid rounds sacrificed for checking.
    #[arg(long)]
    check_fraction: Option<f64>,
    /// Error rate above which the verdict is "compromised".
    #[arg(long)]
    error_threshold: Option<f64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write a CSV round log here.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Party counts to verify: a single value like `3` or an inclusive
    /// range like `2..8`.
    #[arg(long, default_value = "2..8")]
    parties: String,
}

#[derive(Args)]
struct BootstrapArgs {
    /// Total party count, Alice included.
    #[arg(long)]
    parties: usize,
    /// Entries per control key.
    #[arg(long, default_value_t = DEFAULT_KEY_LENGTH)]
    key_length: usize,
    /// Master seed; `run --scheme encrypted` with the same seed derives the
    /// same keys.
    #[arg(long)]
    seed: Option<u64>,
    /// Where to write the control-key JSON.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct PredictArgs {
    /// Total party count, Alice included.
    #[arg(long)]
    parties: usize,
    /// Eavesdropper model.
    #[arg(long)]
    eve: EveArg,
    /// Target participant (2..=n) for --eve single-random.
    #[arg(long)]
    eve_target: Option<usize>,
}

/// Config-file fields, all optional so flags can fill the gaps.
#[derive(Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    n: Option<usize>,
    rounds: Option<u64>,
    scheme: Option<SchemeConfig>,
    eve: Option<EveModel>,
    check_fraction: Option<f64>,
    error_threshold: Option<f64>,
    seed: Option<u64>,
}

fn seed_from_env() -> anyhow::Result<Option<u64>> {
    match std::env::var(SEED_ENV_VAR) {
        Ok(text) => {
            let seed = text
                .parse::<u64>()
                .with_context(|| format!("{SEED_ENV_VAR} must be a 64-bit unsigned integer"))?;
            Ok(Some(seed))
        }
        Err(_) => Ok(None),
    }
}

fn resolve_eve(arg: EveArg, target: Option<usize>) -> Option<EveModel> {
    match arg {
        EveArg::None => None,
        EveArg::SingleRandom => Some(EveModel::SinglePartyRandomBasis {
            target_party: target.unwrap_or(2),
        }),
        EveArg::AllRandom => Some(EveModel::AllPartiesRandomBasis),
        EveArg::AllX => Some(EveModel::AllPartiesXOnly),
    }
}

fn resolve_run_config(args: &RunArgs) -> anyhow::Result<SessionConfig> {
    let file: FileConfig = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read config file {}", path.display()))?;
            serde_json::from_str(&text)
                .with_context(|| format!("cannot parse config file {}", path.display()))?
        }
        None => FileConfig::default(),
    };

    let mut scheme = args
        .scheme
        .map(|kind| match kind {
            SchemeArg::Symmetric => SchemeConfig::Symmetric,
            SchemeArg::Favored => SchemeConfig::Favored {
                epsilon: DEFAULT_EPSILON,
            },
            SchemeArg::Encrypted => SchemeConfig::Encrypted {
                key_length: DEFAULT_KEY_LENGTH,
            },
        })
        .or(file.scheme)
        .unwrap_or(SchemeConfig::Symmetric);
    if let Some(epsilon) = args.epsilon {
        match &mut scheme {
            SchemeConfig::Favored { epsilon: slot } => *slot = epsilon,
            _ => bail!("--epsilon only applies to the favored scheme"),
        }
    }
    if let Some(key_length) = args.key_length {
        match &mut scheme {
            SchemeConfig::Encrypted { key_length: slot } => *slot = key_length,
            _ => bail!("--key-length only applies to the encrypted scheme"),
        }
    }

    let eve = match args.eve {
        Some(arg) => resolve_eve(arg, args.eve_target),
        None => file.eve,
    };

    let seed = match (args.seed, file.seed) {
        (Some(seed), _) => seed,
        (None, Some(seed)) => seed,
        (None, None) => seed_from_env()?.unwrap_or(0),
    };

    Ok(SessionConfig {
        n: args.parties.or(file.n).unwrap_or(3),
        rounds: args.rounds.or(file.rounds).unwrap_or(10_000),
        scheme,
        eve,
        check_fraction: args
            .check_fraction
            .or(file.check_fraction)
            .unwrap_or(DEFAULT_CHECK_FRACTION),
        error_threshold: args
            .error_threshold
            .or(file.error_threshold)
            .unwrap_or(DEFAULT_ERROR_THRESHOLD),
        seed,
    })
}

fn cmd_run(args: &RunArgs) -> anyhow::Result<()> {
    let config = resolve_run_config(args)?;
    let report = match &args.log {
        Some(path) => {
            let file = fs::File::create(path)
                .with_context(|| format!("cannot create round log {}", path.display()))?;
            let mut logger = CsvRoundLogger::new(BufWriter::new(file))?;
            let report = run_session_observed(&config, &mut logger)?;
            logger.finish().context("cannot finish round log")?;
            report
        }
        None => run_session(&config)?,
    };

    let json = report.to_json();
    match &args.output {
        Some(path) => fs::write(path, json + "\n")
            .with_context(|| format!("cannot write report {}", path.display()))?,
        None => println!("{json}"),
    }
    Ok(())
}

/// Parse `N` or the inclusive `A..B` range.
fn parse_party_range(text: &str) -> anyhow::Result<std::ops::RangeInclusive<usize>> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().context("bad range start")?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().context("bad range end")?;
        if lo > hi {
            bail!("empty party range {text:?}");
        }
        Ok(lo..=hi)
    } else {
        let n: usize = text.trim().parse().context("bad party count")?;
        Ok(n..=n)
    }
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<()> {
    let range = parse_party_range(&args.parties)?;
    for n in range {
        let report = check_oracle_equivalence(n)
            .with_context(|| format!("amplitude verification failed for n={n}"))?;
        println!(
            "n={}: ok ({} basis vectors, {} amplitudes, max deviation {:.2e})",
            report.n, report.bases_checked, report.comparisons, report.max_deviation
        );
    }
    println!("verify: closed form matches the dense expansion");
    Ok(())
}

fn cmd_bootstrap(args: &BootstrapArgs) -> anyhow::Result<()> {
    let seed = match args.seed {
        Some(seed) => seed,
        None => seed_from_env()?.unwrap_or(0),
    };
    let mut rng = substream(seed, STREAM_BOOTSTRAP, 0);
    let keys = bootstrap_control_keys(args.parties, args.key_length, &mut rng)?;
    let mut file = fs::File::create(&args.output)
        .with_context(|| format!("cannot create {}", args.output.display()))?;
    file.write_all(keys.to_json().as_bytes())?;
    file.write_all(b"\n")?;
    eprintln!(
        "wrote control keys for {} parties, length {} (seed {seed})",
        args.parties, args.key_length,
    );
    Ok(())
}

fn cmd_predict(args: &PredictArgs) -> anyhow::Result<()> {
    let model = resolve_eve(args.eve, args.eve_target)
        .ok_or_else(|| anyhow::anyhow!("predict needs a concrete eavesdropper model"))?;
    if args.parties < 2 {
        bail!("need at least 2 parties");
    }
    model.validate(args.parties)?;
    println!("{}", predict_error_rate(args.parties, &model));
    Ok(())
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bootstrap(args) => cmd_bootstrap(args),
        Command::Predict(args) => cmd_predict(args),
    }
}
