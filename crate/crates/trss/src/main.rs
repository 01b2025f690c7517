use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use trss::cli::{
    self, cmd_extract, cmd_init, cmd_reconstruct, cmd_share, cmd_tre_demo, cmd_tre_verify,
    cmd_verify, ReconstructMode,
};
use trss::error::Error;
use trss::field::FieldModulus;
use trss::hybrid::{HybridParams, Variant};
use trss::kn::KnParams;
use trss::oracle::DEFAULT_WORLD_CAP;
use trss::Scheme;

/// Timed-release threshold secret sharing: shares unlock only when the
/// time-server broadcasts the dealt period's signal.
#[derive(Parser)]
#[command(name = "trss", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeId {
    Kn,
    HybridNaive,
    HybridOptimal,
}

#[derive(Args)]
struct SchemeArgs {
    /// Scheme to instantiate.
    #[arg(long, value_enum)]
    scheme: SchemeId,

    /// Prime field modulus.
    #[arg(long)]
    q: u64,

    /// Threshold (kn scheme).
    #[arg(long)]
    k: Option<u64>,

    /// Shares needed together with the time-signal (hybrid schemes).
    #[arg(long)]
    k1: Option<u64>,

    /// Shares needed on their own (hybrid schemes).
    #[arg(long)]
    k2: Option<u64>,

    /// Number of participants.
    #[arg(long)]
    n: u64,

    /// Number of time periods.
    #[arg(long)]
    tau: u64,

    /// Masks per period for hybrid-optimal; defaults to k2 - k1.
    #[arg(long)]
    ell: Option<u64>,
}

impl SchemeArgs {
    fn build(&self) -> Result<Scheme, Error> {
        let modulus = FieldModulus::new(self.q)?;
        match self.scheme {
            SchemeId::Kn => {
                if self.k1.is_some() || self.k2.is_some() || self.ell.is_some() {
                    return Err(Error::InvalidParams(
                        "the kn scheme takes --k, not --k1/--k2/--ell".into(),
                    ));
                }
                let k = self.k.ok_or_else(|| {
                    Error::InvalidParams("the kn scheme requires --k".into())
                })?;
                Ok(Scheme::Kn(KnParams::new(modulus, k, self.n, self.tau)?))
            }
            SchemeId::HybridNaive | SchemeId::HybridOptimal => {
                if self.k.is_some() {
                    return Err(Error::InvalidParams(
                        "hybrid schemes take --k1 and --k2, not --k".into(),
                    ));
                }
                let (Some(k1), Some(k2)) = (self.k1, self.k2) else {
                    return Err(Error::InvalidParams(
                        "hybrid schemes require --k1 and --k2".into(),
                    ));
                };
                let variant = if self.scheme == SchemeId::HybridNaive {
                    Variant::Naive
                } else {
                    Variant::Optimal
                };
                let ell = match (variant, self.ell) {
                    (Variant::Naive, _) => 0,
                    (Variant::Optimal, Some(ell)) => ell,
                    (Variant::Optimal, None) => k2.saturating_sub(k1),
                };
                if variant == Variant::Optimal && k2 - k1 > ell {
                    return Err(Error::InvalidParams(format!(
                        "hybrid-optimal requires k2 - k1 <= ell (got k2-k1={}, ell={ell})",
                        k2 - k1
                    )));
                }
                Ok(Scheme::Hybrid(
                    HybridParams::new(modulus, k1, k2, self.n, self.tau, ell)?,
                    variant,
                ))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    WithSignal,
    WithoutSignal,
}

#[derive(Subcommand)]
enum Command {
    /// Trusted setup: create an archive directory with a fresh master key.
    Init {
        #[command(flatten)]
        scheme: SchemeArgs,

        /// Hex seed (up to 64 digits) for reproducible runs.
        #[arg(long, env = "TRSS_SEED")]
        seed: Option<String>,

        /// Archive directory to create.
        #[arg(long)]
        outdir: PathBuf,
    },

    /// Deal a secret at a chosen period, writing per-participant share files.
    Share {
        #[arg(long)]
        archive: PathBuf,

        /// The secret, as a decimal integer below q.
        #[arg(long)]
        secret: u64,

        /// Dealing period.
        #[arg(long)]
        t: u64,

        #[arg(long, env = "TRSS_SEED")]
        seed: Option<String>,
    },

    /// Broadcast: write the signal file for one period, or all of them.
    Extract {
        #[arg(long)]
        archive: PathBuf,

        /// Period to broadcast.
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        t: Option<u64>,

        /// Broadcast every period up to tau.
        #[arg(long)]
        all: bool,
    },

    /// Recover the secret from share files (plus a signal file, by mode).
    Reconstruct {
        #[arg(long)]
        archive: PathBuf,

        /// Share file; repeat per participant.
        #[arg(long = "share", required = true)]
        shares: Vec<PathBuf>,

        /// Signal file (with-signal mode).
        #[arg(long)]
        signal: Option<PathBuf>,

        #[arg(long, value_enum)]
        mode: ModeArg,
    },

    /// Exhaustively verify the scheme's security conditions and size bounds
    /// at small parameters.
    Verify {
        #[command(flatten)]
        scheme: SchemeArgs,

        /// Check a single dealing period instead of all of them.
        #[arg(long)]
        t: Option<u64>,

        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,

        /// Re-run every check under a custom secret distribution, e.g.
        /// "1/2,1/4,1/4" (one entry per field value).
        #[arg(long)]
        secret_dist: Option<String>,

        /// Inject a known-broken scheme variant; the verifier must FAIL it.
        #[arg(long, hide = true)]
        mutation: Option<String>,

        /// Enumeration size cap.
        #[arg(long, default_value_t = DEFAULT_WORLD_CAP)]
        max_worlds: u64,
    },

    /// Timed-release encryption demo: one-time pad plus a (1,1) dealing.
    TreDemo {
        /// Prime field modulus.
        #[arg(long)]
        q: u64,

        /// The message, as a decimal integer below q.
        #[arg(long)]
        message: u64,

        /// Period the message unlocks at.
        #[arg(long)]
        t: u64,

        /// Number of periods.
        #[arg(long)]
        tau: u64,

        #[arg(long, env = "TRSS_SEED")]
        seed: Option<String>,

        /// Also run the exhaustive entropy checks for this composition.
        #[arg(long)]
        check: bool,
    },
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Init {
            scheme,
            seed,
            outdir,
        } => {
            print!("{}", cmd_init(&scheme.build()?, seed.as_deref(), &outdir)?);
            Ok(0)
        }
        Command::Share {
            archive,
            secret,
            t,
            seed,
        } => {
            print!("{}", cmd_share(&archive, secret, t, seed.as_deref())?);
            Ok(0)
        }
        Command::Extract { archive, t, all } => {
            let time = if all { None } else { t };
            print!("{}", cmd_extract(&archive, time)?);
            Ok(0)
        }
        Command::Reconstruct {
            archive,
            shares,
            signal,
            mode,
        } => {
            let mode = match mode {
                ModeArg::WithSignal => ReconstructMode::WithSignal,
                ModeArg::WithoutSignal => ReconstructMode::WithoutSignal,
            };
            print!(
                "{}",
                cmd_reconstruct(&archive, &shares, signal.as_deref(), mode)?
            );
            Ok(0)
        }
        Command::Verify {
            scheme,
            t,
            report,
            secret_dist,
            mutation,
            max_worlds,
        } => {
            let (text, pass) = cmd_verify(
                &scheme.build()?,
                t,
                report.as_deref(),
                secret_dist.as_deref(),
                mutation.as_deref(),
                max_worlds,
            )?;
            print!("{text}");
            Ok(if pass { 0 } else { cli::EXIT_VERIFY_FAILED })
        }
        Command::TreDemo {
            q,
            message,
            t,
            tau,
            seed,
            check,
        } => {
            print!("{}", cmd_tre_demo(q, message, t, tau, seed.as_deref())?);
            if check {
                let (text, pass) = cmd_tre_verify(q, seed.as_deref())?;
                print!("{text}");
                if !pass {
                    return Ok(cli::EXIT_VERIFY_FAILED);
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(cli::exit_code(&err) as u8)
        }
    }
}
