//! Command implementations behind the `trss` binary.
//!
//! Each protocol phase is a separate invocation working against an archive
//! directory (see [`crate::archive`] for the layout), so the trusted
//! initializer, the dealer, the time-server and the participants can be
//! played from different terminals. `verify` and `tre-demo` drive the
//! entropy verifier and the encryption demo.
//!
//! Exit codes:
//!
//! | code | meaning                                   |
//! |------|-------------------------------------------|
//! | 0    | success                                   |
//! | 1    | `verify` found a failing condition        |
//! | 10   | too few shares                            |
//! | 11   | share/signal time mismatch                |
//! | 12   | duplicate participant in the share set    |
//! | 13   | missing public-parameter file             |
//! | 14   | corrupt or malformed file                 |
//! | 15   | invalid parameters or usage               |
//! | 16   | enumeration larger than the world cap     |
//! | 17   | input/output failure                      |

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::archive::{
    read_share_hybrid, read_share_kn, read_signal_hybrid, read_signal_kn, Archive,
};
use crate::error::{Error, Result};
use crate::field::FieldModulus;
use crate::hybrid::{self, Variant};
use crate::kn;
use crate::oracle::{check_scheme_with, check_tre_demo, Mutation, SecretDistribution};
use crate::rng::SeededRng;
use crate::scheme::Scheme;
use crate::tre::TreCeremony;

pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INSUFFICIENT_SHARES: i32 = 10;
pub const EXIT_TIME_MISMATCH: i32 = 11;
pub const EXIT_DUPLICATE_SHARE: i32 = 12;
pub const EXIT_MISSING_PUBLIC_PARAMS: i32 = 13;
pub const EXIT_PARSE: i32 = 14;
pub const EXIT_VALIDATION: i32 = 15;
pub const EXIT_ENUMERATION_TOO_LARGE: i32 = 16;
pub const EXIT_IO: i32 = 17;

/// Maps a library error to the binary's exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InsufficientShares { .. } => EXIT_INSUFFICIENT_SHARES,
        Error::TimeMismatch => EXIT_TIME_MISMATCH,
        Error::DuplicateShare(_) => EXIT_DUPLICATE_SHARE,
        Error::MissingPublicParams => EXIT_MISSING_PUBLIC_PARAMS,
        Error::Parse { .. } => EXIT_PARSE,
        Error::EnumerationTooLarge { .. } => EXIT_ENUMERATION_TOO_LARGE,
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_VALIDATION,
    }
}

fn rng_from(seed: Option<&str>) -> Result<SeededRng> {
    match seed {
        Some(hex_seed) => SeededRng::from_hex_seed(hex_seed),
        None => Ok(SeededRng::from_entropy()),
    }
}

/// `init`: trusted setup. Writes the manifest and master key, reports key
/// size in field elements.
pub fn cmd_init(scheme: &Scheme, seed: Option<&str>, outdir: &Path) -> Result<String> {
    let mut rng = rng_from(seed)?;
    let archive = Archive::create(outdir, scheme)?;
    let elements = match scheme {
        Scheme::Kn(params) => {
            let key = kn::initialize(params, &mut rng);
            archive.write_master_key_kn(&key)?;
            key.elements().len() as u64
        }
        Scheme::Hybrid(params, variant) => {
            let key = hybrid::initialize(params, *variant, &mut rng);
            archive.write_master_key_hybrid(&key)?;
            key.element_count()
        }
    };
    Ok(format!(
        "initialized {} archive at {}\nmaster key: {} field element(s)\n",
        scheme.label(),
        outdir.display(),
        elements
    ))
}

/// `share`: deals a secret at one period, writing per-participant share
/// files (and the public-parameter file for hybrid-optimal dealings).
pub fn cmd_share(
    archive_dir: &Path,
    secret: u64,
    time: u64,
    seed: Option<&str>,
) -> Result<String> {
    let (archive, scheme) = Archive::open(archive_dir)?;
    let q = scheme.modulus().order();
    if secret >= q {
        return Err(Error::InvalidParams(format!(
            "secret must lie in 0..{q} (got {secret})"
        )));
    }
    let secret = scheme.modulus().element(secret);
    let mut rng = rng_from(seed)?;
    let mut out = String::new();
    match &scheme {
        Scheme::Kn(params) => {
            let key = archive.read_master_key_kn(params)?;
            let shares = kn::share(&key, params, secret, time, &mut rng)?;
            for share in &shares {
                archive.write_share_kn(share)?;
            }
            writeln!(
                out,
                "dealt secret at period {time}: {} share file(s), 1 element each",
                shares.len()
            )
            .unwrap();
        }
        Scheme::Hybrid(params, variant) => {
            let key = archive.read_master_key_hybrid(params, *variant)?;
            match variant {
                Variant::Naive => {
                    let shares = hybrid::share_naive(&key, params, secret, time, &mut rng)?;
                    for share in &shares {
                        archive.write_share_hybrid(share)?;
                    }
                    writeln!(
                        out,
                        "dealt secret at period {time}: {} share file(s), 2 elements each",
                        shares.len()
                    )
                    .unwrap();
                }
                Variant::Optimal => {
                    let (shares, public) =
                        hybrid::share_optimal(&key, params, secret, time, &mut rng)?;
                    for share in &shares {
                        archive.write_share_hybrid(share)?;
                    }
                    archive.write_public(&public)?;
                    writeln!(
                        out,
                        "dealt secret at period {time}: {} share file(s), 1 element each",
                        shares.len()
                    )
                    .unwrap();
                    writeln!(
                        out,
                        "published {} masked coefficient(s) in public.{time}",
                        public.values().len()
                    )
                    .unwrap();
                }
            }
        }
    }
    Ok(out)
}

/// `extract`: writes the signal file for one period, or for every period.
/// Re-running produces byte-identical files.
pub fn cmd_extract(archive_dir: &Path, time: Option<u64>) -> Result<String> {
    let (archive, scheme) = Archive::open(archive_dir)?;
    let times: Vec<u64> = match time {
        Some(t) => vec![t],
        None => (1..=scheme.periods()).collect(),
    };
    let mut out = String::new();
    for t in &times {
        let path = match &scheme {
            Scheme::Kn(params) => {
                let key = archive.read_master_key_kn(params)?;
                archive.write_signal_kn(&kn::extract(&key, *t)?)?
            }
            Scheme::Hybrid(params, variant) => {
                let key = archive.read_master_key_hybrid(params, *variant)?;
                archive.write_signal_hybrid(&hybrid::extract(&key, *t)?)?
            }
        };
        writeln!(out, "broadcast signal for period {t}: {}", path.display()).unwrap();
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReconstructMode {
    WithSignal,
    WithoutSignal,
}

/// `reconstruct`: recovers the secret from share files, printing it as a
/// decimal integer.
pub fn cmd_reconstruct(
    archive_dir: &Path,
    share_files: &[PathBuf],
    signal_file: Option<&Path>,
    mode: ReconstructMode,
) -> Result<String> {
    let (archive, scheme) = Archive::open(archive_dir)?;
    let secret = match (&scheme, mode) {
        (Scheme::Kn(_), ReconstructMode::WithoutSignal) => {
            return Err(Error::InvalidParams(
                "the kn scheme always needs the time-signal; \
                 without-signal mode applies to hybrid schemes only"
                    .into(),
            ));
        }
        (Scheme::Kn(params), ReconstructMode::WithSignal) => {
            let signal_file = signal_file.ok_or_else(|| {
                Error::InvalidParams("with-signal mode requires --signal".into())
            })?;
            let shares = share_files
                .iter()
                .map(|p| read_share_kn(p, params))
                .collect::<Result<Vec<_>>>()?;
            let signal = read_signal_kn(signal_file, params)?;
            kn::reconstruct(&shares, &signal, params)?
        }
        (Scheme::Hybrid(params, variant), ReconstructMode::WithSignal) => {
            let signal_file = signal_file.ok_or_else(|| {
                Error::InvalidParams("with-signal mode requires --signal".into())
            })?;
            let shares = share_files
                .iter()
                .map(|p| read_share_hybrid(p, params, *variant))
                .collect::<Result<Vec<_>>>()?;
            let signal = read_signal_hybrid(signal_file, params, *variant)?;
            let public = if *variant == Variant::Optimal && params.masked_span() > 0 {
                if !archive.has_public(signal.time()) {
                    return Err(Error::MissingPublicParams);
                }
                Some(archive.read_public(signal.time(), params)?)
            } else {
                None
            };
            hybrid::reconstruct_with_signal(&shares, public.as_ref(), &signal, params)?
        }
        (Scheme::Hybrid(params, variant), ReconstructMode::WithoutSignal) => {
            if signal_file.is_some() {
                return Err(Error::InvalidParams(
                    "without-signal mode takes no --signal".into(),
                ));
            }
            let shares = share_files
                .iter()
                .map(|p| read_share_hybrid(p, params, *variant))
                .collect::<Result<Vec<_>>>()?;
            hybrid::reconstruct_without_signal(&shares, params)?
        }
    };
    Ok(format!("{}\n", secret.value()))
}

/// `verify`: runs the exhaustive security checks for every dealing period
/// (or one chosen period). Returns the rendered report text and whether
/// every condition passed; with a custom secret distribution the checks run
/// both uniform and custom.
pub fn cmd_verify(
    scheme: &Scheme,
    time: Option<u64>,
    report_path: Option<&Path>,
    secret_dist: Option<&str>,
    mutation: Option<&str>,
    cap: u64,
) -> Result<(String, bool)> {
    let mutation = mutation.map(Mutation::parse).transpose()?;
    let uniform = SecretDistribution::uniform(scheme.modulus().order());
    let mut distributions = vec![uniform];
    if let Some(text) = secret_dist {
        distributions.push(SecretDistribution::parse(text)?);
    }
    let times: Vec<u64> = match time {
        Some(t) => vec![t],
        None => (1..=scheme.periods()).collect(),
    };
    let mut text = String::new();
    let mut all_pass = true;
    for distribution in &distributions {
        for &t in &times {
            let report = check_scheme_with(scheme, t, distribution, cap, mutation)?;
            all_pass &= report.all_pass();
            text.push_str(&report.render());
            text.push('\n');
        }
    }
    if let Some(path) = report_path {
        fs::write(path, &text).map_err(|e| Error::io(path, e))?;
    }
    Ok((text, all_pass))
}

/// `tre-demo`: prints a full timed-release encryption ceremony transcript.
pub fn cmd_tre_demo(
    q: u64,
    message: u64,
    time: u64,
    periods: u64,
    seed: Option<&str>,
) -> Result<String> {
    let modulus = FieldModulus::new(q)?;
    if message >= q {
        return Err(Error::InvalidParams(format!(
            "message must lie in 0..{q} (got {message})"
        )));
    }
    let mut rng = rng_from(seed)?;
    let ceremony = TreCeremony::run(modulus, modulus.element(message), time, periods, &mut rng)?;
    let signal = ceremony.signal(time)?;
    let recovered = ceremony.recover(&signal)?;

    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!(
        "timed-release encryption demo over {modulus}, {periods} period(s), dealt for period {time}"
    ));
    line("sender:".into());
    line(format!("  message        M = {}", ceremony.message()));
    line(format!("  shared pad key K = {}", ceremony.pad_key()));
    line(format!("  fresh mask     r = {}", ceremony.mask()));
    line(format!(
        "  ciphertext     C = M + r + K = {}",
        ceremony.ciphertext()
    ));
    line(format!(
        "  deals r as the single share of a (1,1) timed scheme bound to period {time}"
    ));
    line(format!("receiver, before period {time}:"));
    line(format!(
        "  holds C = {}, K = {}, share u = {} — nothing about M is computable from these",
        ceremony.ciphertext(),
        ceremony.pad_key(),
        ceremony.share().value()
    ));
    line(format!(
        "time-server broadcasts the period-{time} signal: {}",
        signal.value()
    ));
    line("receiver, after the signal:".into());
    line(format!(
        "  r = u - signal = {}",
        ceremony.share().value() - signal.value()
    ));
    line(format!("  M = C - r - K = {recovered}"));
    if recovered != ceremony.message() {
        return Err(Error::InvalidParams(
            "demo recovery failed to return the message".into(),
        ));
    }
    line("recovery matches the message".into());
    Ok(out)
}

/// Entropy verification for the demo composition; see
/// [`crate::oracle::check_tre_demo`].
pub fn cmd_tre_verify(q: u64, seed: Option<&str>) -> Result<(String, bool)> {
    let seed_bytes = match seed {
        Some(hex_seed) => {
            let bytes = hex::decode(hex_seed)
                .map_err(|e| Error::InvalidParams(format!("seed must be hex: {e}")))?;
            let mut out = [0u8; 32];
            if bytes.len() > 32 {
                return Err(Error::InvalidParams("seed longer than 32 bytes".into()));
            }
            out[..bytes.len()].copy_from_slice(&bytes);
            out
        }
        None => [0u8; 32],
    };
    let report = check_tre_demo(q, seed_bytes)?;
    let pass = report.all_pass();
    Ok((report.render(), pass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::TempDir;

    fn kn_scheme(q: u64, k: u64, n: u64, tau: u64) -> Scheme {
        Scheme::Kn(
            crate::kn::KnParams::new(FieldModulus::new(q).unwrap(), k, n, tau).unwrap(),
        )
    }

    #[test]
    fn init_share_extract_reconstruct_round_trip() {
        let tmp = TempDir::new().unwrap();
        let dir = tmp.path().join("ceremony");
        let scheme = kn_scheme(11, 2, 3, 2);
        cmd_init(&scheme, Some("aa"), &dir).unwrap();
        cmd_share(&dir, 7, 2, Some("bb")).unwrap();
        cmd_extract(&dir, Some(2)).unwrap();
        let shares = vec![dir.join("share.1"), dir.join("share.3")];
        let out = cmd_reconstruct(
            &dir,
            &shares,
            Some(&dir.join("signal.2")),
            ReconstructMode::WithSignal,
        )
        .unwrap();
        assert_eq!(out, "7\n");
    }

    #[test]
    fn without_signal_mode_is_rejected_for_kn() {
        let tmp = TempDir::new().unwrap();
        let dir = tmp.path().join("ceremony");
        cmd_init(&kn_scheme(7, 1, 1, 1), Some("aa"), &dir).unwrap();
        cmd_share(&dir, 3, 1, Some("bb")).unwrap();
        let err = cmd_reconstruct(
            &dir,
            &[dir.join("share.1")],
            None,
            ReconstructMode::WithoutSignal,
        )
        .unwrap_err();
        assert_eq!(exit_code(&err), EXIT_VALIDATION);
    }

    #[test]
    fn share_range_is_validated() {
        let tmp = TempDir::new().unwrap();
        let dir = tmp.path().join("ceremony");
        cmd_init(&kn_scheme(7, 1, 1, 1), Some("aa"), &dir).unwrap();
        let err = cmd_share(&dir, 7, 1, Some("bb")).unwrap_err();
        assert!(err.to_string().contains("0..7"));
    }

    #[test]
    fn extract_is_idempotent_and_all_covers_every_period() {
        let tmp = TempDir::new().unwrap();
        let dir = tmp.path().join("ceremony");
        cmd_init(&kn_scheme(7, 1, 2, 3), Some("cc"), &dir).unwrap();
        cmd_extract(&dir, None).unwrap();
        let first = fs::read(dir.join("signal.2")).unwrap();
        cmd_extract(&dir, Some(2)).unwrap();
        assert_eq!(fs::read(dir.join("signal.2")).unwrap(), first);
        assert!(dir.join("signal.1").exists());
        assert!(dir.join("signal.3").exists());
    }

    #[test]
    fn verify_passes_on_the_direct_construction() {
        let (text, pass) = cmd_verify(
            &kn_scheme(3, 2, 2, 2),
            None,
            None,
            None,
            None,
            crate::oracle::DEFAULT_WORLD_CAP,
        )
        .unwrap();
        assert!(pass, "{text}");
        assert!(text.contains("result: PASS"));
    }

    #[test]
    fn verify_flags_mutations() {
        let (text, pass) = cmd_verify(
            &kn_scheme(3, 2, 2, 2),
            Some(1),
            None,
            None,
            Some("constant-time-keys"),
            crate::oracle::DEFAULT_WORLD_CAP,
        )
        .unwrap();
        assert!(!pass);
        assert!(text.contains("FAIL"));
    }

    #[test]
    fn tre_demo_transcript_recovers_the_message() {
        for q in [5u64, 7] {
            for message in 0..q.min(4) {
                let out = cmd_tre_demo(q, message, 1, 2, Some("dd")).unwrap();
                assert!(out.contains("recovery matches the message"), "{out}");
            }
        }
        let err = cmd_tre_demo(5, 5, 1, 2, Some("dd")).unwrap_err();
        assert!(err.to_string().contains("0..5"));
    }
}
