//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//!
//! Parameter note: the schemes require q > max(n, tau) — GF(q) has only
//! q-1 nonzero identities — so sweeps skip tuples with n >= q, and the
//! exact-entropy suites pair the 81-world GF(3) instance (k=n=2) with a
//! GF(5) instance at (k,n)=(2,3).

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;

use trss::field::FieldModulus;
use trss::hybrid::{self, HybridParams, Variant};
use trss::kn::{self, KnParams};
use trss::oracle::{
    check_scheme, check_scheme_with, check_tre_demo, Mutation, SecretDistribution,
    DEFAULT_WORLD_CAP, ENTROPY_TOLERANCE_BITS,
};
use trss::rng::SeededRng;
use trss::Scheme;

/// Every subset of {1..=n} with exactly `size` members.
fn subsets(n: u64, size: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as u64 == size {
            out.push((1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect());
        }
    }
    out
}

fn seed(counter: &mut u64) -> SeededRng {
    *counter += 1;
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&counter.to_le_bytes());
    SeededRng::from_seed(bytes)
}

#[test]
fn criterion_1_roundtrip_sweep() {
    let mut counter = 0u64;
    let mut runs = 0u64;
    for q in [5u64, 7, 11] {
        let modulus = FieldModulus::new(q).unwrap();
        let max_n = 5.min(q - 1);
        for tau in [1u64, 3] {
            for n in 1..=max_n {
                // (k,n) scheme: every exactly-k coalition at every time and
                // secret.
                for k in 1..=n {
                    let params = KnParams::new(modulus, k, n, tau).unwrap();
                    for t in 1..=tau {
                        for s in 0..q {
                            let mut rng = seed(&mut counter);
                            let key = kn::initialize(&params, &mut rng);
                            let secret = modulus.element(s);
                            let shares =
                                kn::share(&key, &params, secret, t, &mut rng).unwrap();
                            let signal = kn::extract(&key, t).unwrap();
                            for coalition in subsets(n, k) {
                                let picked: Vec<_> = coalition
                                    .iter()
                                    .map(|&id| shares[(id - 1) as usize])
                                    .collect();
                                let got =
                                    kn::reconstruct(&picked, &signal, &params).unwrap();
                                assert_eq!(got, secret, "kn q={q} k={k} n={n} t={t} s={s}");
                                runs += 1;
                            }
                        }
                    }
                }
                // Hybrid schemes, both variants, with ell = k2 - k1.
                for k2 in 1..=n {
                    for k1 in 1..=k2 {
                        let params =
                            HybridParams::new(modulus, k1, k2, n, tau, k2 - k1).unwrap();
                        for t in 1..=tau {
                            for s in 0..q {
                                let secret = modulus.element(s);

                                let mut rng = seed(&mut counter);
                                let key =
                                    hybrid::initialize(&params, Variant::Optimal, &mut rng);
                                let (shares, public) =
                                    hybrid::share_optimal(&key, &params, secret, t, &mut rng)
                                        .unwrap();
                                let signal = hybrid::extract(&key, t).unwrap();
                                for coalition in subsets(n, k1) {
                                    let picked: Vec<_> = coalition
                                        .iter()
                                        .map(|&id| shares[(id - 1) as usize])
                                        .collect();
                                    let got = hybrid::reconstruct_with_signal(
                                        &picked,
                                        Some(&public),
                                        &signal,
                                        &params,
                                    )
                                    .unwrap();
                                    assert_eq!(got, secret);
                                    runs += 1;
                                }
                                for coalition in subsets(n, k2) {
                                    let picked: Vec<_> = coalition
                                        .iter()
                                        .map(|&id| shares[(id - 1) as usize])
                                        .collect();
                                    let got =
                                        hybrid::reconstruct_without_signal(&picked, &params)
                                            .unwrap();
                                    assert_eq!(got, secret);
                                    runs += 1;
                                }

                                let mut rng = seed(&mut counter);
                                let key =
                                    hybrid::initialize(&params, Variant::Naive, &mut rng);
                                let shares =
                                    hybrid::share_naive(&key, &params, secret, t, &mut rng)
                                        .unwrap();
                                let signal = hybrid::extract(&key, t).unwrap();
                                for coalition in subsets(n, k1) {
                                    let picked: Vec<_> = coalition
                                        .iter()
                                        .map(|&id| shares[(id - 1) as usize])
                                        .collect();
                                    let got = hybrid::reconstruct_with_signal(
                                        &picked, None, &signal, &params,
                                    )
                                    .unwrap();
                                    assert_eq!(got, secret);
                                    runs += 1;
                                }
                                for coalition in subsets(n, k2) {
                                    let picked: Vec<_> = coalition
                                        .iter()
                                        .map(|&id| shares[(id - 1) as usize])
                                        .collect();
                                    let got =
                                        hybrid::reconstruct_without_signal(&picked, &params)
                                            .unwrap();
                                    assert_eq!(got, secret);
                                    runs += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    println!("ACCEPTANCE 1 (round-trip sweep): PASS — {runs} reconstructions, 100% exact");
}

/// Asserts every secrecy row of `name` sits within tolerance of H(S) and
/// returns how many rows the family had.
fn assert_secrecy_rows(report: &trss::oracle::EntropyReport, name: &str) -> usize {
    let rows: Vec<_> = report
        .conditions
        .iter()
        .filter(|c| c.name == name)
        .collect();
    for row in &rows {
        assert!(
            (row.entropy_bits - report.secret_entropy_bits).abs() <= ENTROPY_TOLERANCE_BITS,
            "{name} {:?}: H = {} but H(S) = {}",
            row.coalition,
            row.entropy_bits,
            report.secret_entropy_bits
        );
        assert!(row.pass);
    }
    rows.len()
}

fn assert_correctness_rows(report: &trss::oracle::EntropyReport, name: &str) -> usize {
    let rows: Vec<_> = report
        .conditions
        .iter()
        .filter(|c| c.name == name)
        .collect();
    for row in &rows {
        assert!(row.exact, "{name} {:?} not exactly zero", row.coalition);
        assert_eq!(row.entropy_bits, 0.0);
    }
    rows.len()
}

#[test]
fn criterion_2_kn_exact_entropy_suite() {
    // 81-world instance over GF(3)...
    let gf3 = Scheme::Kn(KnParams::new(FieldModulus::new(3).unwrap(), 2, 2, 2).unwrap());
    for t in 1..=2 {
        let report = check_scheme(&gf3, t).unwrap();
        assert_eq!(report.world_count, 81);
        assert!(
            (report.secret_entropy_bits - 3f64.log2()).abs() < 1e-12,
            "H(S) must be log2 3"
        );
        assert!(assert_correctness_rows(&report, "correctness") > 0);
        assert!(assert_secrecy_rows(&report, "threshold-secrecy") > 0);
        assert!(assert_secrecy_rows(&report, "timed-release-secrecy") > 0);
        assert!(assert_secrecy_rows(&report, "server-collusion-secrecy") > 0);
        assert!(report.all_pass());
    }
    // ...and a three-participant instance over GF(5).
    let gf5 = Scheme::Kn(KnParams::new(FieldModulus::new(5).unwrap(), 2, 3, 2).unwrap());
    for t in 1..=2 {
        let report = check_scheme(&gf5, t).unwrap();
        assert_eq!(report.world_count, 625);
        assert!(assert_correctness_rows(&report, "correctness") >= 4);
        assert!(assert_secrecy_rows(&report, "threshold-secrecy") >= 3);
        assert!(assert_secrecy_rows(&report, "timed-release-secrecy") >= 4);
        assert!(assert_secrecy_rows(&report, "server-collusion-secrecy") >= 3);
        assert!(report.all_pass());
    }
    println!("ACCEPTANCE 2 (kn exact-entropy suite): PASS — all coalitions, |H - H(S)| <= 1e-9");
}

#[test]
fn criterion_3_hybrid_exact_entropy_suites() {
    for variant in [Variant::Optimal, Variant::Naive] {
        // The 81-world GF(3) instance from the construction's own scale.
        let scheme = Scheme::Hybrid(
            HybridParams::new(FieldModulus::new(3).unwrap(), 1, 2, 2, 2, 1).unwrap(),
            variant,
        );
        for t in 1..=2 {
            let report = check_scheme(&scheme, t).unwrap();
            assert_eq!(report.world_count, 81);
            assert!(assert_correctness_rows(&report, "correctness-with-signal") > 0);
            assert!(assert_correctness_rows(&report, "correctness-without-signal") > 0);
            // k1 = 1 leaves no sub-threshold coalitions; the timed band is
            // the live one here.
            assert!(assert_secrecy_rows(&report, "timed-release-secrecy") > 0);
            assert!(report.all_pass());
        }
        // A GF(5) instance where both secrecy bands are populated. The naive
        // construction has two polynomials' worth of coefficient dimensions,
        // so it runs at one period to stay inside the time budget.
        let periods = match variant {
            Variant::Optimal => 2,
            Variant::Naive => 1,
        };
        let scheme = Scheme::Hybrid(
            HybridParams::new(FieldModulus::new(5).unwrap(), 2, 3, 4, periods, 1).unwrap(),
            variant,
        );
        let report = check_scheme(&scheme, 1).unwrap();
        assert!(assert_secrecy_rows(&report, "threshold-secrecy") > 0);
        assert!(assert_secrecy_rows(&report, "timed-release-secrecy") > 0);
        assert!(assert_correctness_rows(&report, "correctness-with-signal") > 0);
        assert!(assert_correctness_rows(&report, "correctness-without-signal") > 0);
        assert!(report.all_pass());
    }
    println!("ACCEPTANCE 3 (hybrid exact-entropy suites): PASS — optimal and naive");
}

#[test]
fn criterion_4_size_optimality_equalities() {
    // kn: share 1, signal 1, key tau — equality with the bounds.
    for (q, k, n, tau) in [(3u64, 2u64, 2u64, 2u64), (5, 2, 3, 3)] {
        let scheme = Scheme::Kn(KnParams::new(FieldModulus::new(q).unwrap(), k, n, tau).unwrap());
        let report = check_scheme(&scheme, 1).unwrap();
        let size = |what: &str| report.size(what).unwrap();
        assert_eq!(size("share").elements, 1);
        assert_eq!(size("time-signal").elements, 1);
        assert_eq!(size("master-key").elements, tau);
        assert!(report.is_optimal());
    }
    // hybrid-optimal with ell = k2-k1: share 1, signal k2-k1, key tau(k2-k1).
    for (q, k1, k2, n, tau) in [
        (3u64, 1u64, 2u64, 2u64, 2u64),
        (5, 2, 3, 4, 2),
        (5, 1, 3, 3, 1),
    ] {
        let ell = k2 - k1;
        let scheme = Scheme::Hybrid(
            HybridParams::new(FieldModulus::new(q).unwrap(), k1, k2, n, tau, ell).unwrap(),
            Variant::Optimal,
        );
        let report = check_scheme(&scheme, 1).unwrap();
        let size = |what: &str| report.size(what).unwrap();
        assert_eq!(size("share").elements, 1);
        assert_eq!(size("time-signal").elements, ell);
        assert_eq!(size("master-key").elements, tau * ell);
        assert_eq!(size("share").bound, Some(1));
        assert_eq!(size("time-signal").bound, Some(ell));
        assert_eq!(size("master-key").bound, Some(tau * ell));
        assert!(report.is_optimal());
    }
    // hybrid-naive: the two-element share exceeds the one-element bound.
    let scheme = Scheme::Hybrid(
        HybridParams::new(FieldModulus::new(3).unwrap(), 1, 2, 2, 2, 0).unwrap(),
        Variant::Naive,
    );
    let report = check_scheme(&scheme, 1).unwrap();
    let share = report.size("share").unwrap();
    assert_eq!(share.elements, 2);
    assert_eq!(share.bound, Some(1));
    assert_eq!(share.optimal, Some(false));
    assert!(report.all_pass(), "naive stays secure, just not optimal");
    assert!(!report.is_optimal());
    println!("ACCEPTANCE 4 (size optimality): PASS — equalities hold; naive share = 2 exceeds bound");
}

#[test]
fn criterion_5_degenerate_plain_sharing() {
    // k1 = k2 = 2 with capacity 0: signals are empty and the scheme behaves
    // as plain 2-of-n sharing.
    let params = HybridParams::new(FieldModulus::new(3).unwrap(), 2, 2, 2, 2, 0).unwrap();
    let scheme = Scheme::Hybrid(params, Variant::Optimal);

    let mut rng = SeededRng::from_seed([21u8; 32]);
    let key = hybrid::initialize(&params, Variant::Optimal, &mut rng);
    let secret = params.modulus().element(2);
    let (shares, public) = hybrid::share_optimal(&key, &params, secret, 1, &mut rng).unwrap();
    assert!(public.values().is_empty());
    let signal = hybrid::extract(&key, 1).unwrap();
    assert_eq!(signal.element_count(), 0, "signals are empty");
    assert_eq!(
        hybrid::reconstruct_without_signal(&shares, &params).unwrap(),
        secret,
        "k shares alone reconstruct"
    );
    assert_eq!(
        hybrid::reconstruct_with_signal(&shares, None, &signal, &params).unwrap(),
        secret
    );

    for t in 1..=2 {
        let report = check_scheme(&scheme, t).unwrap();
        assert!(report.all_pass(), "{}", report.render());
        assert!(report.is_optimal(), "0-element signal meets the 0 bound");
        assert!(assert_correctness_rows(&report, "correctness-without-signal") > 0);
        assert!(assert_secrecy_rows(&report, "threshold-secrecy") > 0);
    }
    println!("ACCEPTANCE 5 (degenerate equivalence): PASS — behaves as plain threshold sharing");
}

#[test]
fn criterion_6_mutation_sensitivity() {
    let uniform3 = SecretDistribution::uniform(3);
    let kn_suite = Scheme::Kn(KnParams::new(FieldModulus::new(3).unwrap(), 2, 2, 2).unwrap());
    let optimal_suite = Scheme::Hybrid(
        HybridParams::new(FieldModulus::new(3).unwrap(), 1, 2, 2, 2, 1).unwrap(),
        Variant::Optimal,
    );
    let naive_suite = Scheme::Hybrid(
        HybridParams::new(FieldModulus::new(3).unwrap(), 1, 2, 2, 2, 0).unwrap(),
        Variant::Naive,
    );
    let cases = [
        (&kn_suite, Mutation::ConstantTimeKeys),
        (&kn_suite, Mutation::ReducedDegree),
        (&optimal_suite, Mutation::ConstantTimeKeys),
        (&optimal_suite, Mutation::UnmaskedPublicParams),
        (&naive_suite, Mutation::ReducedDegree),
    ];
    for (scheme, mutation) in cases {
        let report =
            check_scheme_with(scheme, 1, &uniform3, DEFAULT_WORLD_CAP, Some(mutation)).unwrap();
        assert!(
            !report.all_pass(),
            "{} on {} went undetected:\n{}",
            mutation.label(),
            scheme.label(),
            report.render()
        );
        assert!(report.failed() > 0);
    }
    println!("ACCEPTANCE 6 (mutation sensitivity): PASS — all canned defects detected as FAIL");
}

#[test]
fn criterion_7_tre_demo_entropy() {
    let report = check_tre_demo(5, [7u8; 32]).unwrap();
    assert_eq!(report.world_count, 5usize.pow(5));
    let h_m = 5f64.log2();
    for name in ["pre-signal-secrecy", "pad-secrecy"] {
        let row = report.conditions.iter().find(|c| c.name == name).unwrap();
        assert!(
            (row.entropy_bits - h_m).abs() <= ENTROPY_TOLERANCE_BITS,
            "{name}: {} vs {h_m}",
            row.entropy_bits
        );
    }
    let recovery = report
        .conditions
        .iter()
        .find(|c| c.name == "post-signal-recovery")
        .unwrap();
    assert!(recovery.exact, "recovery must be exact for all messages");
    assert!(report.all_pass(), "{}", report.render());
    println!("ACCEPTANCE 7 (timed-release encryption demo): PASS — pre-signal view leaks nothing");
}

fn run_binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_trss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn archive_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut entries: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    entries.sort();
    entries
        .into_iter()
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).unwrap(),
            )
        })
        .collect()
}

#[test]
fn criterion_8_cli_determinism_and_golden_files() {
    let tmp = tempfile::TempDir::new().unwrap();
    let run_ceremony = |dir: &Path| {
        for args in [
            vec![
                "init",
                "--scheme",
                "hybrid-optimal",
                "--q",
                "7",
                "--k1",
                "1",
                "--k2",
                "2",
                "--n",
                "3",
                "--tau",
                "2",
                "--ell",
                "1",
                "--seed",
                "0102030405060708",
                "--outdir",
                dir.to_str().unwrap(),
            ],
            vec![
                "share",
                "--archive",
                dir.to_str().unwrap(),
                "--secret",
                "5",
                "--t",
                "2",
                "--seed",
                "f00d",
            ],
            vec!["extract", "--archive", dir.to_str().unwrap(), "--all"],
        ] {
            let out = run_binary(&args);
            assert!(
                out.status.success(),
                "{args:?}: {}",
                String::from_utf8_lossy(&out.stderr)
            );
        }
    };

    let dir_a = tmp.path().join("a");
    let dir_b = tmp.path().join("b");
    run_ceremony(&dir_a);
    run_ceremony(&dir_b);

    let a = archive_bytes(&dir_a);
    let b = archive_bytes(&dir_b);
    assert_eq!(a, b, "two seeded runs must be byte-identical");

    let names: BTreeSet<&str> = a.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(
        names,
        BTreeSet::from([
            "manifest", "master.key", "public.2", "share.1", "share.2", "share.3", "signal.1",
            "signal.2",
        ])
    );

    // Golden files: frozen expected bytes for this seed pair.
    let golden: &[(&str, &str)] = &[
        (
            "manifest",
            "trss manifest v1\nscheme = hybrid-optimal\nq = 7\nk1 = 1\nk2 = 2\nn = 3\ntau = 2\nell = 1\n",
        ),
        ("master.key", GOLDEN_MASTER_KEY),
        ("share.1", GOLDEN_SHARE_1),
        ("signal.2", GOLDEN_SIGNAL_2),
        ("public.2", GOLDEN_PUBLIC_2),
    ];
    for (name, want) in golden {
        let got = &a.iter().find(|(n, _)| n == name).unwrap().1;
        assert_eq!(
            std::str::from_utf8(got).unwrap(),
            *want,
            "golden mismatch for {name}"
        );
    }

    // The recovered secret comes back over the CLI as well.
    let out = run_binary(&[
        "reconstruct",
        "--archive",
        dir_a.to_str().unwrap(),
        "--mode",
        "with-signal",
        "--share",
        dir_a.join("share.2").to_str().unwrap(),
        "--signal",
        dir_a.join("signal.2").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "5\n");

    println!("ACCEPTANCE 8 (CLI determinism): PASS — byte-identical archives and golden files");
}

// Frozen bytes for the fixed seeds above; computed once from the seeded
// ChaCha20 stream and pinned so platform or toolchain drift surfaces here.
const GOLDEN_MASTER_KEY: &str = "trss master-key v1\nmask.1.1 = 1\nmask.2.1 = 4\n";
const GOLDEN_SHARE_1: &str = "trss share v1\nparticipant = 1\ntime = 2\nvalue = 0\n";
const GOLDEN_SIGNAL_2: &str = "trss signal v1\ntime = 2\nmask.1 = 4\n";
const GOLDEN_PUBLIC_2: &str = "trss public-params v1\ntime = 2\nmasked.1 = 6\n";
