//! Scheme-wide security checking and the report it produces.
//!
//! [`check_scheme`] enumerates the probability space of one dealing and
//! walks *every* coalition in each relevant size band — the security
//! conditions are universally quantified, so nothing is sampled:
//!
//! * `correctness` rows: the coalition's view must determine the secret,
//!   decided exactly on rationals.
//! * secrecy rows: the view's conditional entropy must equal H(S) to within
//!   [`ENTROPY_TOLERANCE_BITS`].
//!
//! A size table compares the field elements per share, per signal and in the
//! master key against the scheme's proven minimums. Secrecy and correctness
//! decide pass/fail; sizes decide only the `optimal` verdict (the naive
//! hybrid construction passes while exceeding the share bound, which is the
//! point of it).

use crate::error::{Error, Result};
use crate::hybrid::Variant;
use crate::scheme::Scheme;

use super::dist::SecretDistribution;
use super::entropy::{
    all_signals, coalition_shares, conditional_entropy, exactly_determined, signals_except, Var,
};
use super::worlds::{enumerate_worlds_mutated, Mutation, WorldEnumeration, DEFAULT_WORLD_CAP};

/// Absolute tolerance for every entropy-equality assertion, in bits.
pub const ENTROPY_TOLERANCE_BITS: f64 = 1e-9;

/// Coalition iteration is exhaustive, so verifier runs cap n.
pub const MAX_ORACLE_PARTICIPANTS: u64 = 6;

#[derive(Clone, Debug)]
pub struct ConditionCheck {
    /// Condition family, e.g. `threshold-secrecy`.
    pub name: &'static str,
    /// The coalition under test, by participant id.
    pub coalition: Vec<u64>,
    /// Measured H(secret | coalition view) in bits.
    pub entropy_bits: f64,
    /// Required value: H(S) for secrecy rows, 0 for correctness rows.
    pub expected_bits: f64,
    /// True when a zero was established by the exact rational check rather
    /// than by floating-point comparison.
    pub exact: bool,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct SizeCheck {
    pub quantity: &'static str,
    /// Measured field elements in the artifact.
    pub elements: u64,
    /// Proven minimum, when the scheme's premise for that bound holds.
    pub bound: Option<u64>,
    /// `Some(true)` when measured == bound.
    pub optimal: Option<bool>,
}

#[derive(Debug)]
pub struct EntropyReport {
    pub scheme_id: String,
    pub scheme_label: String,
    pub time: u64,
    pub world_count: usize,
    pub secret_entropy_bits: f64,
    pub uniform_secret: bool,
    pub mutation: Option<&'static str>,
    pub conditions: Vec<ConditionCheck>,
    pub sizes: Vec<SizeCheck>,
}

impl EntropyReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> usize {
        self.conditions.iter().filter(|c| !c.pass).count()
    }

    /// True when every measured size meets its proven minimum exactly.
    pub fn is_optimal(&self) -> bool {
        self.sizes.iter().all(|s| s.optimal == Some(true))
    }

    pub fn size(&self, quantity: &str) -> Option<&SizeCheck> {
        self.sizes.iter().find(|s| s.quantity == quantity)
    }

    /// Human-readable report followed by a machine-readable key=value block.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        push(&mut out, "=== security and size report ===".into());
        push(&mut out, format!("scheme       : {}", self.scheme_label));
        push(&mut out, format!("dealt period : {}", self.time));
        push(&mut out, format!("worlds       : {}", self.world_count));
        push(
            &mut out,
            format!(
                "H(secret)    : {:.9} bits ({} distribution)",
                self.secret_entropy_bits,
                if self.uniform_secret { "uniform" } else { "custom" }
            ),
        );
        push(
            &mut out,
            format!("mutation     : {}", self.mutation.unwrap_or("none")),
        );
        push(&mut out, "conditions:".into());
        for c in &self.conditions {
            let coalition = c
                .coalition
                .iter()
                .map(|id| format!("P{id}"))
                .collect::<Vec<_>>()
                .join(",");
            let value = if c.exact {
                "0 (exact)".to_string()
            } else {
                format!("{:.9}", c.entropy_bits)
            };
            push(
                &mut out,
                format!(
                    "  [{}] {:<28} {{{}}} H = {} (want {:.9})",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    coalition,
                    value,
                    c.expected_bits
                ),
            );
        }
        if !self.sizes.is_empty() {
            push(&mut out, "sizes (field elements):".into());
            for s in &self.sizes {
                let verdict = match (s.bound, s.optimal) {
                    (Some(bound), Some(true)) => format!("bound {bound}, equality"),
                    (Some(bound), _) => format!("bound {bound}, exceeded"),
                    (None, _) => "bound n/a (share size above minimum)".into(),
                };
                push(
                    &mut out,
                    format!("  {:<12} {:>3}  ({verdict})", s.quantity, s.elements),
                );
            }
        }
        push(
            &mut out,
            format!(
                "result: {} ({}/{} conditions){}",
                if self.all_pass() { "PASS" } else { "FAIL" },
                self.conditions.len() - self.failed(),
                self.conditions.len(),
                if !self.sizes.is_empty() && self.is_optimal() {
                    ", sizes optimal"
                } else {
                    ""
                }
            ),
        );
        push(&mut out, "[machine]".into());
        push(&mut out, format!("scheme = {}", self.scheme_id));
        push(&mut out, format!("label = {}", self.scheme_label));
        push(&mut out, format!("time = {}", self.time));
        push(&mut out, format!("worlds = {}", self.world_count));
        push(
            &mut out,
            format!("secret.entropy_bits = {:.12}", self.secret_entropy_bits),
        );
        push(
            &mut out,
            format!("mutation = {}", self.mutation.unwrap_or("none")),
        );
        push(
            &mut out,
            format!("conditions.total = {}", self.conditions.len()),
        );
        push(&mut out, format!("conditions.failed = {}", self.failed()));
        for s in &self.sizes {
            push(
                &mut out,
                format!("size.{}.elements = {}", s.quantity, s.elements),
            );
            if let Some(bound) = s.bound {
                push(&mut out, format!("size.{}.bound = {}", s.quantity, bound));
            }
        }
        push(&mut out, format!("pass = {}", self.all_pass()));
        if !self.sizes.is_empty() {
            push(&mut out, format!("optimal = {}", self.is_optimal()));
        }
        out
    }
}

/// Every subset of {1..=n} whose size lies in `lo..=hi`, in a fixed order.
fn coalitions(n: u64, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    for mask in 0u64..(1 << n) {
        let size = mask.count_ones() as u64;
        if size >= lo.max(1) && size <= hi {
            out.push((1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect());
        }
    }
    out.sort();
    out.sort_by_key(|c: &Vec<u64>| c.len());
    out
}

/// Checks one dealing time with the uniform secret distribution and default
/// world cap.
pub fn check_scheme(scheme: &Scheme, time: u64) -> Result<EntropyReport> {
    check_scheme_with(
        scheme,
        time,
        &SecretDistribution::uniform(scheme.modulus().order()),
        DEFAULT_WORLD_CAP,
        None,
    )
}

pub fn check_scheme_with(
    scheme: &Scheme,
    time: u64,
    distribution: &SecretDistribution,
    cap: u64,
    mutation: Option<Mutation>,
) -> Result<EntropyReport> {
    let n = scheme.participants();
    if n > MAX_ORACLE_PARTICIPANTS {
        return Err(Error::InvalidParams(format!(
            "the verifier iterates all coalitions and caps n at {MAX_ORACLE_PARTICIPANTS} (got {n})"
        )));
    }
    let en = enumerate_worlds_mutated(scheme, time, distribution, cap, mutation)?;
    let secret_bits = distribution.entropy_bits();
    let uniform = *distribution == SecretDistribution::uniform(scheme.modulus().order());

    let mut conditions = Vec::new();
    let secrecy = |en: &WorldEnumeration,
                       conditions: &mut Vec<ConditionCheck>,
                       name: &'static str,
                       coalition: Vec<u64>,
                       mut given: Vec<Var>|
     -> Result<()> {
        given.splice(0..0, coalition_shares(&coalition));
        let bits = conditional_entropy(en, Var::Secret, &given)?;
        conditions.push(ConditionCheck {
            name,
            coalition,
            entropy_bits: bits,
            expected_bits: secret_bits,
            exact: false,
            pass: (bits - secret_bits).abs() <= ENTROPY_TOLERANCE_BITS,
        });
        Ok(())
    };
    let correctness = |en: &WorldEnumeration,
                       conditions: &mut Vec<ConditionCheck>,
                       name: &'static str,
                       coalition: Vec<u64>,
                       mut given: Vec<Var>|
     -> Result<()> {
        given.splice(0..0, coalition_shares(&coalition));
        let exact = exactly_determined(en, Var::Secret, &given)?;
        let bits = if exact {
            0.0
        } else {
            conditional_entropy(en, Var::Secret, &given)?
        };
        conditions.push(ConditionCheck {
            name,
            coalition,
            entropy_bits: bits,
            expected_bits: 0.0,
            exact,
            pass: exact,
        });
        Ok(())
    };

    let tau = scheme.periods();
    match scheme {
        Scheme::Kn(params) => {
            let k = params.threshold();
            for coalition in coalitions(n, k, n) {
                correctness(
                    &en,
                    &mut conditions,
                    "correctness",
                    coalition,
                    vec![Var::Signal(time)],
                )?;
            }
            for coalition in coalitions(n, 1, k - 1) {
                secrecy(
                    &en,
                    &mut conditions,
                    "threshold-secrecy",
                    coalition,
                    all_signals(tau),
                )?;
            }
            for coalition in coalitions(n, k, n) {
                secrecy(
                    &en,
                    &mut conditions,
                    "timed-release-secrecy",
                    coalition,
                    signals_except(time, tau),
                )?;
            }
            for coalition in coalitions(n, 1, k - 1) {
                secrecy(
                    &en,
                    &mut conditions,
                    "server-collusion-secrecy",
                    coalition,
                    vec![Var::MasterKey],
                )?;
            }
        }
        Scheme::Hybrid(params, _) => {
            let k1 = params.signal_threshold();
            let k2 = params.plain_threshold();
            // Published values are public; every adversary view includes them.
            for coalition in coalitions(n, k1, k2 - 1) {
                correctness(
                    &en,
                    &mut conditions,
                    "correctness-with-signal",
                    coalition,
                    vec![Var::Signal(time), Var::PublicParams],
                )?;
            }
            for coalition in coalitions(n, k2, n) {
                correctness(
                    &en,
                    &mut conditions,
                    "correctness-without-signal",
                    coalition,
                    vec![],
                )?;
            }
            for coalition in coalitions(n, 1, k1 - 1) {
                let mut given = all_signals(tau);
                given.push(Var::PublicParams);
                secrecy(&en, &mut conditions, "threshold-secrecy", coalition, given)?;
            }
            for coalition in coalitions(n, k1, k2 - 1) {
                let mut given = signals_except(time, tau);
                given.push(Var::PublicParams);
                secrecy(
                    &en,
                    &mut conditions,
                    "timed-release-secrecy",
                    coalition,
                    given,
                )?;
            }
        }
    }

    let sizes = measure_sizes(scheme, &en, time);
    Ok(EntropyReport {
        scheme_id: scheme.id().to_string(),
        scheme_label: scheme.label(),
        time,
        world_count: en.world_count(),
        secret_entropy_bits: secret_bits,
        uniform_secret: uniform,
        mutation: mutation.map(Mutation::label),
        conditions,
        sizes,
    })
}

fn measure_sizes(scheme: &Scheme, en: &WorldEnumeration, time: u64) -> Vec<SizeCheck> {
    let world = &en.worlds()[0];
    let share = world.shares[0].len() as u64;
    let signal = world.signals[(time - 1) as usize].len() as u64;
    let key = world.master_key.len() as u64;
    let row = |quantity: &'static str, elements: u64, bound: Option<u64>| SizeCheck {
        quantity,
        elements,
        bound,
        optimal: bound.map(|b| elements == b),
    };
    match scheme {
        Scheme::Kn(params) => vec![
            row("share", share, Some(1)),
            row("time-signal", signal, Some(1)),
            row("master-key", key, Some(params.periods())),
        ],
        Scheme::Hybrid(_, Variant::Naive) => vec![
            // Two elements per share; the signal and key minimums are proven
            // only for schemes whose shares are already minimal.
            row("share", share, Some(1)),
            row("time-signal", signal, None),
            row("master-key", key, None),
        ],
        Scheme::Hybrid(params, Variant::Optimal) => {
            let span = params.masked_span();
            vec![
                row("share", share, Some(1)),
                row("time-signal", signal, Some(span)),
                row("master-key", key, Some(params.periods() * span)),
            ]
        }
    }
}
