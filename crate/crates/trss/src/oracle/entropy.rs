//! Exact conditional entropy over an enumeration.
//!
//! Probabilities stay exact rationals through every grouping and sum;
//! floating point enters only at the final logarithms. Determinism checks
//! ("the secret is a function of this view") never touch floats at all.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::dist::rational_to_f64;
use super::worlds::{World, WorldEnumeration};
use crate::error::{Error, Result};
use crate::scheme::Scheme;

/// Names one random variable of the experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Secret,
    /// One participant's share at the dealt time.
    Share(u64),
    /// The time-signal of one period.
    Signal(u64),
    /// The whole master key.
    MasterKey,
    /// The dealing's published values (empty for schemes without any).
    PublicParams,
}

/// Selectors for every signal.
pub fn all_signals(periods: u64) -> Vec<Var> {
    (1..=periods).map(Var::Signal).collect()
}

/// Selectors for every signal except the one for `time`.
pub fn signals_except(time: u64, periods: u64) -> Vec<Var> {
    (1..=periods)
        .filter(|&t| t != time)
        .map(Var::Signal)
        .collect()
}

/// Selectors for the shares of one coalition.
pub fn coalition_shares(coalition: &[u64]) -> Vec<Var> {
    coalition.iter().copied().map(Var::Share).collect()
}

fn append_value(world: &World, scheme: &Scheme, var: Var, out: &mut Vec<u64>) -> Result<()> {
    match var {
        Var::Secret => out.push(world.secret),
        Var::Share(id) => {
            if id < 1 || id > scheme.participants() {
                return Err(Error::UnknownSelector(format!(
                    "share of participant {id} (n={})",
                    scheme.participants()
                )));
            }
            out.extend(&world.shares[(id - 1) as usize]);
        }
        Var::Signal(t) => {
            if t < 1 || t > scheme.periods() {
                return Err(Error::UnknownSelector(format!(
                    "signal of period {t} (tau={})",
                    scheme.periods()
                )));
            }
            out.extend(&world.signals[(t - 1) as usize]);
        }
        Var::MasterKey => out.extend(&world.master_key),
        Var::PublicParams => out.extend(&world.public_values),
    }
    Ok(())
}

fn value_of(world: &World, scheme: &Scheme, vars: &[Var]) -> Result<Vec<u64>> {
    // Per-variable widths are fixed across worlds, so plain concatenation
    // is collision-free.
    let mut out = Vec::new();
    for &var in vars {
        append_value(world, scheme, var, &mut out)?;
    }
    Ok(out)
}

/// Joint mass grouped first by the conditioning value, then by the target.
pub(super) type Groups = BTreeMap<Vec<u64>, BTreeMap<Vec<u64>, BigRational>>;

pub(super) fn group_rows(
    rows: impl IntoIterator<Item = (Vec<u64>, Vec<u64>, BigRational)>,
) -> Groups {
    let mut groups: Groups = BTreeMap::new();
    for (cond, target, weight) in rows {
        let slot = groups
            .entry(cond)
            .or_default()
            .entry(target)
            .or_insert_with(BigRational::zero);
        *slot += weight;
    }
    groups
}

pub(super) fn entropy_of(groups: &Groups) -> f64 {
    let mut bits = 0.0f64;
    for by_target in groups.values() {
        let class_mass: BigRational = by_target.values().cloned().sum();
        for mass in by_target.values() {
            // mass * log2(class_mass / mass), all ratios exact until here
            let ratio = rational_to_f64(&(&class_mass / mass));
            bits += rational_to_f64(mass) * ratio.log2();
        }
    }
    // Tiny negative residue can appear from float rounding of exact zeros.
    bits.max(0.0)
}

pub(super) fn determined(groups: &Groups) -> bool {
    groups.values().all(|by_target| by_target.len() == 1)
}

fn grouped(en: &WorldEnumeration, target: Var, given: &[Var]) -> Result<Groups> {
    let rows = en
        .worlds()
        .iter()
        .map(|world| {
            let cond = value_of(world, en.scheme(), given)?;
            let tgt = value_of(world, en.scheme(), &[target])?;
            Ok((cond, tgt, world.weight.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(group_rows(rows))
}

/// Shannon conditional entropy H(target | given), in bits.
pub fn conditional_entropy(en: &WorldEnumeration, target: Var, given: &[Var]) -> Result<f64> {
    Ok(entropy_of(&grouped(en, target, given)?))
}

/// True when the target takes a single value inside every conditioning
/// class — H(target | given) = 0, decided with rationals only.
pub fn exactly_determined(en: &WorldEnumeration, target: Var, given: &[Var]) -> Result<bool> {
    Ok(determined(&grouped(en, target, given)?))
}
