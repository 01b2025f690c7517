//! Exact rational distributions over the secret space.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A probability for every secret value in `0..q`, as exact rationals that
/// must sum to one. The default is uniform; the security conditions are
/// distribution-relative, so any distribution can be checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecretDistribution {
    probs: Vec<BigRational>,
}

impl SecretDistribution {
    pub fn uniform(order: u64) -> Self {
        let p = BigRational::new(BigInt::one(), BigInt::from(order));
        SecretDistribution {
            probs: vec![p; order as usize],
        }
    }

    pub fn new(probs: Vec<BigRational>) -> Result<Self> {
        if probs.iter().any(|p| p.is_negative()) {
            return Err(Error::InvalidParams(
                "secret probabilities must be non-negative".into(),
            ));
        }
        let total: BigRational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidParams(format!(
                "secret probabilities must sum to 1 exactly (got {total})"
            )));
        }
        Ok(SecretDistribution { probs })
    }

    /// Parses `a/b,c,...` with one entry per secret value.
    pub fn parse(text: &str) -> Result<Self> {
        let probs = text
            .split(',')
            .map(|entry| {
                let entry = entry.trim();
                let (num, den) = match entry.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (entry, "1"),
                };
                let num: i64 = num.parse().map_err(|_| {
                    Error::InvalidParams(format!("bad probability numerator: {entry}"))
                })?;
                let den: i64 = den.parse().map_err(|_| {
                    Error::InvalidParams(format!("bad probability denominator: {entry}"))
                })?;
                if den == 0 {
                    return Err(Error::InvalidParams(format!(
                        "zero denominator in probability: {entry}"
                    )));
                }
                Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(probs)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn prob(&self, value: u64) -> &BigRational {
        &self.probs[value as usize]
    }

    /// Secret values with positive probability.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(v, _)| v as u64)
    }

    pub fn support_len(&self) -> u64 {
        self.support().count() as u64
    }

    /// Shannon entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        self.probs
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                let p = rational_to_f64(p);
                -p * p.log2()
            })
            .sum()
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().expect("ratio representable as f64")
}
