//! Complete enumeration of the random experiment behind one dealing.
//!
//! A *world* fixes every coin: the secret, the whole master key, and the
//! dealer's free polynomial coefficients. All derived values — shares,
//! signals, published parameters — are computed by running the real scheme
//! operations with a scripted randomness source, so the verifier measures
//! the code that ships, not a model of it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::hybrid::{self, HybridShareValue, HybridSignalValue, Variant};
use crate::kn;
use crate::rng::ScriptedSource;
use crate::scheme::Scheme;

use super::dist::SecretDistribution;

/// Default ceiling on enumerated worlds.
pub const DEFAULT_WORLD_CAP: u64 = 10_000_000;

/// Deliberate scheme defects, used to demonstrate that the verifier actually
/// rejects broken constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// The time-server reuses period 1's mask (row) for every period.
    ConstantTimeKeys,
    /// The dealer zeroes the sharing polynomial's top coefficient, dropping
    /// its effective degree by one.
    ReducedDegree,
    /// The dealer publishes the masked coefficients without masking them.
    UnmaskedPublicParams,
}

impl Mutation {
    pub fn label(self) -> &'static str {
        match self {
            Mutation::ConstantTimeKeys => "constant-time-keys",
            Mutation::ReducedDegree => "reduced-degree",
            Mutation::UnmaskedPublicParams => "unmasked-public-params",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "constant-time-keys" => Ok(Mutation::ConstantTimeKeys),
            "reduced-degree" => Ok(Mutation::ReducedDegree),
            "unmasked-public-params" => Ok(Mutation::UnmaskedPublicParams),
            other => Err(Error::InvalidParams(format!("unknown mutation: {other}"))),
        }
    }
}

/// One fully determined outcome of the experiment.
#[derive(Clone, Debug)]
pub struct World {
    pub secret: u64,
    /// Master key values in draw order.
    pub master_key: Vec<u64>,
    /// Dealer's free coefficients in draw order.
    pub coefficients: Vec<u64>,
    /// Per participant (index id-1), the share's field elements.
    pub shares: Vec<Vec<u64>>,
    /// Per period (index t-1), the signal's field elements.
    pub signals: Vec<Vec<u64>>,
    /// Published values of the dealing, if the scheme has any.
    pub public_values: Vec<u64>,
    pub weight: BigRational,
}

/// The whole probability space for one scheme, dealing time and secret
/// distribution.
#[derive(Debug)]
pub struct WorldEnumeration {
    scheme: Scheme,
    time: u64,
    distribution: SecretDistribution,
    worlds: Vec<World>,
}

impl WorldEnumeration {
    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn distribution(&self) -> &SecretDistribution {
        &self.distribution
    }

    pub fn worlds(&self) -> &[World] {
        &self.worlds
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    /// Exact total probability mass; one by construction.
    pub fn total_weight(&self) -> BigRational {
        self.worlds.iter().map(|w| w.weight.clone()).sum()
    }
}

/// Free dimensions of the experiment, besides the secret itself.
fn key_dims(scheme: &Scheme) -> u64 {
    match scheme {
        Scheme::Kn(p) => p.periods(),
        Scheme::Hybrid(p, Variant::Naive) => p.periods(),
        Scheme::Hybrid(p, Variant::Optimal) => p.periods() * p.signal_capacity(),
    }
}

fn coeff_dims(scheme: &Scheme) -> u64 {
    match scheme {
        Scheme::Kn(p) => p.threshold() - 1,
        Scheme::Hybrid(p, Variant::Naive) => {
            (p.signal_threshold() - 1) + (p.plain_threshold() - 1)
        }
        Scheme::Hybrid(p, Variant::Optimal) => p.plain_threshold() - 1,
    }
}

/// Odometer over `dims` digits in base `q`.
struct Assignments {
    q: u64,
    digits: Vec<u64>,
    done: bool,
}

impl Assignments {
    fn new(q: u64, dims: u64) -> Self {
        Assignments {
            q,
            digits: vec![0; dims as usize],
            done: false,
        }
    }
}

impl Iterator for Assignments {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let current = self.digits.clone();
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.q {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(current)
    }
}

pub fn enumerate_worlds(
    scheme: &Scheme,
    time: u64,
    distribution: &SecretDistribution,
    cap: u64,
) -> Result<WorldEnumeration> {
    enumerate_worlds_mutated(scheme, time, distribution, cap, None)
}

pub fn enumerate_worlds_mutated(
    scheme: &Scheme,
    time: u64,
    distribution: &SecretDistribution,
    cap: u64,
    mutation: Option<Mutation>,
) -> Result<WorldEnumeration> {
    let q = scheme.modulus().order();
    let periods = scheme.periods();
    if time < 1 || time > periods {
        return Err(Error::TimeOutOfRange { time, periods });
    }
    if distribution.len() as u64 != q {
        return Err(Error::InvalidParams(format!(
            "secret distribution has {} entries, the field has {q}",
            distribution.len()
        )));
    }
    if let Some(m) = mutation {
        check_mutation_applies(scheme, m)?;
    }

    let kd = key_dims(scheme);
    let cd = coeff_dims(scheme);
    let mut worlds_bound: u128 = distribution.support_len() as u128;
    for _ in 0..kd + cd {
        worlds_bound = worlds_bound
            .checked_mul(q as u128)
            .ok_or(Error::EnumerationTooLarge {
                worlds: u128::MAX,
                cap,
            })?;
    }
    if worlds_bound > cap as u128 {
        return Err(Error::EnumerationTooLarge {
            worlds: worlds_bound,
            cap,
        });
    }

    // weight = P(secret) / q^(key dims + coefficient dims)
    let dims_mass = BigRational::new(BigInt::one(), BigInt::from(q).pow((kd + cd) as u32));

    let mut worlds = Vec::with_capacity(worlds_bound as usize);
    for secret in distribution.support() {
        let weight = distribution.prob(secret) * &dims_mass;
        for key in Assignments::new(q, kd) {
            for coeffs in Assignments::new(q, cd) {
                let world = derive_world(scheme, time, secret, &key, &coeffs, mutation, &weight)?;
                worlds.push(world);
            }
        }
    }

    let enumeration = WorldEnumeration {
        scheme: *scheme,
        time,
        distribution: distribution.clone(),
        worlds,
    };
    debug_assert!(enumeration.total_weight().is_one());
    Ok(enumeration)
}

fn check_mutation_applies(scheme: &Scheme, mutation: Mutation) -> Result<()> {
    match mutation {
        Mutation::ConstantTimeKeys if scheme.periods() < 2 => Err(Error::InvalidParams(
            "constant-time-keys needs at least two periods to change anything".into(),
        )),
        Mutation::ReducedDegree if coeff_dims(scheme) == 0 => Err(Error::InvalidParams(
            "reduced-degree needs a dealing with at least one random coefficient".into(),
        )),
        Mutation::UnmaskedPublicParams => match scheme {
            Scheme::Hybrid(p, Variant::Optimal) if p.masked_span() > 0 => Ok(()),
            _ => Err(Error::InvalidParams(
                "unmasked-public-params applies only to hybrid-optimal dealings that mask coefficients".into(),
            )),
        },
        _ => Ok(()),
    }
}

/// Runs the real phases with scripted randomness and records every value.
fn derive_world(
    scheme: &Scheme,
    time: u64,
    secret: u64,
    key: &[u64],
    coeffs: &[u64],
    mutation: Option<Mutation>,
    weight: &BigRational,
) -> Result<World> {
    let modulus = scheme.modulus();
    let periods = scheme.periods();

    // The time-server reusing period 1's mask is modelled by handing the
    // real initializer a constant script.
    let effective_key: Vec<u64> = if mutation == Some(Mutation::ConstantTimeKeys) {
        let kd = key.len() as u64;
        let row = kd / periods;
        (0..kd).map(|i| key[(i % row) as usize]).collect()
    } else {
        key.to_vec()
    };
    let effective_coeffs: Vec<u64> = if mutation == Some(Mutation::ReducedDegree) {
        let mut c = coeffs.to_vec();
        *c.last_mut().expect("checked non-empty") = 0;
        c
    } else {
        coeffs.to_vec()
    };

    let secret_element = modulus.element(secret);
    let (shares, signals, mut public_values) = match scheme {
        Scheme::Kn(params) => {
            let mut key_src = ScriptedSource::new(effective_key);
            let master = kn::initialize(params, &mut key_src);
            assert!(key_src.exhausted(), "initialize consumed every scripted key");
            let mut coeff_src = ScriptedSource::new(effective_coeffs);
            let shares = kn::share(&master, params, secret_element, time, &mut coeff_src)?;
            assert!(coeff_src.exhausted(), "share consumed every coefficient");
            let signals = (1..=periods)
                .map(|t| Ok(vec![kn::extract(&master, t)?.value().value()]))
                .collect::<Result<Vec<_>>>()?;
            let shares = shares
                .iter()
                .map(|s| vec![s.value().value()])
                .collect::<Vec<_>>();
            (shares, signals, Vec::new())
        }
        Scheme::Hybrid(params, variant) => {
            let mut key_src = ScriptedSource::new(effective_key);
            let master = hybrid::initialize(params, *variant, &mut key_src);
            assert!(key_src.exhausted(), "initialize consumed every scripted key");
            let mut coeff_src = ScriptedSource::new(effective_coeffs);
            let (shares, public) = match variant {
                Variant::Naive => {
                    let shares =
                        hybrid::share_naive(&master, params, secret_element, time, &mut coeff_src)?;
                    (shares, Vec::new())
                }
                Variant::Optimal => {
                    let (shares, public) = hybrid::share_optimal(
                        &master,
                        params,
                        secret_element,
                        time,
                        &mut coeff_src,
                    )?;
                    (shares, public.values().iter().map(|v| v.value()).collect())
                }
            };
            assert!(coeff_src.exhausted(), "share consumed every coefficient");
            let signals = (1..=periods)
                .map(|t| {
                    let signal = hybrid::extract(&master, t)?;
                    Ok(match signal.value() {
                        HybridSignalValue::Naive(v) => vec![v.value()],
                        HybridSignalValue::Optimal(row) => {
                            row.iter().map(|v| v.value()).collect()
                        }
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let shares = shares
                .iter()
                .map(|s| match s.value() {
                    HybridShareValue::Naive { timed, plain } => {
                        vec![timed.value(), plain.value()]
                    }
                    HybridShareValue::Optimal(v) => vec![v.value()],
                })
                .collect::<Vec<_>>();
            (shares, signals, public)
        }
    };

    if mutation == Some(Mutation::UnmaskedPublicParams) {
        // Publish the dealt coefficients directly: coefficient k1-1+i sits at
        // draw index k1-2+i of the coefficient script.
        if let Scheme::Hybrid(params, Variant::Optimal) = scheme {
            let k1 = params.signal_threshold();
            public_values = (1..=params.masked_span())
                .map(|i| coeffs[(k1 + i - 2) as usize])
                .collect();
        }
    }

    Ok(World {
        secret,
        master_key: key.to_vec(),
        coefficients: coeffs.to_vec(),
        shares,
        signals,
        public_values,
        weight: weight.clone(),
    })
}
