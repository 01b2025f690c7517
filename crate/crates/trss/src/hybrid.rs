//! The two-threshold timed-release scheme.
//!
//! A dealing fixes two thresholds k1 <= k2. Any k1 participants holding the
//! dealt period's time-signal can reconstruct; any k2 participants can
//! reconstruct from shares alone, at any time. Two constructions are
//! provided behind one share type:
//!
//! * **Naive** ([`share_naive`]): each participant holds evaluations of two
//!   polynomials — a "timed" one of degree k1-1 whose constant term is the
//!   masked secret, and a "plain" Shamir one of degree k2-1 whose constant
//!   term is the secret itself. Simple, but shares carry two field elements.
//! * **Optimal** ([`share_optimal`]): one polynomial of degree k2-1 with the
//!   secret as constant term. The dealer publishes its top k2-k1
//!   coefficients masked by the period's key row; holders of the signal can
//!   strip those coefficients off, dropping the effective degree to k1-1.
//!   Shares stay a single element — minimal — at the price of per-period key
//!   rows of a capacity `ell >= k2-k1` fixed at setup.
//!
//! With k1 = k2 (and capacity 0) the optimal construction is exactly plain
//! Shamir sharing: empty signals, no published values.
//!
//! Randomness order: `initialize` draws masks period-major (period 1 row
//! first), `share_naive` draws the timed polynomial's k1-1 coefficients then
//! the plain polynomial's k2-1, and `share_optimal` draws k2-1 coefficients.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldModulus};
use crate::poly::{lagrange_at_zero, EvalPoint, Polynomial};
use crate::rng::ElementSource;

/// Which construction a master key, share or signal belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Naive,
    Optimal,
}

/// Parameters (q, k1, k2, n, tau, ell).
///
/// `signal_capacity` (ell) is the number of masks per period in the optimal
/// construction; it bounds k2 - k1 for dealings and is ignored by the naive
/// construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HybridParams {
    modulus: FieldModulus,
    signal_threshold: u64,
    plain_threshold: u64,
    participants: u64,
    periods: u64,
    signal_capacity: u64,
}

impl HybridParams {
    pub fn new(
        modulus: FieldModulus,
        signal_threshold: u64,
        plain_threshold: u64,
        participants: u64,
        periods: u64,
        signal_capacity: u64,
    ) -> Result<Self> {
        let q = modulus.order();
        if signal_threshold < 1
            || signal_threshold > plain_threshold
            || plain_threshold > participants
        {
            return Err(Error::InvalidParams(format!(
                "thresholds must satisfy 1 <= k1 <= k2 <= n (got k1={signal_threshold}, k2={plain_threshold}, n={participants})"
            )));
        }
        if participants >= q || periods >= q {
            return Err(Error::InvalidParams(format!(
                "modulus must exceed max(n, tau): q={q}, n={participants}, tau={periods}"
            )));
        }
        if periods < 1 {
            return Err(Error::InvalidParams("tau must be at least 1".into()));
        }
        Ok(HybridParams {
            modulus,
            signal_threshold,
            plain_threshold,
            participants,
            periods,
            signal_capacity,
        })
    }

    pub fn modulus(&self) -> FieldModulus {
        self.modulus
    }

    /// k1: shares needed together with the time-signal.
    pub fn signal_threshold(&self) -> u64 {
        self.signal_threshold
    }

    /// k2: shares needed on their own.
    pub fn plain_threshold(&self) -> u64 {
        self.plain_threshold
    }

    pub fn participants(&self) -> u64 {
        self.participants
    }

    pub fn periods(&self) -> u64 {
        self.periods
    }

    /// ell: masks per period available to the optimal construction.
    pub fn signal_capacity(&self) -> u64 {
        self.signal_capacity
    }

    /// k2 - k1: how many coefficients a dealing masks.
    pub fn masked_span(&self) -> u64 {
        self.plain_threshold - self.signal_threshold
    }
}

/// Per-variant master key: one mask per period (naive) or a row of
/// `signal_capacity` masks per period (optimal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HybridMasterKey {
    Naive(Vec<FieldElement>),
    Optimal(Vec<Vec<FieldElement>>),
}

impl HybridMasterKey {
    pub fn variant(&self) -> Variant {
        match self {
            HybridMasterKey::Naive(_) => Variant::Naive,
            HybridMasterKey::Optimal(_) => Variant::Optimal,
        }
    }

    pub fn periods(&self) -> u64 {
        match self {
            HybridMasterKey::Naive(masks) => masks.len() as u64,
            HybridMasterKey::Optimal(rows) => rows.len() as u64,
        }
    }

    /// Total field elements held.
    pub fn element_count(&self) -> u64 {
        match self {
            HybridMasterKey::Naive(masks) => masks.len() as u64,
            HybridMasterKey::Optimal(rows) => rows.iter().map(|r| r.len() as u64).sum(),
        }
    }

    fn check_time(&self, time: u64) -> Result<()> {
        if time < 1 || time > self.periods() {
            return Err(Error::TimeOutOfRange {
                time,
                periods: self.periods(),
            });
        }
        Ok(())
    }
}

/// One participant's share: two evaluations (naive) or one (optimal).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HybridShareValue {
    Naive {
        timed: FieldElement,
        plain: FieldElement,
    },
    Optimal(FieldElement),
}

impl HybridShareValue {
    pub fn variant(&self) -> Variant {
        match self {
            HybridShareValue::Naive { .. } => Variant::Naive,
            HybridShareValue::Optimal(_) => Variant::Optimal,
        }
    }

    /// Field elements carried by one share.
    pub fn element_count(&self) -> u64 {
        match self {
            HybridShareValue::Naive { .. } => 2,
            HybridShareValue::Optimal(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HybridShare {
    participant: u64,
    time: u64,
    value: HybridShareValue,
}

impl HybridShare {
    pub fn new(participant: u64, time: u64, value: HybridShareValue) -> Self {
        HybridShare {
            participant,
            time,
            value,
        }
    }

    pub fn participant(&self) -> u64 {
        self.participant
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn value(&self) -> HybridShareValue {
        self.value
    }
}

/// The broadcast for one period: the single mask (naive) or the full mask
/// row (optimal). The optimal row always carries all `signal_capacity`
/// masks, whether or not a dealing consumes them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HybridSignalValue {
    Naive(FieldElement),
    Optimal(Vec<FieldElement>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HybridTimeSignal {
    time: u64,
    value: HybridSignalValue,
}

impl HybridTimeSignal {
    pub fn new(time: u64, value: HybridSignalValue) -> Self {
        HybridTimeSignal { time, value }
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn value(&self) -> &HybridSignalValue {
        &self.value
    }

    /// Field elements carried by the signal.
    pub fn element_count(&self) -> u64 {
        match &self.value {
            HybridSignalValue::Naive(_) => 1,
            HybridSignalValue::Optimal(masks) => masks.len() as u64,
        }
    }
}

/// The values a dealing publishes: entry i-1 is coefficient k1-1+i masked by
/// the period's i-th key mask. Public — every adversary is assumed to hold
/// them. Empty when k1 = k2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicParams {
    time: u64,
    values: Vec<FieldElement>,
}

impl PublicParams {
    pub fn new(time: u64, values: Vec<FieldElement>) -> Self {
        PublicParams { time, values }
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }
}

/// Trusted setup for either construction.
pub fn initialize<S: ElementSource + ?Sized>(
    params: &HybridParams,
    variant: Variant,
    source: &mut S,
) -> HybridMasterKey {
    match variant {
        Variant::Naive => HybridMasterKey::Naive(
            (0..params.periods)
                .map(|_| params.modulus.random_element(source))
                .collect(),
        ),
        Variant::Optimal => HybridMasterKey::Optimal(
            (0..params.periods)
                .map(|_| {
                    (0..params.signal_capacity)
                        .map(|_| params.modulus.random_element(source))
                        .collect()
                })
                .collect(),
        ),
    }
}

/// Naive dealing: a timed polynomial (constant secret + mask(t), degree
/// k1-1) and an independent plain polynomial (constant secret, degree k2-1);
/// each share pairs their evaluations.
pub fn share_naive<S: ElementSource + ?Sized>(
    key: &HybridMasterKey,
    params: &HybridParams,
    secret: FieldElement,
    time: u64,
    source: &mut S,
) -> Result<Vec<HybridShare>> {
    let HybridMasterKey::Naive(masks) = key else {
        return Err(Error::VariantMismatch);
    };
    key.check_time(time)?;
    let mask = masks[(time - 1) as usize];
    let timed = Polynomial::random(secret + mask, (params.signal_threshold - 1) as usize, source);
    let plain = Polynomial::random(secret, (params.plain_threshold - 1) as usize, source);
    (1..=params.participants)
        .map(|id| {
            let point = EvalPoint::participant(id, params.modulus)?;
            Ok(HybridShare::new(
                id,
                time,
                HybridShareValue::Naive {
                    timed: timed.eval(point.x()),
                    plain: plain.eval(point.x()),
                },
            ))
        })
        .collect()
}

/// Optimal dealing: one polynomial of degree k2-1 with the secret as
/// constant term; shares are its evaluations, and the top k2-k1 coefficients
/// are published masked by the period's key row.
pub fn share_optimal<S: ElementSource + ?Sized>(
    key: &HybridMasterKey,
    params: &HybridParams,
    secret: FieldElement,
    time: u64,
    source: &mut S,
) -> Result<(Vec<HybridShare>, PublicParams)> {
    let HybridMasterKey::Optimal(rows) = key else {
        return Err(Error::VariantMismatch);
    };
    key.check_time(time)?;
    let span = params.masked_span();
    let row = &rows[(time - 1) as usize];
    if span > row.len() as u64 {
        return Err(Error::CapacityExceeded {
            span,
            capacity: row.len() as u64,
        });
    }
    let poly = Polynomial::random(secret, (params.plain_threshold - 1) as usize, source);
    let shares = (1..=params.participants)
        .map(|id| {
            let point = EvalPoint::participant(id, params.modulus)?;
            Ok(HybridShare::new(
                id,
                time,
                HybridShareValue::Optimal(poly.eval(point.x())),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    // Coefficient of x^(k1-1+i) masked by the row's i-th entry, i = 1..=span.
    let published = (1..=span)
        .map(|i| {
            let coeff = poly.coefficients()[(params.signal_threshold - 1 + i) as usize];
            coeff + row[(i - 1) as usize]
        })
        .collect();
    Ok((shares, PublicParams::new(time, published)))
}

/// The time-server's broadcast for `time`.
pub fn extract(key: &HybridMasterKey, time: u64) -> Result<HybridTimeSignal> {
    key.check_time(time)?;
    let value = match key {
        HybridMasterKey::Naive(masks) => HybridSignalValue::Naive(masks[(time - 1) as usize]),
        HybridMasterKey::Optimal(rows) => {
            HybridSignalValue::Optimal(rows[(time - 1) as usize].clone())
        }
    };
    Ok(HybridTimeSignal::new(time, value))
}

/// Shared validation: count, one dealing time, no duplicate participants,
/// ids in range. Returns the shares sorted by participant id and the time.
fn validated_sorted<'a>(
    shares: &'a [HybridShare],
    need: u64,
    params: &HybridParams,
) -> Result<(Vec<&'a HybridShare>, u64)> {
    if (shares.len() as u64) < need {
        return Err(Error::InsufficientShares {
            need,
            got: shares.len() as u64,
        });
    }
    let time = shares[0].time;
    if shares.iter().any(|s| s.time != time) {
        return Err(Error::TimeMismatch);
    }
    let variant = shares[0].value.variant();
    if shares.iter().any(|s| s.value.variant() != variant) {
        return Err(Error::VariantMismatch);
    }
    let mut sorted: Vec<&HybridShare> = shares.iter().collect();
    sorted.sort_by_key(|s| s.participant);
    for pair in sorted.windows(2) {
        if pair[0].participant == pair[1].participant {
            return Err(Error::DuplicateShare(pair[0].participant));
        }
    }
    for s in &sorted {
        if s.participant < 1 || s.participant > params.participants {
            return Err(Error::InvalidParams(format!(
                "participant id {} outside 1..={}",
                s.participant, params.participants
            )));
        }
    }
    Ok((sorted, time))
}

/// Recovers the secret from at least k1 shares plus the dealt period's
/// signal.
///
/// The naive path interpolates the timed components and strips the mask; the
/// optimal path first unmasks the published coefficients with the signal,
/// subtracts their contribution from each share, and interpolates what is
/// left (degree k1-1). `public` is required exactly when the dealing masked
/// coefficients (k2 > k1) and the shares are optimal-variant; the naive path
/// ignores it.
pub fn reconstruct_with_signal(
    shares: &[HybridShare],
    public: Option<&PublicParams>,
    signal: &HybridTimeSignal,
    params: &HybridParams,
) -> Result<FieldElement> {
    let k1 = params.signal_threshold;
    let (sorted, time) = validated_sorted(shares, k1, params)?;
    if signal.time != time {
        return Err(Error::TimeMismatch);
    }
    let chosen = &sorted[..k1 as usize];
    match (&chosen[0].value, &signal.value) {
        (HybridShareValue::Naive { .. }, HybridSignalValue::Naive(mask)) => {
            let points = chosen
                .iter()
                .map(|s| {
                    let HybridShareValue::Naive { timed, .. } = s.value else {
                        unreachable!("variant homogeneity checked above");
                    };
                    let point = EvalPoint::participant(s.participant, params.modulus)?;
                    Ok((point, timed))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(lagrange_at_zero(&points)? - *mask)
        }
        (HybridShareValue::Optimal(_), HybridSignalValue::Optimal(masks)) => {
            let span = params.masked_span();
            let masked_coeffs = if span == 0 {
                Vec::new()
            } else {
                let Some(public) = public else {
                    return Err(Error::MissingPublicParams);
                };
                if public.time != time {
                    return Err(Error::TimeMismatch);
                }
                if public.values.len() as u64 != span {
                    return Err(Error::InvalidParams(format!(
                        "expected {span} published values, found {}",
                        public.values.len()
                    )));
                }
                if (masks.len() as u64) < span {
                    return Err(Error::CapacityExceeded {
                        span,
                        capacity: masks.len() as u64,
                    });
                }
                public
                    .values
                    .iter()
                    .zip(masks)
                    .map(|(&published, &mask)| published - mask)
                    .collect()
            };
            // The unmasked coefficients form the polynomial's top part
            // g(x) = sum of a_i x^i for i in k1..=k2-1; subtracting its
            // evaluation from each share leaves a degree k1-1 polynomial
            // whose constant term is the secret.
            let mut g_coeffs = vec![params.modulus.zero(); params.plain_threshold as usize];
            for (offset, &coeff) in masked_coeffs.iter().enumerate() {
                g_coeffs[params.signal_threshold as usize + offset] = coeff;
            }
            let g = Polynomial::new(g_coeffs);
            let points = chosen
                .iter()
                .map(|s| {
                    let HybridShareValue::Optimal(value) = s.value else {
                        unreachable!("variant homogeneity checked above");
                    };
                    let point = EvalPoint::participant(s.participant, params.modulus)?;
                    Ok((point, value - g.eval(point.x())))
                })
                .collect::<Result<Vec<_>>>()?;
            lagrange_at_zero(&points)
        }
        _ => Err(Error::VariantMismatch),
    }
}

/// Recovers the secret from at least k2 shares alone — no signal, no
/// published values. Refuses fewer than k2 shares even if a signal is at
/// hand; that range belongs to [`reconstruct_with_signal`].
///
/// As with the signal path, only the first k2 shares sorted by participant
/// id are consumed; surplus shares are ignored without consistency checks.
pub fn reconstruct_without_signal(
    shares: &[HybridShare],
    params: &HybridParams,
) -> Result<FieldElement> {
    let k2 = params.plain_threshold;
    let (sorted, _) = validated_sorted(shares, k2, params)?;
    let points = sorted[..k2 as usize]
        .iter()
        .map(|s| {
            let value = match s.value {
                HybridShareValue::Naive { plain, .. } => plain,
                HybridShareValue::Optimal(value) => value,
            };
            let point = EvalPoint::participant(s.participant, params.modulus)?;
            Ok((point, value))
        })
        .collect::<Result<Vec<_>>>()?;
    lagrange_at_zero(&points)
}
