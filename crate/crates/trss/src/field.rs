//! Exact arithmetic in the prime field GF(q).
//!
//! Every value a scheme touches — secrets, shares, time-signals, master-key
//! entries, published parameters — is a [`FieldElement`]: a canonical residue
//! in `[0, q)` tagged with its [`FieldModulus`]. The modulus is restricted to
//! primes above 2 that fit in a machine word; products go through a 128-bit
//! intermediate, so arithmetic is exact for every supported q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rng::ElementSource;

/// A prime modulus q with 2 < q < 2^64, verified prime at construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldModulus(u64);

impl FieldModulus {
    /// Checks primality (deterministic Miller–Rabin) and builds the modulus.
    pub fn new(q: u64) -> Result<Self> {
        if q <= 2 {
            return Err(Error::ModulusTooSmall(q));
        }
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(FieldModulus(q))
    }

    /// The field order q.
    pub fn order(self) -> u64 {
        self.0
    }

    /// The canonical element congruent to `value`.
    pub fn element(self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.0,
            modulus: self,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.element(0)
    }

    pub fn one(self) -> FieldElement {
        self.element(1)
    }

    /// Draws a uniform element from the source.
    pub fn random_element<S: ElementSource + ?Sized>(self, source: &mut S) -> FieldElement {
        source.draw(self)
    }
}

impl fmt::Display for FieldModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0)
    }
}

/// A canonical residue in `[0, q)`.
///
/// Arithmetic between elements of different moduli is a caller bug and
/// panics; data-dependent failures (inverting zero) return an error.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: FieldModulus,
}

impl FieldElement {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> FieldModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(self, mut exp: u64) -> FieldElement {
        let q = self.modulus.0;
        let mut base = self.value;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base, q);
            }
            base = mul_mod(base, base, q);
            exp >>= 1;
        }
        FieldElement {
            value: acc,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse via Fermat's little theorem: a^(q-2).
    pub fn inverse(self) -> Result<FieldElement> {
        if self.value == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(self.pow(self.modulus.0 - 2))
    }

    fn expect_same_field(self, other: FieldElement) {
        assert_eq!(
            self.modulus, other.modulus,
            "field modulus mismatch: {} vs {}",
            self.modulus, other.modulus
        );
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: FieldElement) -> FieldElement {
        self.expect_same_field(rhs);
        let q = self.modulus.0;
        // Both operands are < q, so the true sum fits in 65 bits.
        let (mut sum, wrapped) = self.value.overflowing_add(rhs.value);
        if wrapped {
            sum = ((self.value as u128 + rhs.value as u128) - q as u128) as u64;
        } else if sum >= q {
            sum -= q;
        }
        FieldElement {
            value: sum,
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.expect_same_field(rhs);
        let q = self.modulus.0;
        let value = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            q - (rhs.value - self.value)
        };
        FieldElement {
            value,
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.expect_same_field(rhs);
        FieldElement {
            value: mul_mod(self.value, rhs.value, self.modulus.0),
            modulus: self.modulus,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.modulus.zero() - self
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    base %= q;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the witness set below decides primality for
/// every 64-bit integer.
fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut rounds = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        rounds += 1;
    }
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..rounds {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
