//! Sources of uniformly random field elements.
//!
//! Every protocol phase that flips coins takes an [`ElementSource`], so the
//! same code path runs under the seeded ChaCha stream (production, CLI) and
//! under a scripted replay (exhaustive enumeration, tests).

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldModulus};

/// Yields field elements uniform on `[0, q)`.
pub trait ElementSource {
    fn draw(&mut self, modulus: FieldModulus) -> FieldElement;
}

/// Deterministic ChaCha20 stream seeded with 32 bytes.
///
/// The same seed produces the same element sequence on every platform, which
/// is what makes whole protocol runs reproducible bit-for-bit.
pub struct SeededRng(ChaCha20Rng);

impl SeededRng {
    pub fn from_seed(seed: [u8; 32]) -> Self {
        SeededRng(ChaCha20Rng::from_seed(seed))
    }

    /// Seed from a hex string of at most 64 digits (even length); shorter
    /// seeds fill the leading bytes, the rest stay zero.
    pub fn from_hex_seed(hex_seed: &str) -> Result<Self> {
        let bytes = hex::decode(hex_seed).map_err(|e| {
            Error::InvalidParams(format!(
                "seed must be hex with an even number of digits: {e}"
            ))
        })?;
        if bytes.len() > 32 {
            return Err(Error::InvalidParams(format!(
                "seed is {} bytes; at most 32 are allowed",
                bytes.len()
            )));
        }
        let mut seed = [0u8; 32];
        seed[..bytes.len()].copy_from_slice(&bytes);
        Ok(Self::from_seed(seed))
    }

    /// Fresh nondeterministic seed from the operating system.
    pub fn from_entropy() -> Self {
        SeededRng(ChaCha20Rng::from_os_rng())
    }
}

impl ElementSource for SeededRng {
    fn draw(&mut self, modulus: FieldModulus) -> FieldElement {
        let q = modulus.order();
        // Rejection sampling: accept only draws below the largest multiple of
        // q that fits in 64 bits, so every residue is exactly equally likely.
        let leftover = ((u64::MAX % q) + 1) % q; // 2^64 mod q
        loop {
            let v = self.0.next_u64();
            if leftover == 0 || v < u64::MAX - (leftover - 1) {
                return modulus.element(v % q);
            }
        }
    }
}

/// Replays a fixed list of values.
///
/// Drives the real scheme operations with injected coefficient and key
/// assignments during exhaustive enumeration. Panics when over-consumed:
/// that is a disagreement about how many draws an operation makes.
pub struct ScriptedSource {
    values: Vec<u64>,
    next: usize,
}

impl ScriptedSource {
    pub fn new(values: Vec<u64>) -> Self {
        ScriptedSource { values, next: 0 }
    }

    /// True once every scripted value has been consumed.
    pub fn exhausted(&self) -> bool {
        self.next == self.values.len()
    }
}

impl ElementSource for ScriptedSource {
    fn draw(&mut self, modulus: FieldModulus) -> FieldElement {
        let v = *self
            .values
            .get(self.next)
            .expect("scripted source ran out of values");
        self.next += 1;
        modulus.element(v)
    }
}
