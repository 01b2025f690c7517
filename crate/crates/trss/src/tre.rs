//! Timed-release encryption assembled from a one-time pad and a
//! single-participant timed share.
//!
//! The sender and receiver already hold a shared pad key K. To encrypt a
//! message M for a future period t, the sender draws a fresh uniform mask r,
//! sends the ciphertext C = M + r + K, and deals r as the secret of a
//! (1,1) timed scheme — so the receiver holds the one share of r up front
//! but cannot open it until period t's signal arrives. Before the signal the
//! ciphertext is a one-time pad under r; after it, the receiver unmasks r
//! and computes M = C - r - K.

use crate::error::Result;
use crate::field::{FieldElement, FieldModulus};
use crate::kn::{self, KnMasterKey, KnParams, KnShare, KnTimeSignal};
use crate::rng::ElementSource;

/// One full sender-side run, with everything the receiver ever sees.
#[derive(Debug)]
pub struct TreCeremony {
    params: KnParams,
    master_key: KnMasterKey,
    time: u64,
    message: FieldElement,
    pad_key: FieldElement,
    mask: FieldElement,
    ciphertext: FieldElement,
    share: KnShare,
}

impl TreCeremony {
    /// Runs setup, pad-key agreement, encryption and the dealing of the mask.
    pub fn run<S: ElementSource + ?Sized>(
        modulus: FieldModulus,
        message: FieldElement,
        time: u64,
        periods: u64,
        source: &mut S,
    ) -> Result<Self> {
        let params = KnParams::new(modulus, 1, 1, periods)?;
        let master_key = kn::initialize(&params, source);
        let pad_key = modulus.random_element(source);
        let mask = modulus.random_element(source);
        let ciphertext = message + mask + pad_key;
        let shares = kn::share(&master_key, &params, mask, time, source)?;
        Ok(TreCeremony {
            params,
            master_key,
            time,
            message,
            pad_key,
            mask,
            ciphertext,
            share: shares[0],
        })
    }

    /// The time-server's broadcast for a period.
    pub fn signal(&self, time: u64) -> Result<KnTimeSignal> {
        kn::extract(&self.master_key, time)
    }

    /// Receiver-side decryption once the dealt period's signal is out.
    pub fn recover(&self, signal: &KnTimeSignal) -> Result<FieldElement> {
        let mask = kn::reconstruct(&[self.share], signal, &self.params)?;
        Ok(self.ciphertext - mask - self.pad_key)
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn periods(&self) -> u64 {
        self.params.periods()
    }

    pub fn message(&self) -> FieldElement {
        self.message
    }

    pub fn pad_key(&self) -> FieldElement {
        self.pad_key
    }

    pub fn mask(&self) -> FieldElement {
        self.mask
    }

    pub fn ciphertext(&self) -> FieldElement {
        self.ciphertext
    }

    pub fn share(&self) -> KnShare {
        self.share
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;

    #[test]
    fn recovery_sweep() {
        for q in [5u64, 7] {
            let modulus = FieldModulus::new(q).unwrap();
            for message in 0..q {
                for t in 1..=2u64 {
                    let mut rng = SeededRng::from_seed([message as u8; 32]);
                    let ceremony =
                        TreCeremony::run(modulus, modulus.element(message), t, 2, &mut rng)
                            .unwrap();
                    let signal = ceremony.signal(t).unwrap();
                    assert_eq!(ceremony.recover(&signal).unwrap(), ceremony.message());
                }
            }
        }
    }

    #[test]
    fn zero_message_recovers_to_zero() {
        let modulus = FieldModulus::new(5).unwrap();
        let mut rng = SeededRng::from_seed([0u8; 32]);
        let ceremony = TreCeremony::run(modulus, modulus.zero(), 1, 1, &mut rng).unwrap();
        let signal = ceremony.signal(1).unwrap();
        assert_eq!(ceremony.recover(&signal).unwrap().value(), 0);
    }

    #[test]
    fn wrong_period_signal_does_not_decrypt() {
        let modulus = FieldModulus::new(7).unwrap();
        let mut rng = SeededRng::from_seed([1u8; 32]);
        let ceremony = TreCeremony::run(modulus, modulus.element(3), 1, 2, &mut rng).unwrap();
        let early = ceremony.signal(2).unwrap();
        assert!(ceremony.recover(&early).is_err());
    }
}
