//! Timed-release threshold secret sharing over prime fields.
//!
//! Classic threshold sharing lets any k of n participants pool their shares
//! and recover a secret. The schemes here add a time dimension: a
//! time-server broadcasts a signal per period, and a dealing binds the
//! secret to one chosen period so that shares only become useful once that
//! period's signal is out. Security is information-theoretic — it rests on
//! uniform masking and polynomial interpolation, not on hardness
//! assumptions — and the [`oracle`] module can *measure* it, exhaustively
//! enumerating every possible world at toy sizes and checking the defining
//! conditional-entropy equalities exactly.
//!
//! Two schemes:
//!
//! * [`kn`] — (k,n) with a hard time gate: k shares *and* the dealt
//!   period's signal are both always required.
//! * [`hybrid`] — (k1,k2,n) with two thresholds: k1 shares plus the signal,
//!   or k2 shares alone, whichever comes first.
//!
//! ```
//! use trss::field::FieldModulus;
//! use trss::kn;
//! use trss::rng::SeededRng;
//!
//! let params = kn::KnParams::new(FieldModulus::new(31).unwrap(), 2, 4, 3).unwrap();
//! let mut rng = SeededRng::from_seed([42; 32]);
//!
//! let key = kn::initialize(&params, &mut rng);             // trusted setup
//! let secret = params.modulus().element(17);
//! let shares = kn::share(&key, &params, secret, 2, &mut rng).unwrap();
//! let signal = kn::extract(&key, 2).unwrap();              // the broadcast for period 2
//!
//! let recovered = kn::reconstruct(&shares[1..3], &signal, &params).unwrap();
//! assert_eq!(recovered, secret);
//! ```
//!
//! The `trss` binary drives the same operations through files — see the
//! [`cli`] and [`archive`] modules — and `examples/` walks each capability.

pub mod archive;
pub mod cli;
pub mod error;
pub mod field;
pub mod hybrid;
pub mod kn;
pub mod oracle;
pub mod poly;
pub mod rng;
pub mod scheme;
pub mod tre;

pub use error::{Error, Result};
pub use scheme::Scheme;
