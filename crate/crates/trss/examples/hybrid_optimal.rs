//! The optimal two-threshold scheme: 1 share + signal, or 3 shares alone.
//!
//! One degree-(k2-1) polynomial carries the secret; the dealer publishes its
//! top k2-k1 coefficients masked by the period's key row. Shares stay a
//! single field element.
//!
//! ```bash
//! cargo run --example hybrid_optimal
//! ```

use trss::field::FieldModulus;
use trss::hybrid::{self, HybridParams, Variant};
use trss::rng::SeededRng;

fn main() -> trss::Result<()> {
    let modulus = FieldModulus::new(101)?;
    // k1=1, k2=3, n=4; the master key must cover k2-k1 = 2 masks per period.
    let params = HybridParams::new(modulus, 1, 3, 4, 4, 2)?;
    let mut rng = SeededRng::from_hex_seed("beef")?;

    let master_key = hybrid::initialize(&params, Variant::Optimal, &mut rng);
    println!(
        "initialize: {} masks per period, {} periods",
        params.signal_capacity(),
        params.periods()
    );

    let secret = modulus.element(77);
    let time = 2;
    let (shares, public) = hybrid::share_optimal(&master_key, &params, secret, time, &mut rng)?;
    println!("share: dealt {secret} for period {time}; every share is one element");
    println!(
        "published (masked coefficients, safe to post anywhere): {:?}",
        public.values().iter().map(|v| v.value()).collect::<Vec<_>>()
    );

    // Fast path: one participant plus the broadcast.
    let signal = hybrid::extract(&master_key, time)?;
    let with = hybrid::reconstruct_with_signal(&shares[2..3], Some(&public), &signal, &params)?;
    println!("with signal, P3 alone recovers: {with}");
    assert_eq!(with, secret);

    // Fallback path: three participants, no broadcast at all.
    let without = hybrid::reconstruct_without_signal(&shares[..3], &params)?;
    println!("without any signal, P1+P2+P3 recover: {without}");
    assert_eq!(without, secret);

    // Below k2, shares alone stay sealed; that range needs the signal.
    let err = hybrid::reconstruct_without_signal(&shares[..2], &params).unwrap_err();
    println!("two shares without the signal: {err}");
    Ok(())
}
