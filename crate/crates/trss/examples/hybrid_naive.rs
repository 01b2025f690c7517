//! The naive two-threshold scheme: a timed dealing and a plain Shamir
//! dealing glued together, at the cost of two field elements per share.
//!
//! ```bash
//! cargo run --example hybrid_naive
//! ```

use trss::field::FieldModulus;
use trss::hybrid::{self, HybridParams, HybridShareValue, Variant};
use trss::rng::SeededRng;

fn main() -> trss::Result<()> {
    let modulus = FieldModulus::new(97)?;
    let params = HybridParams::new(modulus, 2, 3, 5, 3, 0)?;
    let mut rng = SeededRng::from_hex_seed("f0f0")?;

    let master_key = hybrid::initialize(&params, Variant::Naive, &mut rng);
    let secret = modulus.element(13);
    let time = 1;
    let shares = hybrid::share_naive(&master_key, &params, secret, time, &mut rng)?;

    let HybridShareValue::Naive { timed, plain } = shares[0].value() else {
        unreachable!()
    };
    println!("P1's share carries two elements: timed={timed} plain={plain}");

    // k1 = 2 shares plus the signal...
    let signal = hybrid::extract(&master_key, time)?;
    let with = hybrid::reconstruct_with_signal(&shares[..2], None, &signal, &params)?;
    println!("P1+P2 with the signal: {with}");
    assert_eq!(with, secret);

    // ...or k2 = 3 shares alone, whenever.
    let without = hybrid::reconstruct_without_signal(&shares[2..5], &params)?;
    println!("P3+P4+P5 without any signal: {without}");
    assert_eq!(without, secret);
    Ok(())
}
