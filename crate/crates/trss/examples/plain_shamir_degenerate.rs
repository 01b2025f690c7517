//! Equal thresholds collapse the optimal hybrid scheme into plain Shamir
//! sharing: capacity 0, empty signals, nothing published.
//!
//! ```bash
//! cargo run --example plain_shamir_degenerate
//! ```

use trss::field::FieldModulus;
use trss::hybrid::{self, HybridParams, Variant};
use trss::rng::SeededRng;

fn main() -> trss::Result<()> {
    let modulus = FieldModulus::new(31)?;
    let params = HybridParams::new(modulus, 3, 3, 5, 2, 0)?;
    let mut rng = SeededRng::from_hex_seed("0123")?;

    let master_key = hybrid::initialize(&params, Variant::Optimal, &mut rng);
    let secret = modulus.element(19);
    let (shares, public) = hybrid::share_optimal(&master_key, &params, secret, 1, &mut rng)?;
    assert!(public.values().is_empty());

    let signal = hybrid::extract(&master_key, 1)?;
    println!(
        "signal for period 1 carries {} field elements",
        signal.element_count()
    );

    let recovered = hybrid::reconstruct_without_signal(&shares[1..4], &params)?;
    println!("any 3 of 5 shares recover: {recovered}");
    assert_eq!(recovered, secret);
    Ok(())
}
