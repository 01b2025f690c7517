//! The (k,n) timed-release scheme, phase by phase: a 2-of-4 dealing whose
//! shares stay sealed until the time-server broadcasts period 3's signal.
//!
//! ```bash
//! cargo run --example kn_roundtrip
//! ```

use trss::field::FieldModulus;
use trss::kn;
use trss::rng::SeededRng;

fn main() -> trss::Result<()> {
    let modulus = FieldModulus::new(257)?;
    let params = kn::KnParams::new(modulus, 2, 4, 5)?;
    let mut rng = SeededRng::from_hex_seed("cafe")?;

    // Trusted setup: one uniform mask per period, handed to both the dealer
    // and the time-server.
    let master_key = kn::initialize(&params, &mut rng);
    println!(
        "initialize: master key covers {} periods ({} field elements)",
        master_key.periods(),
        master_key.elements().len()
    );

    // The dealer picks a secret and binds it to period 3.
    let secret = modulus.element(42);
    let time = 3;
    let shares = kn::share(&master_key, &params, secret, time, &mut rng)?;
    println!("share: dealt secret {secret} for period {time}");
    for share in &shares {
        println!(
            "  participant {} holds {} (one field element)",
            share.participant(),
            share.value()
        );
    }

    // Signals for other periods do not help; the dealt period's does.
    let early = kn::extract(&master_key, 1)?;
    let err = kn::reconstruct(&shares, &early, &params).unwrap_err();
    println!("reconstruct with period-1 signal: {err}");

    let signal = kn::extract(&master_key, time)?;
    println!("extract: period-{time} broadcast is {}", signal.value());

    // Any two shares plus the signal recover the secret.
    let recovered = kn::reconstruct(&[shares[3], shares[1]], &signal, &params)?;
    println!("reconstruct from P4 + P2 + signal: {recovered}");
    assert_eq!(recovered, secret);

    // One share short is refused.
    let err = kn::reconstruct(&shares[..1], &signal, &params).unwrap_err();
    println!("reconstruct from one share: {err}");
    Ok(())
}
