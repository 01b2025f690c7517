//! Timed-release encryption from a one-time pad plus a single timed share:
//! the receiver holds everything up front but can decrypt only once the
//! dealt period's signal is broadcast.
//!
//! ```bash
//! cargo run --example tre_demo
//! ```

use trss::field::FieldModulus;
use trss::oracle::check_tre_demo;
use trss::rng::SeededRng;
use trss::tre::TreCeremony;

fn main() -> trss::Result<()> {
    let modulus = FieldModulus::new(5)?;
    let mut rng = SeededRng::from_hex_seed("5eed")?;
    let ceremony = TreCeremony::run(modulus, modulus.element(3), 2, 3, &mut rng)?;

    println!("message M = {}", ceremony.message());
    println!("ciphertext C = M + r + K = {}", ceremony.ciphertext());
    println!(
        "receiver holds C, the pad key K = {} and the share u = {}",
        ceremony.pad_key(),
        ceremony.share().value()
    );

    let early = ceremony.signal(1)?;
    println!(
        "period-1 signal arrives: decryption still impossible ({})",
        ceremony.recover(&early).unwrap_err()
    );

    let signal = ceremony.signal(2)?;
    let recovered = ceremony.recover(&signal)?;
    println!("period-2 signal arrives: M = {recovered}");
    assert_eq!(recovered, ceremony.message());

    // And prove the secrecy claims by exhaustive enumeration.
    let report = check_tre_demo(5, [0x5e; 32])?;
    print!("\n{}", report.render());
    assert!(report.all_pass());
    Ok(())
}
