//! Measure the security claims instead of trusting them: enumerate every
//! possible world of a small dealing, check each coalition's conditional
//! entropy, and watch the verifier catch a sabotaged scheme.
//!
//! ```bash
//! cargo run --example security_report
//! ```

use trss::field::FieldModulus;
use trss::hybrid::{HybridParams, Variant};
use trss::kn::KnParams;
use trss::oracle::{
    check_scheme, check_scheme_with, Mutation, SecretDistribution, DEFAULT_WORLD_CAP,
};
use trss::Scheme;

fn main() -> trss::Result<()> {
    // The 81-world (2,2) instance over GF(3).
    let kn = Scheme::Kn(KnParams::new(FieldModulus::new(3)?, 2, 2, 2)?);
    let report = check_scheme(&kn, 1)?;
    print!("{}", report.render());
    assert!(report.all_pass());

    // The optimal hybrid at its minimal interesting size.
    let hybrid = Scheme::Hybrid(
        HybridParams::new(FieldModulus::new(3)?, 1, 2, 2, 2, 1)?,
        Variant::Optimal,
    );
    let report = check_scheme(&hybrid, 1)?;
    print!("\n{}", report.render());
    assert!(report.all_pass());

    // Sabotage: reuse period 1's key for every period. The verifier must
    // fail the timed-release condition.
    let broken = check_scheme_with(
        &kn,
        1,
        &SecretDistribution::uniform(3),
        DEFAULT_WORLD_CAP,
        Some(Mutation::ConstantTimeKeys),
    )?;
    print!("\n{}", broken.render());
    assert!(!broken.all_pass());
    println!("\nthe sabotaged scheme was rejected, as it should be");
    Ok(())
}
