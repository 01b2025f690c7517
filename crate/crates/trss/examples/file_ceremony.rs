//! The whole protocol as separate processes would run it: every phase works
//! against an archive directory, so this is exactly what the `trss` binary
//! does — init, share, extract, reconstruct — driven as a library.
//!
//! ```bash
//! cargo run --example file_ceremony
//! ```

use trss::cli::{cmd_extract, cmd_init, cmd_reconstruct, cmd_share, ReconstructMode};
use trss::field::FieldModulus;
use trss::hybrid::{HybridParams, Variant};
use trss::Scheme;

fn main() -> trss::Result<()> {
    let dir = std::env::temp_dir().join("trss-file-ceremony");
    let _ = std::fs::remove_dir_all(&dir);

    let scheme = Scheme::Hybrid(
        HybridParams::new(FieldModulus::new(13)?, 1, 2, 3, 2, 1)?,
        Variant::Optimal,
    );

    // The trusted initializer's terminal.
    print!("{}", cmd_init(&scheme, Some("abcd"), &dir)?);

    // The dealer's terminal.
    print!("{}", cmd_share(&dir, 11, 2, Some("ef01"))?);

    // The time-server's terminal, at each period.
    print!("{}", cmd_extract(&dir, None)?);

    // A participant's terminal: one share plus the period-2 signal.
    let secret = cmd_reconstruct(
        &dir,
        &[dir.join("share.3")],
        Some(&dir.join("signal.2")),
        ReconstructMode::WithSignal,
    )?;
    println!("recovered with P3 + signal: {}", secret.trim());

    // Or two shares with no signal at all.
    let secret = cmd_reconstruct(
        &dir,
        &[dir.join("share.1"), dir.join("share.2")],
        None,
        ReconstructMode::WithoutSignal,
    )?;
    println!("recovered with P1 + P2 alone: {}", secret.trim());

    println!("archive left at {}", dir.display());
    Ok(())
}
