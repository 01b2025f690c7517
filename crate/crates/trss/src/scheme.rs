//! A scheme selection bundled with its parameters, shared by the entropy
//! verifier, the archive format and the CLI.

use crate::field::FieldModulus;
use crate::hybrid::{HybridParams, Variant};
use crate::kn::KnParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Kn(KnParams),
    Hybrid(HybridParams, Variant),
}

impl Scheme {
    /// Identifier used in manifests and CLI flags.
    pub fn id(&self) -> &'static str {
        match self {
            Scheme::Kn(_) => "kn",
            Scheme::Hybrid(_, Variant::Naive) => "hybrid-naive",
            Scheme::Hybrid(_, Variant::Optimal) => "hybrid-optimal",
        }
    }

    pub fn modulus(&self) -> FieldModulus {
        match self {
            Scheme::Kn(p) => p.modulus(),
            Scheme::Hybrid(p, _) => p.modulus(),
        }
    }

    pub fn participants(&self) -> u64 {
        match self {
            Scheme::Kn(p) => p.participants(),
            Scheme::Hybrid(p, _) => p.participants(),
        }
    }

    pub fn periods(&self) -> u64 {
        match self {
            Scheme::Kn(p) => p.periods(),
            Scheme::Hybrid(p, _) => p.periods(),
        }
    }

    /// One-line description, e.g. `kn q=3 k=2 n=3 tau=2`.
    pub fn label(&self) -> String {
        match self {
            Scheme::Kn(p) => format!(
                "kn q={} k={} n={} tau={}",
                p.modulus().order(),
                p.threshold(),
                p.participants(),
                p.periods()
            ),
            Scheme::Hybrid(p, variant) => format!(
                "{} q={} k1={} k2={} n={} tau={} ell={}",
                match variant {
                    Variant::Naive => "hybrid-naive",
                    Variant::Optimal => "hybrid-optimal",
                },
                p.modulus().order(),
                p.signal_threshold(),
                p.plain_threshold(),
                p.participants(),
                p.periods(),
                p.signal_capacity()
            ),
        }
    }
}
