//! Exhaustive-enumeration security verifier.
//!
//! At toy parameters the entire probability space of a dealing — every
//! secret, every master key, every choice of dealer coefficients — fits in
//! memory. This module materializes it ([`enumerate_worlds`]), computes
//! exact conditional entropies over it ([`conditional_entropy`]), and checks
//! every security condition and size bound a scheme claims
//! ([`check_scheme`]), including against deliberately broken variants
//! ([`Mutation`]) to prove the checks have teeth.
//!
//! Probabilities are exact rationals end to end; floating point appears only
//! in the final logarithms, and "the view determines the secret" is decided
//! without floats at all.

mod dist;
mod entropy;
mod report;
mod tre_check;
mod worlds;

pub use dist::SecretDistribution;
pub use entropy::{
    all_signals, coalition_shares, conditional_entropy, exactly_determined, signals_except, Var,
};
pub use report::{
    check_scheme, check_scheme_with, ConditionCheck, EntropyReport, SizeCheck,
    ENTROPY_TOLERANCE_BITS, MAX_ORACLE_PARTICIPANTS,
};
pub use tre_check::check_tre_demo;
pub use worlds::{
    enumerate_worlds, enumerate_worlds_mutated, Mutation, World, WorldEnumeration,
    DEFAULT_WORLD_CAP,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldModulus;
    use crate::poly::{lagrange_at_zero, EvalPoint, Polynomial};
    use crate::scheme::Scheme;

    #[test]
    fn missing_top_coefficient_leaves_constant_term_uniform() {
        // d evaluations of a degree-d polynomial with unknown top coefficient
        // pin nothing: as the top coefficient sweeps the field, the
        // interpolated constant term sweeps the whole field too.
        let q = 5u64;
        let field = FieldModulus::new(q).unwrap();
        let degree = 2usize;
        let fixed = [3u64, 1]; // constant term and middle coefficient
        let mut seen = std::collections::BTreeSet::new();
        for top in 0..q {
            let poly = Polynomial::new(
                [fixed[0], fixed[1], top]
                    .iter()
                    .map(|&c| field.element(c))
                    .collect(),
            );
            let points: Vec<_> = (1..=degree as u64)
                .map(|i| {
                    let pt = EvalPoint::participant(i, field).unwrap();
                    (pt, poly.eval(pt.x()))
                })
                .collect();
            seen.insert(lagrange_at_zero(&points).unwrap().value());
        }
        assert_eq!(seen.len(), q as usize);
    }

    #[test]
    fn entropy_never_exceeds_the_secret_entropy() {
        let scheme = Scheme::Kn(
            crate::kn::KnParams::new(FieldModulus::new(3).unwrap(), 2, 2, 2).unwrap(),
        );
        let dist = SecretDistribution::uniform(3);
        let en = enumerate_worlds(&scheme, 1, &dist, 10_000).unwrap();
        let h_secret = dist.entropy_bits();
        for given in [
            vec![],
            vec![Var::Share(1)],
            vec![Var::Signal(1)],
            vec![Var::MasterKey],
            vec![Var::PublicParams],
        ] {
            let h = conditional_entropy(&en, Var::Secret, &given).unwrap();
            assert!((0.0..=h_secret + 1e-12).contains(&h));
        }
    }
}
