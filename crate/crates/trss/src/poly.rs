//! Polynomials over GF(q): random generation with a pinned constant term,
//! Horner evaluation, and recovery of the constant term by Lagrange
//! interpolation. Interpolation is only ever needed at x = 0, because every
//! reconstruction targets a polynomial's constant term.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldModulus};
use crate::rng::ElementSource;

/// Coefficient vector; index i multiplies x^i. Never empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<FieldElement>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial has at least one coefficient");
        let modulus = coeffs[0].modulus();
        assert!(
            coeffs.iter().all(|c| c.modulus() == modulus),
            "all coefficients share one modulus"
        );
        Polynomial { coeffs }
    }

    /// Pins the constant term and draws the coefficients of x^1..=x^degree
    /// from `source`, in that order.
    pub fn random<S: ElementSource + ?Sized>(
        constant: FieldElement,
        degree: usize,
        source: &mut S,
    ) -> Self {
        let modulus = constant.modulus();
        let mut coeffs = Vec::with_capacity(degree + 1);
        coeffs.push(constant);
        for _ in 0..degree {
            coeffs.push(modulus.random_element(source));
        }
        Polynomial { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let mut iter = self.coeffs.iter().rev();
        let mut acc = *iter.next().expect("polynomial is non-empty");
        for &c in iter {
            acc = acc * x + c;
        }
        acc
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeffs[0]
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coeffs
    }
}

/// A nonzero evaluation point. Participant identities live in GF(q)\{0},
/// so zero is rejected at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalPoint(FieldElement);

impl EvalPoint {
    pub fn new(x: FieldElement) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroPoint);
        }
        Ok(EvalPoint(x))
    }

    /// Encodes participant id i as the field element i.
    pub fn participant(id: u64, modulus: FieldModulus) -> Result<Self> {
        Self::new(modulus.element(id))
    }

    pub fn x(self) -> FieldElement {
        self.0
    }
}

/// Constant term of the unique polynomial of degree < points.len() through
/// the given points: sum over j of y_j times prod over l != j of
/// x_l / (x_l - x_j).
pub fn lagrange_at_zero(points: &[(EvalPoint, FieldElement)]) -> Result<FieldElement> {
    let Some((first, _)) = points.first() else {
        return Err(Error::InvalidParams(
            "interpolation needs at least one point".into(),
        ));
    };
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in &points[i + 1..] {
            if xi.x() == xj.x() {
                return Err(Error::DuplicatePoint);
            }
        }
    }
    let modulus = first.x().modulus();
    let mut acc = modulus.zero();
    for (j, (xj, yj)) in points.iter().enumerate() {
        let mut coeff = modulus.one();
        for (l, (xl, _)) in points.iter().enumerate() {
            if l == j {
                continue;
            }
            coeff = coeff * xl.x() * (xl.x() - xj.x()).inverse()?;
        }
        acc = acc + coeff * *yj;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{ScriptedSource, SeededRng};
    use proptest::prelude::*;

    fn gf(q: u64) -> FieldModulus {
        FieldModulus::new(q).unwrap()
    }

    fn poly(q: u64, coeffs: &[u64]) -> Polynomial {
        let field = gf(q);
        Polynomial::new(coeffs.iter().map(|&c| field.element(c)).collect())
    }

    /// Coefficient-wise sum, used only to state the linearity property.
    fn poly_add(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let zero = a.constant_term().modulus().zero();
        let len = a.coefficients().len().max(b.coefficients().len());
        let get = |p: &Polynomial, i: usize| p.coefficients().get(i).copied().unwrap_or(zero);
        Polynomial::new((0..len).map(|i| get(a, i) + get(b, i)).collect())
    }

    #[test]
    fn eval_examples() {
        let f7 = gf(7);
        let f5 = gf(5);
        assert_eq!(poly(7, &[2, 3]).eval(f7.element(2)).value(), 1);
        assert_eq!(poly(7, &[4, 6, 2]).eval(f7.element(0)).value(), 4);
        assert_eq!(poly(5, &[1, 1, 1]).eval(f5.element(2)).value(), 2);
    }

    #[test]
    fn random_pins_constant_term() {
        let f5 = gf(5);
        let mut rng = SeededRng::from_seed([3u8; 32]);
        let p = Polynomial::random(f5.element(4), 0, &mut rng);
        assert_eq!(p.coefficients().len(), 1);
        assert_eq!(p.constant_term().value(), 4);

        let secret = f5.element(2);
        let p = Polynomial::random(secret, 2, &mut rng);
        assert_eq!(p.coefficients().len(), 3);
        assert_eq!(p.constant_term(), secret);
    }

    #[test]
    fn random_is_deterministic_under_a_fixed_seed() {
        let f5 = gf(5);
        let mut a = SeededRng::from_seed([9u8; 32]);
        let mut b = SeededRng::from_seed([9u8; 32]);
        let pa = Polynomial::random(f5.element(1), 2, &mut a);
        let pb = Polynomial::random(f5.element(1), 2, &mut b);
        assert_eq!(pa, pb);
    }

    #[test]
    fn random_draws_coefficients_in_ascending_power_order() {
        let f7 = gf(7);
        let mut src = ScriptedSource::new(vec![5, 1]);
        let p = Polynomial::random(f7.element(3), 2, &mut src);
        assert_eq!(
            p.coefficients().iter().map(|c| c.value()).collect::<Vec<_>>(),
            vec![3, 5, 1]
        );
    }

    #[test]
    fn single_point_interpolates_to_its_value() {
        let f7 = gf(7);
        let pt = EvalPoint::participant(1, f7).unwrap();
        let y = f7.element(6);
        assert_eq!(lagrange_at_zero(&[(pt, y)]).unwrap(), y);
    }

    #[test]
    fn interpolation_recovers_evaluated_constant() {
        // Evaluate f = 4 + 3x over GF(7), then interpolate the constant back.
        let f7 = gf(7);
        let f = poly(7, &[4, 3]);
        let points: Vec<_> = [1u64, 2]
            .iter()
            .map(|&i| {
                let pt = EvalPoint::participant(i, f7).unwrap();
                (pt, f.eval(pt.x()))
            })
            .collect();
        assert_eq!(lagrange_at_zero(&points).unwrap().value(), 4);
    }

    #[test]
    fn duplicate_x_is_rejected() {
        let f7 = gf(7);
        let pt = EvalPoint::participant(1, f7).unwrap();
        let got = lagrange_at_zero(&[(pt, f7.element(5)), (pt, f7.element(6))]);
        assert!(matches!(got, Err(Error::DuplicatePoint)));
    }

    #[test]
    fn zero_point_is_rejected() {
        let f7 = gf(7);
        assert!(matches!(EvalPoint::new(f7.zero()), Err(Error::ZeroPoint)));
        assert!(matches!(
            EvalPoint::participant(7, f7), // 7 mod 7 == 0
            Err(Error::ZeroPoint)
        ));
    }

    #[test]
    fn empty_point_set_is_rejected() {
        assert!(matches!(
            lagrange_at_zero(&[]),
            Err(Error::InvalidParams(_))
        ));
    }

    proptest! {
        #[test]
        fn roundtrip_constant_term(
            q in prop::sample::select(vec![5u64, 7, 11]),
            degree in 0usize..=5,
            constant in any::<u64>(),
            seed in any::<[u8; 32]>(),
        ) {
            let field = gf(q);
            prop_assume!(degree < (q - 1) as usize);
            let mut rng = SeededRng::from_seed(seed);
            let f = Polynomial::random(field.element(constant), degree, &mut rng);
            let points: Vec<_> = (1..=degree as u64 + 1)
                .map(|i| {
                    let pt = EvalPoint::participant(i, field).unwrap();
                    (pt, f.eval(pt.x()))
                })
                .collect();
            prop_assert_eq!(lagrange_at_zero(&points).unwrap(), f.constant_term());
        }

        #[test]
        fn evaluation_is_linear(
            q in prop::sample::select(vec![5u64, 7, 11]),
            a in prop::collection::vec(any::<u64>(), 1..=4),
            b in prop::collection::vec(any::<u64>(), 1..=4),
            x in any::<u64>(),
        ) {
            let field = gf(q);
            let fa = Polynomial::new(a.iter().map(|&c| field.element(c)).collect());
            let fb = Polynomial::new(b.iter().map(|&c| field.element(c)).collect());
            let x = field.element(x);
            prop_assert_eq!(
                poly_add(&fa, &fb).eval(x),
                fa.eval(x) + fb.eval(x)
            );
        }
    }
}
