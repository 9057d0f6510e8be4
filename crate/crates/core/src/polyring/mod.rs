//! Prime fields, monomials, normalized sparse polynomials and their parser.

mod field;
mod monomial;
mod parse;
mod poly;

pub use field::{is_prime, PrimeField};
pub use monomial::{Exponent, Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use poly::{is_power_of, Polynomial, RingSpec, Term};

use crate::error::{Error, Result};

/// The three 2x2 minors of a 2x3 matrix, for column pairs (1,2), (1,3), (2,3).
pub fn minors2(m: &[[Polynomial; 3]; 2]) -> Result<[Polynomial; 3]> {
    let ring = m[0][0].ring();
    if m.iter()
        .flatten()
        .any(|e| !e.ring().same_space(ring) || e.ring().order() != ring.order())
    {
        return Err(Error::MixedRings);
    }
    let minor = |i: usize, j: usize| -> Result<Polynomial> { m[0][i].mul(&m[1][j])?.sub(&m[0][j].mul(&m[1][i])?) };
    Ok([minor(0, 1)?, minor(0, 2)?, minor(1, 2)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn ring(p: u64, vars: &[&str]) -> Arc<RingSpec> {
        RingSpec::new(p, vars, MonomialOrder::GrevLex).unwrap()
    }

    fn parse(s: &str, r: &Arc<RingSpec>) -> Polynomial {
        parse_poly(s, r).unwrap()
    }

    fn matrix(rows: [[&str; 3]; 2], r: &Arc<RingSpec>) -> [[Polynomial; 3]; 2] {
        rows.map(|row| row.map(|s| parse(s, r)))
    }

    #[test]
    fn minors_of_the_perturbation_matrix() {
        let r = ring(3, &["x", "y", "z", "u", "v", "w"]);
        let m = matrix([["x^2+v^5", "y", "u"], ["z", "x^2", "y^2-u"]], &r);
        let got = minors2(&m).unwrap();
        let want = [
            parse("(x^2+v^5)*x^2 - y*z", &r),
            parse("(x^2+v^5)*(y^2-u) - u*z", &r),
            parse("y*(y^2-u) - u*x^2", &r),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn minors_identity_and_hand_expansion() {
        let r = ring(5, &["x", "y"]);
        let got = minors2(&matrix([["1", "0", "0"], ["0", "1", "0"]], &r)).unwrap();
        assert_eq!(got, [r.one(), r.zero(), r.zero()]);
        let got = minors2(&matrix([["x", "y", "0"], ["y", "x", "0"]], &r)).unwrap();
        assert_eq!(got, [parse("x^2 - y^2", &r), r.zero(), r.zero()]);
    }

    #[test]
    fn minors_reject_mixed_rings() {
        let r = ring(5, &["x", "y"]);
        let s = ring(7, &["x", "y"]);
        let mut m = matrix([["x", "y", "0"], ["y", "x", "0"]], &r);
        m[1][2] = parse("x", &s);
        assert_eq!(minors2(&m), Err(Error::MixedRings));
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(parse("(x+y)*(x+y)", &r), parse("x^2+y^2", &r));
        let r3 = ring(3, &["x", "y"]);
        assert_eq!(parse("x-y", &r3).pow(3).unwrap(), parse("x^3-y^3", &r3));
        assert_eq!(
            parse("x^2*y", &r3).exact_divide(&parse("x", &r3)).unwrap(),
            parse("x*y", &r3)
        );
        assert_eq!(
            parse("x^2+y", &r3).exact_divide(&parse("x", &r3)),
            Err(Error::NotDivisible)
        );
        assert_eq!(parse("x", &r3).exact_divide(&r3.zero()), Err(Error::DivisionByZero));
        assert_eq!(parse("x", &r3).add(&parse("x", &r)), Err(Error::MixedRings));
    }

    #[test]
    fn truncated_products_agree_with_full_products() {
        let r = ring(3, &["x", "y"]);
        let f = parse("x^2 + x*y + 2*y + 1", &r);
        let g = parse("x*y^2 + x + y^2", &r);
        assert_eq!(
            f.mul_truncated(&g, 3).unwrap(),
            f.mul(&g).unwrap().truncate_frobenius(3)
        );
        assert_eq!(f.pow_truncated(5, 3).unwrap(), f.pow(5).unwrap().truncate_frobenius(3));
    }

    fn small_poly(p: u64) -> impl Strategy<Value = Vec<(Vec<u32>, u64)>> {
        proptest::collection::vec((proptest::collection::vec(0u32..4, 3), 0..p), 0..6)
    }

    fn build(r: &Arc<RingSpec>, spec: &[(Vec<u32>, u64)]) -> Polynomial {
        let terms = spec
            .iter()
            .map(|(e, c)| (Monomial::from_exponents(e).unwrap(), *c))
            .collect();
        Polynomial::from_terms(r.clone(), terms)
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, rng_seed: proptest::test_runner::RngSeed::Fixed(7), ..ProptestConfig::default() })]

        #[test]
        fn ring_axioms(a in small_poly(5), b in small_poly(5), c in small_poly(5)) {
            let r = ring(5, &["x", "y", "z"]);
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(),
                            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
            prop_assert!(a.sub(&a).unwrap().is_zero());
        }

        #[test]
        fn exact_division_inverts_multiplication(a in small_poly(3), b in small_poly(3)) {
            let r = ring(3, &["x", "y", "z"]);
            let (a, b) = (build(&r, &a), build(&r, &b));
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).unwrap().exact_divide(&b).unwrap(), a);
        }

        #[test]
        fn frobenius_property(a in small_poly(5), pi in 0usize..3) {
            let p = [2u64, 3, 5][pi];
            let r = ring(p, &["x", "y", "z"]);
            let a = build(&r, &a);
            let ap = a.pow(p).unwrap();
            prop_assert!(ap.terms().iter().all(|(m, _)| m.exponents().iter().all(|&e| (e as u64).is_multiple_of(p))));
            prop_assert_eq!(&ap, &a.frobenius_power(p).unwrap());
        }

        #[test]
        fn render_parse_round_trip(a in small_poly(7), oi in 0usize..3) {
            let order = [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Block(1)][oi];
            let r = RingSpec::new(7, &["x", "y1", "z_2"], order).unwrap();
            let a = build(&r, &a);
            prop_assert_eq!(parse_poly(&a.render(), &r).unwrap(), a);
        }
    }
}
