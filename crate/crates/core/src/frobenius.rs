//! Splitting criteria for R = S/I in terms of the Frobenius colon ideals
//! (I^[q] :_S I): F-purity, compatible F-purity along an ideal, sharp
//! F-purity of pairs (R, x^t), strong F-regularity certificates and the
//! splitting ideals whose colengths are the free ranks a_e.
//!
//! Everything is read at the origin n = (vars). A Frobenius splitting of R
//! exists at level e exactly when some element of (I^[q] : I) survives modulo
//! n^[q]; a premultiplier (c, or x^⌈t(q-1)⌉) just multiplies the colon first.
//!
//! Bounded searches over e never report FALSE: only Fedder's level-one test
//! and the "not F-pure, hence not strongly F-regular" shortcut are negative
//! certificates.

use std::time::Instant;

use num_integer::Integer;
use num_rational::Rational64;

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::groebner::{bracket_power, colon, frobenius_power_of_maximal, intersect, krull_dim, Ideal};
use crate::polyring::Polynomial;
use crate::verdict::{Certificate, SearchRecord, Status, Verdict};

fn level(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .filter(|&q| q <= u16::MAX as u64)
        .ok_or(Error::ExponentOverflow)
}

fn require_in_maximal(i: &Ideal) -> Result<()> {
    if i.in_maximal() {
        Ok(())
    } else {
        Err(Error::IdealNotInMaximal)
    }
}

/// (I^[q] :_S I). The zero ideal gives the unit ideal.
pub fn frobenius_colon(i: &Ideal, q: u64, budget: &Budget) -> Result<Ideal> {
    if i.is_zero() {
        return Ok(Ideal::unit(i.ring()));
    }
    let iq = bracket_power(i, q)?;
    // Work from the reduced basis: fewer, tidier colon factors.
    let base = i.minimalized(budget)?;
    colon(&iq, &base, budget)
}

/// First generator `g` of `ideal` with `multiplier * g ∉ n^[q]`, if any.
fn first_survivor(
    ideal: &Ideal,
    multiplier: &Polynomial,
    q: u64,
    budget: &Budget,
) -> Result<(Option<(Polynomial, Polynomial)>, usize)> {
    let gb = ideal.groebner(budget)?;
    let mult = multiplier.reorder(ideal.ring())?.truncate_frobenius(q);
    let gens = gb.elements();
    if mult.is_zero() {
        return Ok((None, gens.len()));
    }
    for g in gens {
        let g = g.reorder(ideal.ring())?;
        let elem = mult.mul_truncated(&g.truncate_frobenius(q), q)?;
        if !elem.is_zero() {
            return Ok((Some((g, elem)), gens.len()));
        }
    }
    Ok((None, gens.len()))
}

struct LevelOutcome {
    record: SearchRecord,
    witness: Option<Certificate>,
}

fn test_level(
    colon_ideal: &Ideal,
    multiplier: &Polynomial,
    e: u32,
    q: u64,
    started: Instant,
    budget: &Budget,
) -> Result<LevelOutcome> {
    let (found, generators) = first_survivor(colon_ideal, multiplier, q, budget)?;
    let record = SearchRecord {
        e,
        q,
        contained: found.is_none(),
        generators,
        millis: started.elapsed().as_millis() as u64,
    };
    let witness = found.map(|(alpha, element)| Certificate::Witness {
        e,
        q,
        alpha,
        multiplier: multiplier.clone(),
        element,
    });
    Ok(LevelOutcome { record, witness })
}

/// Fedder's criterion: R is F-pure iff (I^[p] : I) ⊄ n^[p].
pub fn fedder_fpure(i: &Ideal, budget: &Budget) -> Result<Verdict> {
    require_in_maximal(i)?;
    let p = i.ring().characteristic();
    let started = Instant::now();
    let c = frobenius_colon(i, p, budget)?;
    let one = i.ring().one();
    let out = test_level(&c, &one, 1, p, started, budget)?;
    Ok(match out.witness {
        Some(w) => Verdict {
            status: Status::True,
            certificate: Some(w),
            log: vec![out.record],
        },
        None => Verdict {
            status: Status::False,
            certificate: Some(Certificate::Containment {
                e: 1,
                q: p,
                generators: out.record.generators,
            }),
            log: vec![out.record],
        },
    })
}

/// R is compatibly F-pure along `a` iff
/// (I^[p] : I) ∩ ((I + a)^[p] : (I + a)) ⊄ n^[p].
pub fn compatibly_fpure_along(i: &Ideal, a: &Ideal, budget: &Budget) -> Result<Verdict> {
    require_in_maximal(i)?;
    require_in_maximal(a)?;
    let p = i.ring().characteristic();
    let started = Instant::now();
    let ia = i.sum(a)?;
    let j = intersect(
        &frobenius_colon(i, p, budget)?,
        &frobenius_colon(&ia, p, budget)?,
        budget,
    )?;
    let one = i.ring().one();
    let out = test_level(&j, &one, 1, p, started, budget)?;
    Ok(match out.witness {
        Some(w) => Verdict {
            status: Status::True,
            certificate: Some(w),
            log: vec![out.record],
        },
        None => Verdict {
            status: Status::False,
            certificate: Some(Certificate::Containment {
                e: 1,
                q: p,
                generators: out.record.generators,
            }),
            log: vec![out.record],
        },
    })
}

/// ⌈t (q - 1)⌉ in exact integer arithmetic.
pub fn sharp_exponent(t: Rational64, q: u64) -> Result<u64> {
    if *t.numer() < 0 {
        return Err(Error::NegativeT);
    }
    let num = *t.numer() as i128 * (q as i128 - 1);
    let den = *t.denom() as i128;
    let k = Integer::div_ceil(&num, &den);
    u64::try_from(k).map_err(|_| Error::ExponentOverflow)
}

/// Bounded search for sharp F-purity of (R, x^t): some e ≤ e_max with
/// x^⌈t(q-1)⌉ · (I^[q] : I) ⊄ n^[q]. Never FALSE.
pub fn sharply_fpure_pair(i: &Ideal, x: &Polynomial, t: Rational64, e_max: u32, budget: &Budget) -> Result<Verdict> {
    if *t.numer() < 0 {
        return Err(Error::NegativeT);
    }
    require_in_maximal(i)?;
    if e_max == 0 {
        return Err(Error::InvalidArgument("e_max must be at least 1".into()));
    }
    let p = i.ring().characteristic();
    let mut log = Vec::new();
    for e in 1..=e_max {
        let started = Instant::now();
        let q = level(p, e)?;
        let k = sharp_exponent(t, q)?;
        let mult = x.reorder(i.ring())?.pow_truncated(k, q)?;
        let c = if mult.is_zero() {
            Ideal::unit(i.ring())
        } else {
            frobenius_colon(i, q, budget)?
        };
        let out = test_level(&c, &mult, e, q, started, budget)?;
        log.push(out.record);
        if let Some(w) = out.witness {
            return Ok(Verdict {
                status: Status::True,
                certificate: Some(w),
                log,
            });
        }
    }
    Ok(Verdict {
        status: Status::Undetermined,
        certificate: None,
        log,
    })
}

/// Splitting certificate for strong F-regularity with test element `c`:
/// FALSE when R is not F-pure; TRUE at the first e ≤ e_max with
/// c · (I^[q] : I) ⊄ n^[q]; UNDETERMINED otherwise.
///
/// The validity of `c` (outside every minimal prime, with R_c strongly
/// F-regular) is the caller's responsibility. With `check_dimension` the
/// function at least checks dim S/(I + c) < dim S/I.
pub fn sfr_certificate(
    i: &Ideal,
    c: &Polynomial,
    e_max: u32,
    check_dimension: bool,
    budget: &Budget,
) -> Result<Verdict> {
    require_in_maximal(i)?;
    if c.is_zero() || i.contains_poly(c, budget)? {
        return Err(Error::CInIdeal);
    }
    if e_max == 0 {
        return Err(Error::InvalidArgument("e_max must be at least 1".into()));
    }
    if check_dimension {
        let with_c = i.with_generators([c.reorder(i.ring())?])?;
        let dim_i = krull_dim(i, budget)?;
        let drops = match krull_dim(&with_c, budget) {
            Ok(d) => d < dim_i,
            Err(Error::UnitIdeal) => true,
            Err(e) => return Err(e),
        };
        if !drops {
            return Err(Error::InvalidArgument(
                "test element does not cut down the dimension".into(),
            ));
        }
    }
    let fedder = fedder_fpure(i, budget)?;
    if fedder.is_false() {
        let generators = match fedder.certificate {
            Some(Certificate::Containment { generators, .. }) => generators,
            _ => 0,
        };
        return Ok(Verdict {
            status: Status::False,
            certificate: Some(Certificate::NotFPure { generators }),
            log: fedder.log,
        });
    }
    let p = i.ring().characteristic();
    let c = c.reorder(i.ring())?;
    let mut log = Vec::new();
    for e in 1..=e_max {
        let started = Instant::now();
        let q = level(p, e)?;
        let col = frobenius_colon(i, q, budget)?;
        let out = test_level(&col, &c, e, q, started, budget)?;
        log.push(out.record);
        if let Some(w) = out.witness {
            return Ok(Verdict {
                status: Status::True,
                certificate: Some(w),
                log,
            });
        }
    }
    Ok(Verdict {
        status: Status::Undetermined,
        certificate: None,
        log,
    })
}

/// Lift to S of the e-th splitting ideal: (n^[q] : (I^[q] : I)). Its colength
/// is the free rank a_e; it is the unit ideal when R does not split at level e.
pub fn splitting_ideal(i: &Ideal, e: u32, budget: &Budget) -> Result<Ideal> {
    require_in_maximal(i)?;
    if e == 0 {
        return Err(Error::InvalidArgument("splitting ideals start at e = 1".into()));
    }
    let q = level(i.ring().characteristic(), e)?;
    let nq = frobenius_power_of_maximal(i.ring(), q)?;
    let c = frobenius_colon(i, q, budget)?;
    let one = i.ring().one();
    if first_survivor(&c, &one, q, budget)?.0.is_none() {
        return Ok(Ideal::unit(i.ring()));
    }
    let c = c.minimalized(budget)?;
    // Only the part of the colon outside n^[q] matters.
    let survivors: Vec<Polynomial> = c
        .gens()
        .iter()
        .map(|g| g.truncate_frobenius(q))
        .filter(|g| !g.is_zero())
        .collect();
    let trimmed = Ideal::new(i.ring(), survivors)?;
    colon(&nq, &trimmed, budget)
}

/// Re-checks a witness certificate from scratch: `alpha ∈ (J^[q] : J)` for
/// every `J` in `ideals`, and `multiplier · alpha ∉ n^[q]`.
pub fn verify_witness(ideals: &[&Ideal], cert: &Certificate, budget: &Budget) -> Result<bool> {
    let Certificate::Witness {
        q,
        alpha,
        multiplier,
        element,
        ..
    } = cert
    else {
        return Ok(false);
    };
    let product = multiplier.reorder(alpha.ring())?.mul_truncated(alpha, *q)?;
    if product.is_zero() || product != element.reorder(alpha.ring())? {
        return Ok(false);
    }
    for j in ideals {
        let jq = bracket_power(j, *q)?;
        for g in j.gens() {
            if !jq.contains_poly(&alpha.mul(&g.reorder(alpha.ring())?)?, budget)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{minors2, parse_poly, MonomialOrder, RingSpec};
    use std::sync::Arc;

    fn ring(p: u64, vars: &[&str]) -> Arc<RingSpec> {
        RingSpec::new(p, vars, MonomialOrder::GrevLex).unwrap()
    }

    fn ideal(r: &Arc<RingSpec>, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_poly(g, r).unwrap())).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn regular_ring_is_fpure_with_unit_witness() {
        let r = ring(5, &["x", "y", "z"]);
        let v = fedder_fpure(&Ideal::zero(&r), &b()).unwrap();
        assert!(v.is_true());
        match v.certificate.unwrap() {
            Certificate::Witness { alpha, .. } => assert_eq!(alpha, r.one()),
            c => panic!("{c:?}"),
        }
    }

    #[test]
    fn node_is_fpure_in_char_two() {
        let r = ring(2, &["x", "y"]);
        let i = ideal(&r, &["x*y"]);
        let v = fedder_fpure(&i, &b()).unwrap();
        assert!(v.is_true());
        let cert = v.certificate.unwrap();
        assert!(verify_witness(&[&i], &cert, &b()).unwrap());
        match cert {
            Certificate::Witness { alpha, .. } => assert_eq!(alpha, parse_poly("x*y", &r).unwrap()),
            c => panic!("{c:?}"),
        }
    }

    #[test]
    fn cusp_is_not_fpure() {
        // y^2 - x^3 is not F-pure in characteristic 2 or 3.
        for p in [2, 3] {
            let r = ring(p, &["x", "y"]);
            let v = fedder_fpure(&ideal(&r, &["y^2 - x^3"]), &b()).unwrap();
            assert!(v.is_false(), "p = {p}");
        }
    }

    #[test]
    fn unit_constant_is_rejected() {
        let r = ring(3, &["x"]);
        assert_eq!(
            fedder_fpure(&ideal(&r, &["x + 1"]), &b()),
            Err(Error::IdealNotInMaximal)
        );
    }

    #[test]
    fn compatible_purity_of_a_coordinate_hyperplane() {
        let r = ring(3, &["x", "y"]);
        let v = compatibly_fpure_along(&Ideal::zero(&r), &ideal(&r, &["x"]), &b()).unwrap();
        assert!(v.is_true());
        match &v.certificate {
            Some(Certificate::Witness { alpha, .. }) => assert_eq!(*alpha, parse_poly("x^2", &r).unwrap()),
            c => panic!("{c:?}"),
        }
        let v = compatibly_fpure_along(&Ideal::zero(&r), &Ideal::zero(&r), &b()).unwrap();
        assert!(v.is_true());
    }

    #[test]
    fn sharp_exponents() {
        assert_eq!(sharp_exponent(Rational64::new(1, 2), 3).unwrap(), 1);
        assert_eq!(sharp_exponent(Rational64::new(2, 1), 27).unwrap(), 52);
        assert_eq!(sharp_exponent(Rational64::new(1, 3), 9).unwrap(), 3);
        assert_eq!(sharp_exponent(Rational64::new(0, 1), 9).unwrap(), 0);
        assert_eq!(sharp_exponent(Rational64::new(-1, 2), 9), Err(Error::NegativeT));
    }

    #[test]
    fn sharp_pairs_on_a_regular_ring() {
        let r = ring(3, &["x", "y"]);
        let zero = Ideal::zero(&r);
        let x = parse_poly("x", &r).unwrap();
        for t in [Rational64::new(0, 1), Rational64::new(1, 2), Rational64::new(1, 1)] {
            let v = sharply_fpure_pair(&zero, &x, t, 1, &b()).unwrap();
            assert!(v.is_true());
            assert_eq!(v.witness_level(), Some(1));
        }
        let v = sharply_fpure_pair(&zero, &x, Rational64::new(2, 1), 3, &b()).unwrap();
        assert_eq!(v.status, Status::Undetermined);
        assert_eq!(v.log.len(), 3);
        assert!(v.log.iter().all(|r| r.contained));
        assert_eq!(v.log.iter().map(|r| r.q).collect::<Vec<_>>(), vec![3, 9, 27]);
    }

    #[test]
    fn quadric_cone_sfr_certificate() {
        let r = ring(3, &["x", "y", "u", "v"]);
        let i = ideal(&r, &["x*v - y*u"]);
        let c = parse_poly("x", &r).unwrap();
        let v = sfr_certificate(&i, &c, 1, true, &b()).unwrap();
        assert!(v.is_true());
        match v.certificate.as_ref().unwrap() {
            Certificate::Witness { e, element, .. } => {
                assert_eq!(*e, 1);
                assert_eq!(*element, parse_poly("x^2*y*u*v + x*y^2*u^2", &r).unwrap());
            }
            c => panic!("{c:?}"),
        }
        assert!(verify_witness(&[&i], v.certificate.as_ref().unwrap(), &b()).unwrap());
        assert_eq!(
            sfr_certificate(&i, &parse_poly("x*v-y*u", &r).unwrap(), 1, false, &b()),
            Err(Error::CInIdeal)
        );
    }

    #[test]
    fn splitting_ideals() {
        let r = ring(3, &["x", "y"]);
        let s = splitting_ideal(&Ideal::zero(&r), 1, &b()).unwrap();
        assert!(s.equals(&ideal(&r, &["x^3", "y^3"]), &b()).unwrap());
        for p in [2, 3] {
            let r = ring(p, &["x", "y"]);
            let node = ideal(&r, &["x*y"]);
            for e in 1..=2 {
                let s = splitting_ideal(&node, e, &b()).unwrap();
                assert!(s.equals(&Ideal::maximal(&r), &b()).unwrap(), "p = {p}, e = {e}");
            }
        }
    }

    #[test]
    fn singh_ring_is_not_fpure_but_its_hyperplane_section_is() {
        let r = ring(3, &["a", "b", "c", "d", "t"]);
        let m = [["a^2+t^5", "b", "d"], ["c", "a^2", "b^2-d"]].map(|row| row.map(|s| parse_poly(s, &r).unwrap()));
        let a = Ideal::new(&r, minors2(&m).unwrap()).unwrap();
        assert!(fedder_fpure(&a, &b()).unwrap().is_false());
        assert!(splitting_ideal(&a, 1, &b()).unwrap().is_unit(&b()).unwrap());

        let r4 = ring(3, &["a", "b", "c", "d"]);
        let m = [["a^2", "b", "d"], ["c", "a^2", "b^2-d"]].map(|row| row.map(|s| parse_poly(s, &r4).unwrap()));
        let at = Ideal::new(&r4, minors2(&m).unwrap()).unwrap();
        let v = fedder_fpure(&at, &b()).unwrap();
        assert!(v.is_true());
        assert!(verify_witness(&[&at], v.certificate.as_ref().unwrap(), &b()).unwrap());
    }
}
