//! Groebner-based lengths, membership and colons against dense linear algebra
//! in S/P, where P is a box of pure powers contained in every tested ideal.

mod common;

use common::dense::BoxQuotient;
use common::{checks, ideal, ring};
use fsing::frobenius::frobenius_colon;
use fsing::groebner::vs_length;
use fsing::numerics::{free_rank, hk_length};
use fsing::{Budget, Ideal};
use num_bigint::BigInt;

#[test]
fn random_ideals_agree_with_the_dense_oracle() {
    let rep = checks::oracle_suite(0..240);
    assert!(
        rep.mismatches.is_empty(),
        "{} mismatches:\n{}",
        rep.mismatches.len(),
        rep.mismatches.join("\n")
    );
    // The sample must exercise both answers.
    assert!(rep.members[0] > 100 && rep.members[1] > 100, "{:?}", rep.members);
    assert!(rep.proper_colons > 50, "{}", rep.proper_colons);
}

#[test]
fn quadric_hilbert_kunz_length_matches_the_oracle() {
    let r = ring(3, &["x", "y", "u", "v"]);
    let q = BoxQuotient::new(&r, &[3, 3, 3, 3]);
    let mut gens = q.pure_powers();
    gens.push(common::poly("x*v - y*u", &r));
    let oracle = q.length(&gens);
    assert_eq!(oracle, 35);
    let got = hk_length(&ideal(&["x*v - y*u"], &r), &Ideal::maximal(&r), 1, &Budget::default()).unwrap();
    assert_eq!(got, BigInt::from(oracle));
}

/// a_e computed through the splitting ideal agrees with q^n − ℓ(S/(C + n^[q]))
/// for C the Frobenius colon (I^[q] : I).
#[test]
fn free_rank_agrees_with_the_colon_route() {
    let budget = Budget::default();
    let cases: [(u64, &[&str], &[&str], u32); 6] = [
        (2, &["x", "y"], &["x*y"], 2),
        (3, &["x", "y"], &["x*y"], 2),
        (3, &["x", "y", "u", "v"], &["x*v - y*u"], 1),
        (2, &["x", "y", "z"], &["x*y", "x*z", "y*z"], 2),
        (3, &["x", "y"], &["y^2 - x^3"], 1),
        (5, &["x", "y", "z"], &["x^2 + y^2 + z^2"], 1),
    ];
    for (p, vars, gens, e_max) in cases {
        let r = ring(p, vars);
        let i = ideal(gens, &r);
        for e in 1..=e_max {
            let q = p.pow(e);
            let c = frobenius_colon(&i, q, &budget).unwrap();
            let n = vars.len() as u32;
            let frob = fsing::groebner::frobenius_power_of_maximal(&r, q).unwrap();
            let rest = vs_length(&c.sum(&frob).unwrap(), &budget).unwrap();
            let want = BigInt::from(q).pow(n) - rest.finite().unwrap();
            assert_eq!(free_rank(&i, e, &budget).unwrap(), want, "p={p} {gens:?} e={e}");
        }
    }
}
