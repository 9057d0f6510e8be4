//! Checks shared by the property suites and the acceptance run. Each returns
//! the list of violations, empty on success.

use std::ops::Range;

use fsing::frobenius::{compatibly_fpure_along, fedder_fpure, sfr_certificate, sharply_fpure_pair, verify_witness};
use fsing::groebner::{colon, ideal_member, vs_length};
use fsing::numerics::{csig_estimate, free_rank, rsig_estimate};
use fsing::perturb::{perturb_sweep, Perturbations, Property};
use fsing::{Budget, Certificate, Ideal, Polynomial, Status, Verdict};
use num_bigint::BigInt;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense::BoxQuotient;
use super::{all_fixtures, fixture, ideal, poly, random_poly, ring};

const VARS: [&str; 3] = ["x", "y", "z"];

/// One seeded oracle case: a zero-dimensional I = P + (random gens), a random J
/// and membership probes, half of them built inside I.
pub struct OracleCase {
    pub quotient: BoxQuotient,
    pub i_gens: Vec<Polynomial>,
    pub j_gens: Vec<Polynomial>,
    pub probes: Vec<Polynomial>,
}

pub fn oracle_case(seed: u64) -> OracleCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = [2u64, 3, 5][rng.gen_range(0..3)];
    let n = rng.gen_range(1..=3);
    let r = ring(p, &VARS[..n]);
    let bounds: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=4)).collect();
    let quotient = BoxQuotient::new(&r, &bounds);
    let mut i_gens = quotient.pure_powers();
    for _ in 0..rng.gen_range(0..=3) {
        i_gens.push(random_poly(&mut rng, &r, 4, 4));
    }
    let j_gens: Vec<_> = (0..rng.gen_range(1..=2))
        .map(|_| random_poly(&mut rng, &r, 3, 3))
        .collect();
    let mut probes = Vec::new();
    for _ in 0..3 {
        let mut f = r.zero();
        for g in &i_gens {
            f = f.add(&random_poly(&mut rng, &r, 2, 2).mul(g).unwrap()).unwrap();
        }
        probes.push(f);
        probes.push(random_poly(&mut rng, &r, 4, 5));
    }
    OracleCase {
        quotient,
        i_gens,
        j_gens,
        probes,
    }
}

#[derive(Debug, Default)]
pub struct OracleReport {
    pub cases: usize,
    pub mismatches: Vec<String>,
    /// Probes outside / inside I according to the oracle.
    pub members: [usize; 2],
    pub proper_colons: usize,
}

/// vs_length, ideal_member and colon against dense linear algebra in S/P.
pub fn oracle_suite(seeds: Range<u64>) -> OracleReport {
    let budget = Budget::unlimited();
    let mut rep = OracleReport::default();
    for seed in seeds {
        rep.cases += 1;
        let c = oracle_case(seed);
        let r = c.quotient.ring.clone();
        let i = Ideal::new(&r, c.i_gens.clone()).unwrap();
        let span = c.quotient.span(&c.i_gens);

        let len = vs_length(&i, &budget).unwrap();
        let want = BigInt::from(c.quotient.dim() - span.rank());
        if len.finite() != Some(&want) {
            rep.mismatches.push(format!("seed {seed}: vs_length {len:?} vs {want}"));
        }

        for f in &c.probes {
            let got = ideal_member(f, &i, &budget).unwrap();
            let want = span.contains(&c.quotient.vector(f));
            rep.members[usize::from(want)] += 1;
            if got != want {
                rep.mismatches
                    .push(format!("seed {seed}: member {} got {got}", f.render()));
            }
        }

        let j = Ideal::new(&r, c.j_gens.clone()).unwrap();
        let col = colon(&i, &j, &budget).unwrap();
        let oracle = c.quotient.colon(&c.i_gens, &c.j_gens);
        let col_len = vs_length(&col, &budget).unwrap();
        let want = BigInt::from(c.quotient.dim() - oracle.rank());
        if want > BigInt::from(0) {
            rep.proper_colons += 1;
        }
        let contained = col.gens().iter().all(|g| {
            c.quotient
                .basis
                .iter()
                .all(|m| oracle.contains(&c.quotient.vector_times(g, m)))
        });
        if col_len.finite() != Some(&want) || !contained {
            rep.mismatches.push(format!(
                "seed {seed}: colon length {col_len:?} vs {want}, contained {contained}"
            ));
        }
    }
    rep
}

/// Every named ideal of the fixture corpus that lies in the maximal ideal.
pub fn corpus() -> Vec<(String, Ideal)> {
    let mut out = Vec::new();
    for name in all_fixtures() {
        let f = fixture(&name);
        for (iname, i) in &f.ideals {
            if i.in_maximal() {
                out.push((format!("{name}:{iname}"), i.clone()));
            }
        }
    }
    out
}

/// Seeded hypersurfaces with no terms of degree below two.
pub fn random_hypersurfaces() -> Vec<(String, Ideal)> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..40)
        .map(|k| {
            let p = [2u64, 3][k % 2];
            let n = rng.gen_range(2..=3);
            let r = ring(p, &VARS[..n]);
            let f = random_poly(&mut rng, &r, 4, 4);
            let mut f = Polynomial::from_terms(
                r.clone(),
                f.terms().iter().filter(|(m, _)| m.degree() >= 2).cloned().collect(),
            );
            if f.is_zero() {
                f = poly("x*y", &r);
            }
            (
                format!("random {k}: {} over F_{p}", f.render()),
                Ideal::new(&r, [f]).unwrap(),
            )
        })
        .collect()
}

fn everything() -> Vec<(String, Ideal)> {
    corpus().into_iter().chain(random_hypersurfaces()).collect()
}

/// Fedder's verdict is TRUE exactly when a_1 ≥ 1. Also returns how many
/// FALSE and TRUE verdicts were seen.
pub fn fedder_vs_free_rank() -> (Vec<String>, [usize; 2]) {
    let b = Budget::default();
    let mut bad = Vec::new();
    let mut seen = [0usize; 2];
    for (what, i) in everything() {
        let v = fedder_fpure(&i, &b).unwrap();
        let a1 = free_rank(&i, 1, &b).unwrap();
        if v.status == Status::Undetermined || v.is_true() != (a1 >= BigInt::from(1)) {
            bad.push(format!("{what}: {:?} vs a_1 = {a1}", v.status));
        }
        seen[usize::from(v.is_true())] += 1;
    }
    (bad, seen)
}

/// Sharp purity of (R, x^0) is F-purity; a bounded search never says FALSE.
pub fn sharp_zero_vs_fedder() -> Vec<String> {
    let b = Budget::default();
    let mut bad = Vec::new();
    for (what, i) in everything() {
        let x = i.ring().var(0);
        let fedder = fedder_fpure(&i, &b).unwrap();
        let sharp = sharply_fpure_pair(&i, &x, Rational64::from_integer(0), 2, &b).unwrap();
        if sharp.is_true() != fedder.is_true() || sharp.status == Status::False {
            bad.push(format!("{what}: sharp {:?}, fedder {:?}", sharp.status, fedder.status));
        }
    }
    bad
}

/// csig_estimate ≤ rsig_estimate at every tested level.
/// (p, vars, gens, system of parameters, e_max)
type SigCase = (
    u64,
    &'static [&'static str],
    &'static [&'static str],
    &'static [&'static str],
    u32,
);

pub fn csig_below_rsig() -> Vec<String> {
    let b = Budget::default();
    let cases: [SigCase; 5] = [
        (2, &["x", "y"], &["x*y"], &["x-y"], 3),
        (3, &["x", "y"], &["x*y"], &["x+y"], 2),
        (2, &["x", "y", "z"], &["x*y", "x*z", "y*z"], &["x+y+z"], 2),
        (3, &["x", "y", "u", "v"], &["x*v - y*u"], &["x", "v", "y-u"], 1),
        (3, &["x", "y"], &[], &["x", "y"], 2),
    ];
    let mut bad = Vec::new();
    for (p, vars, gens, sop, e_max) in cases {
        let r = ring(p, vars);
        let i = ideal(gens, &r);
        let sop: Vec<_> = sop.iter().map(|s| poly(s, &r)).collect();
        for e in 1..=e_max {
            let rs = rsig_estimate(&i, &sop, e, 10_000, 11, None, &b).unwrap();
            let cs = csig_estimate(&i, &sop, e, 10_000, 11, None, &b).unwrap();
            if cs.value > rs.value || !rs.exhaustive || !cs.exhaustive {
                bad.push(format!("p={p} {gens:?} e={e}: csig {} rsig {}", cs.value, rs.value));
            }
        }
    }
    bad
}

/// The δ = 0 row of a sweep equals the direct run on I + (x).
pub fn baseline_rows_vs_direct() -> Vec<String> {
    let b = Budget::default();
    let cases = [
        ("node3.fsg", "Node", "x"),
        ("singh.fsg", "A", "t"),
        ("trivial.fsg", "Zero", "y"),
        ("counterexample.fsg", "R", "v"),
    ];
    let mut bad = Vec::new();
    for (file, name, elem) in cases {
        let f = fixture(file);
        let i = f.ideal(name).unwrap();
        let x = f.elem(elem).unwrap();
        let rep = perturb_sweep(&i, &x, &Perturbations::Explicit(vec![]), &Property::FPure, &b).unwrap();
        let direct = fedder_fpure(&i.with_generators([x.clone()]).unwrap(), &b).unwrap();
        if rep.rows.len() != 1 || rep.baseline().outcome.done().map(untimed) != Some(untimed(&direct)) {
            bad.push(format!("{file}: baseline row differs from the direct run"));
        }
    }
    bad
}

/// A verdict with its per-level timings zeroed, for comparisons.
fn untimed(v: &Verdict) -> Verdict {
    let mut v = v.clone();
    for r in &mut v.log {
        r.millis = 0;
    }
    v
}

fn reverify(what: &str, ideals: &[&Ideal], v: &Verdict, b: &Budget, bad: &mut Vec<String>) -> usize {
    match &v.certificate {
        Some(c @ Certificate::Witness { .. }) if v.is_true() => {
            if !verify_witness(ideals, c, b).unwrap() {
                bad.push(format!("{what}: witness does not re-verify"));
            }
            1
        }
        _ => 0,
    }
}

/// Every TRUE splitting verdict over the corpus carries a witness that
/// re-verifies from scratch. Returns the violations and the witness count.
pub fn certificates_reverify() -> (Vec<String>, usize) {
    let b = Budget::default();
    let mut bad = Vec::new();
    let mut count = 0;
    for (what, i) in everything() {
        let v = fedder_fpure(&i, &b).unwrap();
        count += reverify(&what, &[&i], &v, &b, &mut bad);
        let x = i.ring().var(0);
        let s = sharply_fpure_pair(&i, &x, Rational64::new(1, 2), 2, &b).unwrap();
        count += reverify(&format!("{what} sharp"), &[&i], &s, &b, &mut bad);
    }
    let t = fixture("compat.fsg");
    let (ti, ta) = (t.ideal("T").unwrap(), t.ideal("a").unwrap());
    let v = compatibly_fpure_along(&ti, &ta, &b).unwrap();
    count += reverify("compat T", &[&ti, &ti.sum(&ta).unwrap()], &v, &b, &mut bad);
    let q = fixture("quadric.fsg");
    let qi = q.ideal("Q").unwrap();
    let v = sfr_certificate(&qi, &poly("x", qi.ring()), 1, true, &b).unwrap();
    count += reverify("sfr quadric", &[&qi], &v, &b, &mut bad);
    (bad, count)
}
