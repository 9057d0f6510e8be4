//! Shared helpers for the integration suites.

#![allow(dead_code)]

pub mod checks;
pub mod dense;

use std::path::PathBuf;
use std::sync::Arc;

use fsing::cli::input::{parse_input, InputFile};
use fsing::{Ideal, Monomial, MonomialOrder, Polynomial, RingSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> InputFile {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    parse_input(&text).expect("fixture parses")
}

pub fn all_fixtures() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_path(""))
        .expect("fixtures dir")
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".fsg"))
        .collect();
    names.sort();
    names
}

pub fn ring(p: u64, vars: &[&str]) -> Arc<RingSpec> {
    RingSpec::new(p, vars, MonomialOrder::GrevLex).unwrap()
}

pub fn poly(s: &str, r: &Arc<RingSpec>) -> Polynomial {
    fsing::parse_poly(s, r).unwrap()
}

pub fn ideal(gens: &[&str], r: &Arc<RingSpec>) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| poly(g, r))).unwrap()
}

/// A random polynomial with at most `terms` terms of total degree ≤ `deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, r: &Arc<RingSpec>, terms: usize, deg: u32) -> Polynomial {
    let n = r.nvars();
    let p = r.characteristic();
    let k = rng.gen_range(1..=terms);
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let mut exps = vec![0u32; n];
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            exps[rng.gen_range(0..n)] += 1;
        }
        out.push((Monomial::from_exponents(&exps).unwrap(), rng.gen_range(1..p)));
    }
    Polynomial::from_terms(r.clone(), out)
}
