//! m-adic perturbation experiments: evaluate a property or an invariant on
//! S/(I + (x + δ)) for a family of small δ and tabulate where it changes.
//!
//! A sweep over a one-parameter family is evidence about stability, not a
//! proof: the stability statements quantify over every δ in m^N.

use std::time::Instant;

use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::frobenius::{compatibly_fpure_along, fedder_fpure, sfr_certificate, sharply_fpure_pair};
use crate::groebner::{is_smooth, Ideal};
use crate::numerics::{fsig_estimate, hk_estimate, rsig_estimate};
use crate::polyring::Polynomial;
use crate::verdict::{Status, Verdict};

/// δ(N) = coefficient · direction^N for N in `range`.
#[derive(Debug, Clone)]
pub struct PerturbationFamily {
    pub coefficient: Polynomial,
    pub direction: Polynomial,
    pub range: Vec<u32>,
}

impl PerturbationFamily {
    pub fn new(coefficient: Polynomial, direction: Polynomial, range: Vec<u32>) -> Result<Self> {
        if direction.is_zero() || direction.constant_term() != 0 {
            return Err(Error::InvalidArgument(
                "the direction of a perturbation family must be a nonzero element of the maximal ideal".into(),
            ));
        }
        Ok(PerturbationFamily {
            coefficient,
            direction,
            range,
        })
    }

    pub fn delta(&self, n: u32) -> Result<Polynomial> {
        self.coefficient.mul(&self.direction.pow(n as u64)?)
    }
}

/// Which perturbations a sweep runs, besides the mandatory δ = 0 row.
#[derive(Debug, Clone)]
pub enum Perturbations {
    Family(PerturbationFamily),
    /// Arbitrary δ's, labeled 1, 2, ... in the given order. A zero entry is
    /// the baseline row and is not repeated.
    Explicit(Vec<Polynomial>),
}

impl Perturbations {
    fn rows(&self) -> Result<Vec<(Option<u32>, Polynomial)>> {
        match self {
            Perturbations::Family(f) => f.range.iter().map(|&n| Ok((Some(n), f.delta(n)?))).collect(),
            Perturbations::Explicit(list) => Ok(list
                .iter()
                .enumerate()
                .filter(|(_, d)| !d.is_zero())
                .map(|(k, d)| (Some(k as u32 + 1), d.clone()))
                .collect()),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Property {
    FPure,
    /// Compatible F-purity of S/(I + (x + δ)) along a fixed ideal.
    Compat(Ideal),
    /// Compatible F-purity of S/I along the perturbed element itself, (x + δ).
    CompatAlongElement,
    Sharp {
        x: Polynomial,
        t: Rational64,
        e_max: u32,
    },
    Sfr {
        c: Polynomial,
        e_max: u32,
    },
    Smooth {
        max_minors: u64,
    },
}

impl Property {
    pub fn name(&self) -> &'static str {
        match self {
            Property::FPure => "fpure",
            Property::Compat(_) => "compat",
            Property::CompatAlongElement => "compat-x",
            Property::Sharp { .. } => "sharp",
            Property::Sfr { .. } => "sfr",
            Property::Smooth { .. } => "smooth",
        }
    }

    /// Runs the property for the element `y`: on S/(I + (y)), except for
    /// [`Property::CompatAlongElement`], which tests S/I along (y).
    pub fn evaluate(&self, i: &Ideal, y: &Polynomial, budget: &Budget) -> Result<Verdict> {
        if let Property::CompatAlongElement = self {
            let a = Ideal::new(i.ring(), [y.clone()])?;
            return compatibly_fpure_along(i, &a, budget);
        }
        let i = &i.with_generators([y.clone()])?;
        match self {
            Property::FPure => fedder_fpure(i, budget),
            Property::Compat(a) => compatibly_fpure_along(i, a, budget),
            Property::CompatAlongElement => unreachable!(),
            Property::Sharp { x, t, e_max } => sharply_fpure_pair(i, x, *t, *e_max, budget),
            Property::Sfr { c, e_max } => sfr_certificate(i, c, *e_max, false, budget),
            Property::Smooth { max_minors } => is_smooth(i, None, *max_minors, budget),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Invariant {
    /// ℓ(R/J^[q]) / q^d.
    Hk(Ideal),
    Fsig,
    Rsig {
        sop: Vec<Polynomial>,
        cap: u64,
        seed: u64,
    },
}

impl Invariant {
    pub fn name(&self) -> &'static str {
        match self {
            Invariant::Hk(_) => "hk",
            Invariant::Fsig => "fsig",
            Invariant::Rsig { .. } => "rsig",
        }
    }

    /// The invariant of S/(I + (y)).
    pub fn evaluate(&self, i: &Ideal, y: &Polynomial, e: u32, budget: &Budget) -> Result<BigRational> {
        let i = &i.with_generators([y.clone()])?;
        Ok(match self {
            Invariant::Hk(j) => hk_estimate(i, j, e, None, budget)?.value,
            Invariant::Fsig => fsig_estimate(i, e, None, budget)?.value,
            Invariant::Rsig { sop, cap, seed } => rsig_estimate(i, sop, e, *cap, *seed, None, budget)?.value,
        })
    }
}

/// A row's result, or the budget overrun that stopped it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Done(T),
    BudgetExceeded { used: u64, limit: u64 },
}

impl<T> Outcome<T> {
    pub fn done(&self) -> Option<&T> {
        match self {
            Outcome::Done(t) => Some(t),
            Outcome::BudgetExceeded { .. } => None,
        }
    }
}

fn capture<T>(r: Result<T>) -> Result<Outcome<T>> {
    match r {
        Ok(t) => Ok(Outcome::Done(t)),
        Err(Error::BudgetExceeded { used, limit }) => Ok(Outcome::BudgetExceeded { used, limit }),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow<T> {
    /// `None` for the δ = 0 row.
    pub n: Option<u32>,
    pub delta: Polynomial,
    /// Lowest total degree of a term of δ (None when δ = 0); δ ∈ m^N iff this is ≥ N.
    pub delta_order: Option<u32>,
    pub outcome: Outcome<T>,
    pub millis: u64,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub property: String,
    pub rows: Vec<SweepRow<Verdict>>,
    /// First N whose status differs from the δ = 0 row.
    pub first_change: Option<u32>,
}

impl SweepReport {
    pub fn baseline(&self) -> &SweepRow<Verdict> {
        &self.rows[0]
    }

    pub fn stability_summary(&self) -> String {
        if self.baseline().outcome.done().is_none() {
            return "baseline exceeded its budget".into();
        }
        match self.first_change {
            Some(n) => format!("verdict changes at N = {n}"),
            None => "stable through range".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ContinuityRow {
    pub value: BigRational,
    /// |value - value at δ = 0|.
    pub delta_from_base: BigRational,
}

impl ContinuityRow {
    pub fn unchanged(&self) -> bool {
        self.delta_from_base.is_zero()
    }
}

#[derive(Debug, Clone)]
pub struct ContinuityReport {
    pub invariant: String,
    pub e: u32,
    pub rows: Vec<SweepRow<ContinuityRow>>,
}

fn min_degree(p: &Polynomial) -> Option<u32> {
    p.terms().iter().map(|(m, _)| m.degree()).min()
}

/// Shared row driver: evaluates `f` at y = x + δ for δ = 0 and each
/// perturbation, each with a fresh budget, in parallel but reported in order.
fn sweep_rows<T: Send>(
    i: &Ideal,
    x: &Polynomial,
    perturbations: &Perturbations,
    budget: &Budget,
    f: impl Fn(&Polynomial, &Budget) -> Result<T> + Sync,
) -> Result<Vec<SweepRow<T>>> {
    if x.constant_term() != 0 {
        return Err(Error::IdealNotInMaximal);
    }
    let x = x.reorder(i.ring())?;
    let mut specs = vec![(None, i.ring().zero())];
    specs.extend(perturbations.rows()?);
    specs
        .into_par_iter()
        .map(|(n, delta)| {
            let started = Instant::now();
            let delta = delta.reorder(i.ring())?;
            let y = x.add(&delta)?;
            let row_budget = budget.fresh();
            let outcome = capture(f(&y, &row_budget))?;
            Ok(SweepRow {
                n,
                delta_order: min_degree(&delta),
                delta,
                outcome,
                millis: started.elapsed().as_millis() as u64,
            })
        })
        .collect()
}

/// Evaluates `prop` at x + δ for δ = 0 and every perturbation.
/// Never stops early: the whole table is the result.
pub fn perturb_sweep(
    i: &Ideal,
    x: &Polynomial,
    perturbations: &Perturbations,
    prop: &Property,
    budget: &Budget,
) -> Result<SweepReport> {
    let rows = sweep_rows(i, x, perturbations, budget, |y, b| prop.evaluate(i, y, b))?;
    let base: Option<Status> = rows[0].outcome.done().map(|v| v.status);
    let first_change = base.and_then(|s| {
        rows[1..]
            .iter()
            .find(|r| r.outcome.done().is_some_and(|v| v.status != s))
            .and_then(|r| r.n)
    });
    Ok(SweepReport {
        property: prop.name().into(),
        rows,
        first_change,
    })
}

/// Exact invariant values on S/(I + (x + δ)) with their distance from δ = 0.
pub fn continuity_table(
    i: &Ideal,
    x: &Polynomial,
    perturbations: &Perturbations,
    e: u32,
    invariant: &Invariant,
    budget: &Budget,
) -> Result<ContinuityReport> {
    let raw = sweep_rows(i, x, perturbations, budget, |y, b| invariant.evaluate(i, y, e, b))?;
    let base = raw[0].outcome.done().cloned();
    let rows = raw
        .into_iter()
        .map(|r| SweepRow {
            n: r.n,
            delta: r.delta,
            delta_order: r.delta_order,
            millis: r.millis,
            outcome: match r.outcome {
                Outcome::Done(value) => Outcome::Done(ContinuityRow {
                    delta_from_base: base.as_ref().map_or_else(BigRational::zero, |b| (&value - b).abs()),
                    value,
                }),
                Outcome::BudgetExceeded { used, limit } => Outcome::BudgetExceeded { used, limit },
            },
        })
        .collect();
    Ok(ContinuityReport {
        invariant: invariant.name().into(),
        e,
        rows,
    })
}
