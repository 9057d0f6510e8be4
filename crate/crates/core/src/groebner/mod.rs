//! Groebner bases and the ideal operations every criterion reduces to.

mod buchberger;
mod ideal;
mod length;
mod ops;
mod reduce;
mod smooth;

pub use ideal::{GroebnerBasis, Ideal};
pub use length::{krull_dim, monomial_quotient_length, standard_basis_polys, standard_monomials, vs_length, Length};
pub use ops::{bracket_power, colon, colon_poly, eliminate, frobenius_power_of_maximal, intersect, saturate};
pub use smooth::{determinant, is_smooth};

use crate::config::Budget;
use crate::error::Result;
use crate::polyring::{MonomialOrder, Polynomial};

pub fn groebner_basis(i: &Ideal, order: MonomialOrder, budget: &Budget) -> Result<std::sync::Arc<GroebnerBasis>> {
    i.groebner_in(order, budget)
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis, budget: &Budget) -> Result<Polynomial> {
    gb.normal_form(f, budget)
}

pub fn ideal_member(f: &Polynomial, i: &Ideal, budget: &Budget) -> Result<bool> {
    i.contains_poly(f, budget)
}

pub fn ideal_contains(i: &Ideal, j: &Ideal, budget: &Budget) -> Result<bool> {
    i.contains(j, budget)
}

pub fn ideal_equal(i: &Ideal, j: &Ideal, budget: &Budget) -> Result<bool> {
    i.equals(j, budget)
}
