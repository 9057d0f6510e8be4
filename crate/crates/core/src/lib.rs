//! Exact tests and finite-level estimates for Frobenius singularities of
//! quotients S/I, where S is a polynomial ring over F_p read locally at the
//! origin.
//!
//! The crate is layered bottom-up:
//!
//! - [`polyring`]: prime fields, monomial orders, sparse polynomials, parser.
//! - [`groebner`]: Buchberger and the ideal algebra (colon, intersection,
//!   bracket powers, lengths, dimension, Jacobian smoothness).
//! - [`frobenius`]: Fedder-type splitting criteria with certificates.
//! - [`numerics`]: Hilbert-Kunz lengths, free ranks and signature estimates.
//! - [`perturb`]: sweeps of S/(I + (x + δ)) over families δ = c·g^N.
//! - [`cli`]: the `fsing` input format, commands, JSON records, result cache.
//!
//! ## Examples
//!
//! Each capability has a runnable example (`cargo run --release --example NAME`):
//!
//! - `fedder_singh`: Fedder's criterion on a ring that is not F-pure and on a
//!   hyperplane section that is.
//! - `counterexample_sweep`: F-purity fails along every perturbation v - w^N.
//! - `fsig_discontinuity`: a_1/q^d jumps from 1/9 to 0 on the same family.
//! - `hilbert_kunz`: HK lengths, free ranks and splitting dimension.
//! - `sharp_pairs`: bounded search for sharp F-purity of (S, x^t).
//! - `compat_purity`: compatible F-purity along an ideal, with a witness.
//! - `smoothness`: the Jacobian criterion on affine charts.
//! - `rational_signature`: rsig and csig estimates over socle subspaces.

// Bracket powers I^[q] are written as in the literature, not as doc links.
#![allow(rustdoc::broken_intra_doc_links)]

pub mod cli;
pub mod config;
pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod numerics;
pub mod perturb;
pub mod polyring;
pub mod verdict;

pub use config::{Budget, Config};
pub use error::{Error, Result};
pub use groebner::{GroebnerBasis, Ideal, Length};
pub use polyring::{parse_poly, Monomial, MonomialOrder, Polynomial, RingSpec};
pub use verdict::{Certificate, SearchRecord, Status, Verdict};
