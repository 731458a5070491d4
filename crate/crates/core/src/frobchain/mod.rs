//! The Frobenius chain, the appendix polynomials and the checks tying them
//! together.

pub mod appendix;
pub mod chain;
pub mod gsystem;
pub mod identities;
pub mod normal;
pub mod predicate;

pub use appendix::{eval_appendix, Appendix, AppendixPoly, PolyId, YPoly, CORRECTIONS};
pub use chain::{chain_matrix, derived_coeffs, ChainMatrix, DerivedCoeffs, Mat2};
pub use gsystem::{g_system_checks, GSystemReport};
pub use normal::{normal_basis_find, NormalBasis};
pub use predicate::{count_secants_a_nonzero, secant_predicate_fi, FiEvaluator, SecantReport};
