//! Exact arithmetic substrate: rationals, homogeneous trivariate forms,
//! univariate polynomials and binary forms, factorization up to degree four,
//! number fields, and Sylvester resultants.

pub mod factor;
pub mod hform;
pub(crate) mod modp;
pub mod numfield;
pub mod rat;
pub mod resultant;
pub mod unipoly;

pub use factor::{factor_irreducible, quadratic_roots, rational_roots};
pub use hform::{dim_graded, line_parametrization, monomial_basis, Exp, HForm, Var};
pub use numfield::NumberField;
pub use rat::{Int, Rat};
pub use resultant::resultant_eliminating;
pub use unipoly::{BinaryForm, UniPoly};
