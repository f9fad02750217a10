//! Exact arithmetic foundation: rational scalars, the parameter field ℚ(λ, ν),
//! spatial polynomials, index sets and sign conventions.

pub mod index;
pub mod param;
pub mod rational;
pub mod xpoly;

pub use index::{
    epsilon_weight, project_basis, s_polynomial, sign_between, sign_pair, IndexSet,
    OperatorSignature,
};
pub use param::{binomial, factorial, qi, qr, rational_to_f64, ParamExp, ParamPoly, Q};
pub use rational::{Affine, Rat};
pub use xpoly::{eval_rational_poly, MultiPolynomial, XExp};
