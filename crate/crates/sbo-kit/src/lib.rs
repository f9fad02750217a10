//! Exact symbolic construction and machine verification of the conformally
//! covariant symmetry breaking operators between differential forms on ℝⁿ and
//! on its hyperplane: Weyl-algebra reductions, Gegenbauer recurrences, Juhl
//! and Branson operators, distribution kernels with their Gamma-factor
//! calculus, the Knapp–Stein and matrix-valued residue formulas, and the
//! vanishing classification — plus a floating-point quadrature cross-check.

pub mod algebra;
pub mod kernels;
pub mod operators;
pub mod numeric;
pub mod render;
pub mod report;
pub mod residue;
pub mod suites;
pub mod gegenbauer;
pub mod weyl;
