//! Exact special-polynomial solutions of heat-type and Burgers-type PDEs.
//!
//! Polynomial families (two-variable and higher-order Hermite, two-variable
//! Laguerre, the hybrid Hermite-Laguerre family) are built as exact sparse
//! multivariate polynomials. The Hopf-Cole transform `u = ∂ₓZ / Z` turns them
//! into rational functions, and every PDE residual is checked for exact
//! cancellation. A float layer samples solutions on grids and cross-checks the
//! symbolic results with finite differences.
//!
//! The algebra is generic over the coefficient type (see [`Scalar`]); the
//! aliases below fix it to exact rationals, which is what the verification
//! code uses.

pub mod error;
pub mod families;
pub mod multipoly;
pub mod numeric;
pub mod pde;
pub mod ratfunc;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};
pub use multipoly::{Context, Monomial, MultiPoly};
pub use ratfunc::RationalFn;
pub use scalar::{Rational, Scalar};

/// Exact polynomial with rational coefficients.
pub type Poly = MultiPoly<Rational>;
/// Exact rational function with rational coefficients.
pub type RatFn = RationalFn<Rational>;
/// Float grid over binary64.
pub type Grid = numeric::GridSpec<f64>;
/// Sample table over binary64.
pub type Samples = numeric::SampleTable<f64>;
