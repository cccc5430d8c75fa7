//! Residual builders for the linear heat-type equations and the nonlinear
//! Burgers-type equations they linearize.
//!
//! Every builder returns `LHS − RHS` after substituting the candidate
//! solution; the candidate solves the equation iff the residual is the zero
//! polynomial or has a zero numerator. Builders named `*_of` take an arbitrary
//! candidate, the others construct the known special-polynomial solution
//! first.

mod equation;
mod op;

pub use equation::{Equation, Residual, VerificationReport};
pub use op::{Atom, LinearDiffOp};

use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::families::{
    complete_context, hermite2, hermite3_complete, hermite_complete_m, hermite_lacunary, hybrid_l2, laguerre2,
    shifted_hermite3, TruncatedSeries,
};
use crate::multipoly::Context;
use crate::scalar::{factorial, integer, Rational};
use crate::{Poly, RatFn};

fn positive_degree(n: i64) -> Result<()> {
    if n < 1 {
        return Err(invalid(format!("degree n must be at least 1, got {n}")));
    }
    Ok(())
}

/// `lhs(Z) − rhs(Z)`.
pub fn verify_linear_pde(z: &Poly, lhs: &LinearDiffOp<Rational>, rhs: &LinearDiffOp<Rational>) -> Poly {
    &lhs.apply(z) - &rhs.apply(z)
}

/// `∂_time Z − ∂_space^m Z` for the lacunary Hermite `Hₙ^{(m)}`.
pub fn heat_residual(n: i64, m: i64) -> Result<Poly> {
    let z = hermite_lacunary(n, m)?;
    Ok(heat_residual_of(&z, m as u32))
}

pub fn heat_residual_of(z: &Poly, m: u32) -> Poly {
    verify_linear_pde(z, &LinearDiffOp::derivative("y", 1), &LinearDiffOp::derivative("x", m))
}

/// `∂_t u − ∂_s (∂_s + u)^{m−1} u`, the m-th member of the Burgers hierarchy.
pub fn burgers_residual(u: &RatFn, m: i64, time: &str, space: &str) -> Result<RatFn> {
    if m < 2 {
        return Err(invalid(format!("Burgers order m must be at least 2, got {m}")));
    }
    let flux = u.shifted_derivative_power(m as u32 - 1, space);
    Ok(&u.derivative(time) - &flux.derivative(space))
}

/// `n Hₙ₋₁^{(m)}(x1..xm) / Hₙ^{(m)}(x1..xm)` for the complete family.
pub fn hierarchical_solution(n: i64, m: i64) -> Result<RatFn> {
    positive_degree(n)?;
    let num = hermite_complete_m(n - 1, m)?.scale(&integer(n));
    RatFn::new(num, hermite_complete_m(n, m)?)
}

/// `∂_{xk} u − ∂_{x1}(∂_{x1} + u)^{k−1} u` for the complete-Hermite solution.
pub fn hierarchical_burgers_residual(n: i64, m: i64, k: i64) -> Result<RatFn> {
    if k <= 1 || k > m {
        return Err(invalid(format!("k must satisfy 1 < k <= m, got k={k}, m={m}")));
    }
    hierarchical_residual_of(&hierarchical_solution(n, m)?, k)
}

pub fn hierarchical_residual_of(u: &RatFn, k: i64) -> Result<RatFn> {
    burgers_residual(u, k, &format!("x{k}"), "x1")
}

/// `∂ₓLₙ / Lₙ` over `(x, t)`.
pub fn laguerre_solution(n: i64) -> Result<RatFn> {
    positive_degree(n)?;
    RatFn::hopf_cole(&laguerre2(n)?, "x")
}

pub fn laguerre_burgers_residual(n: i64) -> Result<RatFn> {
    Ok(laguerre_burgers_residual_of(&laguerre_solution(n)?))
}

/// `∂ₜu − [∂ₓ x ∂ₓ u + ∂ₓu + u² + x ∂ₓ(u²)]`.
pub fn laguerre_burgers_residual_of(u: &RatFn) -> RatFn {
    let u_x = u.derivative("x");
    let u_sq = u * u;
    let diffusion = LinearDiffOp::laguerre("x").apply_rational(u);
    let rhs = &(&(&diffusion + &u_x) + &u_sq) + &u_sq.derivative("x").mul_var("x");
    &u.derivative("t") - &rhs
}

pub fn log_burgers_residual_laguerre(n: i64) -> Result<RatFn> {
    positive_degree(n)?;
    log_laguerre_residual_of(&laguerre2(n)?)
}

/// Residual of `∂ₜu = ∂ₓ x ∂ₓ u + x (∂ₓu)²` at `u = ln h`.
///
/// `ln h` is not rational but its derivatives are: `uₓ = hₓ/h`, `uₜ = hₜ/h`.
/// Those are substituted directly, so the residual is rational and simplifies
/// to `(hₜ − ∂ₓ x ∂ₓ h) / h`.
pub fn log_laguerre_residual_of(h: &Poly) -> Result<RatFn> {
    let u_x = RatFn::hopf_cole(h, "x")?;
    let u_t = RatFn::hopf_cole(h, "t")?;
    let rhs = &u_x.mul_var("x").derivative("x") + &(&u_x * &u_x).mul_var("x");
    Ok(&u_t - &rhs)
}

pub fn hybrid_log_burgers_residual(n: i64) -> Result<RatFn> {
    hybrid_log_residual_of(&hybrid_l2(n)?)
}

/// Residual of `∂ᵧ y ∂ᵧ u + y (∂ᵧu)² = ∂ₓ²u + (∂ₓu)²` at `u = ln Ψ`, reducing
/// to `(∂ᵧ y ∂ᵧ Ψ − ∂ₓ²Ψ) / Ψ`.
pub fn hybrid_log_residual_of(psi: &Poly) -> Result<RatFn> {
    let u_x = RatFn::hopf_cole(psi, "x")?;
    let u_y = RatFn::hopf_cole(psi, "y")?;
    let lhs = &u_y.mul_var("y").derivative("y") + &(&u_y * &u_y).mul_var("y");
    let rhs = &u_x.derivative("x") + &(&u_x * &u_x);
    Ok(&lhs - &rhs)
}

/// `∂ᵧ y ∂ᵧ Ψ − ∂ₓ²Ψ` for `Ψ = ₂𝓛ₙ`.
pub fn hybrid_linear_residual(n: i64) -> Result<Poly> {
    Ok(hybrid_linear_residual_of(&hybrid_l2(n)?))
}

pub fn hybrid_linear_residual_of(psi: &Poly) -> Poly {
    verify_linear_pde(psi, &LinearDiffOp::laguerre("y"), &LinearDiffOp::derivative("x", 2))
}

/// `(u, F)` with `F = Hₙ(y, t)` and `u = −F · n Hₙ₋₁(x, t) / Hₙ(x, t)`.
pub fn variable_coefficient_solution(n: i64) -> Result<(RatFn, Poly)> {
    positive_degree(n)?;
    let f = hermite2(n)?.renamed(&[("x", "y"), ("y", "t")]);
    let in_xt = |p: Poly| p.renamed(&[("y", "t")]);
    let phi = RatFn::new(in_xt(hermite2(n - 1)?).scale(&integer(n)), in_xt(hermite2(n)?))?;
    let u = -&phi.mul_poly(&f);
    Ok((u, f))
}

pub fn variable_coefficient_residual(n: i64) -> Result<RatFn> {
    let (u, f) = variable_coefficient_solution(n)?;
    variable_coefficient_residual_of(&u, &f)
}

/// `∂ₜu + (2/F) u ∂ₓu − ∂ₓ²u − ∂ᵧ²u`.
pub fn variable_coefficient_residual_of(u: &RatFn, f: &Poly) -> Result<RatFn> {
    let two_over_f = RatFn::new(Poly::constant(f.context().clone(), integer(2)), f.clone())?;
    let advection = &(&two_over_f * u) * &u.derivative("x");
    let diffusion = &u.derivative("x").derivative("x") + &u.derivative("y").derivative("y");
    Ok(&(&u.derivative("t") + &advection) - &diffusion)
}

/// `n Hₙ₋₁(x+αy, βy, γy) / Hₙ(x+αy, βy, γy)`.
pub fn combined_solution(n: i64, alpha: &Rational, beta: &Rational, gamma: &Rational) -> Result<RatFn> {
    positive_degree(n)?;
    let num = shifted_hermite3(n - 1, alpha, beta, gamma)?.scale(&integer(n));
    RatFn::new(num, shifted_hermite3(n, alpha, beta, gamma)?)
}

pub fn combined_burgers_residual(n: i64, alpha: &Rational, beta: &Rational, gamma: &Rational) -> Result<RatFn> {
    let u = combined_solution(n, alpha, beta, gamma)?;
    Ok(combined_residual_of(&u, alpha, beta, gamma))
}

/// `∂ᵧu − ∂ₓ[α u + β (∂ₓ+u) u + γ (∂ₓ+u)² u]`.
pub fn combined_residual_of(u: &RatFn, alpha: &Rational, beta: &Rational, gamma: &Rational) -> RatFn {
    let once = u.shifted_derivative_power(1, "x");
    let twice = &once.derivative("x") + &(u * &once);
    let flux = &(&u.scale(alpha) + &once.scale(beta)) + &twice.scale(gamma);
    &u.derivative("y") - &flux.derivative("x")
}

/// `∂ᵧΨ − (α∂ₓ + β∂ₓ² + γ∂ₓ³)Ψ` for the shifted Hermite solution.
pub fn verify_combined_linear(n: i64, alpha: &Rational, beta: &Rational, gamma: &Rational) -> Result<Poly> {
    let psi = shifted_hermite3(n, alpha, beta, gamma)?;
    Ok(combined_linear_residual_of(&psi, alpha, beta, gamma))
}

pub fn combined_linear_residual_of(psi: &Poly, alpha: &Rational, beta: &Rational, gamma: &Rational) -> Poly {
    let rhs = LinearDiffOp::cubic("x", alpha.clone(), beta.clone(), gamma.clone());
    verify_linear_pde(psi, &LinearDiffOp::derivative("y", 1), &rhs)
}

/// `(Fₙ, Sₙ) = ((n−1)Hₙ₋₂ / Hₙ₋₁, (n−1)(n−2)Hₙ₋₃ / Hₙ₋₁)`.
pub fn hermite_identity_parts(n: i64) -> Result<(RatFn, RatFn)> {
    if n < 3 {
        return Err(invalid(format!("the Hermite identity needs n >= 3, got {n}")));
    }
    let den = hermite2(n - 1)?;
    let f = RatFn::new(hermite2(n - 2)?.scale(&integer(n - 1)), den.clone())?;
    let s = RatFn::new(hermite2(n - 3)?.scale(&integer((n - 1) * (n - 2))), den)?;
    Ok((f, s))
}

pub fn hermite_identity_residual(n: i64) -> Result<RatFn> {
    let (f, s) = hermite_identity_parts(n)?;
    Ok(identity_residual_of(&f, &s))
}

/// `(∂ₓ + F) F − S`.
pub fn identity_residual_of(f: &RatFn, s: &RatFn) -> RatFn {
    &f.shifted_derivative_power(1, "x") - s
}

/// Expands `exp(x1 t + … + xm t^m)` to order `t^N` and returns the degrees
/// `n ≤ N` where `n! [tⁿ]` differs from `hermite_complete_m(n, m)`.
///
/// The expansion goes through the exponential of the whole sum, a different
/// route from the product of single exponentials used by the constructor.
pub fn generating_series_mismatches(m: i64, truncation: i64, offset: &Rational) -> Result<Vec<u32>> {
    if m < 2 {
        return Err(invalid(format!("order m must be at least 2, got {m}")));
    }
    let order = u32::try_from(truncation).map_err(|_| invalid(format!("N must be nonnegative, got {truncation}")))?;
    let ctx = complete_context(m as u32);
    let mut coeffs = vec![Poly::zero(ctx.clone()); order as usize + 1];
    for k in 1..=(m as u32).min(order) {
        coeffs[k as usize] = Poly::var(ctx.clone(), &format!("x{k}"));
    }
    let series = TruncatedSeries::from_coeffs(coeffs).exp();
    let mut bad = Vec::new();
    for n in 0..=order {
        let generated = series.coeff(n).scale(&Rational::from_integer(factorial(n)));
        let reference = &hermite_complete_m(n as i64, m)? + &Poly::constant(ctx.clone(), offset.clone());
        if generated != reference {
            bad.push(n);
        }
    }
    Ok(bad)
}

pub fn generating_series_check(m: i64, truncation: i64) -> Result<bool> {
    Ok(generating_series_mismatches(m, truncation, &Rational::zero())?.is_empty())
}

/// `∂ₓΨ − uΨ` for `Ψ = Hₙ^{(3)}(x, y)` and `u = ∂ₓΨ/Ψ`.
pub fn observation_chain_residual(n: i64) -> Result<RatFn> {
    let psi = hermite_lacunary(n, 3)?;
    let u = RatFn::hopf_cole(&psi, "x")?;
    Ok(&RatFn::from_poly(psi.partial_derivative("x")) - &u.mul_poly(&psi))
}

/// Difference between the expanded third-order right-hand side
/// `∂ₓ(u³) + 3(∂ₓu)² + 3u∂ₓ²u + ∂ₓ³u` and the compact `∂ₓ(∂ₓ+u)²u`.
pub fn third_order_forms_difference(u: &RatFn) -> RatFn {
    let u_x = u.derivative("x");
    let u_xx = u_x.derivative("x");
    let cube = &(u * u) * u;
    let three = integer(3);
    let expanded =
        &(&(&cube.derivative("x") + &(&u_x * &u_x).scale(&three)) + &(u * &u_xx).scale(&three)) + &u_xx.derivative("x");
    let compact = u.shifted_derivative_power(2, "x").derivative("x");
    &expanded - &compact
}

/// `d/dz z d/dz C₀ᴺ(λz) − λ C₀ᴺ(λz)` with `λ` a formal variable `lambda`.
pub fn c0_eigen_residual(truncation: i64) -> Result<Poly> {
    let c0 = crate::families::bessel_c0_truncated(truncation)?;
    let ctx = Context::new(["z", "lambda"]);
    let lz = Poly::monomial(ctx.clone(), &[("lambda", 1), ("z", 1)], Rational::one());
    let scaled = c0.substitute("z", &lz).with_context(&ctx)?;
    let lambda = Poly::var(ctx, "lambda");
    let op = LinearDiffOp::laguerre("z");
    Ok(&op.apply(&scaled) - &(&lambda * &scaled))
}

/// Reduction checks on the complete third-order family: at `x2 = 0` it is the
/// lacunary `Hₙ^{(3)}(x1, x3)`, at `x3 = 0` the Hermite `Hₙ(x1, x2)`.
pub fn complete_reductions_hold(n: i64) -> Result<bool> {
    let h = hermite3_complete(n)?;
    let zero = Poly::zero(Context::empty());
    let lacunary = hermite_lacunary(n, 3)?.renamed(&[("x", "x1"), ("y", "x3")]);
    let heat = hermite2(n)?.renamed(&[("x", "x1"), ("y", "x2")]);
    Ok(h.substitute("x2", &zero) == lacunary && h.substitute("x3", &zero) == heat)
}

/// `∂_{x1} H = n Hₙ₋₁` and `∂_{x2} H = ∂_{x1}² H` on the complete family.
pub fn complete_recurrences_hold(n: i64) -> Result<bool> {
    positive_degree(n)?;
    let h = hermite3_complete(n)?;
    let lower = hermite3_complete(n - 1)?.scale(&integer(n));
    Ok(h.partial_derivative("x1") == lower && h.partial_derivative("x2") == h.nth_derivative("x1", 2))
}

/// `∂ₓ Hₙ^{(m)} = n Hₙ₋₁^{(m)}`.
pub fn lacunary_recurrence_holds(n: i64, m: i64) -> Result<bool> {
    positive_degree(n)?;
    let lower = hermite_lacunary(n - 1, m)?.scale(&integer(n));
    Ok(hermite_lacunary(n, m)?.partial_derivative("x") == lower)
}
