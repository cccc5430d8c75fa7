use num_traits::{Float, ToPrimitive};

use super::{sample, CompiledRatFn, GridSpec};
use crate::error::{invalid, Error, Result};
use crate::multipoly::MultiPoly;
use crate::ratfunc::RationalFn;
use crate::scalar::Scalar;

/// Which equation to approximate. Variable names are fixed per equation as in
/// the exact residual builders.
#[derive(Clone, Debug)]
pub enum FdEquation<C, F> {
    /// `u_t = ∂_s (∂_s + u)^{m−1} u`.
    Burgers { m: u32, time: String, space: String },
    /// `u_t = ∂ₓ x ∂ₓ u + ∂ₓu + u² + x ∂ₓ(u²)` over `(x, t)`.
    Laguerre,
    /// `v_t = ∂ₓ x ∂ₓ v + x (∂ₓv)²` for `v = ln h`, `h` the sampled function.
    LaguerreLog,
    /// `∂ᵧ y ∂ᵧ v + y (∂ᵧv)² = ∂ₓ²v + (∂ₓv)²` for `v = ln Ψ`.
    HybridLog,
    /// `u_t + (2/F) u uₓ = uₓₓ + u_yy` with `F = coefficient(y, t)`.
    VariableCoefficient { coefficient: MultiPoly<C> },
    /// `u_y = ∂ₓ[α u + β (∂ₓ+u) u + γ (∂ₓ+u)² u]`.
    Combined { alpha: F, beta: F, gamma: F },
}

type Field<'a, F> = Box<dyn Fn(&[F]) -> F + Sync + 'a>;

/// Second-order central difference of `g` along `axis`.
fn diff<F: Float>(g: &(dyn Fn(&[F]) -> F + Sync), p: &[F], axis: usize, h: F) -> F {
    let mut fwd = p.to_vec();
    let mut bwd = p.to_vec();
    fwd[axis] = fwd[axis] + h;
    bwd[axis] = bwd[axis] - h;
    (g(&fwd) - g(&bwd)) / (h + h)
}

fn derivative<'a, F: Float + Sync + 'a>(g: Field<'a, F>, axis: usize, h: F) -> Field<'a, F> {
    Box::new(move |p| diff(&*g, p, axis, h))
}

/// `(∂ + u)^k u`, built by nesting central differences.
fn shifted<'a, F: Float + Sync + 'a>(u: &'a (dyn Fn(&[F]) -> F + Sync), k: u32, axis: usize, h: F) -> Field<'a, F> {
    if k == 0 {
        return Box::new(move |p| u(p));
    }
    let prev = shifted(u, k - 1, axis, h);
    Box::new(move |p| diff(&*prev, p, axis, h) + u(p) * prev(p))
}

fn index_of(columns: &[String], var: &str) -> Result<usize> {
    columns.iter().position(|c| c == var).ok_or_else(|| Error::InvalidGrid(format!("equation needs variable `{var}`")))
}

impl<C, F> FdEquation<C, F>
where
    C: Scalar + ToPrimitive,
    F: Float + Send + Sync,
{
    fn residual_at(&self, field: &(dyn Fn(&[F]) -> F + Sync), columns: &[String], p: &[F], h: F) -> Result<F> {
        let two = F::one() + F::one();
        Ok(match self {
            FdEquation::Burgers { m, time, space } => {
                let (t, s) = (index_of(columns, time)?, index_of(columns, space)?);
                let flux = shifted(field, m - 1, s, h);
                diff(field, p, t, h) - diff(&*flux, p, s, h)
            }
            FdEquation::Laguerre => {
                let (x, t) = (index_of(columns, "x")?, index_of(columns, "t")?);
                let x_ux = move |q: &[F]| q[x] * diff(field, q, x, h);
                let sq = move |q: &[F]| field(q) * field(q);
                let u = field(p);
                let rhs = diff(&x_ux, p, x, h) + diff(field, p, x, h) + u * u + p[x] * diff(&sq, p, x, h);
                diff(field, p, t, h) - rhs
            }
            FdEquation::LaguerreLog => {
                let (x, t) = (index_of(columns, "x")?, index_of(columns, "t")?);
                let v = move |q: &[F]| field(q).ln();
                let x_vx = move |q: &[F]| q[x] * diff(&v, q, x, h);
                let vx = diff(&v, p, x, h);
                diff(&v, p, t, h) - (diff(&x_vx, p, x, h) + p[x] * vx * vx)
            }
            FdEquation::HybridLog => {
                let (x, y) = (index_of(columns, "x")?, index_of(columns, "y")?);
                let v = move |q: &[F]| field(q).ln();
                let y_vy = move |q: &[F]| q[y] * diff(&v, q, y, h);
                let vx_field = derivative(Box::new(v), x, h);
                let (vx, vy) = (vx_field(p), diff(&v, p, y, h));
                diff(&y_vy, p, y, h) + p[y] * vy * vy - diff(&*vx_field, p, x, h) - vx * vx
            }
            FdEquation::VariableCoefficient { coefficient } => {
                let (x, y, t) = (index_of(columns, "x")?, index_of(columns, "y")?, index_of(columns, "t")?);
                let coeff = CompiledRatFn::<F>::from_poly(coefficient, columns)?.eval(p);
                let ux = derivative(Box::new(move |q: &[F]| field(q)), x, h);
                let uy = derivative(Box::new(move |q: &[F]| field(q)), y, h);
                diff(field, p, t, h) + two / coeff * field(p) * ux(p) - diff(&*ux, p, x, h) - diff(&*uy, p, y, h)
            }
            FdEquation::Combined { alpha, beta, gamma } => {
                let (x, y) = (index_of(columns, "x")?, index_of(columns, "y")?);
                let once = shifted(field, 1, x, h);
                let twice = shifted(field, 2, x, h);
                let (a, b, g) = (*alpha, *beta, *gamma);
                let flux = move |q: &[F]| a * field(q) + b * once(q) + g * twice(q);
                diff(field, p, y, h) - diff(&flux, p, x, h)
            }
        })
    }
}

/// Maximum absolute central-difference residual of `eq` for the field `u`
/// over the unflagged nodes of `grid`.
pub fn fd_residual<C, F>(u: &RationalFn<C>, eq: &FdEquation<C, F>, grid: &GridSpec<F>, h: F) -> Result<F>
where
    C: Scalar + ToPrimitive,
    F: Float + Send + Sync,
{
    if h.is_nan() || h <= F::zero() {
        return Err(invalid("finite-difference step h must be positive"));
    }
    let table = sample(u, grid)?;
    let compiled = CompiledRatFn::<F>::new(u, &table.columns)?;
    let field = move |q: &[F]| compiled.eval(q);
    let mut worst: Option<F> = None;
    for row in table.rows.iter().filter(|r| !r.pole) {
        let r = eq.residual_at(&field, &table.columns, &row.coords, h)?.abs();
        worst = Some(match worst {
            Some(w) if w >= r || r.is_nan() => w,
            _ => r,
        });
    }
    worst.ok_or_else(|| Error::InvalidGrid("every grid node is next to a pole".into()))
}

/// [`fd_residual`] for each step in `steps`.
pub fn fd_residuals<C, F>(u: &RationalFn<C>, eq: &FdEquation<C, F>, grid: &GridSpec<F>, steps: &[F]) -> Result<Vec<F>>
where
    C: Scalar + ToPrimitive,
    F: Float + Send + Sync,
{
    steps.iter().map(|&h| fd_residual(u, eq, grid, h)).collect()
}

/// `r[i] / r[i+1]`; about 4 for a second-order scheme when `h` halves.
pub fn halving_ratios<F: Float>(residuals: &[F]) -> Vec<F> {
    residuals.windows(2).map(|w| w[0] / w[1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Axis;
    use crate::ratfunc::phi_solution;
    use crate::scalar::integer;
    use crate::{Context, Poly, RatFn, Rational};

    fn burgers2() -> FdEquation<Rational, f64> {
        FdEquation::Burgers { m: 2, time: "y".into(), space: "x".into() }
    }

    fn grid() -> GridSpec<f64> {
        GridSpec::line(Axis::new("x", 1.0, 3.0, 20).unwrap(), vec![("y".into(), 1.0)])
    }

    #[test]
    fn exact_solution_is_second_order_small() {
        let u = phi_solution(2, 2).unwrap();
        let r = fd_residual(&u, &burgers2(), &grid(), 1e-3).unwrap();
        assert!(r < 1e-5, "{r}");
        let rs = fd_residuals(&u, &burgers2(), &grid(), &[1e-2, 5e-3, 2.5e-3]).unwrap();
        for ratio in halving_ratios(&rs) {
            assert!((3.5..=4.5).contains(&ratio), "{ratio}");
        }
    }

    #[test]
    fn constant_field_has_tiny_residual() {
        let u = RatFn::constant(Context::new(["x", "y"]), integer(3));
        assert!(fd_residual(&u, &burgers2(), &grid(), 1e-3).unwrap() < 1e-9);
    }

    #[test]
    fn wrong_field_is_detected() {
        let x = Poly::var(Context::new(["x", "y"]), "x");
        let u = RatFn::new(Poly::constant(x.context().clone(), integer(3)), x).unwrap();
        assert!(fd_residual(&u, &burgers2(), &grid(), 1e-3).unwrap() > 0.1);
    }

    #[test]
    fn rejects_bad_inputs() {
        let u = phi_solution(2, 2).unwrap();
        assert!(fd_residual(&u, &burgers2(), &grid(), 0.0).is_err());
        // every node at x = 0, y = 0 is a pole
        let poles = GridSpec::line(Axis::new("y", -1e-12, 1e-12, 2).unwrap(), vec![("x".into(), 0.0)]);
        assert!(fd_residual(&u, &burgers2(), &poles, 1e-3).is_err());
    }
}
