//! Float sampling of exact solutions and finite-difference cross-checks.
//!
//! Nothing in here feeds back into the exact engine; it exists to produce
//! plot data and to give the symbolic residuals an independent numerical
//! witness.

mod compiled;
mod csv;
mod fd;
pub mod figures;

pub use compiled::CompiledRatFn;
pub use csv::emit_csv;
pub use fd::{fd_residual, fd_residuals, halving_ratios, FdEquation};

use num_traits::{Float, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ratfunc::RationalFn;
use crate::scalar::Scalar;

/// Relative pole threshold: a row is flagged when `|den| < POLE_THRESHOLD·(1 + |num|)`.
pub const POLE_THRESHOLD: f64 = 1e-9;

/// `steps` intervals over `[min, max]`, i.e. `steps + 1` nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis<F> {
    pub var: String,
    pub min: F,
    pub max: F,
    pub steps: usize,
}

impl<F: Float> Axis<F> {
    pub fn new(var: &str, min: F, max: F, steps: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min >= max {
            return Err(Error::InvalidGrid(format!("axis `{var}` needs finite min < max")));
        }
        if steps < 2 {
            return Err(Error::InvalidGrid(format!("axis `{var}` needs at least 2 steps")));
        }
        Ok(Axis { var: var.to_string(), min, max, steps })
    }

    pub fn node(&self, i: usize) -> F {
        if i == self.steps {
            return self.max;
        }
        let t = F::from(i).unwrap() / F::from(self.steps).unwrap();
        self.min + (self.max - self.min) * t
    }

    pub fn nodes(&self) -> Vec<F> {
        (0..=self.steps).map(|i| self.node(i)).collect()
    }

    pub fn spacing(&self) -> F {
        (self.max - self.min) / F::from(self.steps).unwrap()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec<F> {
    pub axis: Axis<F>,
    /// Second axis of a surface grid.
    pub second: Option<Axis<F>>,
    pub fixed: Vec<(String, F)>,
}

impl<F: Float> GridSpec<F> {
    pub fn line(axis: Axis<F>, fixed: Vec<(String, F)>) -> Self {
        GridSpec { axis, second: None, fixed }
    }

    pub fn surface(axis: Axis<F>, second: Axis<F>, fixed: Vec<(String, F)>) -> Self {
        GridSpec { axis, second: Some(second), fixed }
    }

    fn variables(&self) -> Vec<&str> {
        let mut vars = vec![self.axis.var.as_str()];
        if let Some(s) = &self.second {
            vars.push(&s.var);
        }
        vars.extend(self.fixed.iter().map(|(v, _)| v.as_str()));
        vars
    }

    /// Checks that the grid assigns each context variable exactly once and
    /// nothing else; returns the columns in context order.
    pub fn columns_for<C: Scalar>(&self, u: &RationalFn<C>) -> Result<Vec<String>> {
        let ctx = u.context();
        let vars = self.variables();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidGrid(format!("variable `{v}` assigned twice")));
            }
            if !ctx.contains(v) {
                return Err(Error::InvalidGrid(format!("variable `{v}` is not used by the function")));
            }
        }
        if let Some(missing) = ctx.names().iter().find(|n| !vars.contains(&n.as_str())) {
            return Err(Error::InvalidGrid(format!("grid does not assign `{missing}`")));
        }
        Ok(ctx.names().to_vec())
    }

    fn fixed_value(&self, var: &str) -> Option<F> {
        self.fixed.iter().find(|(v, _)| v == var).map(|(_, x)| *x)
    }

    /// Node coordinates in `columns` order, axis-major.
    pub fn nodes(&self, columns: &[String]) -> Vec<Vec<F>> {
        let first = self.axis.nodes();
        let second = self.second.as_ref().map(Axis::nodes).unwrap_or_else(|| vec![F::zero()]);
        let mut out = Vec::with_capacity(first.len() * second.len());
        for &a in &first {
            for &b in &second {
                out.push(
                    columns
                        .iter()
                        .map(|c| {
                            if *c == self.axis.var {
                                a
                            } else if self.second.as_ref().is_some_and(|s| s.var == *c) {
                                b
                            } else {
                                self.fixed_value(c).unwrap()
                            }
                        })
                        .collect(),
                );
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleRow<F> {
    pub coords: Vec<F>,
    pub value: F,
    pub den: F,
    pub pole: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleTable<F> {
    pub columns: Vec<String>,
    pub rows: Vec<SampleRow<F>>,
}

impl<F> SampleTable<F> {
    /// Appends the rows of another table over the same columns.
    pub fn extend(&mut self, other: SampleTable<F>) -> Result<()> {
        if self.columns != other.columns {
            return Err(Error::InvalidGrid("tables have different columns".into()));
        }
        self.rows.extend(other.rows);
        Ok(())
    }
}

/// Evaluates `u` at every grid node.
///
/// A row is flagged as a pole when the denominator is tiny relative to the
/// numerator, or when it is the smaller-magnitude end of a grid step across
/// which the denominator changes sign.
pub fn sample<C, F>(u: &RationalFn<C>, grid: &GridSpec<F>) -> Result<SampleTable<F>>
where
    C: Scalar + ToPrimitive,
    F: Float + Send + Sync,
{
    let columns = grid.columns_for(u)?;
    let compiled = CompiledRatFn::<F>::new(u, &columns)?;
    let nodes = grid.nodes(&columns);
    let threshold = F::from(POLE_THRESHOLD).unwrap();
    let mut rows: Vec<SampleRow<F>> = nodes
        .into_par_iter()
        .map(|coords| {
            let (num, den) = compiled.parts(&coords);
            let pole = den.abs() < threshold * (F::one() + num.abs());
            SampleRow { value: num / den, den, pole, coords }
        })
        .collect();

    let inner = grid.second.as_ref().map_or(1, |s| s.steps + 1);
    let outer = grid.axis.steps + 1;
    let index = |i: usize, j: usize| i * inner + j;
    let mut flag_crossing = |a: usize, b: usize| {
        let (da, db) = (rows[a].den, rows[b].den);
        if da * db < F::zero() {
            let k = if da.abs() <= db.abs() { a } else { b };
            rows[k].pole = true;
        }
    };
    for i in 0..outer {
        for j in 0..inner {
            if i + 1 < outer {
                flag_crossing(index(i, j), index(i + 1, j));
            }
            if j + 1 < inner {
                flag_crossing(index(i, j), index(i, j + 1));
            }
        }
    }
    Ok(SampleTable { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::phi_solution;
    use crate::scalar::integer;
    use crate::{Context, RatFn};

    fn line(min: f64, max: f64, steps: usize, y: f64) -> GridSpec<f64> {
        GridSpec::line(Axis::new("x", min, max, steps).unwrap(), vec![("y".into(), y)])
    }

    #[test]
    fn phi22_on_a_line() {
        let u = phi_solution(2, 2).unwrap();
        let table = sample(&u, &line(1.0, 2.0, 2, 0.0)).unwrap();
        let xs: Vec<_> = table.rows.iter().map(|r| r.coords[0]).collect();
        assert_eq!(xs, vec![1.0, 1.5, 2.0]);
        let values: Vec<_> = table.rows.iter().map(|r| r.value).collect();
        assert_eq!(values, vec![2.0, 2.0 / 1.5, 1.0]);
        assert!(table.rows.iter().all(|r| !r.pole));
    }

    #[test]
    fn poles_are_flagged() {
        let u = phi_solution(2, 2).unwrap();
        let table = sample(&u, &line(-1.0, 1.0, 2, 0.0)).unwrap();
        assert_eq!(table.rows.iter().map(|r| r.pole).collect::<Vec<_>>(), vec![false, true, false]);
        // x⁴ + 24xy has a simple root between grid nodes at y = 1
        let u = phi_solution(4, 3).unwrap();
        let table = sample(&u, &line(-3.0, -2.0, 10, 1.0)).unwrap();
        assert_eq!(table.rows.iter().filter(|r| r.pole).count(), 1);
    }

    #[test]
    fn constants_have_no_poles() {
        let u = RatFn::constant(Context::new(["x"]), integer(5));
        let grid = GridSpec::line(Axis::new("x", -1.0, 1.0, 4).unwrap(), vec![]);
        let table = sample(&u, &grid).unwrap();
        assert!(table.rows.iter().all(|r| r.value == 5.0 && !r.pole));
    }

    #[test]
    fn grid_validation() {
        assert!(Axis::new("x", 0.0, 0.0, 10).is_err());
        assert!(Axis::new("x", 0.0, 1.0, 1).is_err());
        assert!(Axis::<f64>::new("x", 0.0, f64::NAN, 4).is_err());
        let u = phi_solution(2, 2).unwrap();
        let missing_y = GridSpec::line(Axis::new("x", 0.0, 1.0, 4).unwrap(), vec![]);
        assert!(sample(&u, &missing_y).is_err());
        let extra = GridSpec::line(Axis::new("x", 0.0, 1.0, 4).unwrap(), vec![("y".into(), 1.0), ("t".into(), 1.0)]);
        assert!(sample(&u, &extra).is_err());
    }

    #[test]
    fn surface_order_is_axis_major() {
        let u = phi_solution(2, 2).unwrap();
        let grid =
            GridSpec::surface(Axis::new("x", 1.0, 2.0, 2).unwrap(), Axis::new("y", 1.0, 3.0, 2).unwrap(), vec![]);
        let table = sample(&u, &grid).unwrap();
        assert_eq!(table.rows.len(), 9);
        assert_eq!(table.rows[1].coords, vec![1.0, 2.0]);
        assert_eq!(table.rows[3].coords, vec![1.5, 1.0]);
    }

    #[test]
    fn single_precision_sampling() {
        let u = phi_solution(2, 2).unwrap();
        let grid = GridSpec::line(Axis::new("x", 1.0_f32, 2.0, 2).unwrap(), vec![("y".into(), 0.0)]);
        let table = sample(&u, &grid).unwrap();
        assert_eq!(table.rows[2].value, 1.0_f32);
    }
}
