//! Default sampling presets for the three figure sets.
//!
//! The plotted ranges are a documented choice: x ∈ [−5, 5], fixed y (or t)
//! ∈ {1/2, 1, 2}, 400 steps for the line plots; a 100 × 50 surface over
//! x ∈ [−5, 5], y ∈ [1/10, 2] for the 3-D views.

use super::{sample, Axis, GridSpec, SampleTable};
use crate::error::Result;
use crate::pde::laguerre_solution;
use crate::ratfunc::phi_solution;
use crate::RatFn;

pub const FIXED_TIMES: [f64; 3] = [0.5, 1.0, 2.0];
pub const LINE_STEPS: usize = 400;
pub const X_RANGE: (f64, f64) = (-5.0, 5.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// `Φₙ^{(m)}` vs x at fixed y.
    PhiLines,
    /// `Φₙ^{(m)}` over an (x, y) surface.
    PhiSurfaces,
    /// Laguerre `uₙ` vs x at fixed t.
    LaguerreLines,
}

impl Figure {
    pub fn number(self) -> u8 {
        match self {
            Figure::PhiLines => 1,
            Figure::PhiSurfaces => 2,
            Figure::LaguerreLines => 3,
        }
    }

    /// `(n, m)` pairs for the Φ figures, `(n, 0)` for Laguerre.
    pub fn parameters(self) -> &'static [(i64, i64)] {
        match self {
            Figure::PhiLines => &[(2, 2), (4, 2), (4, 3), (9, 3)],
            Figure::PhiSurfaces => &[(10, 2), (3, 3), (10, 3), (10, 7)],
            Figure::LaguerreLines => &[(3, 0), (7, 0)],
        }
    }
}

#[derive(Clone, Debug)]
pub struct Panel {
    pub name: String,
    pub solution: RatFn,
    pub grids: Vec<GridSpec<f64>>,
}

impl Panel {
    pub fn sample(&self) -> Result<SampleTable<f64>> {
        let mut grids = self.grids.iter();
        let mut table = sample(&self.solution, grids.next().expect("panel has a grid"))?;
        for g in grids {
            table.extend(sample(&self.solution, g)?)?;
        }
        Ok(table)
    }

    pub fn file_name(&self) -> String {
        format!("{}.csv", self.name)
    }
}

fn x_axis(steps: usize) -> Axis<f64> {
    Axis::new("x", X_RANGE.0, X_RANGE.1, steps).expect("static axis")
}

fn lines(time_var: &str) -> Vec<GridSpec<f64>> {
    FIXED_TIMES.iter().map(|&t| GridSpec::line(x_axis(LINE_STEPS), vec![(time_var.to_string(), t)])).collect()
}

pub fn panels(figure: Figure) -> Result<Vec<Panel>> {
    let fig = figure.number();
    figure
        .parameters()
        .iter()
        .map(|&(n, m)| {
            Ok(match figure {
                Figure::PhiLines => {
                    Panel { name: format!("fig{fig}_phi_n{n}_m{m}"), solution: phi_solution(n, m)?, grids: lines("y") }
                }
                Figure::PhiSurfaces => Panel {
                    name: format!("fig{fig}_phi_n{n}_m{m}"),
                    solution: phi_solution(n, m)?,
                    grids: vec![GridSpec::surface(x_axis(100), Axis::new("y", 0.1, 2.0, 50)?, vec![])],
                },
                Figure::LaguerreLines => Panel {
                    name: format!("fig{fig}_laguerre_n{n}"),
                    solution: laguerre_solution(n)?,
                    grids: lines("t"),
                },
            })
        })
        .collect()
}
