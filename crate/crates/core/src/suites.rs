//! Named verification suites, shared by the `report` command and the
//! acceptance tests. Each suite returns one item per check, in a fixed order.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::families::{apply_c0_operator, hermite3_complete, hermite_complete_m, hybrid_l2, xt, xy};
use crate::numeric::figures::{panels, Figure, FIXED_TIMES, LINE_STEPS, X_RANGE};
use crate::numeric::{fd_residuals, halving_ratios, sample, Axis, FdEquation, GridSpec};
use crate::pde::{
    c0_eigen_residual, combined_solution, complete_recurrences_hold, complete_reductions_hold, generating_series_check,
    lacunary_recurrence_holds, laguerre_solution, observation_chain_residual, third_order_forms_difference,
    variable_coefficient_solution, Equation,
};
use crate::ratfunc::phi_solution;
use crate::scalar::{factorial, integer, rational, Rational};
use crate::{Context, Poly, RatFn};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl SuiteItem {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        SuiteItem { name: name.into(), passed, detail: detail.into() }
    }

    fn from_result(name: impl Into<String>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Self::new(name, passed, detail),
            Err(e) => Self::new(name, false, format!("error: {e}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub items: Vec<SuiteItem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    DisplayFixtures,
    ResidualSweep,
    Structural,
    NegativeControls,
    FdCrosscheck,
    FigureShape,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::DisplayFixtures,
        Suite::ResidualSweep,
        Suite::Structural,
        Suite::NegativeControls,
        Suite::FdCrosscheck,
        Suite::FigureShape,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::DisplayFixtures => "paper-fixtures",
            Suite::ResidualSweep => "residual-sweep",
            Suite::Structural => "structural",
            Suite::NegativeControls => "negative-controls",
            Suite::FdCrosscheck => "fd-crosscheck",
            Suite::FigureShape => "figure-shape",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.id() == id)
    }

    pub fn run(self) -> SuiteReport {
        let items = match self {
            Suite::DisplayFixtures => display_fixtures(),
            Suite::ResidualSweep => residual_sweep(),
            Suite::Structural => structural(),
            Suite::NegativeControls => negative_controls(),
            Suite::FdCrosscheck => fd_crosscheck(),
            Suite::FigureShape => figure_shape(),
        };
        SuiteReport { suite: self.id().to_string(), passed: items.iter().all(|i| i.passed), items }
    }
}

/// Polynomial over `ctx` from `(exponents, num, den)` triples.
fn poly(ctx: Context, terms: &[(&[u32], i64, i64)]) -> Poly {
    Poly::from_terms(ctx, terms.iter().map(|(e, p, q)| (e.to_vec(), rational(*p, *q))))
}

fn verbatim(u: &RatFn, num: &Poly, den: &Poly) -> (bool, String) {
    let v = u.normalize_content();
    let ok = v.numerator() == num && v.denominator() == *den;
    (ok, format!("{} / {}", v.numerator(), v.denominator()))
}

fn cross(u: &RatFn, num: &Poly, den: &Poly) -> Result<(bool, String)> {
    let expected = RatFn::new(num.clone(), den.clone())?;
    let v = u.normalize_content();
    Ok((*u == expected, format!("{} / {}", v.numerator(), v.denominator())))
}

pub fn display_fixtures() -> Vec<SuiteItem> {
    let mut items = Vec::new();
    items.push(SuiteItem::from_result(
        "phi(2,2) verbatim",
        phi_solution(2, 2)
            .map(|u| verbatim(&u, &poly(xy(), &[(&[1, 0], 2, 1)]), &poly(xy(), &[(&[2, 0], 1, 1), (&[0, 1], 2, 1)]))),
    ));
    items.push(SuiteItem::from_result(
        "phi(4,2) verbatim",
        phi_solution(4, 2).map(|u| {
            let num = poly(xy(), &[(&[3, 0], 4, 1), (&[1, 1], 24, 1)]);
            let den = poly(xy(), &[(&[4, 0], 1, 1), (&[2, 1], 12, 1), (&[0, 2], 12, 1)]);
            verbatim(&u, &num, &den)
        }),
    ));
    items.push(SuiteItem::from_result(
        "phi(4,3) cross-multiplied",
        phi_solution(4, 3).and_then(|u| {
            let num = poly(xy(), &[(&[0, 1], 6, 1), (&[3, 0], 1, 1)]);
            let den = poly(xy(), &[(&[1, 1], 6, 1), (&[4, 0], 1, 4)]);
            cross(&u, &num, &den)
        }),
    ));
    items.push(SuiteItem::from_result(
        "phi(9,3) cross-multiplied",
        phi_solution(9, 3).and_then(|u| {
            let num = poly(xy(), &[(&[8, 0], 9, 1), (&[5, 1], 3024, 1), (&[2, 2], 90720, 1)]);
            let den = poly(xy(), &[(&[9, 0], 1, 1), (&[6, 1], 504, 1), (&[3, 2], 30240, 1), (&[0, 3], 60480, 1)]);
            cross(&u, &num, &den)
        }),
    ));
    items.push(SuiteItem::from_result(
        "laguerre u3 cross-multiplied",
        laguerre_solution(3).and_then(|u| {
            let num = poly(xt(), &[(&[2, 0], 1, 12), (&[1, 1], 1, 2), (&[0, 2], 1, 2)]);
            let den = poly(xt(), &[(&[3, 0], 1, 36), (&[2, 1], 1, 4), (&[1, 2], 1, 2), (&[0, 3], 1, 6)]);
            cross(&u, &num, &den)
        }),
    ));
    items.push(SuiteItem::from_result(
        "laguerre u7 cross-multiplied",
        laguerre_solution(7).and_then(|u| {
            let num = poly(
                xt(),
                &[
                    (&[6, 0], 1, 3628800),
                    (&[5, 1], 1, 86400),
                    (&[4, 2], 1, 5760),
                    (&[3, 3], 1, 864),
                    (&[2, 4], 1, 288),
                    (&[1, 5], 1, 240),
                    (&[0, 6], 1, 720),
                ],
            );
            let den = poly(
                xt(),
                &[
                    (&[7, 0], 1, 25401600),
                    (&[6, 1], 1, 518400),
                    (&[5, 2], 1, 28800),
                    (&[4, 3], 1, 3456),
                    (&[3, 4], 1, 864),
                    (&[2, 5], 1, 480),
                    (&[1, 6], 1, 720),
                    (&[0, 7], 1, 5040),
                ],
            );
            cross(&u, &num, &den)
        }),
    ));
    items
}

/// Shift triples for the combined equation.
pub fn combined_triples() -> Vec<(Rational, Rational, Rational)> {
    vec![
        (integer(0), integer(0), integer(0)),
        (integer(0), integer(1), integer(0)),
        (integer(0), integer(0), integer(1)),
        (rational(1, 2), integer(2), integer(-1)),
        (integer(-3), integer(0), rational(1, 3)),
        (integer(2), rational(-1, 2), rational(-2, 3)),
    ]
}

/// Every equation instance in the exact sweep, grouped by label.
pub fn sweep_instances() -> Vec<(&'static str, Vec<Equation>)> {
    let mut groups = Vec::new();
    let burgers = (1..=10).flat_map(|n| (2..=7).map(move |m| Equation::Burgers { n, m })).collect();
    groups.push(("burgers n<=10 m=2..7", burgers));
    let heat = (1..=10).flat_map(|n| (2..=7).map(move |m| Equation::Heat { n, m })).collect();
    groups.push(("heat n<=10 m=2..7", heat));
    groups.push(("laguerre n<=10", (1..=10).map(|n| Equation::Laguerre { n }).collect()));
    groups.push(("laguerre-log n<=10", (1..=10).map(|n| Equation::LaguerreLog { n }).collect()));
    groups.push(("hybrid n<=10", (0..=10).map(|n| Equation::Hybrid { n }).collect()));
    groups.push(("hybrid-log n<=10", (0..=10).map(|n| Equation::HybridLog { n }).collect()));
    let hier = (1..=6)
        .flat_map(|n| (2..=5).flat_map(move |m| (2..=m).map(move |k| Equation::Hierarchical { n, m, k })))
        .collect();
    groups.push(("hierarchical n<=6 m<=5 all k", hier));
    let mut combined = Vec::new();
    let mut linear = Vec::new();
    for n in 1..=6 {
        for (alpha, beta, gamma) in combined_triples() {
            combined.push(Equation::Combined { n, alpha: alpha.clone(), beta: beta.clone(), gamma: gamma.clone() });
            linear.push(Equation::CombinedLinear { n, alpha, beta, gamma });
        }
    }
    groups.push(("combined n<=6 x6 triples", combined));
    groups.push(("combined-linear n<=6 x6 triples", linear));
    groups.push(("varcoef n<=6", (1..=6).map(|n| Equation::VarCoef { n }).collect()));
    groups.push(("identity 3<=n<=12", (3..=12).map(|n| Equation::Identity { n }).collect()));
    groups
}

fn describe(eq: &Equation) -> String {
    let params: Vec<String> = eq
        .params()
        .iter()
        .map(|(k, v)| format!("{k}={}", v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())))
        .collect();
    format!("{}({})", eq.id(), params.join(","))
}

pub fn residual_sweep() -> Vec<SuiteItem> {
    sweep_instances()
        .into_iter()
        .map(|(label, eqs)| {
            let failures: Vec<String> = eqs
                .par_iter()
                .filter_map(|eq| match eq.residual(false) {
                    Ok(r) if r.is_zero() => None,
                    Ok(r) => Some(format!("{} has {} residual terms", describe(eq), r.num_terms())),
                    Err(e) => Some(format!("{}: {e}", describe(eq))),
                })
                .collect();
            let detail = if failures.is_empty() {
                format!("{} instances, all residuals zero", eqs.len())
            } else {
                failures.join("; ")
            };
            SuiteItem::new(label, failures.is_empty(), detail)
        })
        .collect()
}

fn all_hold(label: &str, checks: Vec<(String, Result<bool>)>) -> SuiteItem {
    let total = checks.len();
    let failed: Vec<String> = checks
        .into_iter()
        .filter_map(|(name, r)| match r {
            Ok(true) => None,
            Ok(false) => Some(name),
            Err(e) => Some(format!("{name}: {e}")),
        })
        .collect();
    let detail =
        if failed.is_empty() { format!("{total} checks hold") } else { format!("failed: {}", failed.join(", ")) };
    SuiteItem::new(label, failed.is_empty(), detail)
}

pub fn structural() -> Vec<SuiteItem> {
    let lacunary = (1..=12)
        .flat_map(|n| (2..=7).map(move |m| (format!("n={n},m={m}"), lacunary_recurrence_holds(n, m))))
        .collect();
    let complete = (1..=10).map(|n| (format!("n={n}"), complete_recurrences_hold(n))).collect();
    let reductions = (0..=10).map(|n| (format!("n={n}"), complete_reductions_hold(n))).collect();
    let general = (0..=10)
        .map(|n| (format!("n={n}"), hermite_complete_m(n, 3).and_then(|a| Ok(a == hermite3_complete(n)?))))
        .collect();
    let c0 = (0..=12).map(|n| (format!("n={n}"), apply_c0_operator(n).and_then(|a| Ok(a == hybrid_l2(n)?)))).collect();
    let genfun = [(3, 8), (5, 6)]
        .into_iter()
        .map(|(m, big_n)| (format!("m={m},N={big_n}"), generating_series_check(m, big_n)))
        .collect();
    let eigen = (0..=8)
        .map(|big_n| {
            let check = c0_eigen_residual(big_n).map(|r| {
                let f = factorial(big_n as u32);
                let c = -Rational::new(1.into(), &f * &f);
                let tail = Poly::monomial(r.context().clone(), &[("lambda", big_n as u32 + 1), ("z", big_n as u32)], c);
                r == tail
            });
            (format!("N={big_n}"), check)
        })
        .collect();
    let chain = (1..=10).map(|n| (format!("n={n}"), observation_chain_residual(n).map(|r| r.is_zero()))).collect();
    let forms = (1..=6)
        .map(|n| (format!("n={n}"), phi_solution(n, 3).map(|u| third_order_forms_difference(&u).is_zero())))
        .collect();
    vec![
        all_hold("lacunary recurrence n<=12 m=2..7", lacunary),
        all_hold("complete-family recurrences n<=10", complete),
        all_hold("complete-family reductions at x2=0 and x3=0", reductions),
        all_hold("hermite_complete_m(n,3) = hermite3_complete(n)", general),
        all_hold("C0 operator on x^n = hybrid family", c0),
        all_hold("generating series (3,8) and (5,6)", genfun),
        all_hold("truncated C0 eigen-relation tail", eigen),
        all_hold("Hopf-Cole observation chain", chain),
        all_hold("third-order expanded and compact forms agree", forms),
    ]
}

/// One small instance per equation id.
pub fn control_instances() -> Vec<Equation> {
    let (a, b, c) = (rational(1, 2), integer(2), integer(-1));
    vec![
        Equation::Burgers { n: 4, m: 2 },
        Equation::Hierarchical { n: 3, m: 3, k: 3 },
        Equation::Laguerre { n: 3 },
        Equation::LaguerreLog { n: 3 },
        Equation::Hybrid { n: 4 },
        Equation::HybridLog { n: 4 },
        Equation::VarCoef { n: 2 },
        Equation::Combined { n: 3, alpha: a.clone(), beta: b.clone(), gamma: c.clone() },
        Equation::CombinedLinear { n: 3, alpha: a, beta: b, gamma: c },
        Equation::Identity { n: 5 },
        Equation::Heat { n: 6, m: 3 },
        Equation::Genfun { m: 3, truncation: 6 },
    ]
}

pub fn negative_controls() -> Vec<SuiteItem> {
    let mut instances = control_instances();
    for (alpha, beta, gamma) in combined_triples() {
        instances.push(Equation::Combined { n: 2, alpha, beta, gamma });
    }
    instances
        .par_iter()
        .map(|eq| {
            let r =
                eq.residual(true).map(|r| (!r.is_zero(), format!("perturbed residual has {} terms", r.num_terms())));
            SuiteItem::from_result(format!("{} perturbed", describe(eq)), r)
        })
        .collect()
}

pub const FD_STEPS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];
pub const FD_RATIO: (f64, f64) = (3.5, 4.5);

fn x_line(fixed: &[(&str, f64)]) -> GridSpec<f64> {
    let fixed = fixed.iter().map(|(v, x)| (v.to_string(), *x)).collect();
    GridSpec::line(Axis::new("x", 1.0, 3.0, 8).expect("static axis"), fixed)
}

/// The six representative solutions for the finite-difference check.
/// Name, solution, equation and grid of one finite-difference case.
pub type FdCase = (String, RatFn, FdEquation<Rational, f64>, GridSpec<f64>);

pub fn fd_cases() -> Result<Vec<FdCase>> {
    let burgers = |m: u32| FdEquation::Burgers { m, time: "y".into(), space: "x".into() };
    let (u_var, f) = variable_coefficient_solution(2)?;
    let laguerre3 = crate::families::laguerre2(3)?;
    Ok(vec![
        ("burgers phi(2,2)".into(), phi_solution(2, 2)?, burgers(2), x_line(&[("y", 1.0)])),
        ("burgers phi(3,3)".into(), phi_solution(3, 3)?, burgers(3), x_line(&[("y", 1.0)])),
        ("laguerre u3".into(), laguerre_solution(3)?, FdEquation::Laguerre, x_line(&[("t", 1.0)])),
        ("laguerre-log L3".into(), RatFn::from_poly(laguerre3), FdEquation::LaguerreLog, x_line(&[("t", 1.0)])),
        (
            "varcoef n=2".into(),
            u_var,
            FdEquation::VariableCoefficient { coefficient: f },
            x_line(&[("y", 1.0), ("t", 1.0)]),
        ),
        (
            "combined n=3 (1/2,2,-1)".into(),
            combined_solution(3, &rational(1, 2), &integer(2), &integer(-1))?,
            FdEquation::Combined { alpha: 0.5, beta: 2.0, gamma: -1.0 },
            x_line(&[("y", 1.0)]),
        ),
    ])
}

pub fn fd_crosscheck() -> Vec<SuiteItem> {
    let cases = match fd_cases() {
        Ok(c) => c,
        Err(e) => return vec![SuiteItem::new("fd cases", false, format!("error: {e}"))],
    };
    cases
        .par_iter()
        .map(|(name, u, eq, grid)| {
            let r = fd_residuals(u, eq, grid, &FD_STEPS).map(|res| {
                let ratios = halving_ratios(&res);
                let ok = ratios.iter().all(|r| (FD_RATIO.0..=FD_RATIO.1).contains(r));
                let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(", ");
                (ok, format!("residuals [{}], ratios [{}]", fmt(&res), fmt(&ratios)))
            });
            SuiteItem::from_result(name.clone(), r)
        })
        .collect()
}

/// Flagged rows versus exact sign changes of the denominator along one line.
fn shape_check(u: &RatFn, y: &Rational, yf: f64) -> Result<(bool, String)> {
    let den = u.denominator();
    let steps = LINE_STEPS as i64;
    let (lo, hi) = (X_RANGE.0 as i64, X_RANGE.1 as i64);
    let exact: Vec<Rational> = (0..=steps)
        .map(|i| {
            let x = integer(lo) + rational((hi - lo) * i, steps);
            den.evaluate_exact(&[("x", x), ("y", y.clone())])
        })
        .collect::<Result<_>>()?;
    // event intervals [a, b] of node indices bracketing a root
    let mut events = Vec::new();
    for i in 0..exact.len() {
        if exact[i] == integer(0) {
            events.push((i, i));
        } else if i + 1 < exact.len()
            && exact[i + 1] != integer(0)
            && (exact[i] < integer(0)) != (exact[i + 1] < integer(0))
        {
            events.push((i, i + 1));
        }
    }
    let grid = GridSpec::line(Axis::new("x", X_RANGE.0, X_RANGE.1, LINE_STEPS)?, vec![("y".into(), yf)]);
    let flagged: Vec<usize> =
        sample(u, &grid)?.rows.iter().enumerate().filter(|(_, r)| r.pole).map(|(i, _)| i).collect();
    let near = |j: usize, (a, b): (usize, usize)| j + 1 >= a && j <= b + 1;
    let spurious = flagged.iter().filter(|&&j| !events.iter().any(|&e| near(j, e))).count();
    let missed = events.iter().filter(|&&e| !flagged.iter().any(|&j| near(j, e))).count();
    Ok((
        spurious == 0 && missed == 0,
        format!("{} sign changes, {} flagged rows, {spurious} spurious, {missed} missed", events.len(), flagged.len()),
    ))
}

pub fn figure_shape() -> Vec<SuiteItem> {
    let panels = match panels(Figure::PhiLines) {
        Ok(p) => p,
        Err(e) => return vec![SuiteItem::new("fig1 presets", false, format!("error: {e}"))],
    };
    let ys = [rational(1, 2), integer(1), integer(2)];
    panels
        .iter()
        .flat_map(|p| {
            ys.iter().zip(FIXED_TIMES).map(move |(y, yf)| {
                SuiteItem::from_result(format!("{} y={yf}", p.name), shape_check(&p.solution, y, yf))
            })
        })
        .collect()
}

/// Runs the suite named `id`.
pub fn run_suite(id: &str) -> Result<SuiteReport> {
    Suite::from_id(id).map(Suite::run).ok_or_else(|| invalid(format!("unknown suite `{id}`")))
}
