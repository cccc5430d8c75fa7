use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use super::*;
use crate::ratfunc::phi_solution;
use crate::scalar::format_rational;

/// One verifiable claim, identified as on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum Equation {
    /// m-th Burgers equation for `Φₙ^{(m)}`.
    Burgers {
        n: i64,
        m: i64,
    },
    /// k-th member of the hierarchical system for the complete family.
    Hierarchical {
        n: i64,
        m: i64,
        k: i64,
    },
    /// Laguerre Burgers equation for `∂ₓLₙ/Lₙ`.
    Laguerre {
        n: i64,
    },
    /// Log-transformed Laguerre diffusion for `ln Lₙ`.
    LaguerreLog {
        n: i64,
    },
    /// Hybrid linear equation `∂ᵧ y ∂ᵧ Ψ = ∂ₓ²Ψ` for `₂𝓛ₙ`.
    Hybrid {
        n: i64,
    },
    /// Log-transformed hybrid equation for `ln ₂𝓛ₙ`.
    HybridLog {
        n: i64,
    },
    /// Two-dimensional variable-coefficient Burgers equation.
    VarCoef {
        n: i64,
    },
    Combined {
        n: i64,
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
    },
    CombinedLinear {
        n: i64,
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
    },
    /// `(∂ₓ + Fₙ)Fₙ = Sₙ`.
    Identity {
        n: i64,
    },
    /// m-th order heat equation for `Hₙ^{(m)}`.
    Heat {
        n: i64,
        m: i64,
    },
    /// Generating function of the complete family, up to order N.
    Genfun {
        m: i64,
        truncation: i64,
    },
}

pub enum Residual {
    Polynomial(Poly),
    Rational(RatFn),
    /// Degrees at which a coefficient check failed.
    Mismatches(Vec<u32>),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Polynomial(p) => p.is_zero(),
            Residual::Rational(u) => u.is_zero(),
            Residual::Mismatches(v) => v.is_empty(),
        }
    }

    /// Terms in the residual (numerator), or failed checks.
    pub fn num_terms(&self) -> usize {
        match self {
            Residual::Polynomial(p) => p.num_terms(),
            Residual::Rational(u) => u.numerator().num_terms(),
            Residual::Mismatches(v) => v.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub equation: String,
    pub params: BTreeMap<String, Value>,
    pub residual_zero: bool,
    pub residual_num_terms: usize,
    pub elapsed_ms: u64,
}

/// A rational candidate with 1 added to its numerator.
fn perturb_rational(u: &RatFn) -> RatFn {
    u.perturb_numerator(&Poly::one(u.context()))
}

/// A polynomial candidate plus `space · time`.
fn perturb_poly(z: &Poly, space: &str, time: &str) -> Poly {
    z + &Poly::monomial(z.context().clone(), &[(space, 1), (time, 1)], Rational::from_integer(1.into()))
}

impl Equation {
    pub const IDS: [&'static str; 12] = [
        "burgers",
        "hierarchical",
        "laguerre",
        "laguerre-log",
        "hybrid",
        "hybrid-log",
        "varcoef",
        "combined",
        "combined-linear",
        "identity",
        "heat",
        "genfun",
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Equation::Burgers { .. } => "burgers",
            Equation::Hierarchical { .. } => "hierarchical",
            Equation::Laguerre { .. } => "laguerre",
            Equation::LaguerreLog { .. } => "laguerre-log",
            Equation::Hybrid { .. } => "hybrid",
            Equation::HybridLog { .. } => "hybrid-log",
            Equation::VarCoef { .. } => "varcoef",
            Equation::Combined { .. } => "combined",
            Equation::CombinedLinear { .. } => "combined-linear",
            Equation::Identity { .. } => "identity",
            Equation::Heat { .. } => "heat",
            Equation::Genfun { .. } => "genfun",
        }
    }

    pub fn params(&self) -> BTreeMap<String, Value> {
        let shift = |a: &Rational, b: &Rational, c: &Rational| {
            [
                ("alpha", json!(format_rational(a))),
                ("beta", json!(format_rational(b))),
                ("gamma", json!(format_rational(c))),
            ]
        };
        let pairs: Vec<(&str, Value)> = match self {
            Equation::Burgers { n, m } | Equation::Heat { n, m } => vec![("n", json!(n)), ("m", json!(m))],
            Equation::Hierarchical { n, m, k } => vec![("n", json!(n)), ("m", json!(m)), ("k", json!(k))],
            Equation::Laguerre { n }
            | Equation::LaguerreLog { n }
            | Equation::Hybrid { n }
            | Equation::HybridLog { n }
            | Equation::VarCoef { n }
            | Equation::Identity { n } => vec![("n", json!(n))],
            Equation::Combined { n, alpha, beta, gamma } | Equation::CombinedLinear { n, alpha, beta, gamma } => {
                let mut v = vec![("n", json!(n))];
                v.extend(shift(alpha, beta, gamma));
                v
            }
            Equation::Genfun { m, truncation } => vec![("m", json!(m)), ("N", json!(truncation))],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    /// Builds the candidate solution (broken on purpose when `perturb` is set)
    /// and returns the residual.
    pub fn residual(&self, perturb: bool) -> Result<Residual> {
        let r = |u: RatFn| if perturb { perturb_rational(&u) } else { u };
        let p = |z: Poly, space: &str, time: &str| if perturb { perturb_poly(&z, space, time) } else { z };
        Ok(match self {
            Equation::Burgers { n, m } => {
                Residual::Rational(burgers_residual(&r(phi_solution(*n, *m)?), *m, "y", "x")?)
            }
            Equation::Hierarchical { n, m, k } => {
                if *k <= 1 || k > m {
                    return Err(invalid(format!("k must satisfy 1 < k <= m, got k={k}, m={m}")));
                }
                Residual::Rational(hierarchical_residual_of(&r(hierarchical_solution(*n, *m)?), *k)?)
            }
            Equation::Laguerre { n } => Residual::Rational(laguerre_burgers_residual_of(&r(laguerre_solution(*n)?))),
            Equation::LaguerreLog { n } => {
                if *n < 1 {
                    return Err(invalid(format!("degree n must be at least 1, got {n}")));
                }
                Residual::Rational(log_laguerre_residual_of(&p(laguerre2(*n)?, "x", "t"))?)
            }
            Equation::Hybrid { n } => Residual::Polynomial(hybrid_linear_residual_of(&p(hybrid_l2(*n)?, "x", "y"))),
            Equation::HybridLog { n } => Residual::Rational(hybrid_log_residual_of(&p(hybrid_l2(*n)?, "x", "y"))?),
            Equation::VarCoef { n } => {
                let (u, f) = variable_coefficient_solution(*n)?;
                Residual::Rational(variable_coefficient_residual_of(&r(u), &f)?)
            }
            Equation::Combined { n, alpha, beta, gamma } => {
                // with β = γ = 0 any function of x + αy is a solution, so a
                // constant shift of the numerator would still solve it
                let u = combined_solution(*n, alpha, beta, gamma)?;
                let u = if perturb { u.perturb_numerator(&Poly::var(u.context(), "y")) } else { u };
                Residual::Rational(combined_residual_of(&u, alpha, beta, gamma))
            }
            Equation::CombinedLinear { n, alpha, beta, gamma } => {
                let psi = p(shifted_hermite3(*n, alpha, beta, gamma)?, "x", "y");
                Residual::Polynomial(combined_linear_residual_of(&psi, alpha, beta, gamma))
            }
            Equation::Identity { n } => {
                let (f, s) = hermite_identity_parts(*n)?;
                Residual::Rational(identity_residual_of(&r(f), &s))
            }
            Equation::Heat { n, m } => {
                let z = p(hermite_lacunary(*n, *m)?, "x", "y");
                Residual::Polynomial(heat_residual_of(&z, *m as u32))
            }
            Equation::Genfun { m, truncation } => {
                let offset = if perturb { integer(1) } else { Rational::zero() };
                Residual::Mismatches(generating_series_mismatches(*m, *truncation, &offset)?)
            }
        })
    }

    pub fn verify(&self, perturb: bool) -> Result<VerificationReport> {
        let start = Instant::now();
        let residual = self.residual(perturb)?;
        Ok(VerificationReport {
            equation: self.id().to_string(),
            params: self.params(),
            residual_zero: residual.is_zero(),
            residual_num_terms: residual.num_terms(),
            elapsed_ms: start.elapsed().as_millis() as u64,
        })
    }
}
