//! Special polynomial families.
//!
//! Variable names are fixed per family: `(x, y)` for the two-variable Hermite,
//! lacunary and hybrid families, `(x, t)` for Laguerre, `(x1, …, xm)` for the
//! complete higher-order Hermite polynomials and `(z)` for the truncated C₀
//! series. Use [`MultiPoly::renamed`] to move between them.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::multipoly::Context;
use crate::scalar::{factorial, format_rational, parse_rational, Rational};
use crate::Poly;

pub fn xy() -> Context {
    Context::new(["x", "y"])
}

pub fn xt() -> Context {
    Context::new(["x", "t"])
}

/// `x1, …, xm`.
pub fn complete_context(m: u32) -> Context {
    Context::new((1..=m).map(|k| format!("x{k}")))
}

fn check_degree(n: i64) -> Result<u32> {
    u32::try_from(n).map_err(|_| invalid(format!("degree n must be a nonnegative integer, got {n}")))
}

fn check_order(m: i64) -> Result<u32> {
    if m < 2 {
        return Err(invalid(format!("order m must be at least 2, got {m}")));
    }
    u32::try_from(m).map_err(|_| invalid(format!("order m out of range: {m}")))
}

fn ratio(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

/// `n! Σ_{r ≤ n/m} y^r x^{n−mr} / ((n−mr)! r!^p)`, the shared shape of the
/// Hermite-like two-variable families (`p = 1` Hermite, `p = 2` hybrid).
fn gapped_sum(n: u32, m: u32, factorial_power: u32) -> Poly {
    let nf = factorial(n);
    let terms = (0..=n / m).map(|r| {
        let rf = factorial(r);
        let den = factorial(n - m * r) * num_traits::pow(rf, factorial_power as usize);
        (vec![n - m * r, r], ratio(nf.clone(), den))
    });
    Poly::from_terms(xy(), terms)
}

/// Two-variable Hermite (heat) polynomial `Hₙ(x, y)`.
pub fn hermite2(n: i64) -> Result<Poly> {
    Ok(gapped_sum(check_degree(n)?, 2, 1))
}

/// Lacunary Hermite `Hₙ^{(m)}(x, y)`, the polynomial solution of
/// `∂_y Z = ∂_x^m Z` with `Z(x, 0) = xⁿ`.
pub fn hermite_lacunary(n: i64, m: i64) -> Result<Poly> {
    let m = check_order(m)?;
    Ok(gapped_sum(check_degree(n)?, m, 1))
}

/// Complete third-order Hermite `Hₙ^{(3)}(x1, x2, x3)`, built from the
/// two-variable Hermite polynomials in `(x1, x2)`.
pub fn hermite3_complete(n: i64) -> Result<Poly> {
    let n = check_degree(n)?;
    let ctx = complete_context(3);
    let nf = factorial(n);
    let mut acc = Poly::zero(ctx.clone());
    for r in 0..=n / 3 {
        let inner = gapped_sum(n - 3 * r, 2, 1).renamed(&[("x", "x1"), ("y", "x2")]);
        let scale = ratio(nf.clone(), factorial(n - 3 * r) * factorial(r));
        let x3r = Poly::monomial(ctx.clone(), &[("x3", r)], scale);
        acc = &acc + &(&inner * &x3r);
    }
    acc.with_context(&ctx)
}

/// Coefficients `c₀, …, c_N` of a power series in an auxiliary variable,
/// truncated at order `N`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<Poly>,
}

impl TruncatedSeries {
    pub fn one(ctx: Context, order: u32) -> Self {
        let mut coeffs = vec![Poly::zero(ctx.clone()); order as usize + 1];
        coeffs[0] = Poly::one(ctx);
        TruncatedSeries { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Poly>) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeff(&self, k: u32) -> &Poly {
        &self.coeffs[k as usize]
    }

    /// `exp(a·t^k) = Σ_j a^j t^{kj} / j!`, truncated.
    pub fn exp_monomial(a: &Poly, k: u32, order: u32) -> Self {
        let mut out = Self::one(a.context().clone(), order);
        if k == 0 {
            panic!("exp_monomial needs a positive power of the series variable");
        }
        let mut power = Poly::one(a.context().clone());
        for j in 1..=order / k {
            power = &power * a;
            out.coeffs[(k * j) as usize] = power.scale(&ratio(BigInt::one(), factorial(j)));
        }
        out
    }

    /// `exp(s)` for a series with zero constant term, `Σ_j s^j / j!`.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "exp needs a series without constant term");
        let ctx = self.coeffs[0].context().clone();
        let order = self.order();
        let mut out = Self::one(ctx.clone(), order);
        let mut power = Self::one(ctx, order);
        for j in 1..=order {
            power = power.mul(self);
            let inv = ratio(BigInt::one(), factorial(j));
            for (o, p) in out.coeffs.iter_mut().zip(&power.coeffs) {
                *o = &*o + &p.scale(&inv);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order()) as usize;
        let ctx = self.coeffs[0].context().union(other.coeffs[0].context());
        let mut coeffs = vec![Poly::zero(ctx); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        TruncatedSeries { coeffs }
    }
}

/// Complete higher-order Hermite `Hₙ(x1, …, xm) = n! [tⁿ] Π_k exp(x_k t^k)`.
pub fn hermite_complete_m(n: i64, m: i64) -> Result<Poly> {
    let n = check_degree(n)?;
    let m = check_order(m)?;
    let ctx = complete_context(m);
    let mut series = TruncatedSeries::one(ctx.clone(), n);
    for k in 1..=m {
        let xk = Poly::var(ctx.clone(), &format!("x{k}"));
        series = series.mul(&TruncatedSeries::exp_monomial(&xk, k, n));
    }
    Ok(series.coeff(n).scale(&Rational::from_integer(factorial(n))))
}

/// Two-variable Laguerre `Lₙ(x, t) = n! Σ_r t^{n−r} x^r / ((n−r)! r!²)`.
pub fn laguerre2(n: i64) -> Result<Poly> {
    let n = check_degree(n)?;
    let nf = factorial(n);
    let terms = (0..=n).map(|r| {
        let rf = factorial(r);
        (vec![r, n - r], ratio(nf.clone(), factorial(n - r) * &rf * &rf))
    });
    Ok(Poly::from_terms(xt(), terms))
}

/// Hybrid Hermite-Laguerre `₂𝓛ₙ(x, y) = n! Σ y^r x^{n−2r} / ((n−2r)! r!²)`.
pub fn hybrid_l2(n: i64) -> Result<Poly> {
    Ok(gapped_sum(check_degree(n)?, 2, 2))
}

/// `C₀(z) = Σ_{r ≤ N} z^r / r!²`.
pub fn bessel_c0_truncated(truncation: i64) -> Result<Poly> {
    let big_n = u32::try_from(truncation)
        .map_err(|_| invalid(format!("truncation N must be nonnegative, got {truncation}")))?;
    let ctx = Context::new(["z"]);
    let terms = (0..=big_n).map(|r| {
        let rf = factorial(r);
        (vec![r], ratio(BigInt::one(), &rf * &rf))
    });
    Ok(Poly::from_terms(ctx, terms))
}

/// `C₀(y ∂ₓ²) xⁿ = Σ_r y^r ∂ₓ^{2r} xⁿ / r!²`, by repeated differentiation.
pub fn apply_c0_operator(n: i64) -> Result<Poly> {
    let n = check_degree(n)?;
    let ctx = xy();
    let mut derived = Poly::monomial(ctx.clone(), &[("x", n)], Rational::one());
    let mut acc = Poly::zero(ctx.clone());
    let mut r = 0u32;
    while !derived.is_zero() {
        let rf = factorial(r);
        let yr = Poly::monomial(ctx.clone(), &[("y", r)], ratio(BigInt::one(), &rf * &rf));
        acc = &acc + &(&yr * &derived);
        derived = derived.nth_derivative("x", 2);
        r += 1;
    }
    Ok(acc)
}

/// `Hₙ(x + αy, βy, γy)`, the solution of `∂_y Ψ = (α∂ₓ + β∂ₓ² + γ∂ₓ³)Ψ`
/// with `Ψ(x, 0) = xⁿ`.
pub fn shifted_hermite3(n: i64, alpha: &Rational, beta: &Rational, gamma: &Rational) -> Result<Poly> {
    let h = hermite3_complete(n)?;
    let ctx = xy();
    let x = Poly::var(ctx.clone(), "x");
    let y = Poly::var(ctx.clone(), "y");
    let shifted =
        h.substitute("x1", &(&x + &y.scale(alpha))).substitute("x2", &y.scale(beta)).substitute("x3", &y.scale(gamma));
    shifted.with_context(&ctx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    Hermite2,
    HermiteLacunary,
    Hermite3Complete,
    HermiteCompleteM,
    Laguerre2,
    HybridL2,
    BesselC0,
    ShiftedHermite3,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 8] = [
        FamilyKind::Hermite2,
        FamilyKind::HermiteLacunary,
        FamilyKind::Hermite3Complete,
        FamilyKind::HermiteCompleteM,
        FamilyKind::Laguerre2,
        FamilyKind::HybridL2,
        FamilyKind::BesselC0,
        FamilyKind::ShiftedHermite3,
    ];

    /// Kebab-case name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            FamilyKind::Hermite2 => "hermite2",
            FamilyKind::HermiteLacunary => "hermite-lacunary",
            FamilyKind::Hermite3Complete => "hermite3-complete",
            FamilyKind::HermiteCompleteM => "hermite-complete-m",
            FamilyKind::Laguerre2 => "laguerre2",
            FamilyKind::HybridL2 => "hybrid-l2",
            FamilyKind::BesselC0 => "bessel-c0",
            FamilyKind::ShiftedHermite3 => "shifted-hermite3",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.cli_name() == name)
    }
}

mod rational_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_str(&format_rational(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        text.map(|t| parse_rational(&t).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{t}`"))))
            .transpose()
    }
}

/// Which family to build. Serialized as
/// `{"kind":"...", "n":…, "m":…, "alpha":"p/q", "beta":"p/q", "gamma":"p/q", "N":…}`
/// with unused fields omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "rational_string")]
    pub alpha: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "rational_string")]
    pub beta: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "rational_string")]
    pub gamma: Option<Rational>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<i64>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Self {
        FamilySpec { kind, n: None, m: None, alpha: None, beta: None, gamma: None, truncation: None }
    }

    /// Validates the parameters the kind needs, then builds the polynomial.
    pub fn build(&self) -> Result<Poly> {
        let need_n = || self.n.ok_or_else(|| invalid(format!("{} needs n", self.kind.cli_name())));
        let need_m = || self.m.ok_or_else(|| invalid(format!("{} needs m", self.kind.cli_name())));
        let zero = Rational::zero();
        match self.kind {
            FamilyKind::Hermite2 => hermite2(need_n()?),
            FamilyKind::HermiteLacunary => hermite_lacunary(need_n()?, need_m()?),
            FamilyKind::Hermite3Complete => hermite3_complete(need_n()?),
            FamilyKind::HermiteCompleteM => hermite_complete_m(need_n()?, need_m()?),
            FamilyKind::Laguerre2 => laguerre2(need_n()?),
            FamilyKind::HybridL2 => hybrid_l2(need_n()?),
            FamilyKind::BesselC0 => bessel_c0_truncated(self.truncation.ok_or_else(|| invalid("bessel-c0 needs N"))?),
            FamilyKind::ShiftedHermite3 => shifted_hermite3(
                need_n()?,
                self.alpha.as_ref().unwrap_or(&zero),
                self.beta.as_ref().unwrap_or(&zero),
                self.gamma.as_ref().unwrap_or(&zero),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, rational};

    fn poly(ctx: Context, terms: &[(&[u32], Rational)]) -> Poly {
        Poly::from_terms(ctx, terms.iter().map(|(e, c)| (e.to_vec(), c.clone())))
    }

    #[test]
    fn hermite2_values() {
        assert_eq!(hermite2(0).unwrap(), Poly::one(xy()));
        assert_eq!(hermite2(2).unwrap(), poly(xy(), &[(&[2, 0], integer(1)), (&[0, 1], integer(2))]));
        assert_eq!(
            hermite2(4).unwrap(),
            poly(xy(), &[(&[4, 0], integer(1)), (&[2, 1], integer(12)), (&[0, 2], integer(12))])
        );
        assert!(hermite2(-1).is_err());
    }

    #[test]
    fn lacunary_values() {
        assert_eq!(hermite_lacunary(3, 3).unwrap(), poly(xy(), &[(&[3, 0], integer(1)), (&[0, 1], integer(6))]));
        assert_eq!(
            hermite_lacunary(9, 3).unwrap(),
            poly(
                xy(),
                &[(&[9, 0], integer(1)), (&[6, 1], integer(504)), (&[3, 2], integer(30240)), (&[0, 3], integer(60480))]
            )
        );
        assert_eq!(hermite_lacunary(4, 5).unwrap(), poly(xy(), &[(&[4, 0], integer(1))]));
        assert_eq!(hermite_lacunary(6, 2).unwrap(), hermite2(6).unwrap());
        assert!(hermite_lacunary(3, 1).is_err());
    }

    #[test]
    fn complete_third_order() {
        let c = complete_context(3);
        assert_eq!(
            hermite3_complete(2).unwrap(),
            poly(c.clone(), &[(&[2, 0, 0], integer(1)), (&[0, 1, 0], integer(2))])
        );
        let h3 = hermite3_complete(3).unwrap();
        let zero = Poly::zero(Context::empty());
        assert_eq!(
            h3.substitute("x2", &zero),
            poly(Context::new(["x1", "x3"]), &[(&[3, 0], integer(1)), (&[0, 1], integer(6))])
        );
        assert_eq!(
            h3.substitute("x3", &zero),
            poly(Context::new(["x1", "x2"]), &[(&[3, 0], integer(1)), (&[1, 1], integer(6))])
        );
    }

    #[test]
    fn complete_from_generating_series() {
        let c3 = complete_context(3);
        assert_eq!(hermite_complete_m(1, 5).unwrap(), Poly::var(complete_context(5), "x1"));
        assert_eq!(
            hermite_complete_m(3, 3).unwrap(),
            poly(c3, &[(&[3, 0, 0], integer(1)), (&[1, 1, 0], integer(6)), (&[0, 0, 1], integer(6))])
        );
        assert_eq!(
            hermite_complete_m(2, 4).unwrap(),
            poly(complete_context(4), &[(&[2, 0, 0, 0], integer(1)), (&[0, 1, 0, 0], integer(2))])
        );
        assert_eq!(hermite_complete_m(0, 2).unwrap(), Poly::one(complete_context(2)));
    }

    #[test]
    fn laguerre_values() {
        assert_eq!(laguerre2(0).unwrap(), Poly::one(xt()));
        assert_eq!(laguerre2(1).unwrap(), poly(xt(), &[(&[0, 1], integer(1)), (&[1, 0], integer(1))]));
        assert_eq!(
            laguerre2(3).unwrap(),
            poly(
                xt(),
                &[(&[0, 3], integer(1)), (&[1, 2], integer(3)), (&[2, 1], rational(3, 2)), (&[3, 0], rational(1, 6))]
            )
        );
    }

    #[test]
    fn hybrid_values() {
        assert_eq!(hybrid_l2(2).unwrap(), hermite2(2).unwrap());
        assert_eq!(
            hybrid_l2(4).unwrap(),
            poly(xy(), &[(&[4, 0], integer(1)), (&[2, 1], integer(12)), (&[0, 2], integer(6))])
        );
        assert_eq!(hybrid_l2(1).unwrap(), Poly::var(xy(), "x"));
    }

    #[test]
    fn c0_series_and_operator() {
        let z = Context::new(["z"]);
        assert_eq!(bessel_c0_truncated(0).unwrap(), Poly::one(z.clone()));
        assert_eq!(
            bessel_c0_truncated(3).unwrap(),
            poly(z, &[(&[0], integer(1)), (&[1], integer(1)), (&[2], rational(1, 4)), (&[3], rational(1, 36))])
        );
        assert!(bessel_c0_truncated(-2).is_err());
        assert_eq!(apply_c0_operator(1).unwrap(), Poly::var(xy(), "x"));
        assert_eq!(apply_c0_operator(2).unwrap(), hermite2(2).unwrap());
        assert_eq!(apply_c0_operator(4).unwrap(), hybrid_l2(4).unwrap());
        assert_eq!(apply_c0_operator(0).unwrap(), Poly::one(xy()));
    }

    #[test]
    fn shifted_values() {
        let zero = Rational::zero();
        let one = integer(1);
        assert_eq!(shifted_hermite3(5, &zero, &zero, &zero).unwrap(), Poly::monomial(xy(), &[("x", 5)], integer(1)));
        let (a, b, c) = (rational(3, 7), integer(-2), integer(9));
        assert_eq!(
            shifted_hermite3(1, &a, &b, &c).unwrap(),
            poly(xy(), &[(&[1, 0], integer(1)), (&[0, 1], a.clone())])
        );
        assert_eq!(
            shifted_hermite3(2, &one, &one, &zero).unwrap(),
            poly(xy(), &[(&[2, 0], integer(1)), (&[1, 1], integer(2)), (&[0, 2], integer(1)), (&[0, 1], integer(2))])
        );
        assert_eq!(shifted_hermite3(3, &a, &b, &c).unwrap().context().names(), &["x", "y"]);
    }

    #[test]
    fn family_spec_json() {
        let mut spec = FamilySpec::new(FamilyKind::ShiftedHermite3);
        spec.n = Some(2);
        spec.alpha = Some(rational(1, 2));
        spec.gamma = Some(integer(-1));
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(text, r#"{"kind":"ShiftedHermite3","n":2,"alpha":"1/2","gamma":"-1"}"#);
        let back: FamilySpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let c0: FamilySpec = serde_json::from_str(r#"{"kind":"BesselC0","N":2}"#).unwrap();
        assert_eq!(c0.build().unwrap().num_terms(), 3);
        assert!(FamilySpec::new(FamilyKind::Hermite2).build().is_err());
        for kind in FamilyKind::ALL {
            assert_eq!(FamilyKind::from_cli_name(kind.cli_name()), Some(kind));
        }
    }
}
