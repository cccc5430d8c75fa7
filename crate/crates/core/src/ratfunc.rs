//! Rational functions in several variables, with exact calculus.
//!
//! No polynomial GCD is ever taken. The denominator is kept as a product of
//! monic factors with multiplicities, which is enough to keep degrees linear
//! under repeated differentiation: `d/dx (N / Π fᵢ^eᵢ)` only raises each
//! exponent that actually depends on `x` by one. Equality is decided by
//! cross-multiplication, so a solution scaled in numerator and denominator by
//! the same constant or polynomial compares equal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Float, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::hermite_lacunary;
use crate::multipoly::{Context, MultiPoly, PolyJson};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug)]
pub struct RationalFn<C> {
    num: MultiPoly<C>,
    /// Monic, nonconstant, pairwise distinct bases with positive exponents.
    den: Vec<(MultiPoly<C>, u32)>,
}

impl<C: Scalar> RationalFn<C> {
    pub fn from_poly(p: MultiPoly<C>) -> Self {
        RationalFn { num: p, den: Vec::new() }
    }

    pub fn constant(ctx: Context, c: C) -> Self {
        Self::from_poly(MultiPoly::constant(ctx, c))
    }

    pub fn zero(ctx: Context) -> Self {
        Self::from_poly(MultiPoly::zero(ctx))
    }

    pub fn new(num: MultiPoly<C>, den: MultiPoly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut out = Self::from_poly(num);
        out.push_factor(den, 1);
        Ok(out)
    }

    /// `∂_var Z / Z`, the logarithmic derivative of `z`.
    pub fn hopf_cole(z: &MultiPoly<C>, var: &str) -> Result<Self> {
        Self::new(z.partial_derivative(var), z.clone())
    }

    pub fn numerator(&self) -> &MultiPoly<C> {
        &self.num
    }

    /// Denominator as monic factors with multiplicities.
    pub fn denominator_factors(&self) -> &[(MultiPoly<C>, u32)] {
        &self.den
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> MultiPoly<C> {
        self.den.iter().fold(MultiPoly::one(self.num.context().clone()), |acc, (f, e)| &acc * &f.pow(*e))
    }

    pub fn context(&self) -> Context {
        self.den.iter().fold(self.num.context().clone(), |ctx, (f, _)| ctx.union(f.context()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Multiplies the denominator by `f^exp`, folding constants and leading
    /// coefficients into the numerator.
    fn push_factor(&mut self, f: MultiPoly<C>, exp: u32) {
        debug_assert!(!f.is_zero());
        if exp == 0 {
            return;
        }
        let lc = f.leading_term().map(|(_, c)| c.clone()).expect("nonzero factor");
        let inv = pow_scalar(C::one() / lc.clone(), exp);
        if !inv.is_one() {
            self.num = self.num.scale(&inv);
        }
        if f.is_constant() {
            return;
        }
        let base = if lc.is_one() { f } else { f.scale(&(C::one() / lc)) };
        match self.den.iter_mut().find(|(g, _)| *g == base) {
            Some((_, e)) => *e += exp,
            None => self.den.push((base, exp)),
        }
    }

    /// Rewrites `a` and `b` over a common factored denominator (the
    /// factor-wise maximum) and returns the two adjusted numerators.
    fn common_denominator(a: &Self, b: &Self) -> (MultiPoly<C>, MultiPoly<C>, Factors<C>) {
        let mut lcm = a.den.clone();
        for (f, e) in &b.den {
            match lcm.iter_mut().find(|(g, _)| g == f) {
                Some((_, le)) => *le = (*le).max(*e),
                None => lcm.push((f.clone(), *e)),
            }
        }
        let lift = |x: &Self| {
            lcm.iter().fold(x.num.clone(), |acc, (f, le)| {
                let have = x.den.iter().find(|(g, _)| g == f).map_or(0, |(_, e)| *e);
                if *le > have {
                    &acc * &f.pow(le - have)
                } else {
                    acc
                }
            })
        };
        (lift(a), lift(b), lcm)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() && !negate {
            return other.clone();
        }
        let (na, nb, den) = Self::common_denominator(self, other);
        let num = if negate { &na - &nb } else { &na + &nb };
        RationalFn { num, den }
    }

    fn product(&self, other: &Self) -> Self {
        let mut out = RationalFn { num: &self.num * &other.num, den: self.den.clone() };
        for (f, e) in &other.den {
            out.push_factor(f.clone(), *e);
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        RationalFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &MultiPoly<C>) -> Self {
        RationalFn { num: &self.num * p, den: self.den.clone() }
    }

    pub fn mul_var(&self, var: &str) -> Self {
        RationalFn { num: self.num.mul_var(var), den: self.den.clone() }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut out = Self::from_poly(self.denominator());
        out.push_factor(self.num.clone(), 1);
        Ok(out)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.product(&other.reciprocal()?))
    }

    /// Quotient-rule derivative, `(N' Π f − N Σ eᵢ fᵢ' Π_{j≠i} fⱼ) / Π fᵢ^{eᵢ+1}`
    /// where the products run over the factors that depend on `var`.
    pub fn derivative(&self, var: &str) -> Self {
        let moving: Vec<usize> = (0..self.den.len()).filter(|&i| self.den[i].0.depends_on(var)).collect();
        let mut num = self.num.partial_derivative(var);
        for &i in &moving {
            num = &num * &self.den[i].0;
        }
        for &i in &moving {
            let (f, e) = &self.den[i];
            let mut term = &self.num * &f.partial_derivative(var);
            for &j in moving.iter().filter(|&&j| j != i) {
                term = &term * &self.den[j].0;
            }
            let e = C::from_u32(*e).expect("exponent representable in coefficient type");
            num = &num - &term.scale(&e);
        }
        let mut den = self.den.clone();
        for &i in &moving {
            den[i].1 += 1;
        }
        RationalFn { num, den }
    }

    /// `(∂_var + u)^k u`, iterating `w ↦ ∂_var w + u·w` from `w = u`.
    pub fn shifted_derivative_power(&self, k: u32, var: &str) -> Self {
        (0..k).fold(self.clone(), |w, _| &w.derivative(var) + &(self * &w))
    }

    /// Rescales so the expanded denominator's leading graded-lex
    /// coefficient is 1, and collapses the denominator into one factor.
    pub fn normalize_content(&self) -> Self {
        // factors are monic already, and a product of monic polynomials is monic
        let den = self.denominator();
        if den.is_constant() {
            return Self::from_poly(self.num.clone());
        }
        RationalFn { num: self.num.clone(), den: vec![(den, 1)] }
    }

    pub fn evaluate_exact(&self, point: &[(&str, C)]) -> Result<C> {
        let mut den = C::one();
        for (f, e) in &self.den {
            den = den * pow_scalar(f.evaluate_exact(point)?, *e);
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.evaluate_exact(point)? / den)
    }

    /// Numerator and denominator values in float arithmetic.
    pub fn evaluate_parts<F>(&self, point: &[(&str, F)]) -> Result<(F, F)>
    where
        F: Float,
        C: ToPrimitive,
    {
        let mut den = F::one();
        for (f, e) in &self.den {
            den = den * f.evaluate_float(point)?.powi(*e as i32);
        }
        Ok((self.num.evaluate_float(point)?, den))
    }

    pub fn evaluate_float<F>(&self, point: &[(&str, F)]) -> Result<F>
    where
        F: Float,
        C: ToPrimitive,
    {
        let (n, d) = self.evaluate_parts(point)?;
        Ok(n / d)
    }

    /// Adds `p` to the numerator (not to the function).
    pub fn perturb_numerator(&self, p: &MultiPoly<C>) -> Self {
        RationalFn { num: &self.num + p, den: self.den.clone() }
    }
}

/// Distinct monic factors with multiplicities.
type Factors<C> = Vec<(MultiPoly<C>, u32)>;

fn pow_scalar<C: Scalar>(c: C, exp: u32) -> C {
    (0..exp).fold(C::one(), |acc, _| acc * c.clone())
}

impl<C: Scalar> From<MultiPoly<C>> for RationalFn<C> {
    fn from(p: MultiPoly<C>) -> Self {
        Self::from_poly(p)
    }
}

/// Cross-multiplication equality.
impl<C: Scalar> PartialEq for RationalFn<C> {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl<'a, C: Scalar> Add<&'a RationalFn<C>> for &'a RationalFn<C> {
    type Output = RationalFn<C>;
    fn add(self, rhs: &'a RationalFn<C>) -> RationalFn<C> {
        self.combine(rhs, false)
    }
}

impl<'a, C: Scalar> Sub<&'a RationalFn<C>> for &'a RationalFn<C> {
    type Output = RationalFn<C>;
    fn sub(self, rhs: &'a RationalFn<C>) -> RationalFn<C> {
        self.combine(rhs, true)
    }
}

impl<'a, C: Scalar> Mul<&'a RationalFn<C>> for &'a RationalFn<C> {
    type Output = RationalFn<C>;
    fn mul(self, rhs: &'a RationalFn<C>) -> RationalFn<C> {
        self.product(rhs)
    }
}

impl<C: Scalar> Neg for &RationalFn<C> {
    type Output = RationalFn<C>;
    fn neg(self) -> RationalFn<C> {
        self.scale(&-C::one())
    }
}

impl<C: Scalar + fmt::Display + Signed> fmt::Display for RationalFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (i, (g, e)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            match e {
                1 => write!(f, "({g})")?,
                _ => write!(f, "({g})^{e}")?,
            }
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFnJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

impl RationalFn<Rational> {
    pub fn to_json_value(&self) -> RatFnJson {
        let den = self.denominator();
        RatFnJson { num: (&self.num).into(), den: (&den).into() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("rational function JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: RatFnJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Self::new(json.num.try_into()?, json.den.try_into()?)
    }
}

/// `Φₙ^{(m)} = n Hₙ₋₁^{(m)} / Hₙ^{(m)}` over `(x, y)`, the Hopf-Cole image of
/// the lacunary Hermite polynomial.
pub fn phi_solution(n: i64, m: i64) -> Result<RationalFn<Rational>> {
    if n < 1 {
        return Err(crate::error::invalid(format!("degree n must be at least 1, got {n}")));
    }
    let num = hermite_lacunary(n - 1, m)?.scale(&crate::scalar::integer(n));
    RationalFn::new(num, hermite_lacunary(n, m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, rational};
    use crate::{Poly, RatFn};
    use proptest::prelude::*;

    fn ctx() -> Context {
        Context::new(["x", "y"])
    }
    fn x() -> Poly {
        Poly::var(ctx(), "x")
    }
    fn y() -> Poly {
        Poly::var(ctx(), "y")
    }
    fn k(v: i64) -> Poly {
        Poly::constant(ctx(), integer(v))
    }
    fn h2() -> Poly {
        &x().pow(2) + &y().scale(&integer(2))
    }
    fn frac(n: Poly, d: Poly) -> RatFn {
        RatFn::new(n, d).unwrap()
    }

    #[test]
    fn hopf_cole_of_heat_polynomials() {
        assert_eq!(RatFn::hopf_cole(&h2(), "x").unwrap(), frac(x().scale(&integer(2)), h2()));
        let h4 = &(&x().pow(4) + &(&x().pow(2) * &y()).scale(&integer(12))) + &y().pow(2).scale(&integer(12));
        let num = &x().pow(3).scale(&integer(4)) + &(&x() * &y()).scale(&integer(24));
        let u = RatFn::hopf_cole(&h4, "x").unwrap();
        assert_eq!(u.normalize_content().to_json(), frac(num, h4).normalize_content().to_json());
        // log-derivative of a monomial
        assert_eq!(RatFn::hopf_cole(&x().pow(5), "x").unwrap(), frac(k(5), x()));
        assert!(RatFn::hopf_cole(&Poly::zero(ctx()), "x").is_err());
    }

    #[test]
    fn quotient_rule() {
        let inv_x = frac(k(1), x());
        assert_eq!(inv_x.derivative("x"), frac(k(-1), x().pow(2)));
        let u = frac(x().scale(&integer(2)), h2());
        assert_eq!(u.derivative("y"), frac(x().scale(&integer(-4)), h2().pow(2)));
        let p = h2();
        assert_eq!(RatFn::from_poly(p.clone()).derivative("x"), RatFn::from_poly(p.partial_derivative("x")));
        // the y-independent factor is left alone
        assert_eq!(u.derivative("y").denominator_factors(), &[(h2(), 2)]);
    }

    #[test]
    fn field_arithmetic() {
        let u = frac(x().scale(&integer(2)), h2());
        assert_eq!(&u + &RatFn::zero(ctx()), u);
        let one = &frac(k(1), x()) * &RatFn::from_poly(x());
        assert_eq!(one, RatFn::constant(ctx(), integer(1)));
        assert_eq!(u.scale(&integer(2)), frac(x().scale(&integer(4)), h2()));
        assert!(RatFn::from_poly(x()).checked_div(&RatFn::zero(ctx())).is_err());
        assert!(RatFn::new(x(), Poly::zero(ctx())).is_err());
    }

    #[test]
    fn shifted_powers() {
        let inv_x = frac(k(1), x());
        assert_eq!(inv_x.shifted_derivative_power(0, "x"), inv_x);
        assert!(inv_x.shifted_derivative_power(1, "x").is_zero());
        let c = RatFn::constant(ctx(), rational(3, 2));
        assert_eq!(c.shifted_derivative_power(2, "x"), RatFn::constant(ctx(), rational(27, 8)));
    }

    #[test]
    fn zero_test() {
        assert!(frac(k(0), h2()).is_zero());
        assert!(frac(&x() - &x(), y()).is_zero());
        assert!(!frac(x().scale(&integer(2)), h2()).is_zero());
    }

    #[test]
    fn content_normalization() {
        // (4x³ + 24y) / (x⁴ + 24xy), scaled by 1/4 on both sides
        let num = &x().pow(3) + &y().scale(&integer(6));
        let den = &x().pow(4).scale(&rational(1, 4)) + &(&x() * &y()).scale(&integer(6));
        let u = frac(num, den);
        let n = u.normalize_content();
        assert_eq!(n, u);
        let expected_num = &x().pow(3).scale(&integer(4)) + &y().scale(&integer(24));
        let expected_den = &x().pow(4) + &(&x() * &y()).scale(&integer(24));
        assert_eq!(n.numerator(), &expected_num);
        assert_eq!(n.denominator(), expected_den);
        let two = frac(k(2), k(2)).normalize_content();
        assert_eq!(two.numerator(), &k(1));
        assert_eq!(two.denominator(), k(1));
    }

    #[test]
    fn json_wire_form() {
        let u = frac(x().scale(&integer(2)), h2());
        let text = u.to_json();
        assert_eq!(
            text,
            r#"{"num":{"vars":["x","y"],"terms":[{"exps":[1,0],"num":"2","den":"1"}]},"den":{"vars":["x","y"],"terms":[{"exps":[2,0],"num":"1","den":"1"},{"exps":[0,1],"num":"2","den":"1"}]}}"#
        );
        assert_eq!(RatFn::from_json(&text).unwrap().to_json(), text);
    }

    #[test]
    fn evaluation() {
        let u = frac(x().scale(&integer(2)), h2());
        assert_eq!(u.evaluate_exact(&[("x", integer(1)), ("y", rational(1, 2))]).unwrap(), integer(1));
        assert!(u.evaluate_exact(&[("x", integer(0)), ("y", integer(0))]).is_err());
        assert_eq!(u.evaluate_float(&[("x", 2.0), ("y", 0.0)]).unwrap(), 1.0);
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(((0u32..3, 0u32..3), -5i64..6, 1i64..4), 1..4).prop_map(|terms| {
            Poly::from_terms(ctx(), terms.into_iter().map(|((a, b), n, d)| (vec![a, b], rational(n, d))))
        })
    }

    fn nonzero_poly() -> impl Strategy<Value = Poly> {
        small_poly().prop_filter("nonzero", |p| !p.is_zero())
    }

    fn small_ratfn() -> impl Strategy<Value = RatFn> {
        (small_poly(), nonzero_poly()).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mixed_partials_commute(u in small_ratfn()) {
            prop_assert_eq!(u.derivative("x").derivative("y"), u.derivative("y").derivative("x"));
        }

        #[test]
        fn log_derivative_is_additive(z in nonzero_poly(), w in nonzero_poly()) {
            let zw = &z * &w;
            let lhs = RatFn::hopf_cole(&zw, "x").unwrap();
            let rhs = &RatFn::hopf_cole(&z, "x").unwrap() + &RatFn::hopf_cole(&w, "x").unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn shifted_power_recursion(u in small_ratfn(), k in 0u32..3) {
            let p_k = u.shifted_derivative_power(k, "x");
            let p_next = u.shifted_derivative_power(k + 1, "x");
            prop_assert_eq!(p_next, &p_k.derivative("x") + &(&u * &p_k));
        }

        #[test]
        fn normalization_preserves_value(u in small_ratfn()) {
            prop_assume!(!u.is_zero());
            prop_assert_eq!(u.normalize_content(), u);
        }

        #[test]
        fn quotient_rule_matches_naive_form(n in small_poly(), d in nonzero_poly()) {
            // (n'd − nd') / d²
            let naive = frac(&(&n.partial_derivative("x") * &d) - &(&n * &d.partial_derivative("x")), d.pow(2));
            prop_assert_eq!(frac(n, d).derivative("x"), naive);
        }
    }
}
