//! Sparse multivariate polynomials over named variables.
//!
//! A [`MultiPoly`] is a map from exponent vectors to nonzero coefficients,
//! kept in graded-lexicographic order. Two polynomials built over different
//! variable contexts can be combined freely: the result lives over the union
//! of both contexts.

mod json;
mod monomial;

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Float, Signed, ToPrimitive, Zero};

pub use json::PolyJson;
pub use monomial::{Context, Monomial};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct MultiPoly<C> {
    ctx: Context,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(ctx: Context) -> Self {
        MultiPoly { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: Context) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn constant(ctx: Context, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ctx.len()), c);
        }
        MultiPoly { ctx, terms }
    }

    /// The polynomial `name`, over `ctx` extended by `name` if needed.
    pub fn var(ctx: Context, name: &str) -> Self {
        Self::monomial(ctx, &[(name, 1)], C::one())
    }

    /// `c * Π name^exp`, extending `ctx` with any new names.
    pub fn monomial(ctx: Context, powers: &[(&str, u32)], c: C) -> Self {
        let ctx = ctx.union(&Context::new(powers.iter().map(|(v, _)| *v)));
        let mut exps = vec![0; ctx.len()];
        for (name, e) in powers {
            exps[ctx.index_of(name).unwrap()] += e;
        }
        Self::from_terms(ctx, [(exps, c)])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials. Panics if an exponent vector has the wrong length.
    pub fn from_terms<I>(ctx: Context, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), ctx.len(), "exponent vector does not match context");
            map.accumulate(Monomial::from_exponents(exps), c);
        }
        map.retain(|_, c| !c.is_zero());
        MultiPoly { ctx, terms: map }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant term (zero when absent).
    pub fn constant_term(&self) -> C {
        self.terms.get(&Monomial::one(self.ctx.len())).cloned().unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Highest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of `Π name^exp` (zero if absent or if a name is unknown
    /// with a positive exponent).
    pub fn coefficient(&self, powers: &[(&str, u32)]) -> C {
        let mut exps = vec![0; self.ctx.len()];
        for (name, e) in powers {
            match self.ctx.index_of(name) {
                Some(i) => exps[i] += e,
                None if *e == 0 => {}
                None => return C::zero(),
            }
        }
        self.terms.get(&Monomial::from_exponents(exps)).cloned().unwrap_or_else(C::zero)
    }

    /// Whether any term has a positive power of `name`.
    pub fn depends_on(&self, name: &str) -> bool {
        match self.ctx.index_of(name) {
            Some(i) => self.terms.keys().any(|m| m.exponent(i) > 0),
            None => false,
        }
    }

    /// Re-expresses `self` over `ctx`. Fails if a variable in use is missing.
    pub fn with_context(&self, ctx: &Context) -> Result<Self> {
        if self.ctx.same(ctx) {
            return Ok(self.clone());
        }
        if let Some(missing) = self.ctx.names().iter().find(|v| !ctx.contains(v) && self.depends_on(v)) {
            return Err(Error::MissingVariable(missing.clone()));
        }
        Ok(self.remapped(ctx))
    }

    fn remapped(&self, ctx: &Context) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.remap(&self.ctx, ctx), c.clone())).collect();
        MultiPoly { ctx: ctx.clone(), terms }
    }

    /// Drops variables that no term uses.
    pub fn trimmed(&self) -> Self {
        let ctx = Context::new(self.ctx.names().iter().filter(|v| self.depends_on(v)).cloned());
        self.remapped(&ctx)
    }

    /// Renames variables; pairs are `(from, to)` and apply simultaneously.
    pub fn renamed(&self, pairs: &[(&str, &str)]) -> Self {
        let names: Vec<String> = self
            .ctx
            .names()
            .iter()
            .map(|v| pairs.iter().find(|(from, _)| from == v).map_or_else(|| v.clone(), |(_, to)| to.to_string()))
            .collect();
        let ctx = Context::new(names.iter().cloned());
        if ctx.len() == names.len() {
            MultiPoly { ctx, terms: self.terms.clone() }
        } else {
            // two variables collapsed into one name
            let terms = self.terms.iter().map(|(m, c)| {
                let mut exps = vec![0; ctx.len()];
                for (name, &e) in names.iter().zip(m.exponents()) {
                    exps[ctx.index_of(name).unwrap()] += e;
                }
                (exps, c.clone())
            });
            Self::from_terms(ctx.clone(), terms.collect::<Vec<_>>())
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx.clone());
        }
        let terms =
            self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())).filter(|(_, v)| !v.is_zero()).collect();
        MultiPoly { ctx: self.ctx.clone(), terms }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one(self.ctx.clone());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative. Differentiating by a variable outside the
    /// context gives zero.
    pub fn partial_derivative(&self, var: &str) -> Self {
        let Some(idx) = self.ctx.index_of(var) else {
            return Self::zero(self.ctx.clone());
        };
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(idx) > 0)
            .map(|(m, c)| {
                let e = m.exponent(idx);
                let factor = C::from_u32(e).expect("exponent representable in coefficient type");
                (m.with_exponent(idx, e - 1), c.clone() * factor)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        MultiPoly { ctx: self.ctx.clone(), terms }
    }

    /// `∂^order / ∂var^order`.
    pub fn nth_derivative(&self, var: &str, order: u32) -> Self {
        (0..order).fold(self.clone(), |p, _| p.partial_derivative(var))
    }

    /// Multiplies by the variable `var`.
    pub fn mul_var(&self, var: &str) -> Self {
        let ctx = self.ctx.union(&Context::new([var]));
        let idx = ctx.index_of(var).unwrap();
        let base = if ctx.same(&self.ctx) { Cow::Borrowed(self) } else { Cow::Owned(self.remapped(&ctx)) };
        let terms = base.terms.iter().map(|(m, c)| (m.with_exponent(idx, m.exponent(idx) + 1), c.clone())).collect();
        MultiPoly { ctx, terms }
    }

    /// Exact evaluation. Every variable the polynomial uses must be assigned.
    pub fn evaluate_exact(&self, point: &[(&str, C)]) -> Result<C> {
        let values = self.point_values(point)?;
        let mut powers = PowerTable::new(values);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term * powers.get(i, e);
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Approximate evaluation: each coefficient is rounded to `F` and the
    /// terms accumulated in `F` arithmetic.
    pub fn evaluate_float<F>(&self, point: &[(&str, F)]) -> Result<F>
    where
        F: Float,
        C: ToPrimitive,
    {
        let values = self.point_values(point)?;
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut term = coefficient_to_float::<C, F>(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term * values[i].powi(e as i32);
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    fn point_values<T: Clone + Zero>(&self, point: &[(&str, T)]) -> Result<Vec<T>> {
        self.ctx
            .names()
            .iter()
            .map(|name| match point.iter().find(|(v, _)| v == name) {
                Some((_, value)) => Ok(value.clone()),
                // unused variables need no value
                None if !self.depends_on(name) => Ok(T::zero()),
                None => Err(Error::MissingVariable(name.clone())),
            })
            .collect()
    }

    /// Replaces `var` by `replacement` everywhere.
    ///
    /// The result's context is `self`'s context without `var` (unless the
    /// replacement mentions it), followed by any new variables of the
    /// replacement.
    pub fn substitute(&self, var: &str, replacement: &MultiPoly<C>) -> Self {
        let Some(idx) = self.ctx.index_of(var) else {
            return self.clone();
        };
        let keep_var = replacement.ctx.contains(var);
        let kept = Context::new(self.ctx.names().iter().filter(|v| keep_var || v.as_str() != var).cloned());
        let ctx = kept.union(&replacement.ctx);
        let replacement = replacement.remapped(&ctx);

        let mut powers: Vec<MultiPoly<C>> = vec![MultiPoly::one(ctx.clone())];
        let mut out: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(idx) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * &replacement;
                powers.push(next);
            }
            let rest = m.with_exponent(idx, 0).remap(&self.ctx, &ctx);
            for (pm, pc) in &powers[e].terms {
                out.accumulate(rest.mul(pm), c.clone() * pc.clone());
            }
        }
        MultiPoly::from_accumulated(ctx, out)
    }

    fn from_accumulated(ctx: Context, map: HashMap<Monomial, C>) -> Self {
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultiPoly { ctx, terms }
    }

    fn aligned<'a>(a: &'a Self, b: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        if a.ctx.same(&b.ctx) {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let ctx = a.ctx.union(&b.ctx);
        let a = if a.ctx.same(&ctx) { Cow::Borrowed(a) } else { Cow::Owned(a.remapped(&ctx)) };
        let b = if b.ctx.same(&ctx) { Cow::Borrowed(b) } else { Cow::Owned(b.remapped(&ctx)) };
        (a, b)
    }

    fn add_scaled(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = Self::aligned(self, other);
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            let c = if negate { -c.clone() } else { c.clone() };
            match terms.get_mut(m) {
                Some(existing) => {
                    *existing = existing.clone() + c;
                    if existing.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c);
                }
            }
        }
        MultiPoly { ctx: a.ctx.clone(), terms }
    }

    fn product(&self, other: &Self) -> Self {
        let (a, b) = Self::aligned(self, other);
        let ctx = a.ctx.clone();
        if a.is_zero() || b.is_zero() {
            return Self::zero(ctx);
        }
        let mut out: HashMap<Monomial, C> = HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.accumulate(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Self::from_accumulated(ctx, out)
    }
}

trait MonomialMap<C> {
    fn accumulate(&mut self, key: Monomial, c: C);
}

impl<C: Scalar> MonomialMap<C> for HashMap<Monomial, C> {
    fn accumulate(&mut self, key: Monomial, c: C) {
        match self.get_mut(&key) {
            Some(v) => *v = v.clone() + c,
            None => {
                self.insert(key, c);
            }
        }
    }
}

impl<C: Scalar> MonomialMap<C> for BTreeMap<Monomial, C> {
    fn accumulate(&mut self, key: Monomial, c: C) {
        match self.get_mut(&key) {
            Some(v) => *v = v.clone() + c,
            None => {
                self.insert(key, c);
            }
        }
    }
}

pub(crate) fn coefficient_to_float<C: ToPrimitive, F: Float>(c: &C) -> F {
    c.to_f64().and_then(F::from).unwrap_or_else(F::nan)
}

struct PowerTable<C> {
    values: Vec<C>,
    cache: HashMap<(usize, u32), C>,
}

impl<C: Scalar> PowerTable<C> {
    fn new(values: Vec<C>) -> Self {
        PowerTable { values, cache: HashMap::new() }
    }

    fn get(&mut self, var: usize, exp: u32) -> C {
        if let Some(v) = self.cache.get(&(var, exp)) {
            return v.clone();
        }
        let v = if exp == 1 { self.values[var].clone() } else { self.get(var, exp - 1) * self.values[var].clone() };
        self.cache.insert((var, exp), v.clone());
        v
    }
}

impl<C: Scalar> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.terms == b.terms
    }
}

impl<C: Scalar + Eq> Eq for MultiPoly<C> {}

impl<'a, C: Scalar> Add<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &'a MultiPoly<C>) -> MultiPoly<C> {
        self.add_scaled(rhs, false)
    }
}

impl<'a, C: Scalar> Sub<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &'a MultiPoly<C>) -> MultiPoly<C> {
        self.add_scaled(rhs, true)
    }
}

impl<'a, C: Scalar> Mul<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &'a MultiPoly<C>) -> MultiPoly<C> {
        self.product(rhs)
    }
}

impl<C: Scalar> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.scale(&-C::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl<C: Scalar> $tr for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $method(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<C: Scalar> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

impl<C: Scalar + fmt::Display + Signed> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (name, &e) in self.ctx.names().iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, rational};
    use crate::{Poly, Rational};

    fn xy() -> Context {
        Context::new(["x", "y"])
    }

    fn x() -> Poly {
        Poly::var(xy(), "x")
    }

    fn y() -> Poly {
        Poly::var(xy(), "y")
    }

    fn c(v: i64) -> Poly {
        Poly::constant(xy(), integer(v))
    }

    // x^2 + 2y
    fn h2() -> Poly {
        &x().pow(2) + &y().scale(&integer(2))
    }

    #[test]
    fn addition_cancels() {
        let sum = &h2() + &y().scale(&integer(-2));
        assert_eq!(sum, x().pow(2));
        assert_eq!(sum.num_terms(), 1);
        assert_eq!(&Poly::zero(xy()) + &h2(), h2());
    }

    #[test]
    fn add_third_order_hermites() {
        let h3 = &x().pow(3) + &(&x() * &y()).scale(&integer(6));
        let h3_lac = &x().pow(3) + &y().scale(&integer(6));
        let expected = &(&x().pow(3).scale(&integer(2)) + &(&x() * &y()).scale(&integer(6))) + &y().scale(&integer(6));
        assert_eq!(&h3 + &h3_lac, expected);
    }

    #[test]
    fn products() {
        assert_eq!(&h2() * &c(1), h2());
        assert_eq!(&(&x() + &y()) * &(&x() - &y()), &x().pow(2) - &y().pow(2));
        let expected = &(&x().pow(4) + &(&x().pow(2) * &y()).scale(&integer(4))) + &y().pow(2).scale(&integer(4));
        assert_eq!(&h2() * &h2(), expected);
        assert_eq!(h2().pow(2), expected);
    }

    #[test]
    fn derivatives() {
        assert_eq!(h2().partial_derivative("x"), x().scale(&integer(2)));
        let h3 = &x().pow(3) + &(&x() * &y()).scale(&integer(6));
        assert_eq!(h3.partial_derivative("y"), x().scale(&integer(6)));
        let h4 = &(&x().pow(4) + &(&x().pow(2) * &y()).scale(&integer(12))) + &y().pow(2).scale(&integer(12));
        assert_eq!(h4.partial_derivative("x"), h3.scale(&integer(4)));
        assert!(h2().partial_derivative("z").is_zero());
    }

    #[test]
    fn exact_evaluation() {
        let at = |xv: Rational, yv: Rational| h2().evaluate_exact(&[("x", xv), ("y", yv)]).unwrap();
        assert_eq!(at(integer(1), integer(0)), integer(1));
        assert_eq!(at(integer(0), rational(3, 2)), integer(3));
        assert_eq!(c(5).evaluate_exact(&[("x", rational(7, 3))]).unwrap(), integer(5));
        assert!(matches!(h2().evaluate_exact(&[("x", integer(1))]), Err(Error::MissingVariable(_))));
    }

    #[test]
    fn float_evaluation() {
        assert_eq!(h2().evaluate_float(&[("x", 2.0), ("y", 1.0)]).unwrap(), 6.0);
        assert_eq!(Poly::zero(xy()).evaluate_float(&[("x", 3.0_f64)]).unwrap(), 0.0);
        assert_eq!(x().pow(9).evaluate_float(&[("x", 10.0)]).unwrap(), 1.0e9);
        let single: f32 = h2().evaluate_float(&[("x", 2.0_f32), ("y", 1.0)]).unwrap();
        assert_eq!(single, 6.0);
    }

    #[test]
    fn substitution() {
        let shifted = x().pow(2).substitute("x", &(&x() + &y()));
        assert_eq!(shifted, &(&x().pow(2) + &(&x() * &y()).scale(&integer(2))) + &y().pow(2));
        let cube = x().pow(3).substitute("x", &(&x() + &y()));
        let expected = Poly::from_terms(
            xy(),
            [(vec![3, 0], integer(1)), (vec![2, 1], integer(3)), (vec![1, 2], integer(3)), (vec![0, 3], integer(1))],
        );
        assert_eq!(cube, expected);
        let gone = h2().substitute("y", &Poly::zero(Context::empty()));
        assert_eq!(gone.context().names(), &["x"]);
        assert_eq!(gone, x().pow(2));
    }

    #[test]
    fn contexts_merge_by_name() {
        let t = Poly::var(Context::new(["t"]), "t");
        let sum = &x() + &t;
        assert_eq!(sum.context().names(), &["x", "y", "t"]);
        assert_eq!(sum.trimmed().context().names(), &["x", "t"]);
        // equality ignores unused variables
        assert_eq!(x().trimmed(), x());
        assert_eq!(h2().renamed(&[("x", "x1"), ("y", "x2")]).context().names(), &["x1", "x2"]);
    }

    #[test]
    fn display_is_descending() {
        let p = &(&x().pow(3) - &y().scale(&integer(6))) + &c(1);
        assert_eq!(p.to_string(), "x^3 - 6*y + 1");
        assert_eq!(rational_poly().to_string(), "1/2*x");
    }

    fn rational_poly() -> Poly {
        x().scale(&rational(1, 2))
    }

    #[test]
    fn generic_over_integer_coefficients() {
        let ctx = Context::new(["x"]);
        let p: MultiPoly<i64> = MultiPoly::var(ctx.clone(), "x");
        let q = &(&p * &p) + &MultiPoly::constant(ctx, 3);
        assert_eq!(q.partial_derivative("x"), p.scale(&2));
        assert_eq!(q.evaluate_exact(&[("x", 4)]).unwrap(), 19);
    }
}
