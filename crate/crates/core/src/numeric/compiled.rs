use num_traits::{Float, ToPrimitive};

use crate::error::Result;
use crate::multipoly::{coefficient_to_float, Context, MultiPoly};
use crate::ratfunc::RationalFn;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
struct FloatPoly<F> {
    terms: Vec<(F, Vec<u32>)>,
}

impl<F: Float> FloatPoly<F> {
    fn new<C: Scalar + ToPrimitive>(p: &MultiPoly<C>, ctx: &Context) -> Result<Self> {
        let p = p.with_context(ctx)?;
        let terms = p.terms().map(|(m, c)| (coefficient_to_float::<C, F>(c), m.exponents().to_vec())).collect();
        Ok(FloatPoly { terms })
    }

    fn eval(&self, x: &[F]) -> F {
        self.terms.iter().fold(F::zero(), |acc, (c, exps)| {
            let term = exps.iter().zip(x).filter(|(e, _)| **e > 0).fold(*c, |t, (e, v)| t * v.powi(*e as i32));
            acc + term
        })
    }
}

/// A rational function with float coefficients, evaluated at coordinate
/// slices in a fixed variable order.
#[derive(Clone, Debug)]
pub struct CompiledRatFn<F> {
    num: FloatPoly<F>,
    den: Vec<(FloatPoly<F>, i32)>,
}

impl<F: Float> CompiledRatFn<F> {
    pub fn new<C: Scalar + ToPrimitive>(u: &RationalFn<C>, order: &[String]) -> Result<Self> {
        let ctx = Context::new(order.iter().cloned());
        let num = FloatPoly::new(u.numerator(), &ctx)?;
        let den = u
            .denominator_factors()
            .iter()
            .map(|(f, e)| Ok((FloatPoly::new(f, &ctx)?, *e as i32)))
            .collect::<Result<_>>()?;
        Ok(CompiledRatFn { num, den })
    }

    pub fn from_poly<C: Scalar + ToPrimitive>(p: &MultiPoly<C>, order: &[String]) -> Result<Self> {
        Self::new(&RationalFn::from_poly(p.clone()), order)
    }

    /// `(numerator, denominator)`.
    pub fn parts(&self, x: &[F]) -> (F, F) {
        let den = self.den.iter().fold(F::one(), |acc, (f, e)| acc * f.eval(x).powi(*e));
        (self.num.eval(x), den)
    }

    pub fn eval(&self, x: &[F]) -> F {
        let (n, d) = self.parts(x);
        n / d
    }
}
