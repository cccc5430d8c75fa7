use crate::multipoly::MultiPoly;
use crate::ratfunc::RationalFn;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Derivative(String),
    MultiplyByVar(String),
}

/// A linear combination of compositions of `∂_v` and multiplication by `v`.
///
/// Each term's atoms are written left to right as in `∂ₓ x ∂ₓ` and applied
/// right to left: differentiate, multiply by `x`, differentiate.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearDiffOp<C> {
    terms: Vec<(C, Vec<Atom>)>,
}

trait Operand: Sized {
    fn apply_atom(&self, atom: &Atom) -> Self;
}

impl<C: Scalar> Operand for MultiPoly<C> {
    fn apply_atom(&self, atom: &Atom) -> Self {
        match atom {
            Atom::Derivative(v) => self.partial_derivative(v),
            Atom::MultiplyByVar(v) => self.mul_var(v),
        }
    }
}

impl<C: Scalar> Operand for RationalFn<C> {
    fn apply_atom(&self, atom: &Atom) -> Self {
        match atom {
            Atom::Derivative(v) => self.derivative(v),
            Atom::MultiplyByVar(v) => self.mul_var(v),
        }
    }
}

impl<C: Scalar> LinearDiffOp<C> {
    pub fn new() -> Self {
        LinearDiffOp { terms: Vec::new() }
    }

    pub fn term(mut self, coeff: C, atoms: Vec<Atom>) -> Self {
        if !coeff.is_zero() {
            self.terms.push((coeff, atoms));
        }
        self
    }

    pub fn terms(&self) -> &[(C, Vec<Atom>)] {
        &self.terms
    }

    /// `∂_var^order`.
    pub fn derivative(var: &str, order: u32) -> Self {
        Self::new().term(C::one(), vec![Atom::Derivative(var.to_string()); order as usize])
    }

    /// `∂_var var ∂_var`, the Laguerre diffusion operator.
    pub fn laguerre(var: &str) -> Self {
        Self::new().term(
            C::one(),
            vec![
                Atom::Derivative(var.to_string()),
                Atom::MultiplyByVar(var.to_string()),
                Atom::Derivative(var.to_string()),
            ],
        )
    }

    /// `α∂ + β∂² + γ∂³` in `var`.
    pub fn cubic(var: &str, alpha: C, beta: C, gamma: C) -> Self {
        let d = |k| vec![Atom::Derivative(var.to_string()); k];
        Self::new().term(alpha, d(1)).term(beta, d(2)).term(gamma, d(3))
    }

    fn apply_to<T>(&self, operand: &T, zero: T, add: impl Fn(&T, &T) -> T, scale: impl Fn(&T, &C) -> T) -> T
    where
        T: Operand + Clone,
    {
        self.terms.iter().fold(zero, |acc, (coeff, atoms)| {
            let image = atoms.iter().rev().fold(operand.clone(), |p, atom| p.apply_atom(atom));
            add(&acc, &scale(&image, coeff))
        })
    }

    pub fn apply(&self, p: &MultiPoly<C>) -> MultiPoly<C> {
        self.apply_to(p, MultiPoly::zero(p.context().clone()), |a, b| a + b, |p, c| p.scale(c))
    }

    /// The same operator acting on a rational function, built from the
    /// quotient-rule derivative and multiplication by a variable.
    pub fn apply_rational(&self, u: &RationalFn<C>) -> RationalFn<C> {
        self.apply_to(u, RationalFn::zero(u.context()), |a, b| a + b, |u, c| u.scale(c))
    }
}

impl<C: Scalar> Default for LinearDiffOp<C> {
    fn default() -> Self {
        Self::new()
    }
}
