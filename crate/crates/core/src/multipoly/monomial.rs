use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Ordered list of variable names a polynomial is expressed over.
///
/// Contexts are compared by value; cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Context(Arc<[String]>);

impl Context {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut seen: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if !seen.contains(&name) {
                seen.push(name);
            }
        }
        Context(seen.into())
    }

    pub fn empty() -> Self {
        Context(Arc::from(Vec::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// Variables of `self` followed by those of `other` not already present.
    pub fn union(&self, other: &Context) -> Context {
        if self == other {
            return self.clone();
        }
        Context::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub(crate) fn same(&self, other: &Context) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector aligned with a [`Context`].
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the first context variable, then the second, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity].into())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps.into())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub(crate) fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn with_exponent(&self, index: usize, exp: u32) -> Monomial {
        let mut exps = self.0.clone();
        exps[index] = exp;
        Monomial(exps)
    }

    /// Re-expresses the exponents in `to`, which must contain every variable
    /// of `from` carrying a nonzero exponent.
    pub(crate) fn remap(&self, from: &Context, to: &Context) -> Monomial {
        let mut exps = vec![0; to.len()];
        for (name, &e) in from.names().iter().zip(self.0.iter()) {
            if e > 0 {
                let idx = to.index_of(name).expect("target context lacks a used variable");
                exps[idx] = e;
            }
        }
        Monomial(exps.into())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
