use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Context, MultiPoly};
use crate::error::{Error, Result};
use crate::Rational;

/// Wire form: `{"vars":[...], "terms":[{"exps":[...], "num":"..", "den":".."}]}`
/// with terms listed from the leading (highest graded-lex) term down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl From<&MultiPoly<Rational>> for PolyJson {
    fn from(p: &MultiPoly<Rational>) -> Self {
        PolyJson {
            vars: p.context().names().to_vec(),
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    exps: m.exponents().to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for MultiPoly<Rational> {
    type Error = Error;

    fn try_from(json: PolyJson) -> Result<Self> {
        let ctx = Context::new(json.vars.iter().cloned());
        if ctx.len() != json.vars.len() {
            return Err(Error::Json("duplicate variable name".into()));
        }
        let mut terms = Vec::with_capacity(json.terms.len());
        for term in json.terms {
            if term.exps.len() != ctx.len() {
                return Err(Error::Json(format!("term has {} exponents for {} variables", term.exps.len(), ctx.len())));
            }
            let num: BigInt = term.num.parse().map_err(|_| Error::Json(format!("bad numerator `{}`", term.num)))?;
            let den: BigInt = term.den.parse().map_err(|_| Error::Json(format!("bad denominator `{}`", term.den)))?;
            if !den.is_positive() {
                return Err(Error::Json("denominator must be positive".into()));
            }
            terms.push((term.exps, Rational::new(num, den)));
        }
        Ok(MultiPoly::from_terms(ctx, terms))
    }
}

impl MultiPoly<Rational> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("polynomial JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: PolyJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        json.try_into()
    }
}

impl Serialize for MultiPoly<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = PolyJson::deserialize(deserializer)?;
        json.try_into().map_err(serde::de::Error::custom)
    }
}
