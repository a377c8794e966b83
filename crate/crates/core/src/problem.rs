//! JSON problem files describing an algebra, its derivations and an operation.
//!
//! ```json
//! {
//!   "name": "novikov",
//!   "variables": [{"name": "x", "weight": 0}],
//!   "derivations": {"d": {"x": "1"}},
//!   "operation": {"arity": 2, "summands": [{"coeff": "1", "factors": [[], ["d"]]}]}
//! }
//! ```
//!
//! A variable missing from a derivation's image map is sent to 0. Each factor
//! is a single word, letters outermost first.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::diffop::{Derivation, DiffAlgebra, DiffOperator, OperatorWord};
use crate::error::{Error, Result};
use crate::operation::{DerivedOperation, Summand};
use crate::parse::parse_polynomial;
use crate::poly::AlgebraContext;
use crate::rational::Rational;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableSpec {
    pub name: String,
    #[serde(default)]
    pub weight: i64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandSpec {
    pub coeff: Rational,
    pub factors: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperationSpec {
    pub arity: usize,
    pub summands: Vec<SummandSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub variables: Vec<VariableSpec>,
    #[serde(default)]
    pub derivations: BTreeMap<String, BTreeMap<String, String>>,
    pub operation: OperationSpec,
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Problem(e.to_string()))
    }

    pub fn build(&self) -> Result<DerivedOperation> {
        let ctx = AlgebraContext::new(self.variables.iter().map(|v| (v.name.as_str(), v.weight)))?;
        let mut alg = DiffAlgebra::new(ctx.clone());
        for (name, images) in &self.derivations {
            if !crate::poly::is_identifier(name) {
                return Err(Error::Problem(format!("derivation name '{name}' is not an identifier")));
            }
            let parsed = images
                .iter()
                .map(|(var, text)| Ok((var.as_str(), parse_polynomial(text, &ctx)?)))
                .collect::<Result<Vec<_>>>()?;
            alg.register(Derivation::from_images(name.clone(), &ctx, parsed)?)?;
        }
        let summands = self.operation.summands.iter().map(|s| {
            Summand::new(
                s.coeff.clone(),
                s.factors
                    .iter()
                    .map(|w| DiffOperator::word(OperatorWord::new(w.iter().cloned())))
                    .collect(),
            )
        });
        DerivedOperation::new(
            self.name.clone().unwrap_or_else(|| "problem".to_string()),
            Arc::new(alg),
            self.operation.arity,
            summands,
        )
    }
}

/// Parse and build a problem file.
pub fn load_problem(text: &str) -> Result<DerivedOperation> {
    ProblemSpec::from_json(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    const NOVIKOV: &str = r#"{
        "name": "nov",
        "variables": [{"name": "x", "weight": 0}],
        "derivations": {"d": {"x": "1"}},
        "operation": {"arity": 2, "summands": [{"coeff": "1", "factors": [[], ["d"]]}]}
    }"#;

    #[test]
    fn loads_novikov() {
        let op = load_problem(NOVIKOV).unwrap();
        assert_eq!(op.name(), "nov");
        let x = parse_polynomial("x", op.context()).unwrap();
        let x2 = parse_polynomial("x^2", op.context()).unwrap();
        assert_eq!(op.apply(&[x, x2]).unwrap().to_string(), "2*x^2");
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(load_problem("{"), Err(Error::Problem(_))));
        let unknown_letter = NOVIKOV.replace("[\"d\"]", "[\"e\"]");
        assert!(matches!(load_problem(&unknown_letter), Err(Error::UnknownDerivation(_))));
        let bad_var = NOVIKOV.replace("{\"x\": \"1\"}", "{\"q\": \"1\"}");
        assert!(matches!(load_problem(&bad_var), Err(Error::UnknownVariable(_))));
        let wrong_arity = NOVIKOV.replace("\"arity\": 2", "\"arity\": 3");
        assert!(matches!(load_problem(&wrong_arity), Err(Error::ArityMismatch { .. })));
        let extra = NOVIKOV.replace("\"name\": \"nov\",", "\"nme\": \"nov\",");
        assert!(matches!(load_problem(&extra), Err(Error::Problem(_))));
        let bad_poly = NOVIKOV.replace("{\"x\": \"1\"}", "{\"x\": \"x^\"}");
        assert!(matches!(load_problem(&bad_poly), Err(Error::Parse(_))));
    }

    #[test]
    fn integer_coefficients_accepted() {
        let op = load_problem(&NOVIKOV.replace("\"coeff\": \"1\"", "\"coeff\": -3")).unwrap();
        assert_eq!(op.summands()[0].coeff, Rational::from_integer(-3));
    }
}
