//! TOML description of triangulation data.
//!
//! ```toml
//! [field]
//! kind = "rational"          # or "prime" together with `prime = 101`
//!
//! [quiver]
//! vertices = ["1", "2", "3"]
//! arrows = [
//!     { name = "alpha", source = "1", target = "2" },
//!     # ...
//! ]
//!
//! [f]
//! cycles = [["alpha", "beta", "eps"], ["gamma", "eps'", "delta"]]
//!
//! [weights]                  # per g-cycle, keyed by any arrow on it; default 1
//! eps = 2
//!
//! [params]                   # per g-cycle; literal, "lambda", "-lambda",
//! "eps'" = "1/lambda"        # "1/lambda" or "-1/lambda"; default "1"
//!
//! [lambda]
//! value = "2"
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};
use crate::quiver::{Quiver, QuiverError, TriangulationData};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("spec file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("spec file: {0}")]
    Serialize(#[from] toml::ser::Error),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("unknown field kind `{0}`")]
    FieldKind(String),
    #[error("parameter at `{0}` is zero")]
    ZeroParameter(String),
    #[error("f does not define g on a 2-regular quiver")]
    NoG,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSection {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FSection {
    pub cycles: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaSection {
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub field: FieldSection,
    pub quiver: QuiverSection,
    pub f: FSection,
    #[serde(default)]
    pub weights: BTreeMap<String, u32>,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<LambdaSection>,
}

/// Evaluates a parameter expression at `λ`.
pub fn eval_param(expr: &str, field: Field, lambda: &Scalar) -> Result<Scalar, FieldError> {
    let inv = || lambda.inv().ok_or(FieldError::DivisionByZero);
    match expr.trim() {
        "lambda" => Ok(lambda.clone()),
        "-lambda" => Ok(-lambda),
        "1/lambda" => inv(),
        "-1/lambda" => Ok(-inv()?),
        lit => field.parse_scalar(lit),
    }
}

impl AlgebraSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml(&self) -> Result<String, SpecError> {
        Ok(toml::to_string(self)?)
    }

    pub fn field(&self) -> Result<Field, SpecError> {
        match self.field.kind.as_str() {
            "rational" => Ok(Field::Rational),
            "prime" => Ok(Field::prime(self.field.prime.unwrap_or(0))?),
            k => Err(SpecError::FieldKind(k.to_string())),
        }
    }

    pub fn set_field(&mut self, field: Field) {
        self.field = match field {
            Field::Rational => FieldSection {
                kind: "rational".into(),
                prime: None,
            },
            Field::Prime(p) => FieldSection {
                kind: "prime".into(),
                prime: Some(p as u64),
            },
        };
    }

    pub fn lambda(&self, field: Field) -> Result<Scalar, SpecError> {
        match &self.lambda {
            Some(l) => Ok(field.parse_scalar(&l.value)?),
            None => Ok(field.one()),
        }
    }

    /// Triangulation data over the spec's field, or over `field` if given.
    /// Validation is left to the caller so that violations can be reported.
    pub fn to_data(&self, field: Option<Field>) -> Result<TriangulationData, SpecError> {
        let field = match field {
            Some(f) => f,
            None => self.field()?,
        };
        let lambda = self.lambda(field)?;
        let vertices: Vec<&str> = self.quiver.vertices.iter().map(String::as_str).collect();
        let arrows: Vec<(&str, &str, &str)> = self
            .quiver
            .arrows
            .iter()
            .map(|a| (a.name.as_str(), a.source.as_str(), a.target.as_str()))
            .collect();
        let q = Quiver::new(&vertices, &arrows)?;
        let cycles: Vec<Vec<&str>> = self
            .f
            .cycles
            .iter()
            .map(|c| c.iter().map(String::as_str).collect())
            .collect();
        let mut td = TriangulationData::from_f_cycles(q, &cycles)?;
        td.params = vec![field.one(); td.quiver.num_arrows()];
        let mut keys: Vec<&String> = self.weights.keys().chain(self.params.keys()).collect();
        keys.sort();
        keys.dedup();
        if !keys.is_empty() && td.g_map().is_none() {
            return Err(SpecError::NoG);
        }
        for k in keys {
            let w = self.weights.get(k).copied().unwrap_or(1);
            let p = match self.params.get(k) {
                Some(e) => eval_param(e, field, &lambda)?,
                None => field.one(),
            };
            if p.is_zero() {
                return Err(SpecError::ZeroParameter(k.clone()));
            }
            // weights and params given on different arrows of one cycle are
            // merged: only overwrite what was specified
            let a = td
                .quiver
                .arrow(k)
                .ok_or_else(|| QuiverError::UnknownArrow(k.clone()))?;
            let (old_w, old_p) = (td.weights[a], td.params[a].clone());
            let w = if self.weights.contains_key(k) { w } else { old_w };
            let p = if self.params.contains_key(k) { p } else { old_p };
            td.with_cycle_values(k, w, p)?;
        }
        Ok(td)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = r#"
[field]
kind = "rational"

[quiver]
vertices = ["1", "2", "3"]
arrows = [
    { name = "alpha", source = "1", target = "2" },
    { name = "beta", source = "2", target = "1" },
    { name = "gamma", source = "2", target = "3" },
    { name = "delta", source = "3", target = "2" },
    { name = "eps", source = "1", target = "1" },
    { name = "eps'", source = "3", target = "3" },
]

[f]
cycles = [["alpha", "beta", "eps"], ["gamma", "eps'", "delta"]]

[weights]
eps = 2
"eps'" = 2

[params]
"eps'" = "1/lambda"

[lambda]
value = "2"
"#;

    #[test]
    fn parses_triangle() {
        let spec = AlgebraSpec::parse(TRIANGLE).unwrap();
        let td = spec.to_data(None).unwrap();
        let cls = td.validate().unwrap();
        let e2 = td.quiver.arrow("eps'").unwrap();
        assert_eq!(td.weights[e2], 2);
        assert_eq!(td.params[e2], Field::Rational.from_ratio(1, 2).unwrap());
        assert_eq!(cls.vertex_dimension(&td, 1), 8);
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = TRIANGLE.replace("[lambda]", "[lambda]\nextra = 1");
        assert!(AlgebraSpec::parse(&bad).is_err());
        let bad = TRIANGLE.replace("kind = \"rational\"", "kind = \"rational\"\ncolour = 3");
        assert!(AlgebraSpec::parse(&bad).is_err());
    }

    #[test]
    fn prime_field_override() {
        let spec = AlgebraSpec::parse(TRIANGLE).unwrap();
        let td = spec.to_data(Some(Field::Prime(101))).unwrap();
        assert_eq!(td.params[0].field(), Field::Prime(101));
    }

    #[test]
    fn param_expressions() {
        let f = Field::Rational;
        let l = f.from_i64(3);
        assert_eq!(eval_param("-1/lambda", f, &l).unwrap(), f.from_ratio(-1, 3).unwrap());
        assert_eq!(eval_param("5/2", f, &l).unwrap(), f.from_ratio(5, 2).unwrap());
        assert!(eval_param("mu", f, &l).is_err());
    }
}
