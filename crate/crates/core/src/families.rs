//! The algebra families: triangle `T(λ)`, triangular with weight `k`,
//! spherical `S(λ)`, `n`-spherical and the mixed algebra.
//!
//! Each preset is plain data (an [`AlgebraSpec`]), so that every preset can
//! be exported as a spec file and read back.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::path::{parse_relation, RelationParseError, RelationSet};
use crate::algebra::{AlgebraError, BoundedAlgebra, WeightedSurfaceAlgebra};
use crate::field::{Field, Scalar};
use crate::quiver::Quiver;
use crate::specfile::{AlgebraSpec, SpecError, ArrowSpec, FSection, FieldSection, LambdaSection, QuiverSection};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("unknown preset `{0}`")]
    Unknown(String),
    #[error("bad preset argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Relation(#[from] RelationParseError),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Preset {
    Triangle { lambda: String },
    Triangular { k: u32, lambda: String },
    Spherical { lambda: String },
    NSpherical { n: usize, m: u32, m_prime: u32, lambda: String },
    Mixed { n: usize, m: u32, lambda: String },
}

/// Options a preset name may be combined with on the command line.
#[derive(Debug, Clone, Default)]
pub struct PresetArgs {
    pub lambda: Option<String>,
    pub k: Option<u32>,
    pub n: Option<usize>,
    pub m: Option<u32>,
    pub m_prime: Option<u32>,
}

impl Preset {
    /// Parses `preset:<name>` (the prefix is optional).
    pub fn from_name(name: &str, args: &PresetArgs) -> Result<Preset, FamilyError> {
        let base = name.strip_prefix("preset:").unwrap_or(name);
        let lambda = args.lambda.clone().unwrap_or_else(|| "2".into());
        let positive = |v: u32, what: &str| {
            if v == 0 {
                Err(FamilyError::Argument(format!("{what} must be positive")))
            } else {
                Ok(v)
            }
        };
        Ok(match base {
            "triangle" => Preset::Triangle { lambda },
            "triangular" => {
                let k = positive(args.k.unwrap_or(2), "k")?;
                Preset::Triangular { k, lambda }
            }
            "spherical" => Preset::Spherical { lambda },
            "n-spherical" => {
                let n = args.n.unwrap_or(3);
                if n < 2 {
                    return Err(FamilyError::Argument("n-spherical needs n >= 2".into()));
                }
                Preset::NSpherical {
                    n,
                    m: positive(args.m.unwrap_or(1), "m")?,
                    m_prime: positive(args.m_prime.unwrap_or(1), "m'")?,
                    lambda,
                }
            }
            "mixed" => {
                let n = args.n.unwrap_or(1);
                if n < 1 {
                    return Err(FamilyError::Argument("mixed needs n >= 1".into()));
                }
                Preset::Mixed {
                    n,
                    m: positive(args.m.unwrap_or(1), "m")?,
                    lambda,
                }
            }
            _ => return Err(FamilyError::Unknown(name.to_string())),
        })
    }

    pub fn lambda(&self) -> &str {
        match self {
            Preset::Triangle { lambda }
            | Preset::Triangular { lambda, .. }
            | Preset::Spherical { lambda }
            | Preset::NSpherical { lambda, .. }
            | Preset::Mixed { lambda, .. } => lambda,
        }
    }

    /// Values of λ the family excludes.
    pub fn check_lambda(&self, field: Field) -> Result<Scalar, FamilyError> {
        let l = field
            .parse_scalar(self.lambda())
            .map_err(|e| FamilyError::Argument(e.to_string()))?;
        let forbidden_one = matches!(self, Preset::Triangle { .. } | Preset::Spherical { .. });
        if l.is_zero() || (forbidden_one && l.is_one()) {
            return Err(AlgebraError::LambdaForbidden(self.lambda().to_string()).into());
        }
        Ok(l)
    }

    /// Whether `M` is expected to be 3-cluster tilting.
    pub fn expected_cluster_tilting(&self) -> bool {
        match self {
            Preset::Triangle { .. } | Preset::Spherical { .. } => true,
            Preset::Triangular { k, .. } => *k == 1,
            Preset::NSpherical { n, m, m_prime, .. } => *n == 2 && *m == 1 && *m_prime == 1,
            Preset::Mixed { .. } => false,
        }
    }

    pub fn spec(&self, field: Field) -> AlgebraSpec {
        let mut b = Builder::default();
        match self {
            Preset::Triangle { lambda } => triangle_block(&mut b, 1, lambda),
            Preset::Triangular { k, lambda } => triangle_block(&mut b, *k, lambda),
            Preset::Spherical { lambda } => spherical_block(&mut b, lambda),
            Preset::NSpherical { n, m, m_prime, lambda } => {
                n_spherical_block(&mut b, *n, *m, *m_prime, lambda)
            }
            Preset::Mixed { n, m, lambda } => mixed_block(&mut b, *n, *m, lambda),
        }
        b.lambda = Some(self.lambda().to_string());
        b.finish(field)
    }

    /// Vertex and arrow labels of the cyclic chain `a_1, …, a_n`, for the
    /// families where `Γ = {a_i}` and `eΛe` is generated by `x_i`, `y_i`.
    pub fn chain(&self) -> Option<Chain> {
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        match self {
            Preset::Spherical { .. } => Some(Chain {
                n: 2,
                m: 1,
                m_prime: 1,
                a: names(&["1", "3"]),
                b: names(&["2", "4"]),
                d: names(&["5", "6"]),
                x: names(&["alpha beta", "gamma sigma"]),
                y: names(&["nu delta", "rho omega"]),
            }),
            Preset::NSpherical { n, m, m_prime, .. } => {
                let idx = |p: &str| (1..=*n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
                Some(Chain {
                    n: *n,
                    m: *m,
                    m_prime: *m_prime,
                    a: idx("a"),
                    b: idx("b"),
                    d: idx("d"),
                    x: (1..=*n).map(|i| format!("gamma{i} sigma{i}")).collect(),
                    y: (1..=*n).map(|i| format!("rho{i} delta{i}")).collect(),
                })
            }
            _ => None,
        }
    }

    /// The Gabriel presentation displayed for `T(λ)` and `S(λ)`.
    pub fn gabriel_presentation(&self) -> Option<(Vec<&'static str>, Vec<(&'static str, &'static str, &'static str)>, &'static [&'static str])> {
        match self {
            Preset::Triangle { .. } => Some((
                vec!["1", "2", "3"],
                vec![
                    ("alpha", "1", "2"),
                    ("beta", "2", "1"),
                    ("gamma", "2", "3"),
                    ("delta", "3", "2"),
                ],
                TRIANGLE_RELATIONS,
            )),
            Preset::Spherical { .. } => Some((
                vec!["1", "2", "3", "4", "5", "6"],
                vec![
                    ("alpha", "1", "2"),
                    ("delta", "5", "1"),
                    ("beta", "2", "3"),
                    ("nu", "3", "5"),
                    ("rho", "1", "6"),
                    ("sigma", "4", "1"),
                    ("omega", "6", "3"),
                    ("gamma", "3", "4"),
                ],
                SPHERICAL_RELATIONS,
            )),
            _ => None,
        }
    }

    /// The weighted surface algebra over `field`.
    pub fn build(&self, field: Field) -> Result<WeightedSurfaceAlgebra, FamilyError> {
        self.check_lambda(field)?;
        let td = self.spec(field).to_data(None)?;
        Ok(WeightedSurfaceAlgebra::build(&td)?)
    }

    /// Builds the algebra from its displayed Gabriel presentation.
    pub fn build_gabriel(&self, field: Field) -> Result<Option<BoundedAlgebra>, FamilyError> {
        let Some((vertices, arrows, rels)) = self.gabriel_presentation() else {
            return Ok(None);
        };
        let lambda = self.check_lambda(field)?;
        let q = Quiver::new(&vertices, &arrows).map_err(RelationParseError::from)?;
        let mut set = RelationSet::default();
        for r in rels {
            set.push(*r, parse_relation(&q, field, &lambda, r)?);
        }
        // both displayed algebras have Loewy length at most 8
        Ok(Some(BoundedAlgebra::build(field, q, set, 9)?))
    }

    pub fn id(&self) -> String {
        match self {
            Preset::Triangle { lambda } => format!("triangle(lambda={lambda})"),
            Preset::Triangular { k, lambda } => format!("triangular(k={k}, lambda={lambda})"),
            Preset::Spherical { lambda } => format!("spherical(lambda={lambda})"),
            Preset::NSpherical { n, m, m_prime, lambda } => {
                format!("n-spherical(n={n}, m={m}, m'={m_prime}, c={lambda}, c'=1)")
            }
            Preset::Mixed { n, m, lambda } => format!("mixed(n={n}, m={m}, lambda={lambda})"),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Preset {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::from_name(s, &PresetArgs::default())
    }
}

/// `x_i: a_i → b_i → a_{i+1}` and `y_i: a_{i+1} → d_i → a_i`, indices
/// starting at 0 here and taken modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub n: usize,
    /// Weight of the `x` cycle.
    pub m: u32,
    /// Weight of the `y` cycle.
    pub m_prime: u32,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub d: Vec<String>,
    pub x: Vec<String>,
    pub y: Vec<String>,
}

pub const TRIANGLE_RELATIONS: &[&str] = &[
    "alpha beta alpha = alpha gamma delta",
    "delta beta alpha = lambda delta gamma delta",
    "beta alpha beta = gamma delta beta",
    "beta alpha gamma = lambda gamma delta gamma",
    "alpha beta alpha gamma = 0",
    "beta alpha beta alpha beta = 0",
    "delta gamma delta beta = 0",
    "gamma delta gamma delta gamma = 0",
    "alpha beta alpha beta alpha = 0",
    "delta gamma delta gamma delta = 0",
    "delta beta alpha beta = 0",
];

pub const SPHERICAL_RELATIONS: &[&str] = &[
    "alpha beta nu = rho omega nu",
    "beta nu delta = lambda beta gamma sigma",
    "nu delta alpha = lambda gamma sigma alpha",
    "delta alpha beta = delta rho omega",
    "gamma sigma rho = nu delta rho",
    "sigma rho omega = lambda sigma alpha beta",
    "rho omega gamma = lambda alpha beta gamma",
    "omega gamma sigma = omega nu delta",
    "alpha beta nu delta alpha = 0",
    "beta nu delta rho = 0",
    "nu delta alpha beta nu = 0",
    "delta alpha beta gamma = 0",
    "gamma sigma rho omega gamma = 0",
    "sigma rho omega nu = 0",
    "rho omega gamma sigma rho = 0",
    "omega gamma sigma alpha = 0",
    "beta gamma sigma rho = 0",
    "sigma alpha beta nu = 0",
    "delta rho omega gamma = 0",
    "omega nu delta alpha = 0",
    "beta nu delta alpha beta = 0",
    "delta alpha beta nu delta = 0",
    "sigma rho omega gamma sigma = 0",
    "omega gamma sigma rho omega = 0",
];

#[derive(Default)]
struct Builder {
    vertices: Vec<String>,
    arrows: Vec<ArrowSpec>,
    f: Vec<Vec<String>>,
    weights: BTreeMap<String, u32>,
    params: BTreeMap<String, String>,
    lambda: Option<String>,
}

impl Builder {
    fn vertex(&mut self, v: &str) {
        if !self.vertices.iter().any(|x| x == v) {
            self.vertices.push(v.to_string());
        }
    }

    fn arrow(&mut self, name: &str, s: &str, t: &str) {
        self.vertex(s);
        self.vertex(t);
        self.arrows.push(ArrowSpec {
            name: name.into(),
            source: s.into(),
            target: t.into(),
        });
    }

    fn triangle(&mut self, cycle: [&str; 3]) {
        self.f.push(cycle.iter().map(|s| s.to_string()).collect());
    }

    fn cycle(&mut self, arrow: &str, weight: u32, param: &str) {
        if weight != 1 {
            self.weights.insert(arrow.into(), weight);
        }
        if param != "1" {
            self.params.insert(arrow.into(), param.into());
        }
    }

    fn finish(self, field: Field) -> AlgebraSpec {
        let mut spec = AlgebraSpec {
            field: FieldSection {
                kind: "rational".into(),
                prime: None,
            },
            quiver: QuiverSection {
                vertices: self.vertices,
                arrows: self.arrows,
            },
            f: FSection { cycles: self.f },
            weights: self.weights,
            params: self.params,
            lambda: self.lambda.map(|value| LambdaSection { value }),
        };
        spec.set_field(field);
        spec
    }
}

/// `1 ⇄ 2 ⇄ 3` with virtual loops; `c = 1` on the 4-cycle and on `ε`,
/// `c = λ⁻¹` on `ε'`.
fn triangle_block(b: &mut Builder, k: u32, _lambda: &str) {
    for v in ["1", "2", "3"] {
        b.vertex(v);
    }
    b.arrow("alpha", "1", "2");
    b.arrow("beta", "2", "1");
    b.arrow("gamma", "2", "3");
    b.arrow("delta", "3", "2");
    b.arrow("eps", "1", "1");
    b.arrow("eps'", "3", "3");
    b.triangle(["alpha", "beta", "eps"]);
    b.triangle(["gamma", "eps'", "delta"]);
    b.cycle("alpha", k, "1");
    b.cycle("eps", 2, "1");
    b.cycle("eps'", 2, "1/lambda");
}

/// `c = λ` on `(α β γ σ)`, 1 elsewhere.
fn spherical_block(b: &mut Builder, _lambda: &str) {
    for v in ["1", "2", "3", "4", "5", "6"] {
        b.vertex(v);
    }
    b.arrow("alpha", "1", "2");
    b.arrow("xi", "2", "5");
    b.arrow("delta", "5", "1");
    b.arrow("eta", "5", "2");
    b.arrow("beta", "2", "3");
    b.arrow("nu", "3", "5");
    b.arrow("rho", "1", "6");
    b.arrow("eps", "6", "4");
    b.arrow("sigma", "4", "1");
    b.arrow("mu", "4", "6");
    b.arrow("omega", "6", "3");
    b.arrow("gamma", "3", "4");
    b.triangle(["alpha", "xi", "delta"]);
    b.triangle(["eta", "beta", "nu"]);
    b.triangle(["rho", "eps", "sigma"]);
    b.triangle(["mu", "omega", "gamma"]);
    b.cycle("alpha", 1, "lambda");
    b.cycle("delta", 1, "1");
    b.cycle("xi", 1, "1");
    b.cycle("eps", 1, "1");
}

/// Block `i` of the chain: `γ_i: a_i → b_i`, `σ_i: b_i → a_{i+1}`,
/// `ρ_i: a_{i+1} → d_i`, `δ_i: d_i → a_i` with the virtual 2-cycle
/// `ξ_i: b_i → d_i`, `η_i: d_i → b_i`.
fn chain_block(b: &mut Builder, i: usize, next: &str) {
    let a = format!("a{i}");
    let bv = format!("b{i}");
    let d = format!("d{i}");
    b.arrow(&format!("gamma{i}"), &a, &bv);
    b.arrow(&format!("sigma{i}"), &bv, next);
    b.arrow(&format!("rho{i}"), next, &d);
    b.arrow(&format!("delta{i}"), &d, &a);
    b.arrow(&format!("xi{i}"), &bv, &d);
    b.arrow(&format!("eta{i}"), &d, &bv);
    b.f.push(vec![format!("xi{i}"), format!("delta{i}"), format!("gamma{i}")]);
    b.f.push(vec![format!("eta{i}"), format!("sigma{i}"), format!("rho{i}")]);
    b.cycle(&format!("xi{i}"), 1, "1");
}

fn chain_vertices(b: &mut Builder, n: usize, count_a: usize) {
    for i in 1..=count_a {
        b.vertex(&format!("a{i}"));
    }
    for i in 1..=n {
        b.vertex(&format!("b{i}"));
    }
    for i in 1..=n {
        b.vertex(&format!("d{i}"));
    }
}

/// Parameters `c = λ` on the γσ-cycle and `c' = 1` on the ρδ-cycle.
fn n_spherical_block(b: &mut Builder, n: usize, m: u32, m_prime: u32, _lambda: &str) {
    chain_vertices(b, n, n);
    for i in 1..=n {
        let next = if i == n { "a1".to_string() } else { format!("a{}", i + 1) };
        chain_block(b, i, &next);
    }
    b.cycle("gamma1", m, "lambda");
    b.cycle("rho1", m_prime, "1");
}

/// The chain `a_1, …, a_{n+1}` glued to the two halves of the triangle
/// block at `a_1` and `a_{n+1}`.
fn mixed_block(b: &mut Builder, n: usize, m: u32, _lambda: &str) {
    b.vertex("1");
    chain_vertices(b, n, n + 1);
    b.vertex("3");
    for i in 1..=n {
        chain_block(b, i, &format!("a{}", i + 1));
    }
    let last = format!("a{}", n + 1);
    b.arrow("alpha", "1", "a1");
    b.arrow("beta", "a1", "1");
    b.arrow("eps", "1", "1");
    b.arrow("gamma", &last, "3");
    b.arrow("delta", "3", &last);
    b.arrow("eps'", "3", "3");
    b.triangle(["alpha", "beta", "eps"]);
    b.triangle(["gamma", "eps'", "delta"]);
    b.cycle("gamma1", m, "lambda");
    b.cycle("eps", 2, "1");
    b.cycle("eps'", 2, "1");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_names() {
        let args = PresetArgs {
            n: Some(4),
            ..Default::default()
        };
        assert_eq!(
            Preset::from_name("preset:n-spherical", &args).unwrap(),
            Preset::NSpherical {
                n: 4,
                m: 1,
                m_prime: 1,
                lambda: "2".into()
            }
        );
        assert!(Preset::from_name("preset:torus", &args).is_err());
        let bad = PresetArgs {
            n: Some(1),
            ..Default::default()
        };
        assert!(Preset::from_name("n-spherical", &bad).is_err());
    }

    #[test]
    fn lambda_forbidden() {
        let p = Preset::Triangle { lambda: "1".into() };
        assert!(matches!(
            p.check_lambda(Field::Rational),
            Err(FamilyError::Algebra(AlgebraError::LambdaForbidden(_)))
        ));
        let p = Preset::Triangular { k: 2, lambda: "1".into() };
        assert!(p.check_lambda(Field::Rational).is_ok());
    }
}
