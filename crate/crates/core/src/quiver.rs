//! Quivers and triangulation data `(Q, f)` with weights and parameters.
//!
//! `f` is supplied; `g(α) = \overline{f(α)}`, the g-cycles, `n_α`, the virtual
//! arrows and the Gabriel quiver are all derived here.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::Scalar;

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
}

impl Quiver {
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver, QuiverError> {
        let mut q = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
        };
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (name, s, t) in arrows {
            q.add_arrow(name, s, t)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, QuiverError> {
        if self.vertex(name).is_some() {
            return Err(QuiverError::Duplicate(name.to_string()));
        }
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, s: &str, t: &str) -> Result<ArrowId, QuiverError> {
        if self.arrow(name).is_some() {
            return Err(QuiverError::Duplicate(name.to_string()));
        }
        let source = self.vertex(s).ok_or_else(|| QuiverError::UnknownVertex(s.into()))?;
        let target = self.vertex(t).ok_or_else(|| QuiverError::UnknownVertex(t.into()))?;
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a].target
    }

    /// Parses a whitespace- or `.`-separated arrow word.
    pub fn parse_word(&self, s: &str) -> Result<Vec<ArrowId>, QuiverError> {
        s.split(|c: char| c.is_whitespace() || c == '.' || c == '*')
            .filter(|t| !t.is_empty())
            .map(|t| self.arrow(t).ok_or_else(|| QuiverError::UnknownArrow(t.into())))
            .collect()
    }

    pub fn word_name(&self, word: &[ArrowId]) -> String {
        word.iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Whether the underlying graph (ignoring loops) is bipartite.
    pub fn is_bipartite(&self) -> bool {
        let n = self.num_vertices();
        let mut colour = vec![None; n];
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let c = colour[v].unwrap();
                for a in &self.arrows {
                    let w = if a.source == v {
                        a.target
                    } else if a.target == v {
                        a.source
                    } else {
                        continue;
                    };
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

/// A triangulation quiver with weights `m` and parameters `c`, both stored
/// per arrow and required to be constant on g-cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangulationData {
    pub quiver: Quiver,
    /// `f` as a permutation of arrow ids.
    pub f: Vec<ArrowId>,
    pub weights: Vec<u32>,
    pub params: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Not2Regular { vertex: String, outgoing: usize, incoming: usize },
    FNotTriangulation(String),
    WeightNotCycleConstant { arrow: String, other: String },
    AdmissibilityViolated { arrow: String, mn: u32, required: u32 },
    TooFewVertices(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Not2Regular { vertex, outgoing, incoming } => write!(
                f,
                "Not2Regular: vertex {vertex} has {outgoing} outgoing and {incoming} incoming arrows"
            ),
            Violation::FNotTriangulation(msg) => write!(f, "FNotTriangulation: {msg}"),
            Violation::WeightNotCycleConstant { arrow, other } => write!(
                f,
                "WeightNotCycleConstant: {arrow} and {other} share a g-cycle but differ in weight or parameter"
            ),
            Violation::AdmissibilityViolated { arrow, mn, required } => write!(
                f,
                "AdmissibilityViolated: m·n = {mn} at {arrow}, need at least {required}"
            ),
            Violation::TooFewVertices(n) => write!(f, "TooFewVertices: {n} (need at least 3)"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid triangulation data: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ValidationError(pub Vec<Violation>);

/// Everything derived from valid triangulation data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrowClassification {
    /// `ᾱ`: the other arrow with the same source.
    pub bar: Vec<ArrowId>,
    pub g: Vec<ArrowId>,
    /// g-cycles as arrow sequences starting at their smallest arrow id.
    pub g_cycles: Vec<Vec<ArrowId>>,
    pub f_cycles: Vec<Vec<ArrowId>>,
    pub g_cycle_of: Vec<usize>,
    pub f_cycle_of: Vec<usize>,
    /// `n_α`: length of the g-cycle of α.
    pub n: Vec<u32>,
    pub m: Vec<u32>,
    pub mn: Vec<u32>,
    pub is_virtual: Vec<bool>,
}

fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut a = start;
        while !seen[a] {
            seen[a] = true;
            cyc.push(a);
            a = perm[a];
        }
        out.push(cyc);
    }
    out
}

impl TriangulationData {
    /// Builds data from f given as cycles of arrow names; weights and
    /// parameters are given per arrow name and spread over g-cycles by
    /// [`TriangulationData::with_cycle_values`].
    pub fn from_f_cycles(quiver: Quiver, f_cycles: &[Vec<&str>]) -> Result<Self, QuiverError> {
        let na = quiver.num_arrows();
        let mut f: Vec<Option<ArrowId>> = vec![None; na];
        for cyc in f_cycles {
            let ids: Vec<ArrowId> = cyc
                .iter()
                .map(|n| quiver.arrow(n).ok_or_else(|| QuiverError::UnknownArrow(n.to_string())))
                .collect::<Result<_, _>>()?;
            for (i, &a) in ids.iter().enumerate() {
                if f[a].is_some() {
                    return Err(QuiverError::Duplicate(quiver.arrows[a].name.clone()));
                }
                f[a] = Some(ids[(i + 1) % ids.len()]);
            }
        }
        // arrows not mentioned are fixed points; validation reports them
        let f = f.iter().enumerate().map(|(a, x)| x.unwrap_or(a)).collect();
        let field = crate::field::Field::Rational;
        Ok(TriangulationData {
            weights: vec![1; na],
            params: vec![field.one(); na],
            quiver,
            f,
        })
    }

    /// The involution `ᾱ`, if the quiver has exactly two arrows out of
    /// each vertex.
    fn bar_map(&self) -> Option<Vec<ArrowId>> {
        let q = &self.quiver;
        (0..q.num_arrows())
            .map(|a| {
                let out: Vec<_> = q.arrows_from(q.source(a)).collect();
                if out.len() != 2 {
                    return None;
                }
                Some(if out[0] == a { out[1] } else { out[0] })
            })
            .collect()
    }

    /// `g = bar ∘ f`, if `f` is a permutation and the quiver 2-regular.
    pub fn g_map(&self) -> Option<Vec<ArrowId>> {
        let bar = self.bar_map()?;
        Some(self.f.iter().map(|&fa| bar[fa]).collect())
    }

    /// Assigns `weight` and `param` to the whole g-cycle through `arrow`.
    /// Requires `g` to be computable (2-regular quiver).
    pub fn with_cycle_values(&mut self, arrow: &str, weight: u32, param: Scalar) -> Result<(), QuiverError> {
        let a = self
            .quiver
            .arrow(arrow)
            .ok_or_else(|| QuiverError::UnknownArrow(arrow.to_string()))?;
        let g = self.g_map().ok_or_else(|| QuiverError::UnknownArrow(arrow.to_string()))?;
        let mut b = a;
        loop {
            self.weights[b] = weight;
            self.params[b] = param.clone();
            b = g[b];
            if b == a {
                break;
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<ArrowClassification, ValidationError> {
        let q = &self.quiver;
        let na = q.num_arrows();
        let mut violations = Vec::new();
        if q.num_vertices() < 3 {
            violations.push(Violation::TooFewVertices(q.num_vertices()));
        }
        for v in 0..q.num_vertices() {
            let out = q.arrows_from(v).count();
            let inc = q.arrows_into(v).count();
            if out != 2 || inc != 2 {
                violations.push(Violation::Not2Regular {
                    vertex: q.vertices[v].clone(),
                    outgoing: out,
                    incoming: inc,
                });
            }
        }
        if !violations.is_empty() {
            return Err(ValidationError(violations));
        }
        if self.f.len() != na || self.weights.len() != na || self.params.len() != na {
            return Err(ValidationError(vec![Violation::FNotTriangulation(
                "f, weights and parameters must cover every arrow".into(),
            )]));
        }
        let is_perm = {
            let set: BTreeSet<_> = self.f.iter().copied().collect();
            set.len() == na && self.f.iter().all(|&x| x < na)
        };
        if !is_perm {
            return Err(ValidationError(vec![Violation::FNotTriangulation(
                "f is not a permutation of the arrows".into(),
            )]));
        }
        for a in 0..na {
            if q.target(a) != q.source(self.f[a]) {
                violations.push(Violation::FNotTriangulation(format!(
                    "t({}) != s(f({}))",
                    q.arrows[a].name, q.arrows[a].name
                )));
            }
            if self.f[self.f[self.f[a]]] != a {
                violations.push(Violation::FNotTriangulation(format!(
                    "f^3({}) != {}",
                    q.arrows[a].name, q.arrows[a].name
                )));
            }
        }
        let bar = self.bar_map().expect("2-regular");
        let g: Vec<ArrowId> = self.f.iter().map(|&fa| bar[fa]).collect();
        let g_cycles = cycles_of(&g);
        let f_cycles = cycles_of(&self.f);
        let mut g_cycle_of = vec![0; na];
        for (i, c) in g_cycles.iter().enumerate() {
            for &a in c {
                g_cycle_of[a] = i;
            }
        }
        let mut f_cycle_of = vec![0; na];
        for (i, c) in f_cycles.iter().enumerate() {
            for &a in c {
                f_cycle_of[a] = i;
            }
        }
        for c in &g_cycles {
            for &a in c {
                if self.weights[a] != self.weights[c[0]] || self.params[a] != self.params[c[0]] {
                    violations.push(Violation::WeightNotCycleConstant {
                        arrow: q.arrows[a].name.clone(),
                        other: q.arrows[c[0]].name.clone(),
                    });
                }
                if self.params[a].is_zero() {
                    violations.push(Violation::FNotTriangulation(format!(
                        "parameter at {} is zero",
                        q.arrows[a].name
                    )));
                }
            }
        }
        let n: Vec<u32> = (0..na).map(|a| g_cycles[g_cycle_of[a]].len() as u32).collect();
        let m = self.weights.clone();
        let mn: Vec<u32> = (0..na).map(|a| m[a] * n[a]).collect();
        let is_virtual: Vec<bool> = mn.iter().map(|&x| x == 2).collect();
        for a in 0..na {
            let b = bar[a];
            let required = if is_virtual[b] {
                if q.source(b) == q.target(b) {
                    4
                } else {
                    3
                }
            } else {
                2
            };
            if mn[a] < required {
                violations.push(Violation::AdmissibilityViolated {
                    arrow: q.arrows[a].name.clone(),
                    mn: mn[a],
                    required,
                });
            }
        }
        if !violations.is_empty() {
            return Err(ValidationError(violations));
        }
        Ok(ArrowClassification {
            bar,
            g,
            g_cycles,
            f_cycles,
            g_cycle_of,
            f_cycle_of,
            n,
            m,
            mn,
            is_virtual,
        })
    }
}

impl ArrowClassification {
    /// The quiver with all virtual arrows removed; arrow ids are renumbered
    /// but names are kept.
    pub fn gabriel_quiver(&self, td: &TriangulationData) -> Quiver {
        let q = &td.quiver;
        Quiver {
            vertices: q.vertices.clone(),
            arrows: (0..q.num_arrows())
                .filter(|&a| !self.is_virtual[a])
                .map(|a| q.arrows[a].clone())
                .collect(),
        }
    }

    /// Vertices that are neither source nor target of a virtual arrow.
    pub fn gamma_vertices(&self, td: &TriangulationData) -> Vec<VertexId> {
        let q = &td.quiver;
        (0..q.num_vertices())
            .filter(|&v| {
                !(0..q.num_arrows())
                    .any(|a| self.is_virtual[a] && (q.source(a) == v || q.target(a) == v))
            })
            .collect()
    }

    /// `(B_α, A_α, A'_α)` as arrow words, with `A_α = α·A'_α`.
    pub fn paths_b_a(&self, alpha: ArrowId) -> (Vec<ArrowId>, Vec<ArrowId>, Vec<ArrowId>) {
        let len = self.mn[alpha] as usize;
        let mut b = Vec::with_capacity(len);
        let mut a = alpha;
        for _ in 0..len {
            b.push(a);
            a = self.g[a];
        }
        let a_path = b[..len - 1].to_vec();
        let a_prime = b[1..len - 1].to_vec();
        (b, a_path, a_prime)
    }

    /// Every f-triangle contains a virtual arrow.
    pub fn every_triangle_has_virtual(&self) -> bool {
        self.f_cycles
            .iter()
            .all(|c| c.iter().any(|&a| self.is_virtual[a]))
    }

    /// `m_α n_α + m_ᾱ n_ᾱ` for the two arrows starting at `v`.
    pub fn vertex_dimension(&self, td: &TriangulationData, v: VertexId) -> usize {
        td.quiver.arrows_from(v).map(|a| self.mn[a] as usize).sum()
    }

    pub fn cycle_string(&self, td: &TriangulationData, cycles: &[Vec<ArrowId>]) -> String {
        cycles
            .iter()
            .map(|c| format!("({})", td.quiver.word_name(c)))
            .collect::<Vec<_>>()
            .join("")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn triangle() -> TriangulationData {
        let q = Quiver::new(
            &["1", "2", "3"],
            &[
                ("alpha", "1", "2"),
                ("beta", "2", "1"),
                ("gamma", "2", "3"),
                ("delta", "3", "2"),
                ("eps", "1", "1"),
                ("eps'", "3", "3"),
            ],
        )
        .unwrap();
        let mut td = TriangulationData::from_f_cycles(
            q,
            &[vec!["alpha", "beta", "eps"], vec!["gamma", "eps'", "delta"]],
        )
        .unwrap();
        let one = Field::Rational.one();
        td.with_cycle_values("alpha", 1, one.clone()).unwrap();
        td.with_cycle_values("eps", 2, one.clone()).unwrap();
        td.with_cycle_values("eps'", 2, one).unwrap();
        td
    }

    #[test]
    fn triangle_g_cycles() {
        let td = triangle();
        let cl = td.validate().unwrap();
        let mut cyc = cl.cycle_string(&td, &cl.g_cycles);
        assert_eq!(cyc, "(alpha gamma delta beta)(eps)(eps')");
        cyc = cl.cycle_string(&td, &cl.f_cycles);
        assert_eq!(cyc, "(alpha beta eps)(gamma eps' delta)");
        assert!(cl.every_triangle_has_virtual());
        assert_eq!(cl.gamma_vertices(&td), vec![1]);
        let gq = cl.gabriel_quiver(&td);
        let names: Vec<_> = gq.arrows.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["alpha", "beta", "gamma", "delta"]);
        assert!(gq.is_bipartite());
        let dims: Vec<_> = (0..3).map(|v| cl.vertex_dimension(&td, v)).collect();
        assert_eq!(dims, [6, 8, 6]);
    }

    #[test]
    fn b_and_a_paths() {
        let td = triangle();
        let cl = td.validate().unwrap();
        let q = &td.quiver;
        let alpha = q.arrow("alpha").unwrap();
        let (b, a, ap) = cl.paths_b_a(alpha);
        assert_eq!(q.word_name(&b), "alpha gamma delta beta");
        assert_eq!(q.word_name(&a), "alpha gamma delta");
        assert_eq!(q.word_name(&ap), "gamma delta");
        let eps = q.arrow("eps").unwrap();
        let (b, a, ap) = cl.paths_b_a(eps);
        assert_eq!(q.word_name(&b), "eps eps");
        assert_eq!(q.word_name(&a), "eps");
        assert!(ap.is_empty());
        assert!(cl.is_virtual[eps]);
    }

    #[test]
    fn out_degree_one_is_not_2_regular() {
        let q = Quiver::new(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
        )
        .unwrap();
        let td = TriangulationData::from_f_cycles(q, &[vec!["a", "b", "c"]]).unwrap();
        let err = td.validate().unwrap_err();
        assert!(err.0.iter().all(|v| matches!(v, Violation::Not2Regular { .. })));
        assert_eq!(err.0.len(), 3);
    }

    #[test]
    fn bad_f_and_weights_are_reported() {
        let mut td = triangle();
        td.f.swap(0, 1);
        assert!(td
            .validate()
            .unwrap_err()
            .0
            .iter()
            .any(|v| matches!(v, Violation::FNotTriangulation(_))));

        let mut td = triangle();
        let beta = td.quiver.arrow("beta").unwrap();
        td.weights[beta] = 3;
        assert!(td
            .validate()
            .unwrap_err()
            .0
            .iter()
            .any(|v| matches!(v, Violation::WeightNotCycleConstant { .. })));

        // a loop with m = 1 gives m·n = 1
        let mut td = triangle();
        td.with_cycle_values("eps", 1, Field::Rational.one()).unwrap();
        assert!(td
            .validate()
            .unwrap_err()
            .0
            .iter()
            .any(|v| matches!(v, Violation::AdmissibilityViolated { .. })));
    }
}
