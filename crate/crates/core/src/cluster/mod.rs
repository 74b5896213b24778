//! The module `M = Λ ⊕ (⊕_{i∈Γ} S_i) ⊕ (⊕_{ν∉Γ} Ω²S_ν)`, its Ext tables, the
//! uniserial candidates with top and socle over `Γ`, and the verdict on
//! whether `M` is 3-cluster tilting.

mod audit;
mod render;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::BoundedAlgebra;
use crate::modules::{
    composition_word, ext1_witness, is_isomorphic, omega_power, subquotients_of_uniserial, Extension, ExtError,
    ExtSource, IsoOptions, ModuleError, Representation,
};
use crate::parallel::{self, Exec};
use crate::quiver::VertexId;

pub use audit::{
    audit, AuditOptions, AuditReport, ChainAudit, ELambdaEAudit, ExtPairCheck, ExtSymmetryAudit, HomAudit,
    PeriodCheck, ShapeCheck,
};
pub use render::render_text;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ClusterError {
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("Ω²(S_{0}) is not uniserial")]
    UNotUniserial(String),
    #[error("verdict depends on λ: {0}")]
    LambdaDependence(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SummandKind {
    Projective,
    Simple,
    SecondSyzygy,
}

#[derive(Debug, Clone)]
pub struct Summand {
    pub kind: SummandKind,
    pub vertex: VertexId,
    pub module: Representation,
}

#[derive(Debug, Clone)]
pub struct CandidateModuleM {
    pub gamma: Vec<VertexId>,
    pub summands: Vec<Summand>,
}

impl CandidateModuleM {
    pub fn modules(&self) -> Vec<Representation> {
        self.summands.iter().map(|s| s.module.clone()).collect()
    }

    pub fn algebra(&self) -> &Arc<BoundedAlgebra> {
        self.summands[0].module.algebra()
    }
}

/// All `P_v`, then `S_i` for `i ∈ Γ`, then `Ω²S_ν` for `ν ∉ Γ`.
pub fn build_m(alg: &Arc<BoundedAlgebra>, gamma: &[VertexId]) -> CandidateModuleM {
    let q = alg.quiver();
    let mut summands = Vec::new();
    for v in 0..q.num_vertices() {
        summands.push(Summand {
            kind: SummandKind::Projective,
            vertex: v,
            module: Representation::projective(alg, v).with_label(format!("P({})", q.vertices[v])),
        });
    }
    for &v in gamma {
        summands.push(Summand {
            kind: SummandKind::Simple,
            vertex: v,
            module: Representation::simple(alg, v).with_label(format!("S({})", q.vertices[v])),
        });
    }
    for v in (0..q.num_vertices()).filter(|v| !gamma.contains(v)) {
        let module = omega_power(&Representation::simple(alg, v), 2)
            .with_label(format!("Omega^2(S({}))", q.vertices[v]));
        summands.push(Summand {
            kind: SummandKind::SecondSyzygy,
            vertex: v,
            module,
        });
    }
    CandidateModuleM {
        gamma: gamma.to_vec(),
        summands,
    }
}

/// `dim Ext¹(rows[i], cols[j])` and `dim Ext²(rows[i], cols[j])`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtTables {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub ext1: Vec<Vec<usize>>,
    pub ext2: Vec<Vec<usize>>,
}

impl ExtTables {
    pub fn is_zero(&self) -> bool {
        self.ext1.iter().chain(&self.ext2).flatten().all(|&d| d == 0)
    }

    /// Nonzero cells as `(row, col, degree, dim)`.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for (deg, t) in [(1, &self.ext1), (2, &self.ext2)] {
            for (i, row) in t.iter().enumerate() {
                for (j, &d) in row.iter().enumerate() {
                    if d != 0 {
                        out.push((i, j, deg, d));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// `Ext²(X, Y) = Ext¹(Y, X)` for a square table over one list.
    pub fn is_symmetric(&self) -> bool {
        let n = self.ext1.len();
        (0..n).all(|i| (0..n).all(|j| self.ext2[i][j] == self.ext1[j][i]))
    }
}

/// Every cell is an independent job; each computes Ext¹ and Ext² by both
/// methods and fails on disagreement.
pub fn ext_tables(rows: &[Representation], cols: &[Representation], exec: Exec) -> Result<ExtTables, ExtError> {
    let sources = parallel::map(exec, rows, |m| ExtSource::new(m, 2));
    let cells: Vec<(usize, usize)> = (0..rows.len())
        .flat_map(|i| (0..cols.len()).map(move |j| (i, j)))
        .collect();
    let values = parallel::map(exec, &cells, |&(i, j)| -> Result<(usize, usize), ExtError> {
        Ok((sources[i].ext(&cols[j], 1)?, sources[i].ext(&cols[j], 2)?))
    });
    let mut ext1 = vec![vec![0; cols.len()]; rows.len()];
    let mut ext2 = ext1.clone();
    for (&(i, j), v) in cells.iter().zip(values) {
        let (a, b) = v?;
        ext1[i][j] = a;
        ext2[i][j] = b;
    }
    Ok(ExtTables {
        rows: rows.iter().map(|m| m.label().to_string()).collect(),
        cols: cols.iter().map(|m| m.label().to_string()).collect(),
        ext1,
        ext2,
    })
}

#[derive(Debug, Clone)]
pub struct Candidate {
    pub module: Representation,
    pub word: Vec<VertexId>,
    /// Where each copy was found, e.g. `Omega^2(S(1))[0..3]`.
    pub sources: Vec<String>,
    /// Index of an isomorphic summand of `M`.
    pub in_m: Option<usize>,
}

impl Candidate {
    pub fn multiplicity(&self) -> usize {
        self.sources.len()
    }
}

/// Uniserial with top and socle over `Γ`.
pub fn satisfies_star(word: &[VertexId], gamma: &[VertexId]) -> bool {
    match (word.first(), word.last()) {
        (Some(t), Some(s)) => gamma.contains(t) && gamma.contains(s),
        _ => false,
    }
}

/// Subquotients `rad^s U_ν / rad^t U_ν` of each `U_ν = Ω²S_ν` whose top and
/// socle lie over `Γ`, up to isomorphism, in order of first appearance.
pub fn enumerate_star_candidates(m: &CandidateModuleM, iso: IsoOptions) -> Result<Vec<Candidate>, ClusterError> {
    let mut out: Vec<Candidate> = Vec::new();
    for s in m.summands.iter().filter(|s| s.kind == SummandKind::SecondSyzygy) {
        if composition_word(&s.module).is_none() {
            let q = s.module.algebra().quiver();
            return Err(ClusterError::UNotUniserial(q.vertices[s.vertex].clone()));
        }
        for sq in subquotients_of_uniserial(&s.module)? {
            if !satisfies_star(&sq.word, &m.gamma) {
                continue;
            }
            let source = format!("{}[{}..{}]", s.module.label(), sq.s, sq.t);
            let known = out.iter_mut().find(|c| {
                c.word == sq.word && c.module.dims() == sq.module.dims() && is_isomorphic(&c.module, &sq.module, iso)
            });
            match known {
                Some(c) => c.sources.push(source),
                None => out.push(Candidate {
                    module: sq.module,
                    word: sq.word,
                    sources: vec![source],
                    in_m: None,
                }),
            }
        }
    }
    for c in &mut out {
        c.in_m = m
            .summands
            .iter()
            .position(|s| s.module.dims() == c.module.dims() && is_isomorphic(&s.module, &c.module, iso));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ThreeClusterTilting,
    FailsWithWitness,
    /// Some candidate lies outside `add(M)` but no self-extension was found
    /// among the extra candidates.
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::ThreeClusterTilting => "three-cluster-tilting",
            Verdict::FailsWithWitness => "fails-with-witness",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// A non-split `0 → right → E → left → 0`.
#[derive(Debug, Clone)]
pub struct Witness {
    pub left: Representation,
    pub right: Representation,
    pub ext1: usize,
    pub extension: Extension,
}

#[derive(Debug, Clone)]
pub struct ClusterOptions {
    pub exec: Exec,
    pub iso: IsoOptions,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        ClusterOptions {
            exec: Exec::Sequential,
            iso: IsoOptions::default(),
        }
    }
}

/// Everything computed for one algebra.
#[derive(Debug, Clone)]
pub struct ClusterAnalysis {
    pub m: CandidateModuleM,
    /// Over the summands of `M`.
    pub tables: ExtTables,
    pub candidates: Vec<Candidate>,
    /// `Ext^i(M, X)` for every summand and candidate.
    pub orthogonality: ExtTables,
    /// Ext among the candidates outside `add(M)`.
    pub extra: ExtTables,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl ClusterAnalysis {
    pub fn extra_candidates(&self) -> Vec<&Candidate> {
        self.candidates.iter().filter(|c| c.in_m.is_none()).collect()
    }
}

pub fn analyze(alg: &Arc<BoundedAlgebra>, gamma: &[VertexId], opts: &ClusterOptions) -> Result<ClusterAnalysis, ClusterError> {
    let m = build_m(alg, gamma);
    let summands = m.modules();
    let tables = ext_tables(&summands, &summands, opts.exec)?;
    let candidates = enumerate_star_candidates(&m, opts.iso)?;
    let cand_modules: Vec<Representation> = candidates.iter().map(|c| c.module.clone()).collect();
    let orthogonality = ext_tables(&summands, &cand_modules, opts.exec)?;
    let extra_modules: Vec<Representation> = candidates
        .iter()
        .filter(|c| c.in_m.is_none())
        .map(|c| c.module.clone())
        .collect();
    let extra = ext_tables(&extra_modules, &extra_modules, opts.exec)?;

    let (verdict, witness) = if extra_modules.is_empty() && tables.is_zero() {
        (Verdict::ThreeClusterTilting, None)
    } else {
        // a self-extension of M itself, otherwise the first pair of extra
        // candidates with Ext¹ ≠ 0
        let pair = tables
            .nonzero()
            .into_iter()
            .find(|c| c.2 == 1)
            .map(|(i, j, _, d)| (&summands[i], &summands[j], d))
            .or_else(|| {
                extra
                    .nonzero()
                    .into_iter()
                    .find(|c| c.2 == 1)
                    .map(|(i, j, _, d)| (&extra_modules[i], &extra_modules[j], d))
            });
        match pair {
            Some((x, y, d)) => {
                let extension = ext1_witness(x, y).expect("Ext¹ is nonzero");
                (
                    Verdict::FailsWithWitness,
                    Some(Witness {
                        left: x.clone(),
                        right: y.clone(),
                        ext1: d,
                        extension,
                    }),
                )
            }
            None => (Verdict::Inconclusive, None),
        }
    };
    Ok(ClusterAnalysis {
        m,
        tables,
        candidates,
        orthogonality,
        extra,
        verdict,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandInfo {
    pub label: String,
    pub kind: SummandKind,
    pub dims: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateInfo {
    pub label: String,
    pub word: Vec<String>,
    pub dims: Vec<usize>,
    pub multiplicity: usize,
    pub sources: Vec<String>,
    pub in_add_m: bool,
    pub matches: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessInfo {
    pub left: String,
    pub right: String,
    pub ext1: usize,
    pub middle_dims: Vec<usize>,
    pub middle_uniserial: bool,
    pub non_split: bool,
}

/// The serialized verdict for one algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterReport {
    pub schema_version: u32,
    pub algebra: String,
    pub field: String,
    pub lambda: Option<String>,
    pub vertices: Vec<String>,
    pub gamma: Vec<String>,
    pub summands: Vec<SummandInfo>,
    pub ext_tables: ExtTables,
    pub ext_symmetric: bool,
    pub candidates: Vec<CandidateInfo>,
    pub orthogonality: ExtTables,
    pub verdict: Verdict,
    pub expected: Option<Verdict>,
    pub witness: Option<WitnessInfo>,
    pub audit: Option<AuditReport>,
}

impl ClusterReport {
    pub fn new(id: &str, lambda: Option<String>, analysis: &ClusterAnalysis) -> Self {
        let alg = analysis.m.algebra();
        let q = alg.quiver();
        let name = |v: &VertexId| q.vertices[*v].clone();
        ClusterReport {
            schema_version: SCHEMA_VERSION,
            algebra: id.to_string(),
            field: alg.field().to_string(),
            lambda,
            vertices: q.vertices.clone(),
            gamma: analysis.m.gamma.iter().map(name).collect(),
            summands: analysis
                .m
                .summands
                .iter()
                .map(|s| SummandInfo {
                    label: s.module.label().to_string(),
                    kind: s.kind,
                    dims: s.module.dims().to_vec(),
                })
                .collect(),
            ext_tables: analysis.tables.clone(),
            ext_symmetric: analysis.tables.is_symmetric(),
            candidates: analysis
                .candidates
                .iter()
                .map(|c| CandidateInfo {
                    label: c.module.label().to_string(),
                    word: c.word.iter().map(name).collect(),
                    dims: c.module.dims().to_vec(),
                    multiplicity: c.multiplicity(),
                    sources: c.sources.clone(),
                    in_add_m: c.in_m.is_some(),
                    matches: c.in_m.map(|i| analysis.m.summands[i].module.label().to_string()),
                })
                .collect(),
            orthogonality: analysis.orthogonality.clone(),
            verdict: analysis.verdict,
            expected: None,
            witness: analysis.witness.as_ref().map(|w| WitnessInfo {
                left: w.left.label().to_string(),
                right: w.right.label().to_string(),
                ext1: w.ext1,
                middle_dims: w.extension.middle.dims().to_vec(),
                middle_uniserial: composition_word(&w.extension.middle).is_some(),
                non_split: w.extension.non_split,
            }),
            audit: None,
        }
    }

    /// The λ-independent part: verdict, table shapes and candidate shapes.
    pub fn fingerprint(&self) -> String {
        let cands: Vec<_> = self
            .candidates
            .iter()
            .map(|c| (&c.word, &c.dims, c.multiplicity, c.in_add_m))
            .collect();
        format!(
            "{} {:?} {:?} {:?} {:?}",
            self.verdict,
            self.ext_tables.ext1,
            self.ext_tables.ext2,
            self.orthogonality.ext1,
            cands
        )
    }
}

/// Fails when two reports (for different λ) disagree on anything other than
/// the parameter itself.
pub fn check_lambda_stability(reports: &[ClusterReport]) -> Result<(), ClusterError> {
    let Some(first) = reports.first() else { return Ok(()) };
    let base = first.fingerprint();
    for r in &reports[1..] {
        if r.fingerprint() != base {
            return Err(ClusterError::LambdaDependence(format!(
                "{} at λ={:?} differs from λ={:?}",
                r.algebra, r.lambda, first.lambda
            )));
        }
    }
    Ok(())
}
