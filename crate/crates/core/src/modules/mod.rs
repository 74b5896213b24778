//! Finite-dimensional right modules over a [`BoundedAlgebra`].
//!
//! A module is a representation of the algebra's quiver: a space per vertex
//! and a matrix per arrow. Vectors are rows, so an arrow `a: s → t` acts by
//! `x ↦ x·A_a` and a path acts by the product of its arrow matrices in the
//! order the path is written.

mod ext;
mod extension;
mod hom;
mod iso;
mod syzygy;
mod uniserial;

pub use ext::{ext_by_resolution, ext_by_stable_hom, ext_dim, ExtError, ExtSource};
pub use extension::{ext1_witness, Extension};
pub use hom::{hom_dim, hom_space, hom_space_from_cover, stable_hom_dim};
pub use iso::{is_isomorphic, IsoOptions};
pub use syzygy::{
    injective_hull, omega, omega_inverse, omega_power, projective_cover, projective_sum, Cover, Hull,
    Resolution,
};
pub use uniserial::{
    composition_word, is_uniserial, radical_series, subquotient, subquotients_of_uniserial,
    uniserial, Subquotient,
};

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::path::Word;
use crate::algebra::{AlgElem, BoundedAlgebra};
use crate::field::{Field, Scalar};
use crate::linalg::{coords_in_rref, left_kernel, rref, row_space, Matrix};
use crate::quiver::{ArrowId, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("matrix for arrow `{arrow}` has shape {got:?}, expected {expected:?}")]
    Shape {
        arrow: String,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("relation `{0}` does not act as zero")]
    RelationViolated(String),
    #[error("subspaces are not closed under the arrow `{0}`")]
    NotSubmodule(String),
    #[error("composition word {0} is not realizable as a uniserial module")]
    NotRealizable(String),
    #[error("module `{0}` is not uniserial")]
    NotUniserial(String),
    #[error("socle of `{0}` does not embed into projectives; the algebra is not self-injective")]
    AlgebraNotSelfInjective(String),
    #[error("modules over different algebras")]
    AlgebraMismatch,
}

/// A right module given by one matrix per arrow.
#[derive(Clone)]
pub struct Representation {
    alg: Arc<BoundedAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
    label: String,
    path_mats: OnceLock<Arc<Vec<Matrix>>>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.label, self.dims)
    }
}

/// A module map, one block per vertex; block `v` is `dim M_v × dim N_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub blocks: Vec<Matrix>,
}

impl Representation {
    /// Checks matrix shapes and that every relation acts as zero.
    pub fn new(
        alg: Arc<BoundedAlgebra>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
        label: impl Into<String>,
    ) -> Result<Self, ModuleError> {
        let q = alg.quiver();
        for (a, m) in maps.iter().enumerate() {
            let expected = (dims[q.source(a)], dims[q.target(a)]);
            if (m.rows(), m.cols()) != expected {
                return Err(ModuleError::Shape {
                    arrow: q.arrows[a].name.clone(),
                    got: (m.rows(), m.cols()),
                    expected,
                });
            }
        }
        let rep = Self::from_parts(alg, dims, maps, label.into());
        if let Some(r) = rep.violated_relation() {
            return Err(ModuleError::RelationViolated(r));
        }
        Ok(rep)
    }

    fn from_parts(alg: Arc<BoundedAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>, label: String) -> Self {
        Representation {
            alg,
            dims,
            maps,
            label,
            path_mats: OnceLock::new(),
        }
    }

    pub fn zero(alg: &Arc<BoundedAlgebra>) -> Self {
        let field = alg.field();
        let q = alg.quiver();
        let maps = (0..q.num_arrows()).map(|_| Matrix::zeros(field, 0, 0)).collect();
        Self::from_parts(alg.clone(), vec![0; q.num_vertices()], maps, "0".into())
    }

    pub fn simple(alg: &Arc<BoundedAlgebra>, v: VertexId) -> Self {
        let field = alg.field();
        let q = alg.quiver();
        let mut dims = vec![0; q.num_vertices()];
        dims[v] = 1;
        let maps = (0..q.num_arrows())
            .map(|a| Matrix::zeros(field, dims[q.source(a)], dims[q.target(a)]))
            .collect();
        Self::from_parts(alg.clone(), dims, maps, format!("S({})", q.vertices[v]))
    }

    /// `P_v = e_v Λ` with the basis paths starting at `v`.
    pub fn projective(alg: &Arc<BoundedAlgebra>, v: VertexId) -> Self {
        let field = alg.field();
        let q = alg.quiver();
        let dims: Vec<usize> = (0..q.num_vertices()).map(|t| alg.block(v, t).len()).collect();
        let maps = (0..q.num_arrows())
            .map(|a| {
                let (s, t) = (q.source(a), q.target(a));
                let mut m = Matrix::zeros(field, dims[s], dims[t]);
                for (i, &b) in alg.block(v, s).iter().enumerate() {
                    for (k, c) in alg.basis_times_arrow(b, a) {
                        m.set(i, alg.block_position(k), c);
                    }
                }
                m
            })
            .collect();
        Self::from_parts(alg.clone(), dims, maps, format!("P({})", q.vertices[v]))
    }

    pub fn algebra(&self) -> &Arc<BoundedAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn map(&self, a: ArrowId) -> &Matrix {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Matrix of a path acting on the module.
    pub fn word_matrix(&self, w: &Word) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[w.source]);
        for &a in &w.arrows {
            m = m.mul(&self.maps[a]);
        }
        m
    }

    /// Matrices of all basis paths of the algebra, indexed by basis element.
    pub fn path_matrices(&self) -> Arc<Vec<Matrix>> {
        self.path_mats
            .get_or_init(|| {
                Arc::new(
                    (0..self.alg.dim())
                        .map(|b| self.word_matrix(self.alg.basis_word(b)))
                        .collect(),
                )
            })
            .clone()
    }

    /// `x·y` for `x ∈ M_u` and `y ∈ e_u Λ e_w` (only the block `(u, w)` of
    /// `y` is used).
    pub fn act(&self, x: &[Scalar], u: VertexId, w: VertexId, y: &AlgElem) -> Vec<Scalar> {
        let pm = self.path_matrices();
        let mut out = vec![self.field().zero(); self.dims[w]];
        for &b in self.alg.block(u, w) {
            if y[b].is_zero() {
                continue;
            }
            let v = pm[b].apply(x);
            for (o, z) in out.iter_mut().zip(&v) {
                o.add_mul(&y[b], z);
            }
        }
        out
    }

    fn violated_relation(&self) -> Option<String> {
        let rels = self.alg.relations();
        for (r, label) in rels.relations.iter().zip(&rels.labels) {
            let Some((s, t)) = r.endpoints() else { continue };
            let mut acc = Matrix::zeros(self.field(), self.dims[s], self.dims[t]);
            for (w, c) in &r.terms {
                acc = acc.add(&self.word_matrix(w).scale(c));
            }
            if !acc.is_zero() {
                return Some(label.clone());
            }
        }
        None
    }

    pub fn satisfies_relations(&self) -> bool {
        self.violated_relation().is_none()
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Self::from_parts(
            self.alg.clone(),
            dims,
            maps,
            format!("{} ⊕ {}", self.label, other.label),
        )
    }

    pub fn direct_sum_all(alg: &Arc<BoundedAlgebra>, parts: &[Representation]) -> Representation {
        let mut it = parts.iter();
        match it.next() {
            None => Representation::zero(alg),
            Some(first) => it.fold(first.clone(), |acc, p| acc.direct_sum(p)),
        }
    }

    /// `rad M = M·J` as row bases per vertex.
    pub fn radical(&self) -> Vec<Matrix> {
        self.radical_of(&self.full_bases())
    }

    /// `U·J` for a submodule `U` given by row bases.
    pub fn radical_of(&self, sub: &[Matrix]) -> Vec<Matrix> {
        let q = self.alg.quiver();
        let field = self.field();
        (0..q.num_vertices())
            .map(|t| {
                let mut acc = Matrix::zeros(field, 0, self.dims[t]);
                for a in q.arrows_into(t) {
                    acc = acc.vstack(&sub[q.source(a)].mul(&self.maps[a]));
                }
                row_space(&acc)
            })
            .collect()
    }

    /// `soc M`: vectors killed by every arrow, as row bases per vertex.
    pub fn socle(&self) -> Vec<Matrix> {
        let q = self.alg.quiver();
        let field = self.field();
        (0..q.num_vertices())
            .map(|s| {
                let mut cols = 0;
                let outs: Vec<ArrowId> = q.arrows_from(s).collect();
                for &a in &outs {
                    cols += self.dims[q.target(a)];
                }
                let mut m = Matrix::zeros(field, self.dims[s], cols);
                let mut off = 0;
                for &a in &outs {
                    let am = &self.maps[a];
                    for i in 0..am.rows() {
                        for j in 0..am.cols() {
                            m.set(i, off + j, am.get(i, j).clone());
                        }
                    }
                    off += am.cols();
                }
                row_space(&left_kernel(&m))
            })
            .collect()
    }

    pub fn top_dims(&self) -> Vec<usize> {
        let rad = self.radical();
        self.dims.iter().zip(&rad).map(|(d, r)| d - r.rows()).collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle().iter().map(Matrix::rows).collect()
    }

    pub fn full_bases(&self) -> Vec<Matrix> {
        self.dims
            .iter()
            .map(|&d| Matrix::identity(self.field(), d))
            .collect()
    }

    /// The submodule spanned per vertex by the given rows, with its
    /// inclusion. The rows are brought to reduced echelon form.
    pub fn submodule(&self, rows: &[Matrix]) -> Result<(Representation, Morphism), ModuleError> {
        let q = self.alg.quiver();
        let bases: Vec<(Matrix, Vec<usize>)> = rows
            .iter()
            .map(|m| {
                let (r, p) = rref(m);
                (r.select_rows(&(0..p.len()).collect::<Vec<_>>()), p)
            })
            .collect();
        let dims: Vec<usize> = bases.iter().map(|(b, _)| b.rows()).collect();
        let field = self.field();
        let mut maps = Vec::with_capacity(q.num_arrows());
        for a in 0..q.num_arrows() {
            let (s, t) = (q.source(a), q.target(a));
            let mut m = Matrix::zeros(field, dims[s], dims[t]);
            for i in 0..dims[s] {
                let y = self.maps[a].apply(bases[s].0.row(i));
                let c = coords_in_rref(&bases[t].0, &bases[t].1, &y)
                    .ok_or_else(|| ModuleError::NotSubmodule(q.arrows[a].name.clone()))?;
                for (j, x) in c.into_iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            maps.push(m);
        }
        let inclusion = Morphism {
            blocks: bases.iter().map(|(b, _)| b.clone()).collect(),
        };
        let sub = Self::from_parts(self.alg.clone(), dims, maps, format!("sub({})", self.label));
        Ok((sub, inclusion))
    }

    /// `M / U` with the projection `M → M/U`. The quotient basis at each
    /// vertex is the set of non-pivot unit vectors of the echelon form of `U`.
    pub fn quotient(&self, rows: &[Matrix]) -> Result<(Representation, Morphism), ModuleError> {
        let q = self.alg.quiver();
        let field = self.field();
        let mut proj = Vec::with_capacity(q.num_vertices());
        let mut keep = Vec::with_capacity(q.num_vertices());
        for (v, m) in rows.iter().enumerate() {
            let d = self.dims[v];
            let (r, pivots) = rref(m);
            let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
            let mut p = Matrix::zeros(field, d, free.len());
            for (j, &c) in free.iter().enumerate() {
                p.set(c, j, field.one());
            }
            for (k, &pc) in pivots.iter().enumerate() {
                for (j, &c) in free.iter().enumerate() {
                    p.set(pc, j, -r.get(k, c));
                }
            }
            proj.push(p);
            keep.push(free);
        }
        let dims: Vec<usize> = keep.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(q.num_arrows());
        for a in 0..q.num_arrows() {
            let (s, t) = (q.source(a), q.target(a));
            maps.push(self.maps[a].select_rows(&keep[s]).mul(&proj[t]));
        }
        let quot = Self::from_parts(self.alg.clone(), dims, maps, format!("quot({})", self.label));
        // closure of U under arrows is what makes the maps well defined
        for a in 0..q.num_arrows() {
            let (s, t) = (q.source(a), q.target(a));
            let img = rows[s].mul(&self.maps[a]).mul(&proj[t]);
            if !img.is_zero() {
                return Err(ModuleError::NotSubmodule(q.arrows[a].name.clone()));
            }
        }
        Ok((quot, Morphism { blocks: proj }))
    }

    pub fn dump(&self) -> ModuleDump {
        let q = self.alg.quiver();
        ModuleDump {
            label: self.label.clone(),
            dims: q.vertices.iter().cloned().zip(self.dims.iter().copied()).collect(),
            arrows: (0..q.num_arrows())
                .map(|a| ArrowDump {
                    arrow: q.arrows[a].name.clone(),
                    matrix: self.maps[a]
                        .row_vecs()
                        .into_iter()
                        .map(|r| r.iter().map(|x| x.to_string()).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ArrowDump {
    pub arrow: String,
    pub matrix: Vec<Vec<String>>,
}

/// JSON form of a module: dimension per vertex, arrow matrices, provenance.
#[derive(Debug, Clone, Serialize)]
pub struct ModuleDump {
    pub label: String,
    pub dims: Vec<(String, usize)>,
    pub arrows: Vec<ArrowDump>,
}

impl Morphism {
    pub fn zero(m: &Representation, n: &Representation) -> Self {
        Morphism {
            blocks: m
                .dims
                .iter()
                .zip(&n.dims)
                .map(|(&a, &b)| Matrix::zeros(m.field(), a, b))
                .collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Morphism) -> Morphism {
        Morphism {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        Morphism {
            blocks: self.blocks.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.rows() == b.cols() && b.is_invertible())
    }

    /// Whether the intertwining equations `A^M_a F_t = F_s A^N_a` hold.
    pub fn is_homomorphism(&self, m: &Representation, n: &Representation) -> bool {
        let q = m.alg.quiver();
        (0..q.num_arrows()).all(|a| {
            let (s, t) = (q.source(a), q.target(a));
            m.maps[a].mul(&self.blocks[t]) == self.blocks[s].mul(&n.maps[a])
        })
    }

    /// Entries of all blocks in one vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.blocks
            .iter()
            .flat_map(|b| b.row_vecs().into_iter().flatten())
            .collect()
    }

    /// Kernel rows per vertex.
    pub fn kernel_rows(&self) -> Vec<Matrix> {
        self.blocks.iter().map(|b| row_space(&left_kernel(b))).collect()
    }

    /// Image rows per vertex.
    pub fn image_rows(&self) -> Vec<Matrix> {
        self.blocks.iter().map(row_space).collect()
    }
}
