//! Finite-dimensional quotients `KQ/I` as explicit bases of paths.
//!
//! All paths shorter than the truncation length are enumerated in
//! length-lexicographic order. The ideal is the closure of the relations
//! under left and right multiplication by arrows, kept in echelon form with
//! the largest path as leading term. Non-leading paths form the basis of the
//! quotient and every path has a precomputed normal form.

use std::collections::HashMap;

use crate::algebra::path::{PathComb, RelationSet, Word};
use crate::algebra::AlgebraError;
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::quiver::{ArrowId, Quiver, VertexId};

/// Sparse vector sorted by index.
pub type SparseVec = Vec<(usize, Scalar)>;

/// All paths of length `< limit`, indexed in length-lexicographic order.
#[derive(Debug, Clone)]
struct PathTable {
    words: Vec<Word>,
    /// `right[p]`: `(arrow, id of p·arrow)`.
    right: Vec<Vec<(ArrowId, usize)>>,
    /// `left[p]`: `(arrow, id of arrow·p)`.
    left: Vec<Vec<(ArrowId, usize)>>,
    trivial: Vec<usize>,
}

impl PathTable {
    fn new(q: &Quiver, limit: usize) -> Self {
        let mut words: Vec<Word> = (0..q.num_vertices()).map(Word::trivial).collect();
        let trivial: Vec<usize> = (0..q.num_vertices()).collect();
        let mut right: Vec<Vec<(ArrowId, usize)>> = vec![Vec::new(); words.len()];
        let mut layer: Vec<usize> = trivial.clone();
        for _ in 1..limit {
            let mut next = Vec::new();
            for &p in &layer {
                let t = words[p].target;
                for a in q.arrows_from(t) {
                    let mut w = words[p].clone();
                    w.arrows.push(a);
                    w.target = q.target(a);
                    let id = words.len();
                    words.push(w);
                    right.push(Vec::new());
                    right[p].push((a, id));
                    next.push(id);
                }
            }
            layer = next;
        }
        let index: HashMap<(VertexId, &[ArrowId]), usize> = words
            .iter()
            .enumerate()
            .map(|(i, w)| ((w.source, w.arrows.as_slice()), i))
            .collect();
        let mut left = vec![Vec::new(); words.len()];
        for (i, w) in words.iter().enumerate() {
            for a in q.arrows_into(w.source) {
                let mut arrows = Vec::with_capacity(w.len() + 1);
                arrows.push(a);
                arrows.extend_from_slice(&w.arrows);
                if let Some(&j) = index.get(&(q.source(a), arrows.as_slice())) {
                    left[i].push((a, j));
                }
            }
        }
        PathTable {
            words,
            right,
            left,
            trivial,
        }
    }

    fn extend_right(&self, p: usize, a: ArrowId) -> Option<usize> {
        self.right[p].iter().find(|&&(b, _)| b == a).map(|&(_, id)| id)
    }

    fn id_of(&self, w: &Word) -> Option<usize> {
        let mut p = self.trivial[w.source];
        for &a in &w.arrows {
            p = self.extend_right(p, a)?;
        }
        Some(p)
    }
}

fn sparse_axpy(v: &SparseVec, c: &Scalar, w: &SparseVec) -> SparseVec {
    // v + c·w
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        if j == w.len() || (i < v.len() && v[i].0 < w[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i == v.len() || w[j].0 < v[i].0 {
            out.push((w[j].0, c * &w[j].1));
            j += 1;
        } else {
            let mut x = v[i].1.clone();
            x.add_mul(c, &w[j].1);
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Echelon basis of the truncated ideal, keyed by leading (largest) index.
struct Echelon {
    rows: HashMap<usize, SparseVec>,
}

impl Echelon {
    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((lead, c)) = v.last().cloned() {
            match self.rows.get(&lead) {
                Some(row) => v = sparse_axpy(&v, &-c, row),
                None => break,
            }
        }
        v
    }
}

/// A finite-dimensional algebra `KQ/I` with a basis of paths.
#[derive(Debug, Clone)]
pub struct BoundedAlgebra {
    field: Field,
    quiver: Quiver,
    relations: RelationSet,
    truncation: usize,
    paths: PathTable,
    /// Normal form of every enumerated path, over basis indices.
    normal_forms: Vec<SparseVec>,
    /// Path id of each basis element.
    basis_paths: Vec<usize>,
    /// `[source][target]`: basis indices of `e_s Λ e_t`.
    blocks: Vec<Vec<Vec<usize>>>,
    /// Position of each basis element inside its block.
    block_pos: Vec<usize>,
    gabriel: Vec<bool>,
}

/// An algebra element as a dense coordinate vector over the basis.
pub type AlgElem = Vec<Scalar>;

impl BoundedAlgebra {
    /// Builds `KQ/I` treating every path of length `≥ truncation` as zero.
    /// The build is repeated one step longer and rejected if the dimension
    /// changes.
    pub fn build(
        field: Field,
        quiver: Quiver,
        relations: RelationSet,
        truncation: usize,
    ) -> Result<Self, AlgebraError> {
        if truncation < 2 {
            return Err(AlgebraError::TruncationTooSmall {
                length: truncation,
                dim: 0,
                dim_next: 0,
            });
        }
        for (r, label) in relations.relations.iter().zip(&relations.labels) {
            if !r.is_zero() && r.endpoints().is_none() {
                return Err(AlgebraError::InhomogeneousRelation(label.clone()));
            }
        }
        let alg = Self::build_at(field, &quiver, &relations, truncation);
        let check = Self::build_at(field, &quiver, &relations, truncation + 1);
        if alg.dim() != check.dim() {
            return Err(AlgebraError::TruncationTooSmall {
                length: truncation,
                dim: alg.dim(),
                dim_next: check.dim(),
            });
        }
        Ok(alg)
    }

    fn build_at(field: Field, quiver: &Quiver, relations: &RelationSet, limit: usize) -> Self {
        let paths = PathTable::new(quiver, limit);
        let np = paths.words.len();
        let mut ech = Echelon {
            rows: HashMap::new(),
        };
        let mut queue: Vec<SparseVec> = Vec::new();
        for r in &relations.relations {
            let mut v: SparseVec = r
                .terms
                .iter()
                .filter_map(|(w, c)| paths.id_of(w).map(|id| (id, c.clone())))
                .collect();
            v.sort_by_key(|e| e.0);
            queue.push(v);
        }
        while let Some(v) = queue.pop() {
            let v = ech.reduce(v);
            let Some((lead, c)) = v.last().cloned() else {
                continue;
            };
            let inv = c.inv().unwrap();
            let v: SparseVec = v.into_iter().map(|(i, x)| (i, &x * &inv)).collect();
            // products with arrows on either side
            let src = paths.words[lead].source;
            let tgt = paths.words[lead].target;
            for a in quiver.arrows_into(src) {
                let mut w: SparseVec = v
                    .iter()
                    .filter_map(|(i, x)| {
                        paths.left[*i]
                            .iter()
                            .find(|&&(b, _)| b == a)
                            .map(|&(_, j)| (j, x.clone()))
                    })
                    .collect();
                if !w.is_empty() {
                    w.sort_by_key(|e| e.0);
                    queue.push(w);
                }
            }
            for a in quiver.arrows_from(tgt) {
                let mut w: SparseVec = v
                    .iter()
                    .filter_map(|(i, x)| paths.extend_right(*i, a).map(|j| (j, x.clone())))
                    .collect();
                if !w.is_empty() {
                    w.sort_by_key(|e| e.0);
                    queue.push(w);
                }
            }
            ech.rows.insert(lead, v);
        }
        // interreduce in increasing pivot order: afterwards each row has its
        // pivot plus non-pivot entries only
        let mut pivots: Vec<usize> = ech.rows.keys().copied().collect();
        pivots.sort_unstable();
        let mut reduced: HashMap<usize, SparseVec> = HashMap::new();
        for &p in &pivots {
            let mut row = ech.rows.remove(&p).unwrap();
            loop {
                let hit = row
                    .iter()
                    .rev()
                    .skip(1)
                    .find(|(i, _)| reduced.contains_key(i))
                    .cloned();
                match hit {
                    Some((i, c)) => row = sparse_axpy(&row, &-c, &reduced[&i]),
                    None => break,
                }
            }
            reduced.insert(p, row);
        }
        let is_pivot: Vec<bool> = (0..np).map(|i| reduced.contains_key(&i)).collect();
        let basis_paths: Vec<usize> = (0..np).filter(|&i| !is_pivot[i]).collect();
        let mut basis_of_path = vec![usize::MAX; np];
        for (b, &p) in basis_paths.iter().enumerate() {
            basis_of_path[p] = b;
        }
        let normal_forms: Vec<SparseVec> = (0..np)
            .map(|i| {
                if let Some(row) = reduced.get(&i) {
                    let mut nf: SparseVec = row[..row.len() - 1]
                        .iter()
                        .map(|(j, x)| (basis_of_path[*j], -x))
                        .collect();
                    nf.sort_by_key(|e| e.0);
                    nf
                } else {
                    vec![(basis_of_path[i], field.one())]
                }
            })
            .collect();
        let nv = quiver.num_vertices();
        let mut blocks = vec![vec![Vec::new(); nv]; nv];
        let mut block_pos = vec![0; basis_paths.len()];
        for (b, &p) in basis_paths.iter().enumerate() {
            let w = &paths.words[p];
            block_pos[b] = blocks[w.source][w.target].len();
            blocks[w.source][w.target].push(b);
        }
        let mut alg = BoundedAlgebra {
            field,
            quiver: quiver.clone(),
            relations: relations.clone(),
            truncation: limit,
            paths,
            normal_forms,
            basis_paths,
            blocks,
            block_pos,
            gabriel: Vec::new(),
        };
        alg.gabriel = alg.compute_gabriel_mask();
        alg
    }

    /// An arrow is a Gabriel arrow when it is not in `J² + I`.
    fn compute_gabriel_mask(&self) -> Vec<bool> {
        let q = &self.quiver;
        (0..q.num_arrows())
            .map(|a| {
                let (s, t) = (q.source(a), q.target(a));
                let Some(id) = self.paths.id_of(&Word::from_arrows(q, &[a]).unwrap()) else {
                    return false;
                };
                let nf = self.sparse_to_block(&self.normal_forms[id], s, t);
                let mut span = Vec::new();
                for (p, w) in self.paths.words.iter().enumerate() {
                    if w.len() >= 2 && w.source == s && w.target == t {
                        span.push(self.sparse_to_block(&self.normal_forms[p], s, t));
                    }
                }
                let cols = self.blocks[s][t].len();
                let m = Matrix::from_rows(self.field, cols, span.clone());
                let mut with = m.clone();
                with.push_row(nf);
                with.rank() > m.rank()
            })
            .collect()
    }

    fn sparse_to_block(&self, v: &SparseVec, s: VertexId, t: VertexId) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.blocks[s][t].len()];
        for (b, x) in v {
            debug_assert_eq!(self.basis_word(*b).source, s);
            out[self.block_pos[*b]] = x.clone();
        }
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn dim(&self) -> usize {
        self.basis_paths.len()
    }

    pub fn basis_word(&self, b: usize) -> &Word {
        &self.paths.words[self.basis_paths[b]]
    }

    pub fn basis_words(&self) -> Vec<&Word> {
        (0..self.dim()).map(|b| self.basis_word(b)).collect()
    }

    /// Basis indices of `e_s Λ e_t`.
    pub fn block(&self, s: VertexId, t: VertexId) -> &[usize] {
        &self.blocks[s][t]
    }

    pub fn block_position(&self, b: usize) -> usize {
        self.block_pos[b]
    }

    /// `dim e_v Λ`.
    pub fn vertex_dim(&self, v: VertexId) -> usize {
        self.blocks[v].iter().map(Vec::len).sum()
    }

    /// `C[s][t] = dim e_s Λ e_t`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|row| row.iter().map(Vec::len).collect())
            .collect()
    }

    pub fn gabriel_arrows(&self) -> &[bool] {
        &self.gabriel
    }

    pub fn zero(&self) -> AlgElem {
        vec![self.field.zero(); self.dim()]
    }

    fn sparse_to_dense(&self, v: &SparseVec) -> AlgElem {
        let mut out = self.zero();
        for (b, x) in v {
            out[*b] = x.clone();
        }
        out
    }

    /// Normal form of a path, zero if it is at least as long as the
    /// truncation length.
    pub fn word_nf(&self, w: &Word) -> SparseVec {
        match self.paths.id_of(w) {
            Some(id) => self.normal_forms[id].clone(),
            None => Vec::new(),
        }
    }

    pub fn word(&self, w: &Word) -> AlgElem {
        self.sparse_to_dense(&self.word_nf(w))
    }

    pub fn eval(&self, p: &PathComb) -> AlgElem {
        let mut out = self.zero();
        for (w, c) in &p.terms {
            for (b, x) in self.word_nf(w) {
                out[b].add_mul(c, &x);
            }
        }
        out
    }

    pub fn vertex_idempotent(&self, v: VertexId) -> AlgElem {
        self.word(&Word::trivial(v))
    }

    /// Normal form of `b·a` for a basis element `b` and an arrow `a`.
    pub fn basis_times_arrow(&self, b: usize, a: ArrowId) -> SparseVec {
        match self.paths.extend_right(self.basis_paths[b], a) {
            Some(id) => self.normal_forms[id].clone(),
            None => Vec::new(),
        }
    }

    /// Normal form of the product of two basis elements.
    pub fn basis_product(&self, i: usize, j: usize) -> SparseVec {
        let wi = self.basis_word(i);
        let wj = self.basis_word(j);
        if wi.target != wj.source {
            return Vec::new();
        }
        let mut p = self.basis_paths[i];
        for &a in &wj.arrows {
            match self.paths.extend_right(p, a) {
                Some(n) => p = n,
                None => return Vec::new(),
            }
        }
        self.normal_forms[p].clone()
    }

    pub fn mul(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, z) in self.basis_product(i, j) {
                    out[k].add_mul(&c, &z);
                }
            }
        }
        out
    }

    pub fn is_zero_elem(x: &AlgElem) -> bool {
        x.iter().all(Scalar::is_zero)
    }

    /// Basis indices whose path starts at `v` and has positive length: a
    /// basis of `e_v J`.
    pub fn radical_basis_from(&self, v: VertexId) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| {
                let w = self.basis_word(b);
                w.source == v && !w.is_empty()
            })
            .collect()
    }

    /// Associativity on every triple of basis elements.
    pub fn check_associative(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let unit = |i: usize| -> AlgElem {
            let mut e = self.zero();
            e[i] = self.field.one();
            e
        };
        let prods: Vec<Vec<AlgElem>> = (0..d)
            .map(|i| (0..d).map(|j| self.sparse_to_dense(&self.basis_product(i, j))).collect())
            .collect();
        for i in 0..d {
            for j in 0..d {
                if self.basis_word(i).target != self.basis_word(j).source {
                    continue;
                }
                for k in 0..d {
                    if self.basis_word(j).target != self.basis_word(k).source {
                        continue;
                    }
                    let left = self.mul(&prods[i][j], &unit(k));
                    let right = self.mul(&unit(i), &prods[j][k]);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn describe_elem(&self, x: &AlgElem) -> String {
        let mut p = PathComb::zero();
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                p.add_term(self.basis_word(b).clone(), c.clone());
            }
        }
        p.display(&self.quiver)
    }
}
