//! Explicit non-split extensions `0 → N → E → M → 0`.

use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::modules::hom::{hom_dim, hom_space};
use crate::modules::syzygy::projective_cover;
use crate::modules::{Morphism, Representation};

#[derive(Debug, Clone)]
pub struct Extension {
    pub middle: Representation,
    pub inclusion: Morphism,
    pub projection: Morphism,
    /// `dim Hom(M, E) < dim Hom(M, N) + dim Hom(M, M)`.
    pub non_split: bool,
}

/// The pushout of `Ω M ↪ P(M)` along the first basis map `Ω M → N` that does
/// not extend to `P(M)`, or `None` when `Ext¹(M, N) = 0`.
pub fn ext1_witness(m: &Representation, n: &Representation) -> Option<Extension> {
    let field = m.field();
    let alg = m.algebra();
    let nv = alg.num_vertices();
    let cover = projective_cover(m);
    let (k, inc) = cover.syzygy();
    if k.is_zero() {
        return None;
    }
    // maps Ω M → N that extend to P: restrictions of Hom(P, N)
    let mut extendable: Vec<Vec<Scalar>> = hom_space(&cover.proj, n)
        .iter()
        .map(|h| inc.then(h).flatten())
        .collect();
    let width = k.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
    let mut rank = Matrix::from_rows(field, width, extendable.clone()).rank();
    let f = hom_space(&k, n).into_iter().find(|f| {
        extendable.push(f.flatten());
        let r = Matrix::from_rows(field, width, extendable.clone()).rank();
        if r > rank {
            true
        } else {
            extendable.pop();
            rank = r;
            false
        }
    })?;
    // E = (P ⊕ N) / {(ι k, −f k)}
    let sum = cover.proj.direct_sum(n);
    let rows: Vec<Matrix> = (0..nv)
        .map(|u| {
            let left = &inc.blocks[u];
            let right = f.blocks[u].scale(&-field.one());
            let mut m = Matrix::zeros(field, left.rows(), left.cols() + right.cols());
            for i in 0..left.rows() {
                for j in 0..left.cols() {
                    m.set(i, j, left.get(i, j).clone());
                }
                for j in 0..right.cols() {
                    m.set(i, left.cols() + j, right.get(i, j).clone());
                }
            }
            m
        })
        .collect();
    let (middle, proj) = sum.quotient(&rows).ok()?;
    let middle = middle.with_label(format!("E({}, {})", n.label(), m.label()));
    // N → E: n ↦ π(0, n)
    let inclusion = Morphism {
        blocks: (0..nv)
            .map(|u| {
                let p = cover.proj.dims()[u];
                proj.blocks[u].select_rows(&(p..p + n.dims()[u]).collect::<Vec<_>>())
            })
            .collect(),
    };
    // E → M: the quotient basis consists of unit vectors of P ⊕ N; those in
    // P go through the cover, those in N to zero
    let projection = Morphism {
        blocks: (0..nv)
            .map(|u| {
                let p = cover.proj.dims()[u];
                let pr = &proj.blocks[u];
                let mut out = Matrix::zeros(field, middle.dims()[u], m.dims()[u]);
                // column j of the projection is the unit vector it came from
                for j in 0..pr.cols() {
                    let src = (0..pr.rows())
                        .find(|&r| pr.get(r, j).is_one() && (0..pr.cols()).all(|c| c == j || pr.get(r, c).is_zero()))
                        .expect("quotient basis is a set of unit vectors");
                    if src < p {
                        for c in 0..m.dims()[u] {
                            out.set(j, c, cover.map.blocks[u].get(src, c).clone());
                        }
                    }
                }
                out
            })
            .collect(),
    };
    let non_split = hom_dim(m, &middle) < hom_dim(m, n) + hom_dim(m, m);
    Some(Extension {
        middle,
        inclusion,
        projection,
        non_split,
    })
}
