//! Projective covers, injective hulls, syzygies and minimal resolutions.

use crate::field::Scalar;
use crate::linalg::{coords_in_rref, rref, solve_left, Matrix};
use crate::modules::hom::hom_space;
use crate::modules::{ModuleError, Morphism, Representation};
use crate::quiver::VertexId;

/// A projective cover `⊕ P_{v_j} → M` sending the idempotent of the `j`-th
/// summand to the generator `gens[j] ∈ M_{v_j}`.
#[derive(Debug, Clone)]
pub struct Cover {
    pub tops: Vec<VertexId>,
    pub gens: Vec<Vec<Scalar>>,
    pub proj: Representation,
    pub map: Morphism,
}

/// Direct sum of indecomposable projectives in the given order.
pub fn projective_sum(m: &Representation, tops: &[VertexId]) -> Representation {
    let alg = m.algebra();
    let parts: Vec<Representation> = tops.iter().map(|&v| Representation::projective(alg, v)).collect();
    Representation::direct_sum_all(alg, &parts)
}

fn offset_in(m: &Representation, tops: &[VertexId], j: usize, u: VertexId) -> usize {
    let alg = m.algebra();
    tops[..j].iter().map(|&v| alg.block(v, u).len()).sum()
}

impl Cover {
    /// Position of the `j`-th summand inside `(⊕ P)_u`.
    pub fn offset(&self, j: usize, u: VertexId) -> usize {
        offset_in(&self.proj, &self.tops, j, u)
    }

    pub fn kernel_rows(&self) -> Vec<Matrix> {
        self.map.kernel_rows()
    }

    /// Per vertex a right inverse `S_u` of the cover, `S_u π_u = 1`.
    pub fn sections(&self) -> Vec<Matrix> {
        self.map
            .blocks
            .iter()
            .map(|pi| {
                let field = pi.field();
                let rows = (0..pi.cols())
                    .map(|i| {
                        let mut e = vec![field.zero(); pi.cols()];
                        e[i] = field.one();
                        solve_left(pi, &e).unwrap().expect("cover is surjective")
                    })
                    .collect();
                Matrix::from_rows(field, pi.rows(), rows)
            })
            .collect()
    }

    /// `Ω M` with its inclusion into the cover.
    pub fn syzygy(&self) -> (Representation, Morphism) {
        self.proj
            .submodule(&self.kernel_rows())
            .expect("kernel of a module map is a submodule")
    }
}

/// Minimal projective cover: generators are a complement of `rad M`
/// spanned by unit vectors.
pub fn projective_cover(m: &Representation) -> Cover {
    let alg = m.algebra();
    let field = m.field();
    let nv = alg.num_vertices();
    let rad = m.radical();
    let mut tops = Vec::new();
    let mut gens = Vec::new();
    for v in 0..nv {
        let (_, pivots) = rref(&rad[v]);
        for c in (0..m.dims()[v]).filter(|c| !pivots.contains(c)) {
            let mut e = vec![field.zero(); m.dims()[v]];
            e[c] = field.one();
            tops.push(v);
            gens.push(e);
        }
    }
    let proj = projective_sum(m, &tops);
    let pm = m.path_matrices();
    let blocks = (0..nv)
        .map(|u| {
            let mut b = Matrix::zeros(field, proj.dims()[u], m.dims()[u]);
            let mut row = 0;
            for (j, &v) in tops.iter().enumerate() {
                for &k in alg.block(v, u) {
                    let img = pm[k].apply(&gens[j]);
                    for (c, x) in img.into_iter().enumerate() {
                        b.set(row, c, x);
                    }
                    row += 1;
                }
            }
            b
        })
        .collect();
    Cover {
        tops,
        gens,
        proj,
        map: Morphism { blocks },
    }
}

/// An injective hull `X → ⊕ P_{w_k}`; projectives are injective over the
/// symmetric algebras considered here.
#[derive(Debug, Clone)]
pub struct Hull {
    pub tops: Vec<VertexId>,
    pub inj: Representation,
    pub map: Morphism,
}

impl Hull {
    /// Rank of `Hom(I, N) → Hom(X, N)`, i.e. the dimension of the maps
    /// `X → N` factoring through the hull.
    pub fn restriction_rank(&self, n: &Representation) -> usize {
        let alg = n.algebra();
        let field = n.field();
        let nv = alg.num_vertices();
        let pm = n.path_matrices();
        let mut rows = Vec::new();
        for (k, &w) in self.tops.iter().enumerate() {
            for r in 0..n.dims()[w] {
                let mut flat = Vec::new();
                for u in 0..nv {
                    let mut psi = Matrix::zeros(field, self.inj.dims()[u], n.dims()[u]);
                    let off = offset_in(&self.inj, &self.tops, k, u);
                    for (i, &b) in alg.block(w, u).iter().enumerate() {
                        for c in 0..n.dims()[u] {
                            psi.set(off + i, c, pm[b].get(r, c).clone());
                        }
                    }
                    flat.extend(self.map.blocks[u].mul(&psi).row_vecs().into_iter().flatten());
                }
                rows.push(flat);
            }
        }
        if rows.is_empty() {
            return 0;
        }
        let width = rows[0].len();
        Matrix::from_rows(field, width, rows).rank()
    }

    /// `Ω⁻¹ X` with the projection from the hull.
    pub fn cokernel(&self) -> (Representation, Morphism) {
        self.inj
            .quotient(&self.map.image_rows())
            .expect("image of a module map is a submodule")
    }
}

/// Minimal injective hull, built summand by summand from maps
/// `X → P_w` that are injective on the socle at `w`.
pub fn injective_hull(x: &Representation) -> Result<Hull, ModuleError> {
    let alg = x.algebra();
    let field = x.field();
    let nv = alg.num_vertices();
    let soc = x.socle();
    let mut tops = Vec::new();
    let mut chosen: Vec<Morphism> = Vec::new();
    for w in 0..nv {
        let k = soc[w].rows();
        if k == 0 {
            continue;
        }
        let pw = Representation::projective(alg, w);
        let mut acc = Matrix::zeros(field, 0, 0);
        let mut rank = 0;
        for phi in hom_space(x, &pw) {
            // columns: one block per chosen map, rows: socle basis
            let img = soc[w].mul(&phi.blocks[w]);
            let trial = if acc.cols() == 0 {
                img.clone()
            } else {
                hcat(&acc, &img)
            };
            let r = trial.rank();
            if r > rank {
                rank = r;
                acc = trial;
                tops.push(w);
                chosen.push(phi);
                if rank == k {
                    break;
                }
            }
        }
        if rank < k {
            return Err(ModuleError::AlgebraNotSelfInjective(x.label().to_string()));
        }
    }
    let inj = projective_sum(x, &tops);
    let blocks = (0..nv)
        .map(|u| {
            let mut b = Matrix::zeros(field, x.dims()[u], 0);
            for phi in &chosen {
                b = hcat(&b, &phi.blocks[u]);
            }
            b
        })
        .collect();
    Ok(Hull {
        tops,
        inj,
        map: Morphism { blocks },
    })
}

fn hcat(a: &Matrix, b: &Matrix) -> Matrix {
    a.transpose().vstack(&b.transpose()).transpose()
}

pub fn omega(m: &Representation) -> Representation {
    let label = format!("Ω({})", m.label());
    projective_cover(m).syzygy().0.with_label(label)
}

pub fn omega_inverse(m: &Representation) -> Representation {
    let label = format!("Ω⁻¹({})", m.label());
    injective_hull(m)
        .expect("self-injective algebra")
        .cokernel()
        .0
        .with_label(label)
}

pub fn omega_power(m: &Representation, k: i32) -> Representation {
    let mut x = m.clone();
    for _ in 0..k.unsigned_abs() {
        x = if k > 0 { omega(&x) } else { omega_inverse(&x) };
    }
    let label = match k {
        0 => m.label().to_string(),
        1 => format!("Ω({})", m.label()),
        _ => format!("Ω^{k}({})", m.label()),
    };
    x.with_label(label)
}

/// A minimal projective resolution `P_k → … → P_0 → M → 0`.
#[derive(Debug, Clone)]
pub struct Resolution {
    /// Tops of the `P_i`.
    pub tops: Vec<Vec<VertexId>>,
    /// `differentials[i-1][g]`: image of the `g`-th generator of `P_i` in
    /// `(P_{i-1})_u`, `u` the top of that generator.
    pub differentials: Vec<Vec<Vec<Scalar>>>,
    /// `Ω^i M` for `i = 0..=k`.
    pub syzygies: Vec<Representation>,
    pub projectives: Vec<Representation>,
}

impl Resolution {
    pub fn new(m: &Representation, length: usize) -> Self {
        let mut tops = Vec::new();
        let mut differentials = Vec::new();
        let mut syzygies = vec![m.clone()];
        let mut projectives = Vec::new();
        let mut embedding: Option<Morphism> = None;
        for i in 0..=length {
            let x = &syzygies[i];
            let cover = projective_cover(x);
            if let Some(emb) = &embedding {
                differentials.push(
                    cover
                        .tops
                        .iter()
                        .zip(&cover.gens)
                        .map(|(&u, g)| emb.blocks[u].apply(g))
                        .collect(),
                );
            }
            tops.push(cover.tops.clone());
            let (k, inc) = cover.syzygy();
            projectives.push(cover.proj.clone());
            if i < length {
                let label = match i {
                    0 => format!("Ω({})", m.label()),
                    _ => format!("Ω^{}({})", i + 1, m.label()),
                };
                syzygies.push(k.with_label(label));
                embedding = Some(inc);
            }
        }
        Resolution {
            tops,
            differentials,
            syzygies,
            projectives,
        }
    }

    pub fn length(&self) -> usize {
        self.tops.len() - 1
    }

    /// Every differential lands in the radical of its target.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().enumerate().all(|(i, gens)| {
            let p = &self.projectives[i];
            let rad = p.radical();
            gens.iter().zip(&self.tops[i + 1]).all(|(y, &u)| {
                let (r, piv) = rref(&rad[u]);
                let r = r.select_rows(&(0..piv.len()).collect::<Vec<_>>());
                coords_in_rref(&r, &piv, y).is_some()
            })
        })
    }

    /// Matrix of `Hom(P_{i-1}, N) → Hom(P_i, N)` in generator coordinates
    /// (rows: images of the generators of `P_{i-1}`).
    pub fn dual_differential(&self, i: usize, n: &Representation) -> Matrix {
        let alg = n.algebra();
        let field = n.field();
        let pm = n.path_matrices();
        let src = &self.tops[i - 1];
        let dst = &self.tops[i];
        let rows: usize = src.iter().map(|&v| n.dims()[v]).sum();
        let cols: usize = dst.iter().map(|&u| n.dims()[u]).sum();
        let mut d = Matrix::zeros(field, rows, cols);
        let mut col = 0;
        for (g, &u) in dst.iter().enumerate() {
            let y = &self.differentials[i - 1][g];
            let mut row = 0;
            let mut pos = 0;
            for &v in src {
                let block = alg.block(v, u);
                for r in 0..n.dims()[v] {
                    for c in 0..n.dims()[u] {
                        let mut s = field.zero();
                        for (k, &b) in block.iter().enumerate() {
                            let coef = &y[pos + k];
                            if !coef.is_zero() {
                                s.add_mul(coef, pm[b].get(r, c));
                            }
                        }
                        d.set(row + r, col + c, s);
                    }
                }
                row += n.dims()[v];
                pos += block.len();
            }
            col += n.dims()[u];
        }
        d
    }
}
