use crate::field::Scalar;
use crate::linalg::{kernel_basis, left_kernel, Matrix};
use crate::modules::syzygy::{injective_hull, projective_cover};
use crate::modules::{Morphism, Representation};

/// Basis of `Hom_Λ(M, N)` from the intertwining equations
/// `A^M_a F_t = F_s A^N_a`, one unknown per entry of each block `F_v`.
pub fn hom_space(m: &Representation, n: &Representation) -> Vec<Morphism> {
    let alg = m.algebra();
    let q = alg.quiver();
    let field = m.field();
    let nv = q.num_vertices();
    let mut off = vec![0; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + m.dims()[v] * n.dims()[v];
    }
    let nvars = off[nv];
    if nvars == 0 {
        return Vec::new();
    }
    let var = |v: usize, i: usize, j: usize| off[v] + i * n.dims()[v] + j;
    let mut rows = Vec::new();
    for a in 0..q.num_arrows() {
        let (s, t) = (q.source(a), q.target(a));
        let am = m.map(a);
        let an = n.map(a);
        for i in 0..m.dims()[s] {
            for j in 0..n.dims()[t] {
                let mut row = vec![field.zero(); nvars];
                let mut nonzero = false;
                for k in 0..m.dims()[t] {
                    let c = am.get(i, k);
                    if !c.is_zero() {
                        row[var(t, k, j)] += c;
                        nonzero = true;
                    }
                }
                for l in 0..n.dims()[s] {
                    let c = an.get(l, j);
                    if !c.is_zero() {
                        row[var(s, i, l)] -= c;
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let sys = Matrix::from_rows(field, nvars, rows);
    kernel_basis(&sys)
        .into_iter()
        .map(|x| Morphism {
            blocks: (0..nv)
                .map(|v| {
                    let mut b = Matrix::zeros(field, m.dims()[v], n.dims()[v]);
                    for i in 0..m.dims()[v] {
                        for j in 0..n.dims()[v] {
                            b.set(i, j, x[var(v, i, j)].clone());
                        }
                    }
                    b
                })
                .collect(),
        })
        .collect()
}

pub fn hom_dim(m: &Representation, n: &Representation) -> usize {
    hom_space(m, n).len()
}

/// Basis of `Hom_Λ(M, N)` computed from a projective presentation of `M`:
/// a map is a choice of images of the top generators that kills the
/// kernel of the cover.
pub fn hom_space_from_cover(m: &Representation, n: &Representation) -> Vec<Morphism> {
    let field = m.field();
    let alg = m.algebra();
    let nv = alg.num_vertices();
    let cover = projective_cover(m);
    let pm = n.path_matrices();
    // unknowns: images of generators, n_j ∈ N_{v_j}
    let mut goff = vec![0];
    for &v in &cover.tops {
        goff.push(goff.last().unwrap() + n.dims()[v]);
    }
    let nvars = *goff.last().unwrap();
    if nvars == 0 {
        return Vec::new();
    }
    // the map P_u → N_u for the generator-image unknown e_{(j, r)}:
    // row (j, b) of P_u goes to e_r · W^N_b
    let phi = |u: usize| -> Vec<Matrix> {
        (0..nvars)
            .map(|x| {
                let j = goff.partition_point(|&o| o <= x) - 1;
                let r = x - goff[j];
                let mut img = Matrix::zeros(field, cover.proj.dims()[u], n.dims()[u]);
                let start = cover.offset(j, u);
                for (k, &b) in alg.block(cover.tops[j], u).iter().enumerate() {
                    for c in 0..n.dims()[u] {
                        img.set(start + k, c, pm[b].get(r, c).clone());
                    }
                }
                img
            })
            .collect()
    };
    let kernel = cover.kernel_rows();
    let mut cons: Vec<Vec<Scalar>> = vec![Vec::new(); nvars];
    let mut phis = Vec::with_capacity(nv);
    for u in 0..nv {
        let ph = phi(u);
        for (x, p) in ph.iter().enumerate() {
            cons[x].extend(kernel[u].mul(p).row_vecs().into_iter().flatten());
        }
        phis.push(ph);
    }
    let width = cons[0].len();
    let cm = Matrix::from_rows(field, width, cons);
    let sols = left_kernel(&cm);
    let sections = cover.sections();
    (0..sols.rows())
        .map(|s| {
            let coeffs = sols.row(s);
            Morphism {
                blocks: (0..nv)
                    .map(|u| {
                        let mut acc = Matrix::zeros(field, cover.proj.dims()[u], n.dims()[u]);
                        for (x, c) in coeffs.iter().enumerate() {
                            if !c.is_zero() {
                                acc = acc.add(&phis[u][x].scale(c));
                            }
                        }
                        sections[u].mul(&acc)
                    })
                    .collect(),
            }
        })
        .collect()
}

/// `dim Hom(X, N)` minus the dimension of the maps factoring through the
/// injective hull of `X`.
pub fn stable_hom_dim(x: &Representation, n: &Representation) -> usize {
    let hom = hom_dim(x, n);
    if hom == 0 {
        return 0;
    }
    let hull = injective_hull(x).expect("self-injective algebra");
    hom - hull.restriction_rank(n)
}
