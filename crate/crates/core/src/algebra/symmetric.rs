//! Symmetric forms, socles and idempotent subalgebras `eΛe`.

use serde::Serialize;

use crate::algebra::build::{AlgElem, BoundedAlgebra};
use crate::field::Scalar;
use crate::linalg::{kernel_basis, Matrix};
use crate::quiver::VertexId;

/// Basis of `soc(e_v Λ)`: elements of `e_v Λ` killed by every arrow.
pub fn socle_elements(alg: &BoundedAlgebra, v: VertexId) -> Vec<AlgElem> {
    let field = alg.field();
    let rows: Vec<usize> = (0..alg.dim())
        .filter(|&b| alg.basis_word(b).source == v)
        .collect();
    let q = alg.quiver();
    // columns: (arrow, basis index) for x·a
    let na = q.num_arrows();
    let d = alg.dim();
    let mut m = Matrix::zeros(field, rows.len(), na * d);
    for (i, &b) in rows.iter().enumerate() {
        for a in 0..na {
            for (k, c) in alg.basis_times_arrow(b, a) {
                m.set(i, a * d + k, c);
            }
        }
    }
    kernel_basis(&m.transpose())
        .into_iter()
        .map(|coeffs| {
            let mut x = alg.zero();
            for (i, c) in coeffs.into_iter().enumerate() {
                x[rows[i]] = c;
            }
            x
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub socle_dims: Vec<usize>,
    pub form_rank: usize,
    pub dim: usize,
    /// First basis pair `(x, y)` with `φ(xy) ≠ φ(yx)` for the socle form.
    pub failing_pair: Option<(String, String)>,
    /// `φ` as values on the basis.
    #[serde(skip)]
    pub form: Vec<Scalar>,
    /// Whether the form sending each socle generator to 1 already works, as
    /// opposed to one found by solving for symmetric forms.
    pub socle_form: bool,
}

fn gram(alg: &BoundedAlgebra, phi: &[Scalar]) -> Matrix {
    let d = alg.dim();
    let mut g = Matrix::zeros(alg.field(), d, d);
    for i in 0..d {
        for j in 0..d {
            let mut s = alg.field().zero();
            for (k, c) in alg.basis_product(i, j) {
                s.add_mul(&c, &phi[k]);
            }
            g.set(i, j, s);
        }
    }
    g
}

/// Checks that `Λ` carries a nondegenerate symmetric associative form.
///
/// The candidate form sends the leading path of each vertex's socle element
/// to the inverse of its coefficient and all other basis paths to zero. If
/// that form is not symmetric the space of symmetric forms supported on the
/// diagonal blocks is computed and its basis elements and their sum are tried.
pub fn check_symmetric(alg: &BoundedAlgebra) -> SymmetryReport {
    let field = alg.field();
    let d = alg.dim();
    let nv = alg.num_vertices();
    let socles: Vec<Vec<AlgElem>> = (0..nv).map(|v| socle_elements(alg, v)).collect();
    let socle_dims: Vec<usize> = socles.iter().map(Vec::len).collect();
    let mut phi = vec![field.zero(); d];
    for s in socles.iter().filter(|s| s.len() == 1) {
        let x = &s[0];
        if let Some(b) = (0..d).rev().find(|&b| !x[b].is_zero()) {
            phi[b] = x[b].inv().unwrap();
        }
    }
    let g = gram(alg, &phi);
    let failing = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .find(|&(i, j)| g.get(i, j) != g.get(j, i));
    if failing.is_none() {
        let rank = g.rank();
        if rank == d {
            return SymmetryReport {
                symmetric: true,
                socle_dims,
                form_rank: rank,
                dim: d,
                failing_pair: None,
                form: phi,
                socle_form: true,
            };
        }
    }
    let failing_pair = failing.map(|(i, j)| {
        (
            alg.basis_word(i).display(alg.quiver()),
            alg.basis_word(j).display(alg.quiver()),
        )
    });
    // solve for all symmetric forms vanishing off e_v Λ e_v
    let diag: Vec<usize> = (0..d)
        .filter(|&b| {
            let w = alg.basis_word(b);
            w.source == w.target
        })
        .collect();
    let mut eqs = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut row = vec![field.zero(); diag.len()];
            let mut nonzero = false;
            for (k, c) in alg.basis_product(i, j) {
                if let Some(p) = diag.iter().position(|&x| x == k) {
                    row[p] += &c;
                    nonzero = true;
                }
            }
            for (k, c) in alg.basis_product(j, i) {
                if let Some(p) = diag.iter().position(|&x| x == k) {
                    row[p] -= &c;
                    nonzero = true;
                }
            }
            if nonzero {
                eqs.push(row);
            }
        }
    }
    let sys = Matrix::from_rows(field, diag.len(), eqs);
    let sols = kernel_basis(&sys);
    let mut tries: Vec<Vec<Scalar>> = sols.clone();
    if sols.len() > 1 {
        let mut sum = vec![field.zero(); diag.len()];
        for (k, s) in sols.iter().enumerate() {
            let c = field.from_i64(k as i64 + 1);
            for (x, y) in sum.iter_mut().zip(s) {
                x.add_mul(&c, y);
            }
        }
        tries.push(sum);
    }
    let mut best_rank = 0;
    for t in tries {
        let mut phi = vec![field.zero(); d];
        for (p, &b) in diag.iter().enumerate() {
            phi[b] = t[p].clone();
        }
        let rank = gram(alg, &phi).rank();
        best_rank = best_rank.max(rank);
        if rank == d {
            return SymmetryReport {
                symmetric: true,
                socle_dims,
                form_rank: rank,
                dim: d,
                failing_pair,
                form: phi,
                socle_form: false,
            };
        }
    }
    SymmetryReport {
        symmetric: false,
        socle_dims,
        form_rank: best_rank,
        dim: d,
        failing_pair,
        form: Vec::new(),
        socle_form: false,
    }
}

/// `eΛe` for `e = Σ_{v∈E} e_v`, as the span of the basis paths of `Λ` that
/// start and end in `E`.
#[derive(Debug, Clone)]
pub struct IdempotentSubalgebra {
    pub vertices: Vec<VertexId>,
    /// Basis indices of `Λ` spanning `eΛe`.
    pub basis: Vec<usize>,
}

pub fn idempotent_subalgebra(alg: &BoundedAlgebra, vertices: &[VertexId]) -> IdempotentSubalgebra {
    let basis = (0..alg.dim())
        .filter(|&b| {
            let w = alg.basis_word(b);
            vertices.contains(&w.source) && vertices.contains(&w.target)
        })
        .collect();
    IdempotentSubalgebra {
        vertices: vertices.to_vec(),
        basis,
    }
}

impl IdempotentSubalgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &AlgElem) -> bool {
        x.iter()
            .enumerate()
            .all(|(b, c)| c.is_zero() || self.basis.contains(&b))
    }

    /// Dimension of the subalgebra generated by the given elements and the
    /// idempotents `e_v`, `v ∈ E`.
    pub fn generated_dim(&self, alg: &BoundedAlgebra, gens: &[AlgElem]) -> usize {
        let field = alg.field();
        let mut span: Vec<AlgElem> = self
            .vertices
            .iter()
            .map(|&v| alg.vertex_idempotent(v))
            .collect();
        let mut frontier = span.clone();
        let restrict = |x: &AlgElem| -> Vec<Scalar> { self.basis.iter().map(|&b| x[b].clone()).collect() };
        let mut rank = Matrix::from_rows(field, self.dim(), span.iter().map(restrict).collect()).rank();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for g in gens {
                    let y = alg.mul(x, g);
                    if BoundedAlgebra::is_zero_elem(&y) {
                        continue;
                    }
                    let mut cand = span.clone();
                    cand.push(y.clone());
                    let r = Matrix::from_rows(field, self.dim(), cand.iter().map(restrict).collect())
                        .rank();
                    if r > rank {
                        rank = r;
                        span.push(y.clone());
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        rank
    }
}
