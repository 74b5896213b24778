//! Dense exact linear algebra over a [`Field`].
//!
//! Vectors are rows: a matrix `A` acts by `x ↦ x·A`. Subspaces are carried
//! as matrices whose rows are a basis, normally in reduced row echelon form.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            field,
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Scalar> {
        self.row(r).to_vec()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row_vec(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.get_mut(r, c).add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { data, ..*self }
    }

    /// `x·A` for a row vector `x`.
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.rows, "vector length mismatch");
        let mut out = vec![self.field.zero(); self.cols];
        for (k, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let b = self.get(k, c);
                if !b.is_zero() {
                    o.add_mul(a, b);
                }
            }
        }
        out
    }

    /// `A·v` for a column vector `v`.
    pub fn apply_col(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend(self.row(r).iter().cloned());
        }
        Matrix {
            field: self.field,
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form and pivot columns. Pivoting is deterministic:
/// columns left to right, first row with a nonzero entry.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let pivots = rref_in_place(&mut a);
    (a, pivots)
}

pub fn rref_in_place(a: &mut Matrix) -> Vec<usize> {
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut pr = 0;
    let mut nz: Vec<usize> = Vec::with_capacity(cols);
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(sel) = (pr..rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        if sel != pr {
            for k in c..cols {
                a.data.swap(sel * cols + k, pr * cols + k);
            }
        }
        let inv = a.get(pr, c).inv().expect("pivot is nonzero");
        nz.clear();
        for k in c..cols {
            let v = a.get(pr, k);
            if !v.is_zero() {
                let scaled = v * &inv;
                a.set(pr, k, scaled);
                nz.push(k);
            }
        }
        for r in 0..rows {
            if r == pr {
                continue;
            }
            let f = a.get(r, c).clone();
            if f.is_zero() {
                continue;
            }
            let f = -f;
            for &k in &nz {
                let (src, dst) = (pr * cols + k, r * cols + k);
                let p = a.data[src].clone();
                a.data[dst].add_mul(&f, &p);
            }
        }
        pivots.push(c);
        pr += 1;
    }
    pivots
}

/// Basis of the right null space `{v : A·v = 0}`; its size is `cols − rank`.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(m);
    let field = m.field();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); m.cols()];
        v[free] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, free);
        }
        basis.push(v);
    }
    basis
}

/// Basis of the left null space `{x : x·A = 0}` as rows.
pub fn left_kernel(m: &Matrix) -> Matrix {
    let basis = kernel_basis(&m.transpose());
    Matrix::from_rows(m.field(), m.rows(), basis)
}

/// Some `x` with `A·x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let field = m.field();
    let mut aug = Matrix::zeros(field, m.rows(), m.cols() + 1);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, m.cols(), b[r].clone());
    }
    let pivots = rref_in_place(&mut aug);
    if pivots.last() == Some(&m.cols()) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); m.cols()];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(i, m.cols()).clone();
    }
    Ok(Some(x))
}

/// Solves `x·A = b` for a row vector `x`.
pub fn solve_left(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    solve(&m.transpose(), b)
}

/// The nonzero rows of the RREF of `m`: a canonical basis of its row space.
pub fn row_space(m: &Matrix) -> Matrix {
    let (r, pivots) = rref(m);
    r.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
}

fn check_ambient(a: &Matrix, b: &Matrix) -> Result<(), LinalgError> {
    if a.cols() != b.cols() {
        return Err(LinalgError::DimensionMismatch(format!(
            "subspaces of ambient dimension {} and {}",
            a.cols(),
            b.cols()
        )));
    }
    Ok(())
}

/// Canonical basis of `A + B` (rows span the subspaces).
pub fn sum_subspaces(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    check_ambient(a, b)?;
    Ok(row_space(&a.vstack(b)))
}

/// Canonical basis of `A ∩ B` (rows span the subspaces).
pub fn intersect_subspaces(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    check_ambient(a, b)?;
    let a = row_space(a);
    let b = row_space(b);
    if a.rows() == 0 || b.rows() == 0 {
        return Ok(Matrix::zeros(a.field(), 0, a.cols()));
    }
    // x·A = y·B  <=>  (x, -y) in the left kernel of [A; B]
    let stacked = a.vstack(&b);
    let lk = left_kernel(&stacked);
    let coeffs = lk.select_cols(&(0..a.rows()).collect::<Vec<_>>());
    Ok(row_space(&coeffs.mul(&a)))
}

/// Complement of `sub` inside `ambient`, together with the projection
/// `ambient → ambient/sub` in complement coordinates.
#[derive(Debug, Clone)]
pub struct Quotient {
    /// Rows: vectors of the ambient space spanning a complement of `sub`.
    pub complement: Matrix,
    /// `ambient.rows() × complement.rows()`: the image of each ambient
    /// basis row in the quotient.
    pub projection: Matrix,
}

/// `ambient` and `sub` are row bases in a common coordinate space with
/// `span(sub) ⊆ span(ambient)`.
pub fn quotient_basis(ambient: &Matrix, sub: &Matrix) -> Result<Quotient, LinalgError> {
    check_ambient(ambient, sub)?;
    let field = ambient.field();
    let sub = row_space(sub);
    // greedily extend sub by ambient rows
    let mut acc = sub.clone();
    let mut rank = acc.rows();
    let mut chosen = Vec::new();
    for r in 0..ambient.rows() {
        let mut trial = acc.clone();
        trial.push_row(ambient.row_vec(r));
        let t = trial.rank();
        if t > rank {
            rank = t;
            acc = trial;
            chosen.push(r);
        }
    }
    if rank < sub.rows() + chosen.len() || !is_subspace(&sub, ambient) {
        return Err(LinalgError::DimensionMismatch(
            "subspace is not contained in the ambient space".into(),
        ));
    }
    let complement = ambient.select_rows(&chosen);
    // express every ambient row in the basis [complement; sub]
    let basis = complement.vstack(&sub);
    let mut projection = Matrix::zeros(field, ambient.rows(), complement.rows());
    for r in 0..ambient.rows() {
        let coeffs = solve_left(&basis, ambient.row(r))?
            .expect("ambient row lies in complement + sub");
        for j in 0..complement.rows() {
            projection.set(r, j, coeffs[j].clone());
        }
    }
    Ok(Quotient {
        complement,
        projection,
    })
}

/// Whether `span(a) ⊆ span(b)`.
pub fn is_subspace(a: &Matrix, b: &Matrix) -> bool {
    let rb = b.rank();
    b.vstack(a).rank() == rb
}

/// Coordinates of `v` relative to an RREF basis with the given pivots, or
/// `None` if `v` is outside the span.
pub fn coords_in_rref(basis: &Matrix, pivots: &[usize], v: &[Scalar]) -> Option<Vec<Scalar>> {
    let coords: Vec<Scalar> = pivots.iter().map(|&p| v[p].clone()).collect();
    let recon = basis.apply(&coords);
    if recon.as_slice() == v {
        Some(coords)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rref_identity_and_rank_one() {
        let id = Matrix::identity(Q, 2);
        let (r, p) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1]);

        let m = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]);
        let (r, p) = rref(&m);
        assert_eq!(r, Matrix::from_i64(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernels_of_trivial_matrices() {
        assert!(kernel_basis(&Matrix::identity(Q, 4)).is_empty());
        assert_eq!(kernel_basis(&Matrix::zeros(Q, 3, 3)).len(), 3);
    }

    #[test]
    fn solve_trivial_systems() {
        let b: Vec<Scalar> = [3, -1, 7].iter().map(|&x| Q.from_i64(x)).collect();
        assert_eq!(solve(&Matrix::identity(Q, 3), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&Matrix::zeros(Q, 3, 3), &b).unwrap(), None);
        assert!(solve(&Matrix::identity(Q, 2), &b).is_err());
    }

    #[test]
    fn subspace_lattice_basics() {
        let a = Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 1, 0]]);
        let i = intersect_subspaces(&a, &a).unwrap();
        assert_eq!(i, row_space(&a));
        let b = Matrix::from_i64(Q, &[&[0, 0, 1]]);
        assert_eq!(intersect_subspaces(&a, &b).unwrap().rows(), 0);
        assert_eq!(sum_subspaces(&a, &b).unwrap().rows(), 3);
        assert!(intersect_subspaces(&a, &Matrix::zeros(Q, 1, 2)).is_err());

        let q = quotient_basis(&Matrix::identity(Q, 3), &a).unwrap();
        assert_eq!(q.complement.rows(), 1);
        assert_eq!(q.projection.rows(), 3);
        // the projection kills `a`
        for r in 0..a.rows() {
            let mut img = vec![Q.zero(); 1];
            for (j, x) in a.row(r).iter().enumerate() {
                img[0].add_mul(x, q.projection.get(j, 0));
            }
            assert!(img[0].is_zero());
        }
    }

    /// Rank as the size of the largest nonvanishing minor, via cofactor
    /// expansion. Exponential, so only for small matrices.
    fn det(m: &[Vec<Scalar>]) -> Scalar {
        let n = m.len();
        if n == 0 {
            return Q.one();
        }
        let mut acc = Q.zero();
        for c in 0..n {
            if m[0][c].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Scalar>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][c] * &det(&minor);
            acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    fn minor_rank(m: &Matrix) -> usize {
        let top = m.rows().min(m.cols());
        for k in (1..=top).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub: Vec<Vec<Scalar>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| m.get(r, c).clone()).collect())
                        .collect();
                    if !det(&sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        // low-rank products appear often enough with small entries
        proptest::collection::vec(-2i64..=2, rows * cols).prop_map(move |v| {
            let rows_v: Vec<Vec<Scalar>> =
                v.chunks(cols).map(|c| c.iter().map(|&x| Q.from_i64(x)).collect()).collect();
            Matrix::from_rows(Q, cols, rows_v)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn rank_matches_minor_oracle(m in arb_matrix(5, 7)) {
            prop_assert_eq!(m.rank(), minor_rank(&m));
        }

        #[test]
        fn rank_nullity_and_kernel(m in arb_matrix(4, 6)) {
            let ker = kernel_basis(&m);
            prop_assert_eq!(ker.len() + m.rank(), m.cols());
            for v in &ker {
                prop_assert!(m.apply_col(v).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn rref_is_idempotent(m in arb_matrix(4, 5)) {
            let (r, p) = rref(&m);
            let (rr, pp) = rref(&r);
            prop_assert_eq!(r, rr);
            prop_assert_eq!(p, pp);
        }

        #[test]
        fn consistent_systems_are_solved(m in arb_matrix(4, 5), x in proptest::collection::vec(-3i64..=3, 5)) {
            let x: Vec<Scalar> = x.iter().map(|&v| Q.from_i64(v)).collect();
            let b = m.apply_col(&x);
            let sol = solve(&m, &b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.apply_col(&sol), b);
        }

        #[test]
        fn subspace_dimension_formula(a in arb_matrix(3, 6), b in arb_matrix(4, 6)) {
            let s = sum_subspaces(&a, &b).unwrap();
            let i = intersect_subspaces(&a, &b).unwrap();
            prop_assert_eq!(a.rank() + b.rank(), s.rows() + i.rows());
            prop_assert!(is_subspace(&i, &a) && is_subspace(&i, &b));
        }
    }
}
