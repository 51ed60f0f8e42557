//! Dense exact linear algebra over Q(i).
//!
//! Sizes here are tiny (nothing exceeds 47 columns), so the implementation
//! favours exactness and determinism over asymptotics: classical Gauss-Jordan
//! with per-step pivot normalization, always picking the first nonzero pivot.
//! Reduced rationals make every intermediate entry canonical, so ranks,
//! kernels and solution spaces are exact and reproducible.

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Scalar::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        Matrix {
            rows: nr,
            cols: nc,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: Vec<Vec<Scalar>>) -> Self {
        Matrix::from_rows(cols).transpose()
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Side-by-side concatenation; both matrices must have equal row counts.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "mul dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.at(k, c);
                if b.is_zero() {
                    continue;
                }
                acc += a * b;
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += a * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - other.at(r, c))
    }

    /// In-place reduced row echelon form; returns the pivot column indices.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&k| !self.at(k, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.at(r, c).inv();
            if !inv.is_one() {
                for j in c..self.cols {
                    if !self.at(r, j).is_zero() {
                        let v = self.at(r, j) * &inv;
                        self.set(r, j, v);
                    }
                }
            }
            for k in 0..self.rows {
                if k == r || self.at(k, c).is_zero() {
                    continue;
                }
                let factor = self.at(k, c).clone();
                for j in c..self.cols {
                    if !self.at(r, j).is_zero() {
                        let v = self.at(k, j) - &(self.at(r, j) * &factor);
                        self.set(k, j, v);
                    }
                }
                self.set(k, c, Scalar::zero());
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel { v : A v = 0 }, one vector per free column,
    /// in increasing free-column order. The basis is canonical: entry at its
    /// own free column is 1, at other free columns 0.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (m, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.at(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of A x = b (free variables set to zero), or None when
    /// the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len(), "solve dimension mismatch");
        let rhs = Matrix::from_columns(vec![b.to_vec()]);
        let (m, pivots) = self.hcat(&rhs).rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = m.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Exact inverse, or None for singular/non-square input.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (m, pivots) = self.hcat(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| m.at(r, n + c).clone()))
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        let mut acc = Scalar::zero();
        for i in 0..self.rows {
            acc += self.at(i, i);
        }
        acc
    }

    /// Determinant by elimination without normalization (square input only).
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&k| !m.at(k, c).is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m.at(c, c).clone();
            det *= &pivot;
            let inv = pivot.inv();
            for k in (c + 1)..n {
                if m.at(k, c).is_zero() {
                    continue;
                }
                let factor = m.at(k, c) * &inv;
                for j in c..n {
                    if !m.at(c, j).is_zero() {
                        let v = m.at(k, j) - &(m.at(c, j) * &factor);
                        m.set(k, j, v);
                    }
                }
            }
        }
        det
    }

    /// Indices of a column subset forming a basis of the column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().1
    }
}

/// A subspace of Q(i)^n kept in canonical reduced row echelon form.
///
/// Because the stored basis is the unique rref basis, two spans are equal as
/// subspaces iff their stored rows are equal, which makes exact
/// solution-space comparisons trivial.
#[derive(Clone, Debug)]
pub struct RowSpan {
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(cols: usize) -> Self {
        RowSpan {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(cols: usize, vecs: impl IntoIterator<Item = &'a [Scalar]>) -> Self {
        let mut span = RowSpan::new(cols);
        for v in vecs {
            span.insert(v);
        }
        span
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.cols
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    fn reduce_in_place(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for j in p..self.cols {
                if !row[j].is_zero() {
                    v[j] = &v[j] - &(&row[j] * &factor);
                }
            }
            v[p] = Scalar::zero();
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Adds a vector to the span. Returns true when the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv();
        for x in w.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // back-eliminate the new pivot from existing rows
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for j in p..self.cols {
                if !w[j].is_zero() {
                    row[j] = &row[j] - &(&w[j] * &factor);
                }
            }
            row[p] = Scalar::zero();
        }
        let idx = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(idx, p);
        self.rows.insert(idx, w);
        true
    }
}

impl PartialEq for RowSpan {
    fn eq(&self, other: &Self) -> bool {
        self.cols == other.cols && self.rows == other.rows
    }
}

impl Eq for RowSpan {}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
        let pool = [
            Scalar::zero(),
            Scalar::one(),
            -Scalar::one(),
            Scalar::i(),
            -Scalar::i(),
            Scalar::from_int(2),
            Scalar::gauss(1, 1, 1, 1),
            Scalar::rational(1, 2),
        ];
        pool[rng.gen_range(0..pool.len())].clone()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| random_scalar(rng))
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let id = Matrix::identity(4);
        assert_eq!(id.rank(), 4);
        assert!(id.kernel_basis().is_empty());
        assert!(id.det().is_one());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let z = Matrix::zeros(3, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis().len(), 3);
        assert!(z.det().is_zero());
    }

    #[test]
    fn kernel_of_one_by_two_row() {
        // [1, i] x = 0  =>  x = t (-i, 1)
        let m = Matrix::from_rows(vec![vec![Scalar::one(), Scalar::i()]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![-Scalar::i(), Scalar::one()]]);
        assert!(m.mul_vec(&k[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn outer_product_has_rank_one() {
        let v = vec![s(1), Scalar::i(), s(2)];
        let w = vec![s(3), s(-1), Scalar::gauss(0, 1, 1, 2), s(0)];
        let m = Matrix::from_fn(3, 4, |r, c| &v[r] * &w[c]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_finds_exact_solutions() {
        let a = Matrix::from_rows(vec![
            vec![s(1), s(2), s(0)],
            vec![s(0), Scalar::i(), s(1)],
        ]);
        let b = vec![s(5), Scalar::gauss(1, 1, 2, 1)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);

        // inconsistent: duplicate row with different rhs
        let bad = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(1), s(1)]]);
        assert!(bad.solve(&[s(1), s(2)]).is_none());
    }

    #[test]
    fn inverse_round_trips() {
        let a = Matrix::from_rows(vec![
            vec![s(1), Scalar::i(), s(0)],
            vec![s(0), s(2), s(1)],
            vec![s(1), s(0), s(1)],
        ]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert_eq!(inv.mul(&a), Matrix::identity(3));

        let singular = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn det_of_small_cases() {
        let a = Matrix::from_rows(vec![vec![s(1), Scalar::i()], vec![Scalar::i(), s(1)]]);
        assert_eq!(a.det(), s(2));
        let b = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert!(b.det().is_zero());
    }

    #[test]
    fn rank_nullity_and_kernel_annihilation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let m = random_matrix(&mut rng, 4, 6);
            let k = m.kernel_basis();
            assert_eq!(m.rank() + k.len(), 6);
            for v in &k {
                assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
            }
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn rref_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let m = random_matrix(&mut rng, 5, 5);
            let (r1, p1) = m.rref();
            let (r2, p2) = r1.rref();
            assert_eq!(r1, r2);
            assert_eq!(p1, p2);
        }
    }

    #[test]
    fn row_span_is_canonical() {
        let mut a = RowSpan::new(3);
        a.insert(&[s(2), s(0), s(2)]);
        a.insert(&[s(0), s(3), s(3)]);
        let mut b = RowSpan::new(3);
        b.insert(&[s(1), s(1), s(2)]);
        b.insert(&[s(1), s(-1), s(0)]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[s(5), s(-7), s(-2)]));
        assert!(!a.contains(&[s(0), s(0), s(1)]));
        // inserting a dependent vector does not grow the span
        let mut c = a.clone();
        assert!(!c.insert(&[s(3), s(3), s(6)]));
        assert_eq!(c, a);
    }

    #[test]
    fn row_span_matches_matrix_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let m = random_matrix(&mut rng, 6, 5);
            let span = RowSpan::from_vectors(5, (0..6).map(|r| m.row(r)));
            assert_eq!(span.dim(), m.rank());
        }
    }
}
