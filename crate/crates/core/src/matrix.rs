//! Dense row-major matrices over GF(p) and the elimination kernels built on
//! them: rank, determinant, inverse, reduced echelon form and greedy column
//! bases. Pivoting always takes the smallest row index with a nonzero entry.

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from signed integer rows, reducing mod p.
    pub fn from_i64_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "ragged rows: {} vs {}",
                bad.len(),
                cols
            )));
        }
        Ok(Matrix::from_fn(field, rows.len(), cols, |i, j| {
            field.from_i64(rows[i][j])
        }))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
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
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// First offending position if `self` is not skew-symmetric with zero diagonal.
    pub fn skew_violation(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            if !self.get(i, i).is_zero() {
                return Some((i, i));
            }
            for j in i + 1..self.cols {
                if self.get(i, j) != self.field.neg(self.get(j, i)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|&x| f.neg(x)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: FieldElement) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|&x| f.mul(x, c)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = self.field;
        Ok(Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = self.field;
        Ok(Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
            ..self.clone()
        })
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o = f.add(*o, f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// The submatrix on the given row and column positions, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j])
        })
    }

    /// Principal submatrix on `idx`.
    pub fn principal(&self, idx: &[usize]) -> Matrix {
        self.submatrix(idx, idx)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * c);
        head[lo * c..(lo + 1) * c].swap_with_slice(&mut tail[..c]);
    }

    /// `row[target][from..] -= factor * row[src][from..]`.
    #[inline]
    fn eliminate_row(&mut self, target: usize, src: usize, factor: FieldElement, from: usize) {
        let c = self.cols;
        let f = self.field;
        let (t, s) = if target > src {
            let (head, tail) = self.data.split_at_mut(target * c);
            (&mut tail[..c], &head[src * c..(src + 1) * c])
        } else {
            let (head, tail) = self.data.split_at_mut(src * c);
            (&mut head[target * c..(target + 1) * c], &tail[..c])
        };
        for (x, &y) in t[from..].iter_mut().zip(&s[from..]) {
            *x = f.sub_mul(*x, factor, y);
        }
    }

    /// Forward elimination in place. Returns the pivot columns and the sign
    /// of the row permutation applied. With `reduce`, also clears entries
    /// above each pivot and normalizes pivots to one (reduced echelon form).
    fn eliminate(&mut self, reduce: bool) -> (Vec<usize>, bool) {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut flipped = false;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                self.swap_rows(p, r);
                flipped = !flipped;
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            if reduce {
                let cols = self.cols;
                for x in &mut self.data[r * cols + c..(r + 1) * cols] {
                    *x = f.mul(*x, inv);
                }
                for i in 0..self.rows {
                    if i != r {
                        let factor = self.get(i, c);
                        if !factor.is_zero() {
                            self.eliminate_row(i, r, factor, c);
                        }
                    }
                }
            } else {
                for i in r + 1..self.rows {
                    let a = self.get(i, c);
                    if !a.is_zero() {
                        self.eliminate_row(i, r, f.mul(a, inv), c);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, flipped)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(false).0.len()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<FieldElement> {
        let n = self.require_square()?;
        let f = self.field;
        let mut m = self.clone();
        let (pivots, flipped) = m.eliminate(false);
        if pivots.len() < n {
            return Ok(FieldElement::ZERO);
        }
        let mut d = FieldElement::ONE;
        for i in 0..n {
            d = f.mul(d, m.get(i, i));
        }
        Ok(if flipped { f.neg(d) } else { d })
    }

    pub fn is_nonsingular(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn echelon(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let (pivots, _) = m.eliminate(true);
        (m, pivots)
    }

    /// Inverse by Gauss-Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        let f = self.field;
        let mut aug = Matrix::from_fn(f, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else if j - n == i {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            }
        });
        let (pivots, _) = aug.eliminate(true);
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(f, n, n, |i, j| aug.get(i, n + j)))
    }

    /// Greedy column basis in the given column order: a column is taken iff
    /// it is independent of the columns already taken. Returns positions
    /// (into the original column indexing) in the order they were taken.
    pub fn lexmin_column_basis(&self, order: &[usize]) -> Vec<usize> {
        let permuted = self.submatrix(&(0..self.rows).collect::<Vec<_>>(), order);
        let mut m = permuted;
        let (pivots, _) = m.eliminate(false);
        pivots.into_iter().map(|c| order[c]).collect()
    }

    /// Whether the given columns are linearly independent.
    pub fn columns_independent(&self, cols: &[usize]) -> bool {
        if cols.len() > self.rows {
            return false;
        }
        let all_rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all_rows, cols).rank() == cols.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::seeded_rng;

    fn f() -> PrimeField {
        PrimeField::mersenne61()
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(f(), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn random(rows: usize, cols: usize, seed: u64) -> Matrix {
        let f = f();
        let mut rng = seeded_rng(seed);
        Matrix::from_fn(f, rows, cols, |_, _| f.sample_uniform(&mut rng))
    }

    /// Cofactor expansion, independent of elimination.
    fn det_laplace(a: &Matrix) -> FieldElement {
        let f = a.field();
        let n = a.rows();
        if n == 0 {
            return FieldElement::ONE;
        }
        let mut acc = FieldElement::ZERO;
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let term = f.mul(a.get(0, j), det_laplace(&a.submatrix(&rows, &cols)));
            acc = if j % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
        }
        acc
    }

    #[test]
    fn identity_det_and_rank() {
        let i = Matrix::identity(f(), 5);
        assert_eq!(i.det().unwrap(), FieldElement::ONE);
        assert_eq!(i.rank(), 5);
        assert_eq!(Matrix::zeros(f(), 3, 3).rank(), 0);
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        for seed in 0..50 {
            let a = random(5, 5, seed);
            assert_eq!(a.det().unwrap(), det_laplace(&a));
        }
        let j2 = m(&[&[0, 1], &[-1, 0]]);
        assert_eq!(j2.det().unwrap(), FieldElement::ONE);
        assert!(matches!(
            random(2, 3, 0).det(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let j2 = m(&[&[0, 1], &[-1, 0]]);
        assert_eq!(j2.inverse().unwrap(), m(&[&[0, -1], &[1, 0]]));
        for seed in 0..20 {
            let a = random(6, 6, seed);
            let inv = a.inverse().unwrap();
            assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(f(), 6));
        }
        let singular = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.inverse(), Err(Error::Singular));
    }

    #[test]
    fn echelon_pivots() {
        let a = m(&[&[1, 2, 0], &[2, 4, 1], &[3, 6, 1]]);
        let (e, piv) = a.echelon();
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(e.row(0), m(&[&[1, 2, 0]]).row(0));
        assert!(e.row(2).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn lexmin_basis_skips_dependent_columns() {
        let i3 = Matrix::identity(f(), 3);
        assert_eq!(i3.lexmin_column_basis(&[2, 0, 1]), vec![2, 0, 1]);
        // col1 = 2 * col0
        let a = m(&[&[1, 2, 0], &[1, 2, 1]]);
        assert_eq!(a.lexmin_column_basis(&[0, 1, 2]), vec![0, 2]);
        assert_eq!(a.lexmin_column_basis(&[1, 0, 2]), vec![1, 2]);
    }

    #[test]
    fn lexmin_basis_matches_subset_enumeration() {
        let f = f();
        for seed in 0..30 {
            // Rank-deficient 6x9 so that the greedy choice is non-trivial.
            let mut rng = seeded_rng(seed);
            let l = Matrix::from_fn(f, 6, 3, |_, _| f.sample_uniform(&mut rng));
            let r = Matrix::from_fn(f, 3, 9, |_, _| {
                if rand::Rng::gen_bool(&mut rng, 0.5) {
                    f.sample_uniform(&mut rng)
                } else {
                    FieldElement::ZERO
                }
            });
            let a = l.mul(&r).unwrap();
            let order: Vec<usize> = (0..9).collect();
            let mut greedy = a.lexmin_column_basis(&order);
            greedy.sort_unstable();
            let rank = a.rank();
            // Lexicographically smallest independent subset of size `rank`.
            let mut best: Option<Vec<usize>> = None;
            for mask in 0u32..(1 << 9) {
                if mask.count_ones() as usize != rank {
                    continue;
                }
                let cols: Vec<usize> = (0..9).filter(|&c| mask >> c & 1 == 1).collect();
                if a.columns_independent(&cols) && best.as_ref().is_none_or(|b| cols < *b) {
                    best = Some(cols);
                }
            }
            assert_eq!(Some(greedy), best, "seed {seed}");
        }
    }

    #[test]
    fn skew_check() {
        assert_eq!(m(&[&[0, 1], &[-1, 0]]).skew_violation(), None);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).skew_violation(), Some((0, 1)));
        assert_eq!(m(&[&[1, 0], &[0, 0]]).skew_violation(), Some((0, 0)));
    }
}
