//! Skew-symmetric matrices: the Pfaffian, principal pivoting, the Pfaffian
//! Schur complement, and the classical Pfaffian identities kept as
//! executable checks.

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::labels::Labels;
use crate::matrix::Matrix;

/// Brute-force Pfaffian size guard.
pub const BRUTEFORCE_LIMIT: usize = 12;

/// Pfaffian by skew-symmetric elimination, O(n^3).
///
/// Odd order gives zero, the empty matrix gives one. Only the strict upper
/// triangle of `a` is read.
pub fn pfaffian(a: &Matrix) -> FieldElement {
    let n = a.rows();
    debug_assert!(a.is_square());
    if n % 2 == 1 {
        return FieldElement::ZERO;
    }
    let f = a.field();
    let mut m: Vec<FieldElement> = (0..n * n).map(|x| a.get(x / n, x % n)).collect();
    let mut pf = FieldElement::ONE;
    let mut u = vec![FieldElement::ZERO; n];
    let mut v = vec![FieldElement::ZERO; n];
    let mut k = 0;
    while k < n {
        let Some(p) = (k + 1..n).find(|&p| !m[k * n + p].is_zero()) else {
            return FieldElement::ZERO;
        };
        if p != k + 1 {
            swap_index(&mut m, n, f, k, k + 1, p);
            pf = f.neg(pf);
        }
        let piv = m[k * n + k + 1];
        pf = f.mul(pf, piv);
        let inv = f.inv(piv).expect("pivot is nonzero");
        for j in k + 2..n {
            u[j] = f.mul(m[k * n + j], inv);
            v[j] = m[(k + 1) * n + j];
        }
        // Trailing block += v u^T - u v^T (upper triangle only).
        for i in k + 2..n {
            let (ui, vi) = (u[i], v[i]);
            if ui.is_zero() && vi.is_zero() {
                continue;
            }
            let row = &mut m[i * n + i + 1..(i + 1) * n];
            for ((x, &uj), &vj) in row.iter_mut().zip(&u[i + 1..]).zip(&v[i + 1..]) {
                *x = f.add(*x, f.sub(f.mul(vi, uj), f.mul(ui, vj)));
            }
        }
        k += 2;
    }
    pf
}

/// Swaps indices `q < p` (rows and columns) of an upper-triangle-stored
/// skew matrix, restricted to the active range `from..n`.
fn swap_index(m: &mut [FieldElement], n: usize, f: PrimeField, from: usize, q: usize, p: usize) {
    let get = |m: &[FieldElement], i: usize, j: usize| {
        if i < j {
            m[i * n + j]
        } else {
            f.neg(m[j * n + i])
        }
    };
    let set = |m: &mut [FieldElement], i: usize, j: usize, x: FieldElement| {
        if i < j {
            m[i * n + j] = x;
        } else {
            m[j * n + i] = f.neg(x);
        }
    };
    for r in from..n {
        if r == q || r == p {
            continue;
        }
        let a = get(m, r, q);
        let b = get(m, r, p);
        set(m, r, q, b);
        set(m, r, p, a);
    }
    let qp = m[q * n + p];
    m[q * n + p] = f.neg(qp);
}

/// Sign of a permutation given as a sequence of distinct integers, by
/// inversion counting.
pub fn permutation_sign(seq: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions.is_multiple_of(2)
}

/// Pfaffian as the signed sum over perfect matchings of the support graph.
pub fn pfaffian_bruteforce(a: &Matrix) -> Result<FieldElement> {
    let n = a.require_square()?;
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    if n % 2 == 1 {
        return Ok(FieldElement::ZERO);
    }
    let f = a.field();
    let mut used = vec![false; n];
    let mut seq = Vec::with_capacity(n);
    let mut acc = FieldElement::ZERO;
    matchings(a, f, &mut used, &mut seq, FieldElement::ONE, &mut acc);
    Ok(acc)
}

fn matchings(
    a: &Matrix,
    f: PrimeField,
    used: &mut [bool],
    seq: &mut Vec<usize>,
    prod: FieldElement,
    acc: &mut FieldElement,
) {
    let Some(i) = used.iter().position(|&u| !u) else {
        let term = if permutation_sign(seq) { prod } else { f.neg(prod) };
        *acc = f.add(*acc, term);
        return;
    };
    used[i] = true;
    for j in i + 1..used.len() {
        if used[j] || a.get(i, j).is_zero() {
            continue;
        }
        used[j] = true;
        seq.push(i);
        seq.push(j);
        matchings(a, f, used, seq, f.mul(prod, a.get(i, j)), acc);
        seq.truncate(seq.len() - 2);
        used[j] = false;
    }
    used[i] = false;
}

/// Principal pivot `A * S` on the positions `s`:
/// `[[B^-1, B^-1 C], [C^T B^-1, D + C^T B^-1 C]]` with `B = A[S]`,
/// laid out in the original index order.
pub fn pivot(a: &Matrix, s: &[usize]) -> Result<Matrix> {
    let n = a.require_square()?;
    let f = a.field();
    let mut in_s = vec![false; n];
    for &i in s {
        in_s[i] = true;
    }
    let s: Vec<usize> = (0..n).filter(|&i| in_s[i]).collect();
    let r: Vec<usize> = (0..n).filter(|&i| !in_s[i]).collect();
    let b_inv = a
        .principal(&s)
        .inverse()
        .map_err(|_| Error::SingularPivotBlock)?;
    let c = a.submatrix(&s, &r);
    let b_inv_c = b_inv.mul(&c)?;
    let ct_b_inv_c = c.transpose().mul(&b_inv_c)?;
    let mut out = Matrix::zeros(f, n, n);
    for (x, &i) in s.iter().enumerate() {
        for (y, &j) in s.iter().enumerate() {
            out.set(i, j, b_inv.get(x, y));
        }
        for (y, &j) in r.iter().enumerate() {
            out.set(i, j, b_inv_c.get(x, y));
            out.set(j, i, f.neg(b_inv_c.get(x, y)));
        }
    }
    for (x, &i) in r.iter().enumerate() {
        for (y, &j) in r.iter().enumerate() {
            out.set(i, j, f.add(a.get(i, j), ct_b_inv_c.get(x, y)));
        }
    }
    Ok(out)
}

/// The embedding `[[O, M], [-M^T, O]]`.
pub fn bipartite_embedding(m: &Matrix) -> Matrix {
    let f = m.field();
    let (r, c) = (m.rows(), m.cols());
    Matrix::from_fn(f, r + c, r + c, |i, j| match (i < r, j < r) {
        (true, false) => m.get(i, j - r),
        (false, true) => f.neg(m.get(j, i - r)),
        _ => FieldElement::ZERO,
    })
}

/// `det M` computed as `(-1)^{n(n-1)/2} Pf [[O, M], [-M^T, O]]`.
pub fn det_via_pf_embedding(m: &Matrix) -> Result<FieldElement> {
    let n = m.require_square()?;
    let pf = pfaffian(&bipartite_embedding(m));
    let f = m.field();
    Ok(if (n * n.saturating_sub(1) / 2) % 2 == 0 {
        pf
    } else {
        f.neg(pf)
    })
}

/// Result of splitting a Pfaffian along a nonsingular principal block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchurPfaffian {
    /// `Pf A[S]`.
    pub block: FieldElement,
    /// Pfaffian of the Schur complement `D + C^T B^-1 C`, rows in ambient order.
    pub complement: FieldElement,
    /// Sign of the shuffle moving `S` in front of the remaining indices.
    pub positive: bool,
}

impl SchurPfaffian {
    /// Equals `Pf A`.
    pub fn product(&self, f: PrimeField) -> FieldElement {
        let p = f.mul(self.block, self.complement);
        if self.positive {
            p
        } else {
            f.neg(p)
        }
    }
}

pub fn schur_pf(a: &Matrix, s: &[usize]) -> Result<SchurPfaffian> {
    let n = a.require_square()?;
    let mut in_s = vec![false; n];
    for &i in s {
        in_s[i] = true;
    }
    let s: Vec<usize> = (0..n).filter(|&i| in_s[i]).collect();
    let r: Vec<usize> = (0..n).filter(|&i| !in_s[i]).collect();
    let b = a.principal(&s);
    let b_inv = b.inverse().map_err(|_| Error::SingularPivotBlock)?;
    let c = a.submatrix(&s, &r);
    let schur = a.principal(&r).add(&c.transpose().mul(&b_inv.mul(&c)?)?)?;
    let order: Vec<usize> = s.iter().chain(&r).copied().collect();
    Ok(SchurPfaffian {
        block: pfaffian(&b),
        complement: pfaffian(&schur),
        positive: permutation_sign(&order),
    })
}

/// `sum_U sigma_U Pf A1[U] Pf A2[V \ U]`, where `sigma_U` is the sign of the
/// shuffle listing `U` then `V \ U`, each ascending. Equals `Pf (A1 + A2)`.
pub fn pfaffian_sum_check(a1: &Matrix, a2: &Matrix) -> Result<FieldElement> {
    let n = a1.require_square()?;
    if a2.rows() != n || a2.cols() != n {
        return Err(Error::DimensionMismatch("pfaffian sum operands".into()));
    }
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let f = a1.field();
    let mut acc = FieldElement::ZERO;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let u: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let w: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
        let term = f.mul(pfaffian(&a1.principal(&u)), pfaffian(&a2.principal(&w)));
        let order: Vec<usize> = u.iter().chain(&w).copied().collect();
        acc = if permutation_sign(&order) {
            f.add(acc, term)
        } else {
            f.sub(acc, term)
        };
    }
    Ok(acc)
}

/// Largest `n` accepted by [`ishikawa_wakayama_check`] for a `2n x 2n` matrix.
pub const MINOR_SUMMATION_LIMIT: usize = 5;

/// `sum_{U in C([2n], 2k)} det B[., U] Pf A[U]`, which equals `Pf (B A B^T)`.
pub fn ishikawa_wakayama_check(a: &Matrix, b: &Matrix) -> Result<FieldElement> {
    let two_n = a.require_square()?;
    if two_n % 2 == 1 || b.rows() % 2 == 1 || b.cols() != two_n || b.rows() > two_n {
        return Err(Error::DimensionMismatch(format!(
            "need skew 2n x 2n and 2k x 2n with k <= n, got {two_n}x{two_n} and {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    if two_n / 2 > MINOR_SUMMATION_LIMIT {
        return Err(Error::TooLarge {
            size: two_n / 2,
            limit: MINOR_SUMMATION_LIMIT,
        });
    }
    let f = a.field();
    let two_k = b.rows();
    let all_rows: Vec<usize> = (0..two_k).collect();
    let mut acc = FieldElement::ZERO;
    for mask in 0u32..(1 << two_n) {
        if mask.count_ones() as usize != two_k {
            continue;
        }
        let u: Vec<usize> = (0..two_n).filter(|&i| mask >> i & 1 == 1).collect();
        let d = b.submatrix(&all_rows, &u).det()?;
        acc = f.add(acc, f.mul(d, pfaffian(&a.principal(&u))));
    }
    Ok(acc)
}

/// A skew-symmetric matrix with zero diagonal whose rows and columns are
/// named by [`Labels`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix {
    labels: Labels,
    matrix: Matrix,
}

impl SkewMatrix {
    pub fn new(labels: Labels, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != labels.len() || !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for a {}x{} matrix",
                labels.len(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if let Some((row, col)) = matrix.skew_violation() {
            return Err(Error::NotSkewSymmetric { row, col });
        }
        Ok(SkewMatrix { labels, matrix })
    }

    pub fn zeros(field: PrimeField, labels: Labels) -> Self {
        let n = labels.len();
        SkewMatrix {
            labels,
            matrix: Matrix::zeros(field, n, n),
        }
    }

    /// Builds a skew matrix from its strict upper triangle.
    pub fn from_upper(
        field: PrimeField,
        labels: Labels,
        mut upper: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let n = labels.len();
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x = upper(i, j);
                m.set(i, j, x);
                m.set(j, i, field.neg(x));
            }
        }
        SkewMatrix { labels, matrix: m }
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_parts(self) -> (Labels, Matrix) {
        (self.labels, self.matrix)
    }

    pub fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.matrix.get(i, j)
    }

    /// Sets `A[i][j] = x` and `A[j][i] = -x`.
    pub fn set_pair(&mut self, i: usize, j: usize, x: FieldElement) {
        assert_ne!(i, j, "diagonal of a skew matrix is zero");
        let f = self.field();
        self.matrix.set(i, j, x);
        self.matrix.set(j, i, f.neg(x));
    }

    pub fn pfaffian(&self) -> FieldElement {
        pfaffian(&self.matrix)
    }

    pub fn pfaffian_bruteforce(&self) -> Result<FieldElement> {
        pfaffian_bruteforce(&self.matrix)
    }

    pub fn det(&self) -> FieldElement {
        self.matrix.det().expect("skew matrices are square")
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn inverse(&self) -> Result<SkewMatrix> {
        Ok(SkewMatrix {
            labels: self.labels.clone(),
            matrix: self.matrix.inverse()?,
        })
    }

    /// Principal submatrix on positions `idx`, keeping their relative order.
    pub fn principal(&self, idx: &[usize]) -> SkewMatrix {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        let labels = Labels::new(idx.iter().map(|&i| self.labels.get(i).to_string()))
            .expect("subset of distinct labels");
        SkewMatrix {
            labels,
            matrix: self.matrix.principal(&idx),
        }
    }

    /// Principal submatrix on positions `order`, listed in that order.
    pub fn reorder(&self, order: &[usize]) -> SkewMatrix {
        let labels = Labels::new(order.iter().map(|&i| self.labels.get(i).to_string()))
            .expect("positions are distinct");
        SkewMatrix {
            labels,
            matrix: self.matrix.principal(order),
        }
    }

    /// Whether `A[idx]` is nonsingular. The empty submatrix is nonsingular.
    pub fn principal_nonsingular(&self, idx: &[usize]) -> bool {
        idx.len().is_multiple_of(2) && !pfaffian(&self.matrix.principal(idx)).is_zero()
    }

    /// `A * S` for a set of labels.
    pub fn pivot<S: AsRef<str>>(&self, s: &[S]) -> Result<SkewMatrix> {
        let idx = self.labels.positions(s)?;
        self.pivot_idx(&idx)
    }

    pub fn pivot_idx(&self, s: &[usize]) -> Result<SkewMatrix> {
        Ok(SkewMatrix {
            labels: self.labels.clone(),
            matrix: pivot(&self.matrix, s)?,
        })
    }

    pub fn schur_pf<S: AsRef<str>>(&self, s: &[S]) -> Result<SchurPfaffian> {
        schur_pf(&self.matrix, &self.labels.positions(s)?)
    }

    pub fn add(&self, other: &SkewMatrix) -> Result<SkewMatrix> {
        if self.labels != other.labels {
            return Err(Error::LabelMismatch("operands of a sum".into()));
        }
        Ok(SkewMatrix {
            labels: self.labels.clone(),
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn pfaffian_sum_check(&self, other: &SkewMatrix) -> Result<FieldElement> {
        if self.labels != other.labels {
            return Err(Error::LabelMismatch("operands of a sum".into()));
        }
        pfaffian_sum_check(&self.matrix, &other.matrix)
    }

    /// Re-expresses the matrix over `target`: entries between labels present
    /// in `self` are copied, every other entry is zero.
    pub fn embed(&self, target: &Labels) -> SkewMatrix {
        let map: Vec<Option<usize>> = target.iter().map(|l| self.labels.position(l)).collect();
        let f = self.field();
        SkewMatrix::from_upper(f, target.clone(), |i, j| match (map[i], map[j]) {
            (Some(a), Some(b)) => self.matrix.get(a, b),
            _ => FieldElement::ZERO,
        })
    }

    /// Renames every row/column; order and entries are unchanged.
    pub fn relabel(&self, labels: Labels) -> Result<SkewMatrix> {
        if labels.len() != self.labels.len() {
            return Err(Error::DimensionMismatch("relabel length".into()));
        }
        Ok(SkewMatrix {
            labels,
            matrix: self.matrix.clone(),
        })
    }
}

/// A rectangular matrix with named rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralMatrix {
    row_labels: Labels,
    col_labels: Labels,
    matrix: Matrix,
}

impl GeneralMatrix {
    pub fn new(row_labels: Labels, col_labels: Labels, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != row_labels.len() || matrix.cols() != col_labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} labels for a {}x{} matrix",
                row_labels.len(),
                col_labels.len(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(GeneralMatrix {
            row_labels,
            col_labels,
            matrix,
        })
    }

    pub fn row_labels(&self) -> &Labels {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &Labels {
        &self.col_labels
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn det(&self) -> Result<FieldElement> {
        self.matrix.det()
    }

    /// Greedy column basis following `order`, a permutation of the column labels.
    pub fn lexmin_column_basis<S: AsRef<str>>(&self, order: &[S]) -> Result<Vec<String>> {
        let idx = self.col_labels.positions(order)?;
        if idx.len() != self.col_labels.len() {
            return Err(Error::LabelMismatch(
                "order must list every column exactly once".into(),
            ));
        }
        let mut seen = vec![false; idx.len()];
        for &i in &idx {
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::DuplicateLabel(self.col_labels.get(i).into()));
            }
        }
        Ok(self
            .matrix
            .lexmin_column_basis(&idx)
            .into_iter()
            .map(|i| self.col_labels.get(i).to_string())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::seeded_rng;
    use rand::Rng;

    fn f() -> PrimeField {
        PrimeField::mersenne61()
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(f(), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn random_skew(n: usize, density: f64, rng: &mut impl Rng) -> Matrix {
        let f = f();
        let labels = Labels::numbered("v", n);
        SkewMatrix::from_upper(f, labels, |_, _| {
            if rng.gen_bool(density) {
                f.sample_uniform(rng)
            } else {
                FieldElement::ZERO
            }
        })
        .matrix
    }

    #[test]
    fn pfaffian_examples() {
        let f = f();
        assert_eq!(pfaffian(&m(&[&[0, 1], &[-1, 0]])), FieldElement::ONE);
        assert_eq!(pfaffian(&Matrix::zeros(f, 2, 2)), FieldElement::ZERO);
        assert_eq!(pfaffian(&Matrix::zeros(f, 0, 0)), FieldElement::ONE);
        assert_eq!(pfaffian(&Matrix::zeros(f, 3, 3)), FieldElement::ZERO);
        // A[1,3] = A[2,4] = 1: the only matching is (1 3)(2 4), sign -1.
        let a = m(&[
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, 0, 0, 0],
            &[0, -1, 0, 0],
        ]);
        assert_eq!(pfaffian(&a), f.from_i64(-1));
        assert_eq!(pfaffian_bruteforce(&a).unwrap(), f.from_i64(-1));
        let block = m(&[
            &[0, 1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, -1, 0],
        ]);
        assert_eq!(pfaffian_bruteforce(&block).unwrap(), FieldElement::ONE);
    }

    #[test]
    fn pfaffian_matches_bruteforce() {
        let mut rng = seeded_rng(17);
        for n in 0..=8 {
            for _ in 0..50 {
                let density = rng.gen_range(0.2..1.0);
                let a = random_skew(n, density, &mut rng);
                assert_eq!(pfaffian(&a), pfaffian_bruteforce(&a).unwrap(), "n = {n}");
            }
        }
        assert!(matches!(
            pfaffian_bruteforce(&Matrix::zeros(f(), 14, 14)),
            Err(Error::TooLarge { size: 14, .. })
        ));
    }

    #[test]
    fn det_is_pfaffian_squared() {
        let f = f();
        let mut rng = seeded_rng(23);
        for n in 1..=12 {
            let a = random_skew(n, 0.6, &mut rng);
            let pf = pfaffian(&a);
            assert_eq!(a.det().unwrap(), f.mul(pf, pf));
            assert_eq!(a.rank() % 2, 0);
        }
    }

    #[test]
    fn det_embedding_identity() {
        let f = f();
        assert_eq!(det_via_pf_embedding(&m(&[&[1]])).unwrap(), FieldElement::ONE);
        assert_eq!(
            det_via_pf_embedding(&Matrix::identity(f, 2)).unwrap(),
            FieldElement::ONE
        );
        let mut rng = seeded_rng(5);
        for n in 0..7 {
            let a = Matrix::from_fn(f, n, n, |_, _| f.sample_uniform(&mut rng));
            assert_eq!(det_via_pf_embedding(&a).unwrap(), a.det().unwrap());
        }
    }

    #[test]
    fn pivot_examples() {
        let j2 = m(&[&[0, 1], &[-1, 0]]);
        assert_eq!(pivot(&j2, &[0, 1]).unwrap(), m(&[&[0, -1], &[1, 0]]));
        assert_eq!(pivot(&j2, &[]).unwrap(), j2);
        assert!(matches!(
            pivot(&Matrix::zeros(f(), 2, 2), &[0, 1]),
            Err(Error::SingularPivotBlock)
        ));
    }

    #[test]
    fn pivot_tracks_principal_minors() {
        let f = f();
        let mut rng = seeded_rng(31);
        let mut checked = 0;
        while checked < 20 {
            let a = random_skew(6, 0.6, &mut rng);
            let s = [rng.gen_range(0..3), rng.gen_range(3..6)];
            let ds = a.principal(&s).det().unwrap();
            if ds.is_zero() {
                continue;
            }
            checked += 1;
            let p = pivot(&a, &s).unwrap();
            assert_eq!(p.skew_violation(), None);
            for mask in 0u32..64 {
                let x: Vec<usize> = (0..6).filter(|&i| mask >> i & 1 == 1).collect();
                let xs = crate::labels::sym_diff(&x, &s);
                let lhs = f.mul(p.principal(&x).det().unwrap(), ds);
                assert_eq!(lhs, a.principal(&xs).det().unwrap());
            }
            // Pivoting twice on S restores the nonsingularity pattern.
            let back = pivot(&p, &s).unwrap();
            for mask in 0u32..64 {
                let x: Vec<usize> = (0..6).filter(|&i| mask >> i & 1 == 1).collect();
                assert_eq!(
                    back.principal(&x).is_nonsingular(),
                    a.principal(&x).is_nonsingular()
                );
            }
        }
    }

    #[test]
    fn schur_examples() {
        let f = f();
        let block = m(&[
            &[0, 1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, -1, 0],
        ]);
        let s = schur_pf(&block, &[0, 1]).unwrap();
        assert_eq!((s.block, s.complement), (FieldElement::ONE, FieldElement::ONE));
        let j2 = m(&[&[0, 1], &[-1, 0]]);
        let s = schur_pf(&j2, &[0, 1]).unwrap();
        assert_eq!((s.block, s.complement), (FieldElement::ONE, FieldElement::ONE));

        let mut rng = seeded_rng(8);
        let mut done = 0;
        while done < 50 {
            let a = random_skew(8, 0.7, &mut rng);
            let mut s: Vec<usize> = (0..8).collect();
            for i in (1..8).rev() {
                s.swap(i, rng.gen_range(0..=i));
            }
            s.truncate(4);
            match schur_pf(&a, &s) {
                Ok(sp) => {
                    assert_eq!(sp.product(f), pfaffian(&a));
                    done += 1;
                }
                Err(Error::SingularPivotBlock) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn pfaffian_sum_identity() {
        let f = f();
        let j2 = m(&[&[0, 1], &[-1, 0]]);
        let zero = Matrix::zeros(f, 2, 2);
        assert_eq!(pfaffian_sum_check(&j2, &zero).unwrap(), FieldElement::ONE);
        assert_eq!(pfaffian_sum_check(&j2, &j2).unwrap(), f.from_i64(2));
        let mut rng = seeded_rng(2);
        for n in [2, 4, 5, 6] {
            for _ in 0..20 {
                let a1 = random_skew(n, 0.6, &mut rng);
                let a2 = random_skew(n, 0.6, &mut rng);
                assert_eq!(
                    pfaffian_sum_check(&a1, &a2).unwrap(),
                    pfaffian(&a1.add(&a2).unwrap())
                );
            }
        }
    }

    #[test]
    fn ishikawa_wakayama_identity() {
        let f = f();
        let mut rng = seeded_rng(4);
        let a = random_skew(6, 0.8, &mut rng);
        assert_eq!(
            ishikawa_wakayama_check(&a, &Matrix::identity(f, 6)).unwrap(),
            pfaffian(&a)
        );
        assert_eq!(
            ishikawa_wakayama_check(&a, &Matrix::zeros(f, 0, 6)).unwrap(),
            FieldElement::ONE
        );
        for _ in 0..30 {
            let a = random_skew(6, 0.8, &mut rng);
            let b = Matrix::from_fn(f, 4, 6, |_, _| f.sample_uniform(&mut rng));
            let bab = b.mul(&a).unwrap().mul(&b.transpose()).unwrap();
            assert_eq!(ishikawa_wakayama_check(&a, &b).unwrap(), pfaffian(&bab));
        }
    }

    #[test]
    fn labeled_wrappers() {
        let f = f();
        let labels = Labels::new(["u", "v"]).unwrap();
        let a = SkewMatrix::new(labels.clone(), m(&[&[0, 1], &[-1, 0]])).unwrap();
        assert_eq!(a.pivot(&["u", "v"]).unwrap().get(0, 1), f.from_i64(-1));
        assert!(matches!(
            SkewMatrix::new(labels, m(&[&[0, 1], &[1, 0]])),
            Err(Error::NotSkewSymmetric { .. })
        ));
        let g = GeneralMatrix::new(
            Labels::new(["r0", "r1"]).unwrap(),
            Labels::new(["1", "2", "3"]).unwrap(),
            m(&[&[1, 2, 0], &[1, 2, 1]]),
        )
        .unwrap();
        assert_eq!(g.lexmin_column_basis(&["1", "2", "3"]).unwrap(), vec!["1", "3"]);
        assert!(g.lexmin_column_basis(&["1", "2"]).is_err());
    }
}
