use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::matrix::Matrix;
use crate::skew::pfaffian;

/// A polynomial in `z` over GF(p), lowest coefficient first, without
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPolynomial {
    field: PrimeField,
    coeffs: Vec<FieldElement>,
}

impl ZPolynomial {
    pub fn new(field: PrimeField, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPolynomial { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        ZPolynomial { field, coeffs: Vec::new() }
    }

    pub fn constant(field: PrimeField, c: FieldElement) -> Self {
        ZPolynomial::new(field, vec![c])
    }

    /// `c · z^e`.
    pub fn monomial(field: PrimeField, c: FieldElement, e: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; e + 1];
        coeffs[e] = c;
        ZPolynomial::new(field, coeffs)
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        ZPolynomial::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).copied().unwrap_or(FieldElement::ZERO)
    }

    /// Exponent of the lowest nonzero term.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, other: &ZPolynomial) -> ZPolynomial {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        ZPolynomial::new(f, (0..n).map(|k| f.add(self.coeff(k), other.coeff(k))).collect())
    }

    pub fn mul(&self, other: &ZPolynomial) -> ZPolynomial {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return ZPolynomial::zero(f);
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        ZPolynomial::new(f, out)
    }

    pub fn neg(&self) -> ZPolynomial {
        let f = self.field;
        ZPolynomial::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

/// A square matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    field: PrimeField,
    n: usize,
    entries: Vec<ZPolynomial>,
}

impl PolyMatrix {
    pub fn zeros(field: PrimeField, n: usize) -> Self {
        PolyMatrix {
            field,
            n,
            entries: vec![ZPolynomial::zero(field); n * n],
        }
    }

    pub fn from_fn(field: PrimeField, n: usize, mut f: impl FnMut(usize, usize) -> ZPolynomial) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { field, n, entries }
    }

    /// Constant entries.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        let n = m.require_square()?;
        let f = m.field();
        Ok(PolyMatrix::from_fn(f, n, |i, j| ZPolynomial::constant(f, m.get(i, j))))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &ZPolynomial {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: ZPolynomial) {
        self.entries[i * self.n + j] = p;
    }

    /// Largest entry degree, `None` if every entry is zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(ZPolynomial::degree).max()
    }

    pub fn eval(&self, x: FieldElement) -> Matrix {
        Matrix::from_fn(self.field, self.n, self.n, |i, j| self.get(i, j).eval(x))
    }
}

/// The polynomial of degree below `xs.len()` through the points `(x_i, y_i)`.
fn interpolate(f: PrimeField, xs: &[FieldElement], ys: &[FieldElement]) -> ZPolynomial {
    let n = xs.len();
    // master = Π (z - x_i)
    let mut master = vec![FieldElement::ONE];
    for &x in xs {
        let mut next = vec![FieldElement::ZERO; master.len() + 1];
        for (k, &c) in master.iter().enumerate() {
            next[k + 1] = f.add(next[k + 1], c);
            next[k] = f.sub(next[k], f.mul(c, x));
        }
        master = next;
    }
    let mut out = vec![FieldElement::ZERO; n];
    for i in 0..n {
        if ys[i].is_zero() {
            continue;
        }
        // master / (z - x_i) by synthetic division.
        let mut quotient = vec![FieldElement::ZERO; n];
        let mut carry = FieldElement::ZERO;
        for k in (0..n).rev() {
            carry = f.add(master[k + 1], f.mul(carry, xs[i]));
            quotient[k] = carry;
        }
        let denom = quotient.iter().rev().fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, xs[i]), c));
        let scale = f.div(ys[i], denom).expect("distinct points");
        for k in 0..n {
            out[k] = f.add(out[k], f.mul(scale, quotient[k]));
        }
    }
    ZPolynomial::new(f, out)
}

fn by_interpolation(
    a: &PolyMatrix,
    degree_bound: usize,
    value: impl Fn(&Matrix) -> FieldElement + Sync,
) -> Result<ZPolynomial> {
    let f = a.field();
    f.require_order(degree_bound as u128 + 1)?;
    let xs: Vec<FieldElement> = (0..=degree_bound as u64).map(|x| f.from_u64(x)).collect();
    let ys: Vec<FieldElement> = xs.par_iter().map(|&x| value(&a.eval(x))).collect();
    Ok(interpolate(f, &xs, &ys))
}

/// `det A` as a polynomial, from its values at `0, 1, …, degree_bound`.
/// `degree_bound` must bound the degree of the determinant.
pub fn poly_det(a: &PolyMatrix, degree_bound: usize) -> Result<ZPolynomial> {
    by_interpolation(a, degree_bound, |m| m.det().expect("square"))
}

/// `Pf A` for a skew-symmetric polynomial matrix, as [`poly_det`].
pub fn poly_pfaffian(a: &PolyMatrix, degree_bound: usize) -> Result<ZPolynomial> {
    for i in 0..a.len() {
        for j in i..a.len() {
            if !a.get(i, j).add(a.get(j, i)).is_zero() {
                return Err(Error::NotSkewSymmetric { row: i, col: j });
            }
        }
    }
    by_interpolation(a, degree_bound, pfaffian)
}
