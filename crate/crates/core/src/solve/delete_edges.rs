use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::Matrix;

/// Marked entries grouped by vertex-disjoint component, with the vertices
/// of each component in first-seen order.
struct Component {
    vertices: Vec<usize>,
    /// Edges as local vertex positions, with the global pair.
    edges: Vec<(usize, usize, (usize, usize))>,
}

fn components(n: usize, groups: &[Vec<(usize, usize)>]) -> Result<Vec<Component>> {
    let mut owner = vec![usize::MAX; n];
    let mut out = Vec::with_capacity(groups.len());
    for (c, group) in groups.iter().enumerate() {
        let mut vertices = Vec::new();
        let mut edges = Vec::with_capacity(group.len());
        for &(i, j) in group {
            if i == j || i >= n || j >= n {
                return Err(Error::BadComponent(i, j));
            }
            let mut local = [0; 2];
            for (slot, v) in local.iter_mut().zip([i, j]) {
                if owner[v] == usize::MAX {
                    owner[v] = c;
                    vertices.push(v);
                } else if owner[v] != c {
                    return Err(Error::BadComponent(i, j));
                }
                *slot = vertices.iter().position(|&u| u == v).expect("just added");
            }
            edges.push((local[0], local[1], (i, j)));
        }
        out.push(Component { vertices, edges });
    }
    Ok(out)
}

/// Finds an inclusion-wise maximal set of marked entries of the
/// nonsingular skew matrix `a` that can be zeroed together (with their
/// mirrored entries) while keeping `a` nonsingular.
///
/// `components` groups the marked entries `(i, j)`; different groups must
/// not share a row. The inverse is restricted to the marked rows and kept
/// current by low-rank updates, splitting the list of components in halves
/// and processing each component's entries one at a time. Returns the
/// zeroed entries in processing order.
///
/// When the marked entries are independent uniform samples the output is
/// maximal with high probability.
pub fn delete_edges(a: &Matrix, components_in: &[Vec<(usize, usize)>]) -> Result<Vec<(usize, usize)>> {
    let n = a.require_square()?;
    let comps = components(n, components_in)?;
    if comps.iter().all(|c| c.edges.is_empty()) {
        return Ok(Vec::new());
    }
    let inv = a.inverse().map_err(|_| Error::SingularInput)?;
    let rows: Vec<usize> = comps.iter().flat_map(|c| c.vertices.iter().copied()).collect();
    let mut deleted = Vec::new();
    recurse(a, &comps, inv.principal(&rows), &mut deleted);
    Ok(deleted)
}

fn width(comps: &[Component]) -> usize {
    comps.iter().map(|c| c.vertices.len()).sum()
}

/// `n` is the inverse restricted to the rows of `comps`, in order. Returns
/// the change made to `a` on those rows.
fn recurse(a: &Matrix, comps: &[Component], mut n: Matrix, deleted: &mut Vec<(usize, usize)>) -> Matrix {
    let f = a.field();
    if let [c] = comps {
        let mut delta = Matrix::zeros(f, n.rows(), n.rows());
        for &(p, q, (i, j)) in &c.edges {
            let y = a.get(i, j);
            // Zeroing changes rows {p, q} by [[0, -y], [y, 0]], and with
            // N skew, det(I + Δ N[X]) = (1 + y N[p][q])^2.
            let s = f.add(FieldElement::ONE, f.mul(y, n.get(p, q)));
            if s.is_zero() {
                continue;
            }
            deleted.push((i, j));
            delta.set(p, q, f.sub(delta.get(p, q), y));
            delta.set(q, p, f.add(delta.get(q, p), y));
            let k = f.inv(s).expect("nonzero");
            let dim = n.rows();
            // N -= N[:, X] (Δ_e N[X, :]) / s with Δ_e N[X, :] = [-y N[q, :]; y N[p, :]].
            let col_p: Vec<FieldElement> = (0..dim).map(|r| n.get(r, p)).collect();
            let col_q: Vec<FieldElement> = (0..dim).map(|r| n.get(r, q)).collect();
            let dp: Vec<FieldElement> = (0..dim).map(|r| f.mul(f.neg(y), n.get(q, r))).collect();
            let dq: Vec<FieldElement> = (0..dim).map(|r| f.mul(y, n.get(p, r))).collect();
            for r in 0..dim {
                let cp = f.mul(col_p[r], k);
                let cq = f.mul(col_q[r], k);
                for c in 0..dim {
                    let upd = f.add(f.mul(cp, dp[c]), f.mul(cq, dq[c]));
                    n.set(r, c, f.sub(n.get(r, c), upd));
                }
            }
        }
        return delta;
    }
    let mid = comps.len().div_ceil(2);
    let (left, right) = comps.split_at(mid);
    let wl = width(left);
    let total = n.rows();
    let l: Vec<usize> = (0..wl).collect();
    let r: Vec<usize> = (wl..total).collect();
    let dl = recurse(a, left, n.principal(&l), deleted);
    let mut nr = n.principal(&r);
    if !dl.is_zero() {
        // N[R] -= N[R, L] (I + Δ N[L])^{-1} Δ N[L, R]
        let nll = n.principal(&l);
        let core = Matrix::identity(f, wl)
            .add(&dl.mul(&nll).expect("square"))
            .expect("square")
            .inverse()
            .expect("the left half kept the matrix nonsingular");
        let nrl = n.submatrix(&r, &l);
        let nlr = n.submatrix(&l, &r);
        let upd = nrl
            .mul(&core)
            .and_then(|m| m.mul(&dl))
            .and_then(|m| m.mul(&nlr))
            .expect("conforming blocks");
        nr = nr.sub(&upd).expect("same shape");
    }
    let dr = recurse(a, right, nr, deleted);
    let mut delta = Matrix::zeros(f, total, total);
    for i in 0..wl {
        for j in 0..wl {
            delta.set(i, j, dl.get(i, j));
        }
    }
    for i in 0..total - wl {
        for j in 0..total - wl {
            delta.set(wl + i, wl + j, dr.get(i, j));
        }
    }
    delta
}
