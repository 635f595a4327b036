//! Constructions combining delta-matroids: union, delta-sum, composition,
//! and the normalization of projections.
//!
//! All constructions substitute fresh uniform field elements for their
//! indeterminates, so their outputs are ε-approximate: a set outside the
//! target family is never feasible, and each target set is feasible with
//! probability at least `1 - ε`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::labels::Labels;
use crate::matrix::Matrix;
use crate::repr::{
    fresh_aux, reduce_contraction_set, ContractionRep, DeltaMatroid, ProjectedRep, Representation,
};
use crate::skew::SkewMatrix;

impl Representation {
    /// Applies [`reduce_contraction_set`] to the underlying contraction
    /// representation.
    pub fn reduce(&self) -> Representation {
        match self {
            Representation::Twist(t) => Representation::Twist(t.clone()),
            Representation::Contraction(c) => Representation::Contraction(reduce_contraction_set(c)),
            Representation::Projected(p) => Representation::Projected(ProjectedRep::from_ordered(
                reduce_contraction_set(p.inner()),
                p.visible_len(),
            )),
        }
    }
}

/// Ground set of `d1` followed by the elements of `d2` not in it.
pub fn joint_ground(d1: &Labels, d2: &Labels) -> Labels {
    let mut g = d1.clone();
    for l in d2 {
        if !g.contains(l) {
            g.push(l.clone()).expect("checked");
        }
    }
    g
}

/// Adds the elements of `full` missing from `d` as loops.
pub fn pad_ground(d: &Representation, full: &Labels) -> Result<Representation> {
    d.pad_ground(full)
}

pub(crate) fn common_field(d1: &Representation, d2: &Representation) -> Result<PrimeField> {
    let f = d1.field();
    if f != d2.field() {
        return Err(Error::DimensionMismatch(
            "representations over different fields".into(),
        ));
    }
    Ok(f)
}

/// Both inputs as projected representations over their joint ground set.
pub(crate) fn padded(d1: &Representation, d2: &Representation) -> Result<(ProjectedRep, ProjectedRep)> {
    let g = joint_ground(d1.ground(), d2.ground());
    Ok((
        d1.to_projected().pad_ground(&g)?,
        d2.to_projected().pad_ground(&g)?,
    ))
}

/// Where the rows of one operand go: `ground` maps the combined ground
/// positions to inner ground positions of the operand (`None` for loops);
/// the operand's contraction set follows in its own order.
pub(crate) fn lift(p: &ProjectedRep, ground: &[Option<usize>]) -> Matrix {
    let inner = p.inner();
    let a = inner.matrix().matrix();
    let mut map: Vec<Option<usize>> = ground.to_vec();
    map.extend(inner.contracted_idx().map(Some));
    let n = map.len();
    Matrix::from_fn(a.field(), n, n, |i, j| match (map[i], map[j]) {
        (Some(x), Some(y)) => a.get(x, y),
        _ => FieldElement::ZERO,
    })
}

/// Ground-position maps for the combined ground `[V, X1, X2]`.
pub(crate) fn ground_maps(p1: &ProjectedRep, p2: &ProjectedRep) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let v = p1.visible_len();
    let (x1, x2) = (p1.projected().len(), p2.projected().len());
    let m1 = (0..v + x1 + x2)
        .map(|i| (i < v + x1).then_some(i))
        .collect();
    let m2 = (0..v + x1 + x2)
        .map(|i| {
            if i < v {
                Some(i)
            } else if i >= v + x1 {
                Some(i - x1)
            } else {
                None
            }
        })
        .collect();
    (m1, m2)
}

/// Wraps a matrix laid out as `[V, X, contracted]` as a representation,
/// naming `V` after `visible` and everything else with fresh labels.
fn assemble(
    matrix: Matrix,
    visible: &Labels,
    x_len: usize,
    projected: bool,
) -> Representation {
    let n = matrix.rows();
    let v = visible.len();
    let aux = fresh_aux(visible.iter(), n - v);
    let labels = Labels::new(visible.iter().map(str::to_string).chain(aux)).expect("fresh labels");
    let skew = SkewMatrix::new(labels, matrix).expect("constructions are skew-symmetric");
    let inner = ContractionRep::from_ordered(skew, v + x_len);
    if projected {
        Representation::Projected(ProjectedRep::from_ordered(inner, v))
    } else {
        debug_assert_eq!(x_len, 0);
        Representation::Contraction(inner)
    }
}

/// Union `{F1 ∪ F2 : F1 ∩ F2 = ∅}`.
///
/// Over `[V, X1, X2, T1, T2]` the matrix is `A1 + Y A2 Y`, where `Y` is
/// diagonal with a uniform `y_v` for `v ∈ V` and one elsewhere. Each
/// disjoint split `F = F1 ∪ F2` then contributes a distinct monomial
/// `Π_{v ∈ F2} y_v^2`.
pub fn union<R: Rng + ?Sized>(
    d1: &Representation,
    d2: &Representation,
    rng: &mut R,
    eps: f64,
) -> Result<Representation> {
    let f = common_field(d1, d2)?;
    let (p1, p2) = padded(d1, d2)?;
    let v = p1.visible_len();
    f.require_for_eps(v, eps)?;
    let (x1, x2) = (p1.projected().len(), p2.projected().len());
    let (t1, t2) = (p1.inner().contracted().len(), p2.inner().contracted().len());
    let (g1, g2) = ground_maps(&p1, &p2);
    let a1 = lift(&p1, &g1);
    let a2 = lift(&p2, &g2);
    let g = v + x1 + x2;
    let n = g + t1 + t2;
    // Positions of the combined layout in the operand matrices.
    let in1 = |i: usize| (i < g + t1).then_some(i);
    let in2 = |i: usize| -> Option<usize> {
        if i < g {
            Some(i)
        } else if i >= g + t1 {
            Some(i - t1)
        } else {
            None
        }
    };
    let y: Vec<FieldElement> = (0..v).map(|_| f.sample_uniform(rng)).collect();
    let scale = |i: usize| if i < v { y[i] } else { FieldElement::ONE };
    let m = Matrix::from_fn(f, n, n, |i, j| {
        let mut x = FieldElement::ZERO;
        if let (Some(a), Some(b)) = (in1(i), in1(j)) {
            x = a1.get(a, b);
        }
        if let (Some(a), Some(b)) = (in2(i), in2(j)) {
            let e = a2.get(a, b);
            if !e.is_zero() {
                x = f.add(x, f.mul(f.mul(scale(i), scale(j)), e));
            }
        }
        x
    });
    let projected = d1.is_projected() || d2.is_projected();
    Ok(assemble(m, p1.ground(), x1 + x2, projected))
}

/// Index layout of the triangle gadget `[G, G1, T1, G2, T2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Gadget {
    pub g: usize,
    pub t1: usize,
    pub t2: usize,
}

impl Gadget {
    pub fn len(&self) -> usize {
        3 * self.g + self.t1 + self.t2
    }

    pub fn copy1(&self, v: usize) -> usize {
        self.g + v
    }

    pub fn copy2(&self, v: usize) -> usize {
        2 * self.g + self.t1 + v
    }

    /// Rows of the first operand (`G1 ∪ T1`) in operand order.
    fn first(&self, i: usize) -> Option<usize> {
        (self.g..2 * self.g + self.t1)
            .contains(&i)
            .then(|| i - self.g)
    }

    fn second(&self, i: usize) -> Option<usize> {
        (2 * self.g + self.t1..self.len())
            .contains(&i)
            .then(|| i - 2 * self.g - self.t1)
    }

    /// The three variable positions `(v, v1)`, `(v, v2)`, `(v1, v2)` of
    /// the triangle on `v`.
    pub fn triangle(&self, v: usize) -> [(usize, usize); 3] {
        let (a, b) = (self.copy1(v), self.copy2(v));
        [(v, a), (v, b), (a, b)]
    }
}

/// `A_H + (A1 ⊕ A2)`: the operands sit on disjoint copies `G1 ∪ T1` and
/// `G2 ∪ T2` of their matrices (`m1`, `m2` laid out as `[G, T]`), and
/// every `v ∈ G` forms a triangle `{v, v1, v2}` with random entries.
pub(crate) fn triangle_gadget<R: Rng + ?Sized>(
    m1: &Matrix,
    m2: &Matrix,
    g: usize,
    rng: &mut R,
) -> (Matrix, Gadget) {
    let f = m1.field();
    let layout = Gadget {
        g,
        t1: m1.rows() - g,
        t2: m2.rows() - g,
    };
    let n = layout.len();
    let mut m = Matrix::from_fn(f, n, n, |i, j| {
        match (layout.first(i), layout.first(j)) {
            (Some(a), Some(b)) => return m1.get(a, b),
            (None, None) => {}
            _ => return FieldElement::ZERO,
        }
        match (layout.second(i), layout.second(j)) {
            (Some(a), Some(b)) => m2.get(a, b),
            _ => FieldElement::ZERO,
        }
    });
    for v in 0..g {
        for (i, j) in layout.triangle(v) {
            let y = f.sample_uniform(rng);
            m.set(i, j, y);
            m.set(j, i, f.neg(y));
        }
    }
    (m, layout)
}

/// Delta-sum `{F1 Δ F2}`: the triangle gadget with contraction set
/// `G1 ∪ T1 ∪ G2 ∪ T2`, over the common ground `G = V ∪ X1 ∪ X2` and
/// projected onto `V` when either operand is projected. The raw
/// contraction set is kept; see [`Representation::reduce`].
pub fn delta_sum<R: Rng + ?Sized>(
    d1: &Representation,
    d2: &Representation,
    rng: &mut R,
    eps: f64,
) -> Result<Representation> {
    let f = common_field(d1, d2)?;
    let (p1, p2) = padded(d1, d2)?;
    let v = p1.visible_len();
    let (x1, x2) = (p1.projected().len(), p2.projected().len());
    let g = v + x1 + x2;
    f.require_for_eps((3 * g).div_ceil(2), eps)?;
    let (g1, g2) = ground_maps(&p1, &p2);
    let (m, _) = triangle_gadget(&lift(&p1, &g1), &lift(&p2, &g2), g, rng);
    let projected = d1.is_projected() || d2.is_projected();
    Ok(assemble(m, p1.ground(), x1 + x2, projected))
}

/// `(D1 Δ D2) \ (V1 ∩ V2)`.
pub fn composition<R: Rng + ?Sized>(
    d1: &Representation,
    d2: &Representation,
    rng: &mut R,
    eps: f64,
) -> Result<Representation> {
    let sum = delta_sum(d1, d2, rng, eps)?;
    let shared: Vec<usize> = d1
        .ground()
        .iter()
        .filter(|l| d2.ground().contains(l))
        .map(|l| sum.ground().position(l).expect("joint ground"))
        .collect();
    sum.delete_idx(&shared)
}

/// A representation of the same projected family with at most one
/// projection element.
///
/// With `D` over `V ∪ X`, let `z` be a new element and `K` the matching
/// delta-matroid of a clique on `X + z`. `F` is feasible in `D|X` iff
/// `F ∪ X` or `F ∪ X + z` is feasible in `D ∪ K`: if `F ∪ S` is feasible in
/// `D`, the clique covers `X \ S`, adding `z` when `|X \ S|` is odd. So
/// `(D ∪ K) / X` projected onto `z` represents `D|X`.
pub fn elementary_projection<R: Rng + ?Sized>(
    d: &ProjectedRep,
    rng: &mut R,
    eps: f64,
) -> Result<ProjectedRep> {
    let x = d.projected().len();
    if x <= 1 {
        return Ok(d.clone());
    }
    let f = d.field();
    let inner = d.inner();
    let z = fresh_aux(inner.matrix().labels().iter(), 1).remove(0);
    let full = Labels::new(inner.ground().iter().map(str::to_string).chain([z.clone()]))?;
    let padded: Representation = inner.pad_ground(&full)?.into();
    // Clique on X + z, positions v..v + x + 1 of `full`.
    let v = d.visible_len();
    let mut k = SkewMatrix::zeros(f, full.clone());
    f.require_for_eps(x + 1, eps / 2.0)?;
    for i in v..full.len() {
        for j in i + 1..full.len() {
            k.set_pair(i, j, f.sample_uniform(rng));
        }
    }
    let joined = union(&padded, &ContractionRep::direct(k).into(), rng, eps / 2.0)?;
    let Representation::Contraction(joined) = joined else {
        unreachable!("union of linear representations is linear")
    };
    let xs: Vec<usize> = (v..v + x).collect();
    let contracted = joined
        .contract_idx(&xs)
        .map_err(|_| Error::RandomizationFailure { attempts: 1 })?;
    Ok(ProjectedRep::from_ordered(contracted, v))
}

fn slice<R: Rng + ?Sized>(
    d: &ProjectedRep,
    rng: &mut R,
    eps: f64,
    odd: bool,
) -> Result<ContractionRep> {
    let name = if odd { "odd" } else { "even" };
    let e = elementary_projection(d, rng, eps)?;
    let inner = e.inner();
    let v = e.visible_len();
    // Feasible sets of the inner representation have |F| ≡ |T| (mod 2).
    let t_odd = inner.contracted().len() % 2 == 1;
    if e.projected().is_empty() {
        return if t_odd == odd {
            Ok(inner.clone())
        } else {
            Err(Error::EmptySlice(name))
        };
    }
    // |F| + [z ∈ F'] ≡ |T|: keep z exactly when that flips the parity.
    let minor = if t_odd == odd {
        inner.delete_idx(&[v])
    } else {
        inner.contract_idx(&[v])
    };
    minor.map_err(|_| Error::EmptySlice(name))
}

/// The sets of even cardinality of a projected family, as a linear
/// representation.
pub fn even_part<R: Rng + ?Sized>(d: &ProjectedRep, rng: &mut R, eps: f64) -> Result<ContractionRep> {
    slice(d, rng, eps, false)
}

/// The sets of odd cardinality of a projected family.
pub fn odd_part<R: Rng + ?Sized>(d: &ProjectedRep, rng: &mut R, eps: f64) -> Result<ContractionRep> {
    slice(d, rng, eps, true)
}
