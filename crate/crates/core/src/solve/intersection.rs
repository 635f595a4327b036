use rand::Rng;

use crate::compose::{common_field, even_part, joint_ground, odd_part};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::labels::Labels;
use crate::repr::{ContractionRep, DeltaMatroid, Representation};
use crate::DEFAULT_EPS;

use super::maxweight::WeightMap;
use super::polydet::{poly_pfaffian, PolyMatrix, ZPolynomial};

/// Linear pieces of `d` over `ground`, tagged with the parity of their
/// feasible sets. A projected family is split into its even and odd sets.
fn linear_parts<R: Rng + ?Sized>(
    d: &Representation,
    ground: &Labels,
    rng: &mut R,
) -> Result<Vec<(bool, ContractionRep)>> {
    let padded = d.pad_ground(ground)?;
    if let Some(c) = padded.to_contraction() {
        return Ok(vec![(c.contracted().len() % 2 == 1, c)]);
    }
    let p = padded.to_projected();
    let mut out = Vec::with_capacity(2);
    for odd in [false, true] {
        let part = if odd {
            odd_part(&p, rng, DEFAULT_EPS / 4.0)
        } else {
            even_part(&p, rng, DEFAULT_EPS / 4.0)
        };
        match part {
            Ok(c) => out.push((odd, c)),
            Err(Error::EmptySlice(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Max weight of a common feasible set of two linear representations over
/// the same ground, `None` if none was found.
///
/// On `[V1, T1, V2, T2]` the matrix is `A1 ⊕ A2` plus `z^{w(v)} y_v` between
/// the two copies of `v`. Its Pfaffian is a sum over common feasible sets
/// `F` of distinct monomials with `z`-degree `w(V \ F)`.
fn linear_value<R: Rng + ?Sized>(
    c1: &ContractionRep,
    c2: &ContractionRep,
    w: &[i64],
    rng: &mut R,
) -> Result<Option<i64>> {
    let f = c1.field();
    let n = w.len();
    let (t1, t2) = (c1.contracted().len(), c2.contracted().len());
    let total: i64 = w.iter().sum();
    let size = 2 * n + t1 + t2;
    f.require_order((2 * total as u128 + 1).max((size * size) as u128))?;
    let (a1, a2) = (c1.matrix().matrix(), c2.matrix().matrix());
    let off = n + t1;
    let mut a = PolyMatrix::zeros(f, size);
    for i in 0..off {
        for j in 0..off {
            a.set(i, j, ZPolynomial::constant(f, a1.get(i, j)));
        }
    }
    for i in 0..n + t2 {
        for j in 0..n + t2 {
            a.set(off + i, off + j, ZPolynomial::constant(f, a2.get(i, j)));
        }
    }
    for (v, &wv) in w.iter().enumerate() {
        let y: FieldElement = f.sample_nonzero(rng);
        let e = ZPolynomial::monomial(f, y, wv as usize);
        a.set(off + v, v, e.neg());
        a.set(v, off + v, e);
    }
    let pf = poly_pfaffian(&a, total as usize)?;
    Ok(pf.order().map(|e| total - e as i64))
}

fn check_weights(ground: &Labels, w: &WeightMap) -> Result<()> {
    if w.as_slice().len() != ground.len() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {} elements",
            w.as_slice().len(),
            ground.len()
        )));
    }
    if let Some(i) = w.as_slice().iter().position(|&x| x < 0) {
        return Err(Error::InvalidWeights(format!(
            "`{}` has a negative weight",
            ground.get(i)
        )));
    }
    Ok(())
}

fn value_over<R: Rng + ?Sized>(
    d1: &Representation,
    d2: &Representation,
    ground: &Labels,
    w: &[i64],
    rng: &mut R,
) -> Result<i64> {
    let p1 = linear_parts(d1, ground, rng)?;
    let p2 = linear_parts(d2, ground, rng)?;
    let mut best = None;
    for (odd1, c1) in &p1 {
        for (odd2, c2) in &p2 {
            if odd1 == odd2 {
                if let Some(v) = linear_value(c1, c2, w, rng)? {
                    best = best.max(Some(v));
                }
            }
        }
    }
    best.ok_or(Error::NoCommonSet)
}

/// Maximum weight of a set feasible in both `d1` and `d2`, for
/// nonnegative weights over the joint ground set.
///
/// The polynomial Pfaffian is recovered by interpolation at `w(V) + 1`
/// points. Never overestimates; may underestimate, or report
/// [`Error::NoCommonSet`] falsely, with small probability.
pub fn weighted_intersection_value<R: Rng + ?Sized>(
    d1: &Representation,
    d2: &Representation,
    w: &WeightMap,
    rng: &mut R,
) -> Result<i64> {
    common_field(d1, d2)?;
    let ground = joint_ground(d1.ground(), d2.ground());
    check_weights(&ground, w)?;
    value_over(d1, d2, &ground, w.as_slice(), rng)
}

/// A common feasible set of maximum weight, by deciding each element in
/// turn: it is kept if contracting it in both still reaches the optimum,
/// and deleted otherwise. The result is checked exactly against both
/// inputs.
pub fn weighted_intersection_search<R: Rng + ?Sized>(
    d1: &Representation,
    d2: &Representation,
    w: &WeightMap,
    rng: &mut R,
) -> Result<Vec<String>> {
    common_field(d1, d2)?;
    let ground = joint_ground(d1.ground(), d2.ground());
    check_weights(&ground, w)?;
    let w = w.as_slice();
    let mut target = value_over(d1, d2, &ground, w, rng)?;
    let mut a = d1.pad_ground(&ground)?;
    let mut b = d2.pad_ground(&ground)?;
    let mut chosen = Vec::new();
    for k in 0..ground.len() {
        let rest = Labels::new(ground.names()[k + 1..].iter().cloned())?;
        if let (Ok(ca), Ok(cb)) = (a.contract_idx(&[0]), b.contract_idx(&[0])) {
            match value_over(&ca, &cb, &rest, &w[k + 1..], rng) {
                Ok(v) if v + w[k] == target => {
                    chosen.push(ground.get(k).to_string());
                    target -= w[k];
                    a = ca;
                    b = cb;
                    continue;
                }
                Ok(_) | Err(Error::NoCommonSet) => {}
                Err(e) => return Err(e),
            }
        }
        let fail = |_| Error::RandomizationFailure { attempts: 1 };
        a = a.delete_idx(&[0]).map_err(fail)?;
        b = b.delete_idx(&[0]).map_err(fail)?;
    }
    let feasible = |d: &Representation| {
        chosen.iter().all(|l| d.ground().contains(l)) && d.feasible(&chosen).unwrap_or(false)
    };
    if target != 0 || !feasible(d1) || !feasible(d2) {
        return Err(Error::RandomizationFailure { attempts: 1 });
    }
    Ok(chosen)
}
