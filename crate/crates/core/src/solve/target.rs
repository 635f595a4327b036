use rand::Rng;

use crate::compose::{common_field, ground_maps, lift, padded, triangle_gadget, Gadget};
use crate::error::{Error, Result};
use crate::labels::{sym_diff, Labels};
use crate::matrix::Matrix;
use crate::repr::{ground_positions, ContractionRep, DeltaMatroid, Representation};
use crate::skew::SkewMatrix;

use super::delete_edges::delete_edges;
use super::maxweight::max_weight_feasible;

/// Fresh gadgets tried before giving up.
pub const TARGET_ATTEMPTS: usize = 3;

/// Feasible `F1`, `F2` with `F1 Δ F2` equal to the requested target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetWitness {
    pub f1: Vec<String>,
    pub f2: Vec<String>,
    /// Gadgets built, at least one.
    pub attempts: usize,
}

/// Finds feasible `F1` of `d1` and `F2` of `d2` with `F1 Δ F2 = s`.
///
/// Works on the delta-sum gadget restricted to `s` and the copies: zeroing
/// a maximal set of gadget entries leaves a single term of the Pfaffian
/// expansion, and the surviving entries of each triangle say which side
/// `v` went to. Projected operands first extend `s` into their projection
/// sets with a maximum-weight search. Every returned pair is checked
/// against both inputs.
pub fn target_delta_sum<S: AsRef<str>, R: Rng + ?Sized>(
    d1: &Representation,
    d2: &Representation,
    s: &[S],
    rng: &mut R,
) -> Result<TargetWitness> {
    let (ground, f1, f2, attempts) = target_idx(d1, d2, s, rng)?;
    let names = |set: &[usize]| set.iter().map(|&i| ground.get(i).to_string()).collect();
    Ok(TargetWitness {
        f1: names(&f1),
        f2: names(&f2),
        attempts,
    })
}

/// As [`target_delta_sum`], with the result as positions in the joint
/// ground set, which is returned too.
pub(crate) fn target_idx<S: AsRef<str>, R: Rng + ?Sized>(
    d1: &Representation,
    d2: &Representation,
    s: &[S],
    rng: &mut R,
) -> Result<(Labels, Vec<usize>, Vec<usize>, usize)> {
    let f = common_field(d1, d2)?;
    let (p1, p2) = padded(d1, d2)?;
    let ground = p1.ground().clone();
    let target = ground_positions(&ground, s)?;
    let v = ground.len();
    let g = v + p1.projected().len() + p2.projected().len();
    let (g1, g2) = ground_maps(&p1, &p2);
    let (m1, m2) = (lift(&p1, &g1), lift(&p2, &g2));
    let size = 3 * g + p1.inner().contracted().len() + p2.inner().contracted().len();
    f.require_order((size as u128).pow(3))?;

    let pos1 = side_positions(&ground, d1.ground());
    let pos2 = side_positions(&ground, d2.ground());
    let mut seen_nonsingular = false;
    for attempt in 1..=TARGET_ATTEMPTS {
        let (m, layout) = triangle_gadget(&m1, &m2, g, rng);
        let Some(extended) = extend_target(&m, g, v, &target)? else {
            continue;
        };
        let Some((a, b)) = decode(&m, layout, &extended)? else {
            continue;
        };
        seen_nonsingular = true;
        let a: Vec<usize> = a.into_iter().filter(|&i| i < v).collect();
        let b: Vec<usize> = b.into_iter().filter(|&i| i < v).collect();
        if sym_diff(&a, &b) == target
            && feasible_in(d1, &pos1, &a)
            && feasible_in(d2, &pos2, &b)
        {
            return Ok((ground, a, b, attempt));
        }
    }
    Err(if seen_nonsingular {
        Error::RandomizationFailure {
            attempts: TARGET_ATTEMPTS,
        }
    } else {
        Error::InfeasibleTarget
    })
}

/// Position in `own` of each element of the joint ground.
fn side_positions(joint: &Labels, own: &Labels) -> Vec<Option<usize>> {
    joint.iter().map(|l| own.position(l)).collect()
}

fn feasible_in(d: &Representation, pos: &[Option<usize>], set: &[usize]) -> bool {
    let mut own = Vec::with_capacity(set.len());
    for &i in set {
        match pos[i] {
            Some(p) => own.push(p),
            None => return false,
        }
    }
    own.sort_unstable();
    d.is_feasible_idx(&own)
}

/// A set `S' ⊆ G` with `S' ∩ V = target` feasible in the gadget's
/// delta-sum, or `None` if none was found.
fn extend_target(m: &Matrix, g: usize, v: usize, target: &[usize]) -> Result<Option<Vec<usize>>> {
    if g == v {
        return Ok(Some(target.to_vec()));
    }
    let labels = Labels::numbered("g", m.rows());
    let rep = ContractionRep::from_ordered(SkewMatrix::new(labels, m.clone())?, g);
    let mut w = vec![0i64; g];
    for x in w.iter_mut().take(v) {
        *x = -1;
    }
    for &i in target {
        w[i] = 1;
    }
    let (set, weight) = max_weight_feasible(&rep.into(), &w)?;
    Ok((weight == target.len() as i64).then_some(set))
}

/// Runs the edge deletion on the gadget restricted to `s` and the copies,
/// and reads off `(F1, F2)` over `G`. `None` if the restriction is
/// singular.
fn decode(m: &Matrix, layout: Gadget, s: &[usize]) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let g = layout.g;
    let rows: Vec<usize> = s.iter().copied().chain(g..layout.len()).collect();
    let sub = m.principal(&rows);
    if !sub.is_nonsingular() {
        return Ok(None);
    }
    let mut local = vec![usize::MAX; layout.len()];
    for (k, &r) in rows.iter().enumerate() {
        local[r] = k;
    }
    let mut in_s = vec![false; g];
    for &i in s {
        in_s[i] = true;
    }
    let comps: Vec<Vec<(usize, usize)>> = (0..g)
        .map(|v| {
            let [e1, e2, e12] = layout.triangle(v);
            let edges = if in_s[v] { vec![e1, e2, e12] } else { vec![e12] };
            edges.into_iter().map(|(i, j)| (local[i], local[j])).collect()
        })
        .collect();
    let deleted = delete_edges(&sub, &comps)?;
    let survives = |(i, j): (usize, usize)| {
        let e = (local[i], local[j]);
        local[i] != usize::MAX && !deleted.contains(&e)
    };
    let (mut f1, mut f2) = (Vec::new(), Vec::new());
    for (v, &s) in in_s.iter().enumerate() {
        let [e1, e2, e12] = layout.triangle(v);
        // A copy left unmatched by the gadget belongs to its operand's set.
        let both = survives(e12);
        if !both && !(s && survives(e1)) {
            f1.push(v);
        }
        if !both && !(s && survives(e2)) {
            f2.push(v);
        }
    }
    Ok(Some((f1, f2)))
}
