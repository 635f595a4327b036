use rand::Rng;

use crate::compose::{delta_sum, joint_ground, pad_ground, union};
use crate::error::{Error, Result};
use crate::labels::Labels;
use crate::repr::{DeltaMatroid, Representation};

use super::covering::{paired_instance, pairing_dm, PairPartition};
use super::maxweight::max_weight_feasible;
use super::target::{target_delta_sum, TargetWitness};

/// A pair of feasible sets, one per operand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPair {
    pub f1: Vec<String>,
    pub f2: Vec<String>,
}

impl From<TargetWitness> for SetPair {
    fn from(w: TargetWitness) -> Self {
        SetPair { f1: w.f1, f2: w.f2 }
    }
}

/// A feasible set and the number of pairs it breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityWitness {
    pub set: Vec<String>,
    pub broken: usize,
}

fn not_found(e: Error) -> Error {
    match e {
        Error::InfeasibleTarget => Error::NotFound,
        e => e,
    }
}

/// A target that the delta-sum certified as feasible must be recoverable.
fn certified(e: Error) -> Error {
    match e {
        Error::InfeasibleTarget => Error::RandomizationFailure { attempts: 1 },
        e => e,
    }
}

fn names(ground: &Labels, set: &[usize]) -> Vec<String> {
    set.iter().map(|&i| ground.get(i).to_string()).collect()
}

/// A largest feasible set of `d`, by name.
fn largest(d: &Representation) -> Result<Vec<String>> {
    let (set, _) = max_weight_feasible(d, &vec![1; d.ground().len()])?;
    Ok(names(d.ground(), &set))
}

/// A set feasible in both: the target `∅` in `D1 Δ D2`.
pub fn search_intersection<R: Rng + ?Sized>(
    d1: &Representation,
    d2: &Representation,
    rng: &mut R,
) -> Result<Vec<String>> {
    let w = target_delta_sum(d1, d2, &[] as &[&str], rng).map_err(not_found)?;
    Ok(w.f1)
}

/// Feasible `P` of `d1` and `Q` of `d2` partitioning the joint ground set:
/// the target `V` in `D1 Δ D2`.
pub fn search_partition<R: Rng + ?Sized>(
    d1: &Representation,
    d2: &Representation,
    rng: &mut R,
) -> Result<SetPair> {
    let all = joint_ground(d1.ground(), d2.ground());
    target_delta_sum(d1, d2, all.names(), rng)
        .map(SetPair::from)
        .map_err(not_found)
}

/// Disjoint feasible `F1`, `F2` with `|F1 ∪ F2|` maximum.
///
/// A largest set `F` of the union fixes the covered elements; both
/// operands are then restricted to `F` and split it exactly.
pub fn search_covering<R: Rng + ?Sized>(
    d1: &Representation,
    d2: &Representation,
    rng: &mut R,
    eps: f64,
) -> Result<SetPair> {
    let u = union(d1, d2, rng, eps)?;
    let cover = largest(&u)?;
    let ground = u.ground().clone();
    let outside: Vec<usize> = (0..ground.len())
        .filter(|&i| !cover.iter().any(|l| l == ground.get(i)))
        .collect();
    let restrict = |d: &Representation| -> Result<Representation> {
        pad_ground(d, &ground)?
            .delete_idx(&outside)
            .map_err(|_| Error::RandomizationFailure { attempts: 1 })
    };
    let (r1, r2) = (restrict(d1)?, restrict(d2)?);
    target_delta_sum(&r1, &r2, &cover, rng)
        .map(SetPair::from)
        .map_err(certified)
}

/// Feasible `F1`, `F2` with `|F1 Δ F2|` maximum.
pub fn search_delta_covering<R: Rng + ?Sized>(
    d1: &Representation,
    d2: &Representation,
    rng: &mut R,
    eps: f64,
) -> Result<SetPair> {
    let s = largest(&delta_sum(d1, d2, rng, eps)?)?;
    target_delta_sum(d1, d2, &s, rng)
        .map(SetPair::from)
        .map_err(certified)
}

/// A feasible set breaking the fewest pairs.
///
/// With unpaired elements projected away, a largest set of `D Δ D_Π`
/// yields `F1` restricted to the paired elements; a feasible set of `D`
/// agreeing with `F1` there is then found by maximum weight.
pub fn search_parity<R: Rng + ?Sized>(
    d: &Representation,
    pairs: &PairPartition,
    rng: &mut R,
    eps: f64,
) -> Result<ParityWitness> {
    let (dp, compact) = paired_instance(d, pairs)?;
    let pi: Representation = pairing_dm(dp.ground(), &dp, &compact).into();
    let s = largest(&delta_sum(&dp, &pi, rng, eps)?)?;
    let w = target_delta_sum(&dp, &pi, &s, rng).map_err(certified)?;
    let ground = d.ground();
    let paired: Vec<bool> = {
        let mut p = vec![false; ground.len()];
        for &(a, b) in pairs.pairs() {
            p[a] = true;
            p[b] = true;
        }
        p
    };
    let weights: Vec<i64> = (0..ground.len())
        .map(|i| {
            if !paired[i] {
                0
            } else if w.f1.iter().any(|l| l == ground.get(i)) {
                1
            } else {
                -1
            }
        })
        .collect();
    let (set, weight) = max_weight_feasible(d, &weights)?;
    if weight != w.f1.len() as i64 {
        return Err(Error::RandomizationFailure { attempts: 1 });
    }
    Ok(ParityWitness {
        broken: pairs.broken(&set),
        set: names(ground, &set),
    })
}
