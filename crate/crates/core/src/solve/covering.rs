use rand::Rng;

use crate::compose::delta_sum;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::labels::Labels;
use crate::repr::{ContractionRep, DeltaMatroid, Representation};
use crate::skew::SkewMatrix;

use super::maxweight::max_feasible_size;

/// Disjoint pairs of ground elements. Elements outside every pair are
/// unconstrained: they never count as broken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPartition {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl PairPartition {
    pub fn new<S: AsRef<str>>(ground: &Labels, pairs: &[(S, S)]) -> Result<Self> {
        let idx = pairs
            .iter()
            .map(|(a, b)| {
                let pos = |l: &S| {
                    ground
                        .position(l.as_ref())
                        .ok_or_else(|| Error::InvalidPairing(format!("unknown element `{}`", l.as_ref())))
                };
                Ok((pos(a)?, pos(b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        PairPartition::from_idx(ground.len(), &idx).map_err(|e| match e {
            Error::InvalidPairing(_) => Error::InvalidPairing(format!(
                "pairs must be disjoint and join distinct elements: {:?}",
                pairs
                    .iter()
                    .map(|(a, b)| format!("{}:{}", a.as_ref(), b.as_ref()))
                    .collect::<Vec<_>>()
            )),
            e => e,
        })
    }

    pub fn from_idx(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut used = vec![false; n];
        for &(a, b) in pairs {
            if a == b || a >= n || b >= n || used[a] || used[b] {
                return Err(Error::InvalidPairing(format!("bad pair ({a}, {b})")));
            }
            used[a] = true;
            used[b] = true;
        }
        Ok(PairPartition {
            n,
            pairs: pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect(),
        })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn ground_len(&self) -> usize {
        self.n
    }

    pub fn is_perfect(&self) -> bool {
        2 * self.pairs.len() == self.n
    }

    /// Elements in no pair, ascending.
    pub fn unpaired(&self) -> Vec<usize> {
        let mut used = vec![false; self.n];
        for &(a, b) in &self.pairs {
            used[a] = true;
            used[b] = true;
        }
        (0..self.n).filter(|&i| !used[i]).collect()
    }

    /// Number of pairs meeting `set` in exactly one element.
    pub fn broken(&self, set: &[usize]) -> usize {
        let mut inside = vec![false; self.n];
        for &i in set {
            inside[i] = true;
        }
        self.pairs
            .iter()
            .filter(|&&(a, b)| inside[a] != inside[b])
            .count()
    }

    /// The pairing restricted to the paired elements, renumbered in
    /// ground order.
    pub(crate) fn compact(&self) -> PairPartition {
        let mut new_pos = vec![usize::MAX; self.n];
        let mut k = 0;
        for (i, slot) in new_pos.iter_mut().enumerate() {
            if self.pairs.iter().any(|&(a, b)| a == i || b == i) {
                *slot = k;
                k += 1;
            }
        }
        PairPartition {
            n: k,
            pairs: self
                .pairs
                .iter()
                .map(|&(a, b)| (new_pos[a], new_pos[b]))
                .collect(),
        }
    }
}

/// The delta-matroid whose feasible sets are the unions of pairs: a
/// block-diagonal matrix with one unit block per pair. Exact.
pub fn pairing_dm(ground: &Labels, d: &Representation, pairs: &PairPartition) -> ContractionRep {
    let mut m = SkewMatrix::zeros(d.field(), ground.clone());
    for &(a, b) in pairs.pairs() {
        m.set_pair(a, b, FieldElement::ONE);
    }
    ContractionRep::direct(m)
}

/// `max |F1 Δ F2|` over feasible `F1`, `F2`: the largest feasible set of
/// the delta-sum. Never overestimates; underestimates with probability at
/// most `eps`.
pub fn delta_covering_value<R: Rng + ?Sized>(
    d1: &Representation,
    d2: &Representation,
    rng: &mut R,
    eps: f64,
) -> Result<usize> {
    max_feasible_size(&delta_sum(d1, d2, rng, eps)?)
}

/// `D` with unpaired elements projected away, and the pairing on what
/// remains.
pub(crate) fn paired_instance(d: &Representation, pairs: &PairPartition) -> Result<(Representation, PairPartition)> {
    if pairs.ground_len() != d.ground().len() {
        return Err(Error::InvalidPairing(
            "pairing is over a different ground set".into(),
        ));
    }
    Ok((d.project_idx(&pairs.unpaired()), pairs.compact()))
}

/// Minimum number of pairs broken by a feasible set, as
/// `2·#pairs - max |F Δ P|` over feasible `F` and unions of pairs `P`.
/// Unpaired elements are projected away first. One-sided like
/// [`delta_covering_value`]: never underestimates.
pub fn parity_value<R: Rng + ?Sized>(
    d: &Representation,
    pairs: &PairPartition,
    rng: &mut R,
    eps: f64,
) -> Result<usize> {
    let (dp, compact) = paired_instance(d, pairs)?;
    let pi = pairing_dm(dp.ground(), &dp, &compact);
    let tau = delta_covering_value(&dp, &pi.into(), rng, eps)?;
    Ok(dp.ground().len() - tau)
}
