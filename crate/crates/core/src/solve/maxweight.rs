use crate::error::{Error, Result};
use crate::labels::{sym_diff, Labels};
use crate::repr::{ContractionRep, DeltaMatroid, Representation};

/// Integer weights on a ground set, in ground order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap {
    weights: Vec<i64>,
}

impl WeightMap {
    /// Weights given per label; every ground element must be listed once.
    pub fn new<S: AsRef<str>>(ground: &Labels, weights: &[(S, i64)]) -> Result<Self> {
        let mut out = vec![None; ground.len()];
        for (l, w) in weights {
            let i = ground
                .position(l.as_ref())
                .ok_or_else(|| Error::InvalidWeights(format!("`{}` is not in the ground set", l.as_ref())))?;
            if out[i].replace(*w).is_some() {
                return Err(Error::InvalidWeights(format!("`{}` is weighted twice", l.as_ref())));
            }
        }
        let weights = out
            .into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or_else(|| Error::InvalidWeights(format!("`{}` has no weight", ground.get(i)))))
            .collect::<Result<_>>()?;
        Ok(WeightMap { weights })
    }

    pub fn from_vec(weights: Vec<i64>) -> Self {
        WeightMap { weights }
    }

    pub fn uniform(n: usize, w: i64) -> Self {
        WeightMap { weights: vec![w; n] }
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.weights
    }

    /// Largest absolute weight.
    pub fn max_abs(&self) -> i64 {
        self.weights.iter().map(|w| w.abs()).max().unwrap_or(0)
    }

    pub fn total(&self, set: &[usize]) -> i64 {
        set.iter().map(|&i| self.weights[i]).sum()
    }
}

/// Greedy maximum for nonnegative weights on a contraction representation:
/// the feasible sets are exactly the sets `B \ T` for column bases `B ⊇ T`
/// of `A` and their subsets, so a greedy basis taking `T` first and then
/// elements by nonincreasing weight is optimal.
fn greedy_nonnegative(d: &ContractionRep, w: &[i64]) -> Vec<usize> {
    let v = d.ground_len();
    let mut order: Vec<usize> = d.contracted_idx().collect();
    let mut ground: Vec<usize> = (0..v).collect();
    ground.sort_by_key(|&i| std::cmp::Reverse(w[i]));
    order.extend(ground);
    let mut f: Vec<usize> = d
        .matrix()
        .matrix()
        .lexmin_column_basis(&order)
        .into_iter()
        .filter(|&i| i < v)
        .collect();
    f.sort_unstable();
    f
}

/// A feasible set of maximum weight and its weight.
///
/// The negative elements `N` are twisted away, so that `w(F) = w'(F Δ N) +
/// w(N)` with `w' = |w|`, and the greedy maximum of `w'` is taken in
/// `D Δ N`. Projection elements get weight zero. Ties go to the earlier
/// element in ground order.
pub fn max_weight_feasible(d: &Representation, w: &[i64]) -> Result<(Vec<usize>, i64)> {
    let n = d.ground().len();
    if w.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} elements",
            w.len(),
            n
        )));
    }
    let p = d.to_projected();
    let inner = p.inner();
    let mut full = w.to_vec();
    full.resize(inner.ground_len(), 0);
    let negative: Vec<usize> = (0..n).filter(|&i| w[i] < 0).collect();
    let twisted = inner.twist_by_idx(&negative);
    let abs: Vec<i64> = full.iter().map(|x| x.abs()).collect();
    let best = greedy_nonnegative(&twisted, &abs);
    let f: Vec<usize> = sym_diff(&best, &negative)
        .into_iter()
        .filter(|&i| i < n)
        .collect();
    let weight = f.iter().map(|&i| w[i]).sum();
    Ok((f, weight))
}

/// Size of a largest feasible set.
pub fn max_feasible_size(d: &Representation) -> Result<usize> {
    if let Some(c) = d.to_contraction() {
        let t: Vec<usize> = c.contracted_idx().collect();
        let a = c.matrix().matrix();
        if !a.columns_independent(&t) {
            return Err(Error::RandomizationFailure { attempts: 1 });
        }
        return Ok(a.rank() - t.len());
    }
    let (f, _) = max_weight_feasible(d, &vec![1; d.ground().len()])?;
    Ok(f.len())
}
