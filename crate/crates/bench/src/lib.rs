//! Shared instance generators for the criterion benches.

use deltakit::random::{random_skew, random_twist};
use deltakit::{seeded_rng, Labels, PairPartition, PrimeField, Representation, SkewMatrix};

pub fn field() -> PrimeField {
    PrimeField::mersenne61()
}

/// Dense random skew matrix of order `n`.
pub fn dense_skew(n: usize, seed: u64) -> SkewMatrix {
    random_skew(field(), Labels::numbered("v", n), 1.0, &mut seeded_rng(seed))
}

/// Two random twists on the same ground set.
pub fn twist_pair(n: usize, seed: u64) -> (Representation, Representation) {
    let mut rng = seeded_rng(seed);
    (
        random_twist(field(), n, 0.5, &mut rng).into(),
        random_twist(field(), n, 0.5, &mut rng).into(),
    )
}

/// A sparse random twist with pairs `(v0, v1), (v2, v3), ...`.
pub fn parity_instance(n: usize, seed: u64) -> (Representation, PairPartition) {
    let d = random_twist(field(), n, (8.0 / n.max(1) as f64).min(1.0), &mut seeded_rng(seed));
    let pairs: Vec<(usize, usize)> = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
    (d.into(), PairPartition::from_idx(n, &pairs).expect("disjoint pairs"))
}
