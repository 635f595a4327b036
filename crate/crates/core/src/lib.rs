//! Exact arithmetic for linear delta-matroids over prime fields.
//!
//! Representations are skew-symmetric matrices over GF(p) together with
//! optional contraction and projection sets. On top of them the crate builds
//! unions, delta-sums, compositions and projections, and solves the
//! associated optimization and decision problems with randomized algebraic
//! algorithms. A brute-force oracle over explicit set families is included
//! for checking results on small instances.

pub mod error;
pub mod field;
pub mod compose;
pub mod labels;
pub mod matrix;
pub mod oracle;
pub mod random;
pub mod repr;
pub mod skew;
pub mod solve;

/// Default bound on the failure probability of randomized routines.
pub const DEFAULT_EPS: f64 = 1.0 / 1_048_576.0;

pub use error::{Error, Result};
pub use field::{seeded_rng, FieldElement, PrimeField, SeededRng, MERSENNE_61};
pub use labels::Labels;
pub use matrix::Matrix;
pub use skew::{GeneralMatrix, SchurPfaffian, SkewMatrix};
pub use repr::{
    matching_dm, matroid_bases_dm, matroid_independent_dm, ContractionRep, DeltaMatroid, Graph,
    ProjectedRep, Representation, TwistRep,
};
pub use compose::{composition, delta_sum, elementary_projection, even_part, odd_part, union};
pub use solve::{
    delete_edges, delta_covering_value, max_feasible_size, max_weight_feasible, parity_value,
    poly_det, poly_pfaffian, search_covering, search_delta_covering, search_intersection,
    search_parity, search_partition, target_delta_sum, weighted_intersection_search,
    weighted_intersection_value, PairPartition, ParityWitness, PolyMatrix, SetPair,
    TargetWitness, WeightMap, ZPolynomial,
};
