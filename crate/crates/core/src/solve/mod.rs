//! Optimization and decision problems over linear delta-matroids.

mod covering;
mod intersection;
mod delete_edges;
mod maxweight;
mod polydet;
mod search;
mod target;

pub use delete_edges::delete_edges;
pub use covering::{delta_covering_value, pairing_dm, parity_value, PairPartition};
pub use intersection::{weighted_intersection_search, weighted_intersection_value};
pub use maxweight::{max_feasible_size, max_weight_feasible, WeightMap};
pub use polydet::{poly_det, poly_pfaffian, PolyMatrix, ZPolynomial};
pub use search::{
    search_covering, search_delta_covering, search_intersection, search_parity, search_partition,
    ParityWitness, SetPair,
};
pub use target::{target_delta_sum, TargetWitness, TARGET_ATTEMPTS};
