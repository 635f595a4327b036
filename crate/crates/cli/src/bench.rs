use std::io::Write;
use std::time::Instant;

use deltakit::random::{random_skew, random_twist};
use deltakit::{
    delta_covering_value, parity_value, seeded_rng, Labels, PairPartition, PrimeField,
    Representation, SkewMatrix, DEFAULT_EPS,
};

pub const HEADER: [&str; 5] = ["n", "pfaffian_ms", "rank_ms", "deltasum_ms", "parity_ms"];

fn ms<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

/// The random instances timed at size `n`; they depend only on `seed`
/// and `n`.
#[derive(Clone, Debug)]
pub struct BenchInstances {
    pub skew: SkewMatrix,
    pub sum: (Representation, Representation),
    pub parity: (Representation, PairPartition),
}

pub fn instances(n: usize, seed: u64, field: PrimeField) -> BenchInstances {
    let mut rng = seeded_rng(seed ^ (n as u64).rotate_left(32));
    let skew = random_skew(field, Labels::numbered("v", n), 1.0, &mut rng);
    let d1 = random_twist(field, n, 0.5, &mut rng).into();
    let d2 = random_twist(field, n, 0.5, &mut rng).into();
    let sparse = (8.0 / n.max(1) as f64).min(1.0);
    let d = random_twist(field, n, sparse, &mut rng).into();
    let pairs: Vec<(usize, usize)> = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
    let pairs = PairPartition::from_idx(n, &pairs).expect("disjoint pairs");
    BenchInstances {
        skew,
        sum: (d1, d2),
        parity: (d, pairs),
    }
}

/// Times the Pfaffian and rank of a dense random skew matrix, the
/// delta-covering value of two random twists, and a parity decision with
/// pairs `(v0, v1), (v2, v3), ...`, all at each size `n`.
///
pub fn bench<W: Write>(
    sizes: &[usize],
    seed: u64,
    field: PrimeField,
    out: W,
) -> Result<(), Box<dyn std::error::Error>> {
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(HEADER)?;
    for &n in sizes {
        let inst = instances(n, seed, field);
        let mut rng = seeded_rng(seed.wrapping_add(n as u64));
        let (_, pf) = ms(|| inst.skew.pfaffian());
        let (_, rank) = ms(|| inst.skew.rank());
        let (d1, d2) = &inst.sum;
        let (r, ds) = ms(|| delta_covering_value(d1, d2, &mut rng, DEFAULT_EPS));
        r?;
        let (d, pairs) = &inst.parity;
        let (r, parity) = ms(|| parity_value(d, pairs, &mut rng, DEFAULT_EPS));
        r?;
        csv.write_record([
            n.to_string(),
            format!("{pf:.3}"),
            format!("{rank:.3}"),
            format!("{ds:.3}"),
            format!("{parity:.3}"),
        ])?;
    }
    csv.flush()?;
    Ok(())
}
