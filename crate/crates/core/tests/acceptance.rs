//! Acceptance suite. Prints one line per criterion and exits nonzero if a
//! gating criterion fails. Run with `cargo test -p deltakit-core --test
//! acceptance`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use deltakit::oracle::{
    bits, check_symmetric_exchange, enumerate_family, family_delta_sum, family_union, mask,
    FeasibleFamily,
};
use deltakit::random::{random_contraction, random_projected, random_skew, random_twist};
use deltakit::repr::{contraction_to_twist, twist_to_contraction};
use deltakit::skew::{
    ishikawa_wakayama_check, pfaffian, pfaffian_bruteforce, pfaffian_sum_check, pivot,
};
use deltakit::{
    delete_edges, delta_sum, elementary_projection, max_weight_feasible, parity_value, seeded_rng,
    target_delta_sum, union, weighted_intersection_search, weighted_intersection_value,
    Error, FieldElement, Labels, Matrix, PairPartition, PrimeField, Representation,
    WeightMap,
};

// Pinned thresholds.
const CONSTRUCTION_EPS: f64 = 0.05;
const MIN_SET_FREQUENCY: f64 = 0.9;
const MAX_RETRY_RATE: f64 = 0.01;
const MAX_ONE_SIDED_FAILURE_RATE: f64 = 0.01;
const PERF_RANK_LIMIT: Duration = Duration::from_secs(10);
const PERF_PARITY_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn field() -> PrimeField {
    PrimeField::mersenne61()
}

/// Families seen by criteria 3 to 8, for the axiom check.
struct Seen(Mutex<HashSet<(Vec<String>, Vec<u32>)>>);

impl Seen {
    fn add(&self, f: &FeasibleFamily) {
        let key = (f.ground().names().to_vec(), f.sets().to_vec());
        self.0.lock().unwrap().insert(key);
    }
}

fn random_skew_matrix(n: usize, rng: &mut impl Rng) -> Matrix {
    random_skew(field(), Labels::numbered("x", n), 1.0, rng).into_parts().1
}

fn random_rep(n: usize, rng: &mut impl Rng) -> Representation {
    let f = field();
    match rng.gen_range(0..4) {
        0 => random_twist(f, n, 0.5, rng).into(),
        1 => random_projected(f, n, rng.gen_range(1..=2), rng.gen_range(0..=1), 0.5, rng).into(),
        _ => random_contraction(f, n, rng.gen_range(0..=2), 0.45, rng).into(),
    }
}

fn c1_pfaffian() -> Outcome {
    let mut rng = seeded_rng(101);
    let mut bad = 0;
    for n in (2..=8).step_by(2) {
        for _ in 0..1000 {
            let a = random_skew_matrix(n, &mut rng);
            bad += (pfaffian(&a) != pfaffian_bruteforce(&a).unwrap()) as usize;
        }
    }
    let f = field();
    for k in 0..1000 {
        let a = random_skew_matrix(1 + k % 20, &mut rng);
        let pf = pfaffian(&a);
        bad += (f.mul(pf, pf) != a.det().unwrap()) as usize;
    }
    outcome(bad == 0, format!("{bad} mismatches in 5000 matrices"))
}

fn c2_pivot() -> Outcome {
    let f = field();
    let mut rng = seeded_rng(102);
    let (mut bad, mut done) = (0, 0);
    while done < 200 {
        let a = random_skew_matrix(6, &mut rng);
        let s: Vec<usize> = (0..6).filter(|_| rng.gen_bool(0.5)).collect();
        let ds = a.principal(&s).det().unwrap();
        if ds.is_zero() {
            continue;
        }
        done += 1;
        let p = pivot(&a, &s).unwrap();
        for x in 0u32..64 {
            let xs = bits(x);
            let xd = bits(x ^ mask(&s));
            let lhs = f.mul(p.principal(&xs).det().unwrap(), ds);
            bad += (lhs != a.principal(&xd).det().unwrap()) as usize;
        }
    }
    outcome(bad == 0, format!("{bad} mismatches over 200 x 64 subsets"))
}

fn c3_round_trip(seen: &Seen) -> Outcome {
    let mut rng = seeded_rng(103);
    let mut bad = 0;
    for k in 0..200 {
        let t = random_twist(field(), k % 9, 0.5, &mut rng);
        let base = enumerate_family(&t).unwrap();
        let c = twist_to_contraction(&t);
        let back = contraction_to_twist(&c).unwrap();
        let (fc, fb) = (enumerate_family(&c).unwrap(), enumerate_family(&back).unwrap());
        bad += (fc != base || fb != base) as usize;
        seen.add(&base);
        seen.add(&fb);
    }
    outcome(bad == 0, format!("{bad} of 200 families changed"))
}

fn c4_constructions(seen: &Seen) -> Outcome {
    let results: Vec<(usize, f64)> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(10_400 + i);
            let n = rng.gen_range(2..=6);
            let d1 = random_rep(n, &mut rng);
            let d2 = random_rep(n, &mut rng);
            let pr = random_projected(field(), n, rng.gen_range(2..=3), rng.gen_range(0..=1), 0.5, &mut rng);
            let (e1, e2) = (enumerate_family(&d1).unwrap(), enumerate_family(&d2).unwrap());
            let targets = [
                family_union(&e1, &e2).unwrap(),
                family_delta_sum(&e1, &e2).unwrap(),
                enumerate_family(&pr).unwrap(),
            ];
            for t in &targets {
                seen.add(t);
            }
            let mut counts: [BTreeMap<u32, usize>; 3] = Default::default();
            let mut outside = 0;
            for seed in 0..100 {
                let mut r = seeded_rng(seed * 1000 + i);
                let outputs = [
                    enumerate_family(&union(&d1, &d2, &mut r, CONSTRUCTION_EPS).unwrap()).unwrap(),
                    enumerate_family(&delta_sum(&d1, &d2, &mut r, CONSTRUCTION_EPS).unwrap()).unwrap(),
                    enumerate_family(&elementary_projection(&pr, &mut r, CONSTRUCTION_EPS).unwrap()).unwrap(),
                ];
                for (k, out) in outputs.iter().enumerate() {
                    for &m in out.sets() {
                        if targets[k].contains(m) {
                            *counts[k].entry(m).or_default() += 1;
                        } else {
                            outside += 1;
                        }
                    }
                    seen.add(out);
                }
            }
            let min_freq = (0..3)
                .flat_map(|k| {
                    let c = &counts[k];
                    targets[k]
                        .sets()
                        .iter()
                        .map(move |m| *c.get(m).unwrap_or(&0) as f64 / 100.0)
                })
                .fold(1.0, f64::min);
            (outside, min_freq)
        })
        .collect();
    let outside: usize = results.iter().map(|r| r.0).sum();
    let min_freq = results.iter().map(|r| r.1).fold(1.0, f64::min);
    outcome(
        outside == 0 && min_freq >= MIN_SET_FREQUENCY,
        format!("{outside} sets outside target; min per-set frequency {min_freq:.2}"),
    )
}

fn c5_max_weight(seen: &Seen) -> Outcome {
    let mut rng = seeded_rng(105);
    let mut bad = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let d = random_rep(n, &mut rng);
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        let fam = enumerate_family(&d).unwrap();
        seen.add(&fam);
        let (set, weight) = max_weight_feasible(&d, &w).unwrap();
        let ok = fam.contains(mask(&set))
            && FeasibleFamily::weight(mask(&set), &w) == weight
            && fam.max_weight(&w).map(|b| b.1) == Some(weight);
        bad += (!ok) as usize;
    }
    outcome(bad == 0, format!("{bad} of 500 not optimal"))
}

fn c6_witness(seen: &Seen) -> Outcome {
    let mut rng = seeded_rng(106);
    let (mut calls, mut retries, mut bad) = (0usize, 0usize, 0usize);
    for _ in 0..50 {
        let n = rng.gen_range(1..=6);
        let d1 = random_rep(n, &mut rng);
        let d2 = random_rep(n, &mut rng);
        let (e1, e2) = (enumerate_family(&d1).unwrap(), enumerate_family(&d2).unwrap());
        let fam = family_delta_sum(&e1, &e2).unwrap();
        seen.add(&fam);
        let ground = fam.ground().clone();
        let pos = |l: &String| ground.position(l).unwrap();
        for &m in fam.sets() {
            let s: Vec<&str> = bits(m).into_iter().map(|i| ground.get(i)).collect();
            calls += 1;
            match target_delta_sum(&d1, &d2, &s, &mut rng) {
                Ok(w) => {
                    retries += w.attempts - 1;
                    let m1 = mask(&w.f1.iter().map(pos).collect::<Vec<_>>());
                    let m2 = mask(&w.f2.iter().map(pos).collect::<Vec<_>>());
                    bad += !(e1.contains(m1) && e2.contains(m2) && m1 ^ m2 == m) as usize;
                }
                Err(_) => bad += 1,
            }
        }
    }
    let rate = retries as f64 / calls.max(1) as f64;
    outcome(
        bad == 0 && rate < MAX_RETRY_RATE,
        format!("{calls} targets, {bad} failures, retry rate {:.4}", rate),
    )
}

fn c7_delete_edges() -> Outcome {
    let f = field();
    let mut rng = seeded_rng(107);
    let (mut done, mut bad) = (0, 0);
    while done < 100 {
        let g = rng.gen_range(1..=8);
        let (t1, t2) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let a1 = random_skew_matrix(g + t1, &mut rng);
        let a2 = random_skew_matrix(g + t2, &mut rng);
        let s: Vec<usize> = (0..g).filter(|_| rng.gen_bool(0.5)).collect();
        // Rows: S, then the first operand, then the second.
        let o1 = s.len();
        let o2 = o1 + g + t1;
        let n = o2 + g + t2;
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..g + t1 {
            for j in 0..g + t1 {
                m.set(o1 + i, o1 + j, a1.get(i, j));
            }
        }
        for i in 0..g + t2 {
            for j in 0..g + t2 {
                m.set(o2 + i, o2 + j, a2.get(i, j));
            }
        }
        let mut comps = Vec::new();
        for v in 0..g {
            let (c1, c2) = (o1 + v, o2 + v);
            let mut comp = vec![(c1, c2)];
            if let Some(k) = s.iter().position(|&x| x == v) {
                comp.extend([(k, c1), (k, c2)]);
            }
            for &(i, j) in &comp {
                let y = f.sample_uniform(&mut rng);
                m.set(i, j, y);
                m.set(j, i, f.neg(y));
            }
            comps.push(comp);
        }
        if !m.is_nonsingular() {
            continue;
        }
        done += 1;
        let deleted = delete_edges(&m, &comps).unwrap();
        let zero = |m: &mut Matrix, (i, j): (usize, usize)| {
            m.set(i, j, FieldElement::ZERO);
            m.set(j, i, FieldElement::ZERO);
        };
        let mut after = m.clone();
        for &e in &deleted {
            zero(&mut after, e);
        }
        bad += pfaffian(&after).is_zero() as usize;
        for &e in comps.iter().flatten().filter(|e| !deleted.contains(e)) {
            let mut t = after.clone();
            zero(&mut t, e);
            bad += !pfaffian(&t).is_zero() as usize;
        }
    }
    outcome(bad == 0, format!("{bad} maximality violations in 100 instances"))
}

fn c8_intersection(seen: &Seen) -> Outcome {
    let mut rng = seeded_rng(108);
    let (mut under, mut bad) = (0, 0);
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let d1 = random_rep(n, &mut rng);
        let d2 = random_rep(n, &mut rng);
        let w = WeightMap::from_vec((0..n).map(|_| rng.gen_range(1..=5)).collect());
        let (e1, e2) = (enumerate_family(&d1).unwrap(), enumerate_family(&d2).unwrap());
        seen.add(&e1);
        seen.add(&e2);
        let best = e1
            .sets()
            .iter()
            .filter(|m| e2.contains(**m))
            .map(|&m| FeasibleFamily::weight(m, w.as_slice()))
            .max();
        match (weighted_intersection_value(&d1, &d2, &w, &mut rng), best) {
            (Err(Error::NoCommonSet), None) => continue,
            (Ok(v), Some(b)) if v == b => {}
            (Ok(v), Some(b)) if v < b => {
                under += 1;
                continue;
            }
            (Err(Error::NoCommonSet), Some(_)) => {
                under += 1;
                continue;
            }
            _ => {
                bad += 1;
                continue;
            }
        }
        let best = best.unwrap();
        match weighted_intersection_search(&d1, &d2, &w, &mut rng) {
            Ok(set) => {
                let m = mask(&set.iter().map(|l| e1.ground().position(l).unwrap()).collect::<Vec<_>>());
                let ok = e1.contains(m) && e2.contains(m) && FeasibleFamily::weight(m, w.as_slice()) == best;
                bad += (!ok) as usize;
            }
            Err(Error::RandomizationFailure { .. }) => under += 1,
            Err(_) => bad += 1,
        }
    }
    let rate = under as f64 / 200.0;
    outcome(
        bad == 0 && rate < MAX_ONE_SIDED_FAILURE_RATE,
        format!("{bad} wrong answers, one-sided failure rate {rate:.3}"),
    )
}

fn c9_identities() -> Outcome {
    let mut rng = seeded_rng(109);
    let mut bad = 0;
    for k in 0..1000 {
        let n = 2 * (1 + k % 4);
        let a1 = random_skew_matrix(n, &mut rng);
        let a2 = random_skew_matrix(n, &mut rng);
        bad += (pfaffian_sum_check(&a1, &a2).unwrap() != pfaffian(&a1.add(&a2).unwrap())) as usize;
    }
    let f = field();
    for k in 0..1000 {
        let n = 1 + k % 4;
        let kk = 1 + rng.gen_range(0..n);
        let a = random_skew_matrix(2 * n, &mut rng);
        let b = Matrix::from_fn(f, 2 * kk, 2 * n, |_, _| f.sample_uniform(&mut rng));
        let bab = b.mul(&a).unwrap().mul(&b.transpose()).unwrap();
        bad += (ishikawa_wakayama_check(&a, &b).unwrap() != pfaffian(&bab)) as usize;
    }
    outcome(bad == 0, format!("{bad} mismatches in 2000 instances"))
}

fn c10_axioms(seen: &Seen) -> Outcome {
    let families = seen.0.lock().unwrap();
    let bad: Vec<_> = families
        .par_iter()
        .filter_map(|(ground, sets)| {
            let fam = FeasibleFamily::new(Labels::new(ground.iter().cloned()).unwrap(), sets.iter().copied()).unwrap();
            check_symmetric_exchange(&fam).err()
        })
        .collect();
    outcome(
        bad.is_empty(),
        match bad.first() {
            None => format!("{} distinct families satisfy the exchange axiom", families.len()),
            Some(v) => format!("{} violations, e.g. {v}", bad.len()),
        },
    )
}

fn c11_performance() -> Outcome {
    let f = field();
    let mut rng = seeded_rng(111);
    let a = random_skew_matrix(1000, &mut rng);
    let start = Instant::now();
    let rank = a.rank();
    let t_rank = start.elapsed();
    let start = Instant::now();
    let pf = pfaffian(&a);
    let t_pf = start.elapsed();
    let d: Representation = random_twist(f, 500, 0.02, &mut rng).into();
    let pairs = PairPartition::from_idx(500, &(0..250).map(|i| (2 * i, 2 * i + 1)).collect::<Vec<_>>()).unwrap();
    let start = Instant::now();
    let delta = parity_value(&d, &pairs, &mut rng, deltakit::DEFAULT_EPS).unwrap();
    let t_parity = start.elapsed();
    let pass = t_rank < PERF_RANK_LIMIT && t_pf < PERF_RANK_LIMIT && t_parity < PERF_PARITY_LIMIT;
    outcome(
        pass,
        format!(
            "rank {rank} in {:.2}s, Pf nonzero {} in {:.2}s at n = 1000; parity {delta} in {:.2}s at n = 500",
            t_rank.as_secs_f64(),
            !pf.is_zero(),
            t_pf.as_secs_f64(),
            t_parity.as_secs_f64()
        ),
    )
}

fn main() {
    let seen = Seen(Mutex::new(HashSet::new()));
    let gating: Vec<(usize, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(c1_pfaffian)),
        (2, Box::new(c2_pivot)),
        (3, Box::new(|| c3_round_trip(&seen))),
        (4, Box::new(|| c4_constructions(&seen))),
        (5, Box::new(|| c5_max_weight(&seen))),
        (6, Box::new(|| c6_witness(&seen))),
        (7, Box::new(c7_delete_edges)),
        (8, Box::new(|| c8_intersection(&seen))),
        (9, Box::new(c9_identities)),
        (10, Box::new(|| c10_axioms(&seen))),
    ];
    let mut failed = 0;
    for (k, run) in &gating {
        let start = Instant::now();
        let o = run();
        failed += (!o.pass) as usize;
        println!(
            "criterion {k}: {} ({}; {:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    let o = c11_performance();
    println!(
        "criterion 11: {} (informational: {})",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail
    );
    if failed > 0 {
        eprintln!("{failed} gating criteria failed");
        std::process::exit(1);
    }
}
