use proptest::prelude::*;
use rand::Rng;

use deltakit::oracle::{
    bits, check_symmetric_exchange, enumerate_family, family_delta_sum, family_union, mask,
    parity_bruteforce,
};
use deltakit::random::{random_contraction, random_projected, random_skew, random_twist};
use deltakit::skew::pivot;
use deltakit::{
    delta_covering_value, delta_sum, max_weight_feasible, parity_value, poly_det, search_parity,
    seeded_rng, union, DeltaMatroid, Labels, PairPartition, PolyMatrix, PrimeField,
    Representation, SeededRng, ZPolynomial,
};

fn field() -> PrimeField {
    PrimeField::mersenne61()
}

fn rep(kind: u8, n: usize, rng: &mut SeededRng) -> Representation {
    let f = field();
    match kind % 3 {
        0 => random_twist(f, n, 0.5, rng).into(),
        1 => random_contraction(f, n, rng.gen_range(0..=n.min(2)), 0.45, rng).into(),
        _ => random_projected(f, n, rng.gen_range(1..=2), rng.gen_range(0..=1), 0.5, rng).into(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pfaffian_squares_to_determinant(seed: u64, n in 0usize..14) {
        let mut rng = seeded_rng(seed);
        let a = random_skew(field(), Labels::numbered("x", n), 0.7, &mut rng);
        let pf = a.pfaffian();
        prop_assert_eq!(field().mul(pf, pf), a.det());
        if n % 2 == 1 {
            prop_assert!(pf.is_zero());
        }
    }

    #[test]
    fn pivoting_tracks_symmetric_differences(seed: u64, n in 1usize..7, s_mask: u32) {
        let f = field();
        let mut rng = seeded_rng(seed);
        let a = random_skew(f, Labels::numbered("x", n), 1.0, &mut rng).into_parts().1;
        let s = bits(s_mask & ((1u32 << n) - 1));
        let ds = a.principal(&s).det().unwrap();
        prop_assume!(!ds.is_zero());
        let p = pivot(&a, &s).unwrap();
        for x in 0u32..1 << n {
            let lhs = f.mul(p.principal(&bits(x)).det().unwrap(), ds);
            prop_assert_eq!(lhs, a.principal(&bits(x ^ mask(&s))).det().unwrap());
        }
        prop_assert_eq!(pivot(&p, &s).unwrap(), a);
    }

    #[test]
    fn families_are_delta_matroids(seed: u64, kind: u8, n in 0usize..7) {
        let mut rng = seeded_rng(seed);
        let d = rep(kind, n, &mut rng);
        let fam = enumerate_family(&d).unwrap();
        prop_assert!(!fam.is_empty());
        prop_assert!(check_symmetric_exchange(&fam).is_ok());
        if !d.is_projected() {
            prop_assert!(fam.is_even());
        }
    }

    #[test]
    fn twisting_and_duality_act_setwise(seed: u64, kind: u8, n in 0usize..7, s_mask: u32) {
        let mut rng = seeded_rng(seed);
        let d = rep(kind, n, &mut rng);
        let fam = enumerate_family(&d).unwrap();
        let s = s_mask & ((1u32 << n) - 1);
        let twisted = d.twist_by_idx(&bits(s));
        prop_assert_eq!(enumerate_family(&twisted).unwrap(), fam.twist(s));
        prop_assert_eq!(enumerate_family(&twisted.twist_by_idx(&bits(s))).unwrap(), fam.clone());
        prop_assert_eq!(enumerate_family(&d.dual()).unwrap(), fam.dual());
    }

    #[test]
    fn minors_match_the_oracle(seed: u64, kind: u8, n in 1usize..7, s_mask: u32) {
        let mut rng = seeded_rng(seed);
        let d = rep(kind, n, &mut rng);
        let fam = enumerate_family(&d).unwrap();
        let s = s_mask & ((1u32 << n) - 1);
        let avoiding = fam.sets().iter().any(|m| m & s == 0);
        let containing = fam.sets().iter().any(|m| m & s == s);
        match d.delete_idx(&bits(s)) {
            Ok(m) => prop_assert_eq!(enumerate_family(&m).unwrap(), fam.delete(s)),
            Err(_) => prop_assert!(!avoiding),
        }
        match d.contract_idx(&bits(s)) {
            Ok(m) => prop_assert_eq!(enumerate_family(&m).unwrap(), fam.contract(s)),
            Err(_) => prop_assert!(!containing),
        }
    }

    #[test]
    fn constructions_never_exceed_their_targets(seed: u64, k1: u8, k2: u8, n in 1usize..6) {
        let mut rng = seeded_rng(seed);
        let d1 = rep(k1, n, &mut rng);
        let d2 = rep(k2, n, &mut rng);
        let (e1, e2) = (enumerate_family(&d1).unwrap(), enumerate_family(&d2).unwrap());
        let u = enumerate_family(&union(&d1, &d2, &mut rng, 1e-6).unwrap()).unwrap();
        let ds = enumerate_family(&delta_sum(&d1, &d2, &mut rng, 1e-6).unwrap()).unwrap();
        let tu = family_union(&e1, &e2).unwrap();
        let td = family_delta_sum(&e1, &e2).unwrap();
        prop_assert!(u.sets().iter().all(|m| tu.contains(*m)));
        prop_assert!(ds.sets().iter().all(|m| td.contains(*m)));
        // With p = 2^61 - 1 the misses are astronomically unlikely.
        prop_assert_eq!(u, tu);
        prop_assert_eq!(ds, td.clone());
        let best = td.sets().iter().map(|m| m.count_ones() as usize).max().unwrap();
        prop_assert_eq!(delta_covering_value(&d1, &d2, &mut rng, 1e-6).unwrap(), best);
    }

    #[test]
    fn dual_delta_sum_detects_common_sets(seed: u64, k1: u8, k2: u8, n in 1usize..6) {
        let mut rng = seeded_rng(seed);
        let d1 = rep(k1, n, &mut rng);
        let d2 = rep(k2, n, &mut rng);
        let (e1, e2) = (enumerate_family(&d1).unwrap(), enumerate_family(&d2).unwrap());
        let common = e1.sets().iter().any(|m| e2.contains(*m));
        let sum = delta_sum(&d1, &d2.dual(), &mut rng, 1e-6).unwrap();
        let all: Vec<usize> = (0..n).collect();
        prop_assert_eq!(sum.is_feasible_idx(&all), common);
    }

    #[test]
    fn max_weight_is_optimal(seed: u64, kind: u8, n in 0usize..8) {
        let mut rng = seeded_rng(seed);
        let d = rep(kind, n, &mut rng);
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        let fam = enumerate_family(&d).unwrap();
        let (set, weight) = max_weight_feasible(&d, &w).unwrap();
        prop_assert!(fam.contains(mask(&set)));
        prop_assert_eq!(Some(weight), fam.max_weight(&w).map(|b| b.1));
    }

    #[test]
    fn parity_matches_bruteforce(seed: u64, kind: u8, n in 2usize..7) {
        let mut rng = seeded_rng(seed);
        let d = rep(kind, n, &mut rng);
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let k = rng.gen_range(1..=n / 2);
        let pairs: Vec<(usize, usize)> = (0..k).map(|i| (order[2 * i], order[2 * i + 1])).collect();
        let pairs = PairPartition::from_idx(n, &pairs).unwrap();
        let fam = enumerate_family(&d).unwrap();
        let expected = parity_bruteforce(&fam, &pairs);
        prop_assert_eq!(Some(parity_value(&d, &pairs, &mut rng, 1e-6).unwrap()), expected);
        let witness = search_parity(&d, &pairs, &mut rng, 1e-6).unwrap();
        let idx = d.ground().positions(&witness.set).unwrap();
        prop_assert!(fam.contains(mask(&idx)));
        prop_assert_eq!(Some(witness.broken), expected);
        prop_assert_eq!(pairs.broken(&idx), witness.broken);
    }

    #[test]
    fn poly_det_agrees_with_evaluation(seed: u64, n in 0usize..6, deg in 0usize..4) {
        let f = field();
        let mut rng = seeded_rng(seed);
        let a = PolyMatrix::from_fn(f, n, |_, _| {
            ZPolynomial::new(f, (0..=deg).map(|_| f.sample_uniform(&mut rng)).collect())
        });
        let det = poly_det(&a, n * deg).unwrap();
        for _ in 0..3 {
            let x = f.sample_uniform(&mut rng);
            prop_assert_eq!(det.eval(x), a.eval(x).det().unwrap());
        }
    }
}
