use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use lattice_core::{
    dimension, is_integrally_convex, is_relatively_convex, longest_chain, union_count, ConvexTriple, LatticeSet,
};
use lemma_lab::{
    bound_formula, check_intermediate_identities, generate_nested_triple, generate_scattered_triple, verify_lemma,
    LemmaId, RegionWitness,
};

fn naive_union(t: &ConvexTriple) -> usize {
    let mut s = HashSet::new();
    for (a, b) in [(t.a1(), t.a3()), (t.a2(), t.a2())] {
        for p in a.iter() {
            for q in b.iter() {
                let v: Vec<i64> = p.coords().iter().zip(q.coords()).map(|(x, y)| x + y).collect();
                s.insert(v);
            }
        }
    }
    s.len()
}

/// Arranges along `axis` straight from the definition: each fiber of size
/// `s` becomes `0..s`.
fn naive_arrange(a: &LatticeSet, axis: usize) -> LatticeSet {
    let mut fibers: Vec<(Vec<i64>, usize)> = Vec::new();
    for p in a.iter() {
        let mut key = p.coords().to_vec();
        key[axis] = 0;
        match fibers.iter_mut().find(|(k, _)| *k == key) {
            Some((_, n)) => *n += 1,
            None => fibers.push((key, 1)),
        }
    }
    let mut rows = Vec::new();
    for (key, n) in fibers {
        for i in 0..n {
            let mut r = key.clone();
            r[axis] = i as i64;
            rows.push(r);
        }
    }
    LatticeSet::from_rows(&rows).unwrap()
}

fn twelfths(n2: i64, n3: i64) -> i64 {
    [
        12 * n3 + 36 * n2 - 276,
        10 * n3 + 40 * n2 - 120,
        10 * n3 + 39 * n2 - 24,
        7 * n3 + 45 * n2 - 72,
        6 * n3 + 48 * n2 - 48,
        60 * n2 - 372,
    ]
    .into_iter()
    .min()
    .unwrap()
}

fn staircase_2d(heights: &[usize]) -> LatticeSet {
    let mut rows = Vec::new();
    for (x, &h) in heights.iter().enumerate() {
        for y in 0..h {
            rows.push(vec![x as i64, y as i64]);
        }
    }
    LatticeSet::from_rows(&rows).unwrap()
}

fn heights() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..8, 1..8).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_triples_are_convex_and_certified(dim in 2usize..=4, size in 5usize..60, seed in any::<u64>()) {
        prop_assume!(size > dim);
        let t = generate_nested_triple(dim, size, seed).unwrap();
        prop_assert_eq!(dimension(t.a1()).unwrap(), dim);
        for s in [t.a1(), t.a2(), t.a3()] {
            prop_assert!(is_integrally_convex(s).unwrap());
        }
        prop_assert!(is_relatively_convex(t.a1(), t.a2()).unwrap());
        prop_assert!(is_relatively_convex(t.a2(), t.a3()).unwrap());
        let w = RegionWitness::from_json(t.witness_regions().unwrap()).unwrap();
        prop_assert!(w.certifies([t.a1(), t.a2(), t.a3()]));
    }

    #[test]
    fn generation_is_deterministic(dim in 2usize..=4, size in 5usize..40, seed in any::<u64>()) {
        prop_assume!(size > dim);
        prop_assert_eq!(generate_nested_triple(dim, size, seed).unwrap(), generate_nested_triple(dim, size, seed).unwrap());
    }

    #[test]
    fn union_count_matches_naive_and_covers_a2(seed in any::<u64>(), convex in any::<bool>()) {
        let t = if convex { generate_nested_triple(3, 40, seed) } else { generate_scattered_triple(3, 40, seed) }.unwrap();
        let n = union_count(&t).unwrap();
        prop_assert_eq!(n, naive_union(&t));
        prop_assert!(n >= t.a2().len());
    }

    #[test]
    fn arrangement_inequality_by_brute_force(dim in 3usize..=4, seed in any::<u64>(), convex in any::<bool>()) {
        let t = if convex { generate_nested_triple(dim, 30, seed) } else { generate_scattered_triple(dim, 30, seed) }.unwrap();
        let mut cur = t.clone();
        for axis in 0..dim {
            let next = ConvexTriple::new(
                naive_arrange(cur.a1(), axis),
                naive_arrange(cur.a2(), axis),
                naive_arrange(cur.a3(), axis),
            ).unwrap();
            prop_assert!(naive_union(&cur) >= naive_union(&next));
            cur = next;
        }
        let (rep, out) = verify_lemma(LemmaId::Arrangement, &t, seed).unwrap();
        prop_assert!(rep.admissible);
        prop_assert!(out.unwrap().satisfied);
    }

    #[test]
    fn six_case_minimum_matches_integer_form(n2 in 0u64..5000, n3 in 0u64..5000) {
        let got = bound_formula(LemmaId::Dim3, n2, n3).unwrap();
        let want = BigRational::new(BigInt::from(twelfths(n2 as i64, n3 as i64)), BigInt::from(12));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn mixed_and_dim4_forms_match_integer_form(n2 in 0u64..5000, n3 in 0u64..5000) {
        let n2i = n2 as i64;
        let n3i = n3 as i64;
        let mixed = BigRational::new(BigInt::from(9 * n3i + 32 * n2i - 300), BigInt::from(10));
        prop_assert_eq!(bound_formula(LemmaId::Mixed, n2, n3).unwrap(), mixed);
        // 1590 = 3 * 530; (1 - e) = 529/530, 14(1 - 4e)/3 = 7364/1590.
        let dim4 = BigRational::new(BigInt::from(3 * 529 * n3i + 7364 * n2i - 57 * 1590), BigInt::from(1590));
        prop_assert_eq!(bound_formula(LemmaId::Dim4, n2, n3).unwrap(), dim4);
    }

    #[test]
    fn planar_identity_is_a_lower_bound(h in heights()) {
        let a = staircase_2d(&h);
        let r = check_intermediate_identities(&a).unwrap();
        prop_assert!(r.checks.iter().all(|c| c.lower_bound_holds()), "{:?}", r);
    }

    #[test]
    fn slab_identity_is_a_lower_bound(h in heights(), t in 1usize..8) {
        let t = t.min(h.len());
        let mut rows: Vec<Vec<i64>> = staircase_2d(&h).iter().map(|p| vec![p.coords()[0], p.coords()[1], 0]).collect();
        for x in 0..t {
            rows.push(vec![x as i64, 0, 1]);
        }
        let a = LatticeSet::from_rows(&rows).unwrap();
        let r = check_intermediate_identities(&a).unwrap();
        prop_assert!(r.checks.iter().all(|c| c.lower_bound_holds()), "{:?}", r);
    }

    #[test]
    fn chain_caps_size_of_convex_sets(dim in 2usize..=4, size in 5usize..80, seed in any::<u64>()) {
        // Two points congruent mod L span L + 1 lattice points of the hull,
        // so an integrally convex set with longest chain L has at most L^d points.
        prop_assume!(size > dim);
        let t = generate_nested_triple(dim, size, seed).unwrap();
        let a = t.a3();
        let l = longest_chain(a).unwrap();
        prop_assert!(a.len() <= l.pow(dim as u32));
    }
}

#[test]
fn reports_repeat_exactly() {
    for seed in 0..20 {
        let t = generate_nested_triple(3, 80, seed).unwrap();
        for lemma in LemmaId::ALL {
            assert_eq!(verify_lemma(lemma, &t, seed).unwrap(), verify_lemma(lemma, &t, seed).unwrap());
        }
    }
}

#[test]
fn outcome_flag_matches_comparison() {
    for seed in 0..40 {
        let t = generate_nested_triple(3, 120, seed).unwrap();
        for lemma in [LemmaId::Dim3, LemmaId::Mixed] {
            if let (_, Some(o)) = verify_lemma(lemma, &t, seed).unwrap() {
                let lhs = BigRational::from_integer(BigInt::from(o.lhs_count));
                assert_eq!(o.satisfied, lhs >= o.rhs_bound);
                assert_eq!(o.witness.is_some(), !o.satisfied);
            }
        }
    }
}
