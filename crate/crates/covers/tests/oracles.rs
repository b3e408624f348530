use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use proptest::prelude::*;

use covers::{
    compare_with_golden, enumerate_extremal, example_family_49, golden_runs, hurwitz_genus, lemma43_admissible,
    quotient_genus, CoverDatum, EnumerationRecord, Filters, FiniteAbelianGroup, GroupElement, LinearBound,
};

/// Multisets of `k` nonzero element indices, as sorted vectors.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

type Key = (Vec<u64>, u64, Vec<u64>);

/// Orbit counts of genus-zero-quotient data per (group, genus, signature),
/// found by listing every multiset and collapsing each orbit to its
/// smallest image.
fn naive_orbits(gmin: u64, gmax: u64, kmax: usize) -> BTreeMap<Key, usize> {
    let mut orbits: BTreeMap<Key, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for n in 2..=4 * gmax + 4 {
        for g in FiniteAbelianGroup::all_of_order(n) {
            let elems = g.elements();
            let autos = g.automorphisms();
            for k in 1..=kmax {
                for ms in multisets(n as usize, k) {
                    let branch: Vec<GroupElement> = ms.iter().map(|&i| elems[i].clone()).collect();
                    let Ok(d) = CoverDatum::new(g.clone(), 0, branch) else { continue };
                    let genus = hurwitz_genus(&d).unwrap();
                    if genus < gmin || genus > gmax {
                        continue;
                    }
                    let rep = autos
                        .iter()
                        .map(|p| {
                            let mut img: Vec<usize> = ms.iter().map(|&i| p[i]).collect();
                            img.sort_unstable();
                            img
                        })
                        .min()
                        .unwrap();
                    orbits.entry((g.invariant_factors().to_vec(), genus, d.signature())).or_default().insert(rep);
                }
            }
        }
    }
    orbits.into_iter().map(|(k, v)| (k, v.len())).collect()
}

fn counts(records: &[EnumerationRecord]) -> BTreeMap<Key, usize> {
    let mut out = BTreeMap::new();
    for r in records {
        *out.entry((r.datum.group.invariant_factors().to_vec(), r.genus, r.signature.clone())).or_insert(0) += 1;
    }
    out
}

#[test]
fn enumeration_matches_naive_orbit_count() {
    let filters = Filters { gamma: Some(0), kmax: Some(4), ..Filters::default() };
    let records = enumerate_extremal(2, 4, &LinearBound::new(0, 0), &filters).unwrap();
    assert_eq!(counts(&records), naive_orbits(2, 4, 4));
}

#[test]
fn records_are_consistent() {
    let records = enumerate_extremal(2, 6, &LinearBound::new(2, 0), &Filters::default()).unwrap();
    assert!(!records.is_empty());
    for r in &records {
        assert_eq!(hurwitz_genus(&r.datum).unwrap(), r.genus);
        assert_eq!(r.datum.signature(), r.signature);
        assert!(r.order > 2 * r.genus);
        assert!(r.order <= 4 * r.genus + 4);
        let back: EnumerationRecord = serde_json::from_str(&serde_json::to_string(r).unwrap()).unwrap();
        assert_eq!(&back, r);
        assert_eq!(CoverDatum::from_json(&r.datum.to_json()).unwrap(), r.datum);
    }
}

#[test]
fn first_two_conditions_imply_the_third_on_enumerated_data() {
    let filters = Filters { gamma: Some(0), ..Filters::default() };
    let records = enumerate_extremal(2, 7, &LinearBound::new(0, 0), &filters).unwrap();
    for r in &records {
        let rep = lemma43_admissible(&r.datum, false).unwrap();
        assert!(rep.admissible, "{:?}", r.datum);
        if r.datum.group.is_cyclic() {
            assert!(lemma43_admissible(&r.datum, true).unwrap().admissible, "{:?}", r.datum);
        }
        let (i, ii, iii) = (rep.checks[0].holds, rep.checks[1].holds, rep.checks[2].holds);
        assert!(!(i && iii) || ii);
    }
}

#[test]
fn listed_signature_is_not_realizable() {
    // Elements of orders 8, 4, 2, 2 summing to zero and generating a group
    // of order 16: none exist.
    for g in FiniteAbelianGroup::all_of_order(16) {
        let elems = g.elements();
        let of = |o: u64| elems.iter().filter(|x| g.element_order(x) == o).cloned().collect::<Vec<_>>();
        let (o8, o4, o2) = (of(8), of(4), of(2));
        for a in &o8 {
            for b in &o4 {
                for c in &o2 {
                    for d in &o2 {
                        let branch = vec![a.clone(), b.clone(), c.clone(), d.clone()];
                        assert!(CoverDatum::new(g.clone(), 0, branch).is_err(), "{g}");
                    }
                }
            }
        }
    }
}

#[test]
fn family_appears_in_enumeration() {
    for m in 2..=4u64 {
        let want = example_family_49(m).unwrap();
        let g = 3 * m - 2;
        let filters = Filters { gamma: Some(0), ..Filters::default() };
        let records = enumerate_extremal(g, g, &LinearBound::new(0, 9 * m as i64 - 1), &filters).unwrap();
        let same_group: Vec<_> = records.iter().filter(|r| r.datum.group == want.group).collect();
        assert!(same_group.iter().any(|r| r.signature == want.signature()), "m = {m}");
        assert!(same_group.iter().all(|r| r.genus == g && r.order == 9 * m));
    }
}

#[test]
fn golden_runs_agree_up_to_recorded_findings() {
    for run in golden_runs() {
        let records = run.run().unwrap();
        let cmp = compare_with_golden(&run, &records);
        assert!(cmp.unexplained.is_empty(), "{}: {:?}", run.name, cmp.unexplained);
        assert_eq!(cmp.flagged.len(), run.findings.len(), "{}", run.name);
        if run.name == "variable_moduli" {
            assert!(records.iter().all(|r| r.witness.as_ref().is_some_and(|w| w.quotient_genus <= 1)));
        }
    }
}

fn small_records() -> &'static [EnumerationRecord] {
    static RECORDS: OnceLock<Vec<EnumerationRecord>> = OnceLock::new();
    RECORDS.get_or_init(|| enumerate_extremal(2, 5, &LinearBound::new(1, 0), &Filters::default()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quotient_genus_shrinks_with_the_subgroup(pick in any::<prop::sample::Index>(), a in any::<usize>(), b in any::<usize>()) {
        let records = small_records();
        let r = pick.get(records);
        let g = &r.datum.group;
        let n = g.order() as usize;
        let x = g.element_at(a % n);
        let y = g.element_at(b % n);
        let small = quotient_genus(&r.datum, std::slice::from_ref(&x)).unwrap();
        let big = quotient_genus(&r.datum, &[x, y]).unwrap();
        prop_assert!(big <= small);
        prop_assert!(small <= r.genus);
        prop_assert_eq!(quotient_genus(&r.datum, &[]).unwrap(), r.genus);
        prop_assert_eq!(quotient_genus(&r.datum, &g.elements()).unwrap(), r.datum.quotient_genus);
    }
}
