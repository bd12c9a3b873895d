use std::collections::BTreeSet;

use proptest::prelude::*;
use quotientope::classes::compute_classes;
use quotientope::fence::{all_fences, fence_edges};
use quotientope::patterns::{avoid_set, congruence_from_patterns, parse_pattern_list, Pattern, WellBehavedSet};
use quotientope::perm::all_permutations;
use quotientope::Permutation;

const SETS: [&str; 7] = ["[21]", "2[31]", "[31]2", "2[31],[31]2", "2[41]3,3[41]2", "23[51]4,32[51]4", "[41]23,[41]32"];

/// Occurrences by trying every increasing index tuple; positions are 1-based.
fn occurrences(p: &Permutation, t: &Pattern) -> Vec<Vec<usize>> {
    let (n, k) = (p.len(), t.len());
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (1..=k).collect();
    if k > n {
        return out;
    }
    loop {
        let values: Vec<u8> = idx.iter().map(|&i| p.at(i)).collect();
        let same_order = (0..k).all(|x| (0..k).all(|y| (values[x] < values[y]) == (t.entries().at(x + 1) < t.entries().at(y + 1))));
        let glued_ok = t.glued().is_none_or(|g| idx[g] == idx[g - 1] + 1);
        if same_order && glued_ok {
            out.push(idx.clone());
        }
        // next combination
        let mut j = k;
        while j > 0 && idx[j - 1] == n - k + j {
            j -= 1;
        }
        if j == 0 {
            return out;
        }
        idx[j - 1] += 1;
        for m in j..k {
            idx[m] = idx[m - 1] + 1;
        }
    }
}

fn set(s: &str) -> WellBehavedSet {
    WellBehavedSet::new(&parse_pattern_list(s).unwrap()).unwrap()
}

#[test]
fn containment_matches_index_scan() {
    let patterns: Vec<Pattern> = ["231", "2[31]", "[23]1", "[21]", "3[41]2", "1[32]"].iter().map(|s| s.parse().unwrap()).collect();
    for n in 0..=6 {
        for p in all_permutations(n).unwrap() {
            for t in &patterns {
                let all = occurrences(&p, t);
                assert_eq!(t.is_contained_in(&p), !all.is_empty(), "{p:?} {t}");
                if let Some(found) = t.find_in(&p) {
                    assert!(all.contains(&found));
                }
                let mut seen = Vec::new();
                t.for_each_occurrence(&p, |o| {
                    seen.push(o.to_vec());
                    false
                });
                seen.sort();
                assert_eq!(seen, all);
            }
        }
    }
}

#[test]
fn emitted_fences_are_the_glued_edges() {
    for s in SETS {
        let w = set(s);
        for n in 2..=5 {
            let scanned: BTreeSet<_> = all_fences(n)
                .into_iter()
                .filter(|f| {
                    fence_edges(f, n).unwrap().iter().any(|&(p, q)| {
                        let (lower, upper) = if p.inversion_count() < q.inversion_count() { (p, q) } else { (q, p) };
                        w.patterns().iter().any(|t| {
                            let g = t.glued().unwrap();
                            occurrences(&upper, t).iter().any(|o| upper.swap_adjacent(o[g - 1]) == lower)
                        })
                    })
                })
                .collect();
            let emitted: BTreeSet<_> = w.fences(n).into_iter().collect();
            assert_eq!(emitted, scanned, "{s} at n = {n}");
        }
    }
}

#[test]
fn class_minima_are_the_avoiders() {
    for s in SETS {
        let w = set(s);
        for n in 1..=6 {
            let c = congruence_from_patterns(&w, n).unwrap();
            let part = compute_classes(&c).unwrap();
            let minima: BTreeSet<Permutation> = part.classes().iter().map(|x| x.min).collect();
            let avoiders: BTreeSet<Permutation> = all_permutations(n)
                .unwrap()
                .filter(|p| w.patterns().iter().all(|t| occurrences(p, t).is_empty()))
                .collect();
            assert_eq!(minima, avoiders, "{s} at n = {n}");
            assert_eq!(avoid_set(n, w.patterns()).unwrap().into_iter().collect::<BTreeSet<_>>(), avoiders);
        }
    }
}

#[test]
fn tamari_avoiders_are_catalan() {
    let w = set("2[31]");
    let counts: Vec<usize> = (1..=8).map(|n| avoid_set(n, w.patterns()).unwrap().len()).collect();
    assert_eq!(counts, [1, 2, 5, 14, 42, 132, 429, 1430]);
}

#[test]
fn open_sets_are_rejected() {
    for s in ["23[51]4", "[51]243", "2[51]34,32[51]4"] {
        assert!(WellBehavedSet::new(&parse_pattern_list(s).unwrap()).is_err(), "{s}");
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle().prop_map(|v| Permutation::new(&v).unwrap())
}

proptest! {
    #[test]
    fn rewriting_descends_to_the_class_minimum(p in perm_strategy(6), which in 0..SETS.len()) {
        let w = set(SETS[which]);
        let c = congruence_from_patterns(&w, 6).unwrap();
        let part = compute_classes(&c).unwrap();
        let r = w.rewrite_to_avoider(&p);
        prop_assert!(r.weak_leq(&p).unwrap());
        prop_assert!(w.patterns().iter().all(|t| !t.is_contained_in(&r)));
        prop_assert_eq!(r, part.class(part.class_of(&p)).min);
    }
}
