use std::collections::HashSet;

use proptest::prelude::*;
use quotientope::classes::compute_classes;
use quotientope::fence::{all_fences, enumerate_all_congruences, essential_congruences};
use quotientope::genj::{algorithm_j, hamilton_path, representatives};
use quotientope::quotient::build_quotient_graph;
use quotientope::{Congruence, Fence, Permutation};

/// Steinhaus-Johnson-Trotter order built recursively: the largest value
/// sweeps right to left, then left to right, over each smaller permutation.
fn sjt(n: usize) -> Vec<Permutation> {
    let mut list = vec![Permutation::EMPTY];
    for k in 1..=n {
        let mut next = Vec::new();
        for (i, q) in list.iter().enumerate() {
            let positions: Vec<usize> = if i % 2 == 0 { (1..=k).rev().collect() } else { (1..=k).collect() };
            for pos in positions {
                next.push(q.insert_largest(pos).unwrap());
            }
        }
        list = next;
    }
    list
}

#[test]
fn empty_congruence_gives_plain_changes() {
    for n in 1..=7 {
        let path = hamilton_path(&Congruence::empty(n).unwrap()).unwrap();
        assert_eq!(path.representatives, sjt(n));
        for w in path.representatives.windows(2) {
            let diff: Vec<usize> = (1..=n).filter(|&i| w[0].at(i) != w[1].at(i)).collect();
            assert_eq!(diff.len(), 2);
            assert_eq!(diff[1], diff[0] + 1);
        }
    }
}

#[test]
fn generator_on_full_language_is_plain_changes() {
    for n in 1..=6 {
        let seq = algorithm_j(|_| true, Permutation::identity(n).unwrap()).unwrap();
        assert_eq!(seq, sjt(n));
    }
}

#[test]
fn paths_walk_quotient_edges() {
    for n in 1..=5 {
        let list = if n == 1 { vec![Congruence::empty(1).unwrap()] } else { essential_congruences(n).unwrap() };
        for c in list {
            let path = hamilton_path(&c).unwrap();
            let g = build_quotient_graph(&compute_classes(&c).unwrap()).unwrap();
            assert_eq!(path.classes.len(), g.node_count());
            assert_eq!(path.classes.iter().collect::<HashSet<_>>().len(), g.node_count());
            assert_eq!(path.representatives[0], Permutation::identity(n).unwrap());
            for w in path.classes.windows(2) {
                assert!(g.has_edge(w[0], w[1]), "{c:?}");
            }
        }
    }
}

#[test]
fn coarser_congruences_have_fewer_representatives() {
    for n in 2..=4 {
        let mut all = Vec::new();
        enumerate_all_congruences(n, |c| all.push(c.clone())).unwrap();
        for fine in &all {
            let fine_reps: HashSet<Permutation> = representatives(fine).unwrap()[n].iter().copied().collect();
            for coarse in all.iter().filter(|c| fine.is_subset(c)) {
                let coarse_reps = &representatives(coarse).unwrap()[n];
                assert!(coarse_reps.iter().all(|p| fine_reps.contains(p)), "{fine:?} vs {coarse:?}");
            }
        }
    }
}

fn random_congruence(n: usize) -> impl Strategy<Value = Congruence> {
    let essential: Vec<Fence> = all_fences(n).into_iter().filter(Fence::is_essential).collect();
    prop::sample::subsequence(essential.clone(), 0..4)
        .prop_map(move |gens| Congruence::downset_closure(n, &gens).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_paths_at_six_verify(c in random_congruence(6)) {
        let path = hamilton_path(&c).unwrap();
        let part = compute_classes(&c).unwrap();
        prop_assert_eq!(path.representatives.len(), part.num_classes());
        for (p, &id) in path.representatives.iter().zip(&path.classes) {
            prop_assert_eq!(part.class_of(p), id);
        }
    }
}
