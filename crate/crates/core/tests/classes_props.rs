use std::collections::{BTreeSet, HashSet};

use quotientope::classes::{class_projection, compute_classes, rail_segments};
use quotientope::fence::{all_fences, enumerate_all_congruences, essential_congruences};
use quotientope::perm::all_permutations;
use quotientope::{Congruence, Fence, Permutation};

/// Classes by flood fill over bars, found without union-find.
fn classes_oracle(c: &Congruence) -> Vec<BTreeSet<Permutation>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in all_permutations(c.n()).unwrap() {
        if seen.contains(&p) {
            continue;
        }
        let mut class = BTreeSet::from([p]);
        let mut stack = vec![p];
        seen.insert(p);
        while let Some(q) = stack.pop() {
            let (down, up) = q.cover_neighbors();
            for r in down.into_iter().chain(up) {
                if c.is_bar(&q, &r).unwrap() && seen.insert(r) {
                    class.insert(r);
                    stack.push(r);
                }
            }
        }
        out.push(class);
    }
    out
}

#[test]
fn classes_match_flood_fill_and_are_intervals() {
    for n in 1..=4 {
        enumerate_all_congruences(n, |c| {
            let part = compute_classes(c).unwrap();
            let oracle = classes_oracle(c);
            assert_eq!(part.num_classes(), oracle.len());
            let all: Vec<Permutation> = all_permutations(n).unwrap().collect();
            for x in part.classes() {
                let members: BTreeSet<Permutation> = part.members(x.id).into_iter().collect();
                assert!(oracle.contains(&members));
                assert_eq!(members.len(), x.size);
                // the class is exactly the weak-order interval [min, max]
                let interval: BTreeSet<Permutation> = all
                    .iter()
                    .filter(|p| x.min.weak_leq(p).unwrap() && p.weak_leq(&x.max).unwrap())
                    .copied()
                    .collect();
                assert_eq!(members, interval, "{c:?}");
            }
        })
        .unwrap();
    }
}

#[test]
fn rails_collapse_all_or_nothing() {
    for n in 2..=5 {
        let closing = Fence::new(n as u8 - 1, n as u8, &[]).unwrap();
        let gens: Vec<Vec<Fence>> = vec![vec![], vec![closing], all_fences(n).into_iter().filter(|f| f.span() == 2).collect()];
        for g in gens {
            let c = Congruence::downset_closure(n, &g).unwrap();
            let has = c.contains(&closing);
            let fully_barred: Vec<bool> = all_permutations(n - 1)
                .unwrap()
                .map(|q| (1..n).all(|i| c.is_bar(&q.insert_largest(i + 1).unwrap(), &q.insert_largest(i).unwrap()).unwrap()))
                .collect();
            assert_eq!(has, fully_barred.iter().all(|&b| b));
            assert_eq!(has, fully_barred.iter().any(|&b| b));
            assert_eq!(has, rail_segments(&c, &Permutation::identity(n - 1).unwrap()).is_err());
        }
    }
}

#[test]
fn rail_segments_follow_classes() {
    for n in 2..=5 {
        for c in essential_congruences(n).unwrap() {
            let part = compute_classes(&c).unwrap();
            for q in all_permutations(n - 1).unwrap() {
                let segments = rail_segments(&c, &q).unwrap();
                assert_eq!(*segments[0].end(), n);
                assert_eq!(*segments.last().unwrap().start(), 1);
                let mut previous = None;
                for s in &segments {
                    let ids: HashSet<usize> = s.clone().map(|i| part.class_of(&q.insert_largest(i).unwrap())).collect();
                    assert_eq!(ids.len(), 1);
                    let id = *ids.iter().next().unwrap();
                    assert_ne!(previous, Some(id));
                    previous = Some(id);
                }
                if n >= 2 {
                    assert!(segments.len() >= 2);
                }
            }
        }
    }
}

#[test]
fn projections_are_classes_of_the_restriction() {
    for n in 2..=5 {
        for c in essential_congruences(n).unwrap() {
            let part = compute_classes(&c).unwrap();
            let below = compute_classes(&c.restriction().unwrap()).unwrap();
            let below_classes: HashSet<Vec<Permutation>> = (0..below.num_classes()).map(|i| below.members(i)).collect();
            let mut images = HashSet::new();
            for x in part.classes() {
                let image = class_projection(&part, x.id).unwrap();
                assert!(below_classes.contains(&image), "{c:?}: {image:?}");
                let y = below.class(below.class_of(&image[0]));
                assert_eq!(x.min.remove_largest().unwrap(), y.min);
                assert_eq!(x.max.remove_largest().unwrap(), y.max);
                images.insert(image);
            }
            assert_eq!(images, below_classes);
        }
    }
}

#[test]
fn extreme_congruences() {
    for n in 1..=6 {
        assert_eq!(compute_classes(&Congruence::full(n).unwrap()).unwrap().num_classes(), 1);
        assert_eq!(compute_classes(&Congruence::empty(n).unwrap()).unwrap().num_classes(), (1..=n).product::<usize>());
    }
}
