//! Zigzag languages, greedy generation by minimal jumps, and Hamilton paths
//! on lattice quotients.

use std::collections::HashSet;

use crate::classes::{compute_classes, rail_segments, ClassPartition};
use crate::error::{Error, Result};
use crate::fence::{Congruence, Fence};
use crate::perm::{Direction, Permutation};

/// How level `k` of a zigzag language arises from level `k - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZigzagMode {
    /// Both `c_1(π)` and `c_k(π)` are present for every `π` one level down.
    BothEnds,
    /// Exactly the insertions `c_k(π)`.
    AppendOnly,
}

/// A zigzag language together with its whole projection chain.
#[derive(Clone, Debug)]
pub struct ZigzagLanguage {
    /// `levels[k]` is the sorted member list of `L_k`; `levels[0] = [ε]`.
    levels: Vec<Vec<Permutation>>,
    /// `modes[k - 1]` for level `k`.
    modes: Vec<ZigzagMode>,
    members: HashSet<Permutation>,
}

impl ZigzagLanguage {
    /// Derives the chain by repeatedly removing the largest value and checks
    /// the zigzag condition at every level.
    pub fn from_members(n: usize, members: impl IntoIterator<Item = Permutation>) -> Result<ZigzagLanguage> {
        let mut top: Vec<Permutation> = members.into_iter().collect();
        if let Some(bad) = top.iter().find(|p| p.len() != n) {
            return Err(Error::LengthMismatch { left: bad.len(), right: n });
        }
        top.sort_unstable();
        top.dedup();
        let mut levels = vec![top];
        for _ in 0..n {
            let mut below: Vec<Permutation> = levels.last().unwrap().iter().map(Permutation::remove_largest_unchecked).collect();
            below.sort_unstable();
            below.dedup();
            levels.push(below);
        }
        levels.reverse();
        if levels[0] != [Permutation::EMPTY] {
            return Err(Error::NotZigzag("the language is empty".into()));
        }
        let mut modes = Vec::with_capacity(n);
        for k in 1..=n {
            let here: HashSet<&Permutation> = levels[k].iter().collect();
            let both = levels[k - 1]
                .iter()
                .all(|q| here.contains(&q.insert_largest_unchecked(1)) && here.contains(&q.insert_largest_unchecked(k)));
            let append = levels[k].len() == levels[k - 1].len() && levels[k].iter().all(|p| p.at(k) == k as u8);
            modes.push(if both {
                ZigzagMode::BothEnds
            } else if append {
                ZigzagMode::AppendOnly
            } else {
                return Err(Error::NotZigzag(format!("level {k} satisfies neither zigzag condition")));
            });
        }
        let members = levels[n].iter().copied().collect();
        Ok(ZigzagLanguage { levels, modes, members })
    }

    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn len(&self) -> usize {
        self.levels[self.n()].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(p)
    }

    /// Membership in `L_k`.
    pub fn contains_at(&self, k: usize, p: &Permutation) -> bool {
        self.levels[k].binary_search(p).is_ok()
    }

    /// Sorted members of `L_k`.
    pub fn level(&self, k: usize) -> &[Permutation] {
        &self.levels[k]
    }

    pub fn mode(&self, k: usize) -> ZigzagMode {
        self.modes[k - 1]
    }

    pub fn members(&self) -> &[Permutation] {
        &self.levels[self.n()]
    }
}

/// Builds the jump order recursively: alternately insert the largest value
/// right-to-left and left-to-right into consecutive elements one level down,
/// or only append it when the level only appends.
pub fn jump_sequence(lang: &ZigzagLanguage) -> Vec<Permutation> {
    let mut seq = vec![Permutation::EMPTY];
    for k in 1..=lang.n() {
        seq = match lang.mode(k) {
            ZigzagMode::AppendOnly => seq.iter().map(|q| q.insert_largest_unchecked(k)).collect(),
            ZigzagMode::BothEnds => {
                let mut next = Vec::new();
                for (j, q) in seq.iter().enumerate() {
                    let positions: Box<dyn Iterator<Item = usize>> =
                        if j % 2 == 0 { Box::new((1..=k).rev()) } else { Box::new(1..=k) };
                    next.extend(positions.map(|i| q.insert_largest_unchecked(i)).filter(|p| lang.contains_at(k, p)));
                }
                next
            }
        };
    }
    seq
}

/// The shortest jump of `value` in `direction` that lands in the language.
pub fn minimal_jump<F: Fn(&Permutation) -> bool>(
    p: &Permutation,
    value: u8,
    direction: Direction,
    in_language: &F,
) -> Option<Permutation> {
    // once a jump over d entries is blocked by a larger entry, so is every longer one
    (1..p.len()).map_while(|d| p.jump(value, direction, d)).find(|q| in_language(q))
}

/// Greedy generation: from the current permutation, perform a minimal jump
/// of the largest value whose minimal jump reaches an unvisited member;
/// stop when there is none or when that value could go either way.
pub fn algorithm_j<F: Fn(&Permutation) -> bool>(in_language: F, start: Permutation) -> Result<Vec<Permutation>> {
    if !in_language(&start) {
        return Err(Error::NotInLanguage(start.to_string()));
    }
    let n = start.len();
    let mut visited = HashSet::new();
    visited.insert(start);
    let mut out = vec![start];
    let mut current = start;
    'step: loop {
        for value in (2..=n as u8).rev() {
            let fresh = |d| minimal_jump(&current, value, d, &in_language).filter(|q| !visited.contains(q));
            match (fresh(Direction::Left), fresh(Direction::Right)) {
                (None, None) => continue,
                (Some(_), Some(_)) => break 'step,
                (Some(q), None) | (None, Some(q)) => {
                    visited.insert(q);
                    out.push(q);
                    current = q;
                    continue 'step;
                }
            }
        }
        break;
    }
    Ok(out)
}

/// One representative per class, built along the restriction chain.
#[derive(Clone, Debug)]
pub struct RepSet {
    language: ZigzagLanguage,
    partition: ClassPartition,
    /// `rep_of_class[id]`
    rep_of_class: Vec<Permutation>,
}

impl RepSet {
    pub fn language(&self) -> &ZigzagLanguage {
        &self.language
    }

    pub fn partition(&self) -> &ClassPartition {
        &self.partition
    }

    pub fn representative(&self, class_id: usize) -> Permutation {
        self.rep_of_class[class_id]
    }

    pub fn congruence(&self) -> &Congruence {
        self.partition.congruence()
    }
}

/// Representatives for every prefix size `0..=n`, one list per level,
/// without class verification.
///
/// Walks the chain of restrictions upward. If the last two values are
/// contracted, every representative just gets `n` appended. Otherwise the
/// rail of each representative one level down is cut into class segments;
/// the segments at the two ends contribute `c_1` and `c_n`, and each inner
/// segment contributes its lexicographically smallest element.
pub fn representatives(c: &Congruence) -> Result<Vec<Vec<Permutation>>> {
    let n = c.n();
    let mut chain = vec![c.clone()];
    for _ in 0..n {
        let next = chain.last().unwrap().restriction()?;
        chain.push(next);
    }
    chain.reverse();
    let mut levels = vec![vec![Permutation::EMPTY]];
    for k in 1..=n {
        let ck = &chain[k];
        let below = &levels[k - 1];
        let here: Vec<Permutation> = if k >= 2 && ck.contains(&Fence::new_unchecked(k as u8 - 1, k as u8, 0)) {
            below.iter().map(|q| q.insert_largest_unchecked(k)).collect()
        } else {
            let mut out = Vec::new();
            for q in below {
                for seg in rail_segments(ck, q)? {
                    let pick = if *seg.start() == 1 {
                        1
                    } else {
                        // c_k if the segment holds it, else the largest position (lexicographically least)
                        *seg.end()
                    };
                    out.push(q.insert_largest_unchecked(pick));
                }
            }
            out
        };
        levels.push(here);
    }
    Ok(levels)
}

/// Representatives, checked to meet every class exactly once.
pub fn build_representatives(c: &Congruence) -> Result<RepSet> {
    let levels = representatives(c)?;
    let partition = compute_classes(c)?;
    let n = c.n();
    let mut rep_of_class: Vec<Option<Permutation>> = vec![None; partition.num_classes()];
    for p in &levels[n] {
        let id = partition.class_of(p);
        if rep_of_class[id].replace(*p).is_some() {
            return Err(Error::Verification(format!("class {id} received two representatives")));
        }
    }
    let rep_of_class = rep_of_class
        .into_iter()
        .enumerate()
        .map(|(id, r)| r.ok_or_else(|| Error::Verification(format!("class {id} has no representative"))))
        .collect::<Result<Vec<_>>>()?;
    let language = ZigzagLanguage::from_members(n, levels[n].iter().copied())?;
    for k in 0..=n {
        let mut want = levels[k].clone();
        want.sort_unstable();
        if language.level(k) != want.as_slice() {
            return Err(Error::Verification(format!("projection of the representatives differs from level {k}")));
        }
    }
    Ok(RepSet { language, partition, rep_of_class })
}

/// A verified Hamilton path of the quotient graph.
#[derive(Clone, Debug)]
pub struct HamiltonPath {
    pub representatives: Vec<Permutation>,
    pub classes: Vec<usize>,
}

/// Walks a jump one adjacent transposition at a time and checks that the
/// class changes exactly once, from the class of `from` to that of `to`.
fn check_jump(part: &ClassPartition, from: &Permutation, to: &Permutation) -> Result<()> {
    let n = from.len();
    let (value, direction, steps) = (2..=n as u8)
        .rev()
        .flat_map(|v| [(v, Direction::Left), (v, Direction::Right)])
        .find_map(|(v, dir)| {
            let d = from.position_of(v)?.abs_diff(to.position_of(v)?);
            (d > 0 && from.jump(v, dir, d) == Some(*to)).then_some((v, dir, d))
        })
        .ok_or_else(|| Error::Verification(format!("{from:?} -> {to:?} is not a jump")))?;
    let mut walk = *from;
    let mut changes = 0;
    for _ in 0..steps {
        let next = walk.jump(value, direction, 1).expect("sub-jumps of a valid jump are valid");
        if part.class_of(&walk) != part.class_of(&next) {
            changes += 1;
        }
        walk = next;
    }
    if changes != 1 {
        return Err(Error::Verification(format!("jump {from:?} -> {to:?} crosses {changes} class boundaries")));
    }
    Ok(())
}

/// Runs the greedy generator on the representatives, starting at the
/// identity, and verifies the result is a Hamilton path of the quotient.
pub fn hamilton_path(c: &Congruence) -> Result<HamiltonPath> {
    let reps = build_representatives(c)?;
    hamilton_path_from(&reps)
}

pub fn hamilton_path_from(reps: &RepSet) -> Result<HamiltonPath> {
    let n = reps.congruence().n();
    let lang = reps.language();
    let sequence = algorithm_j(|p| lang.contains(p), Permutation::identity(n)?)?;
    let part = reps.partition();
    let classes: Vec<usize> = sequence.iter().map(|p| part.class_of(p)).collect();
    let mut seen = vec![false; part.num_classes()];
    for &id in &classes {
        if std::mem::replace(&mut seen[id], true) {
            return Err(Error::Verification(format!("class {id} visited twice")));
        }
    }
    if classes.len() != part.num_classes() {
        return Err(Error::Verification(format!(
            "path visits {} of {} classes",
            classes.len(),
            part.num_classes()
        )));
    }
    for w in sequence.windows(2) {
        check_jump(part, &w[0], &w[1])?;
    }
    Ok(HamiltonPath { representatives: sequence, classes })
}

/// `(parity, cyclic)`: whether every intermediate level `k ∈ [2, n-1]` has
/// an even number of representatives, and whether the generated path closes
/// up into a cycle. Both are `false` for `n < 3`.
pub fn is_cyclic_order(c: &Congruence) -> Result<(bool, bool)> {
    let n = c.n();
    if n > 8 {
        return Err(Error::TooLarge { n, limit: 8, what: "cyclic order check" });
    }
    if n < 3 {
        return Ok((false, false));
    }
    let reps = build_representatives(c)?;
    let parity = (2..n).all(|k| reps.language().level(k).len() % 2 == 0);
    let path = hamilton_path_from(&reps)?;
    let part = reps.partition();
    let (first, last) = (path.classes[0], *path.classes.last().unwrap());
    let cyclic = path.classes.len() >= 3 && classes_adjacent(part, first, last);
    Ok((parity, cyclic))
}

/// Whether some cover edge joins classes `x` and `y`.
pub fn classes_adjacent(part: &ClassPartition, x: usize, y: usize) -> bool {
    x != y
        && part.members(x).iter().any(|m| {
            let (down, up) = m.cover_neighbors();
            down.iter().chain(&up).any(|q| part.class_of(q) == y)
        })
}
