//! Equivalence classes of `S_n / ≡`, rails, and projections onto `S_{n-1}`.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fence::{Congruence, Fence};
use crate::perm::{all_permutations, Permutation, FACTORIALS};

/// Default size contract for anything that materializes all of `S_n`.
pub const MAX_CLASS_N: usize = 9;

/// Calls `visit(rank, perm, pos, up_rank)` for every cover edge `perm ⋖ up`
/// obtained by swapping the ascent at `pos`, with permutations in
/// lexicographic order.
pub(crate) fn for_each_up_cover<F: FnMut(usize, &Permutation, usize, usize)>(n: usize, mut visit: F) -> Result<()> {
    let mut lehmer = [0i64; 16];
    for (rank, p) in all_permutations(n)?.enumerate() {
        let e = p.entries();
        for i in 0..n {
            lehmer[i] = e[i + 1..].iter().filter(|&&v| v < e[i]).count() as i64;
        }
        for pos in 1..n {
            if e[pos - 1] < e[pos] {
                let (li, lj) = (lehmer[pos - 1], lehmer[pos]);
                let delta = (lj + 1 - li) * FACTORIALS[n - pos] as i64 + (li - lj) * FACTORIALS[n - pos - 1] as i64;
                visit(rank, &p, pos, (rank as i64 + delta) as usize);
            }
        }
    }
    Ok(())
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        UnionFind { parent: (0..size as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, x: u32, y: u32) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// One class `X` of the quotient; always an interval `[min, max]` of the weak order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceClass {
    pub id: usize,
    pub min: Permutation,
    pub max: Permutation,
    pub size: usize,
    /// The minimum; [`crate::genj::RepSet`] makes its own choice.
    pub representative: Permutation,
}

/// The partition of `S_n` into classes, with ids ordered lexicographically by class minimum.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    congruence: Congruence,
    classes: Vec<EquivalenceClass>,
    class_of: Vec<u32>,
    // ranks grouped by class: members of class i are by_class[offsets[i]..offsets[i+1]]
    by_class: Vec<u32>,
    offsets: Vec<u32>,
}

/// Contracts every bar of `c` and returns the resulting classes.
pub fn compute_classes(c: &Congruence) -> Result<ClassPartition> {
    compute_classes_with_limit(c, MAX_CLASS_N)
}

pub fn compute_classes_with_limit(c: &Congruence, limit: usize) -> Result<ClassPartition> {
    let n = c.n();
    if n > limit.min(10) {
        return Err(Error::TooLarge { n, limit: limit.min(10), what: "class computation" });
    }
    let total = FACTORIALS[n];
    let mut uf = UnionFind::new(total);
    // bar_down[r] / bar_up[r]: whether r has a contracted lower / upper cover
    let mut bar_down = vec![false; total];
    let mut bar_up = vec![false; total];
    for_each_up_cover(n, |r, p, pos, up| {
        if c.is_bar_at(p, pos) {
            uf.union(r as u32, up as u32);
            bar_up[r] = true;
            bar_down[up] = true;
        }
    })?;

    let mut root_min: Vec<Option<u32>> = vec![None; total];
    let mut root_max: Vec<Option<u32>> = vec![None; total];
    let mut root_size = vec![0u32; total];
    let mut roots = vec![0u32; total];
    for r in 0..total {
        let root = uf.find(r as u32);
        roots[r] = root;
        root_size[root as usize] += 1;
        if !bar_down[r] && root_min[root as usize].replace(r as u32).is_some() {
            return Err(Error::Verification(format!("class of {:?} has two minima", Permutation::unrank(n, r)?)));
        }
        if !bar_up[r] && root_max[root as usize].replace(r as u32).is_some() {
            return Err(Error::Verification(format!("class of {:?} has two maxima", Permutation::unrank(n, r)?)));
        }
    }

    let mut ordered: Vec<(u32, u32)> = Vec::new(); // (min rank, root)
    for r in 0..total {
        if roots[r] == r as u32 {
            let min = root_min[r].ok_or_else(|| Error::Verification("class without a minimum".into()))?;
            ordered.push((min, r as u32));
        }
    }
    ordered.sort_unstable();
    let mut id_of_root = vec![u32::MAX; total];
    let mut classes = Vec::with_capacity(ordered.len());
    for (id, &(min_rank, root)) in ordered.iter().enumerate() {
        id_of_root[root as usize] = id as u32;
        let min = Permutation::unrank(n, min_rank as usize)?;
        let max_rank = root_max[root as usize].ok_or_else(|| Error::Verification("class without a maximum".into()))?;
        let max = Permutation::unrank(n, max_rank as usize)?;
        classes.push(EquivalenceClass { id, min, max, size: root_size[root as usize] as usize, representative: min });
    }
    let class_of: Vec<u32> = roots.iter().map(|&root| id_of_root[root as usize]).collect();

    let mut offsets = vec![0u32; classes.len() + 1];
    for &id in &class_of {
        offsets[id as usize + 1] += 1;
    }
    for i in 0..classes.len() {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut by_class = vec![0u32; total];
    for (r, &id) in class_of.iter().enumerate() {
        by_class[fill[id as usize] as usize] = r as u32;
        fill[id as usize] += 1;
    }
    Ok(ClassPartition { congruence: c.clone(), classes, class_of, by_class, offsets })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassJson {
    pub id: usize,
    pub min: Vec<u8>,
    pub max: Vec<u8>,
    pub size: usize,
    pub representative: Vec<u8>,
}

impl ClassPartition {
    pub fn n(&self) -> usize {
        self.congruence.n()
    }

    pub fn congruence(&self) -> &Congruence {
        &self.congruence
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[EquivalenceClass] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &EquivalenceClass {
        &self.classes[id]
    }

    pub fn class_of(&self, p: &Permutation) -> usize {
        self.class_of[p.rank()] as usize
    }

    pub fn class_of_rank(&self, rank: usize) -> usize {
        self.class_of[rank] as usize
    }

    /// Members of class `id` in lexicographic order.
    pub fn members(&self, id: usize) -> Vec<Permutation> {
        self.member_ranks(id).iter().map(|&r| Permutation::unrank(self.n(), r as usize).unwrap()).collect()
    }

    pub fn member_ranks(&self, id: usize) -> &[u32] {
        &self.by_class[self.offsets[id] as usize..self.offsets[id + 1] as usize]
    }

    pub fn to_json(&self) -> Vec<ClassJson> {
        self.classes
            .iter()
            .map(|x| ClassJson {
                id: x.id,
                min: x.min.entries().to_vec(),
                max: x.max.entries().to_vec(),
                size: x.size,
                representative: x.representative.entries().to_vec(),
            })
            .collect()
    }
}

/// `{p(m) : m ∈ X}`, sorted.
pub fn class_projection(part: &ClassPartition, id: usize) -> Result<Vec<Permutation>> {
    if part.n() == 0 {
        return Err(Error::InvalidPermutation("cannot project classes of S_0".into()));
    }
    if id >= part.num_classes() {
        return Err(Error::Parse(format!("no class with id {id}")));
    }
    let mut out: Vec<Permutation> = part.members(id).iter().map(Permutation::remove_largest_unchecked).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Bar test between `c_{i+1}(q)` and `c_i(q)` on the rail of `q`.
pub(crate) fn rail_bar(c: &Congruence, q: &Permutation, i: usize) -> bool {
    let n = c.n() as u8;
    let a = q.at(i);
    let left = q.entries()[..i - 1].iter().filter(|&&v| v > a).fold(0u16, |m, &v| m | 1 << v);
    c.contains(&Fence { a, b: n, left })
}

/// Splits the rail `c_n(q) ⋖ … ⋖ c_1(q)` into maximal runs of one class.
///
/// Segments come in walk order, so the first contains position `n` and the
/// last contains position 1.
pub fn rail_segments(c: &Congruence, q: &Permutation) -> Result<Vec<RangeInclusive<usize>>> {
    let n = c.n();
    if q.len() + 1 != n {
        return Err(Error::LengthMismatch { left: q.len() + 1, right: n });
    }
    if n >= 2 && c.contains(&Fence { a: n as u8 - 1, b: n as u8, left: 0 }) {
        return Err(Error::RailCollapses { n });
    }
    let mut out = Vec::new();
    let mut high = n;
    for i in (1..n).rev() {
        if !rail_bar(c, q, i) {
            out.push(i + 1..=high);
            high = i;
        }
    }
    out.push(1..=high);
    Ok(out)
}
