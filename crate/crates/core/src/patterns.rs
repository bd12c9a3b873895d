//! Classical and vincular patterns, tame patterns, and congruences from
//! well-behaved pattern sets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::classes::compute_classes;
use crate::error::{Error, Result};
use crate::fence::{all_fences, Congruence, Fence};
use crate::perm::{all_permutations, Permutation};

/// A pattern `τ ∈ S_k`, optionally with entries `glued, glued + 1` required
/// to be adjacent in any occurrence. Written `2[31]` for `231` with `31` glued.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    entries: Permutation,
    glued: Option<usize>,
}

impl Pattern {
    pub fn classical(entries: Permutation) -> Pattern {
        Pattern { entries, glued: None }
    }

    /// Glues positions `pos` and `pos + 1` (1-based).
    pub fn vincular(entries: Permutation, pos: usize) -> Result<Pattern> {
        if pos < 1 || pos >= entries.len() {
            return Err(Error::Parse(format!("glued pair at {pos} does not fit a pattern of length {}", entries.len())));
        }
        Ok(Pattern { entries, glued: Some(pos) })
    }

    pub fn entries(&self) -> &Permutation {
        &self.entries
    }

    pub fn glued(&self) -> Option<usize> {
        self.glued
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The largest value sits strictly inside, and for vincular patterns is glued.
    pub fn is_tame(&self) -> bool {
        let k = self.len();
        let Some(pos) = self.entries.position_of(k as u8) else {
            return false;
        };
        let inside = pos != 1 && pos != k;
        match self.glued {
            None => inside,
            Some(g) => inside && (pos == g || pos == g + 1),
        }
    }

    /// Occurrence positions (1-based) of the first match in `p`, if any.
    pub fn find_in(&self, p: &Permutation) -> Option<Vec<usize>> {
        let mut chosen = Vec::with_capacity(self.len());
        self.search(p, &mut chosen, 1, &mut |_| true).then_some(chosen)
    }

    pub fn is_contained_in(&self, p: &Permutation) -> bool {
        self.find_in(p).is_some()
    }

    /// Calls `accept` on each occurrence until it returns `true`.
    pub fn for_each_occurrence(&self, p: &Permutation, mut accept: impl FnMut(&[usize]) -> bool) -> bool {
        let mut chosen = Vec::with_capacity(self.len());
        self.search(p, &mut chosen, 1, &mut accept)
    }

    fn search(&self, p: &Permutation, chosen: &mut Vec<usize>, from: usize, accept: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let j = chosen.len();
        if j == self.len() {
            return accept(chosen);
        }
        let t = self.entries.entries();
        let glued_here = self.glued == Some(j) && j > 0;
        let positions = if glued_here { from..=from } else { from..=p.len() };
        for pos in positions {
            if pos > p.len() || p.len() - pos < self.len() - j - 1 {
                break;
            }
            let v = p.at(pos);
            let fits = chosen.iter().enumerate().all(|(i, &q)| (p.at(q) < v) == (t[i] < t[j]));
            if fits {
                chosen.push(pos);
                if self.search(p, chosen, pos + 1, accept) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// For a pattern `A k 1 B` with `k 1` glued: the values of `A` and of `B`.
    fn split_at_glue(&self) -> Option<(Vec<u8>, Vec<u8>)> {
        let g = self.glued?;
        let e = self.entries.entries();
        let k = self.len() as u8;
        (e[g - 1] == k && e[g] == 1).then(|| (e[..g - 1].to_vec(), e[g + 1..].to_vec()))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.entries().iter().enumerate() {
            if self.glued == Some(i + 1) {
                f.write_str("[")?;
            }
            write!(f, "{v}")?;
            if self.glued.map(|g| g + 1) == Some(i + 1) {
                f.write_str("]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pattern> {
        let s = s.trim();
        let bad = |why: &str| Error::Parse(format!("bad pattern {s:?}: {why}"));
        let mut digits = Vec::new();
        let mut open = None;
        let mut glued = None;
        for ch in s.chars() {
            match ch {
                '[' if open.is_none() && glued.is_none() => open = Some(digits.len() + 1),
                ']' => {
                    let start = open.take().ok_or_else(|| bad("unmatched ]"))?;
                    if digits.len() + 1 - start != 2 {
                        return Err(bad("brackets must enclose exactly two entries"));
                    }
                    glued = Some(start);
                }
                '0'..='9' => digits.push(ch as u8 - b'0'),
                _ => return Err(bad("unexpected character")),
            }
        }
        if open.is_some() {
            return Err(bad("unclosed ["));
        }
        if digits.is_empty() {
            return Err(bad("empty pattern"));
        }
        let entries = Permutation::new(&digits).map_err(|e| bad(&e.to_string()))?;
        match glued {
            Some(g) => Pattern::vincular(entries, g),
            None => Ok(Pattern::classical(entries)),
        }
    }
}

/// Comma-separated patterns, e.g. `2[41]3,3[41]2`.
pub fn parse_pattern_list(s: &str) -> Result<Vec<Pattern>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(Pattern::from_str).collect()
}

pub fn contains(p: &Permutation, t: &Pattern) -> bool {
    t.is_contained_in(p)
}

/// `S_n(τ_1, …, τ_l)`, in lexicographic order.
pub fn avoid_set(n: usize, patterns: &[Pattern]) -> Result<Vec<Permutation>> {
    Ok(all_permutations(n)?.filter(|p| patterns.iter().all(|t| !t.is_contained_in(p))).collect())
}

/// Patterns `A k 1 B` (with `k 1` glued), closed under rearranging `A`
/// among its positions and `B` among its positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellBehavedSet {
    patterns: Vec<Pattern>,
}

fn permutations_of(values: &[u8]) -> Vec<Vec<u8>> {
    if values.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..values.len() {
        let mut rest = values.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

impl WellBehavedSet {
    /// Validates the shape and closure; a set that is not closed is
    /// rejected together with its closure.
    pub fn new(patterns: &[Pattern]) -> Result<WellBehavedSet> {
        let given: BTreeSet<Pattern> = patterns.iter().copied().collect();
        if given.is_empty() {
            return Err(Error::NotWellBehaved { reason: "no patterns given".into(), completion: Vec::new() });
        }
        let mut closure = BTreeSet::new();
        for t in &given {
            let (a, b) = t.split_at_glue().ok_or_else(|| Error::NotWellBehaved {
                reason: format!("{t} is not of the form A[k1]B"),
                completion: Vec::new(),
            })?;
            let k = t.len() as u8;
            for pa in permutations_of(&a) {
                for pb in permutations_of(&b) {
                    let mut e = pa.clone();
                    e.extend([k, 1]);
                    e.extend(&pb);
                    closure.insert(Pattern::vincular(Permutation::new(&e)?, a.len() + 1)?);
                }
            }
        }
        if closure != given {
            return Err(Error::NotWellBehaved {
                reason: "not closed under rearranging the entries before and after the glued pair".into(),
                completion: closure.iter().map(Pattern::to_string).collect(),
            });
        }
        Ok(WellBehavedSet { patterns: given.into_iter().collect() })
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// Fences whose edges are the glued pair of some occurrence.
    ///
    /// For `A k 1 B`, reading the interior values `2..k-1` in increasing
    /// order gives a word over {in A, in B}. An edge transposing `a < b`
    /// carries an occurrence exactly when the values strictly between `a`
    /// and `b`, read in increasing order and marked by whether they lie left
    /// of the pair, contain that word as a subsequence.
    pub fn fences(&self, n: usize) -> Vec<Fence> {
        let words: BTreeSet<Vec<bool>> = self
            .patterns
            .iter()
            .map(|t| {
                let (a, _) = t.split_at_glue().unwrap();
                (2..t.len() as u8).map(|v| a.contains(&v)).collect()
            })
            .collect();
        all_fences(n)
            .into_iter()
            .filter(|f| {
                let marks: Vec<bool> = (f.a + 1..f.b).map(|v| f.left >> v & 1 == 1).collect();
                words.iter().any(|w| is_subsequence(w, &marks))
            })
            .collect()
    }

    /// Repeatedly transposes the glued pair of an occurrence until the
    /// permutation avoids every pattern; each step removes one inversion.
    pub fn rewrite_to_avoider(&self, p: &Permutation) -> Permutation {
        let mut current = *p;
        'outer: loop {
            for t in &self.patterns {
                if let Some(pos) = t.find_in(&current) {
                    let g = t.glued.unwrap();
                    current = current.swap_adjacent(pos[g - 1]);
                    continue 'outer;
                }
            }
            return current;
        }
    }
}

fn is_subsequence(word: &[bool], text: &[bool]) -> bool {
    let mut it = text.iter();
    word.iter().all(|w| it.any(|t| t == w))
}

/// The congruence whose bars are the glued pairs of occurrences of patterns
/// in `set`. For `n <= 8` its class minima are checked to be exactly the
/// avoiders.
pub fn congruence_from_patterns(set: &WellBehavedSet, n: usize) -> Result<Congruence> {
    let fences = set.fences(n);
    let c = Congruence::downset_closure(n, &fences)?;
    if c.len() != fences.len() {
        return Err(Error::Verification("emitted fences are not closed downward".into()));
    }
    if n <= 8 {
        let part = compute_classes(&c)?;
        let avoiders = avoid_set(n, set.patterns())?;
        if part.num_classes() != avoiders.len() {
            return Err(Error::Verification(format!(
                "{} classes but {} avoiders",
                part.num_classes(),
                avoiders.len()
            )));
        }
        for x in part.classes() {
            if set.patterns().iter().any(|t| t.is_contained_in(&x.min)) {
                return Err(Error::Verification(format!("class minimum {:?} contains a pattern", x.min)));
            }
        }
    }
    Ok(c)
}
