//! Permutations of `[n]` in one-line notation and the weak order on them.
//!
//! Values and positions are 1-based in the public API. The weak order
//! compares inversion sets by inclusion; it is a lattice whose join is the
//! transitive closure of the union of inversion sets.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_N: usize = 12;

/// A permutation of `[n]`, `0 <= n <= MAX_N`, stored inline so it is `Copy`.
///
/// The derived ordering is lexicographic on the one-line notation for
/// permutations of the same length.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    len: u8,
    entries: [u8; MAX_N],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn opposite(self) -> Self {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::TooLarge { n, limit: MAX_N, what: "permutations" });
    }
    Ok(())
}

impl Permutation {
    /// The empty permutation ε.
    pub const EMPTY: Permutation = Permutation { len: 0, entries: [0; MAX_N] };

    pub fn new(values: &[u8]) -> Result<Self> {
        let n = values.len();
        check_n(n)?;
        let mut seen = [false; MAX_N + 1];
        for &v in values {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{values:?} is not a bijection on 1..={n}"
                )));
            }
            seen[v] = true;
        }
        let mut entries = [0; MAX_N];
        entries[..n].copy_from_slice(values);
        Ok(Permutation { len: n as u8, entries })
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_n(n)?;
        let mut entries = [0; MAX_N];
        for (i, e) in entries.iter_mut().take(n).enumerate() {
            *e = i as u8 + 1;
        }
        Ok(Permutation { len: n as u8, entries })
    }

    /// The reversal `n ... 2 1`, top of the weak order.
    pub fn reversal(n: usize) -> Result<Self> {
        Ok(Permutation::identity(n)?.reverse())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.entries[..self.len as usize]
    }

    /// Entry at 1-based position `pos`.
    #[inline]
    pub fn at(&self, pos: usize) -> u8 {
        self.entries[pos - 1]
    }

    /// 1-based position of `value`, if present.
    pub fn position_of(&self, value: u8) -> Option<usize> {
        self.entries().iter().position(|&v| v == value).map(|i| i + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.entries().iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Reverses the one-line notation; the inversion set becomes its complement.
    pub fn reverse(&self) -> Self {
        let mut out = *self;
        out.entries[..self.len()].reverse();
        out
    }

    /// Swaps the entries at 1-based positions `pos` and `pos + 1`.
    pub fn swap_adjacent(&self, pos: usize) -> Self {
        let mut out = *self;
        out.entries.swap(pos - 1, pos);
        out
    }

    pub fn inversion_set(&self) -> InversionSet {
        let mut set = InversionSet::empty(self.len());
        let e = self.entries();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if e[i] > e[j] {
                    set.insert(e[i], e[j]);
                }
            }
        }
        set
    }

    pub fn inversion_count(&self) -> usize {
        let e = self.entries();
        let mut count = 0;
        for i in 0..e.len() {
            count += e[i + 1..].iter().filter(|&&x| x < e[i]).count();
        }
        count
    }

    /// `self <= other` in the weak order.
    pub fn weak_leq(&self, other: &Permutation) -> Result<bool> {
        same_len(self, other)?;
        Ok(self.inversion_set().is_subset(&other.inversion_set()))
    }

    pub fn join(&self, other: &Permutation) -> Result<Permutation> {
        same_len(self, other)?;
        let closed = self.inversion_set().union(&other.inversion_set()).transitive_closure();
        closed.to_permutation().ok_or_else(|| {
            Error::Verification(format!("closure of inv({self}) and inv({other}) is not an inversion set"))
        })
    }

    pub fn meet(&self, other: &Permutation) -> Result<Permutation> {
        Ok(self.reverse().join(&other.reverse())?.reverse())
    }

    /// 1-based positions `i` with `a_i < a_{i+1}`.
    pub fn ascent_positions(&self) -> impl Iterator<Item = usize> + '_ {
        let e = self.entries();
        (1..e.len()).filter(move |&i| e[i - 1] < e[i])
    }

    /// 1-based positions `i` with `a_i > a_{i+1}`.
    pub fn descent_positions(&self) -> impl Iterator<Item = usize> + '_ {
        let e = self.entries();
        (1..e.len()).filter(move |&i| e[i - 1] > e[i])
    }

    pub fn ascents(&self) -> usize {
        self.ascent_positions().count()
    }

    pub fn descents(&self) -> usize {
        self.descent_positions().count()
    }

    /// Lower and upper covers in the weak order: swaps of descents and of ascents.
    pub fn cover_neighbors(&self) -> (Vec<Permutation>, Vec<Permutation>) {
        let down = self.descent_positions().map(|i| self.swap_adjacent(i)).collect();
        let up = self.ascent_positions().map(|i| self.swap_adjacent(i)).collect();
        (down, up)
    }

    /// `c_i`: inserts the new largest value `n + 1` at 1-based position `i`.
    pub fn insert_largest(&self, position: usize) -> Result<Permutation> {
        let n = self.len() + 1;
        check_n(n)?;
        if position == 0 || position > n {
            return Err(Error::PositionOutOfRange { position, max: n });
        }
        Ok(self.insert_largest_unchecked(position))
    }

    #[inline]
    pub(crate) fn insert_largest_unchecked(&self, position: usize) -> Permutation {
        let n = self.len() + 1;
        let mut out = Permutation { len: n as u8, entries: [0; MAX_N] };
        out.entries[..position - 1].copy_from_slice(&self.entries[..position - 1]);
        out.entries[position - 1] = n as u8;
        out.entries[position..n].copy_from_slice(&self.entries[position - 1..n - 1]);
        out
    }

    /// `p`: deletes the largest value.
    pub fn remove_largest(&self) -> Result<Permutation> {
        if self.is_empty() {
            return Err(Error::InvalidPermutation("cannot remove from the empty permutation".into()));
        }
        Ok(self.remove_largest_unchecked())
    }

    #[inline]
    pub(crate) fn remove_largest_unchecked(&self) -> Permutation {
        let n = self.len();
        let mut out = Permutation { len: n as u8 - 1, entries: [0; MAX_N] };
        let mut k = 0;
        for &v in self.entries() {
            if v as usize != n {
                out.entries[k] = v;
                k += 1;
            }
        }
        out
    }

    /// Jump of `value` by `steps` positions over strictly smaller entries.
    ///
    /// Returns `None` when the jump is invalid: `value` absent, `steps == 0`,
    /// the target outside the permutation, or a crossed entry larger than `value`.
    pub fn jump(&self, value: u8, direction: Direction, steps: usize) -> Option<Permutation> {
        let i = self.position_of(value)? - 1;
        if steps == 0 {
            return None;
        }
        let mut out = *self;
        match direction {
            Direction::Right => {
                let j = i + steps;
                if j >= self.len() || self.entries[i + 1..=j].iter().any(|&x| x > value) {
                    return None;
                }
                out.entries[i..=j].rotate_left(1);
            }
            Direction::Left => {
                let j = i.checked_sub(steps)?;
                if self.entries[j..i].iter().any(|&x| x > value) {
                    return None;
                }
                out.entries[j..=i].rotate_right(1);
            }
        }
        Some(out)
    }

    /// Lexicographic rank in `0..n!`.
    pub fn rank(&self) -> usize {
        let e = self.entries();
        let n = e.len();
        let mut rank = 0;
        let mut used: u16 = 0;
        for (i, &v) in e.iter().enumerate() {
            let smaller_unused = (v as u32 - 1) - (used & ((1u16 << (v - 1)) - 1)).count_ones();
            rank += smaller_unused as usize * FACTORIALS[n - 1 - i];
            used |= 1 << (v - 1);
        }
        rank
    }

    pub fn unrank(n: usize, mut rank: usize) -> Result<Permutation> {
        check_n(n)?;
        if rank >= FACTORIALS[n] {
            return Err(Error::InvalidPermutation(format!("rank {rank} >= {n}!")));
        }
        let mut avail: Vec<u8> = (1..=n as u8).collect();
        let mut entries = [0; MAX_N];
        for (i, slot) in entries.iter_mut().take(n).enumerate() {
            let f = FACTORIALS[n - 1 - i];
            *slot = avail.remove(rank / f);
            rank %= f;
        }
        Ok(Permutation { len: n as u8, entries })
    }

    /// In-place successor in lexicographic order; `false` at the last permutation.
    pub fn next_lexicographic(&mut self) -> bool {
        let e = &mut self.entries[..self.len as usize];
        let n = e.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && e[i - 1] >= e[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while e[j] <= e[i - 1] {
            j -= 1;
        }
        e.swap(i - 1, j);
        e[i..].reverse();
        true
    }
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Result<impl Iterator<Item = Permutation>> {
    let first = Permutation::identity(n)?;
    let mut next = Some(first);
    Ok(std::iter::from_fn(move || {
        let current = next?;
        let mut succ = current;
        next = if succ.next_lexicographic() { Some(succ) } else { None };
        Some(current)
    }))
}

pub const FACTORIALS: [usize; MAX_N + 1] =
    [1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800, 479001600];

fn same_len(p: &Permutation, q: &Permutation) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: q.len() });
    }
    Ok(())
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        if self.len() <= 9 {
            for v in self.entries() {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "[{self}]")
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"2 4 1 3"`, or the compact `"2413"` when `n <= 9`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<u8> = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|t| t.parse::<u8>().map_err(|_| Error::Parse(format!("bad entry {t:?} in {s:?}"))))
                .collect::<Result<_>>()?
        } else if s.len() > 1 && s.len() <= 9 && s.bytes().all(|b| b.is_ascii_digit()) {
            s.bytes().map(|b| b - b'0').collect()
        } else if s.is_empty() || s == "ε" {
            Vec::new()
        } else {
            vec![s.parse::<u8>().map_err(|_| Error::Parse(format!("bad permutation {s:?}")))?]
        };
        Permutation::new(&values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().serialize(serializer)
    }
}

/// Inversion set as a bitset over pairs `(b, a)`, `b > a`, in the order
/// `(2,1), (3,1), (3,2), (4,1), ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct InversionSet {
    n: u8,
    bits: u128,
}

#[inline]
fn pair_index(b: u8, a: u8) -> u32 {
    debug_assert!(b > a && a >= 1);
    let b = b as u32;
    (b - 1) * (b - 2) / 2 + (a as u32 - 1)
}

impl InversionSet {
    pub fn empty(n: usize) -> Self {
        InversionSet { n: n as u8, bits: 0 }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn contains(&self, b: u8, a: u8) -> bool {
        self.bits >> pair_index(b, a) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, b: u8, a: u8) {
        self.bits |= 1u128 << pair_index(b, a);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_subset(&self, other: &InversionSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &InversionSet) -> InversionSet {
        InversionSet { n: self.n.max(other.n), bits: self.bits | other.bits }
    }

    /// Pairs `(b, a)` in canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        let n = self.n;
        (2..=n).flat_map(move |b| (1..b).map(move |a| (b, a))).filter(|&(b, a)| self.contains(b, a))
    }

    /// Closes under `(c,b), (b,a) => (c,a)` for `c > b > a`, iterating to a fixpoint.
    pub fn transitive_closure(&self) -> InversionSet {
        let n = self.n;
        let mut out = *self;
        loop {
            let before = out.bits;
            for c in 3..=n {
                for b in 2..c {
                    if !out.contains(c, b) {
                        continue;
                    }
                    for a in 1..b {
                        if out.contains(b, a) {
                            out.insert(c, a);
                        }
                    }
                }
            }
            if out.bits == before {
                return out;
            }
        }
    }

    /// The permutation with exactly this inversion set, if one exists.
    pub fn to_permutation(&self) -> Option<Permutation> {
        let n = self.n as usize;
        let mut entries = [0u8; MAX_N];
        for v in 1..=n as u8 {
            let before_larger = (v + 1..=n as u8).filter(|&u| self.contains(u, v)).count();
            let before_smaller = (1..v).filter(|&u| !self.contains(v, u)).count();
            let pos = before_larger + before_smaller;
            if entries[pos] != 0 {
                return None;
            }
            entries[pos] = v;
        }
        let p = Permutation { len: n as u8, entries };
        (p.inversion_set() == *self).then_some(p)
    }
}
