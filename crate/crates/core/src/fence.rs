//! Fences, the forcing order, and congruences as downsets of fences.
//!
//! A fence `f(a,b,L)` is the set of all cover edges of the weak order that
//! transpose the values `a < b` while exactly the values of `L ⊆ ]a,b[`
//! sit to the left of the transposed pair. A lattice congruence is the same
//! thing as a downset of fences under the forcing order, and the arc diagram
//! of a congruence draws one arc per fence.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{all_permutations, check_n, Permutation};

/// `f(a, b, L)` with `L` stored as a bitmask over values (bit `v` for value `v`).
///
/// Ordered lexicographically by `(a, b, left)`, which is also the order of
/// the global fence index used by [`Congruence`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fence {
    pub a: u8,
    pub b: u8,
    pub left: u16,
}

#[inline]
fn open_interval_mask(a: u8, b: u8) -> u16 {
    if b <= a + 1 {
        return 0;
    }
    // bits a+1 ..= b-1
    ((1u32 << b) - (1u32 << (a + 1))) as u16
}

impl Fence {
    pub fn new(a: u8, b: u8, left: &[u8]) -> Result<Fence> {
        let mut mask = 0u16;
        for &x in left {
            if x >= 16 {
                return Err(Error::InvalidFence(format!("value {x} out of range")));
            }
            mask |= 1 << x;
        }
        Fence::from_mask(a, b, mask)
    }

    pub fn from_mask(a: u8, b: u8, left: u16) -> Result<Fence> {
        if a < 1 || a >= b || b as usize > crate::perm::MAX_N {
            return Err(Error::InvalidFence(format!("need 1 <= a < b <= 12, got a={a}, b={b}")));
        }
        if left & !open_interval_mask(a, b) != 0 {
            return Err(Error::InvalidFence(format!("left set must lie strictly between {a} and {b}")));
        }
        Ok(Fence { a, b, left })
    }

    pub(crate) fn new_unchecked(a: u8, b: u8, left: u16) -> Fence {
        debug_assert!(Fence::from_mask(a, b, left).is_ok());
        Fence { a, b, left }
    }

    pub fn span(&self) -> usize {
        (self.b - self.a) as usize
    }

    pub fn left_values(&self) -> Vec<u8> {
        (self.a + 1..self.b).filter(|&v| self.left >> v & 1 == 1).collect()
    }

    /// The values of `]a,b[` not in `L`.
    pub fn right_values(&self) -> Vec<u8> {
        (self.a + 1..self.b).filter(|&v| self.left >> v & 1 == 0).collect()
    }

    /// Every fence except `f(a, a+1, ∅)`.
    pub fn is_essential(&self) -> bool {
        self.b - self.a >= 2
    }

    /// An arc on consecutive points never counts as simple.
    pub fn is_simple(&self) -> bool {
        self.is_essential() && (self.is_left_arc() || self.is_right_arc())
    }

    /// `L = ∅`: the arc passes on the right of every point between its ends.
    pub fn is_left_arc(&self) -> bool {
        self.left == 0
    }

    /// `L = ]a,b[`.
    pub fn is_right_arc(&self) -> bool {
        self.left == open_interval_mask(self.a, self.b)
    }

    /// Connects `s - 1` with `s + 1` for some `s`.
    pub fn is_short(&self) -> bool {
        self.b - self.a == 2
    }

    pub fn fits(&self, n: usize) -> bool {
        self.b as usize <= n
    }

    /// `self ≺ other` in the forcing order.
    pub fn forcing_less(&self, other: &Fence) -> bool {
        let (a, b, c, d) = (self.a, self.b, other.a, other.b);
        a <= c && c < d && d <= b && (a, b) != (c, d) && other.left == self.left & open_interval_mask(c, d)
    }

    /// Fences covering `self` in the forcing order.
    pub fn upper_covers(&self) -> Vec<Fence> {
        if self.b - self.a < 2 {
            return Vec::new();
        }
        let (a, b) = (self.a, self.b);
        vec![
            Fence::new_unchecked(a + 1, b, self.left & open_interval_mask(a + 1, b)),
            Fence::new_unchecked(a, b - 1, self.left & open_interval_mask(a, b - 1)),
        ]
    }

    /// Fences covered by `self` in the forcing order of `F_n`.
    pub fn lower_covers(&self, n: usize) -> Vec<Fence> {
        let (a, b, m) = (self.a, self.b, self.left);
        let mut out = Vec::with_capacity(4);
        if a > 1 {
            out.push(Fence::new_unchecked(a - 1, b, m));
            out.push(Fence::new_unchecked(a - 1, b, m | 1 << a));
        }
        if (b as usize) < n {
            out.push(Fence::new_unchecked(a, b + 1, m));
            out.push(Fence::new_unchecked(a, b + 1, m | 1 << b));
        }
        out
    }

    /// Index of this fence in the lexicographic enumeration of `F_n`.
    #[inline]
    pub fn index(&self, n: usize) -> usize {
        let a = self.a as usize;
        let b = self.b as usize;
        let base = (1usize << n) - (1usize << (n + 1 - a)) - (a - 1);
        base + (1usize << (b - a - 1)) - 1 + (self.left >> (a + 1)) as usize
    }

    /// Shifts all labels by `delta` (may be negative).
    pub fn shifted(&self, delta: i32) -> Result<Fence> {
        let a = self.a as i32 + delta;
        let b = self.b as i32 + delta;
        if a < 1 || b > crate::perm::MAX_N as i32 {
            return Err(Error::InvalidFence(format!("{self} shifted by {delta} leaves the ground set")));
        }
        let left = if delta >= 0 { self.left << delta } else { self.left >> (-delta) };
        Fence::from_mask(a as u8, b as u8, left)
    }
}

/// Number of fences with `b - a = k`: `(n - k) 2^(k-1)`.
pub fn fence_count(n: usize, k: usize) -> Result<u64> {
    if k < 1 || k >= n.max(1) {
        return Err(Error::InvalidFence(format!("span k = {k} must satisfy 1 <= k <= n-1 = {}", n as i64 - 1)));
    }
    Ok((n - k) as u64 * (1u64 << (k - 1)))
}

/// `|F_n| = 2^n - n - 1`.
pub fn total_fences(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    (1usize << n) - n - 1
}

/// All fences of `F_n` in index order.
pub fn all_fences(n: usize) -> Vec<Fence> {
    let mut out = Vec::with_capacity(total_fences(n));
    for a in 1..n as u8 {
        for b in a + 1..=n as u8 {
            for sub in 0..1u16 << (b - a - 1) {
                out.push(Fence::new_unchecked(a, b, sub << (a + 1)));
            }
        }
    }
    out
}

impl fmt::Display for Fence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}:{{", self.a, self.b)?;
        for (i, v) in self.left_values().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Fence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f({},{},{{", self.a, self.b)?;
        for (i, v) in self.left_values().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("})")
    }
}

impl FromStr for Fence {
    type Err = Error;

    /// `a-b:{x,y}`, `a-b:{}` or `a-b`.
    fn from_str(s: &str) -> Result<Fence> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad fence {s:?}; expected a-b:{{x,y}}"));
        let (pair, left) = match s.split_once(':') {
            Some((pair, rest)) => {
                let inner = rest.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
                let left = inner
                    .split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<u8>().map_err(|_| bad()))
                    .collect::<Result<Vec<u8>>>()?;
                (pair, left)
            }
            None => (s, Vec::new()),
        };
        let (a, b) = pair.split_once('-').ok_or_else(bad)?;
        let a = a.trim().parse::<u8>().map_err(|_| bad())?;
        let b = b.trim().parse::<u8>().map_err(|_| bad())?;
        Fence::new(a, b, &left)
    }
}

/// Parses `;`-separated fences; the empty string yields no fences.
pub fn parse_fence_list(s: &str) -> Result<Vec<Fence>> {
    s.split(';').map(str::trim).filter(|t| !t.is_empty()).map(Fence::from_str).collect()
}

pub fn format_fence_list(fences: &[Fence]) -> String {
    fences.iter().map(Fence::to_string).collect::<Vec<_>>().join(";")
}

/// The edge fence of an adjacent transposition at 1-based position `pos` of `p`.
#[inline]
pub(crate) fn fence_at_position(p: &Permutation, pos: usize) -> Fence {
    let e = p.entries();
    let (x, y) = (e[pos - 1], e[pos]);
    let (a, b) = if x < y { (x, y) } else { (y, x) };
    let mut seen = 0u16;
    for &v in &e[..pos - 1] {
        seen |= 1 << v;
    }
    Fence { a, b, left: seen & open_interval_mask(a, b) }
}

/// The fence containing the cover edge between `p` and `q`.
pub fn edge_fence(p: &Permutation, q: &Permutation) -> Result<Fence> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: q.len() });
    }
    let diff: Vec<usize> = (1..=p.len()).filter(|&i| p.at(i) != q.at(i)).collect();
    match diff.as_slice() {
        [i, j] if *j == i + 1 && p.at(*i) == q.at(*j) && p.at(*j) == q.at(*i) => Ok(fence_at_position(p, *i)),
        _ => Err(Error::InvalidPermutation(format!("{p:?} and {q:?} do not differ by an adjacent transposition"))),
    }
}

/// All cover edges `(lower, upper)` of `S_n` in fence `f`, sorted by the lower endpoint.
pub fn fence_edges(f: &Fence, n: usize) -> Result<Vec<(Permutation, Permutation)>> {
    if n > 10 {
        return Err(Error::TooLarge { n, limit: 10, what: "fence edge enumeration" });
    }
    if !f.fits(n) {
        return Err(Error::InvalidFence(format!("{f} does not fit n = {n}")));
    }
    let mut out = Vec::new();
    for p in all_permutations(n)? {
        let i = p.position_of(f.a).unwrap();
        if i < n && p.at(i + 1) == f.b && fence_at_position(&p, i) == *f {
            out.push((p, p.swap_adjacent(i)));
        }
    }
    Ok(out)
}

/// A lattice congruence of the weak order on `S_n`, stored as the full
/// downset of fences: a bitset over the global fence index of `F_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    n: u8,
    bits: Vec<u64>,
}

impl Congruence {
    /// The finest congruence (no fences): the weak order itself.
    pub fn empty(n: usize) -> Result<Congruence> {
        check_n(n)?;
        Ok(Congruence { n: n as u8, bits: vec![0; total_fences(n).div_ceil(64)] })
    }

    /// The coarsest congruence (all of `F_n`): a single class.
    pub fn full(n: usize) -> Result<Congruence> {
        let mut c = Congruence::empty(n)?;
        for f in all_fences(n) {
            c.insert_raw(&f);
        }
        Ok(c)
    }

    /// Smallest downset containing `generators`.
    pub fn downset_closure(n: usize, generators: &[Fence]) -> Result<Congruence> {
        let mut c = Congruence::empty(n)?;
        let mut stack = Vec::new();
        for g in generators {
            if !g.fits(n) {
                return Err(Error::InvalidFence(format!("{g} does not fit n = {n}")));
            }
            stack.push(*g);
        }
        while let Some(f) = stack.pop() {
            if c.contains(&f) {
                continue;
            }
            c.insert_raw(&f);
            stack.extend(f.lower_covers(n).into_iter().filter(|g| !c.contains(g)));
        }
        Ok(c)
    }

    /// Takes `fences` as generators, or, with `generators == false`, as a
    /// complete downset that is validated rather than closed.
    pub fn from_fences(n: usize, fences: &[Fence], generators: bool) -> Result<Congruence> {
        let closed = Congruence::downset_closure(n, fences)?;
        if !generators {
            let given: BTreeSet<Fence> = fences.iter().copied().collect();
            if given.len() != closed.len() {
                let missing: Vec<String> =
                    closed.fences().filter(|f| !given.contains(f)).map(|f| f.to_string()).collect();
                return Err(Error::NotDownset(format!("missing forced fences {}", missing.join(";"))));
            }
        }
        Ok(closed)
    }

    /// Congruence of an arc diagram (generators are its arcs).
    pub fn from_diagram(d: &ArcDiagram) -> Result<Congruence> {
        for (i, f) in d.arcs.iter().enumerate() {
            for g in &d.arcs[i + 1..] {
                if f == g || f.forcing_less(g) || g.forcing_less(f) {
                    return Err(Error::InvalidFence(format!("arcs {f} and {g} are comparable")));
                }
            }
        }
        Congruence::downset_closure(d.n, &d.arcs)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn contains(&self, f: &Fence) -> bool {
        if !f.fits(self.n()) {
            return false;
        }
        let i = f.index(self.n());
        self.bits[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub(crate) fn contains_index(&self, i: usize) -> bool {
        self.bits[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub(crate) fn set_index(&mut self, i: usize, on: bool) {
        if on {
            self.bits[i >> 6] |= 1 << (i & 63);
        } else {
            self.bits[i >> 6] &= !(1 << (i & 63));
        }
    }

    fn insert_raw(&mut self, f: &Fence) {
        let i = f.index(self.n());
        self.set_index(i, true);
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Fences of the downset in canonical order.
    pub fn fences(&self) -> impl Iterator<Item = Fence> + '_ {
        all_fences(self.n()).into_iter().enumerate().filter(|(i, _)| self.contains_index(*i)).map(|(_, f)| f)
    }

    /// No fence `f(a, a+1, ∅)` present.
    pub fn is_essential(&self) -> bool {
        (1..self.n).all(|a| !self.contains(&Fence::new_unchecked(a, a + 1, 0)))
    }

    /// Checks the downset property directly against `forcing_less`.
    pub fn is_downset(&self) -> bool {
        let n = self.n();
        self.fences().all(|f| f.lower_covers(n).iter().all(|g| self.contains(g)))
    }

    /// `self ⊆ other` as fence sets, i.e. `self` refines `other`.
    pub fn is_subset(&self, other: &Congruence) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(x, y)| x & !y == 0)
    }

    /// Whether the cover edge between `p` and `q` is contracted.
    pub fn is_bar(&self, p: &Permutation, q: &Permutation) -> Result<bool> {
        if p.len() != self.n() {
            return Err(Error::LengthMismatch { left: p.len(), right: self.n() });
        }
        Ok(self.contains(&edge_fence(p, q)?))
    }

    /// Whether swapping positions `pos`, `pos + 1` of `p` is a bar.
    #[inline]
    pub fn is_bar_at(&self, p: &Permutation, pos: usize) -> bool {
        self.contains_index(fence_at_position(p, pos).index(self.n()))
    }

    pub fn reduced_diagram(&self) -> ArcDiagram {
        let arcs = self.fences().filter(|f| f.upper_covers().iter().all(|g| !self.contains(g))).collect();
        ArcDiagram { n: self.n(), arcs }
    }

    /// Drops the point `n` and every fence ending there.
    pub fn restriction(&self) -> Result<Congruence> {
        if self.n == 0 {
            return Err(Error::InvalidFence("cannot restrict a congruence on S_0".into()));
        }
        let m = self.n() - 1;
        let mut out = Congruence::empty(m)?;
        for f in self.fences().filter(|f| (f.b as usize) < self.n()) {
            out.insert_raw(&f);
        }
        Ok(out)
    }

    /// Fences lying in `[s, t]`, relabelled onto `[1, t - s + 1]`.
    pub fn restrict_to_interval(&self, s: usize, t: usize) -> Result<Congruence> {
        if s < 1 || t > self.n() || s > t {
            return Err(Error::InvalidFence(format!("bad interval [{s},{t}] for n = {}", self.n())));
        }
        let mut out = Congruence::empty(t - s + 1)?;
        for f in self.fences().filter(|f| f.a as usize >= s && f.b as usize <= t) {
            out.insert_raw(&f.shifted(1 - s as i32)?);
        }
        Ok(out)
    }

    /// Terse form of the reduced diagram, e.g. `1-3:{};2-4:{3}`.
    pub fn to_terse(&self) -> String {
        format_fence_list(&self.reduced_diagram().arcs)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson::from_fences(self.n(), &self.reduced_diagram().arcs, true)
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence(n={}, [{}])", self.n, self.to_terse())
    }
}

/// Arc diagram: one arc per listed fence. As a reduced diagram the arcs
/// are the maximal fences of a downset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcDiagram {
    pub n: usize,
    pub arcs: Vec<Fence>,
}

impl ArcDiagram {
    pub fn is_simple(&self) -> bool {
        self.arcs.iter().all(Fence::is_simple)
    }

    /// Centres `s` of loops: both `f(s-1,s+1,∅)` and `f(s-1,s+1,{s})` present.
    pub fn loop_centers(&self) -> Vec<usize> {
        (2..self.n)
            .filter(|&s| {
                let s = s as u8;
                let left = Fence::new_unchecked(s - 1, s + 1, 0);
                let right = Fence::new_unchecked(s - 1, s + 1, 1 << s);
                self.arcs.contains(&left) && self.arcs.contains(&right)
            })
            .collect()
    }
}

impl fmt::Display for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_fence_list(&self.arcs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FenceJson {
    pub a: u8,
    pub b: u8,
    #[serde(default)]
    pub left: Vec<u8>,
}

/// `{"n":4,"fences":[{"a":2,"b":4,"left":[3]}],"generators":true}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub n: usize,
    pub fences: Vec<FenceJson>,
    #[serde(default = "default_generators")]
    pub generators: bool,
}

fn default_generators() -> bool {
    true
}

impl DiagramJson {
    pub fn from_fences(n: usize, fences: &[Fence], generators: bool) -> DiagramJson {
        let fences = fences.iter().map(|f| FenceJson { a: f.a, b: f.b, left: f.left_values() }).collect();
        DiagramJson { n, fences, generators }
    }

    pub fn to_congruence(&self) -> Result<Congruence> {
        let fences = self.fences.iter().map(|f| Fence::new(f.a, f.b, &f.left)).collect::<Result<Vec<_>>>()?;
        Congruence::from_fences(self.n, &fences, self.generators)
    }

    pub fn parse(s: &str) -> Result<DiagramJson> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("diagram JSON: {e}")))
    }
}

/// Fences `f(a,b,L)` with `b - a >= 2`, sorted by decreasing span, so every
/// fence appears after all fences below it in the forcing order.
fn essential_order(n: usize) -> Vec<Fence> {
    let mut fences: Vec<Fence> = all_fences(n).into_iter().filter(Fence::is_essential).collect();
    fences.sort_by(|x, y| y.span().cmp(&x.span()).then(x.cmp(y)));
    fences
}

/// Visits every essential congruence on `S_n` exactly once and returns the count.
///
/// Walks a binary include/exclude tree over the essential fences in a linear
/// extension of the forcing order; a fence may be included only when all of
/// its lower covers already are, so every leaf is a distinct downset. The
/// visitor sees one reused congruence value.
pub fn enumerate_essential_congruences<F: FnMut(&Congruence)>(n: usize, mut visitor: F) -> Result<u64> {
    if n > 6 {
        return Err(Error::TooLarge { n, limit: 6, what: "essential congruence enumeration" });
    }
    let order = essential_order(n);
    let index: Vec<usize> = order.iter().map(|f| f.index(n)).collect();
    let lower: Vec<Vec<usize>> = order.iter().map(|f| f.lower_covers(n).iter().map(|g| g.index(n)).collect()).collect();
    let mut current = Congruence::empty(n)?;
    let mut count = 0u64;

    fn walk<F: FnMut(&Congruence)>(
        pos: usize,
        index: &[usize],
        lower: &[Vec<usize>],
        current: &mut Congruence,
        count: &mut u64,
        visitor: &mut F,
    ) {
        if pos == index.len() {
            *count += 1;
            visitor(current);
            return;
        }
        walk(pos + 1, index, lower, current, count, visitor);
        if lower[pos].iter().all(|&g| current.contains_index(g)) {
            current.set_index(index[pos], true);
            walk(pos + 1, index, lower, current, count, visitor);
            current.set_index(index[pos], false);
        }
    }

    walk(0, &index, &lower, &mut current, &mut count, &mut visitor);
    Ok(count)
}

/// Materialized list of essential congruences, in enumeration order.
pub fn essential_congruences(n: usize) -> Result<Vec<Congruence>> {
    if n > 5 {
        return Err(Error::TooLarge { n, limit: 5, what: "materialized essential congruences" });
    }
    let mut out = Vec::new();
    enumerate_essential_congruences(n, |c| out.push(c.clone()))?;
    Ok(out)
}

/// Visits every congruence on `S_n` (all downsets of `F_n`, essential or not).
pub fn enumerate_all_congruences<F: FnMut(&Congruence)>(n: usize, mut visitor: F) -> Result<u64> {
    if n > 5 {
        return Err(Error::TooLarge { n, limit: 5, what: "enumeration of all congruences" });
    }
    let mut order = all_fences(n);
    order.sort_by(|x, y| y.span().cmp(&x.span()).then(x.cmp(y)));
    let index: Vec<usize> = order.iter().map(|f| f.index(n)).collect();
    let lower: Vec<Vec<usize>> = order.iter().map(|f| f.lower_covers(n).iter().map(|g| g.index(n)).collect()).collect();
    let mut current = Congruence::empty(n)?;
    let mut count = 0u64;
    let mut stack: Vec<(usize, bool)> = vec![(0, false)];
    // explicit stack: (position, whether the include branch has been taken)
    while let Some((pos, included)) = stack.pop() {
        if pos == index.len() {
            count += 1;
            visitor(&current);
            continue;
        }
        if !included {
            stack.push((pos, true));
            stack.push((pos + 1, false));
        } else {
            // returning from the exclude branch (or the include branch)
            if current.contains_index(index[pos]) {
                current.set_index(index[pos], false);
            } else if lower[pos].iter().all(|&g| current.contains_index(g)) {
                current.set_index(index[pos], true);
                stack.push((pos, true));
                stack.push((pos + 1, false));
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Fence {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn forcing_less_examples() {
        assert!(f("1-4:{2,3}").forcing_less(&f("2-4:{3}")));
        let g = f("2-4:{3}");
        assert!(!g.forcing_less(&g));
        assert!(!f("1-4:{2}").forcing_less(&f("2-4:{3}")));
    }

    #[test]
    fn index_matches_enumeration_order() {
        for n in 2..=8 {
            let all = all_fences(n);
            assert_eq!(all.len(), total_fences(n));
            for (i, g) in all.iter().enumerate() {
                assert_eq!(g.index(n), i, "{g:?} at n={n}");
            }
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn fence_count_examples() {
        assert_eq!(fence_count(4, 3).unwrap(), 4);
        assert_eq!((2..4).map(|k| fence_count(4, k).unwrap()).sum::<u64>(), 8);
        for n in 2..=12 {
            assert_eq!(fence_count(n, 1).unwrap(), n as u64 - 1);
            let all: u64 = (1..n).map(|k| fence_count(n, k).unwrap()).sum();
            assert_eq!(all as usize, total_fences(n));
            let essential: u64 = (2..n).map(|k| fence_count(n, k).unwrap()).sum();
            assert_eq!(essential, (1u64 << n) - 2 * n as u64);
        }
        assert!(fence_count(4, 0).is_err());
        assert!(fence_count(4, 4).is_err());
    }

    #[test]
    fn downset_closure_examples() {
        let c = Congruence::downset_closure(4, &[f("2-4:{3}")]).unwrap();
        let got: Vec<Fence> = c.fences().collect();
        let mut want = vec![f("2-4:{3}"), f("1-4:{3}"), f("1-4:{2,3}")];
        want.sort();
        assert_eq!(got, want);
        assert!(Congruence::downset_closure(5, &[]).unwrap().is_empty());
        let all = Congruence::downset_closure(4, &all_fences(4)).unwrap();
        assert_eq!(all.len(), 11);
        assert_eq!(all, Congruence::full(4).unwrap());
        // idempotent
        let again = Congruence::downset_closure(4, &c.fences().collect::<Vec<_>>()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn fence_edges_examples() {
        let got = fence_edges(&f("2-4:{3}"), 4).unwrap();
        let mut want = vec![(p("3241"), p("3421")), (p("1324"), p("1342")), (p("3124"), p("3142"))];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(fence_edges(&f("1-2"), 2).unwrap(), vec![(p("12"), p("21"))]);
        let got = fence_edges(&f("1-4:{2,3}"), 4).unwrap();
        assert_eq!(got, vec![(p("2314"), p("2341")), (p("3214"), p("3241"))]);
        assert!(fence_edges(&f("1-2"), 11).is_err());
    }

    #[test]
    fn edge_fence_examples() {
        assert_eq!(edge_fence(&p("1324"), &p("1342")).unwrap(), f("2-4:{3}"));
        assert_eq!(edge_fence(&p("12"), &p("21")).unwrap(), f("1-2"));
        assert_eq!(edge_fence(&p("3214"), &p("3241")).unwrap(), f("1-4:{2,3}"));
        assert_eq!(edge_fence(&p("3241"), &p("3214")).unwrap(), f("1-4:{2,3}"));
        assert!(edge_fence(&p("123"), &p("321")).is_err());
        assert!(edge_fence(&p("123"), &p("123")).is_err());
    }

    #[test]
    fn is_bar_examples() {
        let c = Congruence::downset_closure(4, &[f("2-4:{3}")]).unwrap();
        assert!(c.is_bar(&p("1324"), &p("1342")).unwrap());
        assert!(!Congruence::empty(2).unwrap().is_bar(&p("12"), &p("21")).unwrap());
        assert!(c.is_bar(&p("3214"), &p("3241")).unwrap());
        assert!(c.is_bar(&p("12"), &p("21")).is_err());
    }

    #[test]
    fn reduced_diagram_examples() {
        let c = Congruence::downset_closure(4, &[f("2-4:{3}")]).unwrap();
        assert_eq!(c.reduced_diagram().arcs, vec![f("2-4:{3}")]);
        assert!(Congruence::empty(4).unwrap().reduced_diagram().arcs.is_empty());
        let full = Congruence::full(4).unwrap();
        assert_eq!(full.reduced_diagram().arcs, vec![f("1-2"), f("2-3"), f("3-4")]);
        for c in [c, full] {
            assert_eq!(Congruence::from_diagram(&c.reduced_diagram()).unwrap(), c);
        }
        let bad = ArcDiagram { n: 4, arcs: vec![f("1-4:{2,3}"), f("2-4:{3}")] };
        assert!(Congruence::from_diagram(&bad).is_err());
    }

    #[test]
    fn restriction_examples() {
        let c = Congruence::downset_closure(4, &[f("2-4:{3}")]).unwrap();
        assert!(c.restriction().unwrap().is_empty());
        assert_eq!(c.restriction().unwrap().n(), 3);
        assert!(Congruence::empty(3).unwrap().restriction().unwrap().is_empty());
        let c = Congruence::downset_closure(4, &[f("1-3:{2}"), f("2-4:{3}")]).unwrap();
        let want = Congruence::downset_closure(3, &[f("1-3:{2}")]).unwrap();
        assert_eq!(c.restriction().unwrap(), want);
        assert!(c.restriction().unwrap().is_downset());
    }

    #[test]
    fn essential_counts_small() {
        assert_eq!(enumerate_essential_congruences(2, |_| {}).unwrap(), 1);
        assert_eq!(enumerate_essential_congruences(3, |_| {}).unwrap(), 4);
        assert_eq!(enumerate_essential_congruences(4, |_| {}).unwrap(), 47);
        let mut seen = std::collections::HashSet::new();
        enumerate_essential_congruences(4, |c| {
            assert!(c.is_downset() && c.is_essential());
            assert!(seen.insert(c.clone()));
        })
        .unwrap();
        assert!(enumerate_essential_congruences(7, |_| {}).is_err());
    }

    #[test]
    fn all_congruences_include_essential_ones() {
        let mut total = 0;
        let mut essential = 0;
        enumerate_all_congruences(4, |c| {
            assert!(c.is_downset());
            total += 1;
            if c.is_essential() {
                essential += 1;
            }
        })
        .unwrap();
        assert_eq!(essential, 47);
        assert!(total > essential);
    }

    #[test]
    fn terse_and_json_forms() {
        let list = parse_fence_list("1-3:{};2-4:{3}").unwrap();
        assert_eq!(list, vec![f("1-3"), f("2-4:{3}")]);
        assert_eq!(format_fence_list(&list), "1-3:{};2-4:{3}");
        assert!(parse_fence_list("").unwrap().is_empty());
        assert!(parse_fence_list("3-1").is_err());
        assert!(parse_fence_list("1-3:{3}").is_err());
        assert!(parse_fence_list("1-3:{2").is_err());

        let j = DiagramJson::parse(r#"{"n":4,"fences":[{"a":2,"b":4,"left":[3]}],"generators":true}"#).unwrap();
        let c = j.to_congruence().unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(serde_json::to_string(&c.to_json()).unwrap(), r#"{"n":4,"fences":[{"a":2,"b":4,"left":[3]}],"generators":true}"#);
        let strict = DiagramJson::parse(r#"{"n":4,"fences":[{"a":2,"b":4,"left":[3]}],"generators":false}"#).unwrap();
        assert!(matches!(strict.to_congruence(), Err(Error::NotDownset(_))));
        let bad = DiagramJson::parse(r#"{"n":3,"fences":[{"a":2,"b":4}]}"#).unwrap();
        assert!(bad.to_congruence().is_err());
    }
}
