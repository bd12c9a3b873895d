//! Structural analysis of quotient graphs and the counting results.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::canon::{canonical_form, CanonicalForm};
use crate::classes::{compute_classes, ClassPartition};
use crate::error::{Error, Result};
use crate::fence::{all_fences, enumerate_essential_congruences, Congruence, Fence};
use crate::genj::{build_representatives, hamilton_path_from, is_cyclic_order};
use crate::perm::{check_n, Permutation};
use crate::quotient::{build_quotient_graph, QuotientGraph};

/// `desc(min X) + asc(max X)`.
pub fn class_degree(part: &ClassPartition, id: usize) -> usize {
    let x = part.class(id);
    x.min.descents() + x.max.ascents()
}

/// `⌈2√n⌉`.
pub fn ceil_two_sqrt(n: usize) -> usize {
    // smallest m with m² ≥ 4n
    let mut m = (4.0 * n as f64).sqrt() as usize;
    while m * m < 4 * n {
        m += 1;
    }
    while m > 0 && (m - 1) * (m - 1) >= 4 * n {
        m -= 1;
    }
    m
}

/// `2n - ⌈2√n⌉`, the largest degree any quotient graph on `S_n` attains.
pub fn max_degree_bound(n: usize) -> usize {
    2 * n - ceil_two_sqrt(n)
}

/// Longest increasing and longest decreasing subsequence lengths.
pub fn lis_lds(p: &Permutation) -> (usize, usize) {
    let e = p.entries();
    let mut inc = vec![1usize; e.len()];
    let mut dec = vec![1usize; e.len()];
    for j in 0..e.len() {
        for i in 0..j {
            if e[i] < e[j] {
                inc[j] = inc[j].max(inc[i] + 1);
            } else {
                dec[j] = dec[j].max(dec[i] + 1);
            }
        }
    }
    (inc.into_iter().max().unwrap_or(0), dec.into_iter().max().unwrap_or(0))
}

/// A congruence with a class `[min, max]` of maximum possible degree.
#[derive(Clone, Debug)]
pub struct MaxDegreeWitness {
    pub congruence: Congruence,
    pub min: Permutation,
    pub max: Permutation,
    pub degree: usize,
    /// Class id of `min`, filled in when `n` is small enough to compute all classes.
    pub class_id: Option<usize>,
}

/// Table construction: write `1..n` into rows of `⌈√n⌉` columns from the
/// bottom up; the column reading is the class minimum, the row reading the
/// class maximum, and one fence per diagonal neighbour pair glues them.
pub fn max_degree_witness(n: usize) -> Result<MaxDegreeWitness> {
    check_n(n)?;
    if n < 2 {
        return Err(Error::TooLarge { n, limit: 2, what: "max-degree witness (needs n >= 2)" });
    }
    let s = (1..=n).find(|s| s * s >= n).unwrap();
    let rows = n.div_ceil(s);
    let cell = |row: usize, col: usize| -> Option<u8> {
        let v = row * s + col + 1;
        (col < s && v <= n).then_some(v as u8)
    };
    let mut column_reading = Vec::with_capacity(n);
    for col in 0..s {
        for row in (0..rows).rev() {
            column_reading.extend(cell(row, col));
        }
    }
    let mut row_reading = Vec::with_capacity(n);
    for row in (0..rows).rev() {
        for col in 0..s {
            row_reading.extend(cell(row, col));
        }
    }
    let mut generators = Vec::new();
    for row in 0..rows {
        for col in 0..s {
            if let (Some(a), Some(b)) = (cell(row, col), cell(row + 1, col + 1)) {
                let left: Vec<u8> = (0..=col).filter_map(|c| cell(row + 1, c)).collect();
                generators.push(Fence::new(a, b, &left)?);
            }
        }
    }
    let congruence = Congruence::downset_closure(n, &generators)?;
    let min = Permutation::new(&column_reading)?;
    let max = Permutation::new(&row_reading)?;

    if min.descent_positions().any(|i| congruence.is_bar_at(&min, i)) {
        return Err(Error::Verification(format!("{min:?} has a contracted lower cover")));
    }
    if max.ascent_positions().any(|i| congruence.is_bar_at(&max, i)) {
        return Err(Error::Verification(format!("{max:?} has a contracted upper cover")));
    }
    // climb from min to max through bars inside the interval
    let target = max.inversion_set();
    let mut walk = min;
    while walk != max {
        let step = walk
            .ascent_positions()
            .map(|i| (i, walk.swap_adjacent(i)))
            .find(|(i, q)| q.inversion_set().is_subset(&target) && congruence.is_bar_at(&walk, *i));
        match step {
            Some((_, q)) => walk = q,
            None => return Err(Error::Verification(format!("{min:?} and {max:?} are not congruent"))),
        }
    }
    let degree = min.descents() + max.ascents();
    if degree != max_degree_bound(n) {
        return Err(Error::Verification(format!("witness degree {degree} differs from {}", max_degree_bound(n))));
    }
    let class_id = if n <= 7 {
        let part = compute_classes(&congruence)?;
        let id = part.class_of(&min);
        if part.class(id).min != min || part.class(id).max != max {
            return Err(Error::Verification("witness class has different extremes".into()));
        }
        Some(id)
    } else {
        None
    };
    Ok(MaxDegreeWitness { congruence, min, max, degree, class_id })
}

fn require_essential(c: &Congruence) -> Result<()> {
    if c.is_essential() {
        Ok(())
    } else {
        let f = c.fences().find(|f| !f.is_essential()).unwrap();
        Err(Error::NotEssential(f.to_string()))
    }
}

/// Regular iff every arc of the reduced diagram is simple.
pub fn is_regular(c: &Congruence) -> Result<bool> {
    require_essential(c)?;
    Ok(c.reduced_diagram().is_simple())
}

/// Regularity read off the quotient graph itself.
pub fn is_regular_by_degrees(c: &Congruence) -> Result<bool> {
    require_essential(c)?;
    Ok(build_quotient_graph(&compute_classes(c)?)?.is_regular())
}

/// Points `s` where the reduced diagram has a loop, and the factor
/// intervals between consecutive loop centres.
pub fn loop_factors(c: &Congruence) -> Vec<(usize, usize)> {
    let n = c.n();
    let mut cuts = vec![1];
    cuts.extend(c.reduced_diagram().loop_centers());
    cuts.push(n);
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Cutting the reduced diagram at loops, every factor is empty or is a
/// three-point diagram with a single short arc.
pub fn is_vertex_transitive(c: &Congruence) -> Result<bool> {
    require_essential(c)?;
    let diagram = c.reduced_diagram();
    Ok(loop_factors(c).into_iter().all(|(s, t)| {
        let arcs: Vec<&Fence> = diagram.arcs.iter().filter(|f| f.a as usize >= s && f.b as usize <= t).collect();
        arcs.is_empty() || (t - s == 2 && arcs.len() == 1)
    }))
}

/// Transitivity of the automorphism group on the quotient graph.
pub fn is_vertex_transitive_by_automorphisms(c: &Congruence) -> Result<bool> {
    require_essential(c)?;
    if c.n() > 6 {
        return Err(Error::TooLarge { n: c.n(), limit: 6, what: "automorphism transitivity check" });
    }
    let g = build_quotient_graph(&compute_classes(c)?)?;
    Ok(crate::canon::is_vertex_transitive(g.adjacency()))
}

pub fn catalan(n: usize) -> u128 {
    let mut c = 1u128;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// `C_{n-1}²`.
pub fn count_regular(n: usize) -> u128 {
    let c = catalan(n.saturating_sub(1));
    c * c
}

/// `compositions[m][k]`: compositions of `m` with exactly `k` parts equal to 2.
fn compositions_by_twos(m: usize) -> Vec<Vec<u128>> {
    let mut table = vec![vec![0u128; m + 1]; m + 1];
    table[0][0] = 1;
    for total in 1..=m {
        for part in 1..=total {
            for k in 0..=m {
                let prev = table[total - part][k];
                if prev == 0 {
                    continue;
                }
                let k2 = if part == 2 { k + 1 } else { k };
                table[total][k2] += prev;
            }
        }
    }
    table
}

/// `partitions[m][k]`: partitions of `m` with exactly `k` parts equal to 2.
fn partitions_by_twos(m: usize) -> Vec<Vec<u128>> {
    // table[total][k] over parts processed so far; the part 2 shifts k
    let mut table = vec![vec![0u128; m + 1]; m + 1];
    table[0][0] = 1;
    for part in 1..=m {
        for total in part..=m {
            for k in 0..=m {
                let prev = table[total - part][k];
                if prev == 0 {
                    continue;
                }
                let k2 = if part == 2 { k + 1 } else { k };
                if k2 <= m {
                    table[total][k2] += prev;
                }
            }
        }
    }
    table
}

/// `Σ_k 3^k c_{n-1,k}`.
pub fn count_vertex_transitive(n: usize) -> u128 {
    let m = n.saturating_sub(1);
    compositions_by_twos(m)[m].iter().enumerate().map(|(k, &c)| 3u128.pow(k as u32) * c).sum()
}

/// Linear recurrence `b_0 = b_1 = 1`, `b_m = 2 b_{m-2} + Σ_{i<m} b_i`;
/// `count_vertex_transitive(n) = b_{n-1}`.
pub fn vertex_transitive_recurrence(m: usize) -> u128 {
    let mut b: Vec<u128> = vec![1, 1];
    while b.len() <= m {
        let k = b.len();
        let next = 2 * b[k - 2] + b.iter().sum::<u128>();
        b.push(next);
    }
    b[m]
}

/// Number of parts equal to 2 over all partitions of `m`.
pub fn twos_in_partitions(m: usize) -> u128 {
    partitions_by_twos(m)[m].iter().enumerate().map(|(k, &c)| k as u128 * c).sum()
}

/// `t_{n+1}`.
pub fn count_vt_noniso(n: usize) -> u128 {
    twos_in_partitions(n + 1)
}

/// `Σ_k (k+1) p_{n-1,k}` with `p_{m,k}` the partitions of `m` with `k` twos.
pub fn count_vt_noniso_by_partitions(n: usize) -> u128 {
    let m = n.saturating_sub(1);
    partitions_by_twos(m)[m].iter().enumerate().map(|(k, &c)| (k as u128 + 1) * c).sum()
}

/// Number of essential congruences (quotient graphs) by enumeration.
pub fn count_congruences(n: usize) -> Result<u64> {
    enumerate_essential_congruences(n, |_| {})
}

/// `(all, regular, vertex-transitive)` counts by enumeration using the
/// diagram characterizations.
pub fn count_filtered(n: usize) -> Result<(u64, u64, u64)> {
    if n > 5 {
        return Err(Error::TooLarge { n, limit: 5, what: "filtered enumeration" });
    }
    let (mut regular, mut vt) = (0, 0);
    let all = enumerate_essential_congruences(n, |c| {
        regular += u64::from(c.reduced_diagram().is_simple());
        vt += u64::from(is_vertex_transitive(c).unwrap_or(false));
    })?;
    Ok((all, regular, vt))
}

/// `(|Q_n'|, |R_n'|)` by canonical-form bucketing of all essential quotient graphs.
pub fn count_noniso(n: usize) -> Result<(usize, usize)> {
    if n > 5 {
        return Err(Error::TooLarge { n, limit: 5, what: "isomorphism classification" });
    }
    let mut all: HashSet<CanonicalForm> = HashSet::new();
    let mut regular: HashSet<CanonicalForm> = HashSet::new();
    let mut failure = None;
    enumerate_essential_congruences(n, |c| {
        if failure.is_some() {
            return;
        }
        match compute_classes(c).and_then(|p| build_quotient_graph(&p)) {
            Ok(g) => {
                let form = canonical_form(g.adjacency());
                if g.is_regular() {
                    regular.insert(form.clone());
                }
                all.insert(form);
            }
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    if n >= 2 && (all.len() as u64) < chain_lower_bound(n) {
        return Err(Error::Verification(format!("{} isomorphism types, below the chain bound", all.len())));
    }
    Ok((all.len(), regular.len()))
}

/// `2^n - 2n + 1`.
pub fn chain_lower_bound(n: usize) -> u64 {
    (1u64 << n) + 1 - 2 * n as u64
}

/// Adds the essential fences one at a time, longest span first (so each
/// prefix is a downset), and returns the class count after each step. The
/// counts strictly decrease, so the chain yields `2^n - 2n + 1` pairwise
/// non-isomorphic quotient graphs.
pub fn chain_class_counts(n: usize) -> Result<Vec<usize>> {
    if n > 8 {
        return Err(Error::TooLarge { n, limit: 8, what: "chain bound check" });
    }
    let mut order: Vec<Fence> = all_fences(n).into_iter().filter(Fence::is_essential).collect();
    order.sort_by(|x, y| y.span().cmp(&x.span()).then(x.cmp(y)));
    let mut counts = vec![compute_classes(&Congruence::empty(n)?)?.num_classes()];
    for k in 1..=order.len() {
        let c = Congruence::from_fences(n, &order[..k], false)?;
        counts.push(compute_classes(&c)?.num_classes());
    }
    if counts.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Verification("class counts along the chain do not strictly decrease".into()));
    }
    Ok(counts)
}

/// `(graph is bipartite, conjectured criterion holds)`. The criterion asks
/// that the reduced diagram be a union of complete arc sets `A(a, b)` (all
/// `2^(b-a-1)` fences on the pair) over pairwise non-nesting intervals.
pub fn bipartite_probe(c: &Congruence) -> Result<(bool, bool)> {
    let graph = build_quotient_graph(&compute_classes(c)?)?.is_bipartite();
    Ok((graph, bipartite_criterion(c)))
}

pub fn bipartite_criterion(c: &Congruence) -> bool {
    let diagram = c.reduced_diagram();
    let mut pairs: BTreeMap<(u8, u8), usize> = BTreeMap::new();
    for f in &diagram.arcs {
        *pairs.entry((f.a, f.b)).or_insert(0) += 1;
    }
    let complete = pairs.iter().all(|(&(a, b), &k)| k == 1 << (b - a - 1));
    let intervals: Vec<(u8, u8)> = pairs.keys().copied().collect();
    let nesting = intervals
        .iter()
        .any(|&(a, b)| intervals.iter().any(|&(x, y)| (x, y) != (a, b) && x <= a && b <= y));
    complete && !nesting
}

/// Outcome of a Hamilton cycle search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleSearch {
    Found(Vec<usize>),
    None,
    BudgetExceeded,
}

/// Looks for a Hamilton cycle in three stages: close `path` directly if its
/// ends are adjacent, then try rotations of `path` (replace the tail
/// `v_{i+1} … v_end` by its reverse whenever `v_end ~ v_i`, looking for an
/// end adjacent to the start), then backtrack from vertex 0. The two search
/// stages share `budget`.
pub fn hamilton_cycle(g: &QuotientGraph, path: Option<&[usize]>, budget: u64) -> CycleSearch {
    let n = g.node_count();
    if n < 3 {
        return CycleSearch::None;
    }
    let mut steps = 0u64;
    if let Some(p) = path.filter(|p| p.len() == n) {
        if let Some(cycle) = close_by_rotations(g, p, budget / 2, &mut steps) {
            return CycleSearch::Found(cycle);
        }
    }
    let mut on_path = vec![false; n];
    let mut stack = vec![0usize];
    on_path[0] = true;

    fn viable(g: &QuotientGraph, stack: &[usize], on_path: &[bool]) -> bool {
        let (first, last) = (stack[0], *stack.last().unwrap());
        // every unvisited vertex still needs two usable neighbours
        (0..g.node_count()).filter(|&w| !on_path[w]).all(|w| {
            g.neighbors(w).iter().filter(|&&x| !on_path[x] || x == first || x == last).take(2).count() == 2
        })
    }

    fn extend(
        g: &QuotientGraph,
        stack: &mut Vec<usize>,
        on_path: &mut [bool],
        steps: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        *steps += 1;
        if *steps > budget {
            return None;
        }
        let n = g.node_count();
        let last = *stack.last().unwrap();
        if stack.len() == n {
            return Some(g.has_edge(last, stack[0]));
        }
        if !viable(g, stack, on_path) {
            return Some(false);
        }
        // fewest free neighbours first
        let free = |v: usize, on_path: &[bool]| g.neighbors(v).iter().filter(|&&w| !on_path[w]).count();
        let mut next: Vec<usize> = g.neighbors(last).iter().copied().filter(|&v| !on_path[v]).collect();
        next.sort_by_key(|&v| free(v, on_path));
        for v in next {
            on_path[v] = true;
            stack.push(v);
            match extend(g, stack, on_path, steps, budget) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            stack.pop();
            on_path[v] = false;
        }
        Some(false)
    }

    match extend(g, &mut stack, &mut on_path, &mut steps, budget) {
        Some(true) => CycleSearch::Found(stack),
        Some(false) => CycleSearch::None,
        None => CycleSearch::BudgetExceeded,
    }
}

/// Breadth-first search over rotations of a Hamilton path, alternately
/// rotating at either end, until some path has adjacent ends.
fn close_by_rotations(g: &QuotientGraph, path: &[usize], budget: u64, steps: &mut u64) -> Option<Vec<usize>> {
    let n = path.len();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = std::collections::VecDeque::from([path.to_vec()]);
    seen.insert(path.to_vec());
    while let Some(p) = queue.pop_front() {
        *steps += 1;
        if *steps > budget {
            return None;
        }
        if g.has_edge(p[0], p[n - 1]) {
            return Some(p);
        }
        for flipped in [false, true] {
            let mut base = p.clone();
            if flipped {
                base.reverse();
            }
            let end = base[n - 1];
            let mut position = vec![0usize; n];
            for (i, &v) in base.iter().enumerate() {
                position[v] = i;
            }
            for &v in g.neighbors(end) {
                let i = position[v];
                if i + 1 >= n - 1 {
                    continue;
                }
                let mut q = base.clone();
                q[i + 1..].reverse();
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
    }
    None
}

/// Everything the `analyze` command reports about one congruence.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub diagram: String,
    pub essential: bool,
    pub classes: usize,
    pub edges: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub min_degree: usize,
    pub max_degree: usize,
    pub regular: bool,
    /// Only defined for essential congruences.
    pub vertex_transitive: Option<bool>,
    pub bipartite: bool,
    pub bipartite_criterion: bool,
    pub cycle_parity_condition: bool,
    pub hamilton_path_closes: bool,
    /// `None` when the search budget ran out.
    pub hamilton_cycle_found: Option<bool>,
}

pub fn analyze(c: &Congruence, cycle_budget: u64) -> Result<AnalysisReport> {
    let reps = build_representatives(c)?;
    let part = reps.partition();
    let g = build_quotient_graph(part)?;
    for id in 0..part.num_classes() {
        if class_degree(part, id) != g.degree(id) {
            return Err(Error::Verification(format!("degree of class {id} disagrees with its extremes")));
        }
    }
    let path = hamilton_path_from(&reps)?;
    let (parity, closes) = if c.n() >= 3 && c.n() <= 8 { is_cyclic_order(c)? } else { (false, false) };
    let cycle = match hamilton_cycle(&g, Some(&path.classes), cycle_budget) {
        CycleSearch::Found(_) => Some(true),
        CycleSearch::None => Some(false),
        CycleSearch::BudgetExceeded => None,
    };
    let essential = c.is_essential();
    Ok(AnalysisReport {
        n: c.n(),
        diagram: c.to_terse(),
        essential,
        classes: g.node_count(),
        edges: g.edge_count(),
        degree_histogram: g.degree_histogram(),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        regular: g.is_regular(),
        vertex_transitive: if essential { Some(is_vertex_transitive(c)?) } else { None },
        bipartite: g.is_bipartite(),
        bipartite_criterion: bipartite_criterion(c),
        cycle_parity_condition: parity,
        hamilton_path_closes: closes,
        hamilton_cycle_found: cycle,
    })
}

/// Where a Table-1 cell came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellSource {
    Enumeration,
    Formula,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Cell {
    pub row: &'static str,
    pub n: usize,
    /// `None` prints as `?`.
    pub value: Option<u128>,
    pub source: CellSource,
}

/// Largest `n` per enumeration-backed row; beyond it cells are unknown.
#[derive(Clone, Copy, Debug)]
pub struct Table1Budget {
    pub congruences: usize,
    pub noniso: usize,
    pub degrees: usize,
}

impl Default for Table1Budget {
    fn default() -> Self {
        Table1Budget { congruences: 5, noniso: 5, degrees: 4 }
    }
}

pub const TABLE1_ROWS: [&str; 8] = ["Q", "R", "V", "Q'", "R'", "V'", "min-degree", "max-degree"];

/// The grid of counts and degrees for `n = 2..=max_n`. Rows without a
/// closed formula are enumerated within `budget`; degree rows are
/// enumerated within budget and use the formula beyond it.
pub fn table1(max_n: usize, budget: Table1Budget) -> Result<Vec<Table1Cell>> {
    let mut out = Vec::new();
    let cell = |row, n, value, source| Table1Cell { row, n, value, source };
    let mut noniso = BTreeMap::new();
    let mut degrees = BTreeMap::new();
    for n in 2..=max_n {
        if n <= budget.noniso.min(5) {
            noniso.insert(n, count_noniso(n)?);
        }
        if n <= budget.degrees.min(5) {
            degrees.insert(n, degree_extremes(n)?);
        }
    }
    for row in TABLE1_ROWS {
        for n in 2..=max_n {
            let c = match row {
                "Q" if n <= budget.congruences.min(6) => {
                    cell(row, n, Some(count_congruences(n)? as u128), CellSource::Enumeration)
                }
                "Q" => cell(row, n, None, CellSource::Unknown),
                "R" => cell(row, n, Some(count_regular(n)), CellSource::Formula),
                "V" => cell(row, n, Some(count_vertex_transitive(n)), CellSource::Formula),
                "Q'" | "R'" => match noniso.get(&n) {
                    Some(&(q, r)) => cell(row, n, Some(if row == "Q'" { q } else { r } as u128), CellSource::Enumeration),
                    None => cell(row, n, None, CellSource::Unknown),
                },
                "V'" => cell(row, n, Some(count_vt_noniso(n)), CellSource::Formula),
                "min-degree" | "max-degree" => match degrees.get(&n) {
                    Some(&(lo, hi)) => {
                        cell(row, n, Some(if row == "min-degree" { lo } else { hi } as u128), CellSource::Enumeration)
                    }
                    None => {
                        let v = if row == "min-degree" { n - 1 } else { max_degree_bound(n) };
                        cell(row, n, Some(v as u128), CellSource::Formula)
                    }
                },
                _ => unreachable!(),
            };
            out.push(c);
        }
    }
    Ok(out)
}

/// `(min over essential congruences of min degree, max over all congruences of max degree)`.
pub fn degree_extremes(n: usize) -> Result<(usize, usize)> {
    if n > 5 {
        return Err(Error::TooLarge { n, limit: 5, what: "degree extremes by enumeration" });
    }
    let mut lo = usize::MAX;
    let mut hi = 0;
    let mut failure = None;
    crate::fence::enumerate_all_congruences(n, |c| {
        if failure.is_some() {
            return;
        }
        match compute_classes(c) {
            Ok(part) => {
                let degrees = (0..part.num_classes()).map(|id| class_degree(&part, id));
                let (mn, mx) = degrees.fold((usize::MAX, 0), |(a, b), d| (a.min(d), b.max(d)));
                hi = hi.max(mx);
                if c.is_essential() {
                    lo = lo.min(mn);
                }
            }
            Err(e) => failure = Some(e),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok((lo, hi)),
    }
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

    fn tamari(n: usize) -> Congruence {
        let gens: Vec<Fence> = all_fences(n).into_iter().filter(|f| f.left != 0).collect();
        Congruence::downset_closure(n, &gens).unwrap()
    }

    #[test]
    fn degree_examples() {
        let c = tamari(4);
        let part = compute_classes(&c).unwrap();
        assert_eq!(class_degree(&part, part.class_of(&p("1234"))), 3);
        let full = compute_classes(&Congruence::full(4).unwrap()).unwrap();
        assert_eq!(class_degree(&full, 0), 0);
        let c = Congruence::downset_closure(4, &[f("1-4:{2}")]).unwrap();
        let part = compute_classes(&c).unwrap();
        assert_eq!(class_degree(&part, part.class_of(&p("2143"))), 4);
    }

    #[test]
    fn witness_examples() {
        let w = max_degree_witness(4).unwrap();
        assert_eq!((w.min, w.max, w.degree), (p("3142"), p("3412"), 4));
        assert_eq!(w.congruence.reduced_diagram().arcs, vec![f("1-4:{3}")]);
        assert_eq!(max_degree_witness(2).unwrap().degree, 1);
        assert_eq!(max_degree_witness(9).unwrap().degree, 12);
        assert!(max_degree_witness(1).is_err());
    }

    #[test]
    fn lis_lds_examples() {
        assert_eq!(lis_lds(&Permutation::identity(5).unwrap()), (5, 1));
        assert_eq!(lis_lds(&p("321")), (1, 3));
        let w = max_degree_witness(9).unwrap();
        let (r, s) = lis_lds(&w.min);
        assert_eq!(r + s, 6);
    }

    #[test]
    fn regularity_examples() {
        assert!(is_regular(&tamari(4)).unwrap());
        assert!(!is_regular(&Congruence::downset_closure(4, &[f("1-4:{2}")]).unwrap()).unwrap());
        assert!(is_regular(&Congruence::empty(4).unwrap()).unwrap());
        assert!(matches!(is_regular(&Congruence::full(3).unwrap()), Err(Error::NotEssential(_))));
    }

    #[test]
    fn transitivity_examples() {
        assert!(is_vertex_transitive(&Congruence::empty(4).unwrap()).unwrap());
        assert!(is_vertex_transitive(&Congruence::downset_closure(3, &[f("1-3:{2}")]).unwrap()).unwrap());
        assert!(!is_vertex_transitive(&tamari(4)).unwrap());
        assert!(!is_vertex_transitive_by_automorphisms(&tamari(4)).unwrap());
    }

    #[test]
    fn counting_formulas() {
        let reg: Vec<u128> = (2..=7).map(count_regular).collect();
        assert_eq!(reg, [1, 4, 25, 196, 1764, 17424]);
        let vt: Vec<u128> = (2..=7).map(count_vertex_transitive).collect();
        assert_eq!(vt, [1, 4, 8, 22, 52, 132]);
        let vtn: Vec<u128> = (2..=7).map(count_vt_noniso).collect();
        assert_eq!(vtn, [1, 3, 4, 8, 11, 19]);
        for n in 2..=12 {
            assert_eq!(count_vertex_transitive(n), vertex_transitive_recurrence(n - 1));
            assert_eq!(count_vt_noniso(n), count_vt_noniso_by_partitions(n));
        }
    }

    #[test]
    fn bipartite_examples() {
        assert_eq!(bipartite_probe(&Congruence::empty(3).unwrap()).unwrap(), (true, true));
        let c5 = Congruence::downset_closure(3, &[f("1-3:{2}")]).unwrap();
        assert_eq!(bipartite_probe(&c5).unwrap(), (false, false));
        let gens: Vec<Fence> = all_fences(4).into_iter().filter(Fence::is_essential).collect();
        let cube = Congruence::downset_closure(4, &gens).unwrap();
        assert_eq!(bipartite_probe(&cube).unwrap(), (true, true));
    }

    #[test]
    fn cycle_search() {
        let c5 = Congruence::downset_closure(3, &[f("1-3:{2}")]).unwrap();
        let g = build_quotient_graph(&compute_classes(&c5).unwrap()).unwrap();
        assert!(matches!(hamilton_cycle(&g, None, 1000), CycleSearch::Found(_)));
        let path = QuotientGraph::from_adjacency(vec![vec![1], vec![0, 2], vec![1]]);
        assert_eq!(hamilton_cycle(&path, None, 1000), CycleSearch::None);
    }

    #[test]
    fn chain_small() {
        let counts = chain_class_counts(4).unwrap();
        assert_eq!(counts.len() as u64, chain_lower_bound(4));
        assert_eq!(*counts.first().unwrap(), 24);
        assert_eq!(*counts.last().unwrap(), 8);
    }
}
