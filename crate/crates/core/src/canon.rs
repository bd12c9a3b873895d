//! Canonical forms of small graphs by colour refinement and
//! individualization, for isomorphism bucketing and automorphism orbits.

use std::cmp::Ordering;

/// An isomorphism-invariant encoding: the edge list after canonical relabelling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub nodes: usize,
    pub edges: Vec<(u32, u32)>,
}

/// Refines `colours` to the coarsest equitable partition finer than it.
/// Colours are renumbered `0..k` by sorted signature, so the result depends
/// only on the isomorphism type of the coloured graph.
pub fn refine(adj: &[Vec<usize>], colours: &mut Vec<u32>) {
    let n = adj.len();
    let mut classes = count_distinct(colours);
    let mut sig: Vec<(u32, Vec<u32>, usize)> = Vec::with_capacity(n);
    loop {
        sig.clear();
        for v in 0..n {
            let mut around: Vec<u32> = adj[v].iter().map(|&w| colours[w]).collect();
            around.sort_unstable();
            sig.push((colours[v], around, v));
        }
        sig.sort_unstable();
        let mut next = vec![0u32; n];
        let mut c = 0u32;
        for i in 0..n {
            if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                c += 1;
            }
            next[sig[i].2] = c;
        }
        *colours = next;
        let now = if n == 0 { 0 } else { c as usize + 1 };
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_distinct(colours: &[u32]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn certificate(adj: &[Vec<usize>], label: &[u32]) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for (u, list) in adj.iter().enumerate() {
        for &v in list {
            if u < v {
                let (x, y) = (label[u], label[v]);
                edges.push((x.min(y), x.max(y)));
            }
        }
    }
    edges.sort_unstable();
    edges
}

fn individualize(colours: &[u32], v: usize) -> Vec<u32> {
    colours.iter().enumerate().map(|(w, &c)| 2 * c + u32::from(w != v)).collect()
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    best: Option<(Vec<(u32, u32)>, Vec<u32>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf(&mut self, label: Vec<u32>) {
        let cert = certificate(self.adj, &label);
        match &self.best {
            None => self.best = Some((cert, label)),
            Some((best, best_label)) => match cert.cmp(best) {
                Ordering::Less => self.best = Some((cert, label)),
                Ordering::Equal => {
                    // both labellings give the same graph: best_label⁻¹ ∘ label is an automorphism
                    let mut inverse = vec![0usize; label.len()];
                    for (v, &l) in best_label.iter().enumerate() {
                        inverse[l as usize] = v;
                    }
                    let sigma: Vec<usize> = label.iter().map(|&l| inverse[l as usize]).collect();
                    if sigma.iter().enumerate().any(|(v, &w)| v != w) {
                        self.automorphisms.push(sigma);
                    }
                }
                Ordering::Greater => {}
            },
        }
    }

    fn explore(&mut self, colours: Vec<u32>, root: bool) {
        let n = colours.len();
        let mut counts = vec![0usize; n];
        for &c in &colours {
            counts[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
            self.leaf(colours);
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colours[v] as usize == target).collect();
        let mut done: Vec<usize> = Vec::new();
        for &v in &cell {
            // at the root, skip vertices already known to share an orbit with an explored one
            if root && !done.is_empty() && orbit_of(&self.automorphisms, n, v).iter().any(|w| done.contains(w)) {
                continue;
            }
            let mut next = individualize(&colours, v);
            refine(self.adj, &mut next);
            self.explore(next, false);
            done.push(v);
        }
    }
}

fn orbit_of(generators: &[Vec<usize>], n: usize, v: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut stack = vec![v];
    let mut out = vec![v];
    while let Some(u) = stack.pop() {
        for g in generators {
            let w = g[u];
            if !std::mem::replace(&mut seen[w], true) {
                stack.push(w);
                out.push(w);
            }
        }
    }
    out
}

/// Canonical form and canonical labelling (vertex -> position) of a graph
/// with an initial vertex colouring, plus automorphisms found on the way.
pub fn canonical_labeling(adj: &[Vec<usize>], initial: &[u32]) -> (CanonicalForm, Vec<u32>, Vec<Vec<usize>>) {
    let mut colours = initial.to_vec();
    refine(adj, &mut colours);
    let mut search = Search { adj, best: None, automorphisms: Vec::new() };
    search.explore(colours, true);
    let (edges, label) = search.best.unwrap_or((Vec::new(), Vec::new()));
    (CanonicalForm { nodes: adj.len(), edges }, label, search.automorphisms)
}

pub fn canonical_form(adj: &[Vec<usize>]) -> CanonicalForm {
    canonical_labeling(adj, &vec![0; adj.len()]).0
}

/// Whether the automorphism group acts transitively on the vertices.
pub fn is_vertex_transitive(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    if n <= 1 {
        return true;
    }
    let mut colours = vec![0u32; n];
    refine(adj, &mut colours);
    if colours.iter().any(|&c| c != 0) {
        return false;
    }
    let pinned = |v: usize| -> Vec<u32> { (0..n).map(|w| u32::from(w != v)).collect() };
    let (base_form, base_label, mut generators) = canonical_labeling(adj, &pinned(0));
    let mut inverse = vec![0usize; n];
    for (v, &l) in base_label.iter().enumerate() {
        inverse[l as usize] = v;
    }
    for v in 1..n {
        if orbit_of(&generators, n, 0).contains(&v) {
            continue;
        }
        let (form, label, found) = canonical_labeling(adj, &pinned(v));
        if form != base_form {
            return false;
        }
        generators.extend(found);
        generators.push(label.iter().map(|&l| inverse[l as usize]).collect());
    }
    true
}
