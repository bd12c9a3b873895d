//! Quotient graphs: the cover graph of `S_n` with all bars contracted.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::classes::{for_each_up_cover, ClassPartition};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientEdge {
    pub u: usize,
    pub v: usize,
    /// Smallest transposed value pair `(a, b)` among the cover edges joining the two classes.
    pub label: (u8, u8),
}

/// Simple undirected graph on class ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<QuotientEdge>,
    labels: Vec<String>,
}

pub fn build_quotient_graph(part: &ClassPartition) -> Result<QuotientGraph> {
    let n = part.n();
    let c = part.congruence();
    let mut found: BTreeMap<(usize, usize), (u8, u8)> = BTreeMap::new();
    for_each_up_cover(n, |r, p, pos, up| {
        if c.is_bar_at(p, pos) {
            return;
        }
        let (x, y) = (part.class_of_rank(r), part.class_of_rank(up));
        let key = (x.min(y), x.max(y));
        let pair = (p.at(pos), p.at(pos + 1));
        found.entry(key).and_modify(|l| *l = (*l).min(pair)).or_insert(pair);
    })?;
    let labels = part.classes().iter().map(|x| x.representative.to_string()).collect();
    Ok(QuotientGraph::from_edges(n, part.num_classes(), found.into_iter().map(|((u, v), label)| QuotientEdge { u, v, label }), labels))
}

impl QuotientGraph {
    fn from_edges(n: usize, nodes: usize, edges: impl Iterator<Item = QuotientEdge>, labels: Vec<String>) -> QuotientGraph {
        let edges: Vec<QuotientEdge> = edges.collect();
        let mut adjacency = vec![Vec::new(); nodes];
        for e in &edges {
            adjacency[e.u].push(e.v);
            adjacency[e.v].push(e.u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        QuotientGraph { n, adjacency, edges, labels }
    }

    /// An unlabelled graph given by adjacency lists (for products and tests).
    pub fn from_adjacency(adjacency: Vec<Vec<usize>>) -> QuotientGraph {
        let nodes = adjacency.len();
        let mut edges = Vec::new();
        for (u, list) in adjacency.iter().enumerate() {
            for &v in list {
                if u < v {
                    edges.push(QuotientEdge { u, v, label: (0, 0) });
                }
            }
        }
        let labels = (0..nodes).map(|i| i.to_string()).collect();
        QuotientGraph::from_edges(0, nodes, edges.into_iter(), labels)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[QuotientEdge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `degree -> number of nodes`.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for list in &self.adjacency {
            *h.entry(list.len()).or_insert(0) += 1;
        }
        h
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count() == 0 {
            return true;
        }
        let mut seen = vec![false; self.node_count()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !std::mem::replace(&mut seen[v], true) {
                    stack.push(v);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// 2-colouring by breadth-first search.
    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![u8::MAX; self.node_count()];
        for s in 0..self.node_count() {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        queue.push_back(v);
                    } else if colour[v] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Cartesian product; node `(i, j)` becomes `i * other.node_count() + j`.
    pub fn cartesian_product(&self, other: &QuotientGraph) -> QuotientGraph {
        let m = other.node_count();
        let mut adjacency = vec![Vec::new(); self.node_count() * m];
        for i in 0..self.node_count() {
            for j in 0..m {
                let list = &mut adjacency[i * m + j];
                list.extend(self.adjacency[i].iter().map(|&k| k * m + j));
                list.extend(other.adjacency[j].iter().map(|&k| i * m + k));
            }
        }
        QuotientGraph::from_adjacency(adjacency)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph quotient {\n");
        for (id, label) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  {id} [label=\"{label}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  {} -- {} [label=\"{},{}\"];", e.u, e.v, e.label.0, e.label.1);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .labels
            .iter()
            .enumerate()
            .map(|(id, label)| serde_json::json!({"id": id, "label": label, "neighbors": self.adjacency[id]}))
            .collect();
        let edges: Vec<serde_json::Value> =
            self.edges.iter().map(|e| serde_json::json!({"u": e.u, "v": e.v, "label": [e.label.0, e.label.1]})).collect();
        serde_json::json!({"n": self.n, "nodes": nodes, "edges": edges})
    }
}
