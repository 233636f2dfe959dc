//! Undirected networks on which designs are evaluated.
//!
//! A [`Graph`] stores symmetric adjacency lists with strictly positive
//! weights, no self-loops, and a bijection between external node labels and
//! internal indices `0..n`. Binary graphs carry unit weights; most design
//! computations require them (see [`Graph::require_binary`]).

mod generate;
mod io;
mod transform;

pub use generate::{
    attach_preferentially, barabasi_albert, erdos_renyi, geometric, geometric_radius,
    BarabasiParams,
};
pub use io::{load_edge_list, read_edge_list_file, write_edge_list, Delimiter, EdgeListFormat};
pub use transform::{power_graph, threshold, weight_percentile};

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adj: Vec<Vec<(usize, f64)>>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    coords: Option<Vec<[f64; 2]>>,
}

impl Graph {
    /// Graph on `n` nodes labelled `"0".."n-1"` from `(u, v, w)` triples.
    ///
    /// Duplicate pairs keep the larger weight; self-loops and non-positive
    /// weights are dropped.
    pub fn from_weighted_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.add_node(&i.to_string());
        }
        for (u, v, w) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            b.add_edge_indices(u, v, w);
        }
        b.build()
    }

    /// Binary graph on `n` nodes from unordered pairs.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self::from_weighted_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Each undirected edge once, as `(u, v, w)` with `u < v`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, row)| {
            row.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    /// Neighbors of `i` with weights, sorted by neighbor index.
    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adj[i]
    }

    pub fn neighbor_ids(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().map(|&(j, _)| j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.adj[u]
            .binary_search_by_key(&v, |&(j, _)| j)
            .ok()
            .map(|p| self.adj[u][p].1)
    }

    pub fn is_binary(&self) -> bool {
        self.adj.iter().flatten().all(|&(_, w)| w == 1.0)
    }

    pub fn require_binary(&self) -> Result<()> {
        if self.is_binary() {
            Ok(())
        } else {
            Err(Error::WeightedGraph)
        }
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Latent positions, present for graphs built by [`geometric`].
    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }

    pub(crate) fn with_coords(mut self, coords: Vec<[f64; 2]>) -> Self {
        assert_eq!(coords.len(), self.n());
        self.coords = Some(coords);
        self
    }

    /// Copy with the same nodes and labels but a new edge set.
    pub(crate) fn with_edges(&self, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut b = GraphBuilder::new();
        for l in &self.labels {
            b.add_node(l);
        }
        for (u, v, w) in edges {
            b.add_edge_indices(u, v, w);
        }
        let mut g = b.build();
        g.coords = self.coords.clone();
        g
    }

    /// Breadth-first hop distances from `source`; `None` for unreachable
    /// nodes and nodes beyond `max_hops`.
    pub fn hop_distances(&self, source: usize, max_hops: Option<usize>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if max_hops.is_some_and(|m| du >= m) {
                continue;
            }
            for v in self.neighbor_ids(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Connected-component id per node, numbered by smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut next = 0;
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbor_ids(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

/// Incremental constructor used by the loaders and generators.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), f64>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index for `label`, registering it on first sight.
    pub fn add_node(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }

    pub fn add_edge(&mut self, u: &str, v: &str, w: f64) {
        let u = self.add_node(u);
        let v = self.add_node(v);
        self.add_edge_indices(u, v, w);
    }

    pub fn add_edge_indices(&mut self, u: usize, v: usize, w: f64) {
        if u == v || !(w > 0.0) {
            return;
        }
        let key = (u.min(v), u.max(v));
        let slot = self.edges.entry(key).or_insert(w);
        if w > *slot {
            *slot = w;
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn build(self) -> Graph {
        let n = self.labels.len();
        let mut adj = vec![Vec::new(); n];
        for (&(u, v), &w) in &self.edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for row in &mut adj {
            row.sort_by_key(|&(j, _)| j);
        }
        Graph {
            adj,
            labels: self.labels,
            index: self.index,
            coords: None,
        }
    }
}
