//! Hard partitions of the node set into clusters.

use std::collections::HashMap;
use std::hash::Hash;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A partition of `0..n` into `k` nonempty clusters labelled `0..k` in
/// order of first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clustering {
    assignment: Vec<usize>,
    sizes: Vec<usize>,
}

impl Clustering {
    /// Canonicalize arbitrary labels, one per node.
    pub fn from_labels<L: Hash + Eq + Clone>(labels: &[L], n: usize) -> Result<Self> {
        if labels.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: labels.len(),
            });
        }
        let mut seen: HashMap<L, usize> = HashMap::new();
        let mut sizes = Vec::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                let c = *seen.entry(l.clone()).or_insert(next);
                if c == sizes.len() {
                    sizes.push(0);
                }
                sizes[c] += 1;
                c
            })
            .collect();
        Ok(Self { assignment, sizes })
    }

    /// Canonicalize an integer assignment (labels need not be dense).
    pub fn from_assignment(assignment: &[usize]) -> Self {
        Self::from_labels(assignment, assignment.len()).expect("lengths agree")
    }

    /// Every node in its own cluster: the Bernoulli design.
    pub fn singletons(n: usize) -> Self {
        Self {
            assignment: (0..n).collect(),
            sizes: vec![1; n],
        }
    }

    /// All nodes in one cluster.
    pub fn single(n: usize) -> Self {
        Self {
            assignment: vec![0; n],
            sizes: if n == 0 { vec![] } else { vec![n] },
        }
    }

    /// `(singletons, single cluster)`.
    pub fn trivial_partitions(n: usize) -> (Self, Self) {
        (Self::singletons(n), Self::single(n))
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn cluster_of(&self, i: usize) -> usize {
        self.assignment[i]
    }

    /// Node lists per cluster, each ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (i, &c) in self.assignment.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// `sum_k n_k^2`.
    pub fn sum_squared_sizes(&self) -> f64 {
        self.sizes.iter().map(|&s| (s * s) as f64).sum()
    }

    /// Write `node,cluster` rows using the graph's external labels.
    pub fn write_csv<W: Write>(&self, g: &Graph, out: W) -> Result<()> {
        if g.n() != self.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                found: self.n(),
            });
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(["node", "cluster"])?;
        for (i, &c) in self.assignment.iter().enumerate() {
            w.write_record([g.label(i), &c.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Read `node,cluster` rows; every graph node must appear exactly once.
    pub fn read_csv<R: Read>(input: R, g: &Graph) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let mut labels: Vec<Option<String>> = vec![None; g.n()];
        for rec in r.records() {
            let rec = rec?;
            if rec.len() != 2 {
                return Err(Error::MalformedLine {
                    line: rec.position().map_or(0, |p| p.line() as usize),
                    reason: format!("expected 2 fields, found {}", rec.len()),
                });
            }
            let node = &rec[0];
            let i = g.index_of(node).ok_or_else(|| Error::UnknownNode(node.to_string()))?;
            if labels[i].is_some() {
                return Err(Error::DuplicateNode(node.to_string()));
            }
            labels[i] = Some(rec[1].to_string());
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| Error::MissingNode(g.label(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_labels(&labels, g.n())
    }
}
