use rand::seq::SliceRandom;

use crate::graph::Graph;
use crate::partition::Clustering;
use crate::rng;

const MIN_GAIN: f64 = 1e-9;

/// Newman modularity at resolution 1. Zero for edgeless graphs.
pub fn modularity(g: &Graph, c: &Clustering) -> f64 {
    let two_m: f64 = (0..g.n()).flat_map(|i| g.neighbors(i).iter().map(|e| e.1)).sum();
    if two_m == 0.0 {
        return 0.0;
    }
    let mut inner = vec![0.0; c.k()];
    let mut tot = vec![0.0; c.k()];
    for i in 0..g.n() {
        let ci = c.cluster_of(i);
        for &(j, w) in g.neighbors(i) {
            tot[ci] += w;
            if c.cluster_of(j) == ci {
                inner[ci] += w;
            }
        }
    }
    inner.iter().zip(&tot).map(|(a, t)| a / two_m - (t / two_m).powi(2)).sum()
}

/// Weighted graph with self-loops, rebuilt at each aggregation level.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    /// Self-loop weight, counted twice in the degree.
    loops: Vec<f64>,
}

impl Level {
    fn degree(&self, i: usize) -> f64 {
        self.adj[i].iter().map(|e| e.1).sum::<f64>() + 2.0 * self.loops[i]
    }
}

/// Local moving phase. Returns community per node and whether anything moved.
fn sweep(level: &Level, two_m: f64, order: &[usize]) -> (Vec<usize>, bool) {
    let n = level.adj.len();
    let deg: Vec<f64> = (0..n).map(|i| level.degree(i)).collect();
    let mut comm: Vec<usize> = (0..n).collect();
    let mut tot = deg.clone();
    let mut link = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut moved_any = false;
    loop {
        let mut moved = false;
        for &i in order {
            let ci = comm[i];
            tot[ci] -= deg[i];
            for &(j, w) in &level.adj[i] {
                let cj = comm[j];
                if link[cj] == 0.0 {
                    touched.push(cj);
                }
                link[cj] += w;
            }
            let gain = |c: usize, link: &[f64]| link[c] - tot[c] * deg[i] / two_m;
            let stay = gain(ci, &link);
            let mut best = ci;
            let mut best_gain = stay;
            for &c in &touched {
                let g = gain(c, &link);
                if g > best_gain + MIN_GAIN {
                    best = c;
                    best_gain = g;
                }
            }
            for &c in &touched {
                link[c] = 0.0;
            }
            touched.clear();
            tot[best] += deg[i];
            if best != ci {
                comm[i] = best;
                moved = true;
                moved_any = true;
            }
        }
        if !moved {
            break;
        }
    }
    (comm, moved_any)
}

fn aggregate(level: &Level, comm: &[usize], k: usize) -> Level {
    let mut loops = vec![0.0; k];
    let mut maps: Vec<std::collections::BTreeMap<usize, f64>> = vec![Default::default(); k];
    for (i, edges) in level.adj.iter().enumerate() {
        let ci = comm[i];
        loops[ci] += level.loops[i];
        for &(j, w) in edges {
            let cj = comm[j];
            if ci == cj {
                // each internal edge is seen from both ends
                loops[ci] += w / 2.0;
            } else {
                *maps[ci].entry(cj).or_insert(0.0) += w;
            }
        }
    }
    Level {
        adj: maps.into_iter().map(|m| m.into_iter().collect()).collect(),
        loops,
    }
}

/// Multilevel greedy modularity maximization. The node visit order at
/// every level is shuffled by `seed`.
pub fn louvain(g: &Graph, seed: u64) -> Clustering {
    let n = g.n();
    let mut level = Level {
        adj: (0..n).map(|i| g.neighbors(i).to_vec()).collect(),
        loops: vec![0.0; n],
    };
    let two_m: f64 = (0..n).map(|i| level.degree(i)).sum();
    let mut membership: Vec<usize> = (0..n).collect();
    if two_m == 0.0 {
        return Clustering::singletons(n);
    }
    let mut rng = rng::seeded(seed);
    loop {
        let mut order: Vec<usize> = (0..level.adj.len()).collect();
        order.shuffle(&mut rng);
        let (comm, moved) = sweep(&level, two_m, &order);
        if !moved {
            break;
        }
        let dense = Clustering::from_assignment(&comm);
        for m in membership.iter_mut() {
            *m = dense.cluster_of(*m);
        }
        level = aggregate(&level, dense.assignment(), dense.k());
    }
    Clustering::from_assignment(&membership)
}
