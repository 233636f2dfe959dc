//! Synthetic network generators used in the simulation studies.

use rand::Rng;

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};
use crate::rng;

/// Connection radius `sqrt(4 / (2.75 n))` of the geometric model.
pub fn geometric_radius(n: usize) -> f64 {
    (4.0 / (2.75 * n as f64)).sqrt()
}

/// Random geometric graph on `[-1, 1]^2`: nodes `i, j` are linked when
/// `|x_i1 - x_j1| / 2 + |x_i2 - x_j2| / 2 <= r_n`.
///
/// The sampled positions are kept on the graph (see [`Graph::coords`]).
pub fn geometric(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("geometric graph needs n >= 1".into()));
    }
    let mut rng = rng::seeded(seed);
    let coords: Vec<[f64; 2]> = (0..n)
        .map(|_| [rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)])
        .collect();
    let r = geometric_radius(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = (coords[i][0] - coords[j][0]).abs() / 2.0 + (coords[i][1] - coords[j][1]).abs() / 2.0;
            if d <= r {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).with_coords(coords))
}

/// Each unordered pair linked independently with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("Erdos-Renyi graph needs n >= 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_edges(n, edges))
}

#[derive(Debug, Clone)]
pub struct BarabasiParams {
    pub n: usize,
    /// Size of the Erdos-Renyi seed block; `None` means `n / 5`.
    pub seed_block: Option<usize>,
    /// Edge probability inside the seed block; `None` means `10 / n`.
    pub seed_p: Option<f64>,
    /// Edges drawn for each arriving node.
    pub edges_per_node: usize,
}

impl BarabasiParams {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            seed_block: None,
            seed_p: None,
            edges_per_node: 1,
        }
    }
}

/// Preferential-attachment graph grown from an Erdos-Renyi seed block.
///
/// Nodes `0..m` form the seed block. Each later node links to
/// `edges_per_node` distinct earlier nodes, each draw choosing node `i`
/// with probability `deg(i) / sum(deg)`. While every earlier node has
/// degree zero the draw is uniform.
pub fn barabasi_albert(params: &BarabasiParams, seed: u64) -> Result<Graph> {
    let n = params.n;
    if n < 5 {
        return Err(Error::InvalidParameter("Barabasi-Albert graph needs n >= 5".into()));
    }
    let m = params.seed_block.unwrap_or(n / 5);
    if m == 0 || m > n {
        return Err(Error::InvalidParameter(format!("seed block {m} outside 1..={n}")));
    }
    let p = params.seed_p.unwrap_or(10.0 / n as f64).min(1.0);
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("seed-block probability {p} outside [0, 1]")));
    }
    if params.edges_per_node == 0 {
        return Err(Error::InvalidParameter("edges_per_node must be positive".into()));
    }

    let mut rng = rng::seeded(seed);
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.add_node(&i.to_string());
    }
    let mut degree = vec![0usize; n];
    for i in 0..m {
        for j in i + 1..m {
            if rng.random_bool(p) {
                b.add_edge_indices(i, j, 1.0);
                degree[i] += 1;
                degree[j] += 1;
            }
        }
    }
    for t in m..n {
        let targets = pick_by_degree(&degree[..t], params.edges_per_node.min(t), &mut rng);
        for v in targets {
            b.add_edge_indices(t, v, 1.0);
            degree[t] += 1;
            degree[v] += 1;
        }
    }
    Ok(b.build())
}

/// Target drawn for one arriving node on an existing graph, with
/// probability proportional to current degree.
pub fn attach_preferentially<R: Rng>(g: &Graph, rng: &mut R) -> usize {
    let degree: Vec<usize> = (0..g.n()).map(|i| g.degree(i)).collect();
    pick_by_degree(&degree, 1, rng)[0]
}

fn pick_by_degree<R: Rng>(degree: &[usize], count: usize, rng: &mut R) -> Vec<usize> {
    let mut taken = vec![false; degree.len()];
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let total: usize = degree
            .iter()
            .zip(&taken)
            .filter(|(_, &t)| !t)
            .map(|(&d, _)| d)
            .sum();
        let pick = if total == 0 {
            let free: Vec<usize> = (0..degree.len()).filter(|&i| !taken[i]).collect();
            free[rng.random_range(0..free.len())]
        } else {
            let mut r = rng.random_range(0..total);
            let mut chosen = 0;
            for (i, (&d, &t)) in degree.iter().zip(&taken).enumerate() {
                if t {
                    continue;
                }
                if r < d {
                    chosen = i;
                    break;
                }
                r -= d;
            }
            chosen
        };
        taken[pick] = true;
        out.push(pick);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_radius_for_100() {
        assert!((geometric_radius(100) - (4.0f64 / 275.0).sqrt()).abs() < 1e-15);
        assert!((geometric_radius(100) - 0.12060).abs() < 1e-5);
    }

    #[test]
    fn geometric_is_deterministic_and_respects_radius() {
        let a = geometric(100, 7).unwrap();
        let b = geometric(100, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n(), 100);
        let c = a.coords().unwrap();
        let r = geometric_radius(100);
        for i in 0..100 {
            for j in i + 1..100 {
                let d = (c[i][0] - c[j][0]).abs() / 2.0 + (c[i][1] - c[j][1]).abs() / 2.0;
                assert_eq!(a.has_edge(i, j), d <= r);
            }
        }
    }

    #[test]
    fn two_far_points_are_unlinked() {
        // Find a seed whose two sampled points are farther apart than r_2.
        let seed = (0..100)
            .find(|&s| {
                let g = geometric(2, s).unwrap();
                let c = g.coords().unwrap();
                (c[0][0] - c[1][0]).abs() / 2.0 + (c[0][1] - c[1][1]).abs() / 2.0 > geometric_radius(2)
            })
            .unwrap();
        assert_eq!(geometric(2, seed).unwrap().edge_count(), 0);
    }

    #[test]
    fn erdos_renyi_extremes() {
        assert_eq!(erdos_renyi(30, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(30, 1.0, 1).unwrap().edge_count(), 30 * 29 / 2);
        assert_eq!(erdos_renyi(30, 0.3, 5).unwrap(), erdos_renyi(30, 0.3, 5).unwrap());
        assert!(erdos_renyi(3, 1.5, 0).is_err());
    }

    #[test]
    fn barabasi_shape() {
        let g = barabasi_albert(&BarabasiParams::new(100), 3).unwrap();
        assert_eq!(g.n(), 100);
        assert_eq!(g, barabasi_albert(&BarabasiParams::new(100), 3).unwrap());
        // every arriving node brings exactly one edge
        for t in 20..100 {
            let back = g.neighbor_ids(t).filter(|&v| v < t).count();
            assert_eq!(back, 1, "node {t}");
        }
        assert!(barabasi_albert(&BarabasiParams::new(4), 0).is_err());
    }
}
