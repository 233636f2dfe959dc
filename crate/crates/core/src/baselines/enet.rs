use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Clustering;
use crate::rng;

/// Greedy ε-net clustering with a seeded random scan order.
pub fn epsilon_net(g: &Graph, eps: usize, seed: u64) -> Result<Clustering> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(&mut rng::seeded(seed));
    epsilon_net_with_order(g, eps, &order)
}

/// Scan `order`, keeping a node as a seed when no earlier seed lies within
/// `eps - 1` hops. Every node then joins its nearest seed; ties go to the
/// seed with the smallest node index.
pub fn epsilon_net_with_order(g: &Graph, eps: usize, order: &[usize]) -> Result<Clustering> {
    g.require_binary()?;
    let n = g.n();
    if eps == 0 {
        return Err(Error::InvalidParameter("eps must be at least 1".into()));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidParameter("order must be a permutation of the nodes".into()));
        }
    }
    if order.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: order.len(),
        });
    }

    let mut covered = vec![false; n];
    let mut seeds = Vec::new();
    for &v in order {
        if covered[v] {
            continue;
        }
        seeds.push(v);
        for (u, d) in g.hop_distances(v, Some(eps - 1)).into_iter().enumerate() {
            if d.is_some() {
                covered[u] = true;
            }
        }
    }

    let mut owner = vec![usize::MAX; n];
    let mut frontier = seeds.clone();
    for &s in &seeds {
        owner[s] = s;
    }
    while !frontier.is_empty() {
        let mut claim: Vec<(usize, usize)> = Vec::new();
        for &x in &frontier {
            for u in g.neighbor_ids(x) {
                if owner[u] == usize::MAX {
                    claim.push((u, owner[x]));
                }
            }
        }
        claim.sort_unstable();
        claim.dedup_by_key(|c| c.0);
        frontier = claim.iter().map(|c| c.0).collect();
        for (u, s) in claim {
            owner[u] = s;
        }
    }
    Ok(Clustering::from_assignment(&owner))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_scan() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        let c = epsilon_net_with_order(&g, 3, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c, Clustering::from_labels(&[0, 0, 1, 1], 4).unwrap());
    }

    #[test]
    fn unit_radius_gives_singletons() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(epsilon_net(&g, 1, 9).unwrap().k(), 4);
    }

    #[test]
    fn components_never_merge() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (3, 4), (5, 6)]);
        let comp = g.components();
        for seed in 0..20 {
            let c = epsilon_net(&g, 5, seed).unwrap();
            for i in 0..7 {
                for j in 0..7 {
                    if c.cluster_of(i) == c.cluster_of(j) {
                        assert_eq!(comp[i], comp[j]);
                    }
                }
            }
            assert_eq!(c.k(), 3);
        }
    }

    #[test]
    fn tie_goes_to_smaller_seed() {
        // 0 - 1 - 2 with seeds 0 and 2 at distance 2: node 1 is equidistant.
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let c = epsilon_net_with_order(&g, 2, &[2, 0, 1]).unwrap();
        assert_eq!(c.cluster_of(1), c.cluster_of(0));
    }
}
