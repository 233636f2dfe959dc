use nalgebra::DMatrix;
use rand::Rng;

use super::SolverConfig;
use crate::error::{Error, Result};
use crate::rng;

/// Row-major copy of an `n x d` matrix.
struct Points {
    data: Vec<f64>,
    n: usize,
    d: usize,
}

impl Points {
    fn new(m: &DMatrix<f64>) -> Self {
        let (n, d) = m.shape();
        let mut data = Vec::with_capacity(n * d);
        for i in 0..n {
            data.extend(m.row(i).iter());
        }
        Self { data, n, d }
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn plus_plus(p: &Points, k: usize, rng: &mut rng::Rng) -> Vec<f64> {
    let mut centers = Vec::with_capacity(k * p.d);
    let first = rng.random_range(0..p.n);
    centers.extend_from_slice(p.row(first));
    let mut chosen = vec![false; p.n];
    chosen[first] = true;
    let mut best: Vec<f64> = (0..p.n).map(|i| dist2(p.row(i), p.row(first))).collect();
    for _ in 1..k {
        let total: f64 = best.iter().sum();
        let pick = if total > 0.0 {
            let mut r = rng.random_range(0.0..total);
            let mut pick = p.n - 1;
            for (i, &b) in best.iter().enumerate() {
                if r < b {
                    pick = i;
                    break;
                }
                r -= b;
            }
            pick
        } else {
            let rest: Vec<usize> = (0..p.n).filter(|&i| !chosen[i]).collect();
            rest[rng.random_range(0..rest.len())]
        };
        chosen[pick] = true;
        centers.extend_from_slice(p.row(pick));
        for (i, b) in best.iter_mut().enumerate() {
            *b = b.min(dist2(p.row(i), p.row(pick)));
        }
    }
    centers
}

fn update_centers(p: &Points, labels: &[usize], k: usize, centers: &mut [f64]) -> Vec<usize> {
    let mut counts = vec![0usize; k];
    centers.iter_mut().for_each(|c| *c = 0.0);
    for (i, &l) in labels.iter().enumerate() {
        counts[l] += 1;
        for (c, x) in centers[l * p.d..(l + 1) * p.d].iter_mut().zip(p.row(i)) {
            *c += x;
        }
    }
    for l in 0..k {
        if counts[l] > 0 {
            let inv = 1.0 / counts[l] as f64;
            centers[l * p.d..(l + 1) * p.d].iter_mut().for_each(|c| *c *= inv);
        }
    }
    counts
}

fn cost(p: &Points, labels: &[usize], centers: &[f64]) -> f64 {
    labels
        .iter()
        .enumerate()
        .map(|(i, &l)| dist2(p.row(i), &centers[l * p.d..(l + 1) * p.d]))
        .sum()
}

/// Move the point farthest from the largest cluster's centroid into each
/// empty cluster.
fn repair_empty(p: &Points, labels: &mut [usize], k: usize, centers: &mut [f64]) {
    loop {
        let counts = update_centers(p, labels, k, centers);
        let Some(empty) = counts.iter().position(|&c| c == 0) else {
            return;
        };
        let big = (0..k).max_by_key(|&l| (counts[l], std::cmp::Reverse(l))).unwrap();
        if counts[big] < 2 {
            return;
        }
        let c = &centers[big * p.d..(big + 1) * p.d];
        let far = (0..p.n)
            .filter(|&i| labels[i] == big)
            .max_by(|&a, &b| dist2(p.row(a), c).total_cmp(&dist2(p.row(b), c)).then(b.cmp(&a)))
            .unwrap();
        labels[far] = empty;
    }
}

fn lloyd(p: &Points, k: usize, max_iter: usize, rng: &mut rng::Rng) -> (Vec<usize>, f64) {
    let mut centers = plus_plus(p, k, rng);
    let mut labels = vec![usize::MAX; p.n];
    for _ in 0..max_iter {
        let mut changed = false;
        for i in 0..p.n {
            let x = p.row(i);
            let mut best = 0;
            let mut bd = f64::INFINITY;
            for l in 0..k {
                let d = dist2(x, &centers[l * p.d..(l + 1) * p.d]);
                if d < bd {
                    bd = d;
                    best = l;
                }
            }
            if labels[i] != best {
                labels[i] = best;
                changed = true;
            }
        }
        repair_empty(p, &mut labels, k, &mut centers);
        if !changed {
            break;
        }
    }
    let c = cost(p, &labels, &centers);
    (labels, c)
}

fn check(points: &DMatrix<f64>, k: usize) -> Result<()> {
    let n = points.nrows();
    if k > n {
        return Err(Error::KTooLarge { k, n });
    }
    if k == 0 {
        return Err(Error::InvalidParameter("K must be at least 1".into()));
    }
    Ok(())
}

/// Lloyd's algorithm from `cfg.kmeans_restarts` k-means++ starts; returns
/// the labels of the lowest within-cluster sum of squares.
pub fn kmeans(points: &DMatrix<f64>, k: usize, cfg: &SolverConfig) -> Result<Vec<usize>> {
    check(points, k)?;
    let p = Points::new(points);
    let mut best: Option<(Vec<usize>, f64)> = None;
    for r in 0..cfg.kmeans_restarts.max(1) {
        let mut g = rng::stream(cfg.seed, r as u64);
        let (labels, c) = lloyd(&p, k, cfg.kmeans_max_iter, &mut g);
        if best.as_ref().is_none_or(|(_, b)| c < *b) {
            best = Some((labels, c));
        }
    }
    Ok(best.unwrap().0)
}

/// Greedy capacity-limited assignment: pairs are taken by increasing
/// distance; `n mod k` clusters may hold `ceil(n/k)` points, the rest
/// `floor(n/k)`.
fn capped_assign(p: &Points, k: usize, centers: &[f64]) -> Vec<usize> {
    let floor = p.n / k;
    let mut extra = p.n % k;
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(p.n * k);
    for i in 0..p.n {
        for l in 0..k {
            pairs.push((dist2(p.row(i), &centers[l * p.d..(l + 1) * p.d]), i, l));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut labels = vec![usize::MAX; p.n];
    let mut counts = vec![0usize; k];
    let mut left = p.n;
    for (_, i, l) in pairs {
        if labels[i] != usize::MAX {
            continue;
        }
        let room = counts[l] < floor || (counts[l] == floor && extra > 0);
        if !room {
            continue;
        }
        if counts[l] == floor {
            extra -= 1;
        }
        counts[l] += 1;
        labels[i] = l;
        left -= 1;
        if left == 0 {
            break;
        }
    }
    labels
}

/// k-means with cluster sizes differing by at most one.
pub fn constrained_kmeans(points: &DMatrix<f64>, k: usize, cfg: &SolverConfig) -> Result<Vec<usize>> {
    check(points, k)?;
    let p = Points::new(points);
    let mut best: Option<(Vec<usize>, f64)> = None;
    for r in 0..cfg.kmeans_restarts.max(1) {
        let mut g = rng::stream(cfg.seed, r as u64);
        let mut centers = plus_plus(&p, k, &mut g);
        let mut labels = capped_assign(&p, k, &centers);
        for _ in 0..cfg.kmeans_max_iter {
            update_centers(&p, &labels, k, &mut centers);
            let next = capped_assign(&p, k, &centers);
            if next == labels {
                break;
            }
            labels = next;
        }
        update_centers(&p, &labels, k, &mut centers);
        let c = cost(&p, &labels, &centers);
        if best.as_ref().is_none_or(|(_, b)| c < *b) {
            best = Some((labels, c));
        }
    }
    Ok(best.unwrap().0)
}
