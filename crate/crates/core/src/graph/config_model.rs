use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_distr::{Binomial, Distribution};

use super::{Graph, LabeledGraph};
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, Rng};

/// Two equal groups sharing one degree distribution, with a planted
/// within/between split of the branching ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSeqParams {
    pub n: usize,
    /// `(k, a_k)`: fraction `a_k` of vertices have degree `k`.
    pub degree_dist: Vec<(usize, f64)>,
    pub tilde_c_in: f64,
    pub tilde_c_out: f64,
}

impl DegreeSeqParams {
    /// `<k^2>/<k> - 1` of the degree distribution.
    pub fn branching_ratio(&self) -> f64 {
        let (s1, s2) = self.degree_dist.iter().fold((0.0, 0.0), |(s1, s2), &(k, a)| {
            let k = k as f64;
            (s1 + k * a, s2 + k * (k - 1.0) * a)
        });
        s2 / s1
    }

    /// Eigenvalue carried by the planted bipartition, `(c~_in - c~_out) / 2`.
    pub fn planted_eigenvalue(&self) -> f64 {
        (self.tilde_c_in - self.tilde_c_out) / 2.0
    }

    fn validate(&self) -> Result<()> {
        let total: f64 = self.degree_dist.iter().map(|&(_, a)| a).sum();
        if (total - 1.0).abs() > 1e-9 || self.degree_dist.iter().any(|&(_, a)| a < 0.0) {
            return Err(Error::InvalidParams(
                "degree distribution must be non-negative and sum to 1".into(),
            ));
        }
        if self.tilde_c_in < 0.0 || self.tilde_c_out < 0.0 {
            return Err(Error::InvalidParams("branching targets must be >= 0".into()));
        }
        let c = self.branching_ratio();
        let target = (self.tilde_c_in + self.tilde_c_out) / 2.0;
        if !c.is_finite() || (target - c).abs() > 0.02 * c {
            return Err(Error::InvalidParams(format!(
                "(c~_in + c~_out)/2 = {target} is inconsistent with branching ratio {c}"
            )));
        }
        Ok(())
    }
}

/// Largest-remainder allocation of `size` vertices to the degree classes.
fn allocate_degrees(dist: &[(usize, f64)], size: usize) -> Vec<usize> {
    let mut counts: Vec<usize> = dist.iter().map(|&(_, a)| (a * size as f64) as usize).collect();
    let mut rest = size - counts.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..dist.len()).collect();
    let frac = |i: usize| dist[i].1 * size as f64 - (dist[i].1 * size as f64).floor();
    order.sort_by(|&i, &j| frac(j).total_cmp(&frac(i)).then(i.cmp(&j)));
    for &i in order.iter().cycle().take(dist.len().max(1) * 2) {
        if rest == 0 {
            break;
        }
        counts[i] += 1;
        rest -= 1;
    }
    let mut degrees = Vec::with_capacity(size);
    for (i, &c) in counts.iter().enumerate() {
        degrees.extend(std::iter::repeat_n(dist[i].0, c));
    }
    degrees
}

/// Half-edge matching with a planted bipartition.
///
/// Vertices are split into two random halves that receive the same degree
/// allocation. Each group's half-edges are divided into cross half-edges
/// (binomial with probability `c~_out / (c~_in + c~_out)`, equal counts in
/// both groups) and internal ones; cross half-edges are paired across groups
/// and internal ones within their group. Self-loops and multi-edges are then
/// removed by class-preserving double-edge swaps.
pub fn config_model_sample(params: &DegreeSeqParams, seed: u64) -> Result<LabeledGraph> {
    params.validate()?;
    let n = params.n;
    let mut rng = rng_from_seed(seed);

    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let half = n / 2;
    let groups = [&perm[..half], &perm[half..]];
    let mut labels = vec![0usize; n];
    for &v in groups[1] {
        labels[v] = 1;
    }

    let mut stubs: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for g in 0..2 {
        let degrees = allocate_degrees(&params.degree_dist, groups[g].len());
        for (&v, &d) in groups[g].iter().zip(&degrees) {
            stubs[g].extend(std::iter::repeat_n(v, d));
        }
        stubs[g].shuffle(&mut rng);
    }
    let (s0, s1) = (stubs[0].len(), stubs[1].len());
    if (s0 + s1) % 2 == 1 {
        return Err(Error::Matching(format!("odd half-edge total {}", s0 + s1)));
    }

    let total_rate = params.tilde_c_in + params.tilde_c_out;
    let p_out = if total_rate > 0.0 {
        params.tilde_c_out / total_rate
    } else {
        0.0
    };
    let cap = s0.min(s1);
    let mut cross = if p_out >= 1.0 {
        if s0 != s1 {
            return Err(Error::Matching("groups have unequal half-edge counts".into()));
        }
        s0
    } else {
        Binomial::new(cap as u64, p_out)
            .map_err(|e| Error::InvalidParams(e.to_string()))?
            .sample(&mut rng) as usize
    };
    if (s0 - cross) % 2 == 1 {
        if p_out == 0.0 {
            return Err(Error::Matching("odd half-edge count within a group".into()));
        }
        cross = if cross > 0 { cross - 1 } else { cross + 1 };
        if cross > cap {
            return Err(Error::Matching("cannot balance group parities".into()));
        }
    }

    let mut edges = Vec::with_capacity((s0 + s1) / 2);
    let mut class = Vec::with_capacity((s0 + s1) / 2);
    for i in 0..cross {
        edges.push((stubs[0][i], stubs[1][i]));
        class.push(2u8);
    }
    for g in 0..2 {
        for pair in stubs[g][cross..].chunks_exact(2) {
            edges.push((pair[0], pair[1]));
            class.push(g as u8);
        }
    }
    rewire(&mut edges, &class, &mut rng)?;
    LabeledGraph::new(Graph::from_simple_edges(n, &edges), labels, 2)
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn rewire(edges: &mut [(usize, usize)], class: &[u8], rng: &mut Rng) -> Result<()> {
    let mut counts: HashMap<(usize, usize), usize> = HashMap::with_capacity(edges.len());
    for &(u, v) in edges.iter() {
        *counts.entry(key(u, v)).or_default() += 1;
    }
    let mut members: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (i, &c) in class.iter().enumerate() {
        members[c as usize].push(i);
    }
    let is_bad = |e: (usize, usize), counts: &HashMap<_, usize>| e.0 == e.1 || counts[&key(e.0, e.1)] > 1;
    let mut bad: Vec<usize> = (0..edges.len()).filter(|&i| is_bad(edges[i], &counts)).collect();
    let budget = 1000 + 200 * bad.len();
    let mut attempts = 0;
    while let Some(&i) = bad.last() {
        if !is_bad(edges[i], &counts) {
            bad.pop();
            continue;
        }
        attempts += 1;
        if attempts > budget {
            return Err(Error::Matching(format!(
                "rewiring left {} defective edges after {budget} attempts",
                bad.len()
            )));
        }
        let pool = &members[class[i] as usize];
        if pool.len() < 2 {
            continue;
        }
        let j = pool[rng.random_range(0..pool.len())];
        if j == i {
            continue;
        }
        let ((a, b), (x, y)) = (edges[i], edges[j]);
        // Cross edges keep their group-0 endpoint first, so this swap
        // preserves the class; internal edges may also use the other pairing.
        let (e1, e2) = if class[i] != 2 && rng.random::<bool>() {
            ((a, x), (b, y))
        } else {
            ((a, y), (x, b))
        };
        if e1.0 == e1.1 || e2.0 == e2.1 || key(e1.0, e1.1) == key(e2.0, e2.1) {
            continue;
        }
        if counts.get(&key(e1.0, e1.1)).copied().unwrap_or(0) > 0
            || counts.get(&key(e2.0, e2.1)).copied().unwrap_or(0) > 0
        {
            continue;
        }
        for old in [(a, b), (x, y)] {
            *counts.get_mut(&key(old.0, old.1)).unwrap() -= 1;
        }
        for new in [e1, e2] {
            *counts.entry(key(new.0, new.1)).or_default() += 1;
        }
        edges[i] = e1;
        edges[j] = e2;
    }
    Ok(())
}
