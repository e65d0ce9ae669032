use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_distr::weighted::WeightedIndex;
use rand_distr::{Binomial, Distribution};

use super::{Graph, LabeledGraph};
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// Sparse stochastic block model: `P[u ~ v] = c[g_u][g_v] / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SbmParams {
    pub n: usize,
    pub group_fracs: Vec<f64>,
    /// Symmetric `q x q` affinity matrix, row-major.
    pub affinity: Vec<Vec<f64>>,
}

impl SbmParams {
    pub fn new(n: usize, group_fracs: Vec<f64>, affinity: Vec<Vec<f64>>) -> Result<Self> {
        let q = group_fracs.len();
        if q == 0 {
            return Err(Error::InvalidParams("q must be at least 1".into()));
        }
        if group_fracs.iter().any(|&f| !(f >= 0.0)) {
            return Err(Error::InvalidParams("group fractions must be >= 0".into()));
        }
        let total: f64 = group_fracs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "group fractions sum to {total}, not 1"
            )));
        }
        if affinity.len() != q || affinity.iter().any(|row| row.len() != q) {
            return Err(Error::InvalidParams(format!("affinity must be {q} x {q}")));
        }
        for a in 0..q {
            for b in 0..q {
                let c = affinity[a][b];
                if !(c >= 0.0) || !c.is_finite() {
                    return Err(Error::InvalidParams(format!("affinity[{a}][{b}] = {c}")));
                }
                if c != affinity[b][a] {
                    return Err(Error::InvalidParams("affinity must be symmetric".into()));
                }
            }
        }
        Ok(SbmParams {
            n,
            group_fracs,
            affinity,
        })
    }

    /// `q` equal groups with `c_in` on the diagonal and `c_out` elsewhere.
    pub fn planted(n: usize, q: usize, c_in: f64, c_out: f64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParams("q must be at least 1".into()));
        }
        let affinity = (0..q)
            .map(|a| (0..q).map(|b| if a == b { c_in } else { c_out }).collect())
            .collect();
        Self::new(n, vec![1.0 / q as f64; q], affinity)
    }

    /// Equal groups at mean degree `c` with `c_in - c_out = diff`.
    pub fn planted_with_difference(n: usize, q: usize, c: f64, diff: f64) -> Result<Self> {
        let c_out = c - diff / q as f64;
        Self::planted(n, q, c_out + diff, c_out)
    }

    /// Equal groups at mean degree `c` with `c_out / c_in = ratio`.
    pub fn planted_with_ratio(n: usize, q: usize, c: f64, ratio: f64) -> Result<Self> {
        let c_in = q as f64 * c / (1.0 + (q as f64 - 1.0) * ratio);
        Self::planted(n, q, c_in, ratio * c_in)
    }

    pub fn q(&self) -> usize {
        self.group_fracs.len()
    }

    /// `(c_in, c_out)` when the affinity has exactly that two-value form.
    pub fn two_value(&self) -> Option<(f64, f64)> {
        let q = self.q();
        let c_in = self.affinity[0][0];
        let c_out = if q > 1 { self.affinity[0][1] } else { c_in };
        let ok = (0..q).all(|a| (0..q).all(|b| self.affinity[a][b] == if a == b { c_in } else { c_out }));
        ok.then_some((c_in, c_out))
    }

    /// Expected degree `c_a = sum_b c_ab n_b` of each group.
    pub fn group_degrees(&self) -> Vec<f64> {
        self.affinity
            .iter()
            .map(|row| row.iter().zip(&self.group_fracs).map(|(c, f)| c * f).sum())
            .collect()
    }

    pub fn mean_degree(&self) -> f64 {
        self.group_degrees()
            .iter()
            .zip(&self.group_fracs)
            .map(|(c, f)| c * f)
            .sum()
    }
}

/// Samples a block-model graph.
///
/// Labels are i.i.d. categorical with weights `group_fracs`. For every block
/// pair the number of edges is binomial over the available vertex pairs and
/// endpoints are placed uniformly; self-loops and repeats are redrawn.
pub fn sbm_sample(params: &SbmParams, seed: u64) -> Result<LabeledGraph> {
    let n = params.n;
    let q = params.q();
    for row in &params.affinity {
        if let Some(&c) = row.iter().find(|&&c| c > n as f64) {
            return Err(Error::InvalidParams(format!(
                "affinity {c} exceeds n = {n} (edge probability > 1)"
            )));
        }
    }
    let mut rng = rng_from_seed(seed);

    let labels: Vec<usize> = if q == 1 {
        vec![0; n]
    } else {
        let dist =
            WeightedIndex::new(&params.group_fracs).map_err(|e| Error::InvalidParams(e.to_string()))?;
        (0..n).map(|_| dist.sample(&mut rng)).collect()
    };
    let mut members = vec![Vec::new(); q];
    for (v, &l) in labels.iter().enumerate() {
        members[l].push(v);
    }

    let mut edges = Vec::new();
    for a in 0..q {
        for b in a..q {
            let c = params.affinity[a][b];
            if c == 0.0 || n == 0 {
                continue;
            }
            let (na, nb) = (members[a].len() as u64, members[b].len() as u64);
            let pairs = if a == b {
                na * na.saturating_sub(1) / 2
            } else {
                na * nb
            };
            if pairs == 0 {
                continue;
            }
            let p = (c / n as f64).min(1.0);
            let count = Binomial::new(pairs, p)
                .map_err(|e| Error::InvalidParams(e.to_string()))?
                .sample(&mut rng);
            let block = if a == b {
                sample_within(&members[a], count as usize, pairs, &mut rng)
            } else {
                sample_between(&members[a], &members[b], count as usize, pairs, &mut rng)
            };
            edges.extend(block);
        }
    }
    LabeledGraph::new(Graph::from_simple_edges(n, &edges), labels, q)
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn sample_within(
    group: &[usize],
    count: usize,
    pairs: u64,
    rng: &mut crate::rng::Rng,
) -> Vec<(usize, usize)> {
    if 2 * count as u64 > pairs {
        let mut all: Vec<_> = group
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| group[i + 1..].iter().map(move |&v| (u, v)))
            .collect();
        let (chosen, _) = all.partial_shuffle(rng, count);
        return chosen.to_vec();
    }
    let mut seen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u = group[rng.random_range(0..group.len())];
        let v = group[rng.random_range(0..group.len())];
        if u != v && seen.insert(key(u, v)) {
            out.push((u, v));
        }
    }
    out
}

fn sample_between(
    left: &[usize],
    right: &[usize],
    count: usize,
    pairs: u64,
    rng: &mut crate::rng::Rng,
) -> Vec<(usize, usize)> {
    if 2 * count as u64 > pairs {
        let mut all: Vec<_> = left
            .iter()
            .flat_map(|&u| right.iter().map(move |&v| (u, v)))
            .collect();
        let (chosen, _) = all.partial_shuffle(rng, count);
        return chosen.to_vec();
    }
    let mut seen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u = left[rng.random_range(0..left.len())];
        let v = right[rng.random_range(0..right.len())];
        if seen.insert((u, v)) {
            out.push((u, v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_helpers() {
        let p = SbmParams::planted_with_difference(100, 2, 3.0, 4.0).unwrap();
        assert_eq!(p.two_value(), Some((5.0, 1.0)));
        let p = SbmParams::planted_with_ratio(100, 3, 3.0, 0.1).unwrap();
        let (c_in, c_out) = p.two_value().unwrap();
        assert!((c_in - 7.5).abs() < 1e-12 && (c_out - 0.75).abs() < 1e-12);
        assert!((p.mean_degree() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(SbmParams::new(10, vec![0.5, 0.6], vec![vec![1.0; 2]; 2]).is_err());
        assert!(SbmParams::new(10, vec![0.5, 0.5], vec![vec![1.0, 2.0], vec![1.0, 1.0]]).is_err());
        let p = SbmParams::planted(10, 2, 11.0, 1.0).unwrap();
        assert!(sbm_sample(&p, 0).is_err());
    }

    #[test]
    fn zero_affinity_gives_empty_graph() {
        let p = SbmParams::planted(10, 1, 0.0, 0.0).unwrap();
        let lg = sbm_sample(&p, 3).unwrap();
        assert_eq!(lg.graph.n(), 10);
        assert_eq!(lg.graph.m(), 0);
    }

    #[test]
    fn dense_blocks_use_exact_sampling() {
        // p = 1 everywhere: the complete graph.
        let p = SbmParams::planted(8, 2, 8.0, 8.0).unwrap();
        let lg = sbm_sample(&p, 1).unwrap();
        assert_eq!(lg.graph.m(), 28);
    }

    #[test]
    fn deterministic_given_seed() {
        let p = SbmParams::planted(500, 2, 5.0, 1.0).unwrap();
        assert_eq!(sbm_sample(&p, 9).unwrap(), sbm_sample(&p, 9).unwrap());
        assert_ne!(sbm_sample(&p, 9).unwrap(), sbm_sample(&p, 10).unwrap());
    }
}
