use std::collections::HashSet;

use rand::Rng as _;

use super::{Labeling, VertexEmbedding};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed, Rng};

const MAX_LLOYD: usize = 300;
const REL_TOL: f64 = 1e-10;

/// Outcome of the best restart.
#[derive(Debug, Clone)]
pub struct KMeans {
    pub labeling: Labeling,
    /// Sum of squared distances to the assigned centers.
    pub objective: f64,
    /// Objective after each assignment step of the best restart.
    pub trace: Vec<f64>,
}

/// k-means with k-means++ seeding and Lloyd iterations, best of `restarts`
/// by objective. Restart `r` draws from the stream `derive_seed(seed, r)`.
pub fn kmeans(emb: &VertexEmbedding, q: usize, seed: u64, restarts: usize) -> Result<KMeans> {
    if q < 2 {
        return Err(Error::InvalidParams(format!("k-means needs q >= 2, got {q}")));
    }
    if restarts == 0 {
        return Err(Error::InvalidParams("k-means needs at least one restart".into()));
    }
    let n = emb.n();
    if n < q {
        return Err(Error::TooFewDistinctPoints { distinct: n, q });
    }
    let mut distinct = HashSet::new();
    for v in 0..n {
        distinct.insert(emb.row(v).iter().map(|x| x.to_bits()).collect::<Vec<_>>());
        if distinct.len() >= q {
            break;
        }
    }
    if distinct.len() < q {
        return Err(Error::TooFewDistinctPoints {
            distinct: distinct.len(),
            q,
        });
    }

    let mut best: Option<KMeans> = None;
    for r in 0..restarts {
        let mut rng = rng_from_seed(derive_seed(seed, r as u64));
        let run = lloyd(emb, q, seed_centers(emb, q, &mut rng));
        if best.as_ref().is_none_or(|b| run.objective < b.objective) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn seed_centers(emb: &VertexEmbedding, q: usize, rng: &mut Rng) -> Vec<Vec<f64>> {
    let n = emb.n();
    let mut centers = vec![emb.row(rng.random_range(0..n)).to_vec()];
    let mut nearest: Vec<f64> = (0..n).map(|v| dist2(emb.row(v), &centers[0])).collect();
    while centers.len() < q {
        let total: f64 = nearest.iter().sum();
        // at least q distinct points, so total > 0 until q centers exist
        let mut target = rng.random::<f64>() * total;
        let mut pick = n - 1;
        for (v, &d) in nearest.iter().enumerate() {
            if d > 0.0 && target < d {
                pick = v;
                break;
            }
            target -= d;
        }
        if nearest[pick] == 0.0 {
            pick = nearest
                .iter()
                .rposition(|&d| d > 0.0)
                .expect("a point away from every center");
        }
        let c = emb.row(pick).to_vec();
        for (v, d) in nearest.iter_mut().enumerate() {
            *d = d.min(dist2(emb.row(v), &c));
        }
        centers.push(c);
    }
    centers
}

fn lloyd(emb: &VertexEmbedding, q: usize, mut centers: Vec<Vec<f64>>) -> KMeans {
    let n = emb.n();
    let dim = emb.dim();
    let mut labels = vec![0usize; n];
    let mut dists = vec![0.0; n];
    let mut trace = Vec::new();
    for _ in 0..MAX_LLOYD {
        let mut objective = 0.0;
        for v in 0..n {
            let p = emb.row(v);
            let (mut bl, mut bd) = (0, f64::INFINITY);
            for (k, c) in centers.iter().enumerate() {
                let d = dist2(p, c);
                if d < bd {
                    bl = k;
                    bd = d;
                }
            }
            labels[v] = bl;
            dists[v] = bd;
            objective += bd;
        }
        let previous = trace.last().copied();
        trace.push(objective);
        if let Some(prev) = previous {
            if prev - objective <= REL_TOL * prev {
                break;
            }
        }

        let mut sums = vec![vec![0.0; dim]; q];
        let mut counts = vec![0usize; q];
        for v in 0..n {
            counts[labels[v]] += 1;
            for (s, x) in sums[labels[v]].iter_mut().zip(emb.row(v)) {
                *s += x;
            }
        }
        for k in 0..q {
            if counts[k] > 0 {
                centers[k] = sums[k].iter().map(|s| s / counts[k] as f64).collect();
            } else {
                // move an empty center onto the worst-served point
                let far = (0..n)
                    .max_by(|&a, &b| dists[a].total_cmp(&dists[b]).then(b.cmp(&a)))
                    .expect("n >= q");
                centers[k] = emb.row(far).to_vec();
                dists[far] = 0.0;
            }
        }
    }
    let objective = *trace.last().expect("one iteration");
    KMeans {
        labeling: Labeling { labels, q },
        objective,
        trace,
    }
}
