//! Statistical checks on the random graph generators.

use nonbacktracking::cluster::{overlap, spectral_cluster, Labeling, Method, SpectralOpts};
use nonbacktracking::graph::{config_model_sample, sbm_sample, DegreeSeqParams, SbmParams};
use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, DiscreteCDF, Poisson};

#[test]
fn sbm_degrees_are_poisson() {
    let params = SbmParams::planted(10_000, 2, 5.0, 1.0).unwrap();
    let g = sbm_sample(&params, 21).unwrap().graph;
    let n = g.n() as f64;
    let poisson = Poisson::new(3.0).unwrap();
    let mut observed = vec![0.0; 64];
    for d in g.degrees() {
        observed[d.min(63)] += 1.0;
    }
    // merge the upper tail until every bin expects at least 5 vertices
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for k in 0..64u64 {
        obs += observed[k as usize];
        exp += n * poisson.pmf(k);
        if exp >= 5.0 && n * (1.0 - poisson.cdf(k)) >= 5.0 {
            bins.push((obs, exp));
            obs = 0.0;
            exp = 0.0;
        }
    }
    let tail = n - bins.iter().map(|b| b.1).sum::<f64>();
    bins.push((obs, tail));
    let stat: f64 = bins.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let dof = (bins.len() - 1) as f64;
    let p = 1.0 - ChiSquared::new(dof).unwrap().cdf(stat);
    assert!(p > 1e-3, "chi-square {stat} on {dof} dof, p = {p}");
}

#[test]
fn sbm_group_sizes_concentrate() {
    let n = 10_000;
    let bound = 5.0 * (n as f64).sqrt();
    for q in [2, 3, 4] {
        let params = SbmParams::planted(n, q, 6.0, 1.0).unwrap();
        for seed in 0..20 {
            let lg = sbm_sample(&params, seed).unwrap();
            for size in lg.group_sizes() {
                let dev = (size as f64 - n as f64 / q as f64).abs();
                assert!(dev < bound, "q {q} seed {seed}: size {size}");
            }
        }
    }
}

fn total_variation(observed: &[usize], target: &[(usize, f64)]) -> f64 {
    let n = observed.len() as f64;
    let max = observed
        .iter()
        .copied()
        .chain(target.iter().map(|t| t.0))
        .max()
        .unwrap();
    let mut emp = vec![0.0; max + 1];
    for &d in observed {
        emp[d] += 1.0 / n;
    }
    let mut want = vec![0.0; max + 1];
    for &(k, a) in target {
        want[k] += a;
    }
    emp.iter().zip(&want).map(|(x, y)| (x - y).abs()).sum::<f64>() / 2.0
}

#[test]
fn config_model_matches_degree_distribution() {
    let dist = vec![(1, 0.2), (2, 0.3), (3, 0.3), (5, 0.2)];
    let s1: f64 = dist.iter().map(|&(k, a)| k as f64 * a).sum();
    let s2: f64 = dist.iter().map(|&(k, a)| (k * (k - 1)) as f64 * a).sum();
    let branching = s2 / s1;
    let params = DegreeSeqParams {
        n: 10_000,
        degree_dist: dist.clone(),
        tilde_c_in: branching * 1.3,
        tilde_c_out: branching * 0.7,
    };
    for seed in 0..3 {
        let lg = config_model_sample(&params, seed).unwrap();
        let tv = total_variation(&lg.graph.degrees(), &dist);
        assert!(tv < 0.02, "seed {seed}: total variation {tv}");
    }
}

fn cubic_overlap(c_in: f64, c_out: f64, seed: u64) -> f64 {
    let params = DegreeSeqParams {
        n: 10_000,
        degree_dist: vec![(3, 1.0)],
        tilde_c_in: c_in,
        tilde_c_out: c_out,
    };
    let lg = config_model_sample(&params, seed).unwrap();
    let truth = Labeling::new(lg.labels.clone(), 2).unwrap();
    let out = spectral_cluster(&lg.graph, Method::NonBacktracking, &SpectralOpts::new(2, seed)).unwrap();
    overlap(&truth, &out.labeling).unwrap()
}

#[test]
fn config_model_embedding_overlap() {
    for seed in 0..2 {
        let flat = cubic_overlap(2.0, 2.0, seed);
        assert!(flat < 0.05, "no planted signal, seed {seed}: {flat}");
    }
    // just above threshold some samples lose the planted eigenvalue to the bulk
    let seeds = 4;
    let mean = (0..seeds).map(|s| cubic_overlap(3.5, 0.5, s)).sum::<f64>() / seeds as f64;
    assert!(mean > 0.2, "planted split, mean overlap {mean}");
}
