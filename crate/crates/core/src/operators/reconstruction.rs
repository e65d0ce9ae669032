use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Distance-`r` label sums.
///
/// `vertex_values[v] = mu^-r * sum of sigma_u over u at graph distance
/// exactly r from v`. `edge_values[u->v]` is the same sum restricted to
/// the branch behind `u`: `mu^-r` times the sum of `sigma_w` over the
/// tails `w` of directed edges reaching `u->v` by a shortest
/// non-backtracking walk of `r - 1` steps. This is the message-passing
/// orientation, in which `B^T g(r) = mu g(r+1)` and the sum of `g(r)` over
/// the edges entering `v` equals `f(r)_v` wherever the radius-`r`
/// neighbourhood of `v` is a tree. For `r = 0` the edge vector is zero.
#[derive(Debug, Clone)]
pub struct ReconstructionVector {
    pub radius: usize,
    pub mu: f64,
    pub vertex_values: Vec<f64>,
    pub edge_values: Vec<f64>,
    /// `<f, sigma> / n`.
    pub correlation: f64,
    /// Set when no pair of vertices is `r` apart.
    pub beyond_diameter: bool,
}

fn spin(label: usize) -> f64 {
    if label == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn reconstruction_vector(lg: &LabeledGraph, r: usize, mu: f64) -> Result<ReconstructionVector> {
    if lg.q != 2 {
        return Err(Error::InvalidParams("reconstruction needs q = 2".into()));
    }
    if mu == 0.0 || !mu.is_finite() {
        return Err(Error::InvalidParams(format!("mu = {mu}")));
    }
    let g = &lg.graph;
    let n = g.n();
    let sigma: Vec<f64> = lg.labels.iter().map(|&l| spin(l)).collect();
    let scale = mu.powi(-(r as i32));

    let mut stamp = vec![usize::MAX; n];
    let mut frontier = Vec::new();
    let mut next = Vec::new();
    let mut vertex_values = vec![0.0; n];
    let mut any_at_r = false;
    for v in 0..n {
        stamp[v] = v;
        frontier.clear();
        frontier.push(v);
        for _ in 0..r {
            next.clear();
            for &x in &frontier {
                for &y in g.neighbors(x) {
                    if stamp[y] != v {
                        stamp[y] = v;
                        next.push(y);
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
            if frontier.is_empty() {
                break;
            }
        }
        if !frontier.is_empty() {
            any_at_r = true;
        }
        vertex_values[v] = scale * frontier.iter().map(|&u| sigma[u]).sum::<f64>();
    }

    let ne = g.num_directed();
    let mut edge_values = vec![0.0; ne];
    if r >= 1 {
        let mut seen = vec![usize::MAX; ne];
        let mut efront = Vec::new();
        let mut enext = Vec::new();
        for e in 0..ne {
            seen[e] = e;
            efront.clear();
            efront.push(e);
            for _ in 1..r {
                enext.clear();
                for &f in &efront {
                    // predecessors of a->b are c->a with c != b
                    let (a, b) = g.endpoints(f);
                    for out in g.out_edges(a) {
                        let pred = g.reverse(out);
                        if g.tail(pred) != b && seen[pred] != e {
                            seen[pred] = e;
                            enext.push(pred);
                        }
                    }
                }
                std::mem::swap(&mut efront, &mut enext);
                if efront.is_empty() {
                    break;
                }
            }
            edge_values[e] = scale * efront.iter().map(|&f| sigma[g.tail(f)]).sum::<f64>();
        }
    }

    let correlation = if n == 0 {
        0.0
    } else {
        vertex_values.iter().zip(&sigma).map(|(f, s)| f * s).sum::<f64>() / n as f64
    };
    Ok(ReconstructionVector {
        radius: r,
        mu,
        vertex_values,
        edge_values,
        correlation,
        beyond_diameter: r > 0 && !any_at_r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::graph::{sbm_sample, Graph, SbmParams};
    use crate::operators::{build_b, LinearOperator};

    #[test]
    fn radius_zero_is_sigma() {
        let lg = LabeledGraph::new(path(4), vec![0, 1, 1, 0], 2).unwrap();
        let rv = reconstruction_vector(&lg, 0, 2.0).unwrap();
        assert_eq!(rv.vertex_values, vec![1.0, -1.0, -1.0, 1.0]);
        assert_eq!(rv.correlation, 1.0);
        assert!(rv.edge_values.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn incoming_sums_match_on_trees() {
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6), (0, 7)]).unwrap();
        let lg = LabeledGraph::new(g, vec![0, 1, 0, 0, 1, 1, 0, 1], 2).unwrap();
        for r in 1..5 {
            let rv = reconstruction_vector(&lg, r, 1.5).unwrap();
            let sums = build_b(&lg.graph).sum_incoming(&rv.edge_values);
            for v in 0..8 {
                assert!((sums[v] - rv.vertex_values[v]).abs() < 1e-12, "r={r} v={v}");
            }
        }
    }

    #[test]
    fn transpose_recursion_on_trees() {
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let lg = LabeledGraph::new(g, vec![0, 0, 1, 1, 0, 1, 1], 2).unwrap();
        let mu = 1.7;
        let b = build_b(&lg.graph);
        for r in 1..4 {
            let gr = reconstruction_vector(&lg, r, mu).unwrap().edge_values;
            let gnext = reconstruction_vector(&lg, r + 1, mu).unwrap().edge_values;
            let image = b.apply_transpose(&gr);
            for e in 0..image.len() {
                assert!((image[e] - mu * gnext[e]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn beyond_diameter_flags_zero_vector() {
        let lg = LabeledGraph::new(path(3), vec![0, 1, 0], 2).unwrap();
        let rv = reconstruction_vector(&lg, 5, 2.0).unwrap();
        assert!(rv.beyond_diameter);
        assert!(rv.vertex_values.iter().all(|&x| x == 0.0));
        assert!(!reconstruction_vector(&lg, 2, 2.0).unwrap().beyond_diameter);
    }

    #[test]
    fn correlation_positive_above_threshold() {
        let params = SbmParams::planted(10_000, 2, 5.0, 1.0).unwrap();
        let lg = sbm_sample(&params, 17).unwrap();
        let rv = reconstruction_vector(&lg, 1, 2.0).unwrap();
        assert!(rv.correlation > 0.1, "correlation {}", rv.correlation);
    }

    #[test]
    fn approximate_eigenvector_residual_shrinks() {
        let params = SbmParams::planted(10_000, 2, 5.0, 1.0).unwrap();
        let lg = sbm_sample(&params, 23).unwrap();
        let b = build_b(&lg.graph);
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let residual = |r: usize| {
            let gr = reconstruction_vector(&lg, r, 2.0).unwrap().edge_values;
            let image = b.apply_transpose(&gr);
            let diff: Vec<f64> = image.iter().zip(&gr).map(|(a, g)| a - 2.0 * g).collect();
            norm(&diff) / norm(&gr)
        };
        let res: Vec<f64> = (1..=4).map(residual).collect();
        assert!(res[3] < res[0], "residuals {res:?}");
    }

    #[test]
    fn rejects_bad_inputs() {
        let lg = LabeledGraph::new(path(3), vec![0, 1, 2], 3).unwrap();
        assert!(reconstruction_vector(&lg, 1, 2.0).is_err());
        let lg = LabeledGraph::new(path(3), vec![0, 1, 0], 2).unwrap();
        assert!(reconstruction_vector(&lg, 1, 0.0).is_err());
    }
}
