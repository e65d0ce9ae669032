use super::{LinearOperator, OperatorKind};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Symmetric per-edge weights stored per directed edge id.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeights(Vec<f64>);

impl EdgeWeights {
    /// Weights listed in the order of [`Graph::edges`].
    pub fn from_edge_order(g: &Graph, weights: &[f64]) -> Result<Self> {
        if weights.len() != g.m() {
            return Err(Error::LengthMismatch(weights.len(), g.m()));
        }
        let mut per_directed = vec![0.0; g.num_directed()];
        for (&w, (u, v)) in weights.iter().zip(g.edges()) {
            let e = g.edge_id(u, v).expect("edge from the graph's own list");
            per_directed[e] = w;
            per_directed[g.reverse(e)] = w;
        }
        Ok(EdgeWeights(per_directed))
    }

    /// Weights given as `(u, v, w)` triples. Every edge needs a weight; an
    /// edge listed in both orientations must carry the same value.
    pub fn from_triples(g: &Graph, triples: &[(usize, usize, f64)]) -> Result<Self> {
        let mut per_directed = vec![f64::NAN; g.num_directed()];
        for &(u, v, w) in triples {
            let e = g
                .edge_id(u, v)
                .ok_or_else(|| Error::InvalidParams(format!("weight given for non-edge {u}-{v}")))?;
            let r = g.reverse(e);
            if !per_directed[e].is_nan() && per_directed[e] != w {
                return Err(Error::DirectedWeight {
                    u,
                    v,
                    forward: w,
                    backward: per_directed[e],
                });
            }
            per_directed[e] = w;
            per_directed[r] = w;
        }
        if let Some(e) = per_directed.iter().position(|w| w.is_nan()) {
            let (u, v) = g.endpoints(e);
            return Err(Error::MissingWeight(u.min(v), u.max(v)));
        }
        Ok(EdgeWeights(per_directed))
    }

    pub fn get(&self, e: usize) -> f64 {
        self.0[e]
    }
}

/// The non-backtracking operator on the `2m` directed edges:
/// `B[(u->v), (w->x)] = s(u, v)` if `v == w` and `u != x`, with `s = 1`
/// unless weights are supplied.
///
/// `(B x)[u->v] = sum_{x in N(v), x != u} x[v->x]`, computed as the total
/// over the edges leaving `v` minus the reverse edge, so one application is
/// `O(m)`.
#[derive(Debug, Clone)]
pub struct NonBacktracking<'g> {
    graph: &'g Graph,
    weights: Option<EdgeWeights>,
}

pub fn build_b(g: &Graph) -> NonBacktracking<'_> {
    NonBacktracking {
        graph: g,
        weights: None,
    }
}

pub fn build_weighted_b(g: &Graph, weights: EdgeWeights) -> Result<NonBacktracking<'_>> {
    if weights.0.len() != g.num_directed() {
        return Err(Error::LengthMismatch(weights.0.len(), g.num_directed()));
    }
    Ok(NonBacktracking {
        graph: g,
        weights: Some(weights),
    })
}

impl NonBacktracking<'_> {
    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// Sums an edge vector over the edges entering each vertex.
    pub fn sum_incoming(&self, x: &[f64]) -> Vec<f64> {
        let g = self.graph;
        let mut f = vec![0.0; g.n()];
        for (e, &xe) in x.iter().enumerate() {
            f[g.head(e)] += xe;
        }
        f
    }

    /// Sums an edge vector over the edges leaving each vertex.
    pub fn sum_outgoing(&self, x: &[f64]) -> Vec<f64> {
        let g = self.graph;
        (0..g.n()).map(|v| g.out_edges(v).map(|e| x[e]).sum()).collect()
    }
}

impl LinearOperator for NonBacktracking<'_> {
    fn dim(&self) -> usize {
        self.graph.num_directed()
    }

    fn kind(&self) -> OperatorKind {
        if self.weights.is_some() {
            OperatorKind::WeightedNonBacktracking
        } else {
            OperatorKind::NonBacktracking
        }
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        let g = self.graph;
        let (offsets, heads, rev) = (g.offsets(), g.heads(), g.reverse_slice());
        let out_sum: Vec<f64> = (0..g.n())
            .map(|v| x[offsets[v]..offsets[v + 1]].iter().sum())
            .collect();
        for e in 0..y.len() {
            y[e] = out_sum[heads[e]] - x[rev[e]];
        }
        if let Some(w) = &self.weights {
            for (ye, we) in y.iter_mut().zip(&w.0) {
                *ye *= we;
            }
        }
    }

    fn apply_transpose_into(&self, x: &[f64], y: &mut [f64]) {
        let g = self.graph;
        let (offsets, rev) = (g.offsets(), g.reverse_slice());
        let weighted;
        let x = match &self.weights {
            Some(w) => {
                weighted = x.iter().zip(&w.0).map(|(a, b)| a * b).collect::<Vec<_>>();
                &weighted[..]
            }
            None => x,
        };
        // (B^T x)[v->w] = sum over u in N(v), u != w, of x[u->v]
        for v in 0..g.n() {
            let out = offsets[v]..offsets[v + 1];
            let in_sum: f64 = out.clone().map(|e| x[rev[e]]).sum();
            for e in out {
                y[e] = in_sum - x[rev[e]];
            }
        }
    }
}

/// `||B^r||_F^2 = tr(B^r B^r^T)`, counted exactly by propagating, from
/// every directed edge, the number of non-backtracking walks reaching
/// each edge after `r` steps.
pub fn walk_frobenius(g: &Graph, r: usize) -> f64 {
    let dim = g.num_directed();
    let mut counts = vec![0.0f64; dim];
    let mut touched: Vec<usize> = Vec::new();
    let mut next_touched: Vec<usize> = Vec::new();
    let mut next = vec![0.0f64; dim];
    let mut total = 0.0;
    for start in 0..dim {
        touched.clear();
        touched.push(start);
        counts[start] = 1.0;
        for _ in 0..r {
            next_touched.clear();
            for &e in &touched {
                let (u, v) = g.endpoints(e);
                for f in g.out_edges(v) {
                    if g.head(f) == u {
                        continue;
                    }
                    if next[f] == 0.0 {
                        next_touched.push(f);
                    }
                    next[f] += counts[e];
                }
                counts[e] = 0.0;
            }
            for &f in &next_touched {
                counts[f] = next[f];
                next[f] = 0.0;
            }
            std::mem::swap(&mut touched, &mut next_touched);
        }
        for &e in &touched {
            total += counts[e] * counts[e];
            counts[e] = 0.0;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{dense_spectrum, Matrix};
    use crate::graph::families::*;
    use crate::operators::testing::{adjoint_defect, linearity_defect};

    #[test]
    fn walk_counts_match_dense_powers() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let b = Matrix::from_operator(&build_b(&g));
        let mut power = Matrix::identity(b.dim());
        for r in 0..5 {
            let dense = power.frobenius_norm().powi(2);
            assert!((walk_frobenius(&g, r) - dense).abs() < 1e-9, "r = {r}");
            power = power.matmul(&b);
        }
        assert_eq!(walk_frobenius(&path(4), 2), 2.0);
        assert_eq!(walk_frobenius(&path(4), 3), 0.0);
    }

    #[test]
    fn path_has_single_continuation() {
        let g = path(3);
        let b = build_b(&g);
        let mut x = vec![0.0; g.num_directed()];
        // B x picks up the value on 1->2 at row 0->1
        x[g.edge_id(1, 2).unwrap()] = 1.0;
        let y = b.apply(&x);
        let mut expect = vec![0.0; g.num_directed()];
        expect[g.edge_id(0, 1).unwrap()] = 1.0;
        assert_eq!(y, expect);
        // and the transpose pushes 0->1 forward onto 1->2
        let mut x = vec![0.0; g.num_directed()];
        x[g.edge_id(0, 1).unwrap()] = 1.0;
        let y = b.apply_transpose(&x);
        let mut expect = vec![0.0; g.num_directed()];
        expect[g.edge_id(1, 2).unwrap()] = 1.0;
        assert_eq!(y, expect);
    }

    #[test]
    fn row_sums_are_head_degree_minus_one() {
        for g in [cycle(3), star(3), complete(5), path(6)] {
            let b = build_b(&g);
            let y = b.apply(&vec![1.0; g.num_directed()]);
            for e in 0..g.num_directed() {
                assert_eq!(y[e], g.degree(g.head(e)) as f64 - 1.0);
            }
        }
        let g = star(3);
        let y = build_b(&g).apply(&vec![1.0; 6]);
        for e in 0..6 {
            let expect = if g.head(e) == 0 { 2.0 } else { 0.0 };
            assert_eq!(y[e], expect);
        }
    }

    #[test]
    fn linear_and_adjoint_consistent() {
        let g = complete(6);
        let b = build_b(&g);
        assert!(linearity_defect(&b, 1) < 1e-12);
        assert!(adjoint_defect(&b, 2) < 1e-12);
        let w =
            EdgeWeights::from_edge_order(&g, &(0..15).map(|i| 0.5 + i as f64).collect::<Vec<_>>()).unwrap();
        let bw = build_weighted_b(&g, w).unwrap();
        assert!(linearity_defect(&bw, 3) < 1e-12);
        assert!(adjoint_defect(&bw, 4) < 1e-12);
    }

    #[test]
    fn dense_entries_match_definition() {
        let g = complete(4);
        let m = Matrix::from_operator(&build_b(&g));
        for e in 0..g.num_directed() {
            for f in 0..g.num_directed() {
                let ((u, v), (w, x)) = (g.endpoints(e), g.endpoints(f));
                let expect = if v == w && u != x { 1.0 } else { 0.0 };
                assert_eq!(m[(e, f)], expect);
            }
        }
    }

    #[test]
    fn unit_weights_reduce_to_b() {
        let g = complete(5);
        let w = EdgeWeights::from_edge_order(&g, &vec![1.0; g.m()]).unwrap();
        let bw = build_weighted_b(&g, w).unwrap();
        let b = build_b(&g);
        let x: Vec<f64> = (0..g.num_directed()).map(|i| (i as f64 * 0.37).sin()).collect();
        let (y1, y2) = (b.apply(&x), bw.apply(&x));
        for (a, c) in y1.iter().zip(&y2) {
            assert!((a - c).abs() <= 1e-12);
        }
    }

    #[test]
    fn doubled_weights_on_triangle() {
        let g = cycle(3);
        let w = EdgeWeights::from_edge_order(&g, &[2.0; 3]).unwrap();
        let spec = dense_spectrum(&build_weighted_b(&g, w).unwrap()).unwrap();
        assert!((spec.values[0].norm() - 2.0).abs() < 1e-10);
        assert!((spec.values[0].re - 2.0).abs() < 1e-10);
    }

    #[test]
    fn zero_weight_edge_makes_triangle_nilpotent() {
        let g = cycle(3);
        let w = EdgeWeights::from_triples(&g, &[(0, 1, 0.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap();
        let bw = build_weighted_b(&g, w).unwrap();
        let spec = dense_spectrum(&bw).unwrap();
        assert!(spec.values.iter().all(|z| z.norm() < 1e-10));
    }

    #[test]
    fn weight_validation() {
        let g = cycle(3);
        assert!(matches!(
            EdgeWeights::from_triples(&g, &[(0, 1, 1.0), (1, 2, 1.0)]),
            Err(Error::MissingWeight(0, 2))
        ));
        assert!(matches!(
            EdgeWeights::from_triples(&g, &[(0, 1, 1.0), (1, 0, 2.0), (1, 2, 1.0), (0, 2, 1.0)]),
            Err(Error::DirectedWeight { .. })
        ));
    }
}
