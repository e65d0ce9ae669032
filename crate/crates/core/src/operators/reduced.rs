use super::{LinearOperator, OperatorKind};
use crate::graph::Graph;

/// The `2n x 2n` block operator `[[0, D - I], [-I, A]]`.
///
/// Its eigenvalues are the roots of `det(mu^2 I - mu A + D - I) = 0`, which
/// are exactly the eigenvalues of the edge-space non-backtracking operator
/// other than the extra `+1`/`-1` pairs (`m - n` of each). A left
/// eigenvector has the form `(f, -mu f)`, so `f` is read from the first `n`
/// coordinates of an eigenvector of the transpose.
#[derive(Debug, Clone, Copy)]
pub struct ReducedNonBacktracking<'g> {
    graph: &'g Graph,
}

pub fn build_b_prime(g: &Graph) -> ReducedNonBacktracking<'_> {
    ReducedNonBacktracking { graph: g }
}

impl ReducedNonBacktracking<'_> {
    pub fn graph(&self) -> &Graph {
        self.graph
    }
}

impl LinearOperator for ReducedNonBacktracking<'_> {
    fn dim(&self) -> usize {
        2 * self.graph.n()
    }

    fn kind(&self) -> OperatorKind {
        OperatorKind::ReducedNonBacktracking
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        let g = self.graph;
        let n = g.n();
        let (x1, x2) = x.split_at(n);
        let (y1, y2) = y.split_at_mut(n);
        for v in 0..n {
            let neigh: f64 = g.neighbors(v).iter().map(|&u| x2[u]).sum();
            y1[v] = (g.degree(v) as f64 - 1.0) * x2[v];
            y2[v] = neigh - x1[v];
        }
    }

    fn apply_transpose_into(&self, x: &[f64], y: &mut [f64]) {
        // [[0, -I], [D - I, A]]
        let g = self.graph;
        let n = g.n();
        let (x1, x2) = x.split_at(n);
        let (y1, y2) = y.split_at_mut(n);
        for v in 0..n {
            let neigh: f64 = g.neighbors(v).iter().map(|&u| x2[u]).sum();
            y1[v] = -x2[v];
            y2[v] = (g.degree(v) as f64 - 1.0) * x1[v] + neigh;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::dense_spectrum;
    use crate::graph::families::*;
    use crate::operators::testing::{adjoint_defect, linearity_defect};
    use num_complex::Complex64;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn single_edge_spectrum() {
        let g = path(2);
        let vals = sorted(dense_spectrum(&build_b_prime(&g)).unwrap().values);
        let expect = [-1.0, 0.0, 0.0, 1.0];
        for (z, e) in vals.iter().zip(expect) {
            assert!((z.re - e).abs() < 1e-12 && z.im.abs() < 1e-12, "{vals:?}");
        }
    }

    #[test]
    fn tree_spectrum_is_zeros_and_plus_minus_one() {
        let g = crate::graph::Graph::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        let vals = dense_spectrum(&build_b_prime(&g)).unwrap().values;
        // the zero eigenvalue is defective, so it splits at eps^(1/size)
        let (mut zeros, mut plus, mut minus) = (0, 0, 0);
        for z in vals {
            if z.norm() < 1e-3 {
                zeros += 1;
            } else if (z - 1.0).norm() < 1e-8 {
                plus += 1;
            } else if (z + 1.0).norm() < 1e-8 {
                minus += 1;
            }
        }
        assert_eq!((zeros, plus, minus), (10, 1, 1));
    }

    #[test]
    fn left_eigenvector_structure() {
        let g = complete(4);
        let bp = build_b_prime(&g);
        // K4: the all-ones f with mu = 2 solves mu^2 - 3 mu + 2 = 0
        let mu = 2.0;
        let mut v = vec![1.0; 4];
        v.extend(std::iter::repeat_n(-mu, 4));
        let y = bp.apply_transpose(&v);
        for (a, b) in y.iter().zip(&v) {
            assert!((a - mu * b).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_and_adjoint_consistent() {
        let g = star(4);
        let bp = build_b_prime(&g);
        assert!(linearity_defect(&bp, 5) < 1e-12);
        assert!(adjoint_defect(&bp, 6) < 1e-12);
    }
}
