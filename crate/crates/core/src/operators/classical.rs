use super::{LinearOperator, OperatorKind};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicalKind {
    /// `A`
    Adjacency,
    /// `L = D - A`
    Laplacian,
    /// `Q = D^-1 A`
    RandomWalk,
    /// `M = A - d d^T / 2m`
    Modularity,
}

impl ClassicalKind {
    pub const ALL: [ClassicalKind; 4] = [
        ClassicalKind::Adjacency,
        ClassicalKind::Laplacian,
        ClassicalKind::RandomWalk,
        ClassicalKind::Modularity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassicalKind::Adjacency => "adjacency",
            ClassicalKind::Laplacian => "laplacian",
            ClassicalKind::RandomWalk => "random_walk",
            ClassicalKind::Modularity => "modularity",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClassicalOperator<'g> {
    graph: &'g Graph,
    kind: ClassicalKind,
    degrees: Vec<f64>,
    two_m: f64,
}

pub fn classical_operator(g: &Graph, kind: ClassicalKind) -> Result<ClassicalOperator<'_>> {
    let degrees: Vec<f64> = g.degrees().into_iter().map(|d| d as f64).collect();
    match kind {
        ClassicalKind::RandomWalk => {
            if let Some(v) = degrees.iter().position(|&d| d == 0.0) {
                return Err(Error::IsolatedVertex(v));
            }
        }
        ClassicalKind::Modularity if g.m() == 0 => return Err(Error::EmptyGraph),
        _ => {}
    }
    Ok(ClassicalOperator {
        graph: g,
        kind,
        two_m: 2.0 * g.m() as f64,
        degrees,
    })
}

impl ClassicalOperator<'_> {
    pub fn classical_kind(&self) -> ClassicalKind {
        self.kind
    }

    fn adjacency(&self, x: &[f64], y: &mut [f64]) {
        for (v, yv) in y.iter_mut().enumerate() {
            *yv = self.graph.neighbors(v).iter().map(|&u| x[u]).sum();
        }
    }
}

impl LinearOperator for ClassicalOperator<'_> {
    fn dim(&self) -> usize {
        self.graph.n()
    }

    fn kind(&self) -> OperatorKind {
        match self.kind {
            ClassicalKind::Adjacency => OperatorKind::Adjacency,
            ClassicalKind::Laplacian => OperatorKind::Laplacian,
            ClassicalKind::RandomWalk => OperatorKind::RandomWalk,
            ClassicalKind::Modularity => OperatorKind::Modularity,
        }
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        self.adjacency(x, y);
        match self.kind {
            ClassicalKind::Adjacency => {}
            ClassicalKind::Laplacian => {
                for v in 0..y.len() {
                    y[v] = self.degrees[v] * x[v] - y[v];
                }
            }
            ClassicalKind::RandomWalk => {
                for v in 0..y.len() {
                    y[v] /= self.degrees[v];
                }
            }
            ClassicalKind::Modularity => {
                let dx: f64 = self.degrees.iter().zip(x).map(|(d, xi)| d * xi).sum();
                let s = dx / self.two_m;
                for v in 0..y.len() {
                    y[v] -= self.degrees[v] * s;
                }
            }
        }
    }

    fn apply_transpose_into(&self, x: &[f64], y: &mut [f64]) {
        if self.kind == ClassicalKind::RandomWalk {
            // (D^-1 A)^T x = A D^-1 x
            let scaled: Vec<f64> = x.iter().zip(&self.degrees).map(|(a, d)| a / d).collect();
            self.adjacency(&scaled, y);
        } else {
            self.apply_into(x, y);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::operators::testing::{adjoint_defect, linearity_defect};

    fn sample() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    #[test]
    fn laplacian_and_modularity_kill_ones() {
        let g = sample();
        let ones = vec![1.0; g.n()];
        for kind in [ClassicalKind::Laplacian, ClassicalKind::Modularity] {
            let y = classical_operator(&g, kind).unwrap().apply(&ones);
            assert!(y.iter().all(|v| v.abs() < 1e-12), "{kind:?}: {y:?}");
        }
    }

    #[test]
    fn random_walk_is_row_stochastic() {
        let g = sample();
        let y = classical_operator(&g, ClassicalKind::RandomWalk)
            .unwrap()
            .apply(&vec![1.0; g.n()]);
        assert!(y.iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn random_walk_rejects_isolated_vertex() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            classical_operator(&g, ClassicalKind::RandomWalk),
            Err(Error::IsolatedVertex(2))
        ));
    }

    #[test]
    fn adjacency_on_star() {
        let g = star(3);
        let y = classical_operator(&g, ClassicalKind::Adjacency)
            .unwrap()
            .apply(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(y, vec![9.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn all_kinds_linear_and_adjoint_consistent() {
        let g = sample();
        for kind in ClassicalKind::ALL {
            let op = classical_operator(&g, kind).unwrap();
            assert!(linearity_defect(&op, 11) < 1e-12, "{kind:?}");
            assert!(adjoint_defect(&op, 12) < 1e-12, "{kind:?}");
        }
    }
}
