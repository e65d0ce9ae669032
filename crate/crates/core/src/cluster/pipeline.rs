use num_complex::Complex64;

use super::{embed, embed_real_parts, kmeans, sign_labels, EmbedSource, Labeling, VertexEmbedding};
use crate::eigen::{is_real, topk_eigs, EigenResult, SolverOpts, Which};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::operators::{
    build_b_prime, classical_operator, ClassicalKind, LinearOperator, Shifted, Transposed,
};
use crate::rng::derive_seed;

/// Which operator drives the embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    NonBacktracking,
    Classical(ClassicalKind),
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::NonBacktracking,
        Method::Classical(ClassicalKind::Adjacency),
        Method::Classical(ClassicalKind::Laplacian),
        Method::Classical(ClassicalKind::RandomWalk),
        Method::Classical(ClassicalKind::Modularity),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::NonBacktracking => "nb",
            Method::Classical(kind) => kind.name(),
        }
    }

    pub fn from_name(name: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralOpts {
    pub q: usize,
    pub seed: u64,
    /// Residual tolerance handed to the eigensolver.
    pub tol: f64,
    /// Eigenpairs computed beyond the `q` needed, non-backtracking only.
    pub extra_pairs: usize,
    pub max_restarts: usize,
    /// Further solves, each with a doubled subspace, while a needed pair
    /// is unconverged.
    pub subspace_retries: usize,
    pub kmeans_restarts: usize,
}

impl SpectralOpts {
    pub fn new(q: usize, seed: u64) -> Self {
        SpectralOpts {
            q,
            seed,
            tol: 1e-8,
            extra_pairs: 1,
            max_restarts: 300,
            subspace_retries: 1,
            kmeans_restarts: 10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpectralOutcome {
    pub labeling: Labeling,
    /// Every eigenvalue the solver returned, in its order.
    pub eigenvalues: Vec<Complex64>,
    /// Indices into `eigenvalues` of the embedding columns.
    pub used: Vec<usize>,
    /// Whether every embedding column came from a converged real pair.
    pub converged: bool,
    /// Conventions applied, as `(key, value)` pairs for output metadata.
    pub conventions: Vec<(&'static str, String)>,
}

/// Operator, eigenvectors, embedding, then sign labels (`q = 2`) or
/// k-means.
///
/// Conventions: the non-backtracking embedding reads the first `n`
/// coordinates of the transposed reduced operator's eigenvectors for the
/// `q - 1` largest-modulus real eigenvalues after the leading one. The
/// adjacency embedding uses eigenvectors 2 through `q` of the top real end,
/// modularity eigenvectors 1 through `q - 1`, the Laplacian eigenvectors
/// of the 2nd through `q`-th smallest eigenvalues, and the random walk
/// eigenvectors 2 through `q` of the top real end computed on the
/// non-isolated vertices (isolated vertices get a zero row).
pub fn spectral_cluster(g: &Graph, method: Method, opts: &SpectralOpts) -> Result<SpectralOutcome> {
    let q = opts.q;
    if q < 2 {
        return Err(Error::InvalidParams(format!("q = {q}; clustering needs q >= 2")));
    }
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let solver = |k: usize, which: Which| {
        let mut s = SolverOpts::new(k)
            .with_seed(derive_seed(opts.seed, 0))
            .with_tol(opts.tol)
            .with_which(which);
        s.max_iter = opts.max_restarts;
        s
    };
    let solve = |op: &dyn LinearOperator, base: SolverOpts, needed: usize| -> Result<EigenResult> {
        let mut s = base;
        let mut eig = topk_eigs(op, &s)?;
        for _ in 0..opts.subspace_retries {
            if eig.converged.iter().take(needed).all(|&c| c) {
                break;
            }
            let m = (2 * s.subspace_size(op.dim())).min(op.dim());
            s = s.with_subspace(m);
            eig = topk_eigs(op, &s)?;
        }
        Ok(eig)
    };
    let mut conventions = vec![
        ("method", method.name().to_string()),
        ("q", q.to_string()),
        ("solver_tol", format!("{:e}", opts.tol)),
        ("subspace_retries", opts.subspace_retries.to_string()),
        ("column_normalization", "unit euclidean norm".to_string()),
        (
            "labeling",
            if q == 2 {
                "sign; zeros to group 0".to_string()
            } else {
                format!("k-means++ with {} restarts", opts.kmeans_restarts)
            },
        ),
    ];

    let (eig, used, emb, converged) = match method {
        Method::NonBacktracking => {
            let op = Transposed(build_b_prime(g));
            let k = (q + opts.extra_pairs).min(op.dim() - 1);
            let eig = solve(&op, solver(k, Which::LargestMagnitude), k)?;
            let mut used: Vec<usize> = (1..eig.values.len())
                .filter(|&i| is_real(eig.values[i]))
                .take(q - 1)
                .collect();
            let real_found = used.len();
            for i in 1..eig.values.len() {
                if used.len() == q - 1 {
                    break;
                }
                if !used.contains(&i) {
                    used.push(i);
                }
            }
            if used.len() < q - 1 {
                return Err(Error::InvalidParams(format!(
                    "only {} eigenpairs available for q = {q}",
                    used.len()
                )));
            }
            conventions.push(("operator", "reduced non-backtracking, transposed".into()));
            conventions.push(("embedding", "first n coordinates".into()));
            conventions.push((
                "eigenpairs",
                format!("largest-modulus real after the leading; {real_found} real found"),
            ));
            let (emb, ok) = match embed(&eig, g, EmbedSource::VertexSpace, &used) {
                Ok(emb) => (emb, true),
                Err(Error::NotConverged { .. } | Error::ComplexEigenvector(_)) => {
                    (embed_real_parts(&eig, g, EmbedSource::VertexSpace, &used)?, false)
                }
                Err(e) => return Err(e),
            };
            (eig, used, emb, ok && real_found == q - 1)
        }
        Method::Classical(kind) => {
            let (eig, used, rows) = classical_pairs(g, kind, q, &solver, &solve, &mut conventions)?;
            let vectors = eig.vectors.as_ref().expect("solver returns vectors");
            let columns: Vec<Vec<f64>> = used
                .iter()
                .map(|&i| {
                    let mut col = vec![0.0; g.n()];
                    for (r, z) in rows.iter().zip(&vectors[i]) {
                        col[*r] = z.re;
                    }
                    let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > 0.0 {
                        col.iter_mut().for_each(|x| *x /= norm);
                    }
                    col
                })
                .collect();
            let ok = used.iter().all(|&i| eig.converged[i] && is_real(eig.values[i]));
            (eig, used, VertexEmbedding::from_columns(&columns)?, ok)
        }
    };
    conventions.push(("converged", converged.to_string()));

    let labeling = if q == 2 {
        sign_labels(&emb)?
    } else {
        kmeans(&emb, q, derive_seed(opts.seed, 1), opts.kmeans_restarts)?.labeling
    };
    Ok(SpectralOutcome {
        labeling,
        eigenvalues: eig.values,
        used,
        converged,
        conventions,
    })
}

type Solver<'a> = dyn Fn(usize, Which) -> SolverOpts + 'a;
type Solve<'a> = dyn Fn(&dyn LinearOperator, SolverOpts, usize) -> Result<EigenResult> + 'a;

/// Eigenpairs for a classical operator, the indices to embed, and the
/// vertex id of each vector coordinate.
fn classical_pairs(
    g: &Graph,
    kind: ClassicalKind,
    q: usize,
    solver: &Solver<'_>,
    solve: &Solve<'_>,
    conventions: &mut Vec<(&'static str, String)>,
) -> Result<(EigenResult, Vec<usize>, Vec<usize>)> {
    let all: Vec<usize> = (0..g.n()).collect();
    let too_small = |dim: usize, k: usize| {
        if k >= dim {
            Err(Error::InvalidParams(format!(
                "need {k} eigenpairs of a {dim}-dimensional operator"
            )))
        } else {
            Ok(())
        }
    };
    match kind {
        ClassicalKind::Adjacency => {
            too_small(g.n(), q)?;
            let op = classical_operator(g, kind)?;
            let eig = solve(&op, solver(q, Which::LargestReal), q)?;
            conventions.push(("eigenpairs", "2nd through q-th largest".into()));
            Ok((eig, (1..q).collect(), all))
        }
        ClassicalKind::Modularity => {
            too_small(g.n(), q - 1)?;
            let op = classical_operator(g, kind)?;
            let eig = solve(&op, solver(q - 1, Which::LargestReal), q - 1)?;
            conventions.push(("eigenpairs", "1st through (q-1)-th largest".into()));
            Ok((eig, (0..q - 1).collect(), all))
        }
        ClassicalKind::Laplacian => {
            too_small(g.n(), q)?;
            let shift = 2.0 * g.max_degree() as f64 + 1.0;
            let op = Shifted {
                op: classical_operator(g, kind)?,
                shift,
            };
            let eig = solve(&op, solver(q, Which::LargestReal), q)?;
            conventions.push(("eigenpairs", "2nd through q-th smallest".into()));
            conventions.push(("spectral_shift", format!("{shift}")));
            Ok((eig, (1..q).collect(), all))
        }
        ClassicalKind::RandomWalk => {
            let rows = g.non_isolated();
            too_small(rows.len(), q)?;
            let sub = g.induced(&rows);
            let op = classical_operator(&sub, kind)?;
            let eig = solve(&op, solver(q, Which::LargestReal), q)?;
            conventions.push(("eigenpairs", "2nd through q-th largest".into()));
            conventions.push(("isolated_vertices", "excluded; zero embedding row".into()));
            Ok((eig, (1..q).collect(), rows))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::overlap;
    use crate::graph::{sbm_sample, SbmParams};

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(Method::from_name(m.name()), Some(m));
        }
        assert_eq!(Method::from_name("bp"), None);
    }

    #[test]
    fn dense_two_group_graph_is_easy_for_all() {
        let params = SbmParams::planted(600, 2, 24.0, 2.0).unwrap();
        let lg = sbm_sample(&params, 2).unwrap();
        let truth = Labeling::new(lg.labels.clone(), 2).unwrap();
        for m in Method::ALL {
            let out = spectral_cluster(&lg.graph, m, &SpectralOpts::new(2, 5)).unwrap();
            let ov = overlap(&truth, &out.labeling).unwrap();
            assert!(ov > 0.8, "{}: overlap {ov}", m.name());
        }
    }

    #[test]
    fn three_groups_use_kmeans() {
        let params = SbmParams::planted(900, 3, 30.0, 2.0).unwrap();
        let lg = sbm_sample(&params, 8).unwrap();
        let truth = Labeling::new(lg.labels.clone(), 3).unwrap();
        let out = spectral_cluster(&lg.graph, Method::NonBacktracking, &SpectralOpts::new(3, 1)).unwrap();
        assert_eq!(out.used.len(), 2);
        assert!(out.converged);
        assert!(overlap(&truth, &out.labeling).unwrap() > 0.9);
        assert!(out.conventions.iter().any(|(k, _)| *k == "labeling"));
    }

    #[test]
    fn empty_graph_is_refused() {
        let g = Graph::empty(10);
        assert!(matches!(
            spectral_cluster(&g, Method::NonBacktracking, &SpectralOpts::new(2, 0)),
            Err(Error::EmptyGraph)
        ));
    }
}
