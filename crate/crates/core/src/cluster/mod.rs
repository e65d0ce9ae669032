//! From eigenvectors to community labels, and scoring against a planted
//! partition.

mod assignment;
mod kmeans;
mod overlap;
mod pipeline;

pub use assignment::max_weight_assignment;
pub use kmeans::{kmeans, KMeans};
pub use overlap::overlap;
pub use pipeline::{spectral_cluster, Method, SpectralOpts, SpectralOutcome};

use crate::eigen::EigenResult;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex coordinates, one row per vertex, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexEmbedding {
    n: usize,
    dim: usize,
    points: Vec<f64>,
}

impl VertexEmbedding {
    /// Builds an embedding from columns of equal length.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let dim = columns.len();
        if dim == 0 {
            return Err(Error::InvalidParams("embedding needs at least one column".into()));
        }
        let n = columns[0].len();
        if let Some(c) = columns.iter().find(|c| c.len() != n) {
            return Err(Error::LengthMismatch(c.len(), n));
        }
        if columns.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("embedding has non-finite entries".into()));
        }
        let mut points = vec![0.0; n * dim];
        for (j, col) in columns.iter().enumerate() {
            for (v, &x) in col.iter().enumerate() {
                points[v * dim + j] = x;
            }
        }
        Ok(VertexEmbedding { n, dim, points })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, v: usize) -> &[f64] {
        &self.points[v * self.dim..(v + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|v| self.points[v * self.dim + j]).collect()
    }

    pub fn negated(&self) -> Self {
        VertexEmbedding {
            points: self.points.iter().map(|x| -x).collect(),
            ..self.clone()
        }
    }
}

/// Group assignment in `0..q` for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub labels: Vec<usize>,
    pub q: usize,
}

impl Labeling {
    pub fn new(labels: Vec<usize>, q: usize) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l >= q) {
            return Err(Error::InvalidParams(format!("label {bad} >= q = {q}")));
        }
        Ok(Labeling { labels, q })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Where eigenvectors live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EmbedSource {
    /// Directed-edge vectors of length `2m`; each vertex sums its incoming
    /// edges.
    EdgeSpace,
    /// Vectors of length `2n` from the reduced operator's transpose; the
    /// first `n` coordinates are the vertex values.
    VertexSpace,
}

/// Embeds the eigenvectors at `indices` of `eig`, one column each,
/// normalized to unit Euclidean norm.
///
/// Every requested pair must be converged and real (imaginary norm at most
/// `1e-6` of the vector norm).
pub fn embed(
    eig: &EigenResult,
    graph: &Graph,
    source: EmbedSource,
    indices: &[usize],
) -> Result<VertexEmbedding> {
    for &i in indices {
        if !eig.converged.get(i).copied().unwrap_or(false) {
            return Err(Error::NotConverged {
                index: i,
                residual: eig.residuals.get(i).copied().unwrap_or(f64::NAN),
            });
        }
        let v = eig
            .vectors
            .as_ref()
            .ok_or_else(|| Error::InvalidParams("no eigenvectors were computed".into()))?
            .get(i)
            .ok_or_else(|| Error::InvalidParams(format!("no eigenvector {i}")))?;
        let im: f64 = v.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
        let total: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if im > 1e-6 * total {
            return Err(Error::ComplexEigenvector(eig.values[i]));
        }
    }
    embed_real_parts(eig, graph, source, indices)
}

/// As [`embed`] but uses real parts without checking convergence or
/// reality.
pub(crate) fn embed_real_parts(
    eig: &EigenResult,
    graph: &Graph,
    source: EmbedSource,
    indices: &[usize],
) -> Result<VertexEmbedding> {
    let vectors = eig
        .vectors
        .as_ref()
        .ok_or_else(|| Error::InvalidParams("no eigenvectors were computed".into()))?;
    let n = graph.n();
    let mut columns = Vec::with_capacity(indices.len());
    for &i in indices {
        let v: Vec<f64> = vectors[i].iter().map(|z| z.re).collect();
        let col = match source {
            EmbedSource::EdgeSpace => {
                if v.len() != graph.num_directed() {
                    return Err(Error::LengthMismatch(v.len(), graph.num_directed()));
                }
                incoming_sums(graph, &v)
            }
            EmbedSource::VertexSpace => {
                if v.len() != 2 * n {
                    return Err(Error::LengthMismatch(v.len(), 2 * n));
                }
                v[..n].to_vec()
            }
        };
        columns.push(unit(col));
    }
    VertexEmbedding::from_columns(&columns)
}

/// `f_v = sum of g(u->v) over the neighbours u of v`.
pub fn incoming_sums(graph: &Graph, g: &[f64]) -> Vec<f64> {
    (0..graph.n())
        .map(|v| graph.out_edges(v).map(|e| g[graph.reverse(e)]).sum())
        .collect()
}

fn unit(mut v: Vec<f64>) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    v
}

/// Two groups by sign: positive entries get label 0, negative entries
/// label 1, exact zeros label 0.
pub fn sign_labels(emb: &VertexEmbedding) -> Result<Labeling> {
    if emb.dim() != 1 {
        return Err(Error::InvalidParams(format!(
            "sign labels need one column, got {}",
            emb.dim()
        )));
    }
    let labels = (0..emb.n()).map(|v| usize::from(emb.row(v)[0] < 0.0)).collect();
    Ok(Labeling { labels, q: 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{topk_eigs, SolverOpts};
    use crate::graph::{sbm_sample, SbmParams};
    use crate::operators::{build_b, build_b_prime, LinearOperator, Transposed};

    fn spins(labels: &[usize]) -> Vec<f64> {
        labels.iter().map(|&l| if l == 0 { 1.0 } else { -1.0 }).collect()
    }

    #[test]
    fn uniform_edge_vector_gives_degrees() {
        let g = crate::graph::families::star(3);
        let f = incoming_sums(&g, &vec![1.0; g.num_directed()]);
        assert_eq!(f, vec![3.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn sign_labels_recover_spins() {
        let truth = Labeling::new(vec![0, 0, 1, 1, 0], 2).unwrap();
        let sigma = spins(&truth.labels);
        let emb = VertexEmbedding::from_columns(&[sigma]).unwrap();
        assert_eq!(overlap(&truth, &sign_labels(&emb).unwrap()).unwrap(), 1.0);
        assert_eq!(
            overlap(&truth, &sign_labels(&emb.negated()).unwrap()).unwrap(),
            1.0
        );
        let zero = VertexEmbedding::from_columns(&[vec![0.0; 4]]).unwrap();
        let lab = sign_labels(&zero).unwrap();
        assert_eq!(lab.labels, vec![0; 4]);
        let truth = Labeling::new(vec![0, 0, 1, 1], 2).unwrap();
        assert_eq!(overlap(&truth, &lab).unwrap(), 0.0);
    }

    #[test]
    fn sign_labels_need_one_column() {
        let emb = VertexEmbedding::from_columns(&[vec![1.0], vec![2.0]]).unwrap();
        assert!(sign_labels(&emb).is_err());
    }

    #[test]
    fn rejects_complex_vectors() {
        let g = crate::graph::families::cycle(5);
        let b = build_b(&g);
        let res = crate::eigen::dense_spectrum_with_vectors(&b, 10).unwrap();
        let idx = res.values.iter().position(|z| z.im.abs() > 0.1).unwrap();
        assert!(matches!(
            embed(&res, &g, EmbedSource::EdgeSpace, &[idx]),
            Err(Error::ComplexEigenvector(_))
        ));
    }

    #[test]
    fn edge_and_vertex_embeddings_agree() {
        let params = SbmParams::planted(5000, 2, 6.0, 0.5).unwrap();
        for seed in 0..10 {
            let lg = sbm_sample(&params, seed).unwrap();
            let g = &lg.graph;
            let opts = SolverOpts::new(2).with_seed(seed);
            let edge = topk_eigs(&Transposed(build_b(g)), &opts).unwrap();
            let vertex = topk_eigs(&Transposed(build_b_prime(g)), &opts).unwrap();
            assert!((edge.values[1] - vertex.values[1]).norm() < 1e-6);
            let a = embed(&edge, g, EmbedSource::EdgeSpace, &[1]).unwrap().column(0);
            let b = embed(&vertex, g, EmbedSource::VertexSpace, &[1])
                .unwrap()
                .column(0);
            let cos: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
            assert!(cos.abs() > 0.99, "seed {seed}: cosine {cos}");
        }
    }

    #[test]
    fn one_message_pass_keeps_sign_pattern() {
        let params = SbmParams::planted(10_000, 2, 5.0, 1.0).unwrap();
        let lg = sbm_sample(&params, 3).unwrap();
        let g = &lg.graph;
        let sigma = spins(&lg.labels);
        // each message carries its sender's spin
        let planted: Vec<f64> = (0..g.num_directed()).map(|e| sigma[g.tail(e)]).collect();
        let before = incoming_sums(g, &planted);
        let after = incoming_sums(g, &build_b(g).apply_transpose(&planted));
        // zeros carry no sign and are skipped
        let (mut agree, mut counted) = (0, 0);
        for v in 0..g.n() {
            if before[v] != 0.0 && after[v] != 0.0 {
                counted += 1;
                agree += usize::from((before[v] > 0.0) == (after[v] > 0.0));
            }
        }
        let frac = agree as f64 / counted as f64;
        assert!(frac > 0.9, "agreement {frac}");
    }
}
