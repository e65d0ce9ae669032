//! The single-graph subcommands: generate, spectrum, cluster and bp.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;

use nonbacktracking::bp::{bp_run, BpOpts};
use nonbacktracking::cluster::{overlap, spectral_cluster, Labeling, Method, SpectralOpts};
use nonbacktracking::eigen::{
    dense_spectrum, real_eigs_outside_bulk, topk_eigs, SolverOpts, Which, DENSE_LIMIT,
};
use nonbacktracking::graph::sbm_sample;
use nonbacktracking::operators::{build_b, build_b_prime, classical_operator, ClassicalKind, LinearOperator};
use nonbacktracking::rng::derive_seed;
use nonbacktracking::{EigenResult, Graph};

use crate::error::{CliError, Result};
use crate::files::{self, Header};
use crate::model::PlantedModel;

/// Margin above `sqrt(mu_1)` for counting real eigenvalues as outside the bulk.
pub const BULK_DELTA: f64 = 0.02;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerateSummary {
    pub n: usize,
    pub m: usize,
    pub mean_degree: f64,
    pub edges: PathBuf,
    pub labels: PathBuf,
}

/// Samples a planted block model into `<prefix>.edges` and `<prefix>.labels`.
pub fn generate(model: &PlantedModel, seed: u64, prefix: &Path) -> Result<GenerateSummary> {
    let lg = sbm_sample(&model.sbm()?, seed)?;
    let mut header = Header::new("generate", seed);
    header.push("model", "planted block model");
    header.push("params", model.to_json());
    let edges = with_suffix(prefix, "edges");
    let labels = with_suffix(prefix, "labels");
    files::write_graph(&edges, &lg.graph, &header)?;
    files::write_label_file(&labels, &lg.labels, &header)?;
    let g = &lg.graph;
    Ok(GenerateSummary {
        n: g.n(),
        m: g.m(),
        mean_degree: if g.n() == 0 {
            0.0
        } else {
            2.0 * g.m() as f64 / g.n() as f64
        },
        edges,
        labels,
    })
}

pub fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SpectrumOperator {
    /// Non-backtracking operator on directed edges.
    Nb,
    /// The 2n x 2n reduced form with the same non-trivial spectrum.
    NbReduced,
    Adjacency,
    Laplacian,
    RandomWalk,
    Modularity,
}

impl SpectrumOperator {
    pub fn name(self) -> &'static str {
        match self {
            SpectrumOperator::Nb => "nb",
            SpectrumOperator::NbReduced => "nb_reduced",
            SpectrumOperator::Adjacency => "adjacency",
            SpectrumOperator::Laplacian => "laplacian",
            SpectrumOperator::RandomWalk => "random_walk",
            SpectrumOperator::Modularity => "modularity",
        }
    }

    fn build<'g>(self, g: &'g Graph) -> Result<Box<dyn LinearOperator + 'g>> {
        let kind = match self {
            SpectrumOperator::Nb => return Ok(Box::new(build_b(g))),
            SpectrumOperator::NbReduced => return Ok(Box::new(build_b_prime(g))),
            SpectrumOperator::Adjacency => ClassicalKind::Adjacency,
            SpectrumOperator::Laplacian => ClassicalKind::Laplacian,
            SpectrumOperator::RandomWalk => ClassicalKind::RandomWalk,
            SpectrumOperator::Modularity => ClassicalKind::Modularity,
        };
        Ok(Box::new(classical_operator(g, kind)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMode {
    Dense,
    TopK(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BulkSummary {
    pub leading: f64,
    /// `sqrt(leading)`.
    pub radius: f64,
    pub delta: f64,
    pub real_outside: Vec<f64>,
    pub real_outside_count: usize,
}

/// Semicircle overlay for adjacency spectra: density
/// `sqrt(4c - x^2) / (2 pi c)` on `[-2 sqrt c, 2 sqrt c]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemicircleOverlay {
    pub mean_degree: f64,
    pub center: f64,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumDoc {
    pub command: &'static str,
    pub seed: u64,
    pub graph: String,
    /// Header of the input graph file, so generator parameters travel along.
    pub source: Vec<(String, String)>,
    pub operator: &'static str,
    pub mode: &'static str,
    pub k: Option<usize>,
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    /// `[re, im]`, descending modulus.
    pub eigenvalues: Vec<[f64; 2]>,
    pub residuals: Option<Vec<f64>>,
    pub converged: Option<Vec<bool>>,
    /// Absent when the leading eigenvalue is not real and positive.
    pub bulk: Option<BulkSummary>,
    pub semicircle: Option<SemicircleOverlay>,
}

impl SpectrumDoc {
    pub fn values(&self) -> Vec<Complex64> {
        self.eigenvalues
            .iter()
            .map(|z| Complex64::new(z[0], z[1]))
            .collect()
    }
}

/// Dense or top-`k` spectrum of one operator with bulk metadata.
pub fn spectrum(
    g: &Graph,
    source: &Header,
    graph_label: &str,
    operator: SpectrumOperator,
    mode: SpectrumMode,
    seed: u64,
) -> Result<SpectrumDoc> {
    let op = operator.build(g)?;
    let dim = op.dim();
    if dim == 0 {
        return Err(CliError::Usage(format!(
            "{} operator of an empty graph",
            operator.name()
        )));
    }
    let res: EigenResult = match mode {
        SpectrumMode::Dense => {
            if dim > DENSE_LIMIT {
                return Err(CliError::Usage(format!(
                    "dense mode needs dimension <= {DENSE_LIMIT}, {} operator has {dim}",
                    operator.name()
                )));
            }
            dense_spectrum(op.as_ref())?
        }
        SpectrumMode::TopK(k) => {
            if k == 0 || k >= dim {
                return Err(CliError::Usage(format!("k = {k} must lie in 1..{dim}")));
            }
            let opts = SolverOpts::new(k)
                .with_seed(derive_seed(seed, 0))
                .with_which(Which::LargestMagnitude);
            topk_eigs(op.as_ref(), &opts)?
        }
    };
    let mut order: Vec<usize> = (0..res.values.len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (res.values[i], res.values[j]);
        b.norm()
            .total_cmp(&a.norm())
            .then(b.re.total_cmp(&a.re))
            .then(b.im.total_cmp(&a.im))
    });
    let values: Vec<Complex64> = order.iter().map(|&i| res.values[i]).collect();
    let bulk = real_eigs_outside_bulk(&values, BULK_DELTA)
        .ok()
        .map(|split| BulkSummary {
            leading: split.leading,
            radius: split.radius,
            delta: BULK_DELTA,
            real_outside_count: split.q_estimate(),
            real_outside: split.outside,
        });
    let semicircle = (operator == SpectrumOperator::Adjacency).then(|| {
        let c = if g.n() == 0 {
            0.0
        } else {
            2.0 * g.m() as f64 / g.n() as f64
        };
        SemicircleOverlay {
            mean_degree: c,
            center: 0.0,
            radius: 2.0 * c.sqrt(),
        }
    });
    let topk = matches!(mode, SpectrumMode::TopK(_));
    Ok(SpectrumDoc {
        command: "spectrum",
        seed,
        graph: graph_label.to_string(),
        source: source.entries().to_vec(),
        operator: operator.name(),
        mode: if topk { "topk" } else { "dense" },
        k: match mode {
            SpectrumMode::TopK(k) => Some(k),
            SpectrumMode::Dense => None,
        },
        n: g.n(),
        m: g.m(),
        dim,
        eigenvalues: values.iter().map(|z| [z.re, z.im]).collect(),
        residuals: topk.then(|| order.iter().map(|&i| res.residuals[i]).collect()),
        converged: topk.then(|| order.iter().map(|&i| res.converged[i]).collect()),
        bulk,
        semicircle,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ClusterMethod {
    Nb,
    Adjacency,
    Laplacian,
    RandomWalk,
    Modularity,
}

impl ClusterMethod {
    pub fn method(self) -> Method {
        match self {
            ClusterMethod::Nb => Method::NonBacktracking,
            ClusterMethod::Adjacency => Method::Classical(ClassicalKind::Adjacency),
            ClusterMethod::Laplacian => Method::Classical(ClassicalKind::Laplacian),
            ClusterMethod::RandomWalk => Method::Classical(ClassicalKind::RandomWalk),
            ClusterMethod::Modularity => Method::Classical(ClassicalKind::Modularity),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterReport {
    pub command: &'static str,
    pub seed: u64,
    pub graph: String,
    pub method: &'static str,
    pub q: usize,
    pub n: usize,
    pub m: usize,
    pub overlap: Option<f64>,
    pub converged: bool,
    /// Eigenvalues behind the embedding columns, `[re, im]`.
    pub embedding_eigenvalues: Vec<[f64; 2]>,
    pub conventions: Vec<(String, String)>,
    #[serde(skip)]
    pub labels: Vec<usize>,
}

fn truth_labeling(truth: &[usize], n: usize, q: usize) -> Result<Labeling> {
    if truth.len() != n {
        return Err(CliError::Usage(format!(
            "truth has {} labels for {n} vertices",
            truth.len()
        )));
    }
    let q_truth = truth.iter().max().map_or(1, |&x| x + 1).max(q);
    Ok(Labeling::new(truth.to_vec(), q_truth)?)
}

/// Score against `truth` when the group counts agree.
fn score(truth: Option<&[usize]>, pred: &Labeling) -> Result<Option<f64>> {
    truth
        .map(|t| {
            let t = truth_labeling(t, pred.len(), pred.q)?;
            if t.q != pred.q {
                return Err(CliError::Usage(format!(
                    "truth has {} groups, run used q = {}",
                    t.q, pred.q
                )));
            }
            Ok(overlap(&t, pred)?)
        })
        .transpose()
}

/// Full spectral pipeline on one graph.
pub fn cluster(
    g: &Graph,
    graph_label: &str,
    method: ClusterMethod,
    q: usize,
    seed: u64,
    truth: Option<&[usize]>,
) -> Result<ClusterReport> {
    if q < 2 {
        return Err(CliError::Usage(format!("q = {q}; clustering needs q >= 2")));
    }
    let out = spectral_cluster(g, method.method(), &SpectralOpts::new(q, seed))?;
    Ok(ClusterReport {
        command: "cluster",
        seed,
        graph: graph_label.to_string(),
        method: method.method().name(),
        q,
        n: g.n(),
        m: g.m(),
        overlap: score(truth, &out.labeling)?,
        converged: out.converged,
        embedding_eigenvalues: out
            .used
            .iter()
            .map(|&i| [out.eigenvalues[i].re, out.eigenvalues[i].im])
            .collect(),
        conventions: out
            .conventions
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect(),
        labels: out.labeling.labels,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BpReport {
    pub command: &'static str,
    pub seed: u64,
    pub graph: String,
    pub params: PlantedModel,
    pub damping: f64,
    pub tol: f64,
    pub max_sweeps: usize,
    pub converged: bool,
    pub sweeps: usize,
    pub last_change: f64,
    pub overlap: Option<f64>,
    #[serde(skip)]
    pub labels: Vec<usize>,
    /// Row-major `n x q`.
    #[serde(skip)]
    pub marginals: Vec<f64>,
}

/// Belief propagation with the generating parameters.
pub fn bp(
    g: &Graph,
    graph_label: &str,
    model: &PlantedModel,
    opts: &BpOpts,
    truth: Option<&[usize]>,
) -> Result<BpReport> {
    if model.n != g.n() {
        return Err(CliError::Usage(format!(
            "params give n = {} but the graph has {}",
            model.n,
            g.n()
        )));
    }
    let out = bp_run(g, &model.sbm()?, opts)?;
    Ok(BpReport {
        command: "bp",
        seed: opts.seed,
        graph: graph_label.to_string(),
        params: *model,
        damping: opts.damping,
        tol: opts.tol,
        max_sweeps: opts.max_sweeps,
        converged: out.converged,
        sweeps: out.sweeps,
        last_change: out.last_change,
        overlap: score(truth, &out.labeling)?,
        labels: out.labeling.labels,
        marginals: out.marginals,
    })
}

/// Marginal rows, one vertex per line, 17 significant digits.
pub fn marginals_text(marginals: &[f64], q: usize) -> String {
    let mut s = String::new();
    for row in marginals.chunks(q) {
        let cells: Vec<String> = row.iter().map(|&x| files::fmt_float(x)).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}
