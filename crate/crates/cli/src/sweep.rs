//! Parameter sweeps over planted block models.
//!
//! Tasks are `(grid point, seed index)` pairs. Each task samples one graph
//! and runs every requested algorithm on it. Seeds are derived from the
//! base seed and the task coordinates, so results do not depend on the
//! worker count. Workers hand finished tasks to a single collector that
//! writes them in task order and flushes after each one; an interrupted
//! sweep leaves a valid prefix that a rerun with the same spec resumes.
//!
//! Companion files: `<out>.summary.csv` (mean and standard error per grid
//! point and algorithm) and `<out>.timing.csv` (wall time per task and
//! algorithm, kept apart so the main CSV is reproducible byte for byte).

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use nonbacktracking::bp::{bp_run, BpOpts};
use nonbacktracking::cluster::{overlap, spectral_cluster, Labeling, Method, SpectralOpts};
use nonbacktracking::eigen::{topk_eigs, SolverOpts, Which};
use nonbacktracking::graph::sbm_sample;
use nonbacktracking::operators::{build_b_prime, ClassicalKind};
use nonbacktracking::rng::derive_seed;
use nonbacktracking::Graph;
use nonbacktracking::LinearOperator;

use crate::commands::with_suffix;
use crate::error::{CliError, Result};
use crate::files::{fmt_float, Header};
use crate::model::PlantedModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Nb,
    Adjacency,
    Laplacian,
    RandomWalk,
    Modularity,
    Bp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Nb,
        Algorithm::Adjacency,
        Algorithm::Laplacian,
        Algorithm::RandomWalk,
        Algorithm::Modularity,
        Algorithm::Bp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Nb => "nb",
            Algorithm::Adjacency => "adjacency",
            Algorithm::Laplacian => "laplacian",
            Algorithm::RandomWalk => "random_walk",
            Algorithm::Modularity => "modularity",
            Algorithm::Bp => "bp",
        }
    }

    fn spectral(self) -> Option<Method> {
        match self {
            Algorithm::Nb => Some(Method::NonBacktracking),
            Algorithm::Adjacency => Some(Method::Classical(ClassicalKind::Adjacency)),
            Algorithm::Laplacian => Some(Method::Classical(ClassicalKind::Laplacian)),
            Algorithm::RandomWalk => Some(Method::Classical(ClassicalKind::RandomWalk)),
            Algorithm::Modularity => Some(Method::Classical(ClassicalKind::Modularity)),
            Algorithm::Bp => None,
        }
    }
}

/// What the grid varies and what stays fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "vary", rename_all = "snake_case")]
pub enum Axis {
    /// Grid values are `c_in - c_out` at mean degree `c`.
    Difference { c: f64 },
    /// Grid values are the mean degree at fixed `c_out / c_in`.
    Ratio { ratio: f64 },
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Difference { .. } => "difference",
            Axis::Ratio { .. } => "ratio",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: Axis,
    pub grid: Vec<f64>,
    pub n: usize,
    pub q: usize,
    pub seeds: usize,
    pub algorithms: Vec<Algorithm>,
    pub base_seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CliError::Usage(msg));
        if self.grid.is_empty() {
            return bad("sweep grid is empty".into());
        }
        if self.seeds == 0 {
            return bad("sweep needs at least one seed".into());
        }
        if self.q < 2 {
            return bad(format!("q = {}; sweeps need q >= 2", self.q));
        }
        if self.algorithms.is_empty() {
            return bad("no algorithms selected".into());
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].contains(a) {
                return bad(format!("algorithm {} listed twice", a.name()));
            }
        }
        for i in 0..self.grid.len() {
            self.model_at(i).sbm()?;
        }
        Ok(())
    }

    pub fn model_at(&self, point: usize) -> PlantedModel {
        let x = self.grid[point];
        match self.axis {
            Axis::Difference { c } => PlantedModel::with_difference(self.n, self.q, c, x),
            Axis::Ratio { ratio } => PlantedModel::with_ratio(self.n, self.q, x, ratio),
        }
    }

    pub fn num_tasks(&self) -> usize {
        self.grid.len() * self.seeds
    }

    fn task(&self, t: usize) -> (usize, usize) {
        (t / self.seeds, t % self.seeds)
    }

    pub fn graph_seed(&self, point: usize, seed_index: usize) -> u64 {
        derive_seed(derive_seed(self.base_seed, point as u64), seed_index as u64)
    }
}

fn sci<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_float(*x))
}

/// One row of the sweep CSV: a graph, an algorithm and what it measured.
///
/// `mu1`, `mu2` and `mu3_abs` describe the graph: the real part of the two
/// largest-modulus non-backtracking eigenvalues and the modulus of the
/// third, shared by all rows of a task.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub point: usize,
    pub vary: String,
    #[serde(serialize_with = "sci")]
    pub value: f64,
    pub n: usize,
    pub q: usize,
    #[serde(serialize_with = "sci")]
    pub c: f64,
    #[serde(serialize_with = "sci")]
    pub c_in: f64,
    #[serde(serialize_with = "sci")]
    pub c_out: f64,
    pub seed_index: usize,
    pub graph_seed: u64,
    pub algorithm_seed: u64,
    pub algorithm: Algorithm,
    #[serde(serialize_with = "sci")]
    pub overlap: f64,
    pub converged: bool,
    #[serde(serialize_with = "sci")]
    pub mu1: f64,
    #[serde(serialize_with = "sci")]
    pub mu2: f64,
    #[serde(serialize_with = "sci")]
    pub mu3_abs: f64,
    /// `ok` or the error that stopped the algorithm.
    pub status: String,
    /// Written to the timing companion, not the main CSV.
    #[serde(skip)]
    pub wall_seconds: f64,
}

pub const CSV_HEADER: &str = "point,vary,value,n,q,c,c_in,c_out,seed_index,graph_seed,algorithm_seed,algorithm,overlap,converged,mu1,mu2,mu3_abs,status";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub point: usize,
    #[serde(serialize_with = "sci")]
    pub value: f64,
    #[serde(serialize_with = "sci")]
    pub c_in: f64,
    #[serde(serialize_with = "sci")]
    pub c_out: f64,
    pub algorithm: Algorithm,
    /// Rows with status `ok`.
    pub runs: usize,
    #[serde(serialize_with = "sci")]
    pub overlap_mean: f64,
    #[serde(serialize_with = "sci")]
    pub overlap_stderr: f64,
    #[serde(serialize_with = "sci")]
    pub mu1_mean: f64,
    #[serde(serialize_with = "sci")]
    pub mu2_mean: f64,
    #[serde(serialize_with = "sci")]
    pub mu3_abs_mean: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub csv: PathBuf,
    pub summary_csv: PathBuf,
    pub timing_csv: PathBuf,
    pub tasks_resumed: usize,
    pub tasks_run: usize,
    pub summary: Vec<SummaryRow>,
}

/// Top three eigenvalues by modulus of the reduced non-backtracking operator.
fn leading_three(g: &Graph, seed: u64) -> Vec<Complex64> {
    if g.n() < 2 {
        return Vec::new();
    }
    let op = build_b_prime(g);
    let k = 3.min(op.dim() - 1);
    let opts = SolverOpts::new(k)
        .with_seed(derive_seed(seed, 0))
        .with_which(Which::LargestMagnitude);
    topk_eigs(&op, &opts).map(|r| r.values).unwrap_or_default()
}

fn mu_triplet(values: &[Complex64]) -> (f64, f64, f64) {
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.norm().total_cmp(&a.norm()).then(b.re.total_cmp(&a.re)));
    let at = |i: usize| v.get(i).copied();
    (
        at(0).map_or(f64::NAN, |z| z.re),
        at(1).map_or(f64::NAN, |z| z.re),
        at(2).map_or(f64::NAN, |z| z.norm()),
    )
}

fn one_line(msg: String) -> String {
    format!("error: {}", msg.replace(['\n', '\r'], " "))
}

/// Samples the task's graph and runs every algorithm on it.
pub fn run_task(spec: &SweepSpec, point: usize, seed_index: usize) -> Result<Vec<RunRecord>> {
    let model = spec.model_at(point);
    let params = model.sbm()?;
    let graph_seed = spec.graph_seed(point, seed_index);
    let algorithm_seed = derive_seed(graph_seed, 1);
    let lg = sbm_sample(&params, graph_seed)?;
    let g = &lg.graph;
    let truth = Labeling::new(lg.labels.clone(), spec.q)?;

    let mut results = Vec::with_capacity(spec.algorithms.len());
    let mut nb_values: Option<Vec<Complex64>> = None;
    for &alg in &spec.algorithms {
        let start = Instant::now();
        let outcome = match alg.spectral() {
            Some(method) => {
                spectral_cluster(g, method, &SpectralOpts::new(spec.q, algorithm_seed)).map(|out| {
                    if alg == Algorithm::Nb {
                        nb_values = Some(out.eigenvalues.clone());
                    }
                    (out.labeling, out.converged)
                })
            }
            None => bp_run(g, &params, &BpOpts::new(algorithm_seed)).map(|out| (out.labeling, out.converged)),
        };
        let (ov, converged, status) = match outcome.and_then(|(lab, conv)| Ok((overlap(&truth, &lab)?, conv)))
        {
            Ok((ov, conv)) => (ov, conv, "ok".to_string()),
            Err(e) => (f64::NAN, false, one_line(e.to_string())),
        };
        results.push((alg, ov, converged, status, start.elapsed().as_secs_f64()));
    }
    let values = nb_values.unwrap_or_else(|| leading_three(g, algorithm_seed));
    let (mu1, mu2, mu3_abs) = mu_triplet(&values);

    Ok(results
        .into_iter()
        .map(
            |(algorithm, overlap, converged, status, wall_seconds)| RunRecord {
                point,
                vary: spec.axis.name().to_string(),
                value: spec.grid[point],
                n: spec.n,
                q: spec.q,
                c: model.mean_degree(),
                c_in: model.c_in,
                c_out: model.c_out,
                seed_index,
                graph_seed,
                algorithm_seed,
                algorithm,
                overlap,
                converged,
                mu1,
                mu2,
                mu3_abs,
                status,
                wall_seconds,
            },
        )
        .collect())
}

fn sweep_header(spec: &SweepSpec) -> Header {
    let mut h = Header::new("sweep", spec.base_seed);
    h.push("spec", serde_json::to_string(spec).expect("spec serializes"));
    h
}

fn csv_row(rec: &RunRecord) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.serialize(rec).map_err(|e| CliError::csv("<row>", e))?;
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Checks an existing output against `spec` and cuts it back to its last
/// complete task. Returns how many tasks it already holds.
fn prepare_resume(path: &Path, spec: &SweepSpec) -> Result<usize> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let want = sweep_header(spec);
    if Header::parse(&text).get("spec") != want.get("spec") {
        return Err(CliError::Usage(format!(
            "{} holds a different sweep; remove it or pick another output",
            path.display()
        )));
    }
    // only newline-terminated lines are complete
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    let lines: Vec<&str> = complete.split_inclusive('\n').collect();
    let preamble = lines.iter().take_while(|l| l.starts_with('#')).count();
    if lines.get(preamble).map(|l| l.trim_end()) != Some(CSV_HEADER) {
        return Err(CliError::Usage(format!(
            "{}: unexpected CSV header",
            path.display()
        )));
    }
    let data = lines.len() - preamble - 1;
    let per_task = spec.algorithms.len();
    let done = (data / per_task).min(spec.num_tasks());
    let keep: String = lines[..preamble + 1 + done * per_task].concat();
    if keep.len() != text.len() {
        fs::write(path, keep).map_err(|e| CliError::io(path, e))?;
    }
    Ok(done)
}

fn open_append(path: &Path) -> Result<BufWriter<File>> {
    OpenOptions::new()
        .append(true)
        .open(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

fn start_file(path: &Path, header: &Header, columns: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut w = BufWriter::new(File::create(path).map_err(|e| CliError::io(path, e))?);
    header
        .write_to(&mut w)
        .and_then(|_| writeln!(w, "{columns}"))
        .and_then(|_| w.flush())
        .map_err(|e| CliError::io(path, e))
}

/// Runs (or resumes) a sweep into `out`. `threads = 0` uses every core.
pub fn run_sweep(spec: &SweepSpec, out: &Path, threads: usize) -> Result<SweepOutcome> {
    spec.validate()?;
    let header = sweep_header(spec);
    let timing_path = with_suffix(out, "timing.csv");
    let done = if out.exists() {
        prepare_resume(out, spec)?
    } else {
        start_file(out, &header, CSV_HEADER)?;
        0
    };
    if !timing_path.exists() {
        start_file(&timing_path, &header, "point,seed_index,algorithm,wall_seconds")?;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let todo: Vec<usize> = (done..spec.num_tasks()).collect();
    let abort = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel::<(usize, Result<Vec<RunRecord>>)>();

    let collected: Result<()> = std::thread::scope(|scope| {
        let abort = &abort;
        let todo = &todo;
        let pool = &pool;
        scope.spawn(move || {
            pool.install(|| {
                todo.par_iter().for_each_with(tx, |tx, &t| {
                    if abort.load(Ordering::Relaxed) {
                        return;
                    }
                    let (point, seed_index) = spec.task(t);
                    let _ = tx.send((t, run_task(spec, point, seed_index)));
                });
            })
        });

        let mut csv_out = open_append(out)?;
        let mut timing_out = open_append(&timing_path)?;
        let mut pending = BTreeMap::new();
        let mut next = done;
        for (t, rows) in rx {
            pending.insert(t, rows);
            while let Some(rows) = pending.remove(&next) {
                let rows = match rows {
                    Ok(rows) => rows,
                    Err(e) => {
                        abort.store(true, Ordering::Relaxed);
                        return Err(e);
                    }
                };
                let mut chunk = String::new();
                let mut timing = String::new();
                for r in &rows {
                    chunk.push_str(&csv_row(r)?);
                    timing.push_str(&format!(
                        "{},{},{},{}\n",
                        r.point,
                        r.seed_index,
                        r.algorithm.name(),
                        fmt_float(r.wall_seconds)
                    ));
                }
                csv_out
                    .write_all(chunk.as_bytes())
                    .and_then(|_| csv_out.flush())
                    .map_err(|e| CliError::io(out, e))?;
                timing_out
                    .write_all(timing.as_bytes())
                    .and_then(|_| timing_out.flush())
                    .map_err(|e| CliError::io(&timing_path, e))?;
                next += 1;
            }
        }
        Ok(())
    });
    collected?;

    let records = read_records(out)?;
    let summary = summarize(spec, &records);
    let summary_path = with_suffix(out, "summary.csv");
    write_summary(&summary_path, &header, &summary)?;
    Ok(SweepOutcome {
        csv: out.to_path_buf(),
        summary_csv: summary_path,
        timing_csv: timing_path,
        tasks_resumed: done,
        tasks_run: todo.len(),
        summary,
    })
}

pub fn read_records(path: &Path) -> Result<Vec<RunRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::csv(path, e))?;
    rdr.deserialize()
        .collect::<std::result::Result<Vec<RunRecord>, _>>()
        .map_err(|e| CliError::csv(path, e))
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        f64::NAN
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

/// Standard error of the mean; zero for a single sample.
fn stderr(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => f64::NAN,
        1 => 0.0,
        k => {
            let m = mean(xs);
            let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (k - 1) as f64;
            (var / k as f64).sqrt()
        }
    }
}

pub fn summarize(spec: &SweepSpec, records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    for point in 0..spec.grid.len() {
        let model = spec.model_at(point);
        for &alg in &spec.algorithms {
            let ok: Vec<&RunRecord> = records
                .iter()
                .filter(|r| r.point == point && r.algorithm == alg && r.status == "ok")
                .collect();
            let col = |f: fn(&RunRecord) -> f64| -> Vec<f64> { ok.iter().map(|r| f(r)).collect() };
            let overlaps = col(|r| r.overlap);
            rows.push(SummaryRow {
                point,
                value: spec.grid[point],
                c_in: model.c_in,
                c_out: model.c_out,
                algorithm: alg,
                runs: ok.len(),
                overlap_mean: mean(&overlaps),
                overlap_stderr: stderr(&overlaps),
                mu1_mean: mean(&col(|r| r.mu1)),
                mu2_mean: mean(&col(|r| r.mu2)),
                mu3_abs_mean: mean(&col(|r| r.mu3_abs)),
            });
        }
    }
    rows
}

fn write_summary(path: &Path, header: &Header, rows: &[SummaryRow]) -> Result<()> {
    let mut body = Vec::new();
    header.write_to(&mut body).map_err(|e| CliError::io(path, e))?;
    let mut w = csv::Writer::from_writer(body);
    for r in rows {
        w.serialize(r).map_err(|e| CliError::csv(path, e))?;
    }
    let body = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    fs::write(path, body).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> SweepSpec {
        SweepSpec {
            axis: Axis::Difference { c: 3.0 },
            grid: vec![5.0],
            n: 400,
            q: 2,
            seeds: 2,
            algorithms: vec![Algorithm::Nb, Algorithm::Adjacency],
            base_seed: 9,
        }
    }

    #[test]
    fn validation_rejects_degenerate_specs() {
        let mut s = small_spec();
        s.grid.clear();
        assert!(s.validate().is_err());
        let mut s = small_spec();
        s.seeds = 0;
        assert!(s.validate().is_err());
        let mut s = small_spec();
        s.algorithms = vec![Algorithm::Nb, Algorithm::Nb];
        assert!(s.validate().is_err());
        let mut s = small_spec();
        s.grid = vec![7.0];
        assert!(s.validate().is_err(), "c_out would be negative");
        assert!(small_spec().validate().is_ok());
    }

    #[test]
    fn ratio_axis_varies_mean_degree() {
        let s = SweepSpec {
            axis: Axis::Ratio { ratio: 0.1 },
            grid: vec![2.0, 4.0],
            ..small_spec()
        };
        let m = s.model_at(1);
        assert!((m.mean_degree() - 4.0).abs() < 1e-12);
        assert!((m.c_out / m.c_in - 0.1).abs() < 1e-12);
    }

    #[test]
    fn task_seeds_are_distinct() {
        let s = SweepSpec {
            grid: vec![3.0, 4.0, 5.0],
            seeds: 5,
            ..small_spec()
        };
        let mut seen: Vec<u64> = (0..3)
            .flat_map(|p| (0..5).map(move |i| (p, i)))
            .map(|(p, i)| s.graph_seed(p, i))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 15);
    }

    #[test]
    fn header_matches_serialized_fields() {
        let rec = RunRecord {
            point: 0,
            vary: "difference".into(),
            value: 1.0,
            n: 1,
            q: 2,
            c: 1.0,
            c_in: 1.0,
            c_out: 1.0,
            seed_index: 0,
            graph_seed: 0,
            algorithm_seed: 0,
            algorithm: Algorithm::RandomWalk,
            overlap: 0.5,
            converged: true,
            mu1: f64::NAN,
            mu2: 0.0,
            mu3_abs: 0.0,
            status: "ok".into(),
            wall_seconds: 3.0,
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(&rec).unwrap();
        let text = String::from_utf8(w.into_inner().unwrap()).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row = lines.next().unwrap();
        assert!(
            row.contains(",random_walk,5.0000000000000000e-1,true,NaN,"),
            "{row}"
        );
        let back: RunRecord = csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .next()
            .unwrap()
            .unwrap();
        assert_eq!(back.overlap, 0.5);
        assert!(back.mu1.is_nan());
        assert_eq!(back.wall_seconds, 0.0);
    }

    #[test]
    fn stderr_of_constant_is_zero() {
        assert_eq!(stderr(&[0.3, 0.3, 0.3]), 0.0);
        assert_eq!(stderr(&[1.0]), 0.0);
        assert!((stderr(&[0.0, 2.0]) - 1.0).abs() < 1e-15);
        assert!(mean(&[]).is_nan());
    }

    #[test]
    fn mu_triplet_orders_by_modulus() {
        let v = [
            Complex64::new(2.0, 0.0),
            Complex64::new(3.0, 0.0),
            Complex64::new(0.0, 1.5),
        ];
        assert_eq!(mu_triplet(&v), (3.0, 2.0, 1.5));
        let (a, _, c) = mu_triplet(&v[..1]);
        assert_eq!(a, 2.0);
        assert!(c.is_nan());
    }

    #[test]
    fn resume_truncates_partial_tail() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("s.csv");
        let spec = small_spec();
        let first = run_sweep(&spec, &out, 1).unwrap();
        assert_eq!(first.tasks_run, 2);
        let full = fs::read_to_string(&out).unwrap();
        // drop the last task and half of a row
        let cut = full.lines().count() - 2;
        let mut partial: String = full.split_inclusive('\n').take(cut).collect();
        partial.push_str("0,difference,5.0");
        fs::write(&out, partial).unwrap();
        let second = run_sweep(&spec, &out, 1).unwrap();
        assert_eq!((second.tasks_resumed, second.tasks_run), (1, 1));
        assert_eq!(fs::read_to_string(&out).unwrap(), full);
        let other = SweepSpec {
            base_seed: 10,
            ..spec
        };
        assert!(matches!(run_sweep(&other, &out, 1), Err(CliError::Usage(_))));
    }
}
