use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nb_cli::commands::{self, ClusterMethod, SpectrumMode, SpectrumOperator};
use nb_cli::files::{self, Header};
use nb_cli::sweep::{run_sweep, Algorithm, Axis, SweepSpec};
use nb_cli::{CliError, PlantedModel, Result};
use nonbacktracking::bp::BpOpts;

/// Community detection in sparse graphs with the non-backtracking operator.
#[derive(Debug, Parser)]
#[command(name = "nb", version)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for sweeps; 0 uses every core.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Output path (a prefix for `generate`). Reports go to stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a planted block model into `<out>.edges` and `<out>.labels`.
    Generate(ModelArgs),
    /// Eigenvalues of one operator, with bulk and semicircle metadata.
    Spectrum {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = SpectrumOperator::NbReduced)]
        operator: SpectrumOperator,
        /// Compute only the `k` largest-modulus eigenvalues instead of all.
        #[arg(long)]
        topk: Option<usize>,
    },
    /// Spectral clustering; writes labels to `--out`.
    Cluster {
        graph: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = ClusterMethod::Nb)]
        method: ClusterMethod,
        /// Planted labels to score against.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Belief propagation; writes labels to `--out` and marginals next to it.
    Bp {
        graph: PathBuf,
        /// Model parameters; read from the graph header when omitted.
        #[command(flatten)]
        model: OptionalModel,
        #[arg(long, default_value_t = 0.0)]
        damping: f64,
        #[arg(long, default_value_t = 500)]
        max_sweeps: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Grid of planted models, several seeds each, every algorithm per graph.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    q: usize,
    #[arg(long)]
    c_in: f64,
    #[arg(long)]
    c_out: f64,
}

#[derive(Debug, Args)]
struct OptionalModel {
    #[arg(long, requires_all = ["q", "c_in", "c_out"])]
    n: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    c_in: Option<f64>,
    #[arg(long)]
    c_out: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Vary {
    Difference,
    Ratio,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value_t = Vary::Difference)]
    vary: Vary,
    /// Mean degree held fixed by a difference sweep.
    #[arg(long, default_value_t = 3.0)]
    c: f64,
    /// `c_out / c_in` held fixed by a ratio sweep.
    #[arg(long, default_value_t = 0.1)]
    ratio: f64,
    /// Grid values: `c_in - c_out`, or the mean degree for ratio sweeps.
    #[arg(long, value_delimiter = ',', required = true)]
    grid: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    q: usize,
    #[arg(long, default_value_t = 20)]
    seeds: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = Algorithm::ALL)]
    algorithms: Vec<Algorithm>,
}

fn label(path: &Path) -> String {
    path.display().to_string()
}

fn emit(out: Option<&Path>, header: Option<&Header>, body: &str) -> Result<()> {
    match out {
        Some(path) => files::write_text(path, header.unwrap_or(&Header::default()), body),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn json(value: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn need_out(out: Option<&Path>, what: &str) -> Result<PathBuf> {
    out.map(Path::to_path_buf)
        .ok_or_else(|| CliError::Usage(format!("{what} needs --out")))
}

fn run(cli: Cli) -> Result<()> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Generate(m) => {
            let prefix = need_out(out, "generate")?;
            let model = PlantedModel {
                n: m.n,
                q: m.q,
                c_in: m.c_in,
                c_out: m.c_out,
            };
            let s = commands::generate(&model, cli.seed, &prefix)?;
            println!("n {} m {} mean_degree {}", s.n, s.m, s.mean_degree);
        }
        Command::Spectrum {
            graph,
            operator,
            topk,
        } => {
            let g = files::load_graph(&graph)?;
            let source = Header::parse(&files::read_text(&graph)?);
            let mode = topk.map_or(SpectrumMode::Dense, SpectrumMode::TopK);
            let doc = commands::spectrum(&g, &source, &label(&graph), operator, mode, cli.seed)?;
            emit(out, None, &json(&doc)?)?;
        }
        Command::Cluster {
            graph,
            q,
            method,
            truth,
        } => {
            let g = files::load_graph(&graph)?;
            let truth = truth.as_deref().map(files::load_label_file).transpose()?;
            let report = commands::cluster(&g, &label(&graph), method, q, cli.seed, truth.as_deref())?;
            if let Some(path) = out {
                let mut h = Header::new("cluster", cli.seed);
                h.push("graph", &report.graph);
                h.push("method", report.method);
                h.push("q", q);
                h.push("conventions", serde_json::to_string(&report.conventions)?);
                files::write_label_file(path, &report.labels, &h)?;
            }
            print!("{}", json(&report)?);
        }
        Command::Bp {
            graph,
            model,
            damping,
            max_sweeps,
            tol,
            truth,
        } => {
            let g = files::load_graph(&graph)?;
            let model = match model {
                OptionalModel {
                    n: Some(n),
                    q: Some(q),
                    c_in: Some(c_in),
                    c_out: Some(c_out),
                } => PlantedModel { n, q, c_in, c_out },
                _ => PlantedModel::from_header(&Header::parse(&files::read_text(&graph)?))?.ok_or_else(
                    || {
                        CliError::Usage(
                            "bp needs --n --q --c-in --c-out or a graph header with params".into(),
                        )
                    },
                )?,
            };
            let opts = BpOpts {
                max_sweeps,
                tol,
                damping,
                seed: cli.seed,
            };
            let truth = truth.as_deref().map(files::load_label_file).transpose()?;
            let report = commands::bp(&g, &label(&graph), &model, &opts, truth.as_deref())?;
            if let Some(path) = out {
                let mut h = Header::new("bp", cli.seed);
                h.push("graph", &report.graph);
                h.push("params", model.to_json());
                h.push("damping", damping);
                h.push("tol", tol);
                h.push("max_sweeps", max_sweeps);
                files::write_label_file(path, &report.labels, &h)?;
                let marginals = commands::with_suffix(path, "marginals");
                files::write_text(
                    &marginals,
                    &h,
                    &commands::marginals_text(&report.marginals, model.q),
                )?;
            }
            print!("{}", json(&report)?);
        }
        Command::Sweep(a) => {
            let path = need_out(out, "sweep")?;
            let spec = SweepSpec {
                axis: match a.vary {
                    Vary::Difference => Axis::Difference { c: a.c },
                    Vary::Ratio => Axis::Ratio { ratio: a.ratio },
                },
                grid: a.grid,
                n: a.n,
                q: a.q,
                seeds: a.seeds,
                algorithms: a.algorithms,
                base_seed: cli.seed,
            };
            let done = run_sweep(&spec, &path, cli.threads)?;
            eprintln!(
                "{} tasks run, {} resumed; summary in {}",
                done.tasks_run,
                done.tasks_resumed,
                done.summary_csv.display()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
