//! Belief propagation for the stochastic block model, and checks that its
//! linearization at the uniform fixed point is the non-backtracking
//! operator.
//!
//! Messages live on directed edges: `eta(u->v)` is the belief about `u`'s
//! group with `v` removed from the graph. An update for `v->w` multiplies,
//! over the other neighbours `u` of `v`, the affinity-weighted sums
//! `sum_b c_ab eta^b(u->v)`, times the prior `n_a` and the external field
//! `exp(-h_a)` standing in for the non-edges. With two equal groups this
//! is the familiar ratio form of the update.
//!
//! All products are taken in log space. Each sweep visits every directed
//! edge once in a fresh seeded order. The field `h` follows every message
//! update through a running total of vertex marginals and is recomputed
//! from scratch after each sweep.

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::cluster::Labeling;
use crate::eigen::Matrix;
use crate::error::{Error, Result};
use crate::graph::{Graph, SbmParams};
use crate::operators::{build_b, predict};
use crate::rng::{derive_seed, rng_from_seed};

/// Floor under affinity-weighted sums before taking logs.
const UNDERFLOW_GUARD: f64 = 1e-280;
const INIT_NOISE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct BpOpts {
    pub max_sweeps: usize,
    /// Convergence threshold on the largest message change in a sweep.
    pub tol: f64,
    /// Weight kept on the old message, in `[0, 1)`.
    pub damping: f64,
    pub seed: u64,
}

impl BpOpts {
    pub fn new(seed: u64) -> Self {
        BpOpts {
            max_sweeps: 500,
            tol: 1e-6,
            damping: 0.0,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParams(format!(
                "BP tolerance must be positive, got {}",
                self.tol
            )));
        }
        if !(0.0..1.0).contains(&self.damping) {
            return Err(Error::InvalidParams(format!(
                "damping must lie in [0, 1), got {}",
                self.damping
            )));
        }
        Ok(())
    }
}

/// Messages and external field of a BP run.
#[derive(Debug, Clone, PartialEq)]
pub struct BpState {
    q: usize,
    /// Row `e` holds the `q` probabilities of directed edge `e`.
    messages: Vec<f64>,
    /// External field `h_a`.
    field: Vec<f64>,
}

impl BpState {
    /// Messages at the group fractions plus uniform noise of size `1e-3`,
    /// renormalized, with `h` at its value for those messages.
    pub fn initial(g: &Graph, params: &SbmParams, seed: u64) -> Result<Self> {
        check_scale(g, params)?;
        let q = params.q();
        let mut rng = rng_from_seed(seed);
        let mut messages = Vec::with_capacity(g.num_directed() * q);
        for _ in 0..g.num_directed() {
            let row: Vec<f64> = params
                .group_fracs
                .iter()
                .map(|&na| (na + rng.random_range(-INIT_NOISE..=INIT_NOISE)).max(0.0))
                .collect();
            let total: f64 = row.iter().sum();
            messages.extend(row.iter().map(|x| x / total));
        }
        let mut state = BpState {
            q,
            messages,
            field: vec![0.0; q],
        };
        let cache = Cache::new(g, params, &state);
        state.field = external_field(&params.affinity, &cache.marginal_means(g, params, &state));
        Ok(state)
    }

    /// Builds a state from explicit messages (`2m x q`, row-major) and
    /// field.
    pub fn from_parts(q: usize, messages: Vec<f64>, field: Vec<f64>) -> Result<Self> {
        if q == 0 || messages.len() % q != 0 {
            return Err(Error::InvalidParams(format!(
                "{} message entries do not split into rows of {q}",
                messages.len()
            )));
        }
        if field.len() != q {
            return Err(Error::LengthMismatch(field.len(), q));
        }
        Ok(BpState { q, messages, field })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn message(&self, e: usize) -> &[f64] {
        &self.messages[e * self.q..(e + 1) * self.q]
    }

    pub fn messages(&self) -> &[f64] {
        &self.messages
    }

    pub fn field(&self) -> &[f64] {
        &self.field
    }
}

#[derive(Debug, Clone)]
pub struct BpOutcome {
    pub state: BpState,
    /// Vertex marginals, `n x q` row-major.
    pub marginals: Vec<f64>,
    pub labeling: Labeling,
    pub converged: bool,
    pub sweeps: usize,
    /// Largest message change in the last sweep.
    pub last_change: f64,
}

impl BpOutcome {
    pub fn marginal(&self, v: usize) -> &[f64] {
        let q = self.state.q;
        &self.marginals[v * q..(v + 1) * q]
    }
}

/// `h_a = sum_b c_ab m_b` for mean marginals `m`.
pub fn external_field(affinity: &[Vec<f64>], mean_marginals: &[f64]) -> Vec<f64> {
    affinity
        .iter()
        .map(|row| row.iter().zip(mean_marginals).map(|(c, m)| c * m).sum())
        .collect()
}

/// Runs BP from [`BpState::initial`] with seed `derive_seed(opts.seed, 0)`.
pub fn bp_run(g: &Graph, params: &SbmParams, opts: &BpOpts) -> Result<BpOutcome> {
    let state = BpState::initial(g, params, derive_seed(opts.seed, 0))?;
    bp_run_from(g, params, opts, state)
}

/// Runs BP from a given state. Sweep orders come from
/// `derive_seed(opts.seed, 1)`.
pub fn bp_run_from(g: &Graph, params: &SbmParams, opts: &BpOpts, mut state: BpState) -> Result<BpOutcome> {
    opts.validate()?;
    check_scale(g, params)?;
    let q = params.q();
    if state.q != q || state.messages.len() != g.num_directed() * q {
        return Err(Error::InvalidParams(format!(
            "state holds {} entries of width {}, graph needs {} of width {q}",
            state.messages.len(),
            state.q,
            g.num_directed() * q
        )));
    }
    let log_prior: Vec<f64> = params.group_fracs.iter().map(|x| x.ln()).collect();
    let mut cache = Cache::new(g, params, &state);
    let mut tracker = FieldTracker::new(&cache, g, params, &state);
    let mut rng = rng_from_seed(derive_seed(opts.seed, 1));
    let mut order: Vec<usize> = (0..g.num_directed()).collect();
    let mut fresh = vec![0.0; q];
    let mut converged = false;
    let mut sweeps = 0;
    let mut last_change = 0.0;

    while sweeps < opts.max_sweeps {
        order.shuffle(&mut rng);
        let mut change: f64 = 0.0;
        for &e in &order {
            let (v, w) = g.endpoints(e);
            let back = g.reverse(e);
            for a in 0..q {
                fresh[a] = log_prior[a] - state.field[a] + cache.vertex[v * q + a] - cache.edge[back * q + a];
            }
            normalize_log(&mut fresh);
            let row = &mut state.messages[e * q..(e + 1) * q];
            for (old, new) in row.iter_mut().zip(&fresh) {
                let updated = opts.damping * *old + (1.0 - opts.damping) * new;
                change = change.max((updated - *old).abs());
                *old = updated;
            }
            cache.refresh_edge(params, &state, e, w);
            tracker.refresh_vertex(&cache, params, &mut state, w);
        }
        sweeps += 1;
        last_change = change;
        cache = Cache::new(g, params, &state);
        state.field = external_field(&params.affinity, &cache.marginal_means(g, params, &state));
        tracker = FieldTracker::new(&cache, g, params, &state);
        if change < opts.tol {
            converged = true;
            break;
        }
    }

    let marginals = cache.marginals(g, params, &state);
    let labels = marginals
        .chunks(q)
        .map(|row| {
            // first maximum wins
            row.iter()
                .enumerate()
                .fold(
                    (0, f64::NEG_INFINITY),
                    |best, (a, &p)| if p > best.1 { (a, p) } else { best },
                )
                .0
        })
        .collect();
    Ok(BpOutcome {
        state,
        marginals,
        labeling: Labeling::new(labels, q)?,
        converged,
        sweeps,
        last_change,
    })
}

fn check_scale(g: &Graph, params: &SbmParams) -> Result<()> {
    if params.n != g.n() {
        return Err(Error::InvalidParams(format!(
            "parameters are for n = {}, graph has n = {}",
            params.n,
            g.n()
        )));
    }
    Ok(())
}

/// Shifts log weights and exponentiates them into a distribution.
fn normalize_log(x: &mut [f64]) {
    let max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut total = 0.0;
    for v in x.iter_mut() {
        *v = (*v - max).exp();
        total += *v;
    }
    x.iter_mut().for_each(|v| *v /= total);
}

/// Log affinity-weighted sums per directed edge and their totals per head
/// vertex.
struct Cache {
    q: usize,
    /// `edge[e * q + a] = ln sum_b c_ab eta^b(e)`.
    edge: Vec<f64>,
    /// `vertex[v * q + a]` sums `edge` over the edges into `v`.
    vertex: Vec<f64>,
}

impl Cache {
    fn new(g: &Graph, params: &SbmParams, state: &BpState) -> Self {
        let q = params.q();
        let mut edge = vec![0.0; g.num_directed() * q];
        for e in 0..g.num_directed() {
            log_weighted(&params.affinity, state.message(e), &mut edge[e * q..(e + 1) * q]);
        }
        let mut vertex = vec![0.0; g.n() * q];
        for v in 0..g.n() {
            for out in g.out_edges(v) {
                let into = g.reverse(out);
                for a in 0..q {
                    vertex[v * q + a] += edge[into * q + a];
                }
            }
        }
        Cache { q, edge, vertex }
    }

    fn refresh_edge(&mut self, params: &SbmParams, state: &BpState, e: usize, head: usize) {
        let q = self.q;
        let mut fresh = vec![0.0; q];
        log_weighted(&params.affinity, state.message(e), &mut fresh);
        for a in 0..q {
            self.vertex[head * q + a] += fresh[a] - self.edge[e * q + a];
            self.edge[e * q + a] = fresh[a];
        }
    }

    /// `psi_v^a` proportional to `n_a exp(-h_a)` times the product over
    /// incoming edges.
    fn marginals(&self, g: &Graph, params: &SbmParams, state: &BpState) -> Vec<f64> {
        let q = self.q;
        let mut out = vec![0.0; g.n() * q];
        for v in 0..g.n() {
            let row = &mut out[v * q..(v + 1) * q];
            for a in 0..q {
                row[a] = params.group_fracs[a].ln() - state.field[a] + self.vertex[v * q + a];
            }
            normalize_log(row);
        }
        out
    }

    fn marginal_means(&self, g: &Graph, params: &SbmParams, state: &BpState) -> Vec<f64> {
        let q = self.q;
        let mut means = vec![0.0; q];
        for row in self.marginals(g, params, state).chunks(q) {
            for (m, p) in means.iter_mut().zip(row) {
                *m += p;
            }
        }
        let n = g.n().max(1) as f64;
        means.iter_mut().for_each(|m| *m /= n);
        means
    }
}

/// Vertex marginals and their running total, so `h` can follow every
/// message update.
struct FieldTracker {
    psi: Vec<f64>,
    total: Vec<f64>,
    n: f64,
}

impl FieldTracker {
    fn new(cache: &Cache, g: &Graph, params: &SbmParams, state: &BpState) -> Self {
        let q = params.q();
        let psi = cache.marginals(g, params, state);
        let mut total = vec![0.0; q];
        for row in psi.chunks(q) {
            for (t, p) in total.iter_mut().zip(row) {
                *t += p;
            }
        }
        FieldTracker {
            psi,
            total,
            n: g.n().max(1) as f64,
        }
    }

    fn refresh_vertex(&mut self, cache: &Cache, params: &SbmParams, state: &mut BpState, v: usize) {
        let q = cache.q;
        let mut fresh = vec![0.0; q];
        for a in 0..q {
            fresh[a] = params.group_fracs[a].ln() - state.field[a] + cache.vertex[v * q + a];
        }
        normalize_log(&mut fresh);
        for a in 0..q {
            self.total[a] += fresh[a] - self.psi[v * q + a];
            self.psi[v * q + a] = fresh[a];
        }
        let means: Vec<f64> = self.total.iter().map(|t| t / self.n).collect();
        state.field = external_field(&params.affinity, &means);
    }
}

fn log_weighted(affinity: &[Vec<f64>], eta: &[f64], out: &mut [f64]) {
    for (o, row) in out.iter_mut().zip(affinity) {
        let s: f64 = row.iter().zip(eta).map(|(c, p)| c * p).sum();
        *o = s.max(UNDERFLOW_GUARD).ln();
    }
}

/// One synchronous application of the update to every message, with the
/// field held fixed. Used for the Jacobian.
fn synchronous_update(g: &Graph, params: &SbmParams, state: &BpState) -> Vec<f64> {
    let q = params.q();
    let log_prior: Vec<f64> = params.group_fracs.iter().map(|x| x.ln()).collect();
    let cache = Cache::new(g, params, state);
    let mut out = vec![0.0; g.num_directed() * q];
    for e in 0..g.num_directed() {
        let v = g.tail(e);
        let back = g.reverse(e);
        let row = &mut out[e * q..(e + 1) * q];
        for a in 0..q {
            row[a] = log_prior[a] - state.field[a] + cache.vertex[v * q + a] - cache.edge[back * q + a];
        }
        normalize_log(row);
    }
    out
}

/// Largest entrywise gap between the finite-difference Jacobian of the
/// two-group update at the uniform fixed point and
/// `(c_in - c_out) / (c_in + c_out)` times the transpose of the
/// non-backtracking matrix.
///
/// The Jacobian is taken in the first-group coordinate of every message
/// (the second is one minus it) by central differences with step `1e-5`,
/// with `h` fixed at its fixed-point value. Needs two equal groups and at
/// most 2000 directed edges.
pub fn linearization_check(g: &Graph, params: &SbmParams) -> Result<f64> {
    const STEP: f64 = 1e-5;
    check_scale(g, params)?;
    let (c_in, c_out) = params.two_value().filter(|_| params.q() == 2).ok_or_else(|| {
        Error::InvalidParams("linearization check needs two groups with c_in, c_out".into())
    })?;
    if (params.group_fracs[0] - 0.5).abs() > 1e-12 {
        return Err(Error::InvalidParams(
            "linearization check needs equal groups".into(),
        ));
    }
    let dim = g.num_directed();
    if dim > 2000 {
        return Err(Error::InvalidParams(format!(
            "{dim} directed edges; the check allows 2000"
        )));
    }
    if dim == 0 {
        return Ok(0.0);
    }
    let field = external_field(&params.affinity, &params.group_fracs);
    let at = |plus: &[f64]| -> Vec<f64> {
        let messages = plus.iter().flat_map(|&p| [p, 1.0 - p]).collect();
        let state = BpState {
            q: 2,
            messages,
            field: field.clone(),
        };
        synchronous_update(g, params, &state)
            .chunks(2)
            .map(|r| r[0])
            .collect()
    };

    let coef = (c_in - c_out) / (c_in + c_out);
    let bt = Matrix::from_operator(&build_b(g)).transpose();
    let mut point = vec![0.5; dim];
    let mut worst: f64 = 0.0;
    for f in 0..dim {
        point[f] = 0.5 + STEP;
        let up = at(&point);
        point[f] = 0.5 - STEP;
        let down = at(&point);
        point[f] = 0.5;
        for e in 0..dim {
            let jac = (up[e] - down[e]) / (2.0 * STEP);
            worst = worst.max((jac - coef * bt[(e, f)]).abs());
        }
    }
    Ok(worst)
}

/// Whether the uniform fixed point is unstable: `|nu| |mu2| > 1` with `nu`
/// the largest-modulus eigenvalue of `T_ab = n_a (c_ab / c - 1)`.
pub fn stability_criterion(params: &SbmParams, mu2: f64) -> bool {
    predict(params).leading_t_eigenvalue().abs() * mu2.abs() > 1.0
}
