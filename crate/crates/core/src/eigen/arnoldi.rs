use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};

use super::dense::{eigen_decomposition, normalize_phase};
use super::{residual, EigenResult, Matrix, Which, DENSE_LIMIT};
use crate::error::{Error, Result};
use crate::operators::LinearOperator;
use crate::rng::rng_from_seed;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOpts {
    /// Number of eigenpairs wanted.
    pub k: usize,
    /// Absolute residual tolerance `||Op v - lambda v||` for unit `v`.
    pub tol: f64,
    /// Maximum number of restarts.
    pub max_iter: usize,
    /// Krylov subspace size; defaults to `max(2k + 2, 4k, 24)`.
    pub subspace: Option<usize>,
    pub seed: u64,
    pub which: Which,
}

impl SolverOpts {
    pub fn new(k: usize) -> Self {
        SolverOpts {
            k,
            tol: 1e-8,
            max_iter: 300,
            subspace: None,
            seed: 0,
            which: Which::LargestMagnitude,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_which(mut self, which: Which) -> Self {
        self.which = which;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_subspace(mut self, m: usize) -> Self {
        self.subspace = Some(m);
        self
    }

    /// Subspace size used for an operator of dimension `n`.
    pub fn subspace_size(&self, n: usize) -> usize {
        self.subspace
            .unwrap_or((2 * self.k + 2).max(4 * self.k).max(24))
            .min(n)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Classical Gram-Schmidt with one re-orthogonalization pass against the
/// first `count` rows of `basis`. Returns the accumulated coefficients.
fn orthogonalize(basis: &[f64], count: usize, w: &mut [f64]) -> Vec<f64> {
    let n = w.len();
    let mut h = vec![0.0; count];
    let mut c = vec![0.0; count];
    for _ in 0..2 {
        for (i, ci) in c.iter_mut().enumerate() {
            *ci = dot(&basis[i * n..(i + 1) * n], w);
        }
        for (i, &ci) in c.iter().enumerate() {
            for (x, v) in w.iter_mut().zip(&basis[i * n..(i + 1) * n]) {
                *x -= ci * v;
            }
        }
        for (hi, ci) in h.iter_mut().zip(&c) {
            *hi += ci;
        }
    }
    h
}

/// The `k` extreme eigenpairs of `op`, selected by `opts.which`.
///
/// Uses a thick-restart Arnoldi iteration: after each expansion the wanted
/// Ritz vectors (real and imaginary parts of complex ones) are kept, and
/// the expansion continues from the residual direction. Operators small
/// enough for the subspace are handled by the dense solver. Reported
/// residuals are recomputed with explicit products; `converged[i]` means
/// the residual is within `tol`.
pub fn topk_eigs(op: &dyn LinearOperator, opts: &SolverOpts) -> Result<EigenResult> {
    let n = op.dim();
    let k = opts.k;
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!("k = {k} for dimension {n}")));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParams(format!("tol = {}", opts.tol)));
    }
    let m = opts.subspace_size(n);
    if m >= n || n <= 2 * k + 2 {
        if n > DENSE_LIMIT {
            return Err(Error::TooLarge {
                dim: n,
                limit: DENSE_LIMIT,
            });
        }
        return dense_topk(op, opts);
    }
    if m < 2 * k + 2 {
        return Err(Error::InvalidParams(format!(
            "subspace {m} is too small for k = {k}; need at least {}",
            2 * k + 2
        )));
    }

    let mut rng = rng_from_seed(opts.seed);
    let mut random_unit = |basis: &[f64], count: usize| -> Vec<f64> {
        loop {
            let mut w: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            orthogonalize(basis, count, &mut w);
            let nw = norm(&w);
            if nw > 1e-8 {
                w.iter_mut().for_each(|x| *x /= nw);
                return w;
            }
        }
    };

    let mut basis = vec![0.0; (m + 1) * n];
    // row-major (m + 1) x m projected matrix
    let mut proj = vec![0.0; (m + 1) * m];
    let v0 = random_unit(&basis, 0);
    basis[..n].copy_from_slice(&v0);
    let mut start = 0;
    let mut w = vec![0.0; n];
    let mut restarts = 0;

    loop {
        for j in start..m {
            op.apply_into(&basis[j * n..(j + 1) * n], &mut w);
            let before = norm(&w);
            let h = orthogonalize(&basis, j + 1, &mut w);
            for (i, hi) in h.into_iter().enumerate() {
                proj[i * m + j] = hi;
            }
            let beta = norm(&w);
            if beta <= 1e-12 * before || beta == 0.0 {
                let fresh = random_unit(&basis, j + 1);
                basis[(j + 1) * n..(j + 2) * n].copy_from_slice(&fresh);
                proj[(j + 1) * m + j] = 0.0;
            } else {
                for (dst, x) in basis[(j + 1) * n..(j + 2) * n].iter_mut().zip(&w) {
                    *dst = x / beta;
                }
                proj[(j + 1) * m + j] = beta;
            }
        }
        restarts += 1;

        let hm = Matrix::from_row_major(m, proj[..m * m].to_vec());
        let beta = proj[m * m + m - 1];
        let (vals, ys) = eigen_decomposition(&hm, opts.which, m)?;
        let estimates: Vec<f64> = ys.iter().map(|y| beta.abs() * y[m - 1].norm()).collect();
        let estimated = estimates[..k].iter().all(|&e| e <= opts.tol);

        if estimated || restarts >= opts.max_iter {
            let vectors: Vec<Vec<Complex64>> = ys[..k]
                .iter()
                .map(|y| {
                    let mut x = vec![Complex64::new(0.0, 0.0); n];
                    for (i, yi) in y.iter().enumerate() {
                        if *yi == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        for (xe, v) in x.iter_mut().zip(&basis[i * n..(i + 1) * n]) {
                            *xe += yi * v;
                        }
                    }
                    normalize_phase(&mut x);
                    x
                })
                .collect();
            let values = vals[..k].to_vec();
            let residuals: Vec<f64> = values
                .iter()
                .zip(&vectors)
                .map(|(&l, v)| residual(op, l, v))
                .collect();
            let converged: Vec<bool> = residuals.iter().map(|&r| r <= opts.tol).collect();
            if converged.iter().all(|&c| c) || restarts >= opts.max_iter {
                return Ok(EigenResult {
                    values,
                    vectors: Some(vectors),
                    residuals,
                    converged,
                    iterations: restarts,
                });
            }
        }

        // keep 2k Ritz vectors without splitting a conjugate pair
        let mut keep = (2 * k).min(m - 2);
        if vals[keep - 1].im > 0.0 {
            if keep < m - 2 {
                keep += 1;
            } else {
                keep -= 1;
            }
        }
        let mut cols: Vec<Vec<f64>> = Vec::with_capacity(keep + 1);
        for i in 0..keep {
            let (z, y) = (vals[i], &ys[i]);
            if z.im == 0.0 {
                cols.push(y.iter().map(|c| c.re).collect());
            } else if z.im > 0.0 {
                cols.push(y.iter().map(|c| c.re).collect());
                cols.push(y.iter().map(|c| c.im).collect());
            }
        }
        let mut q1: Vec<Vec<f64>> = Vec::with_capacity(cols.len());
        for mut c in cols {
            for _ in 0..2 {
                for q in &q1 {
                    let d = dot(q, &c);
                    c.iter_mut().zip(q).for_each(|(x, qi)| *x -= d * qi);
                }
            }
            let nc = norm(&c);
            if nc > 1e-10 {
                c.iter_mut().for_each(|x| *x /= nc);
                q1.push(c);
            }
        }
        let p = q1.len();

        // S = Q1^T H Q1, new coupling row = beta * last row of Q1
        let hq: Vec<Vec<f64>> = q1.iter().map(|q| hm.mul_vec(q)).collect();
        let mut next = vec![0.0; (m + 1) * m];
        for a in 0..p {
            for b in 0..p {
                next[a * m + b] = dot(&q1[a], &hq[b]);
            }
            next[p * m + a] = beta * q1[a][m - 1];
        }
        proj = next;

        let mut new_basis = vec![0.0; (p + 1) * n];
        for (a, q) in q1.iter().enumerate() {
            let dst = &mut new_basis[a * n..(a + 1) * n];
            for (i, &qi) in q.iter().enumerate() {
                if qi == 0.0 {
                    continue;
                }
                for (d, v) in dst.iter_mut().zip(&basis[i * n..(i + 1) * n]) {
                    *d += qi * v;
                }
            }
        }
        new_basis[p * n..].copy_from_slice(&basis[m * n..(m + 1) * n]);
        basis[..(p + 1) * n].copy_from_slice(&new_basis);
        start = p;
    }
}

fn dense_topk(op: &dyn LinearOperator, opts: &SolverOpts) -> Result<EigenResult> {
    let a = Matrix::from_operator(op);
    let (mut values, vectors) = eigen_decomposition(&a, opts.which, opts.k)?;
    values.truncate(opts.k);
    let mut res = EigenResult::with_vectors(op, values, vectors);
    res.converged = res.residuals.iter().map(|&r| r <= opts.tol).collect();
    res.iterations = 1;
    Ok(res)
}
