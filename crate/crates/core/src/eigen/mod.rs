//! Eigensolvers: a dense general solver (balancing, Hessenberg reduction,
//! shifted QR), a Jacobi solver for symmetric matrices, and a restarted
//! Arnoldi iteration for a few extreme eigenpairs of a matrix-free operator.

mod arnoldi;
mod bulk;
mod dense;
mod matrix;
mod symmetric;

use std::cmp::Ordering;

use num_complex::Complex64;

pub use arnoldi::{topk_eigs, SolverOpts};
pub use bulk::{real_eigs_outside_bulk, BulkSplit};
pub use dense::{dense_spectrum, dense_spectrum_with_vectors, eigenvalues, DENSE_LIMIT};
pub use matrix::Matrix;
pub use symmetric::{dense_symmetric_eigen, dense_symmetric_spectrum};

use crate::error::{Error, Result};
use crate::operators::LinearOperator;

/// Largest distance between paired entries under the matching of `a`
/// to `b` that minimizes the total distance.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let q = a.len();
    let weights: Vec<f64> = (0..q * q).map(|i| -(a[i / q] - b[i % q]).norm()).collect();
    Ok(crate::cluster::max_weight_assignment(&weights, q)
        .iter()
        .enumerate()
        .map(|(i, &j)| (a[i] - b[j]).norm())
        .fold(0.0, f64::max))
}

/// Which end of the spectrum to target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Which {
    LargestMagnitude,
    LargestReal,
}

/// Eigenvalues with optional unit eigenvectors.
///
/// `values` is sorted by the requested ordering (descending modulus unless
/// stated otherwise), ties broken by descending real then imaginary part.
/// `residuals[i] = ||Op v_i - lambda_i v_i||` for each returned vector.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub values: Vec<Complex64>,
    pub vectors: Option<Vec<Vec<Complex64>>>,
    pub residuals: Vec<f64>,
    pub converged: Vec<bool>,
    pub iterations: usize,
}

impl EigenResult {
    pub(crate) fn values_only(values: Vec<Complex64>) -> Self {
        let converged = vec![true; values.len()];
        EigenResult {
            values,
            vectors: None,
            residuals: Vec::new(),
            converged,
            iterations: 0,
        }
    }

    pub(crate) fn with_vectors(
        op: &dyn LinearOperator,
        values: Vec<Complex64>,
        vectors: Vec<Vec<Complex64>>,
    ) -> Self {
        let residuals = values
            .iter()
            .zip(&vectors)
            .map(|(&l, v)| residual(op, l, v))
            .collect();
        let converged = vec![true; values.len()];
        EigenResult {
            values,
            vectors: Some(vectors),
            residuals,
            converged,
            iterations: 0,
        }
    }

    pub fn all_converged(&self) -> bool {
        self.converged.iter().all(|&c| c)
    }

    /// The `i`-th eigenvector as a real vector.
    ///
    /// Fails with [`Error::ComplexEigenvector`] when the eigenvalue is not
    /// real.
    pub fn real_vector(&self, i: usize) -> Result<Vec<f64>> {
        let lambda = self.values[i];
        if !is_real(lambda) {
            return Err(Error::ComplexEigenvector(lambda));
        }
        let v = &self
            .vectors
            .as_ref()
            .ok_or_else(|| Error::InvalidParams("no eigenvectors were computed".into()))?[i];
        Ok(v.iter().map(|z| z.re).collect())
    }
}

/// Real up to a relative `1e-8` imaginary part.
pub fn is_real(z: Complex64) -> bool {
    z.im.abs() <= 1e-8 * z.norm().max(1.0)
}

/// `||Op v - lambda v|| / ||v||` for a complex vector.
pub fn residual(op: &dyn LinearOperator, lambda: Complex64, v: &[Complex64]) -> f64 {
    let re: Vec<f64> = v.iter().map(|z| z.re).collect();
    let im: Vec<f64> = v.iter().map(|z| z.im).collect();
    let a_re = op.apply(&re);
    let a_im = if im.iter().any(|&x| x != 0.0) {
        op.apply(&im)
    } else {
        vec![0.0; v.len()]
    };
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..v.len() {
        let lv = lambda * v[i];
        let d = Complex64::new(a_re[i], a_im[i]) - lv;
        num += d.norm_sqr();
        den += v[i].norm_sqr();
    }
    if den == 0.0 {
        return f64::INFINITY;
    }
    (num / den).sqrt()
}

pub(crate) fn compare_by_which(a: &Complex64, b: &Complex64, which: Which) -> Ordering {
    let primary = match which {
        Which::LargestMagnitude => b.norm().total_cmp(&a.norm()),
        Which::LargestReal => Ordering::Equal,
    };
    primary.then(b.re.total_cmp(&a.re)).then(b.im.total_cmp(&a.im))
}

pub(crate) fn sort_by_which(values: &mut [Complex64], which: Which) {
    values.sort_by(|a, b| compare_by_which(a, b, which));
}
