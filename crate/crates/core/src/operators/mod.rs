//! Matrix-free linear operators over vertex space, vertex-pair space and
//! directed-edge space, plus closed-form spectral predictions.

mod classical;
mod nonbacktracking;
mod predict;
mod reconstruction;
mod reduced;

pub use classical::{classical_operator, ClassicalKind, ClassicalOperator};
pub use nonbacktracking::{build_b, build_weighted_b, walk_frobenius, EdgeWeights, NonBacktracking};
pub use predict::{predict, semicircle_density, SpectralPrediction};
pub use reconstruction::{reconstruction_vector, ReconstructionVector};
pub use reduced::{build_b_prime, ReducedNonBacktracking};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    NonBacktracking,
    ReducedNonBacktracking,
    WeightedNonBacktracking,
    Adjacency,
    Laplacian,
    RandomWalk,
    Modularity,
    Shifted,
}

/// A real square operator known only through its action on vectors.
///
/// Implementations must be deterministic: the same input yields bitwise the
/// same output.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;

    fn kind(&self) -> OperatorKind;

    /// `y = Op x`. Both slices have length `dim()`.
    fn apply_into(&self, x: &[f64], y: &mut [f64]);

    /// `y = Op^T x`.
    fn apply_transpose_into(&self, x: &[f64], y: &mut [f64]);

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        self.apply_into(x, &mut y);
        y
    }

    fn apply_transpose(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        self.apply_transpose_into(x, &mut y);
        y
    }
}

impl<T: LinearOperator + ?Sized> LinearOperator for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn kind(&self) -> OperatorKind {
        (**self).kind()
    }
    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        (**self).apply_into(x, y)
    }
    fn apply_transpose_into(&self, x: &[f64], y: &mut [f64]) {
        (**self).apply_transpose_into(x, y)
    }
}

/// Swaps the roles of `apply` and `apply_transpose`.
#[derive(Debug, Clone, Copy)]
pub struct Transposed<Op>(pub Op);

impl<Op: LinearOperator> LinearOperator for Transposed<Op> {
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn kind(&self) -> OperatorKind {
        self.0.kind()
    }
    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        self.0.apply_transpose_into(x, y)
    }
    fn apply_transpose_into(&self, x: &[f64], y: &mut [f64]) {
        self.0.apply_into(x, y)
    }
}

/// `shift * I - Op`; turns the low end of a spectrum into the top end.
#[derive(Debug, Clone, Copy)]
pub struct Shifted<Op> {
    pub op: Op,
    pub shift: f64,
}

impl<Op: LinearOperator> LinearOperator for Shifted<Op> {
    fn dim(&self) -> usize {
        self.op.dim()
    }
    fn kind(&self) -> OperatorKind {
        OperatorKind::Shifted
    }
    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        self.op.apply_into(x, y);
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = self.shift * xi - *yi;
        }
    }
    fn apply_transpose_into(&self, x: &[f64], y: &mut [f64]) {
        self.op.apply_transpose_into(x, y);
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = self.shift * xi - *yi;
        }
    }
}

#[cfg(test)]
pub(crate) mod testing {
    use super::LinearOperator;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    /// Max relative linearity defect `|Op(a x + b y) - a Op x - b Op y|`
    /// over a few random probes, for both `apply` and `apply_transpose`.
    pub fn linearity_defect(op: &dyn LinearOperator, seed: u64) -> f64 {
        let mut rng = rng_from_seed(seed);
        let n = op.dim();
        let mut worst: f64 = 0.0;
        for _ in 0..3 {
            let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let z: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let (a, b) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let mix: Vec<f64> = x.iter().zip(&z).map(|(xi, zi)| a * xi + b * zi).collect();
            for transpose in [false, true] {
                let f = |v: &[f64]| {
                    if transpose {
                        op.apply_transpose(v)
                    } else {
                        op.apply(v)
                    }
                };
                let (fx, fz, fm) = (f(&x), f(&z), f(&mix));
                let scale = fm.iter().map(|v| v.abs()).fold(1.0, f64::max);
                for i in 0..n {
                    worst = worst.max((fm[i] - a * fx[i] - b * fz[i]).abs() / scale);
                }
            }
        }
        worst
    }

    /// Checks `<y, Op x> = <Op^T y, x>` on random probes.
    pub fn adjoint_defect(op: &dyn LinearOperator, seed: u64) -> f64 {
        let mut rng = rng_from_seed(seed);
        let n = op.dim();
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let lhs: f64 = y.iter().zip(op.apply(&x)).map(|(a, b)| a * b).sum();
        let rhs: f64 = x.iter().zip(op.apply_transpose(&y)).map(|(a, b)| a * b).sum();
        (lhs - rhs).abs() / lhs.abs().max(1.0)
    }
}
