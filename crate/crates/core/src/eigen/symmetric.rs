use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a real symmetric matrix given row-major, ascending.
pub fn dense_symmetric_spectrum(a: &[f64], n: usize) -> Result<Vec<f64>> {
    Ok(jacobi(a, n, false)?.0)
}

/// Eigenvalues (ascending) and matching orthonormal eigenvectors.
pub fn dense_symmetric_eigen(a: &[f64], n: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let (values, vectors) = jacobi(a, n, true)?;
    Ok((values, vectors.expect("requested")))
}

fn check_symmetric(a: &[f64], n: usize) -> Result<()> {
    if a.len() != n * n {
        return Err(Error::LengthMismatch(a.len(), n * n));
    }
    let scale = a.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((a[i * n + j] - a[j * n + i]).abs());
        }
    }
    if worst > 1e-12 * scale {
        return Err(Error::Asymmetric(worst));
    }
    Ok(())
}

/// Cyclic Jacobi: sweeps of plane rotations until the off-diagonal
/// Frobenius mass falls below `1e-14` of the total.
fn jacobi(input: &[f64], n: usize, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<Vec<f64>>>)> {
    check_symmetric(input, n)?;
    let mut a = input.to_vec();
    for i in 0..n {
        for j in (i + 1)..n {
            let m = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = m;
            a[j * n + i] = m;
        }
    }
    let mut v = want_vectors.then(|| {
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        v
    });
    let total: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-14 * total {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // A <- J^T A J with J rotating columns p, q
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = v.map(|v| {
        order
            .iter()
            .map(|&j| (0..n).map(|k| v[k * n + j]).collect())
            .collect()
    });
    Ok((values, vectors))
}
