use num_complex::Complex64;

use super::{sort_by_which, EigenResult, Matrix, Which};
use crate::error::{Error, Result};
use crate::operators::LinearOperator;

/// Largest dimension [`dense_spectrum`] will materialize.
pub const DENSE_LIMIT: usize = 5000;

/// All eigenvalues of `op`, sorted by descending modulus. No vectors.
pub fn dense_spectrum(op: &dyn LinearOperator) -> Result<EigenResult> {
    check_limit(op.dim())?;
    let a = Matrix::from_operator(op);
    let values = eigenvalues(&a)?;
    Ok(EigenResult::values_only(values))
}

/// All eigenvalues of `op`, plus unit eigenvectors for the first `k` of
/// them in descending-modulus order.
pub fn dense_spectrum_with_vectors(op: &dyn LinearOperator, k: usize) -> Result<EigenResult> {
    check_limit(op.dim())?;
    let a = Matrix::from_operator(op);
    let (values, vectors) = eigen_decomposition(&a, Which::LargestMagnitude, k)?;
    Ok(EigenResult::with_vectors(&a, values, vectors))
}

fn check_limit(dim: usize) -> Result<()> {
    if dim > DENSE_LIMIT {
        return Err(Error::TooLarge {
            dim,
            limit: DENSE_LIMIT,
        });
    }
    Ok(())
}

/// Eigenvalues of a general real matrix, sorted by descending modulus.
pub fn eigenvalues(a: &Matrix) -> Result<Vec<Complex64>> {
    let mut h = a.clone();
    let bal = balance(&mut h, true);
    hessenberg(&mut h, bal.low, bal.high, false);
    let mut values = hqr(&mut h, bal.low, bal.high)?;
    sort_by_which(&mut values, Which::LargestMagnitude);
    Ok(values)
}

/// Eigenvalues sorted by `which`, and unit eigenvectors for the first `k`.
///
/// Vectors are normalized to unit 2-norm with their largest-modulus entry
/// real and positive; eigenvectors of real eigenvalues are exactly real.
pub(crate) fn eigen_decomposition(
    a: &Matrix,
    which: Which,
    k: usize,
) -> Result<(Vec<Complex64>, Vec<Vec<Complex64>>)> {
    let n = a.dim();
    let mut h = a.clone();
    // diagonal scaling can spread nearly decoupled blocks over hundreds of
    // binary orders, which ruins back-transformed vectors
    let bal = balance(&mut h, false);
    let q = hessenberg(&mut h, bal.low, bal.high, true).expect("accumulated");
    let hess = h.clone();
    let mut values = hqr(&mut h, bal.low, bal.high)?;
    sort_by_which(&mut values, which);
    let hnorm = hess.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut work = Vec::new();
    let vectors = values
        .iter()
        .take(k.min(n))
        .map(|&lambda| {
            let z = inverse_iteration(&hess, lambda, hnorm, &mut work);
            let mut x = back_transform(&q, &bal, &z);
            normalize_phase(&mut x);
            x
        })
        .collect();
    Ok((values, vectors))
}

struct Balance {
    low: usize,
    high: usize,
    /// Permutation indices outside `low..=high`, scale factors inside.
    scale: Vec<f64>,
}

fn exchange(a: &mut [f64], n: usize, j: usize, m: usize, k: usize, l: usize) {
    if j == m {
        return;
    }
    for i in 0..=l {
        a.swap(i * n + j, i * n + m);
    }
    for i in k..n {
        a.swap(j * n + i, m * n + i);
    }
}

/// Permutes isolated eigenvalues to the ends, then optionally scales rows
/// and columns of the remaining block by powers of two to equalize their
/// norms.
fn balance(mat: &mut Matrix, scaling: bool) -> Balance {
    let n = mat.dim();
    let mut scale = vec![1.0; n];
    if n == 0 {
        return Balance {
            low: 0,
            high: 0,
            scale,
        };
    }
    let a = mat.as_mut_slice();
    let mut k = 0;
    let mut l = n - 1;

    // rows with zero off-diagonal part go to the bottom
    'rows: loop {
        for j in (0..=l).rev() {
            if (0..=l).all(|i| i == j || a[j * n + i] == 0.0) {
                scale[l] = j as f64;
                exchange(a, n, j, l, k, l);
                if l == 0 {
                    break 'rows;
                }
                l -= 1;
                continue 'rows;
            }
        }
        break;
    }

    // columns with zero off-diagonal part go to the left
    'cols: while k < l {
        for j in k..=l {
            if (k..=l).all(|i| i == j || a[i * n + j] == 0.0) {
                scale[k] = j as f64;
                exchange(a, n, j, k, k, l);
                k += 1;
                continue 'cols;
            }
        }
        break;
    }

    for s in &mut scale[k..=l] {
        *s = 1.0;
    }
    const RADIX: f64 = 2.0;
    const RADIX2: f64 = RADIX * RADIX;
    if scaling {
        loop {
            let mut changed = false;
            for i in k..=l {
                let mut c = 0.0;
                let mut r = 0.0;
                for j in k..=l {
                    if j != i {
                        c += a[j * n + i].abs();
                        r += a[i * n + j].abs();
                    }
                }
                if c == 0.0 || r == 0.0 {
                    continue;
                }
                let s = c + r;
                let mut f = 1.0;
                let mut g = r / RADIX;
                while c < g {
                    f *= RADIX;
                    c *= RADIX2;
                }
                g = r * RADIX;
                while c >= g {
                    f /= RADIX;
                    c /= RADIX2;
                }
                if (c + r) / f < 0.95 * s {
                    let inv = 1.0 / f;
                    scale[i] *= f;
                    changed = true;
                    for j in k..n {
                        a[i * n + j] *= inv;
                    }
                    for j in 0..=l {
                        a[j * n + i] *= f;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    Balance {
        low: k,
        high: l,
        scale,
    }
}

/// Householder reduction of rows and columns `low..=high` to upper
/// Hessenberg form. Optionally returns the accumulated orthogonal factor.
fn hessenberg(mat: &mut Matrix, low: usize, high: usize, accumulate: bool) -> Option<Matrix> {
    let n = mat.dim();
    let mut ort = vec![0.0; n];
    let a = mat.as_mut_slice();
    let mut f_cols = vec![0.0; n];
    for m in (low + 1)..high {
        let scale: f64 = (m..=high).map(|i| a[i * n + m - 1].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut h = 0.0;
        for i in (m..=high).rev() {
            ort[i] = a[i * n + m - 1] / scale;
            h += ort[i] * ort[i];
        }
        let mut g = h.sqrt();
        if ort[m] > 0.0 {
            g = -g;
        }
        h -= ort[m] * g;
        ort[m] -= g;

        // H = (I - u u^T / h) H
        f_cols[m..n].fill(0.0);
        for i in m..=high {
            let oi = ort[i];
            let row = &a[i * n + m..i * n + n];
            for (f, x) in f_cols[m..n].iter_mut().zip(row) {
                *f += oi * x;
            }
        }
        for i in m..=high {
            let oi = ort[i] / h;
            let row = &mut a[i * n + m..i * n + n];
            for (x, f) in row.iter_mut().zip(&f_cols[m..n]) {
                *x -= f * oi;
            }
        }
        // H = H (I - u u^T / h)
        for i in 0..=high {
            let row = &mut a[i * n..i * n + n];
            let f: f64 = (m..=high).map(|j| ort[j] * row[j]).sum::<f64>() / h;
            for j in m..=high {
                row[j] -= f * ort[j];
            }
        }
        ort[m] *= scale;
        a[m * n + m - 1] = scale * g;
    }

    let q = accumulate.then(|| {
        let mut v = Matrix::identity(n);
        let vs = v.as_mut_slice();
        for m in ((low + 1)..high).rev() {
            let sub = a[m * n + m - 1];
            if sub == 0.0 {
                continue;
            }
            for i in (m + 1)..=high {
                ort[i] = a[i * n + m - 1];
            }
            for j in m..=high {
                let g: f64 = (m..=high).map(|i| ort[i] * vs[i * n + j]).sum();
                let g = (g / ort[m]) / sub;
                for i in m..=high {
                    vs[i * n + j] += g * ort[i];
                }
            }
        }
        v
    });

    for i in 2..n {
        for j in 0..i - 1 {
            a[i * n + j] = 0.0;
        }
    }
    q
}

/// Francis double-shift QR on an upper Hessenberg matrix. Destroys `mat`.
fn hqr(mat: &mut Matrix, low: usize, high: usize) -> Result<Vec<Complex64>> {
    let nn = mat.dim();
    let mut wr = vec![0.0; nn];
    let mut wi = vec![0.0; nn];
    if nn == 0 {
        return Ok(Vec::new());
    }
    let h = mat.as_mut_slice();
    let at = |i: usize, j: usize| i * nn + j;
    let eps = f64::EPSILON;

    for i in (0..low).chain(high + 1..nn) {
        wr[i] = h[at(i, i)];
    }

    let mut norm = 0.0;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[at(i, j)].abs();
        }
    }

    let limit = 30 * nn.max(1);
    let mut total = 0usize;
    let mut n = high as isize;
    let low_i = low as isize;
    let mut exshift = 0.0;
    let mut iter = 0;
    let (mut p, mut q, mut r, mut s, mut z);
    let (mut x, mut y, mut w);

    while n >= low_i {
        let nu = n as usize;
        let mut l = nu;
        while l > low {
            s = h[at(l - 1, l - 1)].abs() + h[at(l, l)].abs();
            if s == 0.0 {
                s = norm;
            }
            if h[at(l, l - 1)].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == nu {
            h[at(nu, nu)] += exshift;
            wr[nu] = h[at(nu, nu)];
            wi[nu] = 0.0;
            n -= 1;
            iter = 0;
        } else if l + 1 == nu {
            w = h[at(nu, nu - 1)] * h[at(nu - 1, nu)];
            p = (h[at(nu - 1, nu - 1)] - h[at(nu, nu)]) / 2.0;
            q = p * p + w;
            z = q.abs().sqrt();
            h[at(nu, nu)] += exshift;
            h[at(nu - 1, nu - 1)] += exshift;
            x = h[at(nu, nu)];
            if q >= 0.0 {
                z = if p >= 0.0 { p + z } else { p - z };
                wr[nu - 1] = x + z;
                wr[nu] = if z != 0.0 { x - w / z } else { x + z };
                wi[nu - 1] = 0.0;
                wi[nu] = 0.0;
            } else {
                wr[nu - 1] = x + p;
                wr[nu] = x + p;
                wi[nu - 1] = z;
                wi[nu] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            x = h[at(nu, nu)];
            y = h[at(nu - 1, nu - 1)];
            w = h[at(nu, nu - 1)] * h[at(nu - 1, nu)];

            if iter == 10 {
                exshift += x;
                for i in low..=nu {
                    h[at(i, i)] -= x;
                }
                s = h[at(nu, nu - 1)].abs() + h[at(nu - 1, nu - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            if iter == 30 {
                s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in low..=nu {
                        h[at(i, i)] -= s;
                    }
                    exshift += s;
                    x = 0.964;
                    y = x;
                    w = x;
                }
            }
            iter += 1;
            total += 1;
            if total > limit {
                return Err(Error::QrNoConvergence {
                    lo: l,
                    hi: nu,
                    iterations: total,
                });
            }

            let mut m = nu - 2;
            loop {
                z = h[at(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[at(m + 1, m)] + h[at(m, m + 1)];
                q = h[at(m + 1, m + 1)] - z - r - s;
                r = h[at(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if h[at(m, m - 1)].abs() * (q.abs() + r.abs())
                    < eps * (p.abs() * (h[at(m - 1, m - 1)].abs() + z.abs() + h[at(m + 1, m + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }

            for i in (m + 2)..=nu {
                h[at(i, i - 2)] = 0.0;
                if i > m + 2 {
                    h[at(i, i - 3)] = 0.0;
                }
            }

            for k in m..nu {
                let notlast = k + 1 != nu;
                if k != m {
                    p = h[at(k, k - 1)];
                    q = h[at(k + 1, k - 1)];
                    r = if notlast { h[at(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = (p * p + q * q + r * r).sqrt();
                if p < 0.0 {
                    s = -s;
                }
                if s == 0.0 {
                    continue;
                }
                if k != m {
                    h[at(k, k - 1)] = -s * x;
                } else if l != m {
                    h[at(k, k - 1)] = -h[at(k, k - 1)];
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;

                for j in k..=nu {
                    let mut t = h[at(k, j)] + q * h[at(k + 1, j)];
                    if notlast {
                        t += r * h[at(k + 2, j)];
                        h[at(k + 2, j)] -= t * z;
                    }
                    h[at(k, j)] -= t * x;
                    h[at(k + 1, j)] -= t * y;
                }
                for i in l..=nu.min(k + 3) {
                    let mut t = x * h[at(i, k)] + y * h[at(i, k + 1)];
                    if notlast {
                        t += z * h[at(i, k + 2)];
                        h[at(i, k + 2)] -= t * r;
                    }
                    h[at(i, k)] -= t;
                    h[at(i, k + 1)] -= t * q;
                }
            }
        }
    }

    Ok(wr
        .into_iter()
        .zip(wi)
        .map(|(re, im)| Complex64::new(re, im))
        .collect())
}

/// Eigenvector of an upper Hessenberg matrix for a computed eigenvalue.
fn inverse_iteration(h: &Matrix, lambda: Complex64, hnorm: f64, work: &mut Vec<Complex64>) -> Vec<Complex64> {
    let n = h.dim();
    let tiny = Complex64::new(f64::EPSILON * hnorm, 0.0);
    work.clear();
    work.resize(n * n, Complex64::new(0.0, 0.0));
    let u = work.as_mut_slice();
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            u[i * n + j] = Complex64::new(h[(i, j)], 0.0);
        }
        u[i * n + i] -= lambda;
    }

    // LU with adjacent-row pivoting
    let mut mult = vec![Complex64::new(0.0, 0.0); n.saturating_sub(1)];
    let mut swapped = vec![false; n.saturating_sub(1)];
    for k in 0..n.saturating_sub(1) {
        if u[(k + 1) * n + k].norm() > u[k * n + k].norm() {
            for j in k..n {
                u.swap(k * n + j, (k + 1) * n + j);
            }
            swapped[k] = true;
        }
        if u[k * n + k] == Complex64::new(0.0, 0.0) {
            u[k * n + k] = tiny;
        }
        let f = u[(k + 1) * n + k] / u[k * n + k];
        mult[k] = f;
        if f != Complex64::new(0.0, 0.0) {
            for j in (k + 1)..n {
                let t = u[k * n + j];
                u[(k + 1) * n + j] -= f * t;
            }
        }
        u[(k + 1) * n + k] = Complex64::new(0.0, 0.0);
    }
    if n > 0 && u[(n - 1) * n + n - 1] == Complex64::new(0.0, 0.0) {
        u[(n - 1) * n + n - 1] = tiny;
    }

    let back_substitute = |u: &[Complex64], b: &mut [Complex64]| {
        for i in (0..n).rev() {
            let mut t = b[i];
            for j in (i + 1)..n {
                t -= u[i * n + j] * b[j];
            }
            b[i] = t / u[i * n + i];
            let size = b[i].norm();
            if size > 1e150 {
                for z in b.iter_mut() {
                    *z /= size;
                }
            }
        }
        let norm = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 && norm.is_finite() {
            for z in b.iter_mut() {
                *z /= norm;
            }
        }
    };

    let mut b = vec![Complex64::new(1.0, 0.0); n];
    back_substitute(u, &mut b);
    for _ in 0..2 {
        for k in 0..n.saturating_sub(1) {
            if swapped[k] {
                b.swap(k, k + 1);
            }
            let t = b[k];
            b[k + 1] -= mult[k] * t;
        }
        back_substitute(u, &mut b);
    }
    b
}

fn back_transform(q: &Matrix, bal: &Balance, z: &[Complex64]) -> Vec<Complex64> {
    let n = z.len();
    let mut x: Vec<Complex64> = (0..n)
        .map(|i| {
            if i < bal.low || i > bal.high {
                z[i]
            } else {
                (bal.low..=bal.high).map(|j| z[j] * q[(i, j)]).sum()
            }
        })
        .collect();
    for i in bal.low..=bal.high.min(n.saturating_sub(1)) {
        x[i] *= bal.scale[i];
    }
    for ii in 0..n {
        let i = if ii >= bal.low && ii <= bal.high {
            continue;
        } else if ii < bal.low {
            bal.low - 1 - ii
        } else {
            ii
        };
        let k = bal.scale[i] as usize;
        if k != i {
            x.swap(i, k);
        }
    }
    x
}

pub(crate) fn normalize_phase(x: &mut [Complex64]) {
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let pivot = x.iter().copied().fold(Complex64::new(0.0, 0.0), |best, z| {
        if z.norm() > best.norm() {
            z
        } else {
            best
        }
    });
    if norm == 0.0 || pivot.norm() == 0.0 {
        return;
    }
    let phase = pivot / pivot.norm();
    let factor = phase.conj() / norm;
    for z in x.iter_mut() {
        *z *= factor;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::operators::build_b;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn rotation_has_imaginary_pair() {
        let a = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        let v = eigenvalues(&a).unwrap();
        assert!(close(v[0], Complex64::new(0.0, 1.0), 1e-14));
        assert!(close(v[1], Complex64::new(0.0, -1.0), 1e-14));
    }

    #[test]
    fn cycle_gives_roots_of_unity_twice() {
        let g = cycle(4);
        let v = dense_spectrum(&build_b(&g)).unwrap().values;
        assert_eq!(v.len(), 8);
        for root in [
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
        ] {
            let hits = v.iter().filter(|z| close(**z, root, 1e-8)).count();
            assert_eq!(hits, 2, "{root} in {v:?}");
        }
    }

    #[test]
    fn trees_are_nilpotent() {
        for g in [path(7), star(5)] {
            let v = dense_spectrum(&build_b(&g)).unwrap().values;
            assert!(v.iter().all(|z| z.norm() < 1e-10), "{v:?}");
        }
    }

    #[test]
    fn vectors_satisfy_eigen_equation() {
        let a = Matrix::from_rows(&[
            vec![4.0, 1.0, -2.0, 2.0],
            vec![1.0, 2.0, 0.0, 1.0],
            vec![-2.0, 0.0, 3.0, -2.0],
            vec![2.0, 1.0, -2.0, -1.0],
        ]);
        let res = dense_spectrum_with_vectors(&a, 4).unwrap();
        for r in &res.residuals {
            assert!(*r < 1e-10, "{:?}", res.residuals);
        }
    }

    #[test]
    fn complex_vectors_for_nonsymmetric() {
        let g = cycle(5);
        let b = build_b(&g);
        let res = dense_spectrum_with_vectors(&b, 10).unwrap();
        for (z, r) in res.values.iter().zip(&res.residuals) {
            assert!((z.norm() - 1.0).abs() < 1e-8);
            assert!(*r < 1e-8);
        }
    }

    #[test]
    fn real_eigenvalue_has_real_vector() {
        let g = complete(5);
        let res = dense_spectrum_with_vectors(&build_b(&g), 1).unwrap();
        assert!(close(res.values[0], Complex64::new(3.0, 0.0), 1e-10));
        let v = &res.vectors.as_ref().unwrap()[0];
        assert!(v.iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn too_large_is_refused() {
        let g = Graph::empty(DENSE_LIMIT / 2 + 1);
        let bp = crate::operators::build_b_prime(&g);
        assert!(matches!(dense_spectrum(&bp), Err(Error::TooLarge { .. })));
    }

    use crate::graph::Graph;

    proptest! {
        #[test]
        fn trace_and_determinant_agree(entries in prop::collection::vec(-3i32..4, 25)) {
            let data: Vec<f64> = entries.iter().map(|&x| x as f64).collect();
            let a = Matrix::from_row_major(5, data);
            let v = eigenvalues(&a).unwrap();
            let trace: f64 = (0..5).map(|i| a[(i, i)]).sum();
            let sum: Complex64 = v.iter().sum();
            prop_assert!((sum.re - trace).abs() < 1e-8 * (1.0 + trace.abs()));
            prop_assert!(sum.im.abs() < 1e-8);
            // trace of A^2
            let a2 = a.matmul(&a);
            let t2: f64 = (0..5).map(|i| a2[(i, i)]).sum();
            let s2: Complex64 = v.iter().map(|z| z * z).sum();
            prop_assert!((s2.re - t2).abs() < 1e-7 * (1.0 + t2.abs()));
        }
    }
}
