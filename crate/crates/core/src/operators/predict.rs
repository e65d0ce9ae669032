use crate::eigen::dense_symmetric_spectrum;
use crate::graph::SbmParams;

/// Closed-form spectral predictions for a block model in the sparse limit.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPrediction {
    /// Mean degree `c = sum_a n_a c_a`.
    pub c: f64,
    /// Expected degree of each group.
    pub group_degrees: Vec<f64>,
    /// Whether all groups share one expected degree; the closed forms below
    /// assume it.
    pub uniform_degrees: bool,
    /// Second adjacency eigenvalue in the dense regime, `mu + c / mu`.
    pub lambda_c: Option<f64>,
    /// Community eigenvalue of the non-backtracking operator, `c * nu` for
    /// the largest-modulus eigenvalue `nu` of `T`.
    pub mu_c: Option<f64>,
    pub bulk_radius: f64,
    pub detectable: bool,
    /// Eigenvalues of `T_ab = n_a (c_ab / c - 1)`, descending.
    pub t_eigenvalues: Vec<f64>,
}

impl SpectralPrediction {
    /// Largest-modulus eigenvalue of `T` (0 when `T` vanishes).
    pub fn leading_t_eigenvalue(&self) -> f64 {
        self.t_eigenvalues
            .iter()
            .copied()
            .fold(0.0, |best: f64, v| if v.abs() > best.abs() { v } else { best })
    }
}

/// Fills every closed form for `params`.
///
/// With non-uniform group degrees the eigenvalue predictions are reported
/// as `None` and the group degrees are returned for inspection.
pub fn predict(params: &SbmParams) -> SpectralPrediction {
    let q = params.q();
    let group_degrees = params.group_degrees();
    let c = params.mean_degree();
    let uniform_degrees = group_degrees
        .iter()
        .all(|ca| (ca - c).abs() <= 1e-12 * c.abs().max(1.0));

    let t_eigenvalues = if c > 0.0 {
        // T = N (C/c - 1) is similar to N^1/2 (C/c - 1) N^1/2
        let mut s = vec![0.0; q * q];
        for a in 0..q {
            for b in 0..q {
                s[a * q + b] = (params.group_fracs[a] * params.group_fracs[b]).sqrt()
                    * (params.affinity[a][b] / c - 1.0);
            }
        }
        let mut vals = dense_symmetric_spectrum(&s, q).expect("symmetric by construction");
        vals.sort_by(|a, b| b.total_cmp(a));
        vals
    } else {
        vec![0.0; q]
    };

    let nu = t_eigenvalues
        .iter()
        .copied()
        .fold(0.0, |best: f64, v| if v.abs() > best.abs() { v } else { best });
    let mu = c * nu;
    let bulk_radius = c.sqrt();
    let (mu_c, lambda_c) = if uniform_degrees {
        let mu_c = if mu.abs() <= 1e-12 * c.max(1.0) { 0.0 } else { mu };
        (Some(mu_c), (mu_c != 0.0).then(|| mu_c + c / mu_c))
    } else {
        (None, None)
    };
    let detectable = match (params.two_value(), uniform_degrees) {
        (Some((c_in, c_out)), true) => (c_in - c_out).abs() > q as f64 * c.sqrt(),
        _ => mu_c.is_some_and(|m| m.abs() > bulk_radius),
    };

    SpectralPrediction {
        c,
        group_degrees,
        uniform_degrees,
        lambda_c,
        mu_c,
        bulk_radius,
        detectable,
        t_eigenvalues,
    }
}

/// Wigner semicircle density `sqrt(4c - x^2) / (2 pi c)` on `[-2 sqrt c, 2 sqrt c]`.
pub fn semicircle_density(c: f64, x: f64) -> f64 {
    let r = 4.0 * c - x * x;
    if r <= 0.0 {
        0.0
    } else {
        r.sqrt() / (2.0 * std::f64::consts::PI * c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_groups_five_one() {
        let p = predict(&SbmParams::planted(1000, 2, 5.0, 1.0).unwrap());
        assert_eq!(p.c, 3.0);
        assert!((p.lambda_c.unwrap() - 3.5).abs() < 1e-12);
        assert!((p.mu_c.unwrap() - 2.0).abs() < 1e-12);
        assert!((p.bulk_radius - 3f64.sqrt()).abs() < 1e-15);
        assert!(p.detectable);
        assert!((p.t_eigenvalues[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!(p.t_eigenvalues[1].abs() < 1e-12);
        assert!((p.c * p.leading_t_eigenvalue() - p.mu_c.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn no_structure() {
        let p = predict(&SbmParams::planted(1000, 2, 3.0, 3.0).unwrap());
        assert_eq!(p.mu_c, Some(0.0));
        assert_eq!(p.lambda_c, None);
        assert!(!p.detectable);
    }

    #[test]
    fn q_groups_mu_is_difference_over_q() {
        let params = SbmParams::planted_with_ratio(100, 3, 3.0, 0.1).unwrap();
        let (c_in, c_out) = params.two_value().unwrap();
        let p = predict(&params);
        assert!((p.mu_c.unwrap() - (c_in - c_out) / 3.0).abs() < 1e-12);
        // two degenerate community eigenvalues and one zero
        assert!((p.t_eigenvalues[0] - p.t_eigenvalues[1]).abs() < 1e-12);
        assert!(p.t_eigenvalues[2].abs() < 1e-12);
    }

    #[test]
    fn disassortative_uses_modulus() {
        let p = predict(&SbmParams::planted(100, 2, 0.5, 7.5).unwrap());
        assert!((p.mu_c.unwrap() + 3.5).abs() < 1e-12);
        assert!(p.detectable);
    }

    #[test]
    fn non_uniform_degrees_flagged() {
        let params = SbmParams::new(100, vec![0.5, 0.5], vec![vec![6.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let p = predict(&params);
        assert!(!p.uniform_degrees);
        assert_eq!(p.group_degrees, vec![3.5, 1.5]);
        assert_eq!(p.mu_c, None);
        assert_eq!(p.lambda_c, None);
    }

    #[test]
    fn semicircle_normalizes() {
        let c = 3.0;
        let r = 2.0 * f64::sqrt(c);
        let steps = 20_000;
        let h = 2.0 * r / steps as f64;
        let mass: f64 = (0..steps)
            .map(|i| semicircle_density(c, -r + (i as f64 + 0.5) * h) * h)
            .sum();
        assert!((mass - 1.0).abs() < 1e-4);
        assert_eq!(semicircle_density(c, 4.0), 0.0);
    }
}
