use num_complex::Complex64;

use super::is_real;
use crate::error::{Error, Result};

/// Real eigenvalues that escape the disk of radius `sqrt(leading)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BulkSplit {
    pub leading: f64,
    /// `sqrt(leading)`.
    pub radius: f64,
    /// Real eigenvalues with modulus above `(1 + delta) * radius`, leading
    /// eigenvalue included, in input order.
    pub outside: Vec<f64>,
}

impl BulkSplit {
    /// Number of groups suggested by the split.
    pub fn q_estimate(&self) -> usize {
        self.outside.len()
    }
}

/// Splits a spectrum sorted by descending modulus. The first value must be
/// real and positive.
pub fn real_eigs_outside_bulk(values: &[Complex64], delta: f64) -> Result<BulkSplit> {
    let first = *values
        .first()
        .ok_or_else(|| Error::InvalidParams("empty spectrum".into()))?;
    if !is_real(first) || first.re <= 1e-12 {
        return Err(Error::DegenerateSpectrum(first));
    }
    let leading = first.re;
    let radius = leading.sqrt();
    let cut = (1.0 + delta) * radius;
    let outside = values
        .iter()
        .filter(|z| is_real(**z) && z.re.abs() > cut)
        .map(|z| z.re)
        .collect();
    Ok(BulkSplit {
        leading,
        radius,
        outside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn counts_real_outliers() {
        let vals = [
            c(4.0, 0.0),
            c(-3.0, 0.0),
            c(2.5, 0.0),
            c(1.0, 1.9),
            c(1.0, -1.9),
            c(2.0, 0.0),
        ];
        let split = real_eigs_outside_bulk(&vals, 0.02).unwrap();
        assert_eq!(split.radius, 2.0);
        assert_eq!(split.outside, vec![4.0, -3.0, 2.5]);
        assert_eq!(split.q_estimate(), 3);
    }

    #[test]
    fn nilpotent_spectrum_is_degenerate() {
        assert!(matches!(
            real_eigs_outside_bulk(&[c(0.0, 0.0), c(0.0, 0.0)], 0.02),
            Err(Error::DegenerateSpectrum(_))
        ));
        assert!(real_eigs_outside_bulk(&[c(1.0, 1.0)], 0.02).is_err());
    }
}
