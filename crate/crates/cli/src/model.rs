use serde::{Deserialize, Serialize};

use nonbacktracking::SbmParams;

use crate::error::{CliError, Result};
use crate::files::Header;

/// Equal-group block model with `c_in` inside groups and `c_out` between.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlantedModel {
    pub n: usize,
    pub q: usize,
    pub c_in: f64,
    pub c_out: f64,
}

impl PlantedModel {
    /// Mean degree `c` with `c_in - c_out = diff`.
    pub fn with_difference(n: usize, q: usize, c: f64, diff: f64) -> Self {
        let c_out = c - diff / q as f64;
        PlantedModel {
            n,
            q,
            c_in: c_out + diff,
            c_out,
        }
    }

    /// Mean degree `c` with `c_out / c_in = ratio`.
    pub fn with_ratio(n: usize, q: usize, c: f64, ratio: f64) -> Self {
        let c_in = q as f64 * c / (1.0 + (q as f64 - 1.0) * ratio);
        PlantedModel {
            n,
            q,
            c_in,
            c_out: ratio * c_in,
        }
    }

    pub fn mean_degree(&self) -> f64 {
        (self.c_in + (self.q as f64 - 1.0) * self.c_out) / self.q as f64
    }

    pub fn sbm(&self) -> Result<SbmParams> {
        Ok(SbmParams::planted(self.n, self.q, self.c_in, self.c_out)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }

    /// The `params` entry of a file header, if any.
    pub fn from_header(header: &Header) -> Result<Option<Self>> {
        header
            .get("params")
            .map(|s| serde_json::from_str(s).map_err(CliError::from))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_and_ratio_hit_their_targets() {
        let m = PlantedModel::with_difference(100, 2, 3.0, 4.0);
        assert_eq!((m.c_in, m.c_out), (5.0, 1.0));
        assert!((m.mean_degree() - 3.0).abs() < 1e-12);
        let r = PlantedModel::with_ratio(100, 3, 3.0, 0.1);
        assert!((r.c_out / r.c_in - 0.1).abs() < 1e-12);
        assert!((r.mean_degree() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let m = PlantedModel::with_ratio(30_000, 3, 3.0, 0.1);
        let mut h = Header::new("generate", 1);
        h.push("params", m.to_json());
        assert_eq!(PlantedModel::from_header(&h).unwrap(), Some(m));
        assert_eq!(PlantedModel::from_header(&Header::default()).unwrap(), None);
    }
}
