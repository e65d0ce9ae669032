//! Benchmark fixtures shared by the criterion targets in `benches/`.

use nonbacktracking::graph::sbm_sample;
use nonbacktracking::{LabeledGraph, SbmParams};

/// Two-group planted graph with `c_in = 5`, `c_out = 1` (mean degree 3).
pub fn planted(n: usize, seed: u64) -> (SbmParams, LabeledGraph) {
    let params = SbmParams::planted(n, 2, 5.0, 1.0).expect("valid parameters");
    let lg = sbm_sample(&params, seed).expect("sampling succeeds");
    (params, lg)
}
