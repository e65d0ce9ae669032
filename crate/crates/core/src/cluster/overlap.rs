use super::{max_weight_assignment, Labeling};
use crate::error::{Error, Result};

/// Normalized agreement between two labelings, maximized over relabelings
/// of `pred`: `(best fraction agreeing - 1/q) / (1 - 1/q)`.
///
/// Exhaustive over permutations for `q <= 8`, optimal assignment on the
/// confusion matrix beyond that.
pub fn overlap(truth: &Labeling, pred: &Labeling) -> Result<f64> {
    if truth.len() != pred.len() {
        return Err(Error::LengthMismatch(truth.len(), pred.len()));
    }
    if truth.q != pred.q {
        return Err(Error::InvalidParams(format!(
            "q mismatch: {} vs {}",
            truth.q, pred.q
        )));
    }
    let (n, q) = (truth.len(), truth.q);
    if n == 0 || q < 2 {
        return Err(Error::InvalidParams(format!(
            "overlap needs n > 0 and q >= 2 (n = {n}, q = {q})"
        )));
    }
    // confusion[p * q + t]: predicted p, true t
    let mut confusion = vec![0usize; q * q];
    for (&t, &p) in truth.labels.iter().zip(&pred.labels) {
        confusion[p * q + t] += 1;
    }
    let agree = if q <= 8 {
        best_by_permutation(&confusion, q)
    } else {
        let w: Vec<f64> = confusion.iter().map(|&c| c as f64).collect();
        max_weight_assignment(&w, q)
            .iter()
            .enumerate()
            .map(|(p, &t)| confusion[p * q + t])
            .sum()
    };
    // (q agree - n) / (n (q - 1)) in exact integer arithmetic for the numerator
    Ok((q * agree - n) as f64 / (n * (q - 1)) as f64)
}

fn best_by_permutation(confusion: &[usize], q: usize) -> usize {
    // Heap's algorithm over assignments predicted -> true
    let mut perm: Vec<usize> = (0..q).collect();
    let score = |perm: &[usize]| -> usize { (0..q).map(|p| confusion[p * q + perm[p]]).sum() };
    let mut best = score(&perm);
    let mut c = vec![0usize; q];
    let mut i = 0;
    while i < q {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.max(score(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}
