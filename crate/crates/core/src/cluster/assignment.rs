/// Maximum-weight perfect matching on a square weight matrix (row-major,
/// `q x q`). Returns `assign[row] = column`.
///
/// Shortest augmenting path form of the Hungarian method, `O(q^3)`.
pub fn max_weight_assignment(weights: &[f64], q: usize) -> Vec<usize> {
    assert_eq!(weights.len(), q * q, "weights must be q x q");
    if q == 0 {
        return Vec::new();
    }
    let max = weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // minimize cost = max - weight, 1-based potentials with a sentinel column 0
    let cost = |i: usize, j: usize| max - weights[(i - 1) * q + (j - 1)];
    let mut u = vec![0.0; q + 1];
    let mut v = vec![0.0; q + 1];
    let mut row_of = vec![0usize; q + 1];
    let mut way = vec![0usize; q + 1];
    for i in 1..=q {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; q + 1];
        let mut used = vec![false; q + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=q {
                if used[j] {
                    continue;
                }
                let cur = cost(i0, j) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=q {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0; q];
    for j in 1..=q {
        assign[row_of[j] - 1] = j - 1;
    }
    assign
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(w: &[f64], q: usize) -> f64 {
        fn rec(w: &[f64], q: usize, row: usize, used: &mut Vec<bool>) -> f64 {
            if row == q {
                return 0.0;
            }
            let mut best = f64::NEG_INFINITY;
            for j in 0..q {
                if !used[j] {
                    used[j] = true;
                    best = best.max(w[row * q + j] + rec(w, q, row + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        rec(w, q, 0, &mut vec![false; q])
    }

    #[test]
    fn picks_the_anti_diagonal() {
        let w = [0.0, 0.0, 5.0, 0.0, 5.0, 0.0, 5.0, 0.0, 0.0];
        assert_eq!(max_weight_assignment(&w, 3), vec![2, 1, 0]);
    }

    proptest! {
        #[test]
        fn matches_brute_force(q in 1usize..7, seed in prop::collection::vec(0u32..50, 49)) {
            let w: Vec<f64> = seed[..q * q].iter().map(|&x| x as f64).collect();
            let a = max_weight_assignment(&w, q);
            let mut seen = vec![false; q];
            for &j in &a {
                prop_assert!(!seen[j]);
                seen[j] = true;
            }
            let total: f64 = a.iter().enumerate().map(|(i, &j)| w[i * q + j]).sum();
            prop_assert_eq!(total, brute_force(&w, q));
        }
    }
}
