use rand::seq::SliceRandom;
use rand::Rng as _;

use super::{families, Graph};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed};

/// A named member of a generated corpus.
#[derive(Debug, Clone)]
pub struct CorpusGraph {
    pub name: String,
    pub graph: Graph,
}

/// Uniform random recursive tree: vertex `i` attaches to a uniform
/// earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = rng_from_seed(seed);
    let edges: Vec<_> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    Graph::from_simple_edges(n, &edges)
}

/// Each pair is an edge with probability `mean_degree / (n - 1)`.
pub fn erdos_renyi(n: usize, mean_degree: f64, seed: u64) -> Graph {
    let p = if n > 1 {
        (mean_degree / (n - 1) as f64).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_simple_edges(n, &edges)
}

/// Uniform `d`-regular simple graph by the pairing model with rejection.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    const ATTEMPTS: u64 = 10_000;
    if (n * d) % 2 != 0 || d >= n.max(1) {
        return Err(Error::InvalidParams(format!(
            "no simple {d}-regular graph on {n} vertices"
        )));
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    for attempt in 0..ATTEMPTS {
        let mut rng = rng_from_seed(derive_seed(seed, attempt));
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = stubs
            .chunks(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        edges.sort_unstable();
        let simple = edges.iter().all(|&(u, v)| u != v) && edges.windows(2).all(|w| w[0] != w[1]);
        if simple {
            return Ok(Graph::from_simple_edges(n, &edges));
        }
    }
    Err(Error::Matching(format!(
        "no simple {d}-regular pairing on {n} vertices in {ATTEMPTS} attempts"
    )))
}

/// `count` small graphs with at least one edge and at most `max_n`
/// vertices, cycling through sparse and denser random graphs, random
/// trees, random 3-regular graphs, and named families.
pub fn small_corpus(count: usize, max_n: usize, seed: u64) -> Vec<CorpusGraph> {
    assert!(max_n >= 4, "corpus needs max_n >= 4");
    let mut out = Vec::with_capacity(count);
    let mut i = 0u64;
    while out.len() < count {
        let s = derive_seed(seed, i);
        let mut rng = rng_from_seed(s);
        let n = rng.random_range(4..=max_n);
        let (name, graph) = match i % 5 {
            0 => {
                let c = rng.random_range(1.0..3.0);
                (format!("er(n={n},c={c:.2})"), erdos_renyi(n, c, s))
            }
            1 => (format!("tree(n={n})"), random_tree(n, s)),
            2 => {
                let n = n & !1;
                (
                    format!("regular3(n={n})"),
                    random_regular(n, 3, s).expect("3-regular exists"),
                )
            }
            3 => {
                let c = rng.random_range(3.0..6.0);
                (format!("er(n={n},c={c:.2})"), erdos_renyi(n, c, s))
            }
            _ => {
                let k = rng.random_range(3..=max_n.min(12));
                match (i / 5) % 4 {
                    0 => (format!("cycle({k})"), families::cycle(k)),
                    1 => (format!("path({k})"), families::path(k)),
                    2 => (format!("star({})", k - 1), families::star(k - 1)),
                    _ => {
                        let k = k.min(8);
                        (format!("complete({k})"), families::complete(k))
                    }
                }
            }
        };
        i += 1;
        if graph.m() > 0 {
            out.push(CorpusGraph { name, graph });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_have_n_minus_one_edges() {
        for seed in 0..20 {
            let g = random_tree(30, seed);
            assert_eq!(g.m(), 29);
            assert!(g.degrees().iter().all(|&d| d > 0));
        }
    }

    #[test]
    fn regular_graphs_are_regular() {
        let g = random_regular(20, 3, 4).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 3));
        assert!(random_regular(7, 3, 0).is_err());
    }

    #[test]
    fn corpus_is_reproducible_and_bounded() {
        let a = small_corpus(40, 30, 9);
        let b = small_corpus(40, 30, 9);
        assert_eq!(a.len(), 40);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.graph, y.graph);
            assert!(x.graph.n() <= 30 && x.graph.m() > 0);
        }
    }
}
