//! Small named graphs and a random strongly connected graph generator.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digraph::Digraph;
use crate::rational::Rational;
use crate::WeightedDigraph;

/// Directed cycle `v0 -> v1 -> ... -> v(n-1) -> v0`.
pub fn cycle(n: usize) -> Digraph {
    Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

/// Both orientations of the `n`-cycle (`n >= 3`): forward edges first.
pub fn bidirected_cycle(n: usize) -> Digraph {
    let forward = (0..n).map(|i| (i, (i + 1) % n));
    let backward = (0..n).map(|i| ((i + 1) % n, i));
    Digraph::new(n, forward.chain(backward)).expect("valid bidirected cycle")
}

/// Every ordered pair, self-arcs included, in row-major order.
pub fn complete(n: usize) -> Digraph {
    Digraph::new(n, (0..n).flat_map(|i| (0..n).map(move |j| (i, j)))).expect("valid complete")
}

/// `v0 <-> v1` with a self-arc at each vertex. Edge order: v0v1, v1v0, v0v0, v1v1.
pub fn two_cycle_loops() -> Digraph {
    Digraph::new(2, [(0, 1), (1, 0), (0, 0), (1, 1)]).expect("valid graph")
}

/// [`two_cycle_loops`] with every weight `1/2`, giving vertex weights `(1, 1)`.
pub fn canonical_instance() -> WeightedDigraph {
    let half = Rational::new(1, 2).expect("nonzero denominator");
    WeightedDigraph::new(two_cycle_loops(), vec![half; 4]).expect("valid weights")
}

/// Resolves `cycleN`, `bicycleN`, `completeN`, `bidirected-triangle` and
/// `two-cycle-loops`.
pub fn named_graph(name: &str) -> Option<Digraph> {
    match name {
        "bidirected-triangle" => return Some(bidirected_cycle(3)),
        "two-cycle-loops" | "canonical" => return Some(two_cycle_loops()),
        _ => {}
    }
    let sized = |prefix: &str, min: usize| {
        name.strip_prefix(prefix)
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&n| (min..=4096).contains(&n))
    };
    if let Some(n) = sized("bicycle", 3) {
        Some(bidirected_cycle(n))
    } else if let Some(n) = sized("cycle", 1) {
        Some(cycle(n))
    } else {
        sized("complete", 1).map(complete)
    }
}

/// A random strongly connected digraph: a Hamiltonian cycle through a
/// random vertex order plus up to `extra` random further edges (self-arcs
/// allowed). The edge list is shuffled.
pub fn random_strongly_connected(n: usize, extra: usize, seed: u64) -> Digraph {
    assert!(n >= 1, "need at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut present = vec![false; n * n];
    let mut edges = Vec::with_capacity(n + extra);
    for i in 0..n {
        let (t, h) = (order[i], order[(i + 1) % n]);
        if !present[t * n + h] {
            present[t * n + h] = true;
            edges.push((t, h));
        }
    }
    let mut free: Vec<usize> = (0..n * n).filter(|&s| !present[s]).collect();
    free.shuffle(&mut rng);
    edges.extend(free.into_iter().take(extra).map(|s| (s / n, s % n)));
    edges.shuffle(&mut rng);
    Digraph::new(n, edges).expect("no duplicates by construction")
}
