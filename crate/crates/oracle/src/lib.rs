//! Exhaustive verifiers for small instances.
//!
//! Nothing here calls the cycle walk, the cycle update, or the max-flow code
//! of `intbal`; only the raw edge lists of a graph are read. The results are
//! exponential in the instance size and the entry points refuse inputs above
//! fixed caps.

use intbal::{BipartiteGraph, DecimalCycle, Digraph, EdgeId, Rational, VertexWeights};
use thiserror::Error;

/// Largest lifted edge count accepted by the cycle enumerators.
pub const MAX_CYCLE_EDGES: usize = 16;
/// Largest edge count accepted by [`brute_force_integer_solutions`].
pub const MAX_SOLUTION_EDGES: usize = 10;
/// Largest per-edge cap accepted by [`brute_force_integer_solutions`].
pub const MAX_SOLUTION_CAP: u64 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {found} edges, above the oracle cap of {cap}")]
    TooManyEdges { found: usize, cap: usize },
    #[error("weight cap {found} exceeds {MAX_SOLUTION_CAP}")]
    CapTooLarge { found: u64 },
    #[error("vertex weights must be nonnegative integers")]
    NonIntegerWeights,
    #[error("expected {expected} vertex weights, found {found}")]
    LengthMismatch { expected: usize, found: usize },
}

/// Every simple cycle of a lifted graph, each listed once.
///
/// Each cycle starts at its lowest-indexed X vertex, and of its two
/// directions the one whose first edge has the smaller index is kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleEnumeration {
    pub cycles: Vec<DecimalCycle>,
}

impl CycleEnumeration {
    pub fn completely_decimal<'a>(
        &'a self,
        weights: &'a [Rational],
    ) -> impl Iterator<Item = &'a DecimalCycle> + 'a {
        self.cycles
            .iter()
            .filter(move |c| c.edges().iter().all(|&k| weights[k].is_decimal()))
    }

    pub fn through_edge(&self, k: EdgeId) -> impl Iterator<Item = &DecimalCycle> + '_ {
        self.cycles.iter().filter(move |c| c.edges().contains(&k))
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

/// All simple cycles of `b`.
pub fn enumerate_cycles(b: &BipartiteGraph) -> Result<CycleEnumeration, OracleError> {
    cycles_where(b, |_| true)
}

/// All cycles of `b` made only of edges with decimal weight.
pub fn enumerate_completely_decimal_cycles(
    b: &BipartiteGraph,
    weights: &[Rational],
) -> Result<Vec<DecimalCycle>, OracleError> {
    Ok(cycles_where(b, |k| weights[k].is_decimal())?.cycles)
}

fn cycles_where(
    b: &BipartiteGraph,
    keep: impl Fn(EdgeId) -> bool,
) -> Result<CycleEnumeration, OracleError> {
    let m = b.edge_count();
    if m > MAX_CYCLE_EDGES {
        return Err(OracleError::TooManyEdges {
            found: m,
            cap: MAX_CYCLE_EDGES,
        });
    }
    // Vertex ids: x_i -> i, y_j -> n + j, so every cycle's smallest vertex
    // is on the X side.
    let n = b.side_len();
    let mut adj: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); 2 * n];
    for (k, &(x, y)) in b.edges().iter().enumerate() {
        if keep(k) {
            adj[x].push((n + y, k));
            adj[n + y].push((x, k));
        }
    }

    let mut found = Vec::new();
    let mut on_path = vec![false; 2 * n];
    let mut path: Vec<EdgeId> = Vec::new();
    for start in 0..n {
        on_path[start] = true;
        extend(start, start, &adj, &mut on_path, &mut path, &mut found);
        on_path[start] = false;
    }
    let cycles = found
        .into_iter()
        .map(|edges| DecimalCycle::new(b, edges).expect("enumerated cycles are alternating"))
        .collect();
    Ok(CycleEnumeration { cycles })
}

fn extend(
    start: usize,
    at: usize,
    adj: &[Vec<(usize, EdgeId)>],
    on_path: &mut [bool],
    path: &mut Vec<EdgeId>,
    found: &mut Vec<Vec<EdgeId>>,
) {
    for &(next, k) in &adj[at] {
        if path.last() == Some(&k) {
            continue;
        }
        if next == start {
            if path.len() >= 2 && path[0] < k {
                let mut cycle = path.clone();
                cycle.push(k);
                found.push(cycle);
            }
            continue;
        }
        if next < start || on_path[next] {
            continue;
        }
        on_path[next] = true;
        path.push(k);
        extend(start, next, adj, on_path, path, found);
        path.pop();
        on_path[next] = false;
    }
}

/// Every simple directed cycle of `g` as a list of edge ids, each once.
pub fn enumerate_directed_cycles(g: &Digraph) -> Result<Vec<Vec<EdgeId>>, OracleError> {
    if g.edge_count() > MAX_CYCLE_EDGES {
        return Err(OracleError::TooManyEdges {
            found: g.edge_count(),
            cap: MAX_CYCLE_EDGES,
        });
    }
    let n = g.vertex_count();
    let mut out_adj: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); n];
    for (k, &(t, h)) in g.edges().iter().enumerate() {
        out_adj[t].push((h, k));
    }
    let mut cycles = Vec::new();
    for start in 0..n {
        let mut on_path = vec![false; n];
        on_path[start] = true;
        let mut path = Vec::new();
        directed_extend(start, start, &out_adj, &mut on_path, &mut path, &mut cycles);
    }
    Ok(cycles)
}

fn directed_extend(
    start: usize,
    at: usize,
    out_adj: &[Vec<(usize, EdgeId)>],
    on_path: &mut [bool],
    path: &mut Vec<EdgeId>,
    cycles: &mut Vec<Vec<EdgeId>>,
) {
    for &(next, k) in &out_adj[at] {
        if next == start {
            let mut cycle = path.clone();
            cycle.push(k);
            cycles.push(cycle);
        } else if next > start && !on_path[next] {
            on_path[next] = true;
            path.push(k);
            directed_extend(start, next, out_adj, on_path, path, cycles);
            path.pop();
            on_path[next] = false;
        }
    }
}

/// All integer weight vectors in `[0, cap]^|E|` balancing `g` at exactly `u`.
pub fn brute_force_integer_solutions(
    g: &Digraph,
    u: &VertexWeights,
    cap: u64,
) -> Result<Vec<Vec<u64>>, OracleError> {
    let m = g.edge_count();
    if m > MAX_SOLUTION_EDGES {
        return Err(OracleError::TooManyEdges {
            found: m,
            cap: MAX_SOLUTION_EDGES,
        });
    }
    if cap > MAX_SOLUTION_CAP {
        return Err(OracleError::CapTooLarge { found: cap });
    }
    if u.len() != g.vertex_count() {
        return Err(OracleError::LengthMismatch {
            expected: g.vertex_count(),
            found: u.len(),
        });
    }
    let target: Vec<i128> = u
        .as_slice()
        .iter()
        .map(|x| {
            x.to_integer()
                .and_then(|v| i128::try_from(v).ok())
                .filter(|&v| v >= 0)
                .ok_or(OracleError::NonIntegerWeights)
        })
        .collect::<Result<_, _>>()?;

    let mut search = Search {
        edges: g.edges(),
        target: &target,
        cap,
        out: vec![0; g.vertex_count()],
        inn: vec![0; g.vertex_count()],
        current: vec![0; m],
        found: Vec::new(),
    };
    search.run(0);
    Ok(search.found)
}

struct Search<'a> {
    edges: &'a [(usize, usize)],
    target: &'a [i128],
    cap: u64,
    out: Vec<i128>,
    inn: Vec<i128>,
    current: Vec<u64>,
    found: Vec<Vec<u64>>,
}

impl Search<'_> {
    fn run(&mut self, k: usize) {
        if k == self.edges.len() {
            if self.out == self.target && self.inn == self.target {
                self.found.push(self.current.clone());
            }
            return;
        }
        let (t, h) = self.edges[k];
        for w in 0..=self.cap {
            let wi = w as i128;
            // Partial sums only grow, so overshooting prunes the branch.
            if self.out[t] + wi > self.target[t] || self.inn[h] + wi > self.target[h] {
                break;
            }
            self.out[t] += wi;
            self.inn[h] += wi;
            self.current[k] = w;
            self.run(k + 1);
            self.out[t] -= wi;
            self.inn[h] -= wi;
        }
        self.current[k] = 0;
    }
}

/// `true` if `weights` is integral and equals one of `solutions`.
pub fn contains_solution(solutions: &[Vec<u64>], weights: &[Rational]) -> bool {
    let Some(as_ints) = weights
        .iter()
        .map(|w| w.to_integer().and_then(|v| u64::try_from(v).ok()))
        .collect::<Option<Vec<u64>>>()
    else {
        return false;
    };
    solutions.contains(&as_ints)
}
