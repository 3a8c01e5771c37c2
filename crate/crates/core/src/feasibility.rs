//! Producing balanced weights: from a vertex-weight vector by max-flow, and
//! at random for testing.
//!
//! A vertex-weight vector `u` is feasible on `G` when some nonnegative edge
//! weights balance every vertex at exactly `u`. On the bipartite lift that is
//! a transportation problem: `x_i` supplies `u_i`, `y_i` demands `u_i`, and
//! goods move along lifted edges. It is solved here with Edmonds-Karp over
//! exact rationals. With integer `u` the flow found is itself integral, so
//! [`generate_balanced_instance`] is what produces fractional inputs.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bipartite::{BVertex, BipartiteGraph};
use crate::digraph::{Digraph, EdgeId, VertexId, VertexWeights, WeightedDigraph};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Hall-type certificate that `u` is infeasible: the vertices in `sources`
/// must send `supply` in total, but every edge leaving them ends in
/// `neighbors`, which can take in only `demand < supply`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibilityCut {
    pub sources: Vec<VertexId>,
    pub neighbors: Vec<VertexId>,
    pub supply: Rational,
    pub demand: Rational,
}

impl fmt::Display for InfeasibilityCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "vertices {:?} must send {} but their out-neighbours {:?} can absorb only {}",
            self.sources, self.supply, self.neighbors, self.demand
        )
    }
}

/// Supply `u_i` at each `x_i` and the same demand at each `y_i`.
#[derive(Clone, Debug)]
pub struct TransportationInstance {
    lift: BipartiteGraph,
    supply: Vec<Rational>,
}

impl TransportationInstance {
    pub fn new(g: &Digraph, u: &VertexWeights) -> Result<Self> {
        if u.len() != g.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: g.vertex_count(),
                found: u.len(),
            });
        }
        Ok(TransportationInstance {
            lift: BipartiteGraph::lift(g),
            supply: u.as_slice().to_vec(),
        })
    }

    pub fn lift(&self) -> &BipartiteGraph {
        &self.lift
    }

    /// Total supply, which is also the total demand.
    pub fn total(&self) -> Rational {
        self.supply.iter().sum()
    }

    /// Edge weights meeting every supply and demand exactly, or a cut
    /// showing none exist.
    pub fn solve(&self) -> Result<Vec<Rational>> {
        let n = self.lift.side_len();
        let total = self.total();
        let source = 2 * n;
        let sink = 2 * n + 1;
        let mut net = FlowNetwork::new(2 * n + 2);
        // Lifted edge k becomes arc pair 2k, 2k+1: added first so the flow
        // on edge k is the residual of arc 2k + 1.
        for &(x, y) in self.lift.edges() {
            net.add_arc(x, n + y, total.clone());
        }
        for (i, s) in self.supply.iter().enumerate() {
            net.add_arc(source, i, s.clone());
            net.add_arc(n + i, sink, s.clone());
        }

        let flow = net.max_flow(source, sink);
        if flow == total {
            let w = (0..self.lift.edge_count())
                .map(|k| net.residual[2 * k + 1].clone())
                .collect();
            return Ok(w);
        }

        let reach = net.reachable_from(source);
        let sources: Vec<VertexId> = (0..n).filter(|&i| reach[i]).collect();
        let neighbors: BTreeSet<VertexId> = sources
            .iter()
            .flat_map(|&i| self.lift.incident(BVertex::x(i)))
            .map(|&k| self.lift.edges()[k].1)
            .collect();
        let supply: Rational = sources.iter().map(|&i| &self.supply[i]).sum();
        let demand: Rational = neighbors.iter().map(|&j| &self.supply[j]).sum();
        if supply <= demand {
            return Err(Error::InvariantViolation(format!(
                "max flow {flow} < {total} but residual cut has supply {supply} <= demand {demand}"
            )));
        }
        Err(Error::Infeasible(Box::new(InfeasibilityCut {
            sources,
            neighbors: neighbors.into_iter().collect(),
            supply,
            demand,
        })))
    }
}

/// Nonnegative edge weights on `g` balancing every vertex at exactly `u`.
pub fn solve_feasible_w(g: &Digraph, u: &VertexWeights) -> Result<Vec<Rational>> {
    TransportationInstance::new(g, u)?.solve()
}

/// Residual network with arcs stored in forward/backward pairs.
struct FlowNetwork {
    head: Vec<usize>,
    residual: Vec<Rational>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            head: Vec::new(),
            residual: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: Rational) {
        self.adj[from].push(self.head.len());
        self.head.push(to);
        self.residual.push(cap);
        self.adj[to].push(self.head.len());
        self.head.push(from);
        self.residual.push(Rational::zero());
    }

    /// Shortest augmenting paths; terminates for any capacities.
    fn max_flow(&mut self, s: usize, t: usize) -> Rational {
        let mut flow = Rational::zero();
        loop {
            let mut via = vec![usize::MAX; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            let mut found = false;
            'bfs: while let Some(v) = queue.pop_front() {
                for &a in &self.adj[v] {
                    let w = self.head[a];
                    if w != s && via[w] == usize::MAX && !self.residual[a].is_zero() {
                        via[w] = a;
                        if w == t {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if !found {
                return flow;
            }

            let mut bottleneck: Option<Rational> = None;
            let mut v = t;
            while v != s {
                let a = via[v];
                if bottleneck.as_ref().is_none_or(|b| self.residual[a] < *b) {
                    bottleneck = Some(self.residual[a].clone());
                }
                v = self.head[a ^ 1];
            }
            let bottleneck = bottleneck.expect("path has at least one arc");
            let mut v = t;
            while v != s {
                let a = via[v];
                self.residual[a] -= &bottleneck;
                self.residual[a ^ 1] += &bottleneck;
                v = self.head[a ^ 1];
            }
            flow += &bottleneck;
        }
    }

    fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &a in &self.adj[v] {
                let w = self.head[a];
                if !seen[w] && !self.residual[a].is_zero() {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Knobs for [`generate_balanced_instance`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    /// Largest integer weight put on a base cycle.
    pub max_weight: u32,
    /// Largest denominator of an injected fraction. Below 2, the output is
    /// integral.
    pub max_denominator: u32,
    /// Number of random directed cycles in the integer base circulation.
    pub base_cycles: usize,
    /// Number of fractional injections.
    pub fractional_rounds: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            max_weight: 3,
            max_denominator: 8,
            base_cycles: 4,
            fractional_rounds: 2,
        }
    }
}

const GENERATION_ATTEMPTS: usize = 16;
const COVER_ATTEMPTS: usize = 8;

/// A random balanced weighting of a strongly connected `g` whose vertex
/// weights are integers, deterministic in `seed`.
///
/// The base is an integer combination of random directed cycles. On top of
/// it, each fractional round picks a random directed cycle with vertex set
/// `S`, finds two or three distinct cycle covers of `S` (perfect matchings of
/// the lift restricted to `S`), and adds `q_j / d` along cover `j` with
/// `sum q_j` a multiple of `d`. Each vertex of `S` then gains the same
/// integer on both sides, while edges in only one cover become fractional.
///
/// If no vertex set has two distinct covers (a bare directed cycle, say),
/// the result is integral.
pub fn generate_balanced_instance(
    g: &Digraph,
    seed: u64,
    params: &GeneratorParams,
) -> Result<WeightedDigraph> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if g.edge_count() == 0 {
        return Ok(WeightedDigraph::zero(g.clone()));
    }

    let mut weights = Vec::new();
    for _ in 0..GENERATION_ATTEMPTS {
        weights = vec![Rational::zero(); g.edge_count()];
        if params.max_weight >= 1 {
            for _ in 0..params.base_cycles {
                let cycle = random_cycle(g, &mut rng);
                let c = Rational::from(rng.random_range(1..=params.max_weight));
                for k in cycle {
                    weights[k] += &c;
                }
            }
        }
        if params.max_denominator < 2 {
            break;
        }
        for _ in 0..params.fractional_rounds {
            inject_fraction(g, &mut weights, params.max_denominator, &mut rng);
        }
        if weights.iter().any(Rational::is_decimal) {
            break;
        }
    }

    let out = WeightedDigraph::new(g.clone(), weights)?;
    let u = out
        .check_balanced()
        .map_err(|e| Error::InvariantViolation(format!("generator lost balance: {e}")))?;
    u.require_integral()
        .map_err(|e| Error::InvariantViolation(format!("generator lost integrality: {e}")))?;
    Ok(out)
}

/// [`generate_balanced_instance`] on each strongly connected component, with
/// zero weight on edges between components. Accepts any digraph.
pub fn generate_balanced_by_components(
    g: &Digraph,
    seed: u64,
    params: &GeneratorParams,
) -> Result<WeightedDigraph> {
    let mut weights = vec![Rational::zero(); g.edge_count()];
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    for component in g.strongly_connected_components() {
        let sub_seed = seeds.random::<u64>();
        let (sub, kept) = g.induced_subgraph(&component);
        let local = generate_balanced_instance(&sub, sub_seed, params)?;
        for (w, k) in local.weights().iter().zip(kept) {
            weights[k] = w.clone();
        }
    }
    WeightedDigraph::new(g.clone(), weights)
}

fn inject_fraction(g: &Digraph, weights: &mut [Rational], max_den: u32, rng: &mut ChaCha8Rng) {
    for _ in 0..COVER_ATTEMPTS {
        let cycle = random_cycle(g, rng);
        let mut members: Vec<VertexId> = cycle.iter().map(|&k| g.edge(k).0).collect();
        members.sort_unstable();

        let mut covers: BTreeSet<Vec<EdgeId>> = BTreeSet::new();
        let mut first = cycle.clone();
        first.sort_unstable();
        covers.insert(first);
        for _ in 0..COVER_ATTEMPTS {
            if let Some(cover) = random_cover(g, &members, rng) {
                covers.insert(cover);
            }
        }
        if covers.len() < 2 {
            continue;
        }

        let mut covers: Vec<_> = covers.into_iter().collect();
        covers.shuffle(rng);
        covers.truncate(3);
        let d = rng.random_range(2..=max_den);
        let mut numerators: Vec<u32> = (1..covers.len()).map(|_| rng.random_range(1..d)).collect();
        let partial: u32 = numerators.iter().sum();
        let last = (d - partial % d) % d;
        numerators.push(if last == 0 { d } else { last });

        for (cover, q) in covers.iter().zip(numerators) {
            let amount = Rational::new(q, d).expect("d >= 2");
            for &k in cover {
                weights[k] += &amount;
            }
        }
        return;
    }
}

/// Follows random out-edges until a vertex repeats and returns the directed
/// cycle closed there. Every vertex must have an out-edge.
fn random_cycle(g: &Digraph, rng: &mut ChaCha8Rng) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let mut position = vec![usize::MAX; n];
    let mut path: Vec<EdgeId> = Vec::new();
    let mut at = rng.random_range(0..n);
    loop {
        position[at] = path.len();
        let out = g.out_edges(at);
        let k = out[rng.random_range(0..out.len())];
        path.push(k);
        let next = g.edge(k).1;
        if position[next] != usize::MAX {
            return path.split_off(position[next]);
        }
        at = next;
    }
}

/// A random perfect matching between the tails and heads in `members`,
/// i.e. a set of vertex-disjoint directed cycles covering `members`. Edges
/// are returned sorted.
fn random_cover(g: &Digraph, members: &[VertexId], rng: &mut ChaCha8Rng) -> Option<Vec<EdgeId>> {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &v in members {
        inside[v] = true;
    }
    let options: Vec<Vec<EdgeId>> = (0..n)
        .map(|v| {
            let mut edges: Vec<EdgeId> = if inside[v] {
                g.out_edges(v)
                    .iter()
                    .copied()
                    .filter(|&k| inside[g.edge(k).1])
                    .collect()
            } else {
                Vec::new()
            };
            edges.shuffle(rng);
            edges
        })
        .collect();

    let mut matched_by: Vec<Option<EdgeId>> = vec![None; n];
    let mut order = members.to_vec();
    order.shuffle(rng);
    for &x in &order {
        let mut visited = vec![false; n];
        if !augment(g, &options, x, &mut visited, &mut matched_by) {
            return None;
        }
    }
    let mut cover: Vec<EdgeId> = members.iter().filter_map(|&y| matched_by[y]).collect();
    cover.sort_unstable();
    Some(cover)
}

fn augment(
    g: &Digraph,
    options: &[Vec<EdgeId>],
    x: VertexId,
    visited: &mut [bool],
    matched_by: &mut [Option<EdgeId>],
) -> bool {
    for &k in &options[x] {
        let y = g.edge(k).1;
        if visited[y] {
            continue;
        }
        visited[y] = true;
        let free = match matched_by[y] {
            None => true,
            Some(prev) => augment(g, options, g.edge(prev).0, visited, matched_by),
        };
        if free {
            matched_by[y] = Some(k);
            return true;
        }
    }
    false
}
