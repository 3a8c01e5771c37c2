//! Directed graphs, edge weights, and vertex balance.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type VertexId = usize;
pub type EdgeId = usize;

/// A simple digraph on vertices `0..n`. Self-arcs are allowed, parallel
/// edges are not. Edge `k` is `edges()[k]`, a `(tail, head)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    out_adj: Vec<Vec<EdgeId>>,
    in_adj: Vec<Vec<EdgeId>>,
}

impl Digraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let edges: Vec<_> = edges.into_iter().collect();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(edges.len());
        for (k, &(tail, head)) in edges.iter().enumerate() {
            for vertex in [tail, head] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if !seen.insert((tail, head)) {
                return Err(Error::DuplicateEdge { tail, head });
            }
            out_adj[tail].push(k);
            in_adj[head].push(k);
        }
        Ok(Digraph {
            n,
            edges,
            out_adj,
            in_adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, k: EdgeId) -> (VertexId, VertexId) {
        self.edges[k]
    }

    /// Edges with tail `v`, in increasing edge order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_adj[v]
    }

    /// Edges with head `v`, in increasing edge order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_adj[v]
    }

    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out_adj[v].iter().map(move |&k| self.edges[k].1)
    }

    pub fn in_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.in_adj[v].iter().map(move |&k| self.edges[k].0)
    }

    pub fn find_edge(&self, tail: VertexId, head: VertexId) -> Option<EdgeId> {
        self.out_adj
            .get(tail)?
            .iter()
            .copied()
            .find(|&k| self.edges[k].1 == head)
    }

    /// Strongly connected components, listed in reverse topological order of
    /// the condensation (a component only has edges into earlier ones).
    /// Vertices inside a component are sorted.
    pub fn strongly_connected_components(&self) -> Vec<Vec<VertexId>> {
        // Iterative Tarjan.
        const UNVISITED: usize = usize::MAX;
        let n = self.n;
        let mut index = vec![UNVISITED; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut components = Vec::new();
        let mut next_index = 0;
        // (vertex, position in its out-edge list)
        let mut call: Vec<(VertexId, usize)> = Vec::new();

        for root in 0..n {
            if index[root] != UNVISITED {
                continue;
            }
            call.push((root, 0));
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if let Some(&k) = self.out_adj[v].get(*pos) {
                    *pos += 1;
                    let w = self.edges[k].1;
                    if index[w] == UNVISITED {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    component.sort_unstable();
                    components.push(component);
                }
            }
        }
        components
    }

    /// `true` iff there is exactly one strongly connected component. The
    /// empty graph is not strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        self.n > 0 && self.strongly_connected_components().len() == 1
    }

    /// The subgraph induced by `vertices`, relabelled `0..vertices.len()` in
    /// the given order, together with the original id of each kept edge.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> (Digraph, Vec<EdgeId>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let kept: Vec<EdgeId> = (0..self.edges.len())
            .filter(|&k| {
                let (t, h) = self.edges[k];
                local[t] != usize::MAX && local[h] != usize::MAX
            })
            .collect();
        let edges = kept.iter().map(|&k| {
            let (t, h) = self.edges[k];
            (local[t], local[h])
        });
        let sub = Digraph::new(vertices.len(), edges).expect("induced subgraph of a valid graph");
        (sub, kept)
    }
}

/// Per-vertex weights `u`. Integrality is a property checked on demand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexWeights(Vec<Rational>);

impl VertexWeights {
    pub fn new(u: Vec<Rational>) -> Result<Self> {
        if let Some(vertex) = u.iter().position(Rational::is_negative) {
            return Err(Error::NegativeWeight {
                edge: vertex,
                weight: u[vertex].clone(),
            });
        }
        Ok(VertexWeights(u))
    }

    pub fn from_integers(u: impl IntoIterator<Item = u64>) -> Self {
        VertexWeights(u.into_iter().map(Rational::from).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: VertexId) -> &Rational {
        &self.0[i]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    /// Errors on the first vertex whose weight is not an integer.
    pub fn require_integral(&self) -> Result<()> {
        match self.0.iter().position(|x| !x.is_integer()) {
            Some(vertex) => Err(Error::NonIntegerVertexWeight {
                vertex,
                weight: self.0[vertex].clone(),
            }),
            None => Ok(()),
        }
    }
}

/// A digraph with one nonnegative rational weight per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    graph: Digraph,
    weights: Vec<Rational>,
}

impl WeightedDigraph {
    pub fn new(graph: Digraph, weights: Vec<Rational>) -> Result<Self> {
        validate_weights(graph.edge_count(), &weights)?;
        Ok(WeightedDigraph { graph, weights })
    }

    /// All-zero weights on `graph`.
    pub fn zero(graph: Digraph) -> Self {
        let weights = vec![Rational::zero(); graph.edge_count()];
        WeightedDigraph { graph, weights }
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, k: EdgeId) -> &Rational {
        &self.weights[k]
    }

    /// Same graph, new weights.
    pub fn with_weights(&self, weights: Vec<Rational>) -> Result<Self> {
        WeightedDigraph::new(self.graph.clone(), weights)
    }

    pub fn into_parts(self) -> (Digraph, Vec<Rational>) {
        (self.graph, self.weights)
    }

    fn check_vertex(&self, i: VertexId) -> Result<()> {
        if i >= self.graph.n {
            return Err(Error::VertexOutOfRange {
                vertex: i,
                n: self.graph.n,
            });
        }
        Ok(())
    }

    /// Total weight on edges leaving `i`. A self-arc counts once.
    pub fn out_sum(&self, i: VertexId) -> Result<Rational> {
        self.check_vertex(i)?;
        Ok(self.graph.out_adj[i]
            .iter()
            .map(|&k| &self.weights[k])
            .sum())
    }

    /// Total weight on edges entering `i`. A self-arc counts once.
    pub fn in_sum(&self, i: VertexId) -> Result<Rational> {
        self.check_vertex(i)?;
        Ok(self.graph.in_adj[i].iter().map(|&k| &self.weights[k]).sum())
    }

    pub fn decimal_edge_count(&self) -> usize {
        count_decimal(&self.weights)
    }

    /// Returns the vertex weights if every vertex has equal in- and out-sums,
    /// otherwise names the first vertex where they differ.
    pub fn check_balanced(&self) -> Result<VertexWeights> {
        let n = self.graph.n;
        let mut out = vec![Rational::zero(); n];
        let mut inn = vec![Rational::zero(); n];
        for (&(t, h), w) in self.graph.edges.iter().zip(&self.weights) {
            out[t] += w;
            inn[h] += w;
        }
        for (vertex, (o, i)) in out.iter().zip(&inn).enumerate() {
            if o != i {
                return Err(Error::NotBalanced {
                    vertex,
                    out_sum: Box::new(o.clone()),
                    in_sum: Box::new(i.clone()),
                });
            }
        }
        Ok(VertexWeights(out))
    }
}

pub(crate) fn validate_weights(expected: usize, weights: &[Rational]) -> Result<()> {
    if weights.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: weights.len(),
        });
    }
    if let Some(edge) = weights.iter().position(Rational::is_negative) {
        return Err(Error::NegativeWeight {
            edge,
            weight: weights[edge].clone(),
        });
    }
    Ok(())
}

pub fn count_decimal(weights: &[Rational]) -> usize {
    weights.iter().filter(|w| w.is_decimal()).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn ints(ws: &[i64]) -> Vec<Rational> {
        ws.iter().map(|&w| Rational::from(w)).collect()
    }

    /// v0 <-> v1 with a self-arc at each vertex, every weight 1/2.
    fn two_cycle_loops() -> WeightedDigraph {
        let g = Digraph::new(2, [(0, 1), (1, 0), (0, 0), (1, 1)]).unwrap();
        WeightedDigraph::new(g, vec![r(1, 2); 4]).unwrap()
    }

    fn triangle(ws: &[i64]) -> WeightedDigraph {
        let g = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        WeightedDigraph::new(g, ints(ws)).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Digraph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            Digraph::new(2, [(0, 1), (1, 0), (0, 1)]),
            Err(Error::DuplicateEdge { tail: 0, head: 1 })
        );
        assert!(Digraph::new(1, [(0, 0)]).is_ok());
    }

    #[test]
    fn rejects_bad_weights() {
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        assert!(matches!(
            WeightedDigraph::new(g.clone(), vec![]),
            Err(Error::LengthMismatch {
                expected: 1,
                found: 0
            })
        ));
        assert!(matches!(
            WeightedDigraph::new(g, vec![r(-1, 2)]),
            Err(Error::NegativeWeight { edge: 0, .. })
        ));
    }

    #[test]
    fn sums_on_two_cycle_loops() {
        let g = two_cycle_loops();
        assert_eq!(g.out_sum(0).unwrap(), r(1, 1));
        assert_eq!(g.in_sum(0).unwrap(), r(1, 1));
        assert!(matches!(g.out_sum(2), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn empty_sums_are_zero() {
        let g = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let wg = WeightedDigraph::new(g, ints(&[1, 1])).unwrap();
        assert_eq!(wg.out_sum(2).unwrap(), Rational::zero());
        assert_eq!(wg.in_sum(0).unwrap(), Rational::zero());
    }

    #[test]
    fn self_arc_counts_once_per_side() {
        let g = Digraph::new(1, [(0, 0)]).unwrap();
        let wg = WeightedDigraph::new(g, ints(&[3])).unwrap();
        assert_eq!(wg.out_sum(0).unwrap(), r(3, 1));
        assert_eq!(wg.in_sum(0).unwrap(), r(3, 1));
        assert_eq!(wg.check_balanced().unwrap().as_slice(), &ints(&[3]));
    }

    #[test]
    fn check_balanced_examples() {
        let u = triangle(&[2, 2, 2]).check_balanced().unwrap();
        assert_eq!(u.as_slice(), &ints(&[2, 2, 2]));

        let u = two_cycle_loops().check_balanced().unwrap();
        assert_eq!(u.as_slice(), &ints(&[1, 1]));
        assert!(u.is_integral());

        // Both v0 (in 3, out 2) and v2 (in 2, out 3) violate; the lowest is reported.
        assert_eq!(
            triangle(&[2, 2, 3]).check_balanced(),
            Err(Error::NotBalanced {
                vertex: 0,
                out_sum: Box::new(r(2, 1)),
                in_sum: Box::new(r(3, 1)),
            })
        );
    }

    #[test]
    fn scc_examples() {
        let tri = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(tri.strongly_connected_components(), vec![vec![0, 1, 2]]);
        assert!(tri.is_strongly_connected());

        let path = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        // Sinks first.
        assert_eq!(
            path.strongly_connected_components(),
            vec![vec![2], vec![1], vec![0]]
        );
        assert!(!path.is_strongly_connected());

        let two = Digraph::new(4, [(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        let mut comps = two.strongly_connected_components();
        comps.sort();
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3]]);

        let single = Digraph::new(1, [(0, 0)]).unwrap();
        assert!(single.is_strongly_connected());
        assert!(!Digraph::new(0, []).unwrap().is_strongly_connected());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Digraph::new(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)]).unwrap();
        let (sub, kept) = g.induced_subgraph(&[2, 3]);
        assert_eq!(sub.edges(), &[(0, 1), (1, 0)]);
        assert_eq!(kept, vec![3, 4]);
    }

    fn reachable(g: &Digraph, from: usize) -> Vec<bool> {
        let mut seen = vec![false; g.vertex_count()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            for w in g.out_neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    fn arb_graph() -> impl Strategy<Value = Digraph> {
        (1usize..9).prop_flat_map(|n| {
            proptest::collection::btree_set((0..n, 0..n), 0..(n * n).min(20))
                .prop_map(move |edges| Digraph::new(n, edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn scc_matches_mutual_reachability(g in arb_graph()) {
            let n = g.vertex_count();
            let reach: Vec<_> = (0..n).map(|v| reachable(&g, v)).collect();
            let comps = g.strongly_connected_components();
            let mut comp_of = vec![usize::MAX; n];
            for (c, vs) in comps.iter().enumerate() {
                for &v in vs {
                    prop_assert_eq!(comp_of[v], usize::MAX);
                    comp_of[v] = c;
                }
            }
            for a in 0..n {
                for b in 0..n {
                    let mutual = reach[a][b] && reach[b][a];
                    prop_assert_eq!(mutual, comp_of[a] == comp_of[b]);
                }
            }
            // Reverse topological order: edges never point to a later component.
            for &(t, h) in g.edges() {
                prop_assert!(comp_of[h] <= comp_of[t]);
            }
        }

        #[test]
        fn handshake_identity(
            g in arb_graph(),
            seed in proptest::collection::vec((0i64..20, 1i64..6), 20),
        ) {
            let weights: Vec<_> = (0..g.edge_count()).map(|k| r(seed[k].0, seed[k].1)).collect();
            let total: Rational = weights.iter().sum();
            let wg = WeightedDigraph::new(g.clone(), weights).unwrap();
            let n = g.vertex_count();
            let outs: Rational = (0..n).map(|i| wg.out_sum(i).unwrap()).sum();
            let ins: Rational = (0..n).map(|i| wg.in_sum(i).unwrap()).sum();
            prop_assert_eq!(&outs, &total);
            prop_assert_eq!(&ins, &total);
        }
    }
}
