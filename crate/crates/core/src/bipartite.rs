//! The bipartite lift of a digraph.
//!
//! Each vertex `v_i` of the digraph becomes two vertices, `x_i` (carrying its
//! outgoing edges) and `y_i` (carrying its incoming edges). Edge `k` of the
//! digraph, `v_i -> v_j`, becomes the undirected edge `(x_i, y_j)` with the
//! same index, so a weight vector on one is a weight vector on the other.
//! Self-arcs become ordinary edges `(x_i, y_i)`.

use std::fmt;

use crate::digraph::{validate_weights, Digraph, EdgeId, VertexWeights};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    X,
    Y,
}

/// A vertex of the lift: `x_i` or `y_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BVertex {
    pub side: Side,
    pub index: usize,
}

impl BVertex {
    pub fn x(index: usize) -> Self {
        BVertex {
            side: Side::X,
            index,
        }
    }

    pub fn y(index: usize) -> Self {
        BVertex {
            side: Side::Y,
            index,
        }
    }
}

impl fmt::Display for BVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::X => write!(f, "x{}", self.index),
            Side::Y => write!(f, "y{}", self.index),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj_x: Vec<Vec<EdgeId>>,
    adj_y: Vec<Vec<EdgeId>>,
}

impl BipartiteGraph {
    /// Edge `k` of the result is `(x_tail, y_head)` for edge `k` of `g`.
    pub fn lift(g: &Digraph) -> Self {
        let n = g.vertex_count();
        BipartiteGraph {
            n,
            edges: g.edges().to_vec(),
            adj_x: (0..n).map(|v| g.out_edges(v).to_vec()).collect(),
            adj_y: (0..n).map(|v| g.in_edges(v).to_vec()).collect(),
        }
    }

    /// Number of vertices on each side.
    pub fn side_len(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(x index, y index)` pairs in edge order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, k: EdgeId) -> (BVertex, BVertex) {
        let (x, y) = self.edges[k];
        (BVertex::x(x), BVertex::y(y))
    }

    /// Incident edges of `v` in increasing edge order.
    pub fn incident(&self, v: BVertex) -> &[EdgeId] {
        match v.side {
            Side::X => &self.adj_x[v.index],
            Side::Y => &self.adj_y[v.index],
        }
    }

    /// The endpoint of `k` that is not `from`.
    pub fn opposite(&self, k: EdgeId, from: BVertex) -> BVertex {
        let (x, y) = self.edges[k];
        match from.side {
            Side::X => BVertex::y(y),
            Side::Y => BVertex::x(x),
        }
    }

    /// Number of decimal edges at `v`.
    pub fn decimal_degree(&self, weights: &[Rational], v: BVertex) -> usize {
        self.incident(v)
            .iter()
            .filter(|&&k| weights[k].is_decimal())
            .count()
    }

    /// Returns `u` with `u_i` the weight sum at both `x_i` and `y_i`, or the
    /// first index where the two sides disagree.
    pub fn check_balanced(&self, weights: &[Rational]) -> Result<VertexWeights> {
        validate_weights(self.edges.len(), weights)?;
        let sum = |adj: &[EdgeId]| -> Rational { adj.iter().map(|&k| &weights[k]).sum() };
        let mut u = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let at_x = sum(&self.adj_x[i]);
            let at_y = sum(&self.adj_y[i]);
            if at_x != at_y {
                return Err(Error::NotBalanced {
                    vertex: i,
                    out_sum: Box::new(at_x),
                    in_sum: Box::new(at_y),
                });
            }
            u.push(at_x);
        }
        VertexWeights::new(u)
    }
}

/// A closed alternating cycle `x_a1 y_b1 x_a2 ... y_bp x_a1` in the lift,
/// stored as its `2p` edge indices in traversal order.
///
/// Edges at even positions (`0, 2, ...`) are traversed from X to Y and
/// edges at odd positions from Y back to X.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecimalCycle {
    edges: Vec<EdgeId>,
}

impl DecimalCycle {
    /// Validates that `edges` trace a simple closed alternating cycle
    /// starting at the X endpoint of `edges[0]`.
    pub fn new(b: &BipartiteGraph, edges: Vec<EdgeId>) -> Result<Self> {
        if edges.len() < 2 || !edges.len().is_multiple_of(2) {
            return Err(Error::MalformedCycle(format!(
                "length {} is not a positive even number",
                edges.len()
            )));
        }
        if let Some(&k) = edges.iter().find(|&&k| k >= b.edge_count()) {
            return Err(Error::MalformedCycle(format!("edge {k} does not exist")));
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedCycle("repeated edge".into()));
        }
        let start = BVertex::x(b.edges[edges[0]].0);
        let mut at = start;
        let mut visited = Vec::with_capacity(edges.len());
        for (pos, &k) in edges.iter().enumerate() {
            let (x, y) = b.endpoints(k);
            let from = if pos % 2 == 0 { x } else { y };
            if from != at {
                return Err(Error::MalformedCycle(format!(
                    "edge {k} at position {pos} does not leave {at}"
                )));
            }
            if visited.contains(&at) {
                return Err(Error::MalformedCycle(format!("vertex {at} repeats")));
            }
            visited.push(at);
            at = b.opposite(k, from);
        }
        if at != start {
            return Err(Error::MalformedCycle(format!(
                "ends at {at}, not at {start}"
            )));
        }
        Ok(DecimalCycle { edges })
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Every edge carries a decimal weight under `weights`.
    pub fn is_completely_decimal(&self, weights: &[Rational]) -> bool {
        self.edges.iter().all(|&k| weights[k].is_decimal())
    }

    /// The vertices `x_a1, y_b1, ..., y_bp` in traversal order.
    pub fn vertices(&self, b: &BipartiteGraph) -> Vec<BVertex> {
        self.edges
            .iter()
            .enumerate()
            .map(|(pos, &k)| {
                let (x, y) = b.endpoints(k);
                if pos % 2 == 0 {
                    x
                } else {
                    y
                }
            })
            .collect()
    }

    /// The same cycle started `2 * steps` edges later, so it still starts on X.
    pub(crate) fn rotated(&self, steps: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.rotate_left((2 * steps) % self.edges.len());
        DecimalCycle { edges }
    }

    /// The same cycle walked backwards, starting at the X endpoint of
    /// `edges[pos]` for odd `pos`, so that edge comes first and is
    /// traversed X to Y.
    pub(crate) fn reversed_from(&self, pos: usize) -> Self {
        debug_assert!(pos % 2 == 1);
        let len = self.edges.len();
        let edges = (0..len)
            .map(|i| self.edges[(pos + len - i) % len])
            .collect();
        DecimalCycle { edges }
    }
}
