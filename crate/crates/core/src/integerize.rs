//! Rounding a balanced digraph with integer vertex weights to integer edge
//! weights, one completely decimal cycle at a time.
//!
//! An edge is *decimal* when its weight is a non-integer. If every vertex
//! weight is an integer, every vertex of the lift touches either zero or at
//! least two decimal edges, so a walk along decimal edges that never backs
//! up the edge it came in on must close a cycle made only of decimal edges.
//! Subtracting the smallest fractional part `eps` on alternate edges of
//! that cycle and adding it on the others keeps every vertex sum, keeps
//! weights nonnegative, and turns at least one edge integral. Repeating
//! until no decimal edge remains therefore takes at most `|E|` rounds.

use std::collections::HashMap;

use crate::bipartite::{BVertex, BipartiteGraph, DecimalCycle, Side};
use crate::digraph::{count_decimal, validate_weights, EdgeId, VertexWeights, WeightedDigraph};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Finds a cycle of decimal edges with a deterministic walk, or `None` if
/// every edge is integral.
///
/// The walk starts at the lowest-indexed `x_i` touching a decimal edge. At
/// each vertex it leaves along the decimal edge to the lowest-indexed
/// neighbour, never along the edge it arrived on, and stops at the first
/// repeated vertex. The returned cycle is the loop between the two visits,
/// rotated to start on the X side.
///
/// A vertex with exactly one decimal edge cannot occur when the vertex
/// weights are integers; meeting one is reported as
/// [`Error::InvariantViolation`].
pub fn find_completely_decimal_cycle(
    b: &BipartiteGraph,
    weights: &[Rational],
) -> Result<Option<DecimalCycle>> {
    validate_weights(b.edge_count(), weights)?;
    let Some(start) = (0..b.side_len()).find(|&i| {
        b.incident(BVertex::x(i))
            .iter()
            .any(|&k| weights[k].is_decimal())
    }) else {
        return Ok(None);
    };

    let mut first_visit: HashMap<BVertex, usize> = HashMap::new();
    let mut path: Vec<EdgeId> = Vec::new();
    let mut at = BVertex::x(start);
    let mut arrival: Option<EdgeId> = None;
    loop {
        first_visit.insert(at, path.len());
        let next = b
            .incident(at)
            .iter()
            .copied()
            .filter(|&k| Some(k) != arrival && weights[k].is_decimal())
            .min_by_key(|&k| b.opposite(k, at).index)
            .ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "{at} has exactly one decimal edge; vertex weights are not integral"
                ))
            })?;
        path.push(next);
        let to = b.opposite(next, at);
        if let Some(&j) = first_visit.get(&to) {
            let mut edges = path.split_off(j);
            if to.side == Side::Y {
                edges.rotate_left(1);
            }
            return DecimalCycle::new(b, edges)
                .map(Some)
                .map_err(|e| Error::InvariantViolation(format!("walk produced a bad cycle: {e}")));
        }
        arrival = Some(next);
        at = to;
    }
}

/// The outcome of one update along a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleShift {
    pub weights: Vec<Rational>,
    /// The smallest fractional part on the cycle.
    pub epsilon: Rational,
    /// The cycle as applied: edge 0 carries the minimal fractional part and
    /// even positions were decreased by `epsilon`.
    pub cycle: DecimalCycle,
}

/// Moves `eps` around `cycle`, where `eps` is the smallest fractional part
/// among its edges.
///
/// The cycle is re-oriented so that the first edge (in walk order) with that
/// fractional part sits at position 0; a minimiser at an even position is
/// preferred, otherwise the cycle is walked backwards from the first odd
/// minimiser. Even positions then lose `eps` and odd positions gain it.
/// Every vertex on the cycle meets one edge of each kind, so vertex sums are
/// unchanged, and no weight drops below its floor.
pub fn cycle_shift(weights: &[Rational], cycle: &DecimalCycle) -> Result<CycleShift> {
    if let Some(&k) = cycle.edges().iter().find(|&&k| k >= weights.len()) {
        return Err(Error::LengthMismatch {
            expected: k + 1,
            found: weights.len(),
        });
    }
    if let Some(&edge) = cycle.edges().iter().find(|&&k| !weights[k].is_decimal()) {
        return Err(Error::NotCompletelyDecimal { edge });
    }

    let parts: Vec<Rational> = cycle
        .edges()
        .iter()
        .map(|&k| weights[k].decimal_part())
        .collect();
    let epsilon = parts.iter().min().expect("cycles are nonempty").clone();
    let first_min = |parity: usize| {
        parts
            .iter()
            .enumerate()
            .position(|(pos, p)| pos % 2 == parity && *p == epsilon)
    };
    let oriented = match first_min(0) {
        Some(pos) => cycle.rotated(pos / 2),
        None => cycle.reversed_from(first_min(1).expect("minimum is attained")),
    };

    let mut next = weights.to_vec();
    for (pos, &k) in oriented.edges().iter().enumerate() {
        if pos % 2 == 0 {
            next[k] -= &epsilon;
        } else {
            next[k] += &epsilon;
        }
    }
    Ok(CycleShift {
        weights: next,
        epsilon,
        cycle: oriented,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationRecord {
    pub cycle_len: usize,
    pub epsilon: Rational,
    pub decimal_edges_before: usize,
    pub decimal_edges_after: usize,
}

impl IterationRecord {
    pub fn eliminated(&self) -> usize {
        self.decimal_edges_before - self.decimal_edges_after
    }
}

/// Termination witness for [`integerize`]: the decimal-edge count before the
/// first round and after each one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegerizeReport {
    pub iterations: usize,
    pub initial_decimal_edges: usize,
    pub steps: Vec<IterationRecord>,
}

/// One round, as seen by an observer passed to [`integerize_observed`].
#[derive(Debug)]
pub struct Step<'a> {
    /// 1-based round number.
    pub iteration: usize,
    pub cycle: &'a DecimalCycle,
    pub epsilon: &'a Rational,
    pub before: &'a [Rational],
    pub after: &'a [Rational],
}

/// Replaces the weights of a balanced digraph with integer vertex weights by
/// nonnegative integers with the same vertex weights.
///
/// Strong connectivity is not required; only balance and integrality of the
/// vertex weights are.
pub fn integerize(g: &WeightedDigraph) -> Result<(WeightedDigraph, IntegerizeReport)> {
    integerize_observed(g, |_| {})
}

/// [`integerize`], calling `observe` after every cycle update.
pub fn integerize_observed<F>(
    g: &WeightedDigraph,
    mut observe: F,
) -> Result<(WeightedDigraph, IntegerizeReport)>
where
    F: FnMut(&Step<'_>),
{
    let u = g.check_balanced()?;
    u.require_integral()?;

    let b = BipartiteGraph::lift(g.graph());
    let mut weights = g.weights().to_vec();
    let initial = count_decimal(&weights);
    let mut report = IntegerizeReport {
        iterations: 0,
        initial_decimal_edges: initial,
        steps: Vec::new(),
    };
    let mut remaining = initial;

    while let Some(cycle) = find_completely_decimal_cycle(&b, &weights)? {
        let shift = cycle_shift(&weights, &cycle)?;
        let after = count_decimal(&shift.weights);
        if after >= remaining {
            return Err(Error::InvariantViolation(format!(
                "decimal edges did not decrease ({remaining} -> {after})"
            )));
        }
        report.iterations += 1;
        observe(&Step {
            iteration: report.iterations,
            cycle: &shift.cycle,
            epsilon: &shift.epsilon,
            before: &weights,
            after: &shift.weights,
        });
        report.steps.push(IterationRecord {
            cycle_len: shift.cycle.len(),
            epsilon: shift.epsilon,
            decimal_edges_before: remaining,
            decimal_edges_after: after,
        });
        weights = shift.weights;
        remaining = after;
    }

    if let Some(edge) = weights.iter().position(|w| !w.is_integer()) {
        return Err(Error::InvariantViolation(format!(
            "edge {edge} left non-integral"
        )));
    }
    Ok((g.with_weights(weights)?, report))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    NoDecimalEdge,
    HasCompletelyDecimalCycle(DecimalCycle),
}

/// With integer vertex weights, "no decimal edge", "no completely decimal
/// cycle" and "integral weights" coincide; reports which side holds, with a
/// witness cycle when there is one.
pub fn classify(
    b: &BipartiteGraph,
    weights: &[Rational],
    u: &VertexWeights,
) -> Result<Classification> {
    u.require_integral()?;
    validate_weights(b.edge_count(), weights)?;
    if count_decimal(weights) == 0 {
        return Ok(Classification::NoDecimalEdge);
    }
    match find_completely_decimal_cycle(b, weights)? {
        Some(cycle) => Ok(Classification::HasCompletelyDecimalCycle(cycle)),
        None => Err(Error::InvariantViolation(
            "decimal edge present but no completely decimal cycle".into(),
        )),
    }
}
