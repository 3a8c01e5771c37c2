//! Integer rebalancing of weighted digraphs.
//!
//! A weighted digraph is balanced when every vertex has equal incoming and
//! outgoing weight; that common value is the vertex weight. When all vertex
//! weights are integers, [`integerize`] rewrites the edge weights into
//! nonnegative integers with exactly the same vertex weights. It works on
//! the bipartite lift of the graph, repeatedly shifting weight around cycles
//! of non-integer edges.
//!
//! ```
//! use intbal::{builtin, integerize, Rational};
//!
//! let g = builtin::canonical_instance(); // every weight 1/2
//! let (rounded, report) = integerize(&g).unwrap();
//! assert!(rounded.weights().iter().all(Rational::is_integer));
//! assert_eq!(rounded.check_balanced(), g.check_balanced());
//! assert_eq!(report.iterations, 1);
//! ```

pub mod bipartite;
pub mod builtin;
pub mod digraph;
mod error;
pub mod feasibility;
pub mod format;
pub mod integerize;
pub mod rational;

pub use bipartite::{BVertex, BipartiteGraph, DecimalCycle, Side};
pub use digraph::{Digraph, EdgeId, VertexId, VertexWeights, WeightedDigraph};
pub use error::{Error, Result};
pub use feasibility::{
    generate_balanced_by_components, generate_balanced_instance, solve_feasible_w, GeneratorParams,
    InfeasibilityCut, TransportationInstance,
};
pub use integerize::{
    classify, cycle_shift, find_completely_decimal_cycle, integerize, integerize_observed,
    Classification, CycleShift, IntegerizeReport, IterationRecord, Step,
};
pub use rational::{parse_decimal_string, ParseRationalError, Rational};
