//! Shortest-path orderings in the comparison-addition model.
//!
//! Edge weights are opaque cells of a [`weights::WeightArena`] that can only be
//! added and compared, and every comparison is counted. On top of that sit a
//! priority queue with the working-set property ([`workset`]), Dijkstra over any
//! queue ([`dijkstra`]), lower-bound certificates computed from a run
//! ([`audit`]), and a pipeline that orders vertices by distance with a number of
//! comparisons matching those certificates ([`optimal`]).

pub mod auxiliary;
pub mod heap;
pub mod weights;
pub mod workset;
pub mod graph;
pub mod dijkstra;
pub mod audit;
pub mod optimal;
