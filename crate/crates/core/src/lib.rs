//! Cops and robber on finite graphs: exact cop numbers by backward
//! induction, closed-form genus and cop-number bounds, and the shadow
//! strategy for guarding an isometric path.

pub mod bounds;
pub mod experiments;
pub mod game;
pub mod generators;
pub mod graph;
pub mod guarding;
pub mod io;
pub mod rng;

pub use game::{cop_number, solve, GameError, GameState, Side, SolveLimits, SolveResult};
pub use graph::{Graph, GraphError, GraphMetrics, Vertex};
