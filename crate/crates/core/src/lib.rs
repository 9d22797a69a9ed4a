//! Multi-robot persistent monitoring on metric graphs.
//!
//! Every vertex `v` carries a latency constraint `r(v)`: the longest it may go
//! unvisited. Solvers produce sets of periodic timed walks, and
//! [`model::verify`] evaluates the exact steady-state latency of any schedule.

mod algorithm;
pub mod approx;
pub mod error;
pub mod fixtures;
pub mod greedy;
pub mod instances;
pub mod minmax;
pub mod oracle;
pub mod model;
pub mod subroutines;
pub mod time;

pub use algorithm::Algorithm;
pub use error::{Error, Result};
pub use model::{
    evaluate_latencies, periodic_feasibility, verify, Instance, LatencyReport, Solution, Step,
    TimedWalk,
};
pub use time::{Rational, Time};
