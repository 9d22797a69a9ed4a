//! Core data types, exact latency evaluation and feasibility checks.

mod feasibility;
mod instance;
pub mod io;
mod latency;
mod walk;

pub use feasibility::{periodic_feasibility, ExpiryState};
pub(crate) use feasibility::prefix_feasible_ticks;
pub use instance::{Instance, Violation};
pub(crate) use instance::adjust_ratio;
pub use latency::{evaluate_latencies, verify, Interval, LatencyReport, VertexVisits, VisitSchedule};
pub use walk::{Solution, Step, TimedWalk};

/// Validation result: the list of broken metric assumptions (empty if valid).
pub fn validate_instance(inst: &Instance) -> Vec<Violation> {
    inst.validate()
}
