//! Combinatorial building blocks: tours, cycle covers, orienteering paths and
//! evenly spaced robots on a cycle.
//!
//! All of them work in integer ticks of the instance grid and break ties by
//! lowest vertex index, so they are deterministic.

mod mccp;
mod orienteering;
mod placement;
mod tsp;

pub use mccp::{mccp, MCCP_ALPHA};
pub use orienteering::{orienteering, Path};
pub(crate) use orienteering::orienteering_ticks;
pub use placement::equally_place;
pub use tsp::tsp_tour;
pub(crate) use tsp::{improve_two_opt, tour_ticks};

use crate::model::{Instance, TimedWalk};
use crate::time::Time;

/// A simple cycle through distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub length: Time,
}

impl Cycle {
    pub fn new(inst: &Instance, vertices: Vec<usize>) -> Cycle {
        let length = inst.ticks_to_time(tour_ticks(inst, &vertices));
        Cycle { vertices, length }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn to_walk(&self) -> TimedWalk {
        TimedWalk::through(&self.vertices)
    }
}
