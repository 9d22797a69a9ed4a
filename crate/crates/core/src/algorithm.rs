use std::fmt;
use std::str::FromStr;

use crate::approx::solve_approx;
use crate::error::{Error, Result};
use crate::greedy::{solve_orienteering_greedy, solve_simple_greedy, GreedyConfig};
use crate::model::{Instance, Solution};

/// The robot-minimising solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Approx,
    Greedy,
    OGreedy,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Approx, Algorithm::Greedy, Algorithm::OGreedy];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Approx => "approx",
            Algorithm::Greedy => "greedy",
            Algorithm::OGreedy => "ogreedy",
        }
    }

    pub fn solve(self, inst: &Instance, cfg: &GreedyConfig) -> Result<Solution> {
        match self {
            Algorithm::Approx => Ok(solve_approx(inst)),
            Algorithm::Greedy => solve_simple_greedy(inst, cfg),
            Algorithm::OGreedy => solve_orienteering_greedy(inst, cfg),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm {s:?} (approx, greedy, ogreedy)")))
    }
}
