use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::time::{Rational, Time};

/// One stop of a timed walk: arrive at `vertex`, stay for `hold`, move on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, Time)", into = "(usize, Time)")]
pub struct Step {
    pub vertex: usize,
    pub hold: Time,
}

impl Step {
    pub fn new(vertex: usize, hold: Time) -> Self {
        Step { vertex, hold }
    }

    pub fn at(vertex: usize) -> Self {
        Step { vertex, hold: Time::ZERO }
    }
}

impl From<(usize, Time)> for Step {
    fn from((vertex, hold): (usize, Time)) -> Self {
        Step { vertex, hold }
    }
}

impl From<Step> for (usize, Time) {
    fn from(s: Step) -> Self {
        (s.vertex, s.hold)
    }
}

/// A periodic timed walk.
///
/// The robot repeats `steps` forever, travelling the metric distance between
/// consecutive steps and from the last step back to the first. `offset`
/// shifts the phase: at time `t` the robot is where the unshifted schedule is
/// at time `t + offset`. Offset-0 walks start at their first vertex at time 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TimedWalk {
    pub steps: Vec<Step>,
    pub offset: Time,
}

impl TimedWalk {
    pub fn new(steps: Vec<Step>, offset: Time) -> Self {
        TimedWalk { steps, offset }
    }

    /// Zero-hold walk through `vertices`, starting at time 0.
    pub fn through(vertices: &[usize]) -> Self {
        TimedWalk { steps: vertices.iter().map(|&v| Step::at(v)).collect(), offset: Time::ZERO }
    }

    /// A robot that never leaves `v`.
    pub fn parked(v: usize) -> Self {
        Self::through(&[v])
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|s| s.vertex)
    }

    pub fn visits(&self, v: usize) -> bool {
        self.steps.iter().any(|s| s.vertex == v)
    }

    /// Travel time from step `i` to the next step (wrapping).
    pub fn leg(&self, inst: &Instance, i: usize) -> Time {
        let j = (i + 1) % self.steps.len();
        inst.dist(self.steps[i].vertex, self.steps[j].vertex)
    }

    /// Length of one period: all legs including the closing one, plus holds.
    pub fn period(&self, inst: &Instance) -> Time {
        (0..self.steps.len())
            .map(|i| self.leg(inst, i) + self.steps[i].hold)
            .sum()
    }

    /// Structural checks against an instance: non-empty, vertices in range,
    /// `0 ≤ offset < period` (or `offset = 0` for a parked robot).
    pub fn check(&self, inst: &Instance) -> Result<()> {
        if self.steps.is_empty() {
            return Err(Error::EmptyWalk);
        }
        if let Some(s) = self.steps.iter().find(|s| s.vertex >= inst.n()) {
            return Err(Error::VertexOutOfRange { vertex: s.vertex, n: inst.n() });
        }
        let period = self.period(inst);
        let ok = if period.is_zero() { self.offset.is_zero() } else { self.offset < period };
        if !ok {
            return Err(Error::BadOffset { offset: self.offset.to_string(), period: period.to_string() });
        }
        Ok(())
    }

    pub fn scaled(&self, c: Rational) -> TimedWalk {
        TimedWalk {
            steps: self.steps.iter().map(|s| Step::new(s.vertex, s.hold.scale(c))).collect(),
            offset: self.offset.scale(c),
        }
    }
}

/// A set of timed walks sharing one time origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "SolutionRepr", into = "SolutionRepr")]
pub struct Solution {
    walks: Vec<TimedWalk>,
    partitioned: bool,
}

#[derive(Serialize, Deserialize)]
struct SolutionRepr {
    walks: Vec<TimedWalk>,
}

impl From<SolutionRepr> for Solution {
    fn from(r: SolutionRepr) -> Self {
        Solution::new(r.walks)
    }
}

impl From<Solution> for SolutionRepr {
    fn from(s: Solution) -> Self {
        SolutionRepr { walks: s.walks }
    }
}

impl Solution {
    pub fn new(walks: Vec<TimedWalk>) -> Self {
        let partitioned = is_partitioned(&walks);
        Solution { walks, partitioned }
    }

    /// One parked robot on every vertex: always feasible.
    pub fn parked_everywhere(n: usize) -> Self {
        Solution::new((0..n).map(TimedWalk::parked).collect())
    }

    pub fn walks(&self) -> &[TimedWalk] {
        &self.walks
    }

    pub fn into_walks(self) -> Vec<TimedWalk> {
        self.walks
    }

    /// Number of robots.
    pub fn robots(&self) -> usize {
        self.walks.len()
    }

    /// True iff no vertex appears in two different walks.
    pub fn partitioned(&self) -> bool {
        self.partitioned
    }

    pub fn total_length(&self, inst: &Instance) -> Time {
        self.walks.iter().map(|w| w.period(inst)).sum()
    }

    /// Per-vertex count of walks visiting it.
    pub fn coverage(&self, n: usize) -> Vec<usize> {
        let mut cov = vec![0; n];
        for w in &self.walks {
            let mut seen: Vec<usize> = w.vertices().filter(|&v| v < n).collect();
            seen.sort_unstable();
            seen.dedup();
            for v in seen {
                cov[v] += 1;
            }
        }
        cov
    }

    pub fn scaled(&self, c: Rational) -> Solution {
        Solution::new(self.walks.iter().map(|w| w.scaled(c)).collect())
    }

    pub fn check(&self, inst: &Instance) -> Result<()> {
        if self.walks.is_empty() {
            return Err(Error::EmptySolution);
        }
        self.walks.iter().try_for_each(|w| w.check(inst))
    }
}

fn is_partitioned(walks: &[TimedWalk]) -> bool {
    let mut owner = std::collections::HashMap::new();
    for (i, w) in walks.iter().enumerate() {
        for v in w.vertices() {
            if *owner.entry(v).or_insert(i) != i {
                return false;
            }
        }
    }
    true
}
