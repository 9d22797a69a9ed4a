//! Exact steady-state latency of a set of periodic timed walks.
//!
//! For every vertex the visits of all robots are laid out over one common
//! period (the lcm of the periods of the walks that visit it), overlapping
//! presence intervals are merged, and the latency is the longest circular gap
//! between a departure and the next arrival.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Instance, Solution, TimedWalk};
use crate::time::{Rational, Time};

/// Copies of a walk laid out over a vertex's hyper-period are capped here;
/// beyond it the periods are too incommensurate to evaluate exactly.
const MAX_COPIES: u64 = 1 << 22;

/// Presence of robots at a vertex over `[0, period)`: `[arrival, departure]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub arrival: Time,
    pub departure: Time,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum VertexVisits {
    Unvisited,
    /// Some robot is present at every instant (a parked robot, or merged
    /// intervals that cover the whole period).
    Always,
    Periodic { period: Time, intervals: Vec<Interval> },
}

/// Merged per-vertex visit intervals.
///
/// Each vertex uses the lcm of the periods of the walks that visit it rather
/// than one global hyper-period; the gap structure is identical and the
/// numbers stay small when unrelated walks have incommensurate periods.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VisitSchedule {
    pub vertices: Vec<VertexVisits>,
}

impl VisitSchedule {
    pub fn build(sol: &Solution, inst: &Instance) -> Result<Self> {
        check_vertices(sol, inst)?;
        let vertices = inst.vertices().map(|v| vertex_visits(sol.walks(), inst, v)).collect();
        Ok(VisitSchedule { vertices })
    }
}

fn check_vertices(sol: &Solution, inst: &Instance) -> Result<()> {
    if sol.walks().is_empty() {
        return Err(Error::EmptySolution);
    }
    for w in sol.walks() {
        if w.steps.is_empty() {
            return Err(Error::EmptyWalk);
        }
        if let Some(v) = w.vertices().find(|&v| v >= inst.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: inst.n() });
        }
    }
    Ok(())
}

fn vertex_visits(walks: &[TimedWalk], inst: &Instance, v: usize) -> VertexVisits {
    let visiting: Vec<(&TimedWalk, Time)> = walks
        .iter()
        .filter(|w| w.visits(v))
        .map(|w| (w, w.period(inst)))
        .collect();
    if visiting.is_empty() {
        return VertexVisits::Unvisited;
    }
    if visiting.iter().any(|(_, p)| p.is_zero()) {
        return VertexVisits::Always;
    }
    let hyper = visiting.iter().map(|&(_, p)| p).reduce(Time::lcm).expect("non-empty");

    let mut raw = Vec::new();
    for &(w, period) in &visiting {
        let copies = hyper.ratio_to(period).to_integer() as u64;
        assert!(copies <= MAX_COPIES, "periods too incommensurate at vertex {v}");
        let shift = w.offset.rem_euclid(period);
        let mut arrival = Time::ZERO;
        for (i, step) in w.steps.iter().enumerate() {
            if step.vertex == v {
                // Real time t sees walk time t + offset.
                let start = (arrival + period - shift).rem_euclid(period);
                for c in 0..copies {
                    let a = start + period.mul_int(c);
                    let d = a + step.hold;
                    if d <= hyper {
                        raw.push(Interval { arrival: a, departure: d });
                    } else {
                        raw.push(Interval { arrival: a, departure: hyper });
                        raw.push(Interval { arrival: Time::ZERO, departure: d - hyper });
                    }
                }
            }
            arrival += step.hold + w.leg(inst, i);
        }
    }

    raw.sort_by(|a, b| a.arrival.cmp(&b.arrival).then(a.departure.cmp(&b.departure)));
    let mut merged: Vec<Interval> = Vec::with_capacity(raw.len());
    for iv in raw {
        match merged.last_mut() {
            Some(last) if iv.arrival <= last.departure => {
                last.departure = last.departure.max(iv.departure);
            }
            _ => merged.push(iv),
        }
    }
    if merged.len() == 1 && merged[0].arrival.is_zero() && merged[0].departure == hyper {
        return VertexVisits::Always;
    }
    VertexVisits::Periodic { period: hyper, intervals: merged }
}

impl VertexVisits {
    /// Longest time between a departure and the next arrival; `None` when the
    /// vertex is never visited.
    pub fn latency(&self) -> Option<Time> {
        match self {
            VertexVisits::Unvisited => None,
            VertexVisits::Always => Some(Time::ZERO),
            VertexVisits::Periodic { period, intervals } => {
                let first = intervals.first().expect("periodic visits are non-empty");
                let last = intervals.last().expect("periodic visits are non-empty");
                let wrap = *period - last.departure + first.arrival;
                let inner = intervals
                    .windows(2)
                    .map(|w| w[1].arrival - w[0].departure)
                    .max()
                    .unwrap_or(Time::ZERO);
                Some(wrap.max(inner))
            }
        }
    }
}

/// Per-vertex achieved latency against the constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatencyReport {
    /// `None` marks a vertex no walk visits.
    pub latency: Vec<Option<Time>>,
    pub constraint: Vec<Time>,
    pub feasible: Vec<bool>,
    pub overall: bool,
}

impl LatencyReport {
    fn new(latency: Vec<Option<Time>>, inst: &Instance) -> Self {
        let constraint = inst.latencies().to_vec();
        let feasible: Vec<bool> = latency
            .iter()
            .zip(&constraint)
            .map(|(l, r)| matches!(l, Some(l) if l <= r))
            .collect();
        let overall = feasible.iter().all(|&f| f);
        LatencyReport { latency, constraint, feasible, overall }
    }

    pub fn is_feasible(&self) -> bool {
        self.overall
    }

    /// `r(v) - L(v)`; negative means the constraint is violated.
    pub fn margin(&self, v: usize) -> Option<Rational> {
        self.latency[v].map(|l| self.constraint[v].ratio() - l.ratio())
    }

    pub fn violations(&self) -> impl Iterator<Item = usize> + '_ {
        self.feasible.iter().enumerate().filter(|(_, &f)| !f).map(|(v, _)| v)
    }

    /// Largest `L(v) / r(v)` over visited vertices.
    pub fn worst_ratio(&self) -> Option<Rational> {
        self.latency
            .iter()
            .zip(&self.constraint)
            .filter_map(|(l, r)| l.map(|l| l.ratio_to(*r)))
            .max()
    }
}

impl fmt::Display for LatencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>6}  {:>14}  {:>14}  ok", "vertex", "latency", "constraint")?;
        for v in 0..self.latency.len() {
            let l = self.latency[v].map_or_else(|| "unvisited".to_string(), |l| l.to_string());
            let mark = if self.feasible[v] { "yes" } else { "NO" };
            writeln!(f, "{v:>6}  {l:>14}  {:>14}  {mark}", self.constraint[v].to_string())?;
        }
        let n_bad = self.violations().count();
        if self.overall {
            write!(f, "feasible")
        } else {
            write!(f, "infeasible: {n_bad} violated vertices")
        }
    }
}

/// Exact steady-state latency of every vertex under `sol`.
pub fn evaluate_latencies(sol: &Solution, inst: &Instance) -> Result<LatencyReport> {
    let schedule = VisitSchedule::build(sol, inst)?;
    let latency = schedule.vertices.iter().map(VertexVisits::latency).collect();
    Ok(LatencyReport::new(latency, inst))
}

/// Latencies plus the feasibility verdict. This is the acceptance check every
/// solver's output goes through.
pub fn verify(sol: &Solution, inst: &Instance) -> Result<LatencyReport> {
    evaluate_latencies(sol, inst)
}
