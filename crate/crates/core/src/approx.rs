//! Logarithmic approximation by latency classes.
//!
//! Vertices are grouped by `r(v)` into doubling classes above `r_min`. Each
//! class is covered either by a cycle cover with budget four times its lower
//! bound or by a single tour, with robots spaced evenly on every cycle;
//! whichever needs fewer robots is used.

use serde::Serialize;

use crate::model::{Instance, Solution};
use crate::subroutines::{equally_place, mccp, tsp_tour, Cycle};
use crate::time::{ceil_log2, floor_log2, Time};

/// Vertices grouped by latency class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatencyPartition {
    /// `classes[i]` holds the vertices with
    /// `r_min * 2^i <= r(v) < r_min * 2^(i+1)`; some may be empty.
    pub classes: Vec<Vec<usize>>,
    /// Relaxed constraint `r_min * 2^i` shared by class `i`.
    pub relaxed: Vec<Time>,
}

impl LatencyPartition {
    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&v))
    }
}

pub fn partition_by_latency(inst: &Instance) -> LatencyPartition {
    let r_min = inst.r_min();
    let count = ceil_log2(inst.rho()).max(1) as usize;
    let mut classes = vec![Vec::new(); count];
    for v in inst.vertices() {
        let i = floor_log2(inst.r(v).ratio_to(r_min)) as usize;
        classes[i].push(v);
    }
    let relaxed = (0..count).map(|i| r_min.mul_int(1 << i)).collect();
    LatencyPartition { classes, relaxed }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cover {
    CycleCover,
    Tour,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub class: usize,
    pub vertices: Vec<usize>,
    pub lambda: Time,
    pub cover_robots: usize,
    pub tour_robots: usize,
    pub chosen: Cover,
    /// `(cycle length, robots)` per cycle actually used.
    pub cycles: Vec<(Time, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ApproxReport {
    pub classes: Vec<ClassReport>,
}

pub fn solve_approx(inst: &Instance) -> Solution {
    solve_approx_detailed(inst).0
}

pub fn solve_approx_detailed(inst: &Instance) -> (Solution, ApproxReport) {
    let part = partition_by_latency(inst);
    let mut walks = Vec::new();
    let mut reports = Vec::new();
    for (i, class) in part.classes.iter().enumerate() {
        if class.is_empty() {
            continue;
        }
        let lambda = part.relaxed[i].mul_int(4);
        let cover = mccp(inst, class, lambda);
        let cover_counts: Vec<usize> = cover.iter().map(|c| robots_for(inst, c)).collect();
        let tour = tsp_tour(inst, class);
        let tour_count = robots_for(inst, &tour);
        let cover_total: usize = cover_counts.iter().sum();

        let (chosen, cycles) = if cover_total <= tour_count {
            for (c, &k) in cover.iter().zip(&cover_counts) {
                assert!(k <= 4, "cycle of length {} needs {k} robots", c.length);
            }
            (Cover::CycleCover, cover.into_iter().zip(cover_counts).collect::<Vec<_>>())
        } else {
            (Cover::Tour, vec![(tour, tour_count)])
        };
        for (c, k) in &cycles {
            walks.extend(equally_place(c, *k));
        }
        reports.push(ClassReport {
            class: i,
            vertices: class.clone(),
            lambda,
            cover_robots: cover_total,
            tour_robots: tour_count,
            chosen,
            cycles: cycles.iter().map(|(c, k)| (c.length, *k)).collect(),
        });
    }
    (Solution::new(walks), ApproxReport { classes: reports })
}

/// `⌈l(C) / min r⌉` over the cycle's own vertices, at least one.
fn robots_for(inst: &Instance, c: &Cycle) -> usize {
    let r = c.vertices.iter().map(|&v| inst.r(v)).min().expect("non-empty cycle");
    (c.length.ceil_div(r) as usize).max(1)
}
