use std::fmt;

use crate::error::{Error, Result};
use crate::time::{is_power_of_two, Rational, Time};

/// Tick counts above this bound are rejected so that sums of a few thousand
/// edges still fit comfortably in an `i64`.
const MAX_TICKS: i64 = 1 << 44;

/// A complete metric graph with per-vertex latency constraints.
///
/// Besides the exact [`Time`] values, an instance carries its *grid step*:
/// the largest rational `g` such that every distance and every constraint is
/// an integer multiple of `g`. Solvers work in integer ticks of `g`, which is
/// exact and much cheaper than rational arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct Instance {
    name: String,
    names: Vec<String>,
    n: usize,
    dist: Vec<Time>,
    r: Vec<Time>,
    step: Time,
    dist_ticks: Vec<i64>,
    r_ticks: Vec<i64>,
}

impl Instance {
    pub fn new(name: impl Into<String>, dist: Vec<Vec<Time>>, r: Vec<Time>) -> Result<Self> {
        let n = r.len();
        let names = (0..n).map(|v| format!("v{v}")).collect();
        Self::with_names(name, names, dist, r)
    }

    pub fn with_names(
        name: impl Into<String>,
        names: Vec<String>,
        dist: Vec<Vec<Time>>,
        r: Vec<Time>,
    ) -> Result<Self> {
        let n = r.len();
        if n == 0 {
            return Err(Error::Shape("instance has no vertices".into()));
        }
        if names.len() != n {
            return Err(Error::Shape(format!("{} names for {n} vertices", names.len())));
        }
        if dist.len() != n {
            return Err(Error::Shape(format!("distance matrix has {} rows, expected {n}", dist.len())));
        }
        if let Some((i, row)) = dist.iter().enumerate().find(|(_, row)| row.len() != n) {
            return Err(Error::Shape(format!("distance row {i} has {} entries, expected {n}", row.len())));
        }
        let dist: Vec<Time> = dist.into_iter().flatten().collect();

        let step = dist
            .iter()
            .chain(r.iter())
            .fold(Time::ZERO, |g, &t| g.gcd(t));
        let step = if step.is_zero() { Time::from_int(1) } else { step };

        let to_ticks = |t: &Time| -> Result<i64> {
            t.ticks(step)
                .filter(|&k| k <= MAX_TICKS)
                .ok_or_else(|| Error::Shape(format!("time grid too fine (step {step})")))
        };
        let dist_ticks = dist.iter().map(to_ticks).collect::<Result<Vec<_>>>()?;
        let r_ticks = r.iter().map(to_ticks).collect::<Result<Vec<_>>>()?;

        Ok(Instance { name: name.into(), names, n, dist, r, step, dist_ticks, r_ticks })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> Time {
        self.dist[u * self.n + v]
    }

    #[inline]
    pub fn r(&self, v: usize) -> Time {
        self.r[v]
    }

    pub fn latencies(&self) -> &[Time] {
        &self.r
    }

    /// Grid step `g`: every distance and constraint is a multiple of it.
    pub fn step(&self) -> Time {
        self.step
    }

    #[inline]
    pub fn dist_ticks(&self, u: usize, v: usize) -> i64 {
        self.dist_ticks[u * self.n + v]
    }

    #[inline]
    pub fn r_ticks(&self, v: usize) -> i64 {
        self.r_ticks[v]
    }

    pub fn ticks_to_time(&self, ticks: i64) -> Time {
        Time::from_ticks(ticks, self.step)
    }

    pub fn r_min(&self) -> Time {
        self.r.iter().copied().min().expect("instance has vertices")
    }

    pub fn r_max(&self) -> Time {
        self.r.iter().copied().max().expect("instance has vertices")
    }

    /// `r_max / r_min` without adjustment. Requires positive constraints.
    pub fn raw_rho(&self) -> Rational {
        self.r_max().ratio_to(self.r_min())
    }

    /// `r_max / r_min`, plus one when that ratio is an exact power of two, so
    /// that `⌈log₂ ρ⌉` latency classes always cover the top constraint.
    pub fn rho(&self) -> Rational {
        adjust_ratio(self.raw_rho())
    }

    pub fn max_dist(&self, subset: &[usize]) -> Time {
        let mut best = Time::ZERO;
        for &u in subset {
            for &v in subset {
                best = best.max(self.dist(u, v));
            }
        }
        best
    }

    /// Same geometry and constraints with every time multiplied by `c > 0`.
    pub fn scaled(&self, c: Rational) -> Result<Instance> {
        let dist = (0..self.n)
            .map(|u| (0..self.n).map(|v| self.dist(u, v).scale(c)).collect())
            .collect();
        let r = self.r.iter().map(|t| t.scale(c)).collect();
        Instance::with_names(self.name.clone(), self.names.clone(), dist, r)
    }

    /// Same geometry, new constraints.
    pub fn with_latencies(&self, r: Vec<Time>) -> Result<Instance> {
        let dist = (0..self.n)
            .map(|u| (0..self.n).map(|v| self.dist(u, v)).collect())
            .collect();
        Instance::with_names(self.name.clone(), self.names.clone(), dist, r)
    }

    /// Checks the metric assumptions every solver relies on. Violations are
    /// returned as data; an empty list means the instance is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for v in self.vertices() {
            if !self.dist(v, v).is_zero() {
                out.push(Violation::NonzeroDiagonal { v });
            }
            if self.r(v).is_zero() {
                out.push(Violation::NonpositiveLatency { v });
            }
        }
        for u in self.vertices() {
            for v in (u + 1)..self.n {
                if self.dist(u, v) != self.dist(v, u) {
                    out.push(Violation::Asymmetric { u, v });
                }
                if self.dist(u, v).is_zero() || self.dist(v, u).is_zero() {
                    out.push(Violation::NonpositiveDistance { u, v });
                }
            }
        }
        for u in self.vertices() {
            for w in self.vertices() {
                if u == w {
                    continue;
                }
                for v in self.vertices() {
                    if v == u || v == w {
                        continue;
                    }
                    if self.dist_ticks(u, w) > self.dist_ticks(u, v) + self.dist_ticks(v, w) {
                        out.push(Violation::Triangle { u, v, w });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

pub(crate) fn adjust_ratio(raw: Rational) -> Rational {
    if is_power_of_two(raw) {
        raw + Rational::from_integer(1)
    } else {
        raw
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("r", &self.r)
            .finish_non_exhaustive()
    }
}

/// A broken metric assumption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Asymmetric { u: usize, v: usize },
    NonzeroDiagonal { v: usize },
    NonpositiveDistance { u: usize, v: usize },
    /// `dist(u, w) > dist(u, v) + dist(v, w)`.
    Triangle { u: usize, v: usize, w: usize },
    NonpositiveLatency { v: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Asymmetric { u, v } => write!(f, "dist({u},{v}) != dist({v},{u})"),
            Violation::NonzeroDiagonal { v } => write!(f, "dist({v},{v}) is not zero"),
            Violation::NonpositiveDistance { u, v } => write!(f, "dist({u},{v}) is zero"),
            Violation::Triangle { u, v, w } => {
                write!(f, "triangle inequality fails: dist({u},{w}) > dist({u},{v}) + dist({v},{w})")
            }
            Violation::NonpositiveLatency { v } => write!(f, "r({v}) is not positive"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: u64) -> Time {
        Time::from_int(v)
    }

    fn inst(d: [[u64; 3]; 3], r: [u64; 3]) -> Instance {
        let dist = d.iter().map(|row| row.iter().map(|&x| t(x)).collect()).collect();
        Instance::new("t", dist, r.iter().map(|&x| t(x)).collect()).unwrap()
    }

    #[test]
    fn equilateral_is_valid() {
        let i = inst([[0, 1, 1], [1, 0, 1], [1, 1, 0]], [1, 1, 1]);
        assert!(i.validate().is_empty());
    }

    #[test]
    fn triangle_violation_has_witness() {
        let i = inst([[0, 1, 5], [1, 0, 1], [5, 1, 0]], [1, 1, 1]);
        let v = i.validate();
        assert!(v.contains(&Violation::Triangle { u: 0, v: 1, w: 2 }), "{v:?}");
    }

    #[test]
    fn zero_latency_is_flagged() {
        let i = inst([[0, 1, 1], [1, 0, 1], [1, 1, 0]], [0, 1, 1]);
        assert_eq!(i.validate(), vec![Violation::NonpositiveLatency { v: 0 }]);
    }

    #[test]
    fn asymmetry_is_flagged() {
        let i = inst([[0, 1, 1], [2, 0, 1], [1, 1, 0]], [1, 1, 1]);
        assert!(i.validate().contains(&Violation::Asymmetric { u: 0, v: 1 }));
    }

    #[test]
    fn grid_step_is_gcd_of_all_times() {
        let dist = vec![
            vec![Time::ZERO, Time::new(3, 2).unwrap()],
            vec![Time::new(3, 2).unwrap(), Time::ZERO],
        ];
        let i = Instance::new("g", dist, vec![t(2), Time::new(1, 3).unwrap()]).unwrap();
        assert_eq!(i.step(), Time::new(1, 6).unwrap());
        assert_eq!(i.dist_ticks(0, 1), 9);
        assert_eq!(i.r_ticks(0), 12);
    }

    #[test]
    fn rho_adjusts_powers_of_two() {
        let i = inst([[0, 1, 1], [1, 0, 1], [1, 1, 0]], [1, 2, 4]);
        assert_eq!(i.raw_rho(), Rational::from_integer(4));
        assert_eq!(i.rho(), Rational::from_integer(5));
        let j = inst([[0, 1, 1], [1, 0, 1], [1, 1, 0]], [2, 3, 3]);
        assert_eq!(j.rho(), Rational::new(3, 2));
        let u = inst([[0, 1, 1], [1, 0, 1], [1, 1, 0]], [3, 3, 3]);
        assert_eq!(u.rho(), Rational::from_integer(2));
    }

    #[test]
    fn shape_errors() {
        assert!(Instance::new("e", vec![], vec![]).is_err());
        assert!(Instance::new("e", vec![vec![t(0)]], vec![t(1), t(1)]).is_err());
    }
}
