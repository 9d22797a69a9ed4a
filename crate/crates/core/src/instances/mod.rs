//! Random instances and the benchmark harness.

mod bench;

pub use bench::{run_benchmark, Aggregate, BenchRow, ResultTable};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::subroutines::tsp_tour;
use crate::time::Time;

/// Coordinates are integers in `[0, GRID]`, read as multiples of `1 / GRID`
/// in the unit square.
const GRID: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    /// Inclusive range for the spread parameter `k`.
    pub k_range: (u32, u32),
    pub seed: u64,
}

impl GenSpec {
    pub fn new(n: usize, seed: u64) -> Self {
        GenSpec { n, k_range: (4, 8), seed }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.k_range;
        if self.n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if !(2 <= lo && lo <= hi && hi <= 16) {
            return Err(Error::Config(format!("k range {lo}..={hi} must lie within 2..=16")));
        }
        Ok(())
    }
}

/// Uniform points in the unit square with Euclidean distances, constraints
/// uniform in `[L/k, k L]` where `L` is a tour length over all points.
///
/// Distances are rounded up to a `1e-6` grid, which keeps the triangle
/// inequality. Identical seeds give identical instances.
pub fn generate(spec: &GenSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;

    let mut points: Vec<(u64, u64)> = Vec::with_capacity(n);
    while points.len() < n {
        let p = (rng.random_range(0..=GRID), rng.random_range(0..=GRID));
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let unit = |micro: u64| Time::new(micro as i128, GRID as i128).expect("positive grid");
    let dist: Vec<Vec<Time>> = points
        .iter()
        .map(|&(x1, y1)| {
            points
                .iter()
                .map(|&(x2, y2)| {
                    let sq = x1.abs_diff(x2).pow(2) + y1.abs_diff(y2).pow(2);
                    unit(ceil_sqrt(sq))
                })
                .collect()
        })
        .collect();

    let name = format!("gen-n{n}-s{}", spec.seed);
    let geometry = Instance::new(name.clone(), dist.clone(), vec![Time::from_int(1); n])?;
    let all: Vec<usize> = geometry.vertices().collect();
    let tour = tsp_tour(&geometry, &all).length;
    let tour_micro = match tour.ticks(unit(1)) {
        Some(0) | None => GRID,
        Some(t) => t as u64,
    };

    let k = rng.random_range(spec.k_range.0..=spec.k_range.1) as u64;
    let lo = tour_micro.div_ceil(k);
    let hi = tour_micro * k;
    let r = (0..n).map(|_| unit(rng.random_range(lo..=hi))).collect();
    Instance::new(name, dist, r)
}

fn ceil_sqrt(x: u64) -> u64 {
    let s = x.isqrt();
    if s * s == x {
        s
    } else {
        s + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::io::instance_to_json;

    #[test]
    fn single_vertex() {
        let inst = generate(&GenSpec::new(1, 3)).unwrap();
        assert_eq!(inst.n(), 1);
        assert!(inst.is_valid());
    }

    #[test]
    fn deterministic_and_valid() {
        for seed in 0..20 {
            let a = generate(&GenSpec::new(12, seed)).unwrap();
            let b = generate(&GenSpec::new(12, seed)).unwrap();
            assert_eq!(instance_to_json(&a), instance_to_json(&b));
            assert!(a.is_valid(), "seed {seed}: {:?}", a.validate());
        }
    }

    #[test]
    fn constraints_within_spread() {
        for seed in 0..20 {
            let inst = generate(&GenSpec::new(10, seed)).unwrap();
            let all: Vec<usize> = inst.vertices().collect();
            let l = tsp_tour(&inst, &all).length;
            for v in inst.vertices() {
                assert!(inst.r(v) >= l.div_int(8) && inst.r(v) <= l.mul_int(8));
            }
        }
    }

    #[test]
    fn bad_specs() {
        assert!(generate(&GenSpec { n: 0, k_range: (4, 8), seed: 0 }).is_err());
        assert!(generate(&GenSpec { n: 3, k_range: (1, 8), seed: 0 }).is_err());
        assert!(generate(&GenSpec { n: 3, k_range: (9, 8), seed: 0 }).is_err());
    }

    #[test]
    fn ceil_sqrt_exact() {
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(16), 4);
        assert_eq!(ceil_sqrt(17), 5);
    }
}
