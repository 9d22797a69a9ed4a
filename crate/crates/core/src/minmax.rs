//! Min-max weighted latency with a fixed number of robots, and its use as a
//! bi-criterion solver for the robot-minimisation problem.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{evaluate_latencies, Instance, Solution, TimedWalk};
use crate::subroutines::{equally_place, tsp_tour, Cycle};
use crate::time::{ceil_log2, floor_log2, Rational};

/// Multiplicity exponents in the default one-robot planner are capped here to
/// bound the walk length for extreme weight spreads.
const MAX_MULTIPLICITY_EXP: u32 = 12;

/// Geometry plus vertex weights `phi`, normalised so the largest is 1.
#[derive(Clone, Debug)]
pub struct WeightedInstance {
    base: Instance,
    phi: Vec<Rational>,
}

impl WeightedInstance {
    pub fn new(base: Instance, phi: Vec<Rational>) -> Result<Self> {
        if phi.len() != base.n() {
            return Err(Error::Shape(format!("{} weights for {} vertices", phi.len(), base.n())));
        }
        if phi.iter().any(|p| *p <= Rational::zero()) {
            return Err(Error::Config("weights must be positive".into()));
        }
        let max = *phi.iter().max().expect("non-empty");
        let phi = phi.into_iter().map(|p| p / max).collect();
        Ok(WeightedInstance { base, phi })
    }

    /// Weights `r_min / r(v)`: a schedule is feasible exactly when its
    /// weighted cost is at most `r_min`.
    pub fn from_latencies(inst: &Instance) -> Self {
        let r_min = inst.r_min();
        let phi = inst.vertices().map(|v| r_min.ratio_to(inst.r(v))).collect();
        WeightedInstance::new(inst.clone(), phi).expect("positive constraints")
    }

    pub fn base(&self) -> &Instance {
        &self.base
    }

    pub fn phi(&self, v: usize) -> Rational {
        self.phi[v]
    }

    /// Weight spread `max phi / min phi`, plus one when a power of two.
    pub fn rho(&self) -> Rational {
        let min = *self.phi.iter().min().expect("non-empty");
        crate::model::adjust_ratio(Rational::one() / min)
    }

    /// Number of weight classes, `ceil(log2 rho)`.
    pub fn class_count(&self) -> usize {
        ceil_log2(self.rho()).max(1) as usize
    }

    /// Zero-based class of `v`: class `i` holds `1/2^(i+1) < phi <= 1/2^i`.
    pub fn class_of(&self, v: usize) -> usize {
        floor_log2(Rational::one() / self.phi[v]) as usize
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for v in self.base.vertices() {
            out[self.class_of(v)].push(v);
        }
        out
    }
}

/// `max_v phi(v) * L(v)`.
pub fn weighted_cost(sol: &Solution, winst: &WeightedInstance) -> Result<Rational> {
    let rep = evaluate_latencies(sol, winst.base())?;
    let mut worst = Rational::zero();
    for (v, l) in rep.latency.iter().enumerate() {
        let l = l.ok_or(Error::UnvisitedVertex(v))?;
        worst = worst.max(winst.phi(v) * l.ratio());
    }
    Ok(worst)
}

/// Single-robot walk over a vertex subset, minimising weighted latency.
pub trait OneRobotPlanner {
    fn plan(&self, winst: &WeightedInstance, subset: &[usize]) -> TimedWalk;
}

/// Default planner: one tour per weight class, the tour of class `i` repeated
/// `2^(i_max - i)` times per period and interleaved so heavy classes come
/// round evenly. No approximation guarantee is claimed.
#[derive(Clone, Copy, Debug, Default)]
pub struct InterleavedTours;

impl OneRobotPlanner for InterleavedTours {
    fn plan(&self, winst: &WeightedInstance, subset: &[usize]) -> TimedWalk {
        assert!(!subset.is_empty(), "planning over an empty subset");
        let inst = winst.base();
        let mut by_class: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &v in subset {
            by_class.entry(winst.class_of(v)).or_default().push(v);
        }
        let lo = *by_class.keys().next().unwrap();
        let hi = *by_class.keys().last().unwrap();
        let span = ((hi - lo) as u32).min(MAX_MULTIPLICITY_EXP);
        let rounds = 1usize << span;

        let tours: Vec<(usize, Vec<usize>)> = by_class
            .iter()
            .map(|(&i, vs)| {
                let exp = ((hi - i) as u32).min(span);
                (rounds >> exp, tsp_tour(inst, vs).vertices)
            })
            .collect();
        let mut seq: Vec<usize> = Vec::new();
        for t in 0..rounds {
            for (every, tour) in &tours {
                if t % every == 0 {
                    seq.extend_from_slice(tour);
                }
            }
        }
        seq.dedup();
        while seq.len() > 1 && seq.first() == seq.last() {
            seq.pop();
        }
        TimedWalk::through(&seq)
    }
}

pub fn min_max_one_robot(winst: &WeightedInstance, subset: &[usize]) -> TimedWalk {
    InterleavedTours.plan(winst, subset)
}

/// Smallest `m` with `m >= (j / r) * log2(rho)`, computed exactly.
fn block_end(j: u32, r: u32, rho: Rational) -> u32 {
    let p = BigUint::from(*rho.numer() as u128);
    let q = BigUint::from(*rho.denom() as u128);
    let lhs = p.pow(j);
    let qj = q.pow(j);
    let mut m = 0;
    while (BigUint::one() << (m * r) as usize) * &qj < lhs {
        m += 1;
    }
    m
}

/// True iff `r < log2(rho)`.
fn below_log(r: usize, rho: Rational) -> bool {
    r < 128 && Rational::from_integer(1i128 << r) < rho
}

/// Zero-based class indices of each of the `r` contiguous blocks used when
/// there are fewer robots than `log2 rho`.
pub fn class_blocks(r: usize, rho: Rational) -> Vec<std::ops::Range<usize>> {
    (1..=r as u32)
        .map(|j| block_end(j - 1, r as u32, rho) as usize..block_end(j, r as u32, rho) as usize)
        .collect()
}

/// `R` walks (fewer if some blocks are empty) with small maximum weighted
/// latency.
///
/// With fewer robots than `log2 rho`, contiguous groups of weight classes get
/// one robot each, planned by `planner`. Otherwise every class gets its own
/// tour: each non-empty class starts with one robot and every further robot
/// joins the class with the currently largest cost, all robots of a class
/// spaced evenly on its tour. This keeps the cost non-increasing in `R`.
pub fn latency_walks_with(
    winst: &WeightedInstance,
    robots: usize,
    planner: &dyn OneRobotPlanner,
) -> Result<Solution> {
    if robots == 0 {
        return Err(Error::Config("at least one robot is required".into()));
    }
    let classes = winst.classes();
    let nonempty = classes.iter().filter(|c| !c.is_empty()).count();
    let rho = winst.rho();

    if below_log(robots, rho) || robots < nonempty {
        let walks = class_blocks(robots, rho)
            .into_iter()
            .filter_map(|block| {
                let subset: Vec<usize> = classes[block].iter().flatten().copied().collect();
                (!subset.is_empty()).then(|| planner.plan(winst, &subset))
            })
            .collect();
        return Ok(Solution::new(walks));
    }

    let inst = winst.base();
    let tours: Vec<(Cycle, Rational)> = classes
        .iter()
        .filter(|c| !c.is_empty())
        .map(|c| {
            let heaviest = c.iter().map(|&v| winst.phi(v)).max().unwrap();
            (tsp_tour(inst, c), heaviest)
        })
        .collect();
    let mut counts = vec![1usize; tours.len()];
    let cost = |i: usize, k: usize| tours[i].1 * tours[i].0.length.div_int(k as u64).ratio();
    for _ in tours.len()..robots {
        let worst = (0..tours.len())
            .max_by(|&a, &b| cost(a, counts[a]).cmp(&cost(b, counts[b])).then(b.cmp(&a)))
            .expect("at least one class");
        counts[worst] += 1;
    }
    let walks = tours.iter().zip(&counts).flat_map(|((c, _), &k)| equally_place(c, k)).collect();
    Ok(Solution::new(walks))
}

pub fn latency_walks(winst: &WeightedInstance, robots: usize) -> Result<Solution> {
    latency_walks_with(winst, robots, &InterleavedTours)
}

#[derive(Clone, Debug)]
pub struct BicriterionResult {
    pub robots: usize,
    pub solution: Solution,
    /// `max_v L(v) / r(v)` achieved by the solution.
    pub achieved: Rational,
}

/// Fewest robots for which [`latency_walks`] keeps every latency within
/// `alpha * r(v)`.
///
/// Robot counts below `log2 rho` are scanned one by one since the cost need
/// not be monotone there; above it the cost is monotone and binary search is
/// used. If no count up to `n` qualifies, one parked robot per vertex is
/// returned.
pub fn bicriterion_min_robots(inst: &Instance, alpha: Rational) -> Result<BicriterionResult> {
    if alpha <= Rational::zero() {
        return Err(Error::Config(format!("alpha = {alpha} must be positive")));
    }
    let winst = WeightedInstance::from_latencies(inst);
    let threshold = alpha * inst.r_min().ratio();
    let n = inst.n();
    let rho = winst.rho();
    let attempt = |r: usize| -> Result<Option<Solution>> {
        let sol = latency_walks(&winst, r)?;
        Ok((weighted_cost(&sol, &winst)? <= threshold).then_some(sol))
    };

    let mut r = 1;
    while r <= n && below_log(r, rho) {
        if let Some(sol) = attempt(r)? {
            return finish(inst, r, sol);
        }
        r += 1;
    }
    if r <= n {
        if let Some(top) = attempt(n)? {
            let (mut lo, mut hi, mut best) = (r, n, top);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                match attempt(mid)? {
                    Some(sol) => {
                        hi = mid;
                        best = sol;
                    }
                    None => lo = mid + 1,
                }
            }
            if hi < n {
                debug_assert!(attempt(hi + 1)?.is_some(), "cost not monotone above log rho");
            }
            return finish(inst, hi, best);
        }
    }
    finish(inst, n, Solution::parked_everywhere(n))
}

fn finish(inst: &Instance, robots: usize, solution: Solution) -> Result<BicriterionResult> {
    let rep = evaluate_latencies(&solution, inst)?;
    let mut achieved = Rational::zero();
    for v in inst.vertices() {
        let l = rep.latency[v].ok_or(Error::UnvisitedVertex(v))?;
        achieved = achieved.max(l.ratio_to(inst.r(v)));
    }
    Ok(BicriterionResult { robots, solution, achieved })
}
