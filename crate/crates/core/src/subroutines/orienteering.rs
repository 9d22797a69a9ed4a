use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::time::Time;

/// Survivor count up to which the search is exact.
const EXACT_LIMIT: usize = 16;

/// A simple path with the prize collected along it.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub length: Time,
    pub prize: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct TickPath {
    pub vertices: Vec<usize>,
    pub length: i64,
    pub prize: f64,
}

/// Path from `x` to `y` of length at most `d` through vertices of
/// `candidates`, maximising the summed weight `psi[v]` of its vertices.
///
/// Vertices with `dist(x, z) + dist(z, y) > d` can never be used and are
/// dropped first. With at most 16 survivors a depth-first branch and bound
/// returns an optimal path; beyond that, vertices are inserted greedily by
/// weight per unit of added length. `x == y` yields the single-vertex path.
pub fn orienteering(
    inst: &Instance,
    candidates: &[usize],
    x: usize,
    y: usize,
    d: Time,
    psi: &[f64],
) -> Result<Path> {
    let direct = inst.dist(x, y);
    if d < direct {
        return Err(Error::BudgetTooSmall { budget: d.to_string(), direct: direct.to_string() });
    }
    let p = orienteering_ticks(inst, candidates, x, y, d.floor_ticks(inst.step()), psi);
    Ok(Path { vertices: p.vertices, length: inst.ticks_to_time(p.length), prize: p.prize })
}

pub(crate) fn orienteering_ticks(
    inst: &Instance,
    candidates: &[usize],
    x: usize,
    y: usize,
    budget: i64,
    psi: &[f64],
) -> TickPath {
    debug_assert!(budget >= inst.dist_ticks(x, y));
    if x == y {
        return TickPath { vertices: vec![x], length: 0, prize: psi[x] };
    }
    let mut survivors: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&z| z != x && z != y)
        .filter(|&z| inst.dist_ticks(x, z) + inst.dist_ticks(z, y) <= budget)
        .collect();
    survivors.sort_unstable();
    survivors.dedup();

    if survivors.len() <= EXACT_LIMIT {
        exact(inst, &survivors, x, y, budget, psi)
    } else {
        insertion(inst, &survivors, x, y, budget, psi)
    }
}

struct Search<'a> {
    inst: &'a Instance,
    pool: &'a [usize],
    y: usize,
    budget: i64,
    psi: &'a [f64],
    best_prize: f64,
    best: Vec<usize>,
    path: Vec<usize>,
    seen: HashMap<(u32, usize), i64>,
}

impl Search<'_> {
    fn dfs(&mut self, mask: u32, len: i64, prize: f64) {
        let here = *self.path.last().unwrap();
        let key = (mask, here);
        if self.seen.get(&key).is_some_and(|&l| l <= len) {
            return;
        }
        self.seen.insert(key, len);

        if prize > self.best_prize {
            self.best_prize = prize;
            self.best = self.path.clone();
        }
        let rest: f64 = (0..self.pool.len())
            .filter(|&i| mask & (1 << i) == 0)
            .map(|i| self.psi[self.pool[i]])
            .sum();
        if prize + rest <= self.best_prize {
            return;
        }
        for i in 0..self.pool.len() {
            if mask & (1 << i) != 0 {
                continue;
            }
            let z = self.pool[i];
            let next = len + self.inst.dist_ticks(here, z);
            if next + self.inst.dist_ticks(z, self.y) > self.budget {
                continue;
            }
            self.path.push(z);
            self.dfs(mask | (1 << i), next, prize + self.psi[z]);
            self.path.pop();
        }
    }
}

fn exact(inst: &Instance, pool: &[usize], x: usize, y: usize, budget: i64, psi: &[f64]) -> TickPath {
    let mut s = Search {
        inst,
        pool,
        y,
        budget,
        psi,
        best_prize: f64::NEG_INFINITY,
        best: Vec::new(),
        path: vec![x],
        seen: HashMap::new(),
    };
    s.dfs(0, 0, 0.0);
    let mut vertices = s.best;
    vertices.push(y);
    finish(inst, vertices, psi)
}

fn insertion(inst: &Instance, pool: &[usize], x: usize, y: usize, budget: i64, psi: &[f64]) -> TickPath {
    let d = |a: usize, b: usize| inst.dist_ticks(a, b);
    let mut path = vec![x, y];
    let mut len = d(x, y);
    let mut left: Vec<usize> = pool.to_vec();
    loop {
        // (score, extra, index into left, insertion slot)
        let mut pick: Option<(f64, i64, usize, usize)> = None;
        for (li, &z) in left.iter().enumerate() {
            for slot in 0..path.len() - 1 {
                let (a, b) = (path[slot], path[slot + 1]);
                let extra = d(a, z) + d(z, b) - d(a, b);
                if len + extra > budget {
                    continue;
                }
                let score = psi[z] / extra.max(1) as f64;
                let better = match pick {
                    None => true,
                    Some((s, e, _, _)) => score > s || (score == s && extra < e),
                };
                if better {
                    pick = Some((score, extra, li, slot));
                }
            }
        }
        let Some((_, extra, li, slot)) = pick else { break };
        path.insert(slot + 1, left.remove(li));
        len += extra;
    }
    finish(inst, path, psi)
}

fn finish(inst: &Instance, vertices: Vec<usize>, psi: &[f64]) -> TickPath {
    let length = vertices.windows(2).map(|w| inst.dist_ticks(w[0], w[1])).sum();
    let prize = vertices.iter().map(|&v| psi[v]).sum();
    TickPath { vertices, length, prize }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::from_ints;

    fn line(n: usize) -> Instance {
        let d: Vec<Vec<u64>> =
            (0..n).map(|i| (0..n).map(|j| (i as i64 - j as i64).unsigned_abs()).collect()).collect();
        from_ints(&d, &vec![1; n])
    }

    #[test]
    fn no_slack_gives_direct_path() {
        let inst = from_ints(&[vec![0, 2, 2], vec![2, 0, 2], vec![2, 2, 0]], &[1; 3]);
        let p = orienteering(&inst, &[0, 1, 2], 0, 1, Time::from_int(2), &[1.0, 2.0, 5.0]).unwrap();
        assert_eq!(p.vertices, vec![0, 1]);
        assert_eq!(p.prize, 3.0);
    }

    #[test]
    fn free_detours_are_all_taken() {
        let inst = line(6);
        let all: Vec<usize> = (0..6).collect();
        let p = orienteering(&inst, &all, 0, 5, Time::from_int(5), &[1.0; 6]).unwrap();
        assert_eq!(p.vertices, all);
        assert_eq!(p.length, 5);
    }

    #[test]
    fn heuristic_takes_free_detours_too() {
        let inst = line(24);
        let all: Vec<usize> = (0..24).collect();
        let p = orienteering(&inst, &all, 0, 23, Time::from_int(23), &[1.0; 24]).unwrap();
        assert_eq!(p.vertices, all);
    }

    #[test]
    fn budget_too_small() {
        let inst = line(3);
        let r = orienteering(&inst, &[0, 1, 2], 0, 2, Time::from_int(1), &[1.0; 3]);
        assert!(matches!(r, Err(Error::BudgetTooSmall { .. })));
    }
}
