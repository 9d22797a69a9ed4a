#![allow(dead_code)]

use patrol_core::fixtures::from_ints;
use patrol_core::{Instance, Step, Time, TimedWalk};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shortest-path closure of random integer edge weights in `1..=max_w`.
#[allow(clippy::needless_range_loop)]
pub fn random_metric(rng: &mut ChaCha8Rng, n: usize, max_w: u64) -> Vec<Vec<u64>> {
    let mut d = vec![vec![0u64; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            let w = rng.random_range(1..=max_w);
            d[u][v] = w;
            d[v][u] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, max_w: u64, max_r: u64) -> Instance {
    let d = random_metric(rng, n, max_w);
    let r: Vec<u64> = (0..n).map(|_| rng.random_range(1..=max_r)).collect();
    from_ints(&d, &r)
}

pub fn random_walk(rng: &mut ChaCha8Rng, n: usize, max_len: usize, max_hold: u64) -> TimedWalk {
    let len = rng.random_range(1..=max_len);
    let steps = (0..len)
        .map(|_| Step::new(rng.random_range(0..n), Time::from_int(rng.random_range(0..=max_hold))))
        .collect();
    TimedWalk::new(steps, Time::ZERO)
}

/// Same walk with a random offset inside its period.
pub fn with_random_offset(rng: &mut ChaCha8Rng, mut w: TimedWalk, inst: &Instance) -> TimedWalk {
    let p = w.period(inst);
    if !p.is_zero() {
        let den = rng.random_range(1..=4u64);
        let k = rng.random_range(0..den);
        w.offset = p.mul_int(k).div_int(den);
    }
    w
}

pub fn all(inst: &Instance) -> Vec<usize> {
    inst.vertices().collect()
}

/// All permutations of `items` (Heap's algorithm).
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    fn go(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        go(k - 1, a, out);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
            go(k - 1, a, out);
        }
    }
    let mut out = Vec::new();
    go(items.len(), &mut items.to_vec(), &mut out);
    out
}

/// Shortest closed tour over `vertices` by enumeration (first vertex fixed).
pub fn brute_tsp(inst: &Instance, vertices: &[usize]) -> Time {
    if vertices.len() <= 1 {
        return Time::ZERO;
    }
    let first = vertices[0];
    permutations(&vertices[1..])
        .into_iter()
        .map(|rest| {
            let mut tour = vec![first];
            tour.extend(rest);
            cyclic_length(inst, &tour)
        })
        .min()
        .unwrap()
}

pub fn cyclic_length(inst: &Instance, tour: &[usize]) -> Time {
    let k = tour.len();
    (0..k).map(|i| inst.dist(tour[i], tour[(i + 1) % k])).sum()
}

/// Best prize over all simple `x`-`y` paths of length at most `budget`,
/// enumerating every ordered subset of the other candidates.
pub fn brute_orienteering(
    inst: &Instance,
    candidates: &[usize],
    x: usize,
    y: usize,
    budget: Time,
    psi: &[f64],
) -> f64 {
    let inner: Vec<usize> = candidates.iter().copied().filter(|&v| v != x && v != y).collect();
    let mut best = f64::NEG_INFINITY;
    let k = inner.len();
    for mask in 0u32..(1 << k) {
        let chosen: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| inner[i]).collect();
        let prize: f64 = psi[x] + psi[y] + chosen.iter().map(|&v| psi[v]).sum::<f64>();
        if prize <= best {
            continue;
        }
        for order in permutations(&chosen) {
            let mut path = vec![x];
            path.extend(order);
            path.push(y);
            let len: Time = path.windows(2).map(|w| inst.dist(w[0], w[1])).sum();
            if len <= budget {
                best = prize;
                break;
            }
        }
    }
    best
}

/// Minimum number of cycles covering `vertices` with each cyclic length at
/// most `lambda`, over all set partitions (optimal tour per block).
pub fn brute_min_cycles(inst: &Instance, vertices: &[usize], lambda: Time) -> usize {
    fn go(inst: &Instance, rest: &[usize], lambda: Time, blocks: &mut Vec<Vec<usize>>, best: &mut usize) {
        if blocks.len() >= *best {
            return;
        }
        let Some((&v, tail)) = rest.split_first() else {
            *best = blocks.len();
            return;
        };
        for i in 0..blocks.len() {
            blocks[i].push(v);
            if brute_tsp(inst, &blocks[i]) <= lambda {
                go(inst, tail, lambda, blocks, best);
            }
            blocks[i].pop();
        }
        blocks.push(vec![v]);
        go(inst, tail, lambda, blocks, best);
        blocks.pop();
    }
    let mut best = usize::MAX;
    go(inst, vertices, lambda, &mut Vec::new(), &mut best);
    best
}
