use crate::model::Instance;
use crate::subroutines::Cycle;

/// Closed tour length in ticks.
pub(crate) fn tour_ticks(inst: &Instance, tour: &[usize]) -> i64 {
    let k = tour.len();
    (0..k).map(|i| inst.dist_ticks(tour[i], tour[(i + 1) % k])).sum()
}

/// Heuristic travelling-salesman tour of `subset`.
///
/// Nearest-neighbour construction from every start vertex, each improved by
/// 2-opt until no single move helps; the shortest result wins, ties going to
/// the earliest start.
///
/// # Panics
/// If `subset` is empty.
pub fn tsp_tour(inst: &Instance, subset: &[usize]) -> Cycle {
    assert!(!subset.is_empty(), "tsp_tour on an empty subset");
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() <= 3 {
        return Cycle::new(inst, sorted);
    }

    let mut best: Option<(i64, Vec<usize>)> = None;
    for start in 0..sorted.len() {
        let mut tour = nearest_neighbour(inst, &sorted, start);
        improve_two_opt(inst, &mut tour);
        let len = tour_ticks(inst, &tour);
        if best.as_ref().is_none_or(|(b, _)| len < *b) {
            best = Some((len, tour));
        }
    }
    let (_, tour) = best.expect("at least one start");
    Cycle::new(inst, canonical_rotation(tour))
}

fn nearest_neighbour(inst: &Instance, vertices: &[usize], start: usize) -> Vec<usize> {
    let mut left: Vec<usize> = vertices.to_vec();
    let mut tour = vec![left.remove(start)];
    while !left.is_empty() {
        let here = *tour.last().unwrap();
        let (i, _) = left
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| (inst.dist_ticks(here, v), v))
            .unwrap();
        tour.push(left.remove(i));
    }
    tour
}

/// First-improvement 2-opt to a local optimum.
pub(crate) fn improve_two_opt(inst: &Instance, tour: &mut [usize]) {
    let k = tour.len();
    if k < 4 {
        return;
    }
    let d = |a: usize, b: usize| inst.dist_ticks(a, b);
    let mut improved = true;
    while improved {
        improved = false;
        for i in 0..k - 2 {
            for j in i + 2..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                let (a, b) = (tour[i], tour[i + 1]);
                let (c, e) = (tour[j], tour[(j + 1) % k]);
                if d(a, c) + d(b, e) < d(a, b) + d(c, e) {
                    tour[i + 1..=j].reverse();
                    improved = true;
                }
            }
        }
    }
}

/// Rotate so the lowest vertex comes first.
fn canonical_rotation(mut tour: Vec<usize>) -> Vec<usize> {
    if let Some(pos) = tour.iter().enumerate().min_by_key(|&(_, v)| v).map(|(i, _)| i) {
        tour.rotate_left(pos);
    }
    tour
}
