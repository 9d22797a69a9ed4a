use crate::model::TimedWalk;
use crate::subroutines::Cycle;

/// `k` robots on cycle `c`, offsets `j * l(c) / k`.
///
/// Every vertex of the cycle then sees a robot every `l(c) / k` time units.
/// A zero-length cycle yields `k` parked robots.
///
/// # Panics
/// If `k == 0` or the cycle is empty.
pub fn equally_place(c: &Cycle, k: usize) -> Vec<TimedWalk> {
    assert!(k >= 1, "at least one robot");
    assert!(!c.is_empty(), "empty cycle");
    (0..k)
        .map(|j| {
            let mut w = c.to_walk();
            w.offset = c.length.mul_int(j as u64).div_int(k as u64);
            w
        })
        .collect()
}
