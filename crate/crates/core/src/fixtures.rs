//! Small hand-checkable instances shared by tests, docs and the CLI.

use crate::model::Instance;
use crate::time::Time;

/// Three vertices `a, b, c` with unit edges `a-b` and `a-c`; `b-c` takes the
/// metric closure `2`. The walk `(a, b, a, c)` has latencies `2, 4, 4` on it.
pub fn star3(r: [u64; 3]) -> Instance {
    let d = [[0, 1, 1], [1, 0, 2], [1, 2, 0]];
    let dist = d.iter().map(|row| row.iter().map(|&x| Time::from_int(x)).collect()).collect();
    let names = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    Instance::with_names("star3", names, dist, r.iter().map(|&x| Time::from_int(x)).collect())
        .expect("well-formed")
}

/// Two vertices at distance `d`.
pub fn pair(d: u64, r: [u64; 2]) -> Instance {
    let t = Time::from_int;
    Instance::new("pair", vec![vec![t(0), t(d)], vec![t(d), t(0)]], vec![t(r[0]), t(r[1])])
        .expect("well-formed")
}

/// Integer instance from a full distance matrix and constraints.
pub fn from_ints(dist: &[Vec<u64>], r: &[u64]) -> Instance {
    let dist = dist.iter().map(|row| row.iter().map(|&x| Time::from_int(x)).collect()).collect();
    Instance::new("ints", dist, r.iter().map(|&x| Time::from_int(x)).collect()).expect("well-formed")
}
