//! Exact decision procedure for tiny instances.
//!
//! Robots move on the integer grid of the instance: every tick an idle robot
//! either waits or sets off toward another vertex, arriving `dist` ticks
//! later. A joint state records where each robot is headed, how far it still
//! has to go, and the time left before each vertex expires. A feasible
//! periodic schedule exists exactly when the graph of valid joint states
//! contains a cycle, which a depth-first search finds or rules out.
//!
//! Only schedules whose departures fall on grid ticks are considered. Within
//! that restriction the search is complete: an infeasible verdict covers
//! every period, not only those up to the horizon.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::model::{Instance, Solution, Step, TimedWalk};

pub const MAX_VERTICES: usize = 6;
pub const MAX_ROBOTS: usize = 3;
pub const HORIZON_CAP: u32 = 64;
/// Distinct joint states explored before giving up.
pub const STATE_BUDGET: usize = 20_000_000;

#[derive(Clone, Debug)]
pub struct Decision {
    pub feasible: bool,
    pub solution: Option<Solution>,
    /// Joint states expanded by the search.
    pub states: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
struct Robot {
    target: u8,
    residual: u8,
}

impl Robot {
    fn idle(self) -> bool {
        self.residual == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Joint {
    robots: [Robot; MAX_ROBOTS],
    s: [u8; MAX_VERTICES],
}

struct Ctx {
    n: usize,
    k: usize,
    dist: [[u8; MAX_VERTICES]; MAX_VERTICES],
    limit: [u8; MAX_VERTICES],
}

impl Ctx {
    fn encode(&self, j: &Joint) -> u128 {
        let mut code: u128 = 0;
        for r in &j.robots[..self.k] {
            code = (code << 9) | ((r.target as u128) << 6) | r.residual as u128;
        }
        for &s in &j.s[..self.n] {
            code = (code << 7) | s as u128;
        }
        code
    }

    fn actions(&self, j: &Joint) -> u64 {
        let idle = j.robots[..self.k].iter().filter(|r| r.idle()).count();
        (self.n as u64).pow(idle as u32)
    }

    /// Successor under action `a` (one base-`n` digit per idle robot: stay if
    /// the digit is the robot's vertex, else head there). Returns the
    /// canonical state and, per robot slot of `j`, its slot in the result.
    fn step(&self, j: &Joint, mut a: u64) -> Option<(Joint, [u8; MAX_ROBOTS])> {
        let mut robots = j.robots;
        for r in robots[..self.k].iter_mut() {
            if r.idle() {
                let to = (a % self.n as u64) as usize;
                a /= self.n as u64;
                let here = r.target as usize;
                if to != here {
                    *r = Robot { target: to as u8, residual: self.dist[here][to] - 1 };
                }
            } else {
                r.residual -= 1;
            }
        }

        let mut occupied = [false; MAX_VERTICES];
        for r in &robots[..self.k] {
            if r.idle() {
                occupied[r.target as usize] = true;
            }
        }
        let mut s = [0u8; MAX_VERTICES];
        for v in 0..self.n {
            if occupied[v] {
                s[v] = self.limit[v];
                continue;
            }
            if j.s[v] == 0 {
                return None;
            }
            s[v] = j.s[v] - 1;
            let reach = robots[..self.k]
                .iter()
                .map(|r| r.residual + self.dist[r.target as usize][v])
                .min()
                .unwrap_or(u8::MAX);
            if reach > s[v] {
                return None;
            }
        }

        let mut order: [usize; MAX_ROBOTS] = [0, 1, 2];
        order[..self.k].sort_by_key(|&i| robots[i]);
        let mut perm = [0u8; MAX_ROBOTS];
        let mut sorted = [Robot::default(); MAX_ROBOTS];
        for (slot, &i) in order[..self.k].iter().enumerate() {
            perm[i] = slot as u8;
            sorted[slot] = robots[i];
        }
        Some((Joint { robots: sorted, s }, perm))
    }

    /// Start configurations with every vertex fresh, all-idle ones first.
    fn roots(&self) -> Vec<Joint> {
        let mut options = Vec::new();
        for v in 0..self.n {
            let longest = (0..self.n).map(|u| self.dist[u][v]).max().unwrap_or(0);
            for res in 0..longest.max(1) {
                options.push(Robot { target: v as u8, residual: res });
            }
        }
        options.sort();
        let mut out = Vec::new();
        let mut pick = vec![0usize; self.k];
        loop {
            let mut j = Joint { robots: [Robot::default(); MAX_ROBOTS], s: [0; MAX_VERTICES] };
            for (i, &p) in pick.iter().enumerate() {
                j.robots[i] = options[p];
            }
            j.s[..self.n].copy_from_slice(&self.limit[..self.n]);
            out.push(j);
            // next non-decreasing tuple
            let mut i = self.k;
            loop {
                if i == 0 {
                    out.sort_by_key(|j| j.robots[..self.k].iter().filter(|r| !r.idle()).count());
                    return out;
                }
                i -= 1;
                if pick[i] + 1 < options.len() {
                    pick[i] += 1;
                    for t in i + 1..self.k {
                        pick[t] = pick[i];
                    }
                    break;
                }
            }
        }
    }
}

struct Frame {
    code: u128,
    joint: Joint,
    next: u64,
    total: u64,
    perm_to_next: [u8; MAX_ROBOTS],
}

/// Is there a feasible schedule for `robots` robots? Returns one if so.
///
/// Requires at most 6 vertices, at most 3 robots (unless there are at least as
/// many robots as vertices, which is trivially feasible), and every distance
/// and constraint at most `horizon <= 64` grid ticks.
pub fn exact_decision(inst: &Instance, robots: usize, horizon: u32) -> Result<Decision> {
    if robots == 0 {
        return Err(Error::Config("at least one robot is required".into()));
    }
    let n = inst.n();
    if robots >= n {
        let mut walks: Vec<TimedWalk> = inst.vertices().map(TimedWalk::parked).collect();
        walks.extend((n..robots).map(|_| TimedWalk::parked(0)));
        return Ok(Decision { feasible: true, solution: Some(Solution::new(walks)), states: 0 });
    }
    let ctx = context(inst, robots, horizon)?;
    search(inst, &ctx)
}

fn context(inst: &Instance, k: usize, horizon: u32) -> Result<Ctx> {
    let n = inst.n();
    if n > MAX_VERTICES || k > MAX_ROBOTS {
        return Err(Error::InstanceTooLarge(format!(
            "{n} vertices and {k} robots (limits {MAX_VERTICES} and {MAX_ROBOTS})"
        )));
    }
    if horizon > HORIZON_CAP {
        return Err(Error::InstanceTooLarge(format!("horizon {horizon} above cap {HORIZON_CAP}")));
    }
    if !inst.is_valid() {
        return Err(Error::Shape("instance violates the metric assumptions".into()));
    }
    let h = horizon as i64;
    let mut dist = [[0u8; MAX_VERTICES]; MAX_VERTICES];
    let mut limit = [0u8; MAX_VERTICES];
    for u in inst.vertices() {
        limit[u] = u8::try_from(inst.r_ticks(u)).ok().filter(|&t| t as i64 <= h).ok_or_else(|| {
            Error::InstanceTooLarge(format!("r({u}) is {} ticks, horizon {horizon}", inst.r_ticks(u)))
        })?;
        for v in inst.vertices() {
            let d = inst.dist_ticks(u, v);
            if d > h {
                return Err(Error::InstanceTooLarge(format!("dist({u},{v}) is {d} ticks, horizon {horizon}")));
            }
            dist[u][v] = d as u8;
        }
    }
    Ok(Ctx { n, k, dist, limit })
}

fn search(inst: &Instance, ctx: &Ctx) -> Result<Decision> {
    let mut black: FxHashSet<u128> = FxHashSet::default();
    let mut grey: FxHashMap<u128, usize> = FxHashMap::default();
    let mut stack: Vec<Frame> = Vec::new();
    let mut states = 0usize;

    for root in ctx.roots() {
        let code = ctx.encode(&root);
        if black.contains(&code) {
            continue;
        }
        grey.insert(code, 0);
        stack.push(Frame { code, joint: root, next: 0, total: ctx.actions(&root), perm_to_next: [0, 1, 2] });
        states += 1;

        while let Some(top) = stack.last_mut() {
            if top.next == top.total {
                black.insert(top.code);
                grey.remove(&top.code);
                stack.pop();
                continue;
            }
            let a = top.next;
            top.next += 1;
            let Some((child, perm)) = ctx.step(&top.joint, a) else { continue };
            let code = ctx.encode(&child);
            if let Some(&g) = grey.get(&code) {
                let sol = unroll(inst, ctx, &stack[g..], perm);
                return Ok(Decision { feasible: true, solution: Some(sol), states });
            }
            if black.contains(&code) {
                continue;
            }
            top.perm_to_next = perm;
            grey.insert(code, stack.len());
            stack.push(Frame { code, joint: child, next: 0, total: ctx.actions(&child), perm_to_next: [0, 1, 2] });
            states += 1;
            if states > STATE_BUDGET {
                return Err(Error::InstanceTooLarge(format!("more than {STATE_BUDGET} joint states")));
            }
        }
    }
    Ok(Decision { feasible: false, solution: None, states })
}

/// Turns a cycle of joint states into one periodic walk per robot. Robots may
/// swap slots along the cycle, so it is repeated until each is back in place.
fn unroll(inst: &Instance, ctx: &Ctx, cycle: &[Frame], closing: [u8; MAX_ROBOTS]) -> Solution {
    let k = ctx.k;
    let mut slot: Vec<usize> = (0..k).collect();
    let mut traj: Vec<Vec<Robot>> = vec![Vec::new(); k];
    loop {
        for (i, f) in cycle.iter().enumerate() {
            for id in 0..k {
                traj[id].push(f.joint.robots[slot[id]]);
            }
            let perm = if i + 1 == cycle.len() { closing } else { f.perm_to_next };
            for s in slot.iter_mut() {
                *s = perm[*s] as usize;
            }
        }
        if slot.iter().enumerate().all(|(id, &s)| id == s) {
            break;
        }
    }
    Solution::new(traj.iter().map(|t| to_walk(inst, ctx, t)).collect())
}

fn to_walk(inst: &Instance, ctx: &Ctx, traj: &[Robot]) -> TimedWalk {
    let period = traj.len();
    let at = |t: usize| traj[t % period];
    let arrivals: Vec<usize> = (0..period)
        .filter(|&t| {
            let (now, prev) = (at(t), at(t + period - 1));
            now.idle() && (!prev.idle() || prev.target != now.target)
        })
        .collect();
    if arrivals.is_empty() {
        return TimedWalk::parked(traj[0].target as usize);
    }

    let mut steps = Vec::with_capacity(arrivals.len());
    let mut total = 0;
    for &a in &arrivals {
        let v = at(a).target;
        let mut hold = 0;
        while at(a + hold + 1).idle() && at(a + hold + 1).target == v {
            hold += 1;
        }
        total += hold;
        steps.push(Step::new(v as usize, inst.ticks_to_time(hold as i64)));
    }
    for i in 0..steps.len() {
        total += ctx.dist[steps[i].vertex][steps[(i + 1) % steps.len()].vertex] as usize;
    }
    debug_assert_eq!(total, period, "unrolled walk does not match the cycle length");
    let offset = (period - arrivals[0]) % period;
    TimedWalk::new(steps, inst.ticks_to_time(offset as i64))
}

/// Fewest robots admitting a feasible schedule on the grid.
pub fn exact_min_robots(inst: &Instance, horizon: u32) -> Result<usize> {
    let n = inst.n();
    for k in 1..n {
        if k > MAX_ROBOTS {
            return Err(Error::InstanceTooLarge(format!(
                "more than {MAX_ROBOTS} robots would be needed to decide {n} vertices"
            )));
        }
        if exact_decision(inst, k, horizon)?.feasible {
            return Ok(k);
        }
    }
    Ok(n)
}
