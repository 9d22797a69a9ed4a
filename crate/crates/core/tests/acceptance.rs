//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use patrol_core::approx::solve_approx;
use patrol_core::fixtures::star3;
use patrol_core::greedy::{solve_orienteering_greedy, solve_simple_greedy, GreedyConfig};
use patrol_core::instances::{generate, GenSpec};
use patrol_core::minmax::{latency_walks, weighted_cost, WeightedInstance};
use patrol_core::oracle::exact_min_robots;
use patrol_core::subroutines::{equally_place, orienteering, Cycle, MCCP_ALPHA};
use patrol_core::time::ceil_log2;
use patrol_core::{evaluate_latencies, verify, Algorithm, Instance, Solution, Time, TimedWalk};
use rand::seq::SliceRandom;
use rand::RngExt;

type Outcome = Result<String, String>;

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{detail}; {took:.2?}"))
    } else {
        Err(format!("{detail}; took {took:.2?}, limit {limit:?}"))
    }
}

fn t(v: u64) -> Time {
    Time::from_int(v)
}

fn star_golden() -> Outcome {
    let start = Instant::now();
    let inst = star3([2, 4, 4]);
    let w = TimedWalk::through(&[0, 1, 0, 2]);
    let lat = |walks: Vec<TimedWalk>| -> Vec<Option<Time>> {
        evaluate_latencies(&Solution::new(walks), &inst).unwrap().latency
    };
    let shifted = |o: u64| TimedWalk { offset: t(o), ..w.clone() };
    let one = lat(vec![w.clone()]);
    let two = lat(vec![w.clone(), shifted(2)]);
    let staggered = lat(vec![w.clone(), shifted(1)]);
    let took = start.elapsed();
    let ok = one == [Some(t(2)), Some(t(4)), Some(t(4))]
        && two[0] == Some(t(2))
        && staggered == [Some(t(1)), Some(t(3)), Some(t(3))];
    if !ok {
        return Err(format!("got {one:?}, {two:?}, {staggered:?}"));
    }
    // three evaluations; the bound is per evaluation
    within(Duration::from_millis(3), start, format!("(2,4,4), a=2, (1,3,3); {:.1?} each", took / 3))
}

fn feasibility_blanket() -> Outcome {
    let start = Instant::now();
    let cfg = GreedyConfig::default();
    let mut runs = 0;
    for n in [5, 10, 20, 40] {
        for seed in 0..100 {
            let inst = generate(&GenSpec::new(n, 10_000 + seed)).map_err(|e| e.to_string())?;
            for algo in Algorithm::ALL {
                let sol = algo.solve(&inst, &cfg).map_err(|e| format!("{algo} n={n} seed={seed}: {e}"))?;
                let rep = verify(&sol, &inst).map_err(|e| e.to_string())?;
                let covered = sol.coverage(n).iter().all(|&c| c > 0);
                if !rep.is_feasible() || !covered {
                    return Err(format!("{algo} n={n} seed={seed} infeasible or uncovered"));
                }
                runs += 1;
            }
        }
    }
    within(Duration::from_secs(300), start, format!("{runs} runs feasible"))
}

/// Every 4-vertex metric with integer distances in 1..=3 and constraints in
/// 1..=8, one representative per isomorphism class.
fn four_vertex_suite() -> Vec<Instance> {
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut perms: Vec<Vec<usize>> = permutations(&[0, 1, 2, 3]);
    perms.sort();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for code in 0..3u32.pow(6) {
        let mut d = [[0u8; 4]; 4];
        let mut c = code;
        for &(u, v) in &edges {
            let x = (c % 3 + 1) as u8;
            c /= 3;
            d[u][v] = x;
            d[v][u] = x;
        }
        let metric = (0..4).all(|u| (0..4).all(|v| (0..4).all(|w| d[u][w] <= d[u][v] + d[v][w])));
        if !metric {
            continue;
        }
        for rc in 0..8u32.pow(4) {
            let r: Vec<u8> = (0..4).map(|i| (rc / 8u32.pow(i) % 8 + 1) as u8).collect();
            let canon = perms
                .iter()
                .map(|p| {
                    let mut key: Vec<u8> = (0..16).map(|i| d[p[i / 4]][p[i % 4]]).collect();
                    key.extend(p.iter().map(|&u| r[u]));
                    key
                })
                .min()
                .unwrap();
            if seen.insert(canon) {
                let dist = d.iter().map(|row| row.iter().map(|&x| t(x.into())).collect()).collect();
                let rs = r.iter().map(|&x| t(x.into())).collect();
                out.push(Instance::new(format!("k4-{}", out.len()), dist, rs).unwrap());
            }
        }
    }
    out
}

struct SuiteRow {
    opt: usize,
    approx: usize,
    greedy: usize,
    ogreedy: usize,
    log_rho: usize,
}

fn run_suite(suite: &[Instance]) -> Result<Vec<SuiteRow>, String> {
    let cfg = GreedyConfig::default();
    suite
        .iter()
        .map(|inst| {
            let e = |err: patrol_core::Error| format!("{}: {err}", inst.name());
            Ok(SuiteRow {
                opt: exact_min_robots(inst, 32).map_err(e)?,
                approx: solve_approx(inst).robots(),
                greedy: solve_simple_greedy(inst, &cfg).map_err(e)?.robots(),
                ogreedy: solve_orienteering_greedy(inst, &cfg).map_err(e)?.robots(),
                log_rho: ceil_log2(inst.rho()) as usize,
            })
        })
        .collect()
}

fn oracle_agreement(rows: &[SuiteRow], start: Instant) -> Outcome {
    if let Some((i, _)) = rows
        .iter()
        .enumerate()
        .find(|(_, r)| r.approx.min(r.greedy).min(r.ogreedy) < r.opt)
    {
        return Err(format!("instance k4-{i}: a solver beat the exact optimum"));
    }
    let close = rows.iter().filter(|r| r.ogreedy <= r.opt + 1).count();
    let exact = rows.iter().filter(|r| r.ogreedy == r.opt).count();
    let share = close as f64 / rows.len() as f64;
    let detail = format!(
        "{} instances; ogreedy within +1 on {:.2}%, optimal on {:.2}%",
        rows.len(),
        100.0 * share,
        100.0 * exact as f64 / rows.len() as f64
    );
    if share < 0.95 {
        return Err(detail);
    }
    within(Duration::from_secs(600), start, detail)
}

fn approx_bound(rows: &[SuiteRow]) -> Outcome {
    let alpha = MCCP_ALPHA as usize;
    let bad = rows.iter().filter(|r| r.approx > 4 * alpha * r.log_rho * r.opt).count();
    let worst = rows
        .iter()
        .map(|r| r.approx as f64 / (r.log_rho * r.opt) as f64)
        .fold(0.0, f64::max);
    let detail = format!("alpha={alpha}; worst approx/(log rho * opt) = {worst:.2}; {bad} violations");
    if bad == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn cycle_division() -> Outcome {
    let mut g = rng(55);
    for case in 0..100 {
        let n = g.random_range(2..=8);
        let inst = random_instance(&mut g, n, 9, 1);
        let mut vs = all(&inst);
        vs.shuffle(&mut g);
        vs.truncate(g.random_range(2..=n));
        let cycle = Cycle::new(&inst, vs.clone());
        for k in 1..=5 {
            let rep = evaluate_latencies(&Solution::new(equally_place(&cycle, k)), &inst).unwrap();
            let want = cycle.length.div_int(k as u64);
            if let Some(&v) = vs.iter().find(|&&v| rep.latency[v] != Some(want)) {
                return Err(format!("case {case}, k={k}: vertex {v} has {:?}, want {want}", rep.latency[v]));
            }
        }
    }
    Ok("100 cycles x k=1..5 exact".into())
}

fn orienteering_exact() -> Outcome {
    let start = Instant::now();
    let mut g = rng(66);
    for case in 0..50 {
        let inst = random_instance(&mut g, 9, 12, 1);
        let x = g.random_range(0..9);
        let y = (x + g.random_range(1..9)) % 9;
        let budget = inst.dist(x, y) + t(g.random_range(0..30));
        let psi: Vec<f64> = (0..9).map(|_| g.random_range(1..=20) as f64).collect();
        let got = orienteering(&inst, &all(&inst), x, y, budget, &psi).map_err(|e| e.to_string())?.prize;
        let want = brute_orienteering(&inst, &all(&inst), x, y, budget, &psi);
        if got != want {
            return Err(format!("task {case}: {got} vs brute force {want}"));
        }
    }
    within(Duration::from_secs(60), start, "50 tasks match brute force".into())
}

fn weighted_equivalence() -> Outcome {
    let mut g = rng(77);
    let (mut feasible, mut infeasible) = (0, 0);
    for case in 0..200 {
        let n = g.random_range(2..=6);
        let base = random_instance(&mut g, n, 5, 1);
        let mut walks: Vec<TimedWalk> = (0..g.random_range(0..=2))
            .map(|_| {
                let w = random_walk(&mut g, n, 6, 2);
                with_random_offset(&mut g, w, &base)
            })
            .collect();
        let mut order = all(&base);
        order.shuffle(&mut g);
        walks.push(TimedWalk::through(&order));
        let sol = Solution::new(walks);
        let lat = evaluate_latencies(&sol, &base).unwrap().latency;
        let r = lat.iter().map(|l| (l.unwrap() + t(g.random_range(0..3))).saturating_sub(t(1)).max(t(1))).collect();
        let inst = base.with_latencies(r).unwrap();
        let ok = verify(&sol, &inst).unwrap().is_feasible();
        let cost = weighted_cost(&sol, &WeightedInstance::from_latencies(&inst)).unwrap();
        if ok != (cost <= inst.r_min().ratio()) {
            return Err(format!("case {case}: feasible={ok}, weighted cost {cost}, r_min {}", inst.r_min()));
        }
        if ok {
            feasible += 1;
        } else {
            infeasible += 1;
        }
    }
    Ok(format!("200 pairs agree ({feasible} feasible, {infeasible} infeasible)"))
}

fn minmax_monotone() -> Outcome {
    let inst = generate(&GenSpec::new(20, 2020)).map_err(|e| e.to_string())?;
    let w = WeightedInstance::from_latencies(&inst);
    let lo = ceil_log2(w.rho()) as usize;
    let mut costs = Vec::new();
    for r in lo..=2 * lo {
        let sol = latency_walks(&w, r).map_err(|e| e.to_string())?;
        costs.push(weighted_cost(&sol, &w).map_err(|e| e.to_string())?);
    }
    let shown: Vec<String> = costs.iter().map(|c| format!("{:.4}", *c.numer() as f64 / *c.denom() as f64)).collect();
    let detail = format!("R={lo}..{}: {}", 2 * lo, shown.join(" "));
    if costs.windows(2).all(|p| p[1] <= p[0]) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn benchmark_ordering() -> Outcome {
    let cfg = GreedyConfig::default();
    let mut robots = [0usize; 2];
    let mut time = [Duration::ZERO; 2];
    let mut lines = Vec::new();
    for n in (10..=60).step_by(10) {
        let mut per_n = [0usize; 2];
        for seed in 0..10 {
            let inst = generate(&GenSpec::new(n, seed)).map_err(|e| e.to_string())?;
            for (i, algo) in [Algorithm::OGreedy, Algorithm::Approx].into_iter().enumerate() {
                let start = Instant::now();
                let sol = algo.solve(&inst, &cfg).map_err(|e| e.to_string())?;
                time[i] += start.elapsed();
                per_n[i] += sol.robots();
            }
        }
        robots[0] += per_n[0];
        robots[1] += per_n[1];
        lines.push(format!("n={n} {:.1}/{:.1}", per_n[0] as f64 / 10.0, per_n[1] as f64 / 10.0));
    }
    let detail = format!(
        "mean robots ogreedy/approx: {}; runtime ogreedy {:.2?} vs approx {:.2?}",
        lines.join(", "),
        time[0],
        time[1]
    );
    if robots[0] <= robots[1] && time[0] > time[1] {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, outcome: Outcome| {
        match &outcome {
            Ok(d) => println!("PASS {id} {name}: {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL {id} {name}: {d}")
            }
        }
    };
    report(1, "star golden latencies", star_golden());
    report(2, "feasibility blanket", feasibility_blanket());

    let start = Instant::now();
    let suite = four_vertex_suite();
    match run_suite(&suite) {
        Ok(rows) => {
            report(3, "exact-search agreement", oracle_agreement(&rows, start));
            report(4, "approximation bound", approx_bound(&rows));
        }
        Err(e) => {
            report(3, "exact-search agreement", Err(e.clone()));
            report(4, "approximation bound", Err(e));
        }
    }
    report(5, "cycle division", cycle_division());
    report(6, "orienteering exactness", orienteering_exact());
    report(7, "weighted latency equivalence", weighted_equivalence());
    report(8, "min-max monotonicity", minmax_monotone());
    report(9, "benchmark ordering", benchmark_ordering());

    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
