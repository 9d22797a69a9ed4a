use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::sync::mpsc;
use std::sync::Arc;
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::algorithm::Algorithm;
use crate::error::Result;
use crate::greedy::GreedyConfig;
use crate::model::{verify, Instance};
use crate::time::Time;

/// One (instance, algorithm) cell. Timed-out or failed cells leave the
/// result columns empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub algorithm: String,
    pub robots: Option<usize>,
    pub total_length: Option<Time>,
    pub millis: u64,
    pub feasible: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub n: usize,
    pub algorithm: String,
    pub cells: usize,
    pub solved: usize,
    pub mean_robots: f64,
    pub min_robots: usize,
    pub max_robots: usize,
    pub mean_millis: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResultTable {
    pub rows: Vec<BenchRow>,
    /// Vertex count per instance name, for grouping by size.
    pub sizes: BTreeMap<String, usize>,
}

/// Runs every algorithm on every instance, one cell at a time so the timings
/// do not compete. A cell that exceeds `budget` is recorded without results
/// and the run moves on; its worker thread is abandoned.
pub fn run_benchmark(
    instances: &[Instance],
    algorithms: &[Algorithm],
    budget: Duration,
    cfg: &GreedyConfig,
) -> ResultTable {
    let mut table = ResultTable::default();
    if algorithms.is_empty() {
        return table;
    }
    for inst in instances {
        table.sizes.insert(inst.name().to_string(), inst.n());
        let shared = Arc::new(inst.clone());
        for &algo in algorithms {
            table.rows.push(run_cell(Arc::clone(&shared), algo, budget, cfg.clone()));
        }
    }
    table
}

fn run_cell(inst: Arc<Instance>, algo: Algorithm, budget: Duration, cfg: GreedyConfig) -> BenchRow {
    let mut row = BenchRow {
        instance: inst.name().to_string(),
        algorithm: algo.name().to_string(),
        robots: None,
        total_length: None,
        millis: 0,
        feasible: None,
    };
    let (tx, rx) = mpsc::channel();
    let worker = Arc::clone(&inst);
    thread::spawn(move || {
        let start = Instant::now();
        let out = algo.solve(&worker, &cfg);
        let _ = tx.send((out, start.elapsed()));
    });
    match rx.recv_timeout(budget) {
        Ok((Ok(sol), elapsed)) => {
            row.millis = elapsed.as_millis() as u64;
            row.robots = Some(sol.robots());
            row.total_length = Some(sol.total_length(&inst));
            row.feasible = Some(verify(&sol, &inst).map(|r| r.is_feasible()).unwrap_or(false));
        }
        Ok((Err(_), elapsed)) => row.millis = elapsed.as_millis() as u64,
        Err(_) => row.millis = budget.as_millis() as u64,
    }
    row
}

impl ResultTable {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        if self.rows.is_empty() {
            w.write_record(["instance", "algorithm", "robots", "total_length", "millis", "feasible"])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<ResultTable> {
        let mut rd = csv::Reader::from_reader(input);
        let rows = rd.deserialize().collect::<std::result::Result<Vec<BenchRow>, _>>()?;
        Ok(ResultTable { rows, sizes: BTreeMap::new() })
    }

    /// Mean, min and max robots and mean time per (size, algorithm).
    pub fn aggregate(&self) -> Vec<Aggregate> {
        let mut groups: BTreeMap<(usize, String), Vec<&BenchRow>> = BTreeMap::new();
        for row in &self.rows {
            let n = self.sizes.get(&row.instance).copied().unwrap_or(0);
            groups.entry((n, row.algorithm.clone())).or_default().push(row);
        }
        groups
            .into_iter()
            .map(|((n, algorithm), rows)| {
                let robots: Vec<usize> = rows.iter().filter_map(|r| r.robots).collect();
                let solved = robots.len();
                let mean = |xs: &[f64]| if xs.is_empty() { f64::NAN } else { xs.iter().sum::<f64>() / xs.len() as f64 };
                Aggregate {
                    n,
                    algorithm,
                    cells: rows.len(),
                    solved,
                    mean_robots: mean(&robots.iter().map(|&r| r as f64).collect::<Vec<_>>()),
                    min_robots: robots.iter().copied().min().unwrap_or(0),
                    max_robots: robots.iter().copied().max().unwrap_or(0),
                    mean_millis: mean(&rows.iter().map(|r| r.millis as f64).collect::<Vec<_>>()),
                }
            })
            .collect()
    }
}

impl fmt::Display for ResultTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>5}  {:<8} {:>6} {:>10} {:>6} {:>6} {:>12}",
            "n", "algo", "solved", "mean_rob", "min", "max", "mean_ms"
        )?;
        for a in self.aggregate() {
            writeln!(
                f,
                "{:>5}  {:<8} {:>3}/{:<2} {:>10.2} {:>6} {:>6} {:>12.1}",
                a.n, a.algorithm, a.solved, a.cells, a.mean_robots, a.min_robots, a.max_robots, a.mean_millis
            )?;
        }
        Ok(())
    }
}
