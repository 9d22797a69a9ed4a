//! JSON files for instances and solutions.
//!
//! Times are written as JSON integers when integral and as `"p/q"` strings
//! otherwise; readers also accept decimals. Printing a parsed file reproduces
//! the bytes the writer produced.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, Solution};
use crate::time::Time;

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    name: String,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    dist: Vec<Vec<Time>>,
    r: Vec<Time>,
}

pub fn parse_instance(json: &str) -> Result<Instance> {
    let f: InstanceFile = serde_json::from_str(json)?;
    if f.n != f.r.len() {
        return Err(Error::Shape(format!("n = {} but {} constraints given", f.n, f.r.len())));
    }
    match f.names {
        Some(names) => Instance::with_names(f.name, names, f.dist, f.r),
        None => Instance::new(f.name, f.dist, f.r),
    }
}

pub fn instance_to_json(inst: &Instance) -> String {
    let n = inst.n();
    let default_names = inst.names().iter().enumerate().all(|(v, s)| *s == format!("v{v}"));
    let f = InstanceFile {
        name: inst.name().to_string(),
        n,
        names: (!default_names).then(|| inst.names().to_vec()),
        dist: (0..n).map(|u| (0..n).map(|v| inst.dist(u, v)).collect()).collect(),
        r: inst.latencies().to_vec(),
    };
    serde_json::to_string(&f).expect("instance serializes")
}

pub fn parse_solution(json: &str) -> Result<Solution> {
    Ok(serde_json::from_str(json)?)
}

pub fn solution_to_json(sol: &Solution) -> String {
    serde_json::to_string(sol).expect("solution serializes")
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn read_solution(path: impl AsRef<Path>) -> Result<Solution> {
    parse_solution(&std::fs::read_to_string(path)?)
}

pub fn write_instance(path: impl AsRef<Path>, inst: &Instance) -> Result<()> {
    Ok(std::fs::write(path, instance_to_json(inst) + "\n")?)
}

pub fn write_solution(path: impl AsRef<Path>, sol: &Solution) -> Result<()> {
    Ok(std::fs::write(path, solution_to_json(sol) + "\n")?)
}
