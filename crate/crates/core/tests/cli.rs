use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use patrol_core::fixtures::{pair, star3};
use patrol_core::model::io::{read_instance, read_solution, write_instance};
use patrol_core::{verify, Instance};
use tempfile::TempDir;

fn patrol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_patrol")).args(args).output().expect("spawn patrol")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn put(dir: &TempDir, name: &str, inst: &Instance) -> PathBuf {
    let p = dir.path().join(name);
    write_instance(&p, inst).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_then_verify_each_algorithm() {
    let dir = TempDir::new().unwrap();
    let inst = star3([2, 4, 4]);
    let ip = put(&dir, "star.json", &inst);
    for algo in ["approx", "greedy", "ogreedy"] {
        let sp = dir.path().join(format!("{algo}.json"));
        let o = patrol(&["solve", "--algo", algo, "-i", s(&ip), "-o", s(&sp)]);
        assert!(o.status.success(), "{algo}: {}", stderr(&o));
        assert!(stdout(&o).contains("robots:"));
        let sol = read_solution(&sp).unwrap();
        assert!(verify(&sol, &inst).unwrap().is_feasible());
        let v = patrol(&["verify", "-i", s(&ip), "-s", s(&sp)]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    }
}

#[test]
fn verify_reports_infeasible_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let ip = put(&dir, "star.json", &star3([2, 3, 4]));
    let sp = dir.path().join("sol.json");
    std::fs::write(&sp, r#"{"walks":[{"steps":[[0,0],[1,0],[0,0],[2,0]],"offset":"0"}]}"#).unwrap();
    let o = patrol(&["verify", "-i", s(&ip), "-s", s(&sp)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("infeasible"), "{}", stdout(&o));
}

#[test]
fn oracle_infeasible_pair() {
    let dir = TempDir::new().unwrap();
    let ip = put(&dir, "pair.json", &pair(1, [1, 1]));
    let o = patrol(&["oracle", "-i", s(&ip), "--robots", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("1 robots: infeasible at horizon 32"), "{}", stdout(&o));
    let o = patrol(&["oracle", "-i", s(&ip)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("minimum robots: 2"), "{}", stdout(&o));
}

#[test]
fn oracle_writes_solution() {
    let dir = TempDir::new().unwrap();
    let inst = star3([2, 4, 4]);
    let ip = put(&dir, "star.json", &inst);
    let sp = dir.path().join("opt.json");
    let o = patrol(&["oracle", "-i", s(&ip), "-o", s(&sp)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("minimum robots: 1"));
    assert!(verify(&read_solution(&sp).unwrap(), &inst).unwrap().is_feasible());
}

#[test]
fn malformed_json_names_position() {
    let dir = TempDir::new().unwrap();
    let ip = dir.path().join("bad.json");
    std::fs::write(&ip, "{\n  \"n\": ,\n}").unwrap();
    let o = patrol(&["solve", "-i", s(&ip), "-o", s(&dir.path().join("x.json"))]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn non_metric_instance_is_rejected() {
    let dir = TempDir::new().unwrap();
    let ip = dir.path().join("tri.json");
    std::fs::write(&ip, r#"{"name":"t","n":3,"dist":[[0,1,5],[1,0,1],[5,1,0]],"r":[4,4,4]}"#).unwrap();
    let o = patrol(&["solve", "-i", s(&ip), "-o", s(&dir.path().join("x.json"))]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("triangle"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(patrol(&["solve", "--bogus"]).status.code(), Some(2));
    assert_eq!(patrol(&["frobnicate"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let ip = put(&dir, "star.json", &star3([2, 4, 4]));
    let o = patrol(&["solve", "--m", "0", "-i", s(&ip), "-o", s(&dir.path().join("x.json"))]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let o = patrol(&["gen", "-n", "5", "--k-min", "1", "-o", s(&dir.path().join("g.json"))]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        assert!(patrol(&["gen", "-n", "12", "--seed", "7", "-o", s(p)]).status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let inst = read_instance(&a).unwrap();
    assert_eq!(inst.n(), 12);
    assert!(inst.is_valid());
}

#[test]
fn bench_writes_csv() {
    let dir = TempDir::new().unwrap();
    for seed in 0..2 {
        let p = dir.path().join(format!("i{seed}.json"));
        assert!(patrol(&["gen", "-n", "8", "--seed", &seed.to_string(), "-o", s(&p)]).status.success());
    }
    let csv = dir.path().join("out.csv");
    let o = patrol(&["bench", "--dir", s(dir.path()), "--algos", "approx,ogreedy", "--budget", "30", "--csv", s(&csv)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 2, "{text}");
    assert!(text.lines().next().unwrap().starts_with("instance,algorithm"));
}

#[test]
fn minmax_and_minrobots() {
    let dir = TempDir::new().unwrap();
    let inst = star3([2, 4, 4]);
    let ip = put(&dir, "star.json", &inst);
    let sp = dir.path().join("mm.json");
    let o = patrol(&["minmax", "-i", s(&ip), "--robots", "2", "-o", s(&sp)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("weighted cost"));
    assert!(read_solution(&sp).unwrap().robots() <= 2);

    let o = patrol(&["minrobots", "-i", s(&ip), "--alpha", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("robots: 1"), "{}", stdout(&o));
}
