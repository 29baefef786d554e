use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fretrans"));
    c.env_remove("FRECHET_TOL");
    c
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(c: &mut Command) -> (i32, String, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = c.output().unwrap();
    (
        status.code().unwrap(),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

fn example(dir: &TempDir) -> (PathBuf, PathBuf) {
    (
        write(dir, "pi.txt", "2\n0 0\n2 0\n"),
        write(dir, "sigma.txt", "2\n0 0\n0 0\n"),
    )
}

fn decide(pi: &Path, sigma: &Path, delta: &str) -> Command {
    let mut c = bin();
    c.arg("decide")
        .arg("--pi")
        .arg(pi)
        .arg("--sigma")
        .arg(sigma)
        .args(["--delta", delta]);
    c
}

#[test]
fn decide_yes_and_no() {
    let dir = TempDir::new().unwrap();
    let (pi, sigma) = example(&dir);
    let (code, out, _) = run(&mut decide(&pi, &sigma, "1"));
    assert_eq!(code, 0);
    let f: Vec<f64> = out
        .split_whitespace()
        .skip(1)
        .map(|s| s.parse().unwrap())
        .collect();
    assert!(
        out.starts_with("yes ") && (f[0] - 1.0).abs() < 1e-9 && f[1].abs() < 1e-9,
        "{out}"
    );
    let (code, out, _) = run(&mut decide(&pi, &sigma, "0.99"));
    assert_eq!((code, out.trim()), (1, "no"));
    let (code, _, _) = run(decide(&pi, &sigma, "1").args(["--no-prune", "--chunk", "2"]));
    assert_eq!(code, 0);
}

#[test]
fn tolerance_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let (pi, sigma) = example(&dir);
    let (code, _, _) = run(decide(&pi, &sigma, "0.99").env("FRECHET_TOL", "0.05"));
    assert_eq!(code, 0);
    let (code, _, err) = run(decide(&pi, &sigma, "1").env("FRECHET_TOL", "abc"));
    assert_eq!(code, 2);
    assert!(err.contains("FRECHET_TOL"));
}

#[test]
fn compute_worked_example() {
    let dir = TempDir::new().unwrap();
    let (pi, sigma) = example(&dir);
    let (code, out, _) = run(bin()
        .arg("compute")
        .arg("--pi")
        .arg(&pi)
        .arg("--sigma")
        .arg(&sigma));
    assert_eq!(code, 0);
    let f: Vec<f64> = out.split_whitespace().map(|s| s.parse().unwrap()).collect();
    assert_eq!(f.len(), 3);
    assert!(
        (f[0] - 1.0).abs() < 1e-9 && (f[1] - 1.0).abs() < 1e-9 && f[2].abs() < 1e-9,
        "{out}"
    );
}

#[test]
fn offline_reach_lines() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.txt", "3\n110\n010\n011\n");
    let u = write(&dir, "u.txt", "3 3\n2 2 0\n2 3 1\n3 3 0\n");
    let (code, out, _) = run(bin()
        .arg("offline-reach")
        .arg("--matrix")
        .arg(&m)
        .arg("--updates")
        .arg(&u));
    assert_eq!(code, 0);
    assert_eq!(out, "0\n1\n0\n");
    let (code, out2, _) = run(bin()
        .arg("offline-reach")
        .arg("--matrix")
        .arg(&m)
        .arg("--updates")
        .arg(&u)
        .args(["--chunk", "1"]));
    assert_eq!((code, out2), (0, out));
    let bad = write(&dir, "bad.txt", "4 1\n1 1 1\n");
    let (code, _, err) = run(bin()
        .arg("offline-reach")
        .arg("--matrix")
        .arg(&m)
        .arg("--updates")
        .arg(&bad));
    assert_eq!(code, 2);
    assert!(err.contains("side"));
}

#[test]
fn hard_instance_round_trip() {
    let dir = TempDir::new().unwrap();
    let ov = write(&dir, "ov.txt", "1 1\n0\n1\n1\n1\n");
    let (pi, sigma) = (dir.path().join("hp.txt"), dir.path().join("hs.txt"));
    let (code, out, _) = run(bin()
        .arg("gen-hard")
        .arg("--ov")
        .arg(&ov)
        .arg("--out-pi")
        .arg(&pi)
        .arg("--out-sigma")
        .arg(&sigma));
    assert_eq!(code, 0);
    let delta: f64 = out.trim().parse().unwrap();
    assert!((delta - (2.0 + 0.001 / 4.0)).abs() < 1e-15);
    assert!(fs::read_to_string(&pi).unwrap().starts_with("19\n"));
    assert!(fs::read_to_string(&sigma).unwrap().starts_with("16\n"));
    let (code, _, _) = run(&mut decide(&pi, &sigma, out.trim()));
    assert_eq!(code, 0);

    let (code, out, _) = run(bin().arg("verify-hard").arg("--ov").arg(&ov));
    assert_eq!(code, 0);
    assert!(
        out.contains("orthogonal=true decided=true witness=true"),
        "{out}"
    );
    let no = write(&dir, "no.txt", "1 1\n1\n1\n1\n1\n");
    let (code, out, _) = run(bin().arg("verify-hard").arg("--ov").arg(&no));
    assert_eq!(code, 0);
    assert!(out.contains("orthogonal=false decided=false"), "{out}");
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn bench_small_run() {
    let (code, out, _) = run(bin().args(["bench", "--n", "17", "--u", "100"]));
    assert_eq!(code, 0);
    let r = rows(&out);
    assert_eq!(r[0].join(","), "algo,n,U,k,seed,time_ns,checksum");
    assert_eq!(r.len(), 3);
    assert_eq!((r[1][0].as_str(), r[2][0].as_str()), ("chunked", "naive"));
    assert_eq!(r[1][6], r[2][6]);
    assert_eq!((r[1][1].as_str(), r[1][2].as_str()), ("17", "100"));
}

#[test]
fn bench_k_sweep_to_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("b.csv");
    let (code, _, _) = run(bin()
        .args([
            "bench",
            "--n",
            "9",
            "--u",
            "50",
            "--k-sweep",
            "--no-naive",
            "--out",
        ])
        .arg(&path));
    assert_eq!(code, 0);
    let r = rows(&fs::read_to_string(&path).unwrap());
    assert_eq!(r.len(), 5);
    let ks: Vec<&str> = r[1..].iter().map(|x| x[3].as_str()).collect();
    assert_eq!(ks, ["1", "3", "5", "9"]);
    assert!(r[1..].iter().all(|x| x[0] == "chunked" && x[6] == r[1][6]));
}

#[test]
fn bench_budget_truncates() {
    let (code, out, _) = run(bin().args(["bench", "--n", "33,65,129", "--budget", "0.000001"]));
    assert_eq!(code, 0);
    assert!(
        out.lines().last().unwrap().starts_with("TRUNCATED"),
        "{out}"
    );
}

#[test]
fn bad_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "2\n0 0\n");
    let (pi, _) = example(&dir);
    let (code, _, err) = run(&mut decide(&pi, &bad, "1"));
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
    let (code, _, _) = run(&mut decide(&pi, &dir.path().join("missing"), "1"));
    assert_eq!(code, 2);
    let (code, _, _) = run(bin().args(["bench", "--density", "2"]));
    assert_eq!(code, 2);
}
