//! Offline reachability benchmark: the chunked solver against per-prefix
//! dynamic programming on random matrices and update streams.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::io::Write;
use std::time::{Duration, Instant};

use anyhow::Result;
use fretrans::offline::{offline_bruteforce, offline_grid_reachability, ChunkConfig, UpdateOp};
use fretrans::FreeSpaceMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const HEADER: [&str; 7] = ["algo", "n", "U", "k", "seed", "time_ns", "checksum"];
pub const TRUNCATED: &str = "TRUNCATED";

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub ns: Vec<usize>,
    /// Update counts; `None` means `U = n²`.
    pub us: Option<Vec<usize>>,
    pub seeds: u64,
    pub seed: u64,
    pub density: f64,
    /// Replace the default chunk size by `{1, √n, n^(2/3), n}`.
    pub k_sweep: bool,
    pub naive: bool,
    pub budget: Option<Duration>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub algo: &'static str,
    pub n: usize,
    pub u: usize,
    pub k: Option<usize>,
    pub seed: u64,
    pub time_ns: u128,
    pub checksum: u64,
}

impl BenchRecord {
    fn fields(&self) -> [String; 7] {
        [
            self.algo.to_string(),
            self.n.to_string(),
            self.u.to_string(),
            self.k.map(|k| k.to_string()).unwrap_or_default(),
            self.seed.to_string(),
            self.time_ns.to_string(),
            self.checksum.to_string(),
        ]
    }
}

pub fn workload(n: usize, u: usize, density: f64, seed: u64) -> (FreeSpaceMatrix, Vec<UpdateOp>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = FreeSpaceMatrix::from_fn(n, n, |_, _| rng.gen_bool(density));
    let ops = (0..u)
        .map(|_| {
            UpdateOp::new(
                rng.gen_range(1..=n),
                rng.gen_range(1..=n),
                rng.gen_bool(density),
            )
        })
        .collect();
    (m, ops)
}

pub fn checksum(answers: &[bool]) -> u64 {
    let mut h = DefaultHasher::new();
    answers.hash(&mut h);
    h.finish()
}

pub fn sweep_ks(n: usize) -> Vec<usize> {
    let nf = n as f64;
    vec![
        1,
        nf.sqrt().ceil() as usize,
        nf.powf(2.0 / 3.0).ceil() as usize,
        n,
    ]
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed().as_nanos())
}

/// Runs the benchmark, writing CSV rows as they complete. Stops with a
/// truncation row once the budget is spent.
pub fn run(cfg: &BenchConfig, out: impl Write) -> Result<Vec<BenchRecord>> {
    let start = Instant::now();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    let mut records = Vec::new();
    let over = || cfg.budget.is_some_and(|b| start.elapsed() > b);
    'all: for &n in &cfg.ns {
        let us = cfg.us.clone().unwrap_or_else(|| vec![n * n]);
        for &u in &us {
            for s in 0..cfg.seeds {
                let seed = cfg.seed.wrapping_add(s);
                let (m, ops) = workload(n, u, cfg.density, seed);
                let ks: Vec<Option<usize>> = if cfg.k_sweep {
                    sweep_ks(n).into_iter().map(Some).collect()
                } else {
                    vec![None]
                };
                let mut runs: Vec<(&'static str, Option<usize>)> =
                    ks.into_iter().map(|k| ("chunked", k)).collect();
                if cfg.naive {
                    runs.push(("naive", None));
                }
                for (algo, k) in runs {
                    if over() {
                        w.write_record([TRUNCATED, "", "", "", "", "", ""])?;
                        break 'all;
                    }
                    let (answers, time_ns) = match algo {
                        "naive" => timed(|| offline_bruteforce(&m, &ops)),
                        _ => {
                            let chunk = k.map(ChunkConfig::new).transpose()?;
                            timed(|| offline_grid_reachability(&m, &ops, chunk))
                        }
                    };
                    let rec = BenchRecord {
                        algo,
                        n,
                        u,
                        k,
                        seed,
                        time_ns,
                        checksum: checksum(&answers?),
                    };
                    w.write_record(rec.fields())?;
                    w.flush()?;
                    records.push(rec);
                }
            }
        }
    }
    w.flush()?;
    Ok(records)
}
