use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use fretrans::hardness::{generate_instance, verify_reduction_report};
use fretrans::io;
use fretrans::offline::{offline_grid_reachability, ChunkConfig};
use fretrans::solver::{compute_translation_distance, decide_translation_with, DecideOptions};
use fretrans::{Curve64, Tolerance};

mod bench;

#[derive(Parser)]
#[command(
    name = "fretrans",
    version,
    about = "Discrete Fréchet distance under translation"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exit 0 and print a translation if some translation achieves distance <= delta, else exit 1.
    Decide {
        #[arg(long)]
        pi: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        /// Walk the whole arrangement instead of the feasible window.
        #[arg(long)]
        no_prune: bool,
        #[arg(long)]
        chunk: Option<usize>,
    },
    /// Print "delta_star tau_x tau_y".
    Compute {
        #[arg(long)]
        pi: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
    },
    /// Print one 0/1 line per update: is (n, n) reachable after it?
    OfflineReach {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        updates: PathBuf,
        #[arg(long)]
        chunk: Option<usize>,
    },
    /// Write the curves of the hard instance for a 4-OV instance and print delta.
    GenHard {
        #[arg(long)]
        ov: PathBuf,
        #[arg(long)]
        out_pi: PathBuf,
        #[arg(long)]
        out_sigma: PathBuf,
    },
    /// Exit 0 iff the solver's decision on the hard instance matches brute-force 4-OV.
    VerifyHard {
        #[arg(long)]
        ov: PathBuf,
    },
    /// Time the chunked offline solver against per-prefix recomputation; CSV output.
    Bench {
        /// Matrix sides.
        #[arg(long, value_delimiter = ',', default_values_t = [17, 33, 65])]
        n: Vec<usize>,
        /// Update counts (default n² per side).
        #[arg(long, value_delimiter = ',')]
        u: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.6)]
        density: f64,
        /// Run chunk sizes 1, √n, n^(2/3) and n.
        #[arg(long)]
        k_sweep: bool,
        #[arg(long)]
        no_naive: bool,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn tolerance() -> Result<Tolerance<f64>> {
    match std::env::var("FRECHET_TOL") {
        Ok(s) => {
            let t: f64 = s
                .trim()
                .parse()
                .with_context(|| format!("FRECHET_TOL={s:?} is not a number"))?;
            if !(t >= 0.0 && t.is_finite()) {
                bail!("FRECHET_TOL must be a finite non-negative number, got {t}");
            }
            Ok(Tolerance::new(t))
        }
        Err(_) => Ok(Tolerance::default()),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn curve(path: &Path) -> Result<Curve64> {
    io::parse_curve(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn chunk(k: Option<usize>) -> Result<Option<ChunkConfig>> {
    Ok(k.map(ChunkConfig::new).transpose()?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Decide {
            pi,
            sigma,
            delta,
            no_prune,
            chunk: k,
        } => {
            let opts = DecideOptions {
                prune: !no_prune,
                chunk: chunk(k)?,
            };
            let d =
                decide_translation_with(&curve(&pi)?, &curve(&sigma)?, delta, tolerance()?, opts)?;
            match d.witness {
                Some(t) if d.feasible => {
                    println!("yes {} {}", t.x, t.y);
                    Ok(ExitCode::SUCCESS)
                }
                _ => {
                    println!("no");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Compute { pi, sigma } => {
            let r = compute_translation_distance(&curve(&pi)?, &curve(&sigma)?, tolerance()?)?;
            println!("{} {} {}", r.value, r.witness.x, r.witness.y);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::OfflineReach {
            matrix,
            updates,
            chunk: k,
        } => {
            let m = io::parse_matrix(&read(&matrix)?)
                .with_context(|| format!("parsing {}", matrix.display()))?;
            let (n, ops) = io::parse_updates(&read(&updates)?)
                .with_context(|| format!("parsing {}", updates.display()))?;
            if n != m.rows() {
                bail!(
                    "update file is for n = {n} but the matrix has side {}",
                    m.rows()
                );
            }
            let answers = offline_grid_reachability(&m, &ops, chunk(k)?)?;
            let out: String = answers
                .iter()
                .map(|&b| if b { "1\n" } else { "0\n" })
                .collect();
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::GenHard {
            ov,
            out_pi,
            out_sigma,
        } => {
            let inst = generate_instance(&io::parse_ov(&read(&ov)?)?)?;
            fs::write(&out_pi, io::format_curve(&inst.pi))
                .with_context(|| format!("writing {}", out_pi.display()))?;
            fs::write(&out_sigma, io::format_curve(&inst.sigma))
                .with_context(|| format!("writing {}", out_sigma.display()))?;
            println!("{}", inst.delta);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::VerifyHard { ov } => {
            let r = verify_reduction_report(&io::parse_ov(&read(&ov)?)?)?;
            println!(
                "orthogonal={} decided={} witness={} |pi|={} |sigma|={}",
                r.expected,
                r.decided,
                r.witness_holds.map_or("-".to_string(), |b| b.to_string()),
                r.pi_len,
                r.sigma_len
            );
            Ok(if r.verified() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Bench {
            n,
            u,
            seeds,
            seed,
            density,
            k_sweep,
            no_naive,
            budget,
            out,
        } => {
            if n.contains(&0) || u.as_ref().is_some_and(|u| u.contains(&0)) {
                bail!("sizes must be positive");
            }
            if !(0.0..=1.0).contains(&density) {
                bail!("density must lie in [0, 1], got {density}");
            }
            let budget = match budget {
                Some(b) if !(b > 0.0 && b.is_finite()) => bail!("budget must be positive, got {b}"),
                b => b.map(Duration::from_secs_f64),
            };
            let cfg = bench::BenchConfig {
                ns: n,
                us: u,
                seeds,
                seed,
                density,
                k_sweep,
                naive: !no_naive,
                budget,
            };
            match out {
                Some(p) => {
                    let f = fs::File::create(&p)
                        .with_context(|| format!("creating {}", p.display()))?;
                    bench::run(&cfg, f)?;
                }
                None => {
                    bench::run(&cfg, std::io::stdout().lock())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
