use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use polydisc::io::{certificate_json, load_config, load_obj, save_obj, write_trace_csv, RunSummary};
use polydisc::optimize::{flip_pass, minimize, OptimizerConfig};
use polydisc::saddle::certify_saddle;
use polydisc::scenario::{make_tent, random_instance, TentParams};
use polydisc::QuadSpec;

const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "polydisc", version, about = "Minimize and certify triangulated polyhedral discs")]
#[command(after_help = "Exit codes: optimize 0 converged / 2 not converged; certify 0 saddle / 1 not saddle; 3 on any error.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize area with the boundary fixed.
    #[command(after_help = "Trace CSV columns, in order: iter, area, flips, reductions, moves, triangles.\n\
        Row 0 is the state after the initial jitter. A JSON run summary is printed to stdout.")]
    Optimize {
        #[arg(long = "in")]
        input: PathBuf,
        /// JSON optimizer config; every field is optional.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Overrides the seed from the config.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decide for every interior vertex whether a plane cuts it off.
    Certify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-7)]
        eps: f64,
        /// Certificate JSON; printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one flip pass and report the flip count and area change.
    FlipPass {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        eps_flip: f64,
    },
    /// Sample the area of a four-sided hinge against its angle sum.
    #[command(after_help = "CSV columns, in order: alpha, d, area. Samples are evenly spaced over the \
        full range of alpha, both ends included.")]
    QuadCurve {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// Printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the tent: a 12-triangle fan against a 10-triangle disc on the same boundary.
    #[command(after_help = "Writes fan.obj, fan_optimum.obj, chord.obj, chord_optimum.obj and report.json.")]
    Tent {
        /// Initial apex height.
        #[arg(long, default_value_t = 0.75)]
        height: f64,
        #[arg(long, default_value_t = 0.5)]
        ridge_height: f64,
        #[arg(long, default_value_t = 0.7)]
        inner_radius: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Write a seeded random nonplanar m-gon filled by a centroid fan.
    Random {
        #[arg(long, default_value_t = 12)]
        m: usize,
        #[arg(long, default_value_t = 0.5)]
        nonplanarity: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<polydisc::PolyhedralDisc> {
    load_obj(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Optimize {
            input,
            config,
            out,
            trace,
            seed,
        } => {
            let disc = load(&input)?;
            let mut cfg = match config {
                Some(p) => load_config(&p).with_context(|| format!("reading {}", p.display()))?,
                None => OptimizerConfig::default(),
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let (result, tr) = minimize(&disc, &cfg)?;
            save_obj(&result, &out).with_context(|| format!("writing {}", out.display()))?;
            if let Some(p) = trace {
                let file = fs::File::create(&p).with_context(|| format!("writing {}", p.display()))?;
                write_trace_csv(&tr, file)?;
            }
            println!("{}", RunSummary::new(&tr).to_json());
            Ok(if tr.converged { 0 } else { 2 })
        }
        Command::Certify { input, eps, out } => {
            let disc = load(&input)?;
            let cert = certify_saddle(&disc, eps);
            write_or_print(out.as_deref(), &(certificate_json(&cert) + "\n"))?;
            Ok(if cert.saddle { 0 } else { 1 })
        }
        Command::FlipPass { input, out, eps_flip } => {
            let disc = load(&input)?;
            let diam = disc.diameter();
            let pass = flip_pass(&disc, eps_flip, 1e-12 * diam * diam);
            save_obj(&pass.disc, &out).with_context(|| format!("writing {}", out.display()))?;
            println!("flips: {}", pass.flips.len());
            println!("area delta: {:e}", pass.disc.total_area() - disc.total_area());
            if pass.cap_hit {
                println!("flip cap reached");
            }
            Ok(0)
        }
        Command::QuadCurve {
            p,
            q,
            r,
            s,
            samples,
            out,
        } => {
            anyhow::ensure!(samples >= 2, "need at least 2 samples");
            let spec = QuadSpec::new(p, q, r, s)?;
            let (lo, hi) = spec.alpha_range();
            let mut csv = String::from("alpha,d,area\n");
            for i in 0..samples {
                let alpha = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
                let st = spec.diagonal_from_alpha(alpha)?;
                csv.push_str(&format!("{alpha},{},{}\n", st.diagonal, st.area()));
            }
            write_or_print(out.as_deref(), &csv)?;
            Ok(0)
        }
        Command::Tent {
            height,
            ridge_height,
            inner_radius,
            seed,
            out_dir,
        } => {
            let params = TentParams {
                apex_height: height,
                ridge_height,
                inner_radius,
                seed,
            };
            let tent = make_tent(&params)?;
            fs::create_dir_all(&out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
            for (name, disc) in [
                ("fan.obj", &tent.fan_disc),
                ("fan_optimum.obj", &tent.fan_fixed_optimum),
                ("chord.obj", &tent.chord_disc),
                ("chord_optimum.obj", &tent.chord_optimum),
            ] {
                save_obj(disc, out_dir.join(name))?;
            }
            let report = serde_json::json!({
                "fan_triangles": tent.fan_disc.complex().triangle_count(),
                "chord_triangles": tent.chord_disc.complex().triangle_count(),
                "fan_optimum_area": tent.fan_fixed_optimum.total_area(),
                "chord_optimum_area": tent.chord_optimum.total_area(),
                "area_gap": tent.area_gap(),
                "apex": tent.apex_verdict,
            });
            let text = serde_json::to_string_pretty(&report)?;
            fs::write(out_dir.join("report.json"), &text)?;
            println!("{text}");
            Ok(0)
        }
        Command::Random {
            m,
            nonplanarity,
            seed,
            out,
        } => {
            let disc = random_instance(m, nonplanarity, seed)?;
            save_obj(&disc, &out).with_context(|| format!("writing {}", out.display()))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // clap would exit with 2 on usage errors, which means "not converged" here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => {
            let _ = std::io::stdout().flush();
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
