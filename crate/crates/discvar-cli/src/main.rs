//! Command-line front end: derivations, orbit systems, the verification
//! battery, orbit sampling and the singular-point witness.
//!
//! Exit codes: 0 success, 1 computational failure or failed checks,
//! 2 argument validation.

mod battery;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use discvar::field::Rat;
use discvar::groebner::cache::BasisCache;
use discvar::groebner::Limits;
use discvar::variety::{self, render_system};
use discvar::RatFunc;

#[derive(Parser)]
#[command(name = "discvar", version, about = "Minimal-degree equations and geometry of the variety of symmetric matrices with a multiple eigenvalue")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Emit machine-readable JSON instead of listing-style text
    #[arg(long, global = true)]
    json: bool,

    /// Cache directory for expensive bases (default: DISCVAR_CACHE_DIR)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Recompute everything, ignoring any cache
    #[arg(long, global = true)]
    no_cache: bool,

    /// Abort basis computations after this many S-pairs
    /// (default: unlimited for n = 3, 25000 for larger sizes)
    #[arg(long, global = true)]
    max_pairs: Option<usize>,

    /// Abort basis computations when coefficients exceed this bit size
    #[arg(long, global = true)]
    max_coeff_bits: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Derive the minimal-degree equation system for the surface
    Derive {
        /// Matrix size (n >= 3; n = 4 is expensive and runs under limits)
        #[arg(long)]
        n: usize,
        /// Keep the full relations basis; skip the redundancy removal
        #[arg(long)]
        no_simplify: bool,
    },
    /// Minimal equations for the orbit of a given eigenvalue multiset
    OrbitEqs {
        /// Comma-separated eigenvalues, e.g. 1,1,-2 (a repeat required)
        #[arg(long, value_delimiter = ',')]
        eigs: Vec<String>,
    },
    /// The 1-orbit system of diag(1,1,-2) by the axis e1 + k e2
    OneOrbit {
        /// Specialize the parameter to a rational value, e.g. 3/4
        #[arg(long, conflicts_with_all = ["k_infinity", "symbolic"])]
        k: Option<String>,
        /// Take the limit of the system as k grows without bound
        #[arg(long, conflicts_with = "symbolic")]
        k_infinity: bool,
        /// Keep k symbolic (the default)
        #[arg(long)]
        symbolic: bool,
    },
    /// Run the full verification battery; nonzero exit on any failure
    Verify {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Sample count for the numeric vanishing and diameter checks
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Relative tolerance for numerical ranks
        #[arg(long, default_value_t = 1e-8)]
        rank_tol: f64,
        /// Also run the exploratory discriminant-divisibility probe
        #[arg(long)]
        deep: bool,
    },
    /// Sample orbit points and write residuals of the derived equations
    Sample {
        #[arg(long, value_delimiter = ',')]
        eigs: Vec<String>,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// The singular-point witness: four independent directions at zero
    Singularity,
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("bad rational component `{num}`"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("bad rational component `{den}`"))?;
    if d == BigInt::from(0) {
        return Err("zero denominator".to_string());
    }
    Ok(Rat::new(n, d))
}

fn parse_eigs(raw: &[String]) -> Result<Vec<Rat>, String> {
    if raw.len() < 3 {
        return Err("need at least three eigenvalues".to_string());
    }
    raw.iter().map(|s| parse_rat(s)).collect()
}

struct Config {
    json: bool,
    cache: BasisCache,
    limits_for: Box<dyn Fn(usize) -> Limits>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = if cli.no_cache {
        BasisCache::disabled()
    } else {
        BasisCache::from_env(cli.cache_dir.clone())
    };
    let (mp, mb) = (cli.max_pairs, cli.max_coeff_bits);
    let config = Config {
        json: cli.json,
        cache,
        limits_for: Box::new(move |n| Limits {
            max_pairs: mp.or(if n >= 4 { Some(25_000) } else { None }),
            max_coeff_bits: mb,
            max_millis: None,
        }),
    };

    match run(cli.cmd, &config) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Cmd, config: &Config) -> anyhow::Result<ExitCode> {
    match cmd {
        Cmd::Derive { n, no_simplify } => cmd_derive(n, no_simplify, config),
        Cmd::OrbitEqs { eigs } => cmd_orbit_eqs(&eigs, config),
        Cmd::OneOrbit {
            k,
            k_infinity,
            symbolic: _,
        } => cmd_one_orbit(k.as_deref(), k_infinity, config),
        Cmd::Verify {
            n,
            seed,
            samples,
            rank_tol,
            deep,
        } => cmd_verify(n, seed, samples, rank_tol, deep, config),
        Cmd::Sample {
            eigs,
            count,
            seed,
            out,
        } => cmd_sample(&eigs, count, seed, &out, config),
        Cmd::Singularity => cmd_singularity(config),
    }
}

fn validation_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn cmd_derive(n: usize, no_simplify: bool, config: &Config) -> anyhow::Result<ExitCode> {
    if n < 3 {
        return Ok(validation_error("derive needs --n 3 or larger"));
    }
    let limits = (config.limits_for)(n);
    match variety::derive(n, &limits, &config.cache, !no_simplify) {
        Ok(report) => {
            if config.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json())?);
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Err(variety::VarietyError::Groebner(e)) => {
            eprintln!("aborted: {e}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_orbit_eqs(raw: &[String], config: &Config) -> anyhow::Result<ExitCode> {
    let eigs = match parse_eigs(raw) {
        Ok(e) => e,
        Err(m) => return Ok(validation_error(&m)),
    };
    let limits = (config.limits_for)(eigs.len());
    match variety::orbit_minimal_eqs(&eigs, &limits, &config.cache) {
        Ok(orbit) => {
            if config.json {
                let doc = json!({
                    "schema": 1,
                    "eigenvalues": orbit.eigenvalues.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    "ambient_dim": orbit.ambient_dim,
                    "equations": discvar::groebner::cache::system_to_json(&orbit.equations),
                });
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                print!("{}", render_system("orbitEqs", &orbit.equations));
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(variety::VarietyError::NoRepeatedEigenvalue) => Ok(validation_error(
            "the eigenvalue multiset must contain a repeated value",
        )),
        Err(variety::VarietyError::Groebner(e)) => {
            eprintln!("aborted: {e}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_one_orbit(k: Option<&str>, k_infinity: bool, config: &Config) -> anyhow::Result<ExitCode> {
    let symbolic = variety::one_orbit_eqs();
    if let Some(ks) = k {
        let kv = match parse_rat(ks) {
            Ok(v) => v,
            Err(m) => return Ok(validation_error(&m)),
        };
        let sys = variety::one_orbit_at_k(&symbolic, &kv)?;
        if config.json {
            let doc = json!({
                "schema": 1,
                "k": kv.to_string(),
                "equations": discvar::groebner::cache::system_to_json(&sys),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        } else {
            print!("{}", render_system(&format!("1-orbitEqs(k={kv})"), &sys));
        }
    } else if k_infinity {
        let sys = variety::one_orbit_limit_infinity(&symbolic);
        if config.json {
            let doc = json!({
                "schema": 1,
                "k": "infinity",
                "equations": discvar::groebner::cache::system_to_json(&sys),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        } else {
            print!("{}", render_system("1-orbitEqs(k->infinity)", &sys));
        }
    } else if config.json {
        let gens: Vec<_> = symbolic
            .gens()
            .iter()
            .map(discvar::poly::json::ratfunc_poly_to_json)
            .collect();
        let doc = json!({
            "schema": 1,
            "k": "symbolic",
            "vars": symbolic.ctx().names(),
            "equations": gens,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        print!("{}", render_system::<RatFunc>("1-orbitEqs", &symbolic));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    n: usize,
    seed: u64,
    samples: usize,
    rank_tol: f64,
    deep: bool,
    config: &Config,
) -> anyhow::Result<ExitCode> {
    if n < 3 {
        return Ok(validation_error("verify needs --n 3 or larger"));
    }
    let limits = (config.limits_for)(n);
    let report = battery::run_battery(n, seed, samples, rank_tol, deep, &limits, &config.cache)?;
    if config.json {
        println!("{}", serde_json::to_string_pretty(&report.to_json())?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_sample(
    raw: &[String],
    count: usize,
    seed: u64,
    out: &PathBuf,
    config: &Config,
) -> anyhow::Result<ExitCode> {
    let eigs = match parse_eigs(raw) {
        Ok(e) => e,
        Err(m) => return Ok(validation_error(&m)),
    };
    let limits = (config.limits_for)(eigs.len());
    let orbit = match variety::orbit_minimal_eqs(&eigs, &limits, &config.cache) {
        Ok(o) => o,
        Err(variety::VarietyError::NoRepeatedEigenvalue) => {
            return Ok(validation_error(
                "the eigenvalue multiset must contain a repeated value",
            ))
        }
        Err(variety::VarietyError::Groebner(e)) => {
            eprintln!("aborted: {e}");
            return Ok(ExitCode::from(1));
        }
        Err(e) => return Err(e.into()),
    };
    let eigs_f: Vec<f64> = eigs.iter().map(discvar::field::rat_to_f64).collect();
    let points = discvar::numgeo::orbit_points(&eigs_f, count, seed);
    let docs: Vec<_> = points
        .iter()
        .map(|p| {
            let residuals: Vec<f64> = orbit
                .equations
                .gens()
                .iter()
                .map(|g| discvar::numgeo::eval_poly_at(g, p))
                .collect();
            json!({ "x": p.upper_vec(), "residuals": residuals })
        })
        .collect();
    let doc = json!({
        "schema": 1,
        "eigenvalues": eigs.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "count": points.len(),
        "seed": seed,
        "equations": discvar::groebner::cache::system_to_json(&orbit.equations),
        "points": docs,
    });
    std::fs::write(out, serde_json::to_string_pretty(&doc)?)?;
    println!(
        "wrote {} points with per-equation residuals to {}",
        points.len(),
        out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_singularity(config: &Config) -> anyhow::Result<ExitCode> {
    let report = battery::singularity_report();
    if config.json {
        println!("{}", serde_json::to_string_pretty(&report.to_json())?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
