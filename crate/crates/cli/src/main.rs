use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rig_core::experiments::{self, ExperimentConfig, ExperimentKind, MRule};
use rig_core::ham::{run_ham_with, HamConfig, HamStatus, HamSummary, SearchMode, DEFAULT_MAX_QUEUE};
use rig_core::model::io::GraphFile;
use rig_core::model::{derived_params, intersection_of, sample_bipartite};
use rig_core::properties::{self, PropertyId, PropertyReport, SubsetMode, Variant, B1, DEFAULT_SAMPLES};
use rig_core::thresholds::{solve_p, DEFAULT_EPS_REGIME};

#[derive(Parser)]
#[command(name = "rig", version, about = "Random intersection graphs and the HAM Hamilton-cycle search")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample G(n, m, p) and write its incidence file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run HAM; exit 0 on a cycle, 2 on failure, 3 on overflow.
    Ham {
        #[arg(long = "in")]
        input: PathBuf,
        /// Degree parameter for the rotation budget; derived from n, m, p by default.
        #[arg(long)]
        d: Option<f64>,
        #[arg(long, default_value = "faithful")]
        mode: SearchMode,
        #[arg(long, default_value_t = DEFAULT_MAX_QUEUE)]
        max_queue: usize,
    },
    /// Check structural properties, one JSON report per line.
    Props {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "plain")]
        variant: Variant,
        /// Comma-separated subset of P0,P1,P2,P3,P4,P5,P0*,P1*,P3*,VR.
        #[arg(long, default_value = "P0,P1,P2,P3,P4,P5")]
        checks: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solve the threshold equation for p.
    SolveP {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, default_value_t = DEFAULT_EPS_REGIME)]
        eps: f64,
    },
    /// Run a seeded Monte Carlo experiment; writes records.csv and summary.json.
    Exp {
        #[arg(long)]
        kind: ExperimentKind,
        /// One size or a comma-separated sweep.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value = "n")]
        m_rule: MRule,
        /// One offset or a comma-separated sweep.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        c: Vec<f64>,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Fixed p instead of the solved threshold value.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value = "faithful")]
        mode: SearchMode,
        #[arg(long, default_value_t = DEFAULT_MAX_QUEUE)]
        max_queue: usize,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_EPS_REGIME)]
        eps: f64,
    },
}

fn read_graph(path: &Path) -> Result<GraphFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    GraphFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn parse_check(s: &str) -> Result<PropertyId> {
    Ok(match s.trim().to_ascii_uppercase().as_str() {
        "P0" => PropertyId::P0,
        "P1" => PropertyId::P1,
        "P2" => PropertyId::P2,
        "P3" => PropertyId::P3,
        "P4" => PropertyId::P4,
        "P5" => PropertyId::P5,
        "P0*" => PropertyId::P0Star,
        "P1*" => PropertyId::P1Star,
        "P3*" => PropertyId::P3Star,
        "VR" => PropertyId::Vr,
        other => bail!("unknown check `{other}`"),
    })
}

fn cmd_gen(n: usize, m: usize, p: f64, seed: u64, out: Option<PathBuf>) -> Result<ExitCode> {
    let incidence = sample_bipartite(n, m, p, seed)?;
    let text = GraphFile { incidence, p, seed }.to_text();
    match out {
        Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_ham(input: &Path, d: Option<f64>, mode: SearchMode, max_queue: usize) -> Result<ExitCode> {
    let file = read_graph(input)?;
    let b = &file.incidence;
    let cfg = match d {
        Some(d) => HamConfig::from_d(b.n(), d)?,
        None => HamConfig::with_budget(
            derived_params(b.n(), b.m(), file.p).context("cannot derive d from the file's p; pass --d")?.budget(),
        ),
    }
    .mode(mode)
    .max_queue(max_queue);
    let g = intersection_of(b);
    let outcome = run_ham_with(&g, &cfg)?;
    let summary = HamSummary::new(&g, &outcome);
    print_json(&summary)?;
    Ok(match summary.result {
        HamStatus::Cycle => ExitCode::SUCCESS,
        HamStatus::Failure => ExitCode::from(2),
        HamStatus::Overflow => ExitCode::from(3),
    })
}

fn cmd_props(input: &Path, variant: Variant, checks: &str, samples: u64, seed: u64) -> Result<ExitCode> {
    let file = read_graph(input)?;
    let b = &file.incidence;
    let params = derived_params(b.n(), b.m(), file.p).context("property checks need p in (0, 1)")?;
    let g = intersection_of(b);
    let mode = SubsetMode::Auto { trials: samples, seed };
    let chosen = properties::partition(&g, &params, variant);
    let plain = properties::partition(&g, &params, Variant::Plain);
    let starred = properties::partition(&g, &params, Variant::Starred);
    for check in checks.split(',').filter(|s| !s.trim().is_empty()) {
        let report: PropertyReport = match parse_check(check)? {
            PropertyId::P0 => properties::check_p0(&g, 2),
            PropertyId::P0Star => properties::check_p0_star(&g, &params),
            PropertyId::P1 => properties::check_p1(&chosen, &params),
            PropertyId::P1Star => properties::check_p1(&starred, &params),
            PropertyId::P2 => properties::check_p2(&g, &plain),
            PropertyId::P3 => properties::check_p3(&g, &chosen, &params, B1, mode)?,
            PropertyId::P3Star => properties::check_p3(&g, &starred, &params, B1, mode)?,
            PropertyId::P4 => properties::check_p4(&g, &params),
            PropertyId::P5 => properties::check_p5(&g, &params)?,
            PropertyId::Vr => properties::check_vr(b, &params, mode)?,
        };
        print_json(&report)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_exp(config: ExperimentConfig, out: &Path) -> Result<ExitCode> {
    let records = experiments::run_trials(&config)?;
    let summary = experiments::summarize(&config, &records)?;
    experiments::write_outputs(out, &records, &summary)?;
    eprintln!("wrote {} records to {}", records.len(), out.display());
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Gen { n, m, p, seed, out } => cmd_gen(n, m, p, seed, out),
        Cmd::Ham { input, d, mode, max_queue } => cmd_ham(&input, d, mode, max_queue),
        Cmd::Props { input, variant, checks, samples, seed } => cmd_props(&input, variant, &checks, samples, seed),
        Cmd::SolveP { n, m, c, eps } => {
            print_json(&solve_p(n, m, c, eps)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Exp { kind, n, m_rule, c, trials, seed, out, lambda, p, mode, max_queue, samples, eps } => {
            let mut config = ExperimentConfig::new(kind, n[0], m_rule, c[0], trials, seed);
            config.ns = n;
            config.cs = c;
            config.lambda = lambda;
            config.p_override = p;
            config.ham_mode = mode;
            config.max_queue = max_queue;
            config.property_samples = samples;
            config.eps_regime = eps;
            cmd_exp(config, &out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
