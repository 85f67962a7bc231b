use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tokslide::generator::{family, random_girth5, random_instance, Family};
use tokslide::graph::girth;
use tokslide::instance::{parse_instance, serialize_instance};
use tokslide::kernel::{compute_partition, kernelize, l3_component_info, ComponentKind};
use tokslide::oracle::{oracle_distance, DEFAULT_STATE_CAP};
use tokslide::solver::{
    format_witness, parse_witness, solve_direct, verify_sequence, DEFAULT_BUDGET,
};
use tokslide::{Decision, Instance};

/// Token Sliding on graphs of girth at least five.
#[derive(Parser)]
#[command(name = "tokslide", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance. Exit 0 on YES, 1 on NO, 2 on error or budget.
    Solve {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Maximum number of visited states.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Print the slide sequence (direct search only).
        #[arg(long)]
        witness: bool,
        /// Write the kernelization log here (kernel method only).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Reduce an instance and report sizes before and after.
    Kernelize {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Check a witness. Exit 0 if valid, 1 if not, 2 if malformed.
    Verify { instance: PathBuf, witness: PathBuf },
}

#[derive(Subcommand)]
enum Gen {
    /// One of star_trap, long_path_component, degree_safe_spider,
    /// twin_cluster, equivalent_pendants.
    Family {
        name: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        scale: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random girth-5 graph with random token placements.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// `kernel` when the girth is at least 5 and k >= 4, else `direct`.
    Auto,
    Direct,
    Kernel,
    Oracle,
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn yes_no(yes: bool) -> ExitCode {
    println!("{}", if yes { "YES" } else { "NO" });
    ExitCode::from(if yes { 0 } else { 1 })
}

fn solve(
    path: &Path,
    method: Method,
    budget: usize,
    witness: bool,
    trace: Option<&Path>,
) -> Result<ExitCode> {
    let instance = read_instance(path)?;
    let method = match method {
        Method::Auto if instance.k >= 4 && girth(&instance.graph).at_least(5) => Method::Kernel,
        Method::Auto => Method::Direct,
        m => m,
    };
    let decision = match method {
        Method::Oracle => {
            let dist = oracle_distance(&instance, DEFAULT_STATE_CAP)?;
            return Ok(yes_no(dist.is_some()));
        }
        Method::Kernel => {
            let (kernel, log) = kernelize(&instance)?;
            if let Some(p) = trace {
                fs::write(p, log.to_text()).with_context(|| format!("writing {}", p.display()))?;
            }
            match solve_direct(&kernel, budget) {
                Decision::Yes(_) => Decision::Yes(None),
                other => other,
            }
        }
        _ => solve_direct(&instance, budget),
    };
    match decision {
        Decision::Yes(Some(seq)) if witness => {
            print!("{}", format_witness(&seq));
            Ok(ExitCode::SUCCESS)
        }
        Decision::Yes(_) => Ok(yes_no(true)),
        Decision::No => Ok(yes_no(false)),
        Decision::BudgetExceeded => bail!("state budget of {budget} exceeded"),
    }
}

fn summary(instance: &Instance) -> String {
    let part = compute_partition(instance);
    let info = l3_component_info(instance);
    let count = |kind: ComponentKind| info.iter().filter(|c| !c.gadget && c.kind == kind).count();
    format!(
        "n={} m={} l1+l2={} diameter-safe={} degree-safe={} bounded={} bad={} gadgets={}",
        instance.graph.vertex_count(),
        instance.graph.edge_count(),
        part.l1.len() + part.l2.len(),
        count(ComponentKind::DiameterSafe),
        count(ComponentKind::DegreeSafe),
        count(ComponentKind::Bounded),
        count(ComponentKind::Bad),
        info.iter().filter(|c| c.gadget).count(),
    )
}

fn cmd_kernelize(path: &Path, out: &Path, trace: Option<&Path>) -> Result<ExitCode> {
    let instance = read_instance(path)?;
    let (kernel, log) = kernelize(&instance)?;
    fs::write(out, serialize_instance(&kernel))
        .with_context(|| format!("writing {}", out.display()))?;
    if let Some(p) = trace {
        fs::write(p, log.to_text()).with_context(|| format!("writing {}", p.display()))?;
    }
    println!("before: {}", summary(&instance));
    println!("after:  {}", summary(&kernel));
    println!("steps:  {}", log.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(what: Gen) -> Result<ExitCode> {
    let (instance, out) = match what {
        Gen::Family {
            name,
            k,
            scale,
            out,
        } => (family(name.parse::<Family>()?, k, scale)?, out),
        Gen::Random { n, m, k, seed, out } => {
            if n == 0 {
                bail!("--n must be at least 1");
            }
            (random_instance(&random_girth5(n, m, seed), k, seed)?, out)
        }
    };
    write_out(out.as_deref(), &serialize_instance(&instance))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(instance: &Path, witness: &Path) -> Result<ExitCode> {
    let instance = read_instance(instance)?;
    let text =
        fs::read_to_string(witness).with_context(|| format!("reading {}", witness.display()))?;
    let seq = parse_witness(&text, instance.graph.vertex_count())
        .with_context(|| format!("parsing {}", witness.display()))?;
    if verify_sequence(&instance, &seq) {
        println!("valid");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("invalid");
        Ok(ExitCode::from(1))
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve {
            path,
            method,
            budget,
            witness,
            trace,
        } => solve(&path, method, budget, witness, trace.as_deref()),
        Command::Kernelize { path, out, trace } => cmd_kernelize(&path, &out, trace.as_deref()),
        Command::Gen { what } => cmd_gen(what),
        Command::Verify { instance, witness } => cmd_verify(&instance, &witness),
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
