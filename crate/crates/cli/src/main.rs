use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use xpq_core::cache::load_or_build;
use xpq_core::compgroup::{blow_up, component_group, quotient_by_wq};
use xpq_core::criterion::{check_ogg, run_criterion, CriterionOptions};
use xpq_core::graph::genus;
use xpq_core::Error;

/// Certificates for the absence of non-special rational points on X^pq/w_q.
#[derive(Parser)]
#[command(name = "criterion", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    /// Prime of bad reduction at which the special fibre is taken.
    #[arg(long)]
    p: u64,
    /// Prime ramified in the definite algebra, q != p.
    #[arg(long)]
    q: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run the criterion and print its JSON certificate.
    Check {
        #[command(flatten)]
        pair: Pair,
        /// Auxiliary prime; by default primes 3 mod 4 are tried in turn.
        #[arg(long)]
        l: Option<u64>,
        /// Largest depth of the Gross family (default: genus + 2).
        #[arg(long)]
        max_n: Option<usize>,
        /// Directory for cached graphs.
        #[arg(long, env = "CRITERION_CACHE_DIR")]
        cache: Option<PathBuf>,
        /// Also write the certificate to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Run even when the congruence hypotheses fail.
        #[arg(long)]
        override_hypotheses: bool,
    },
    /// Print graph statistics, optionally exporting the blown-up quotient.
    Graph {
        #[command(flatten)]
        pair: Pair,
        /// Graphviz output file.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, env = "CRITERION_CACHE_DIR")]
        cache: Option<PathBuf>,
    },
    /// Report Ogg's case and the genus of X_0(q).
    Ogg {
        #[command(flatten)]
        pair: Pair,
    },
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Check { pair, l, max_n, cache, json, override_hypotheses } => {
            check_ogg(pair.p, pair.q)?;
            let (vs, es, warning) = load_or_build(cache.as_deref(), pair.q, pair.p)?;
            if let Some(w) = warning {
                eprintln!("warning: {w}");
            }
            let opts = CriterionOptions { l, max_n, override_hypotheses, max_attempts: None };
            let cert = run_criterion(&vs, &es, &opts)?;
            let mut text = serde_json::to_string_pretty(&cert).map_err(|e| Error::Internal(e.to_string()))?;
            text.push('\n');
            if let Some(path) = json {
                fs::write(path, &text)?;
            }
            print!("{text}");
            Ok(cert.verdict.exit_code() as u8)
        }
        Command::Graph { pair, dot, cache } => {
            check_ogg(pair.p, pair.q)?;
            let (vs, es, warning) = load_or_build(cache.as_deref(), pair.q, pair.p)?;
            if let Some(w) = warning {
                eprintln!("warning: {w}");
            }
            let quotient = quotient_by_wq(&vs, &es);
            let blown = blow_up(&quotient);
            println!("vertices: {} ({} rational)", vs.len(), vs.rational_count());
            println!("edges: {} (mass {})", es.len(), es.mass());
            for len in [2, 3] {
                let count = (0..es.len()).filter(|&e| es.length(e) == len).count();
                println!("length-{len} edges: {count}");
            }
            println!("quotient: {} vertices, {} edges", quotient.node_count(), quotient.edge_count());
            println!("blow-up: {} vertices, {} edges", blown.node_count(), blown.edge_count());
            if blown.is_connected() {
                let group = component_group(&quotient)?;
                let factors: Vec<String> = group.factors.iter().map(|d| format!("Z/{d}")).collect();
                let shown = if factors.is_empty() { "0".to_string() } else { factors.join(" x ") };
                println!("component group: {shown}");
            }
            if let Some(path) = dot {
                fs::write(path, blown.to_dot())?;
            }
            Ok(0)
        }
        Command::Ogg { pair } => {
            let case = check_ogg(pair.p, pair.q)?;
            let name = serde_json::to_value(case).map_err(|e| Error::Internal(e.to_string()))?;
            println!("ogg case: {}", name.as_str().unwrap_or_default());
            println!("genus of X_0({}): {}", pair.q, genus(pair.q));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
