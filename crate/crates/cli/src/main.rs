use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use subconst::analysis::{
    analyze, run_invariant_suite, Analysis, AnalysisOptions, AnalysisReport, GraphSource,
};
use subconst::graph::graph6::encode_graph6;
use subconst::graph::DEFAULT_SIZE_CAP;
use subconst::{Error, Graph};

const SIZE_CAP_VAR: &str = "SUBCONST_SIZE_CAP";

#[derive(Parser)]
#[command(name = "subconst", version, about = "Subconstituent and quantum adjacency algebras of rooted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as one graph6 line.
    Gen {
        /// `hamming D N` or `dualpolar D q`.
        #[arg(num_args = 3, value_names = ["FAMILY", "P1", "P2"], required = true)]
        spec: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the full analysis and emit a JSON report.
    Analyze {
        /// `hamming D N`, `dualpolar D q` or `file:PATH`.
        #[arg(num_args = 1..=3, required = true)]
        source: Vec<String>,
        #[arg(long, default_value_t = 0)]
        base: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Add the grading of the closure of {L, F, R} without I.
        #[arg(long)]
        no_unital_q: bool,
        /// Analyze every vertex as base and emit an array of reports.
        #[arg(long, conflicts_with = "base")]
        all_bases: bool,
    },
    /// Run the invariant suite; exit 1 if anything fails.
    Verify {
        #[arg(num_args = 1..=3, required = true)]
        source: Vec<String>,
        #[arg(long, default_value_t = 0)]
        base: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

enum Failure {
    Engine(Error),
    Io(String),
    Invariants(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Invariants(_) => 1,
            Failure::Engine(e) if e.is_input_error() => 2,
            Failure::Io(_) => 2,
            Failure::Engine(_) => 3,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let (kind, message, extra) = match self {
            Failure::Engine(e) => (e.kind(), e.to_string(), json!(null)),
            Failure::Io(m) => ("io", m.clone(), json!(null)),
            Failure::Invariants(ids) => ("invariant_failure", format!("{} invariant(s) failed", ids.len()), json!(ids)),
        };
        let mut obj = json!({
            "error": { "kind": kind, "message": message, "exit_code": self.exit_code() }
        });
        if !extra.is_null() {
            obj["error"]["failed"] = extra;
        }
        obj
    }
}

fn size_cap() -> Result<usize, Failure> {
    match std::env::var(SIZE_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Engine(Error::Argument(format!("{SIZE_CAP_VAR} must be a positive integer, got {v:?}")))
        }),
        Err(_) => Ok(DEFAULT_SIZE_CAP),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load(tokens: &[String]) -> Result<(GraphSource, Graph), Failure> {
    let source = GraphSource::parse(tokens)?;
    let graph = source.load(size_cap()?)?;
    Ok((source, graph))
}

fn run_analysis(graph: &Graph, source: &GraphSource, base: usize, options: &AnalysisOptions) -> Result<Analysis, Failure> {
    Ok(analyze(graph, source, base, options)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { spec, output } => {
            if spec[0] == "file" || spec[0].starts_with("file:") {
                return Err(Error::Argument("gen takes `hamming D N` or `dualpolar D q`".into()).into());
            }
            let (_, graph) = load(&spec)?;
            emit(&encode_graph6(&graph), output.as_deref())
        }
        Command::Analyze { source, base, seed, output, no_unital_q, all_bases } => {
            let (source, graph) = load(&source)?;
            let options = AnalysisOptions {
                seed,
                non_unital_details: no_unital_q,
                ..AnalysisOptions::default()
            };
            let text = if all_bases {
                let mut reports = Vec::with_capacity(graph.vertex_count());
                for x in 0..graph.vertex_count() {
                    let an = run_analysis(&graph, &source, x, &options)?;
                    reports.push(AnalysisReport::from_analysis(&an)?.to_json_value());
                }
                serde_json::to_string_pretty(&reports).expect("reports serialize")
            } else {
                let an = run_analysis(&graph, &source, base, &options)?;
                AnalysisReport::from_analysis(&an)?.to_json_string()
            };
            emit(&text, output.as_deref())
        }
        Command::Verify { source, base, seed } => {
            let (source, graph) = load(&source)?;
            let options = AnalysisOptions { seed, ..AnalysisOptions::default() };
            let an = run_analysis(&graph, &source, base, &options)?;
            let mut failed = Vec::new();
            for check in run_invariant_suite(&an) {
                let status = if check.passed { "pass" } else { "fail" };
                if check.detail.is_empty() || check.passed {
                    println!("{}: {status}", check.id);
                } else {
                    println!("{}: {status} ({})", check.id, check.detail);
                }
                if !check.passed {
                    failed.push(check.id);
                }
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Invariants(failed))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(f.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_class() {
        assert_eq!(Failure::Invariants(vec!["x".into()]).exit_code(), 1);
        assert_eq!(Failure::Engine(Error::Validation("v".into())).exit_code(), 2);
        assert_eq!(Failure::Engine(Error::Consistency("c".into())).exit_code(), 3);
        let e = Failure::Engine(Error::NotThin("n".into())).to_json();
        assert_eq!(e["error"]["exit_code"], 3);
        assert_eq!(e["error"]["kind"], "not_thin");
        let f = Failure::Invariants(vec!["a".into(), "b".into()]).to_json();
        assert_eq!(f["error"]["failed"], json!(["a", "b"]));
    }
}
