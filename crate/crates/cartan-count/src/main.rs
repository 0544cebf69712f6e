//! Command-line front end for the classification pipelines.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cartan_count::classify::{
    classify_spectra, count_cartan_classes_opts, multigraph_json, verify_formulas,
};
use cartan_count::graphs::{bipartite_to_dot, graph_from_matrix, multigraph_to_dot};
use cartan_count::permutations::{double_coset_classes, Params};
use cartan_count::{Error, Guards};

#[derive(Parser)]
#[command(
    name = "cartan-count",
    about = "Counts and classifies margin-constrained matrices up to congruence",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct ParamArgs {
    /// First size parameter (positive).
    #[arg(long)]
    m: usize,
    /// Second size parameter (positive).
    #[arg(long)]
    n: usize,
    /// Third size parameter (positive).
    #[arg(long)]
    o: usize,
}

#[derive(Args)]
struct CommonArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    output: OutputFormat,
    /// Whether the transpose move is part of the equivalence.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    transpose: bool,
    /// Remove the built-in size guards.
    #[arg(long)]
    force: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the number of congruence classes for the given parameters.
    Count {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print the canonical class representatives.
    Classes {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Group the classes by homeomorphism type of their spectra.
    Spectra {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print the double-coset counts with and without flip identification.
    Oracle {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the closed-form counting formulas over a parameter grid.
    Verify {
        /// Largest n for the floor(n/2)+1 cells.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Largest o for the p(2o) cells.
        #[arg(long, default_value_t = 2)]
        max_o: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Write one DOT file per class into a directory.
    Dot {
        #[command(flatten)]
        params: ParamArgs,
        /// Directory receiving the DOT files.
        #[arg(long)]
        out: PathBuf,
        /// Emit the smoothed core instead of the bipartite graph.
        #[arg(long)]
        smoothed: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::GuardExceeded { .. } => ExitCode::from(1),
                Error::ParamsMismatch(..) | Error::EmptySpec { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn guards_for(common: &CommonArgs) -> Guards {
    if common.force {
        Guards::unrestricted()
    } else {
        Guards::default()
    }
}

fn parse_params(p: &ParamArgs) -> Result<Params, Error> {
    Params::new(p.m, p.n, p.o)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Count { params, common } => {
            let params = parse_params(&params)?;
            let guards = guards_for(&common);
            let report = count_cartan_classes_opts(params, common.transpose, &guards)?;
            match common.output {
                OutputFormat::Json => println!("{}", report.to_json()),
                _ => println!("{}", report.class_count),
            }
        }
        Command::Classes { params, common } => {
            let params = parse_params(&params)?;
            let guards = guards_for(&common);
            let report = count_cartan_classes_opts(params, common.transpose, &guards)?;
            match common.output {
                OutputFormat::Json => println!("{}", report.to_json()),
                _ => {
                    for (idx, entry) in report.classes.iter().enumerate() {
                        println!("# class {}", idx + 1);
                        print!("{}", entry.key.canonical);
                    }
                }
            }
        }
        Command::Spectra { params, common } => {
            let params = parse_params(&params)?;
            let guards = guards_for(&common);
            let groups = classify_spectra(params, &guards)?;
            match common.output {
                OutputFormat::Json => {
                    let v: Vec<_> = groups
                        .iter()
                        .map(|(h, keys)| {
                            json!({
                                "homeo": {
                                    "circles": h.circle_count,
                                    "core": multigraph_json(&h.core),
                                },
                                "classes": keys
                                    .iter()
                                    .map(|k| k.canonical.to_rows())
                                    .collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    println!("{}", json!(v));
                }
                _ => {
                    for (idx, (h, keys)) in groups.iter().enumerate() {
                        println!(
                            "# type {}: circles={} core_vertices={} core_edges={} classes={}",
                            idx + 1,
                            h.circle_count,
                            h.core.vertex_count(),
                            h.core.edges().len(),
                            keys.len()
                        );
                        for key in keys {
                            print!("{}", key.canonical);
                        }
                    }
                }
            }
        }
        Command::Oracle { params, common } => {
            let params = parse_params(&params)?;
            let guards = guards_for(&common);
            let plain = double_coset_classes(params, false, &guards)?;
            let flipped = double_coset_classes(params, true, &guards)?;
            match common.output {
                OutputFormat::Json => println!(
                    "{}",
                    json!({
                        "params": {"m": params.m, "n": params.n, "o": params.o},
                        "double_cosets": plain.count(),
                        "flip_identified": flipped.count(),
                    })
                ),
                _ => {
                    println!("double_cosets: {}", plain.count());
                    println!("flip_identified: {}", flipped.count());
                }
            }
        }
        Command::Verify {
            max_n,
            max_o,
            common,
        } => {
            let guards = guards_for(&common);
            let report = verify_formulas(max_n, max_o, &guards)?;
            match common.output {
                OutputFormat::Json => {
                    let cells: Vec<_> = report
                        .cells
                        .iter()
                        .map(|c| {
                            json!({
                                "m": c.params.m, "n": c.params.n, "o": c.params.o,
                                "count": c.count,
                                "oracle": c.oracle,
                                "formula_name": c.formula_name,
                                "expected": c.expected,
                                "status": c.status.as_str(),
                            })
                        })
                        .collect();
                    let realized: Vec<_> = report
                        .realized_targets
                        .iter()
                        .map(|(t, p)| json!({"target": t, "m": p.m, "n": p.n, "o": p.o}))
                        .collect();
                    println!("{}", json!({"cells": cells, "realized_targets": realized}));
                }
                OutputFormat::Csv => {
                    println!("m,n,o,count,oracle,formula_name,expected,status");
                    for c in &report.cells {
                        println!(
                            "{},{},{},{},{},{},{},{}",
                            c.params.m,
                            c.params.n,
                            c.params.o,
                            c.count.map_or(String::new(), |v| v.to_string()),
                            c.oracle.map_or(String::new(), |v| v.to_string()),
                            c.formula_name,
                            c.expected.map_or(String::new(), |v| v.to_string()),
                            c.status.as_str()
                        );
                    }
                }
                OutputFormat::Text => {
                    for c in &report.cells {
                        println!(
                            "({},{},{}) count={} oracle={} formula=\"{}\" expected={} {}",
                            c.params.m,
                            c.params.n,
                            c.params.o,
                            c.count.map_or("-".into(), |v| v.to_string()),
                            c.oracle.map_or("-".into(), |v| v.to_string()),
                            c.formula_name,
                            c.expected.map_or("-".into(), |v| v.to_string()),
                            c.status.as_str()
                        );
                    }
                    for (t, p) in &report.realized_targets {
                        println!("target {} realized by ({},{},{})", t, p.m, p.n, p.o);
                    }
                }
            }
            if !report.all_pass() {
                return Err(Error::Parse("verification failed".into()));
            }
        }
        Command::Dot {
            params,
            out,
            smoothed,
            common,
        } => {
            let params = parse_params(&params)?;
            let guards = guards_for(&common);
            let report = count_cartan_classes_opts(params, common.transpose, &guards)?;
            std::fs::create_dir_all(&out).map_err(|e| Error::Parse(e.to_string()))?;
            for (idx, entry) in report.classes.iter().enumerate() {
                let text = if smoothed {
                    multigraph_to_dot(&entry.homeo.core)
                } else {
                    bipartite_to_dot(&graph_from_matrix(&entry.key.canonical))
                };
                let path = out.join(format!("class_{:03}.dot", idx + 1));
                let mut file =
                    std::fs::File::create(&path).map_err(|e| Error::Parse(e.to_string()))?;
                file.write_all(text.as_bytes())
                    .map_err(|e| Error::Parse(e.to_string()))?;
            }
            println!("wrote {} files to {}", report.classes.len(), out.display());
        }
    }
    Ok(())
}
