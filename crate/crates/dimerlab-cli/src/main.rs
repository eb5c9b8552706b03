use std::fs;
use std::io::{self, Read, Write};
use std::net::TcpListener;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use dimerlab_cli::ops::{dispatch, integer_arg, render};
use dimerlab_cli::server;
use dimerlab_cli::wire::{to_line, ApiError, ApiResult};

/// Exact perfect-matching counts of planar lattice regions.
#[derive(Parser)]
#[command(name = "dimerlab", version)]
struct Cli {
    /// Print the machine-readable JSON payload instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Ignore the soft size limits (600x600 matrices, 36-vertex oracle).
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

/// A region given as spec text or as a VAX file.
#[derive(Args)]
struct GraphInput {
    /// Region spec, e.g. `aztec_diamond(4)` or `hexagon(2,3,2)+central_two(vertical)`.
    spec: Option<String>,
    /// Read the region as a VAX document from a file (`-` for stdin).
    #[arg(long, value_name = "FILE", conflicts_with = "spec")]
    vax: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a region and print it as VAX (or its edge list).
    Generate(GraphInput),
    /// Count perfect matchings and factor the count.
    Count(GraphInput),
    /// Factor an integer and judge how round it is.
    Factor { n: String },
    /// Exact probability of every edge lying in a random matching.
    Probs {
        #[command(flatten)]
        input: GraphInput,
        /// `inverse` (default) or `deletion`.
        #[arg(long)]
        backend: Option<String>,
    },
    /// Moments of inertia of vertical-edge probabilities (a number means the regular hexagon).
    Moments(GraphInput),
    /// Draw a random matching, reproducibly from a seed.
    Sample {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Smith normal form of a region's matrix, or of `carlitz(a,b,c)`.
    Cokernel {
        #[command(flatten)]
        input: GraphInput,
        /// Sign rule: wilson, honeycomb or generic.
        #[arg(long)]
        rule: Option<String>,
    },
    /// det(K K^T) of a region's bipartite matrix, with its exact square root.
    Kkstar {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        rule: Option<String>,
    },
    /// Sum of the entries of K^-1 for the Aztec diamond of order n.
    Invsum { n: u64 },
    /// Check a formula against the counting engines over a grid, e.g. `verify hex_dungeon a=1..2 b=2a..2a+2`.
    Verify {
        formula: String,
        #[arg(required = true, num_args = 1..)]
        grid: Vec<String>,
    },
    /// Fit the shortest linear recurrence to a sequence (or to a strip of domino tilings).
    Recurrence {
        terms: Vec<String>,
        /// Use the tiling counts of the strip of this height.
        #[arg(long, conflicts_with = "terms")]
        strip: Option<u64>,
        /// Number of strip terms (with --strip).
        #[arg(long = "count", default_value_t = 16)]
        count: u64,
    },
    /// Compare the weighted domino-covering and dimer-tableaux polynomials of an m x n rectangle.
    Tableaux { m: u64, n: u64 },
    /// Reduce a graph by forced edges, contractions and local substitutions.
    Rewrite {
        #[command(flatten)]
        input: GraphInput,
        /// urban, kenyon or all.
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Render a region as SVG.
    Svg {
        #[command(flatten)]
        input: GraphInput,
        /// none, sample or probs.
        #[arg(long)]
        overlay: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write to this file instead of stdout.
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Serve every operation as `POST /<name>` with JSON bodies.
    Serve {
        #[arg(long, default_value_t = 7878)]
        port: u16,
        /// Bind all interfaces instead of loopback only.
        #[arg(long)]
        public: bool,
    },
}

fn graph_request(input: GraphInput) -> ApiResult<Map<String, Value>> {
    let mut req = Map::new();
    match (input.spec, input.vax) {
        (Some(spec), None) => {
            req.insert("spec".into(), json!(spec));
        }
        (None, Some(path)) => {
            let text = if path == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).map_err(|e| ApiError::parse(format!("reading stdin: {e}")))?;
                s
            } else {
                fs::read_to_string(&path).map_err(|e| ApiError::parse(format!("reading {path}: {e}")))?
            };
            req.insert("vax".into(), json!(text));
        }
        _ => return Err(ApiError::parse("give a region spec or --vax FILE")),
    }
    Ok(req)
}

/// Translates the command line into an operation name and request.
fn request(command: Command) -> ApiResult<(&'static str, Map<String, Value>)> {
    let with = |mut m: Map<String, Value>, k: &str, v: Option<Value>| {
        if let Some(v) = v {
            m.insert(k.to_string(), v);
        }
        m
    };
    Ok(match command {
        Command::Generate(input) => ("generate", graph_request(input)?),
        Command::Count(input) => ("count", graph_request(input)?),
        Command::Factor { n } => ("factor", with(Map::new(), "n", Some(integer_arg(&n)?))),
        Command::Probs { input, backend } => {
            ("probs", with(graph_request(input)?, "backend", backend.map(Value::from)))
        }
        Command::Moments(input) => match input.spec.as_deref().map(str::parse::<u64>) {
            Some(Ok(n)) => ("moments", with(Map::new(), "n", Some(json!(n)))),
            _ => ("moments", graph_request(input)?),
        },
        Command::Sample { input, seed } => ("sample", with(graph_request(input)?, "seed", Some(json!(seed)))),
        Command::Cokernel { input, rule } => ("cokernel", with(graph_request(input)?, "rule", rule.map(Value::from))),
        Command::Kkstar { input, rule } => ("kkstar", with(graph_request(input)?, "rule", rule.map(Value::from))),
        Command::Invsum { n } => ("invsum", with(Map::new(), "n", Some(json!(n)))),
        Command::Verify { formula, grid } => {
            let m = with(Map::new(), "formula", Some(json!(formula)));
            ("verify", with(m, "grid", Some(json!(grid.join(" ")))))
        }
        Command::Recurrence { terms, strip, count } => match strip {
            Some(a) => ("recurrence", with(with(Map::new(), "strip", Some(json!(a))), "terms", Some(json!(count)))),
            None => ("recurrence", with(Map::new(), "sequence", Some(json!(terms)))),
        },
        Command::Tableaux { m, n } => ("tableaux", with(with(Map::new(), "m", Some(json!(m))), "n", Some(json!(n)))),
        Command::Rewrite { input, strategy } => {
            ("rewrite", with(graph_request(input)?, "strategy", strategy.map(Value::from)))
        }
        Command::Svg { input, overlay, seed, .. } => {
            let m = with(graph_request(input)?, "overlay", overlay.map(Value::from));
            ("svg", with(m, "seed", Some(json!(seed))))
        }
        Command::Serve { .. } => unreachable!("serve is handled before dispatch"),
    })
}

fn serve(port: u16, public: bool) -> ExitCode {
    let host = if public { "0.0.0.0" } else { "127.0.0.1" };
    let listener = match TcpListener::bind((host, port)) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("cannot bind {host}:{port}: {e}");
            return ExitCode::from(3);
        }
    };
    match listener.local_addr() {
        Ok(addr) => println!("listening on {addr}"),
        Err(e) => eprintln!("listening (address unknown: {e})"),
    }
    let _ = io::stdout().flush();
    match server::serve(listener) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("server stopped: {e}");
            ExitCode::from(3)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json_out, force) = (cli.json, cli.force);
    let output_file = match &cli.command {
        Command::Serve { port, public } => return serve(*port, *public),
        Command::Svg { output, .. } => output.clone(),
        _ => None,
    };
    let result = request(cli.command).and_then(|(op, mut req)| {
        if force {
            req.insert("force".into(), json!(true));
        }
        dispatch(op, &Value::Object(req)).map(|v| (op, v))
    });
    match result {
        Ok((op, v)) => {
            let text = if json_out { format!("{}\n", to_line(&v)) } else { render(op, &v) };
            let written = match &output_file {
                Some(path) => fs::write(path, text),
                None => io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("write error: {e}");
                return ExitCode::from(3);
            }
            if op == "verify" && v["all_match"] == false {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if json_out {
                println!("{}", to_line(&e.to_json()));
            }
            eprintln!("dimerlab: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
