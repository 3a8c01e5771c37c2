use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use intbal::format::{parse_graph_file, write_graph_file, ParseError};
use intbal::{
    builtin, generate_balanced_by_components, integerize, parse_decimal_string, solve_feasible_w,
    Digraph, GeneratorParams, IntegerizeReport, Rational, VertexWeights, WeightedDigraph,
};
use serde::Serialize;

/// Round balanced digraph weights to integers while keeping every vertex sum.
#[derive(Parser, Debug)]
#[command(name = "intbal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the vertex weights of a graph file and whether it is balanced.
    Check {
        /// Graph file; `-` or omitted reads stdin.
        #[arg(short, long)]
        input: Option<PathBuf>,
    },
    /// Replace the weights of a balanced graph by integers with the same vertex weights.
    Integerize {
        #[arg(short, long)]
        input: Option<PathBuf>,
        /// Output graph file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Per-iteration JSON lines: to stderr, or to PATH with `--report=PATH`.
        #[arg(long, num_args = 0..=1, require_equals = true, value_name = "PATH")]
        report: Option<Option<PathBuf>>,
    },
    /// Emit a balanced instance on a builtin or file-supplied graph.
    Synth(SynthArgs),
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["u", "seed"]))]
struct SynthArgs {
    /// `cycleN`, `bicycleN`, `completeN`, `bidirected-triangle`,
    /// `two-cycle-loops`, or a graph file whose weights are ignored.
    #[arg(long)]
    graph: String,
    /// Comma-separated vertex weights to realise exactly.
    #[arg(long, value_delimiter = ',')]
    u: Option<Vec<String>>,
    /// Seed for a random fractional instance with integer vertex weights.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = GeneratorParams::default().max_weight)]
    max_weight: u32,
    #[arg(long, default_value_t = GeneratorParams::default().max_denominator)]
    max_denominator: u32,
    #[arg(long, default_value_t = GeneratorParams::default().base_cycles)]
    base_cycles: usize,
    #[arg(long, default_value_t = GeneratorParams::default().fractional_rounds)]
    fractional_rounds: usize,
}

enum CliError {
    /// Bad input: unreadable file, parse error, bad flag value. Exit 2.
    Input(String),
    /// The input is well formed but the request cannot be met. Exit 1.
    Domain(intbal::Error),
}

impl From<intbal::Error> for CliError {
    fn from(e: intbal::Error) -> Self {
        CliError::Domain(e)
    }
}

fn io_error(path: Option<&Path>, e: io::Error) -> CliError {
    match path {
        Some(p) => CliError::Input(format!("{}: {e}", p.display())),
        None => CliError::Input(e.to_string()),
    }
}

fn parse_error(path: Option<&Path>, e: ParseError) -> CliError {
    let name = path.map_or("<stdin>".to_string(), |p| p.display().to_string());
    CliError::Input(format!("{name}: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { input } => check(input.as_deref()),
        Command::Integerize {
            input,
            output,
            report,
        } => run_integerize(input.as_deref(), output.as_deref(), report),
        Command::Synth(args) => synth(&args),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).map_err(|e| io_error(Some(p), e)),
        _ => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| io_error(None, e))?;
            Ok(text)
        }
    }
}

fn read_graph(path: Option<&Path>) -> Result<WeightedDigraph, CliError> {
    let text = read_input(path)?;
    parse_graph_file(&text).map_err(|e| parse_error(path.filter(|p| *p != Path::new("-")), e))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text).map_err(|e| io_error(Some(p), e)),
        _ => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| io_error(None, e)),
    }
}

fn check(input: Option<&Path>) -> Result<ExitCode, CliError> {
    let g = read_graph(input)?;
    let graph = g.graph();
    let mut out = String::new();
    out.push_str(&format!("vertices: {}\n", graph.vertex_count()));
    out.push_str(&format!("edges: {}\n", graph.edge_count()));
    out.push_str(&format!(
        "strongly connected components: {}\n",
        graph.strongly_connected_components().len()
    ));
    out.push_str(&format!("decimal edges: {}\n", g.decimal_edge_count()));
    match g.check_balanced() {
        Ok(u) => {
            out.push_str("balanced: yes\n");
            for (i, x) in u.as_slice().iter().enumerate() {
                out.push_str(&format!("u[{i}] = {x}\n"));
            }
            let integral = if u.is_integral() { "yes" } else { "no" };
            out.push_str(&format!("u integral: {integral}\n"));
            write_output(None, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            out.push_str("balanced: no\n");
            write_output(None, &out)?;
            Err(e.into())
        }
    }
}

#[derive(Serialize)]
struct ReportLine {
    iter: usize,
    cycle_len: usize,
    eps: String,
    decimal_edges_remaining: usize,
}

fn report_lines(report: &IntegerizeReport) -> String {
    report
        .steps
        .iter()
        .enumerate()
        .map(|(i, step)| {
            let line = ReportLine {
                iter: i + 1,
                cycle_len: step.cycle_len,
                eps: step.epsilon.to_string(),
                decimal_edges_remaining: step.decimal_edges_after,
            };
            serde_json::to_string(&line).expect("plain struct serializes") + "\n"
        })
        .collect()
}

fn run_integerize(
    input: Option<&Path>,
    output: Option<&Path>,
    report: Option<Option<PathBuf>>,
) -> Result<ExitCode, CliError> {
    let g = read_graph(input)?;
    let (rounded, summary) = integerize(&g)?;
    write_output(output, &write_graph_file(&rounded))?;
    eprintln!(
        "integerize: {} iteration(s), {} decimal edge(s) initially",
        summary.iterations, summary.initial_decimal_edges
    );
    match report {
        None => {}
        Some(None) => eprint!("{}", report_lines(&summary)),
        Some(Some(path)) => {
            fs::write(&path, report_lines(&summary)).map_err(|e| io_error(Some(&path), e))?
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn synth_graph(name: &str) -> Result<Digraph, CliError> {
    if let Some(g) = builtin::named_graph(name) {
        return Ok(g);
    }
    let path = Path::new(name);
    if path.exists() {
        return Ok(read_graph(Some(path))?.into_parts().0);
    }
    Err(CliError::Input(format!(
        "`{name}` is neither a builtin graph nor a readable file"
    )))
}

fn synth(args: &SynthArgs) -> Result<ExitCode, CliError> {
    let graph = synth_graph(&args.graph)?;
    let instance = if let Some(values) = &args.u {
        let u = values
            .iter()
            .map(|s| {
                let x = parse_decimal_string(s.trim())
                    .map_err(|e| CliError::Input(format!("--u: {e}")))?;
                if x.is_negative() {
                    return Err(CliError::Input(format!("--u: negative weight {x}")));
                }
                Ok(x)
            })
            .collect::<Result<Vec<Rational>, _>>()?;
        let u = VertexWeights::new(u)?;
        if u.len() != graph.vertex_count() {
            return Err(CliError::Input(format!(
                "--u has {} values for {} vertices",
                u.len(),
                graph.vertex_count()
            )));
        }
        let w = solve_feasible_w(&graph, &u)?;
        WeightedDigraph::new(graph, w)?
    } else {
        let params = GeneratorParams {
            max_weight: args.max_weight,
            max_denominator: args.max_denominator,
            base_cycles: args.base_cycles,
            fractional_rounds: args.fractional_rounds,
        };
        let seed = args.seed.expect("clap enforces --u or --seed");
        generate_balanced_by_components(&graph, seed, &params)?
    };
    write_output(args.output.as_deref(), &write_graph_file(&instance))?;
    Ok(ExitCode::SUCCESS)
}
