//! `apex`: find at most `k` vertices whose deletion leaves a graph planar.

mod report;

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use apex_core::wellattached::AttachmentScan;
use apex_core::zones::{layout_zones, ZoneScan, ZoneShape};
use apex_core::{
    edge_count_prefilter, find_hex_subdivision, generate_planted_instance, is_planar, load_graph,
    run_pipeline, solve_exact_with, verify_solution, ConstantsMode, Format, Graph, PipelineConfig,
    Prefilter, SearchBudget, SolverLimits, Status, VertexId,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{GraphStats, SolveReport};

#[derive(Parser)]
#[command(name = "apex", version, about = "Exact k-apex solver")]
struct Cli {
    /// Worker threads for parallel scans; defaults to one per core.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the instance and print a certificate (the default).
    Solve(SolveArgs),
    /// Write a planted instance with a known apex set.
    Generate(GenerateArgs),
    /// Check a proposed apex set.
    Verify(VerifyArgs),
    /// Grid and zone diagnostics without solving.
    Stats(StatsArgs),
}

const SUBCOMMANDS: [&str; 5] = ["solve", "generate", "verify", "stats", "help"];

#[derive(Args)]
struct Input {
    /// Graph file, or `-` for stdin.
    input: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Edges)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edges,
    Dimacs,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Edges => Format::EdgeList,
            FormatArg::Dimacs => Format::Dimacs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstantsArg {
    Paper,
    Reduced,
}

impl From<ConstantsArg> for ConstantsMode {
    fn from(c: ConstantsArg) -> ConstantsMode {
        match c {
            ConstantsArg::Paper => ConstantsMode::Paper,
            ConstantsArg::Reduced => ConstantsMode::Reduced,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Grid reductions when the graph can hold a host grid, else exact search.
    Auto,
    /// Exact branching search only.
    ExactOnly,
    /// Always run the grid reduction phase before the exact search.
    Phased,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: Input,
    /// Maximum number of vertices to delete.
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = ConstantsArg::Paper)]
    constants: ConstantsArg,
    /// Branch nodes the exact search may explore.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    node_budget: Option<u64>,
    /// Wall-clock budget in milliseconds.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    time_budget_ms: Option<u64>,
    /// Print the JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Size of the planted apex set.
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Edges)]
    format: FormatArg,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    k: usize,
    /// Comma-separated vertex ids.
    #[arg(long, value_delimiter = ',', conflicts_with = "certificate")]
    set: Vec<u32>,
    /// A JSON report from `apex solve --json`; its apex set is checked.
    #[arg(long)]
    certificate: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = ConstantsArg::Paper)]
    constants: ConstantsArg,
    #[arg(long)]
    json: bool,
}

/// Inserts `solve` when no subcommand is named, skipping global flags.
fn with_default_subcommand(mut argv: Vec<String>) -> Vec<String> {
    let mut i = 1;
    while i < argv.len() {
        let a = argv[i].as_str();
        if a == "--threads" {
            i += 2;
        } else if a.starts_with("--threads=") {
            i += 1;
        } else {
            break;
        }
    }
    let named = argv.get(i).is_some_and(|a| {
        SUBCOMMANDS.contains(&a.as_str())
            || matches!(a.as_str(), "-h" | "--help" | "-V" | "--version")
    });
    if !named && argv.len() > 1 {
        argv.insert(i.min(argv.len()), "solve".into());
    }
    argv
}

fn main() -> ExitCode {
    let argv = with_default_subcommand(std::env::args().collect());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Solve(args) => solve(args),
        Command::Generate(args) => generate(args),
        Command::Verify(args) => verify(args),
        Command::Stats(args) => stats(args),
    }
}

fn read_graph(input: &Input) -> Result<Graph> {
    let reader: Box<dyn BufRead> = if input.input == "-" {
        Box::new(BufReader::new(io::stdin()))
    } else {
        let file =
            File::open(&input.input).with_context(|| format!("cannot open {}", input.input))?;
        Box::new(BufReader::new(file))
    };
    let loaded = load_graph(reader, input.format.into())?;
    if loaded.duplicate_edges + loaded.self_loops > 0 {
        eprintln!(
            "note: dropped {} duplicate edges and {} self-loops",
            loaded.duplicate_edges, loaded.self_loops
        );
    }
    Ok(loaded.graph)
}

fn solve(args: SolveArgs) -> Result<u8> {
    let g = read_graph(&args.input)?;
    let start = Instant::now();
    let constants = ConstantsMode::from(args.constants);
    let defaults = PipelineConfig::default();
    let config = PipelineConfig {
        constants,
        node_budget: args.node_budget.unwrap_or(defaults.node_budget),
        time_budget: args.time_budget_ms.map(Duration::from_millis),
        ..defaults
    };
    let host = ZoneShape::for_k(args.k, constants).host_radius();
    let exact = match args.mode {
        Mode::ExactOnly => true,
        Mode::Phased => false,
        Mode::Auto => g.vertex_count() < 6 * host * host,
    };
    let outcome = if exact {
        let limits = SolverLimits {
            node_budget: config.node_budget,
            deadline: config.time_budget.map(|d| start + d),
        };
        solve_exact_with(&g, args.k, limits)
    } else {
        run_pipeline(&g, args.k, &config).outcome
    };
    if let Some(x) = &outcome.apex_set {
        if !verify_solution(&g, x, args.k)? {
            bail!("internal error: the apex set failed verification");
        }
    }
    let report = SolveReport::new(&outcome, start.elapsed());
    let mut out = io::stdout().lock();
    if args.json {
        serde_json::to_writer(&mut out, &report)?;
        writeln!(out)?;
    } else {
        report.write_text(&mut out)?;
    }
    Ok(match outcome.status {
        Status::Feasible => 0,
        Status::Infeasible => 1,
        Status::ResourceLimit => 2,
    })
}

fn generate(args: GenerateArgs) -> Result<u8> {
    let (g, planted) = generate_planted_instance(args.n, args.k, args.seed)?;
    let mut out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(io::BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };
    let ids: Vec<String> = planted.iter().map(|v| v.to_string()).collect();
    let comment = match args.format {
        FormatArg::Edges => "#",
        FormatArg::Dimacs => "c",
    };
    writeln!(
        out,
        "{comment} planted apex set (k = {}, seed = {}): {}",
        args.k,
        args.seed,
        ids.join(" ")
    )?;
    g.write(&mut out, args.format.into())?;
    out.flush()?;
    Ok(0)
}

fn verify(args: VerifyArgs) -> Result<u8> {
    let g = read_graph(&args.input)?;
    let set: BTreeSet<VertexId> = match &args.certificate {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let report: SolveReport =
                serde_json::from_str(&text).context("certificate is not a solve report")?;
            match report.apex_set {
                Some(x) => x.into_iter().collect(),
                None => bail!("certificate has no apex set (status {:?})", report.status),
            }
        }
        None => args.set.iter().map(|&v| VertexId(v)).collect(),
    };
    let valid = verify_solution(&g, &set, args.k)?;
    let mut out = io::stdout().lock();
    if args.json {
        let value = serde_json::json!({ "valid": valid, "size": set.len(), "k": args.k });
        writeln!(out, "{value}")?;
    } else if valid {
        writeln!(
            out,
            "valid: {} vertices, graph minus set is planar",
            set.len()
        )?;
    } else {
        let why = if set.len() > args.k {
            "set is larger than k"
        } else {
            "graph minus set is not planar"
        };
        writeln!(out, "invalid: {why}")?;
    }
    Ok(if valid { 0 } else { 1 })
}

fn stats(args: StatsArgs) -> Result<u8> {
    let g = read_graph(&args.input)?;
    let shape = ZoneShape::for_k(args.k, args.constants.into());
    let mut stats = GraphStats {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        components: g.connected_components().len(),
        planar: is_planar(&g),
        prefilter_rejects: edge_count_prefilter(&g, args.k) == Prefilter::Reject,
        host_radius: shape.host_radius(),
        grid_found: false,
        zones: Vec::new(),
        well_attached: Vec::new(),
    };
    if args.k >= 2 {
        if let Some(host) = find_hex_subdivision(&g, shape.host_radius(), SearchBudget::default()) {
            stats.grid_found = true;
            let layout = layout_zones(&host, args.k, shape)?;
            let scan = ZoneScan::new(&g, &layout);
            stats.zones = layout.zones.iter().map(|z| scan.report(z)).collect();
            stats.well_attached = AttachmentScan::new(&g, &layout)
                .all()
                .iter()
                .map(|w| w.vertex)
                .collect();
        }
    }
    let mut out = io::stdout().lock();
    if args.json {
        serde_json::to_writer(&mut out, &stats)?;
        writeln!(out)?;
    } else {
        stats.write_text(&mut out)?;
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn solve_is_the_default_subcommand() {
        assert_eq!(
            with_default_subcommand(argv("apex --k 1 g")),
            argv("apex solve --k 1 g")
        );
        assert_eq!(
            with_default_subcommand(argv("apex --threads 2 --k 1 g")),
            argv("apex --threads 2 solve --k 1 g")
        );
        assert_eq!(
            with_default_subcommand(argv("apex generate --n 5 --k 1")),
            argv("apex generate --n 5 --k 1")
        );
        assert_eq!(
            with_default_subcommand(argv("apex --help")),
            argv("apex --help")
        );
        assert_eq!(with_default_subcommand(argv("apex")), argv("apex"));
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
