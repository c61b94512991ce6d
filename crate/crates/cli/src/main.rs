mod label;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use alcove_atlas::conjecture::{check_conjecture, conjecture_connectors, ConjectureOptions, Verdict};
use alcove_atlas::graph::{build_g_rd, labeled_dual_graph, permutation_dual_graph, LabeledGraph};
use alcove_atlas::io::write_alcove_lines;
use alcove_atlas::verify::{render_table, verify_grid, GridBounds};
use alcove_atlas::{enumerate_dilated_alcoves, Error, HypersimplexSpec, Strategy};
use anyhow::Context;
use clap::parser::ValueSource;
use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::label::LabelArgs;

/// Enumerate, label and compare the alcoved triangulations of dilated
/// hypersimplices r*Delta(i,d).
#[derive(Debug, Parser)]
#[command(name = "alcoves", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    enumerate: EnumerateArgs,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, env = "ALCOVE_ATLAS_JOBS")]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the alcoves of r*Delta(i,d) (the default command).
    Enumerate(EnumerateArgs),
    /// Apply a labeling or its inverse to one alcove or label.
    Label(LabelArgs),
    /// Write the dual graph of the triangulation.
    DualGraph(DualGraphArgs),
    /// Check the Eulerian identities over a parameter grid.
    Verify(VerifyArgs),
    /// Compare the composed graph G<H> with the dual graph.
    Conjecture(ConjectureArgs),
}

#[derive(Debug, Clone, Copy, Args)]
struct SpecArgs {
    /// Dilation factor.
    #[arg(long = "r")]
    r: Option<u32>,
    /// Hypersimplex level.
    #[arg(long = "i")]
    i: Option<u32>,
    /// Dimension.
    #[arg(long = "d")]
    d: Option<usize>,
}

impl SpecArgs {
    fn spec(&self) -> anyhow::Result<HypersimplexSpec> {
        let (Some(r), Some(i), Some(d)) = (self.r, self.i, self.d) else {
            return Err(usage("--r, --i and --d are required"));
        };
        Ok(HypersimplexSpec::new(r, i, d)?)
    }
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn open(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("creating {}", path.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, value_enum, default_value_t = StrategyArg::Words)]
    strategy: StrategyArg,
    /// json (JSON lines with a manifest line) or text.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    output: OutputArgs,
    /// Refuse specs with more alcoves than this.
    #[arg(long, default_value_t = 1_000_000)]
    max_alcoves: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Words,
    Pairs,
    Brute,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Words => Strategy::Words,
            StrategyArg::Pairs => Strategy::Pairs,
            StrategyArg::Brute => Strategy::Brute,
        }
    }
}

#[derive(Debug, Clone, Args)]
struct DualGraphArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Build the combinatorial model instead: G_(r,d) when i = 1, the
    /// permutation graph when r = 1, the composed graph G<H> otherwise.
    #[arg(long = "abstract")]
    abstract_graph: bool,
    /// Color edges by hyperplane type only, forgetting the level.
    #[arg(long)]
    coarse: bool,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    format: Format,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, default_value_t = 1_000_000)]
    max_alcoves: u64,
}

#[derive(Debug, Clone, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    rmax: u32,
    #[arg(long, default_value_t = 4)]
    dmax: usize,
    /// Enumerate alcoves (all strategies) for grid points up to this count.
    #[arg(long, default_value_t = 10_000)]
    enumeration_limit: u64,
    /// text or json.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct ConjectureArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Also try up to this many per-color identity wirings.
    #[arg(long, default_value_t = 0)]
    assignment_limit: u64,
    /// Refinement rounds allowed in the isomorphism search.
    #[arg(long, default_value_t = alcove_atlas::iso::DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, default_value_t = 20_000)]
    max_alcoves: u64,
    /// json or text.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

/// A problem with the invocation rather than with the computation.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

fn exit_code_for(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return EXIT_USAGE;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::InvalidParameter(_)
            | Error::InvalidInput(_)
            | Error::InvalidLabel(_)
            | Error::Precondition(_)
            | Error::NotRepresentable(_),
        ) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if let Some((name, _)) = matches.subcommand() {
        let stray = ["r", "i", "d", "strategy", "format", "out", "max_alcoves"]
            .into_iter()
            .find(|id| matches.value_source(id) == Some(ValueSource::CommandLine));
        if let Some(id) = stray {
            eprintln!("error: --{} belongs after the subcommand '{name}'", id.replace('_', "-"));
            return ExitCode::from(EXIT_USAGE);
        }
    }
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let result = match cli.command {
        None => cmd_enumerate(&cli.enumerate),
        Some(Command::Enumerate(args)) => cmd_enumerate(&args),
        Some(Command::Label(args)) => label::cmd_label(&args),
        Some(Command::DualGraph(args)) => cmd_dual_graph(&args),
        Some(Command::Verify(args)) => cmd_verify(&args),
        Some(Command::Conjecture(args)) => cmd_conjecture(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn guard(spec: &HypersimplexSpec, max_alcoves: u64) -> anyhow::Result<u64> {
    let estimate = spec.alcove_count()?;
    if estimate > max_alcoves {
        return Err(usage(format!(
            "{spec} has {estimate} alcoves, above --max-alcoves {max_alcoves}"
        )));
    }
    Ok(estimate)
}

fn cmd_enumerate(args: &EnumerateArgs) -> anyhow::Result<u8> {
    let spec = args.spec.spec()?;
    if args.format == Format::Dot {
        return Err(usage("enumerate writes json or text"));
    }
    guard(&spec, args.max_alcoves)?;
    let strategy = Strategy::from(args.strategy);
    let alcoves = enumerate_dilated_alcoves(&spec, strategy)?;
    let mut out = args.output.open()?;
    match args.format {
        Format::Json => write_alcove_lines(&mut out, &spec, strategy, &alcoves)?,
        _ => {
            for a in &alcoves {
                writeln!(out, "{a}")?;
            }
        }
    }
    out.flush()?;
    eprintln!("count: {}", alcoves.len());
    Ok(0)
}

fn cmd_dual_graph(args: &DualGraphArgs) -> anyhow::Result<u8> {
    let spec = args.spec.spec()?;
    guard(&spec, args.max_alcoves)?;
    let (name, graph) = if args.abstract_graph {
        abstract_graph(&spec)?
    } else {
        (format!("dual {spec}"), labeled_dual_graph(&spec)?.1)
    };
    let graph = if args.coarse { graph.coarsen_colors() } else { graph };
    let mut out = args.output.open()?;
    write_graph(&mut out, &graph, &name, args.format)?;
    out.flush()?;
    eprintln!("{} vertices, {} edges", graph.vertex_count(), graph.edge_count());
    Ok(0)
}

fn abstract_graph(spec: &HypersimplexSpec) -> anyhow::Result<(String, LabeledGraph)> {
    let (r, i, d) = (spec.dilation(), spec.level(), spec.dim());
    Ok(if i == 1 {
        (format!("G({r},{d})"), build_g_rd(r, d)?)
    } else if r == 1 {
        (format!("permutations({d},{i})"), permutation_dual_graph(i, d)?)
    } else {
        (format!("composed {spec}"), conjecture_connectors(spec)?.compose()?)
    })
}

fn write_graph(out: &mut dyn Write, graph: &LabeledGraph, name: &str, format: Format) -> anyhow::Result<()> {
    match format {
        Format::Dot => out.write_all(graph.to_dot(name).as_bytes())?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &graph.to_json())?;
            writeln!(out)?;
        }
        Format::Text => {
            for ((u, v), color) in graph.edges() {
                let color = color.map(|c| c.to_string()).unwrap_or_default();
                writeln!(out, "{}\t{}\t{}", graph.label(u), graph.label(v), color)?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    schema_version: u32,
    rmax: u32,
    dmax: usize,
    all_pass: bool,
    reports: &'a [alcove_atlas::verify::IdentityReport],
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<u8> {
    if args.format == Format::Dot {
        return Err(usage("verify writes json or text"));
    }
    let bounds = GridBounds { rmax: args.rmax, dmax: args.dmax, enumeration_limit: args.enumeration_limit };
    let reports = verify_grid(&bounds)?;
    let all_pass = reports.iter().all(|r| r.pass);
    let mut out = args.output.open()?;
    match args.format {
        Format::Json => {
            let doc = VerifyDocument {
                schema_version: alcove_atlas::SCHEMA_VERSION,
                rmax: args.rmax,
                dmax: args.dmax,
                all_pass,
                reports: &reports,
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
        _ => out.write_all(render_table(&reports).as_bytes())?,
    }
    out.flush()?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    eprintln!("{} grid points, {failed} failed", reports.len());
    Ok(if all_pass { 0 } else { EXIT_FAIL })
}

fn cmd_conjecture(args: &ConjectureArgs) -> anyhow::Result<u8> {
    if args.format == Format::Dot {
        return Err(usage("conjecture writes json or text"));
    }
    let spec = args.spec.spec()?;
    let options = ConjectureOptions {
        max_alcoves: args.max_alcoves,
        search_budget: args.budget,
        assignment_limit: args.assignment_limit,
    };
    let report = check_conjecture(&spec, &options)?;
    let mut out = args.output.open()?;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
        }
        _ => {
            writeln!(out, "{spec}: {}", report.verdict)?;
            writeln!(out, "alcoves: {}", report.alcoves)?;
            if let (Some(v), Some(e)) = (report.composed_vertices, report.composed_edges) {
                writeln!(out, "composed graph: {v} vertices, {e} edges")?;
            }
            if let Some(e) = report.dual_edges {
                writeln!(out, "dual graph: {e} edges")?;
            }
            if let Some(c) = &report.certificate {
                writeln!(out, "certificate: {c}")?;
            }
            if let Some(search) = &report.color_assignments {
                writeln!(
                    out,
                    "identity wirings on [{}]: {} of {} tried hold{}",
                    search.colors.join(", "),
                    search.holding.len(),
                    search.tried,
                    if search.complete { "" } else { " (search truncated)" }
                )?;
                for picks in &search.holding {
                    let picks: Vec<String> = picks.iter().map(ToString::to_string).collect();
                    writeln!(out, "  W° indices {}", picks.join(" "))?;
                }
            }
        }
    }
    out.flush()?;
    Ok(match report.verdict {
        Verdict::HoldsViaLabelMap | Verdict::HoldsViaSearch => 0,
        Verdict::Fails => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}
