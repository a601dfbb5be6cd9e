//! `efl`: generate instances, compute bounds, color, verify, and run sweeps.
//!
//! Exit codes: 0 success, 1 a procedure failed where it is guaranteed to
//! succeed (or a sweep produced an invalid coloring), 2 usage, input or I/O error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use efl_core::bounds::{self, BoundReport};
use efl_core::coloring::{
    exact_chromatic, greedy_recolor, uniform_maxdeg_color_with_palette, uniform_palette,
    verify_coloring, Color, Coloring, GreedyOutcome, VertexOrder, DEFAULT_VERTEX_CAP,
};
use efl_core::generators::{GeneratorKind, GeneratorSpec};
use efl_core::harness::{run_sweep, SweepConfig};
use efl_core::{Execution, Hypergraph};

#[derive(Parser)]
#[command(name = "efl", version, about = "Coloring linear hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write it as JSON.
    Gen {
        #[arg(long)]
        kind: GeneratorKind,
        /// Comma-separated parameters in the kind's order.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        params: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the color budget and thresholds for n edges and degree r.
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Color an instance and write the coloring as JSON.
    Color {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        procedure: ProcedureArg,
        /// Palette size; defaults to the procedure's guaranteed budget.
        #[arg(long)]
        palette: Option<u32>,
        /// `id` or `random:SEED` (greedy-recolor only).
        #[arg(long)]
        order: Option<OrderArg>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a coloring against an instance.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Exact chromatic number of a small instance.
    Exact {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        cap: usize,
    },
    /// Run a TOML sweep config and write CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Root seed; overrides the config's `seed`.
        #[arg(long)]
        seed: Option<u64>,
        /// Process instances on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProcedureArg {
    GreedyRecolor,
    UniformMaxdeg,
}

#[derive(Clone)]
struct OrderArg(VertexOrder);

impl std::str::FromStr for OrderArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "id" {
            return Ok(OrderArg(VertexOrder::ById));
        }
        s.strip_prefix("random:")
            .and_then(|seed| seed.parse().ok())
            .map(|seed| OrderArg(VertexOrder::Random(seed)))
            .ok_or_else(|| format!("expected `id` or `random:SEED`, got {s:?}"))
    }
}

/// Error carrying the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn violation(message: impl std::fmt::Display) -> Failure {
    Failure { code: 1, message: message.to_string() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Hypergraph, Failure> {
    Hypergraph::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn gen(kind: GeneratorKind, params: Vec<u64>, seed: u64, out: &Path) -> Result<(), Failure> {
    let h = GeneratorSpec::new(kind, params, seed).generate().map_err(usage)?;
    write(out, &h.to_json())?;
    println!("{kind}: {} vertices, {} edges", h.num_vertices(), h.size());
    Ok(())
}

fn bound(n: u64, r: u64, csv: bool) -> Result<(), Failure> {
    let report = BoundReport::new(n, r).map_err(usage)?;
    if csv {
        println!("{}\n{}", BoundReport::CSV_HEADER, report.csv_row());
    } else {
        print!("{}", report.table());
    }
    Ok(())
}

fn color(
    input: &Path,
    procedure: ProcedureArg,
    palette: Option<u32>,
    order: Option<VertexOrder>,
    out: &Path,
) -> Result<(), Failure> {
    let h = load_instance(input)?;
    let n = h.size();
    let coloring = match procedure {
        ProcedureArg::GreedyRecolor => {
            let budget = h
                .regularity()
                .filter(|&r| r >= 3 && h.is_linear())
                .map(|r| bounds::color_budget(n as u64, r as u64).expect("n >= 1, r >= 3") as Color);
            let palette = palette.or(budget).unwrap_or(n.max(1) as Color);
            let order = order.unwrap_or(VertexOrder::ById).resolve(h.num_vertices());
            match greedy_recolor(&h, palette, &order).map_err(usage)? {
                GreedyOutcome::Colored { coloring, .. } => coloring,
                GreedyOutcome::Aborted(report) => {
                    let detail = serde_json::to_string(&report).expect("report serializes");
                    let message = format!("aborted with palette {palette}: {detail}");
                    return match budget {
                        Some(b) if palette >= b => Err(violation(message)),
                        _ => {
                            eprintln!("{message}");
                            Ok(())
                        }
                    };
                }
            }
        }
        ProcedureArg::UniformMaxdeg => {
            if order.is_some() {
                return Err(usage("--order applies to greedy-recolor only"));
            }
            let guaranteed = uniform_palette(n);
            let palette = palette.unwrap_or(guaranteed);
            match uniform_maxdeg_color_with_palette(&h, palette) {
                Ok(Ok(success)) => success.coloring,
                Ok(Err(report)) => {
                    let detail = serde_json::to_string(&report).expect("report serializes");
                    let message = format!("failed with palette {palette}: {detail}");
                    if palette >= guaranteed {
                        return Err(violation(message));
                    }
                    eprintln!("{message}");
                    return Ok(());
                }
                Err(e) => return Err(usage(e)),
            }
        }
    };
    if !verify_coloring(&h, &coloring).map_err(usage)?.is_empty() {
        return Err(violation("procedure produced an invalid coloring"));
    }
    write(out, &coloring.to_json())?;
    println!("colors_used {}", coloring.colors_used());
    Ok(())
}

fn verify(input: &Path, coloring_path: &Path) -> Result<(), Failure> {
    let h = load_instance(input)?;
    let coloring = Coloring::from_json(&read(coloring_path)?, h.num_vertices())
        .map_err(|e| usage(format!("{}: {e}", coloring_path.display())))?;
    let violations = verify_coloring(&h, &coloring).map_err(usage)?;
    if violations.is_empty() {
        println!("valid, {} colors", coloring.colors_used());
        return Ok(());
    }
    for v in &violations {
        println!("edge {}: vertices {} and {} share color {}", v.edge, v.u, v.w, v.color);
    }
    Err(violation(format!("{} violations", violations.len())))
}

fn exact(input: &Path, cap: usize) -> Result<(), Failure> {
    let h = load_instance(input)?;
    let chi = exact_chromatic(&h, cap).map_err(usage)?;
    println!("{chi}");
    Ok(())
}

fn sweep(config: &Path, out: &Path, seed: Option<u64>, sequential: bool) -> Result<(), Failure> {
    let config = SweepConfig::parse(&read(config)?).map_err(usage)?;
    let exec = if sequential { Execution::Sequential } else { Execution::default() };
    let report = run_sweep(&config, seed, exec).map_err(usage)?;
    let file = fs::File::create(out).map_err(|e| usage(format!("cannot write {}: {e}", out.display())))?;
    report.write_csv(std::io::BufWriter::new(file)).map_err(usage)?;
    println!(
        "{} records, {} guarantee violations, {} invalid colorings",
        report.records.len(),
        report.guarantee_violations,
        report.invalid_colorings
    );
    for (kind, procedure, ratio) in report.max_ratio_by_family() {
        println!("max colors_used/n  {kind} {procedure}  {ratio:.4}");
    }
    if report.guarantee_violations + report.invalid_colorings > 0 {
        return Err(violation("sweep found failures; see the CSV"));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Gen { kind, params, seed, out } => gen(kind, params, seed, &out),
        Command::Bound { n, r, csv } => bound(n, r, csv),
        Command::Color { input, procedure, palette, order, out } => {
            color(&input, procedure, palette, order.map(|o| o.0), &out)
        }
        Command::Verify { input, coloring } => verify(&input, &coloring),
        Command::Exact { input, cap } => exact(&input, cap),
        Command::Sweep { config, out, seed, sequential } => sweep(&config, &out, seed, sequential),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
