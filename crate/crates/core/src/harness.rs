//! Reproducible sweeps: a TOML config expands into a list of instances, each
//! instance is run through the requested procedures, and every run becomes one
//! CSV row.
//!
//! ```toml
//! seed = 7            # root seed, overridable from the command line
//! timing = false      # fill wall_time_ms (makes the CSV run-dependent)
//!
//! [[generator]]
//! kind = "random_regular_linear"
//! n = [20, 40]
//! r = [3, 4]
//! seeds = 5
//! procedures = ["greedy_recolor"]
//! ```
//!
//! Instances are enumerated in the order of the generator blocks, then the
//! cartesian product of the parameter lists (first parameter outermost), then
//! the seed index. Seeded kinds draw `derive_seed(root, k)` for the `k`-th
//! seeded instance of the whole sweep.

use std::collections::BTreeMap;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::coloring::{
    exact_chromatic, greedy_recolor, uniform_maxdeg_color, uniform_palette, verify_coloring,
    Coloring, GreedyOutcome, VertexOrder, DEFAULT_VERTEX_CAP,
};
use crate::error::SweepError;
use crate::exec::Execution;
use crate::generators::{GeneratorKind, GeneratorSpec};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Procedure {
    #[serde(alias = "greedy-recolor")]
    GreedyRecolor,
    #[serde(alias = "uniform-maxdeg")]
    UniformMaxdeg,
    Exact,
}

impl Procedure {
    pub fn name(self) -> &'static str {
        match self {
            Procedure::GreedyRecolor => "greedy_recolor",
            Procedure::UniformMaxdeg => "uniform_maxdeg",
            Procedure::Exact => "exact",
        }
    }
}

impl FromStr for Procedure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "greedy_recolor" => Ok(Procedure::GreedyRecolor),
            "uniform_maxdeg" => Ok(Procedure::UniformMaxdeg),
            "exact" => Ok(Procedure::Exact),
            other => Err(format!("unknown procedure {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorBlock {
    pub kind: GeneratorKind,
    #[serde(default)]
    pub q: Vec<u64>,
    #[serde(default)]
    pub n: Vec<u64>,
    #[serde(default)]
    pub r: Vec<u64>,
    #[serde(default)]
    pub rank: Vec<u64>,
    #[serde(default)]
    pub num_vertices: Vec<u64>,
    #[serde(default)]
    pub n_edges: Vec<u64>,
    #[serde(default)]
    pub force_high_degree: Vec<bool>,
    /// Instances per parameter combination for seeded kinds.
    #[serde(default = "one")]
    pub seeds: u64,
    pub procedures: Vec<Procedure>,
}

fn one() -> u64 {
    1
}

impl GeneratorBlock {
    /// Value lists in the kind's parameter order.
    fn axes(&self) -> Result<Vec<Vec<u64>>, SweepError> {
        let bools: Vec<u64> = self.force_high_degree.iter().map(|&b| b as u64).collect();
        let lookup = |name: &str| -> &[u64] {
            match name {
                "q" => &self.q,
                "n" => &self.n,
                "r" => &self.r,
                "rank" => &self.rank,
                "num_vertices" => &self.num_vertices,
                "n_edges" => &self.n_edges,
                _ => &[],
            }
        };
        let names = self.kind.param_names();
        let all = [
            ("q", self.q.len()),
            ("n", self.n.len()),
            ("r", self.r.len()),
            ("rank", self.rank.len()),
            ("num_vertices", self.num_vertices.len()),
            ("n_edges", self.n_edges.len()),
            ("force_high_degree", bools.len()),
        ];
        if let Some((extra, _)) = all.iter().find(|(k, len)| *len > 0 && !names.contains(k)) {
            return Err(SweepError::Config(format!(
                "{} does not take parameter {extra:?}",
                self.kind
            )));
        }
        names
            .iter()
            .map(|&name| {
                let values = if name == "force_high_degree" {
                    bools.clone()
                } else {
                    lookup(name).to_vec()
                };
                if values.is_empty() {
                    Err(SweepError::Config(format!("{} needs parameter {name:?}", self.kind)))
                } else {
                    Ok(values)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub timing: bool,
    #[serde(default)]
    pub generator: Vec<GeneratorBlock>,
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self, SweepError> {
        let config: SweepConfig = toml::from_str(text).map_err(|e| SweepError::Config(e.to_string()))?;
        for block in &config.generator {
            block.axes()?;
        }
        Ok(config)
    }
}

/// Seed for the `counter`-th seeded instance under `root` (SplitMix64 step).
pub fn derive_seed(root: u64, counter: u64) -> u64 {
    let mut z = root.wrapping_add(counter.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub spec: GeneratorSpec,
    pub procedures: Vec<Procedure>,
}

fn cartesian(axes: &[Vec<u64>]) -> Vec<Vec<u64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect()
    })
}

/// Expands the config into instance jobs in emission order.
pub fn plan(config: &SweepConfig, root_seed: u64) -> Result<Vec<Job>, SweepError> {
    let mut jobs = Vec::new();
    let mut counter = 0u64;
    for block in &config.generator {
        for params in cartesian(&block.axes()?) {
            let copies = if block.kind.is_seeded() { block.seeds } else { 1 };
            for _ in 0..copies {
                let seed = if block.kind.is_seeded() {
                    counter += 1;
                    derive_seed(root_seed, counter - 1)
                } else {
                    0
                };
                jobs.push(Job {
                    spec: GeneratorSpec::new(block.kind, params.clone(), seed),
                    procedures: block.procedures.clone(),
                });
            }
        }
    }
    Ok(jobs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Colored,
    Aborted,
    Failed,
}

/// One CSV row; field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub kind: GeneratorKind,
    pub params: String,
    pub seed: u64,
    pub n: usize,
    pub r_or_rank: Option<usize>,
    pub num_vertices: usize,
    pub palette_size: Option<u64>,
    pub procedure: &'static str,
    pub outcome: Outcome,
    pub colors_used: Option<usize>,
    pub budget_m: Option<u64>,
    pub case_limit: Option<f64>,
    pub ratio: Option<f64>,
    pub wall_time_ms: Option<f64>,
}

/// Per-run flags kept out of the CSV.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunFlags {
    /// Abort or failure on an instance inside the procedure's hypotheses.
    pub guarantee_violation: bool,
    /// A produced coloring failed verification.
    pub invalid_coloring: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepReport {
    pub records: Vec<ExperimentRecord>,
    pub guarantee_violations: usize,
    pub invalid_colorings: usize,
}

impl SweepReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), SweepError> {
        write_csv(&self.records, out)
    }

    /// Largest observed `colors_used / n` per (generator kind, procedure),
    /// sorted by kind and procedure name.
    pub fn max_ratio_by_family(&self) -> Vec<(GeneratorKind, &'static str, f64)> {
        let mut best: BTreeMap<(&'static str, &'static str), (GeneratorKind, f64)> = BTreeMap::new();
        for record in &self.records {
            let Some(ratio) = record.ratio else { continue };
            let entry = best
                .entry((record.kind.name(), record.procedure))
                .or_insert((record.kind, ratio));
            entry.1 = entry.1.max(ratio);
        }
        best.into_iter().map(|((_, procedure), (kind, ratio))| (kind, procedure, ratio)).collect()
    }
}

pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<(), SweepError> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    writer.write_record([
        "kind",
        "params",
        "seed",
        "n",
        "r_or_rank",
        "num_vertices",
        "palette_size",
        "procedure",
        "outcome",
        "colors_used",
        "budget_m",
        "case_limit",
        "ratio",
        "wall_time_ms",
    ])?;
    for record in records {
        writer.serialize(record)?;
    }
    writer.flush()?;
    Ok(())
}

/// `Some(r)` when `h` is linear and `r`-regular with `r >= 3`.
fn regular_linear_degree(h: &Hypergraph) -> Option<usize> {
    h.regularity().filter(|&r| r >= 3 && h.is_linear())
}

/// Runs one procedure on one instance.
pub fn run_procedure(
    spec: &GeneratorSpec,
    h: &Hypergraph,
    procedure: Procedure,
    timing: bool,
) -> (ExperimentRecord, RunFlags) {
    let n = h.size();
    let regular = regular_linear_degree(h);
    let mut record = ExperimentRecord {
        kind: spec.kind,
        params: spec.params_label(),
        seed: spec.seed,
        n,
        r_or_rank: h.regularity().or(h.uniform_rank()),
        num_vertices: h.num_vertices(),
        palette_size: None,
        procedure: procedure.name(),
        outcome: Outcome::Failed,
        colors_used: None,
        budget_m: None,
        case_limit: None,
        ratio: None,
        wall_time_ms: None,
    };
    let mut flags = RunFlags::default();
    let start = Instant::now();

    let produced: Option<Coloring> = match procedure {
        Procedure::GreedyRecolor => {
            let budget = regular.map(|r| bounds::color_budget(n as u64, r as u64).expect("n >= 1, r >= 3"));
            record.budget_m = budget;
            record.case_limit = regular.map(|r| bounds::case_limit(r as u64).expect("r >= 3"));
            let palette = budget.unwrap_or(n.max(1) as u64);
            record.palette_size = Some(palette);
            let order = VertexOrder::ById.resolve(h.num_vertices());
            match greedy_recolor(h, palette as u32, &order) {
                Ok(GreedyOutcome::Colored { coloring, .. }) => Some(coloring),
                Ok(GreedyOutcome::Aborted(_)) => {
                    record.outcome = Outcome::Aborted;
                    flags.guarantee_violation = budget.is_some();
                    None
                }
                Err(_) => None,
            }
        }
        Procedure::UniformMaxdeg => {
            let palette = uniform_palette(n) as u64;
            record.palette_size = Some(palette);
            record.budget_m = Some(palette);
            record.case_limit = Some(1.25);
            match uniform_maxdeg_color(h) {
                Ok(Ok(success)) => Some(success.coloring),
                Ok(Err(_)) => {
                    flags.guarantee_violation = true;
                    None
                }
                Err(_) => None,
            }
        }
        Procedure::Exact => match exact_chromatic(h, DEFAULT_VERTEX_CAP) {
            Ok(chi) => {
                record.outcome = Outcome::Colored;
                record.colors_used = Some(chi);
                None
            }
            Err(_) => None,
        },
    };

    if let Some(coloring) = produced {
        match verify_coloring(h, &coloring) {
            Ok(v) if v.is_empty() => {
                record.outcome = Outcome::Colored;
                record.colors_used = Some(coloring.colors_used());
            }
            _ => {
                record.outcome = Outcome::Failed;
                flags.invalid_coloring = true;
            }
        }
    }
    if let (Some(used), true) = (record.colors_used, n > 0) {
        record.ratio = Some(used as f64 / n as f64);
    }
    if timing {
        record.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    (record, flags)
}

/// Generates every instance and runs its procedures; rows come back in plan order.
pub fn run_jobs(jobs: &[Job], timing: bool, exec: Execution) -> Result<SweepReport, SweepError> {
    let per_job = exec.map(jobs, |job| -> Result<Vec<(ExperimentRecord, RunFlags)>, SweepError> {
        let h = job.spec.generate()?;
        Ok(job
            .procedures
            .iter()
            .map(|&p| run_procedure(&job.spec, &h, p, timing))
            .collect())
    });

    let mut report = SweepReport::default();
    for rows in per_job {
        for (record, flags) in rows? {
            report.guarantee_violations += flags.guarantee_violation as usize;
            report.invalid_colorings += flags.invalid_coloring as usize;
            report.records.push(record);
        }
    }
    Ok(report)
}

/// Plans and runs a sweep. `root_seed` overrides the config's `seed` when given.
pub fn run_sweep(config: &SweepConfig, root_seed: Option<u64>, exec: Execution) -> Result<SweepReport, SweepError> {
    let jobs = plan(config, root_seed.unwrap_or(config.seed))?;
    run_jobs(&jobs, config.timing, exec)
}
