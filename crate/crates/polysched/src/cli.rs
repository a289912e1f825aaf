//! Subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use polysched_core::convert::{dps_to_ops, ops_to_dps};
use polysched_core::density::{density_bounds, poly_density_ops, DEFAULT_EDGE_LIMIT};
use polysched_core::instances::{
    gen_disjoint_stars, gen_kn_adversarial, gen_random, gen_random_cnf, gen_satisfiable_cnf, RandomInstance,
    RandomParams, Weights,
};
use polysched_core::oracle::{dps_feasible, optimal_heat, Feasibility, DEFAULT_GUARD, DEFAULT_NODE_BUDGET};
use polysched_core::reduction::{
    build_polycule, check_structure, is_slot_respecting, parse_dimacs, verify_gadget_lemmas, witness_schedule,
    Assignment,
};
use polysched_core::schedule::{gstar, heat, validate_dps};
use polysched_core::schedulers::{
    color_edges, color_schedule, compact, default_horizon, polygreedy, reduce_fastest, schedule_low_density, RfConfig,
};
use polysched_core::{OpsInstance, Rational, Schedule};
use rayon::prelude::*;
use serde::Serialize;

use crate::exit::{CliResult, Failure};
use crate::formats::{
    format_rational, parse_rational, read_instance, read_schedule, to_json, DensityReportFile, GadgetMap,
    HeatReportFile, Instance, InstanceFile, ScheduleFile, StructureSummary,
};
use crate::manifest::{sidecar, Recorder};

#[derive(Debug, Parser, Serialize)]
#[command(name = "polysched", version, about = "Polyamorous scheduling toolkit")]
#[command(after_help = "Exit codes: 0 success, 1 verification failure, 2 usage or bad input, 3 refused by a guard \
or scheduler precondition. POLYSCHED_GUARD overrides the oracle state-space guard.")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// Generate instances and formulas.
    #[command(subcommand)]
    Gen(Gen),
    /// Convert between OPS and DPS instances.
    Convert(ConvertArgs),
    /// Run a scheduler and verify its output.
    Run(RunArgs),
    /// Poly density with its LP witnesses, or just the G* bounds.
    Density(DensityArgs),
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(Oracle),
    /// Compile a 3-CNF formula into a DPS polycule.
    Reduce(ReduceArgs),
    /// Check a schedule against an instance.
    Verify(VerifyArgs),
    /// Heuristic heats against G* and the optimum, as CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Gen {
    /// Disjoint stars; star i has i edges of growth 1/i.
    Stars {
        #[arg(long)]
        d: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Complete graph K_n with uniform growth and the adversarial tie order.
    Kn {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Where to write the tie order as a JSON list of edge indices.
        #[arg(long)]
        tie_order_out: Option<PathBuf>,
    },
    /// Seeded random instance.
    Random(RandomArgs),
    /// Seeded random 3-CNF formula in DIMACS form.
    Cnf {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        clauses: usize,
        /// Keep drawing until the formula is satisfiable.
        #[arg(long)]
        satisfiable: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Where to write a satisfying assignment (with --satisfiable).
        #[arg(long, requires = "satisfiable")]
        assignment_out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
pub enum KindArg {
    Ops,
    Dps,
}

#[derive(Debug, Args, Serialize)]
pub struct RandomArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub people: usize,
    #[arg(long, default_value_t = 0.5)]
    pub edge_prob: f64,
    #[arg(long, value_enum, default_value = "ops")]
    pub kind: KindArg,
    /// Smallest integer growth rate or frequency.
    #[arg(long, default_value_t = 1)]
    pub min: u64,
    /// Largest integer growth rate or frequency.
    #[arg(long, default_value_t = 10)]
    pub max: u64,
    /// Scale OPS growth so that G* = 1.
    #[arg(long)]
    pub normalize: bool,
    /// DPS frequencies 2^k with k in [min-exp, max-exp].
    #[arg(long)]
    pub pow2: bool,
    #[arg(long, default_value_t = 1)]
    pub min_exp: u32,
    #[arg(long, default_value_t = 6)]
    pub max_exp: u32,
    /// Cap on local density (DPS) or on G* (OPS), e.g. 1/4.
    #[arg(long)]
    pub cap: Option<String>,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
pub enum ToKind {
    Ops,
    Dps,
}

#[derive(Debug, Args, Serialize)]
pub struct ConvertArgs {
    #[arg(long, value_enum)]
    pub to: ToKind,
    /// Target heat h for OPS to DPS: f = floor(h / g).
    #[arg(long)]
    pub heat: Option<String>,
    pub input: PathBuf,
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize, PartialEq, Eq)]
pub enum Scheduler {
    Rf,
    Polygreedy,
    Lowdensity,
    Colorrr,
    Compact,
}

#[derive(Debug, Args, Serialize)]
pub struct RunArgs {
    #[arg(value_enum)]
    pub scheduler: Scheduler,
    pub input: PathBuf,
    /// Schedule output; reports go to sidecar files next to it.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Reduce-Fastest threshold multiplier.
    #[arg(long, default_value = "4")]
    pub x: String,
    /// Reduce-Fastest days to simulate; defaults to ten times the slowest climb to (x+2)G*.
    #[arg(long)]
    pub horizon: Option<u64>,
    /// JSON list of edge indices used to break growth-rate ties.
    #[arg(long)]
    pub tie_order: Option<PathBuf>,
    /// Arbitrary schedule to compact.
    #[arg(long)]
    pub input_schedule: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct DensityArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub bounds_only: bool,
    #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
    pub edge_limit: usize,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Oracle {
    /// Decide DPS feasibility; writes a witness schedule when feasible.
    Feasible {
        input: PathBuf,
        #[arg(long, env = "POLYSCHED_GUARD", default_value_t = DEFAULT_GUARD)]
        guard: u128,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Optimal OPS heat by search over candidate heats.
    OptimalHeat {
        input: PathBuf,
        #[arg(long, env = "POLYSCHED_GUARD", default_value_t = DEFAULT_GUARD)]
        guard: u128,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Enumerate every gadget's local schedules and check its lemma.
    GadgetVerify {
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct ReduceArgs {
    /// DIMACS CNF file.
    pub formula: PathBuf,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Assignment file, one `±var` per line.
    #[arg(long)]
    pub witness: Option<PathBuf>,
    /// Where to write the witness schedule.
    #[arg(long, requires = "witness")]
    pub witness_out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    pub instance: PathBuf,
    pub schedule: PathBuf,
    /// For OPS instances, fail if the heat exceeds this.
    #[arg(long)]
    pub max_heat: Option<String>,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct BenchArgs {
    /// Instance files.
    pub instances: Vec<PathBuf>,
    /// Also bench disjoint stars d = 1..=D.
    #[arg(long)]
    pub stars: Option<usize>,
    #[arg(long, default_value = "4")]
    pub x: String,
    #[arg(long, env = "POLYSCHED_GUARD", default_value_t = DEFAULT_GUARD)]
    pub guard: u128,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

/// Parses `argv` (without the program name) and runs it.
pub fn run(cli: Cli, argv: &[String]) -> CliResult {
    let params = serde_json::to_value(&cli.command).map_err(|e| Failure::Internal(e.into()))?;
    let mut rec = Recorder::default();
    let (name, seed) = match &cli.command {
        Command::Gen(g) => ("gen", gen(g, &mut rec)?),
        Command::Convert(a) => ("convert", convert(a, &mut rec).map(|_| None)?),
        Command::Run(a) => ("run", run_scheduler(a, &mut rec).map(|_| None)?),
        Command::Density(a) => ("density", density(a, &mut rec).map(|_| None)?),
        Command::Oracle(o) => ("oracle", oracle(o, &mut rec).map(|_| None)?),
        Command::Reduce(a) => ("reduce", reduce(a, &mut rec).map(|_| None)?),
        Command::Verify(a) => ("verify", verify(a, &mut rec).map(|_| None)?),
        Command::Bench(a) => ("bench", bench(a, &mut rec).map(|_| None)?),
    };
    rec.finish(name, argv, params, seed)?;
    Ok(())
}

fn rational_arg(s: &str, what: &str) -> CliResult<Rational> {
    parse_rational(s).with_context(|| format!("--{what}")).map_err(Failure::Usage)
}

fn instance_text(inst: &Instance) -> CliResult<String> {
    Ok(to_json(&InstanceFile::from_instance(inst))?)
}

fn gen(g: &Gen, rec: &mut Recorder) -> CliResult<Option<u64>> {
    match g {
        Gen::Stars { d, out } => {
            let inst = Instance::Ops(gen_disjoint_stars(*d)?);
            rec.emit(out.as_deref(), &instance_text(&inst)?)?;
            Ok(None)
        }
        Gen::Kn { n, out, tie_order_out } => {
            let (inst, order) = gen_kn_adversarial(*n)?;
            rec.emit(out.as_deref(), &instance_text(&Instance::Ops(inst))?)?;
            if let Some(p) = tie_order_out {
                let text = to_json(&order)?;
                fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
                rec.emit(None, "")?;
            }
            Ok(None)
        }
        Gen::Random(a) => {
            let weights = match (a.kind, a.pow2) {
                (KindArg::Ops, false) => Weights::Growth { min: a.min, max: a.max, normalize: a.normalize },
                (KindArg::Dps, false) => Weights::Frequency { min: a.min, max: a.max },
                (KindArg::Dps, true) => Weights::PowerOfTwo { min_exp: a.min_exp, max_exp: a.max_exp },
                (KindArg::Ops, true) => return Err(Failure::Usage(anyhow!("--pow2 needs --kind dps"))),
            };
            let mut params = RandomParams::new(a.people, a.edge_prob, weights);
            if let Some(cap) = &a.cap {
                params = params.with_cap(rational_arg(cap, "cap")?);
            }
            let inst = match gen_random(a.seed, &params)? {
                RandomInstance::Ops(i) => Instance::Ops(i),
                RandomInstance::Dps(i) => Instance::Dps(i),
            };
            rec.emit(a.out.as_deref(), &instance_text(&inst)?)?;
            Ok(Some(a.seed))
        }
        Gen::Cnf { seed, vars, clauses, satisfiable, out, assignment_out } => {
            let (phi, assignment) = if *satisfiable {
                let (phi, a) = gen_satisfiable_cnf(*seed, *vars, *clauses)?;
                (phi, Some(a))
            } else {
                (gen_random_cnf(*seed, *vars, *clauses)?, None)
            };
            rec.emit(out.as_deref(), &phi.to_dimacs())?;
            if let (Some(p), Some(a)) = (assignment_out, assignment) {
                let text: String = a
                    .values
                    .iter()
                    .enumerate()
                    .map(|(v, &b)| format!("{}{}\n", if b { "" } else { "-" }, v + 1))
                    .collect();
                fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(Some(*seed))
        }
    }
}

fn load(path: &Path, rec: &mut Recorder) -> CliResult<Instance> {
    rec.input(path);
    Ok(read_instance(path)?)
}

fn convert(a: &ConvertArgs, rec: &mut Recorder) -> CliResult {
    let inst = load(&a.input, rec)?;
    let out = match (a.to, &inst) {
        (ToKind::Dps, Instance::Ops(ops)) => {
            let h = a.heat.as_deref().ok_or_else(|| Failure::Usage(anyhow!("--to dps needs --heat")))?;
            Instance::Dps(ops_to_dps(ops, &rational_arg(h, "heat")?)?)
        }
        (ToKind::Ops, Instance::Dps(dps)) => Instance::Ops(dps_to_ops(dps)),
        (ToKind::Dps, Instance::Dps(_)) | (ToKind::Ops, Instance::Ops(_)) => inst.clone(),
    };
    rec.emit(a.output.as_deref(), &instance_text(&out)?)?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct RfReport {
    x: String,
    horizon: u64,
    gstar: String,
    max_heat_seen: String,
    day_of_max: u64,
    warning: Option<String>,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    valid: bool,
    violations: Vec<String>,
    heat: Option<HeatReportFile>,
}

/// Shared by `run` and `verify`: DPS schedules must be valid, OPS schedules must be
/// matchings covering every edge, with heat at most `max_heat` if given.
fn check(inst: &Instance, s: &Schedule, max_heat: Option<&Rational>) -> CliResult<VerifyReport> {
    let ops = inst.to_ops();
    let mut violations: Vec<String> = match inst {
        Instance::Dps(d) => validate_dps(s, d).iter().map(ToString::to_string).collect(),
        Instance::Ops(_) => Vec::new(),
    };
    let report = match heat(s, &ops) {
        Ok(r) => {
            if let Instance::Ops(_) = inst {
                match (&r.heat, max_heat) {
                    (None, _) => violations.push("some edge is never scheduled".into()),
                    (Some(h), Some(cap)) if h > cap => violations.push(format!("heat {h} exceeds {cap}")),
                    _ => {}
                }
            }
            Some(HeatReportFile::new(&r, &gstar(&ops)?))
        }
        Err(e) => {
            if let Instance::Ops(_) = inst {
                violations.push(e.to_string());
            }
            None
        }
    };
    Ok(VerifyReport { valid: violations.is_empty(), violations, heat: report })
}

fn require_ops<'a>(inst: &'a Instance, what: &str) -> CliResult<&'a OpsInstance> {
    match inst {
        Instance::Ops(o) => Ok(o),
        Instance::Dps(_) => Err(Failure::Usage(anyhow!("{what} needs an ops instance"))),
    }
}

fn run_scheduler(a: &RunArgs, rec: &mut Recorder) -> CliResult {
    let inst = load(&a.input, rec)?;
    if a.scheduler == Scheduler::Rf {
        let ops = require_ops(&inst, "rf")?;
        let x = rational_arg(&a.x, "x")?;
        let horizon = match a.horizon {
            Some(h) => h,
            None => default_horizon(ops, &x)?,
        };
        let mut cfg = RfConfig::new(x.clone(), horizon);
        if let Some(p) = &a.tie_order {
            rec.input(p);
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let order: Vec<usize> = serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
            cfg = cfg.with_tie_order(order);
        }
        if let Some(w) = cfg.warning() {
            eprintln!("warning: {w}");
        }
        let trace = reduce_fastest(ops, &cfg)?;
        let s = Schedule::new(trace.schedule_prefix.clone())?;
        s.check_matchings(ops.graph()).map_err(|e| Failure::Verification(e.to_string()))?;
        let report = RfReport {
            x: format_rational(&x),
            horizon,
            gstar: format_rational(&gstar(ops)?),
            max_heat_seen: format_rational(&trace.max_heat_seen),
            day_of_max: trace.day_of_max,
            warning: cfg.warning().map(str::to_string),
        };
        write_run_outputs(rec, a.out.as_deref(), &s, &report)?;
        return Ok(());
    }
    let s = match a.scheduler {
        Scheduler::Polygreedy => polygreedy(require_dps(&inst, "polygreedy")?)?,
        Scheduler::Lowdensity => schedule_low_density(require_dps(&inst, "lowdensity")?)?,
        Scheduler::Colorrr => color_schedule(&color_edges(inst.graph())),
        Scheduler::Compact => {
            let ops = require_ops(&inst, "compact")?;
            let p =
                a.input_schedule.as_deref().ok_or_else(|| Failure::Usage(anyhow!("compact needs --input-schedule")))?;
            rec.input(p);
            let sa = read_schedule(p)?;
            compact(ops, sa.days())?.schedule
        }
        Scheduler::Rf => unreachable!("handled above"),
    };
    let report = check(&inst, &s, None)?;
    write_run_outputs(rec, a.out.as_deref(), &s, &report)?;
    if !report.valid {
        return Err(Failure::Verification(report.violations.join("; ")));
    }
    Ok(())
}

fn require_dps<'a>(inst: &'a Instance, what: &str) -> CliResult<&'a polysched_core::DpsInstance> {
    match inst {
        Instance::Dps(d) => Ok(d),
        Instance::Ops(_) => Err(Failure::Usage(anyhow!("{what} needs a dps instance"))),
    }
}

fn write_run_outputs<R: Serialize>(rec: &mut Recorder, out: Option<&Path>, s: &Schedule, report: &R) -> CliResult {
    rec.emit(out, &to_json(&ScheduleFile::from_schedule(s))?)?;
    let text = to_json(report)?;
    match out {
        Some(p) => rec.emit(Some(&sidecar(p, "report.json")), &text)?,
        None => eprint!("{text}"),
    }
    Ok(())
}

fn density(a: &DensityArgs, rec: &mut Recorder) -> CliResult {
    let ops = load(&a.input, rec)?.to_ops();
    let file = if a.bounds_only {
        let (lo, hi) = density_bounds(&ops)?;
        DensityReportFile::bounds(&lo, &hi)
    } else {
        DensityReportFile::full(&poly_density_ops(&ops, a.edge_limit)?)
    };
    rec.emit(a.out.as_deref(), &to_json(&file)?)?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct FeasibleReport {
    feasible: bool,
    schedule: Option<ScheduleFile>,
}

#[derive(Debug, Serialize)]
struct OptimalReport {
    heat: String,
    probes: usize,
    schedule: ScheduleFile,
}

#[derive(Debug, Serialize)]
struct LemmaRecord {
    gadget: String,
    case: String,
    schedules: usize,
    holds: bool,
}

fn oracle(o: &Oracle, rec: &mut Recorder) -> CliResult {
    match o {
        Oracle::Feasible { input, guard, out } => {
            let inst = load(input, rec)?;
            let dps = require_dps(&inst, "oracle feasible")?;
            let report = match dps_feasible(dps, *guard) {
                Feasibility::Feasible(s) => {
                    FeasibleReport { feasible: true, schedule: Some(ScheduleFile::from_schedule(&s)) }
                }
                Feasibility::Infeasible => FeasibleReport { feasible: false, schedule: None },
                Feasibility::Refused { size, guard } => {
                    return Err(Failure::Refused(format!("state space {size} exceeds the guard {guard}")))
                }
            };
            rec.emit(out.as_deref(), &to_json(&report)?)?;
        }
        Oracle::OptimalHeat { input, guard, out } => {
            let ops = load(input, rec)?.to_ops();
            let r = optimal_heat(&ops, *guard)?;
            let report = OptimalReport {
                heat: format_rational(&r.heat),
                probes: r.probes,
                schedule: ScheduleFile::from_schedule(&r.schedule),
            };
            rec.emit(out.as_deref(), &to_json(&report)?)?;
        }
        Oracle::GadgetVerify { budget, out } => {
            let cases = verify_gadget_lemmas(*budget)?;
            let records: Vec<LemmaRecord> = cases
                .iter()
                .map(|c| LemmaRecord {
                    gadget: c.gadget.into(),
                    case: c.case.clone(),
                    schedules: c.schedules,
                    holds: c.holds,
                })
                .collect();
            rec.emit(out.as_deref(), &to_json(&records)?)?;
            let failed: Vec<String> =
                cases.iter().filter(|c| !c.holds).map(|c| format!("{} / {}", c.gadget, c.case)).collect();
            if !failed.is_empty() {
                return Err(Failure::Verification(failed.join("; ")));
            }
        }
    }
    Ok(())
}

fn reduce(a: &ReduceArgs, rec: &mut Recorder) -> CliResult {
    rec.input(&a.formula);
    let text = fs::read_to_string(&a.formula).with_context(|| format!("reading {}", a.formula.display()))?;
    let phi = parse_dimacs(&text).with_context(|| format!("parsing {}", a.formula.display()))?;
    let g = build_polycule(&phi)?;
    let structure = check_structure(&g);
    rec.emit(a.out.as_deref(), &instance_text(&Instance::Dps(g.dps.clone()))?)?;
    let map = GadgetMap::new(&g, &structure);
    match a.out.as_deref() {
        Some(p) => rec.emit(Some(&sidecar(p, "gadgets.json")), &to_json(&map)?)?,
        None => eprint!("{}", to_json(&StructureSummary::new(&structure))?),
    }
    if !structure.passed() {
        return Err(Failure::Verification(structure.failures.join("; ")));
    }
    if let Some(wp) = &a.witness {
        rec.input(wp);
        let text = fs::read_to_string(wp).with_context(|| format!("reading {}", wp.display()))?;
        let assignment = Assignment::parse(&text, phi.num_vars).with_context(|| format!("parsing {}", wp.display()))?;
        let s = match witness_schedule(&g, &assignment) {
            Ok(s) => s,
            Err(e @ polysched_core::Error::UnsatisfiedClause { .. }) => {
                return Err(Failure::Verification(e.to_string()))
            }
            Err(e) => return Err(e.into()),
        };
        if !validate_dps(&s, &g.dps).is_empty() || !is_slot_respecting(&g, &s) {
            return Err(Failure::Verification("witness schedule does not validate".into()));
        }
        rec.emit(a.witness_out.as_deref(), &to_json(&ScheduleFile::from_schedule(&s))?)?;
    }
    Ok(())
}

fn verify(a: &VerifyArgs, rec: &mut Recorder) -> CliResult {
    let inst = load(&a.instance, rec)?;
    rec.input(&a.schedule);
    let s = read_schedule(&a.schedule)?;
    let cap = a.max_heat.as_deref().map(|h| rational_arg(h, "max-heat")).transpose()?;
    let report = check(&inst, &s, cap.as_ref())?;
    rec.emit(a.out.as_deref(), &to_json(&report)?)?;
    if !report.valid {
        for v in &report.violations {
            eprintln!("{v}");
        }
        return Err(Failure::Verification(format!("{} violations", report.violations.len())));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct BenchRow {
    instance: String,
    edges: usize,
    heuristic: &'static str,
    heat: String,
    gstar: String,
    optimal: String,
    ratio: String,
    ratio_gstar: String,
    ratio_float: String,
}

fn ratio_text(a: &Option<Rational>, b: &Option<Rational>) -> String {
    match (a, b) {
        (Some(a), Some(b)) => format_rational(&(a / b)),
        _ => String::new(),
    }
}

fn bench_rows(name: &str, ops: &OpsInstance, x: &Rational, guard: u128) -> polysched_core::Result<Vec<BenchRow>> {
    use num_traits::ToPrimitive;
    let gs = gstar(ops)?;
    let optimal = match optimal_heat(ops, guard) {
        Ok(r) => Some(r.heat),
        Err(polysched_core::Error::Refused { .. }) => None,
        Err(e) => return Err(e),
    };
    let trace = reduce_fastest(ops, &RfConfig::new(x.clone(), default_horizon(ops, x)?))?;
    let rr = heat(&color_schedule(&color_edges(ops.graph())), ops)?.heat;
    let compacted = compact(ops, &trace.schedule_prefix).ok().map(|c| c.heat);
    let mut rows = Vec::new();
    for (heuristic, h) in [("rf", Some(trace.max_heat_seen)), ("colorrr", rr), ("compact", compacted)] {
        let gs_opt = Some(gs.clone());
        let main = if optimal.is_some() { ratio_text(&h, &optimal) } else { String::new() };
        let float = match (&h, &optimal) {
            (Some(h), Some(o)) => (h / o).to_f64().map(|v| format!("{v:.6}")).unwrap_or_default(),
            _ => String::new(),
        };
        rows.push(BenchRow {
            instance: name.to_string(),
            edges: ops.num_edges(),
            heuristic,
            heat: h.as_ref().map(format_rational).unwrap_or_default(),
            gstar: format_rational(&gs),
            optimal: optimal.as_ref().map(format_rational).unwrap_or_default(),
            ratio: main,
            ratio_gstar: ratio_text(&h, &gs_opt),
            ratio_float: float,
        });
    }
    Ok(rows)
}

fn bench(a: &BenchArgs, rec: &mut Recorder) -> CliResult {
    let x = rational_arg(&a.x, "x")?;
    let mut corpus: Vec<(String, OpsInstance)> = Vec::new();
    for d in 1..=a.stars.unwrap_or(0) {
        corpus.push((format!("stars-{d}"), gen_disjoint_stars(d)?));
    }
    for p in &a.instances {
        corpus.push((p.display().to_string(), load(p, rec)?.to_ops()));
    }
    if corpus.is_empty() {
        return Err(Failure::Usage(anyhow!("nothing to bench: pass instance files or --stars")));
    }
    let results: Vec<polysched_core::Result<Vec<BenchRow>>> =
        corpus.par_iter().map(|(name, ops)| bench_rows(name, ops, &x, a.guard)).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    for rows in results {
        for row in rows? {
            w.serialize(row).map_err(|e| Failure::Internal(e.into()))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure::Internal(anyhow!("{e}")))?;
    let text = String::from_utf8(bytes).map_err(|e| Failure::Internal(e.into()))?;
    rec.emit(a.out.as_deref(), &text)?;
    Ok(())
}
