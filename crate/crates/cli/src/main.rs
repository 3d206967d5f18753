//! `hscp`: batch driver for instance generation, the four staffing models,
//! MCO, C&CG experiments, out-of-sample evaluation and CPU reports.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hscp_core::dro_fa::{self, CcgOptions};
use hscp_core::evaluate::{evaluate_out_of_sample, make_eval_samples, SetKind, DEFAULT_EVAL_SAMPLES};
use hscp_core::instance::{generate_instance, HorizonKind, InstanceTemplate};
use hscp_core::mco::{run_mco, McoOptions, SpKind};
use hscp_core::models::{solve_model, ModelKind, ModelOptions};
use hscp_core::scenario::{generate_spec, DemandRange};
use hscp_core::seed::SeedStream;
use hscp_core::sweep::{self, SweepAxis};
use hscp_core::{Instance, UncertaintySpec};

/// Version tag written into every manifest; bump when CSV columns change.
const OUTPUT_SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "hscp", version, about = "Home-care staffing under demand uncertainty")]
struct Cli {
    /// Root seed; every random stream is derived from it by labeled splitting.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads for replications, sweeps and subproblems.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory (created if missing).
    #[arg(long, short, global = true, default_value = "out")]
    out: PathBuf,
    /// Log progress to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a benchmark instance and its demand specification.
    Gen {
        #[arg(long)]
        template: u32,
        #[arg(long, value_enum, default_value_t = Range::Base)]
        range: Range,
        /// Horizon in days; 30, 90 or 180.
        #[arg(long, default_value_t = 30)]
        days: usize,
    },
    /// Solve one model.
    Solve {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        #[command(flatten)]
        model_opts: ModelArgs,
    },
    /// Monte Carlo optimization of an SAA sample size.
    Mco {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        #[arg(long, default_value_t = 10)]
        n0: usize,
        #[arg(long, default_value_t = 10)]
        replications: usize,
        #[arg(long, default_value_t = 1000)]
        n_eval: usize,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = 5120)]
        max_n: usize,
    },
    /// Column-and-constraint generation for the FA worst-case model.
    Ccg {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_enum, default_value_t = OnOff::On)]
        valid_ineq: OnOff,
        #[arg(long, default_value_t = 0.02)]
        epsilon: f64,
        #[arg(long, default_value_t = 500)]
        max_iterations: usize,
        #[arg(long, default_value_t = 7200.0)]
        time_limit: f64,
        /// Width of the multiplier boxes relative to the proven ones when
        /// the inequalities are off.
        #[arg(long)]
        box_factor: Option<f64>,
    },
    /// Out-of-sample evaluation of a model's first-stage plan.
    Eval {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        set: u8,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[arg(long, default_value_t = DEFAULT_EVAL_SAMPLES)]
        samples: usize,
        #[command(flatten)]
        model_opts: ModelArgs,
    },
    /// Headcount over a grid of flat penalties.
    Sweep {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        /// Comma-separated under-staffing penalties.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        cu: Vec<f64>,
        /// Comma-separated over-staffing penalties.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        co: Vec<f64>,
        #[command(flatten)]
        model_opts: ModelArgs,
    },
    /// Min/Avg/Max CPU per instance and model from result CSVs.
    Report {
        /// Directories or CSV files to aggregate.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct DataArgs {
    /// Instance JSON written by `gen`.
    #[arg(long, conflicts_with = "template")]
    instance: Option<PathBuf>,
    /// Demand specification JSON; generated from the instance when absent.
    #[arg(long, requires = "instance")]
    spec: Option<PathBuf>,
    /// Generate the instance from a benchmark row instead of reading a file.
    #[arg(long)]
    template: Option<u32>,
    #[arg(long, value_enum, default_value_t = Range::Base)]
    range: Range,
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    /// SAA sample size.
    #[arg(long, default_value_t = 100)]
    scenarios: usize,
    /// Relative MIP gap; per-model default when absent.
    #[arg(long)]
    gap: Option<f64>,
    #[arg(long)]
    time_limit: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Range {
    Base,
    Wide,
}

impl From<Range> for DemandRange {
    fn from(r: Range) -> Self {
        match r {
            Range::Base => DemandRange::Base,
            Range::Wide => DemandRange::Wide,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OnOff {
    On,
    Off,
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse().map_err(|e: hscp_core::Error| e.to_string())
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
    Solver(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Solver(m) => write!(f, "solver error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<hscp_core::Error> for CliError {
    fn from(e: hscp_core::Error) -> Self {
        use hscp_core::Error as E;
        match e {
            E::Io { path, source } => CliError::Io(format!("{}: {source}", path.display())),
            E::Csv(_) => CliError::Io(e.to_string()),
            E::Model(_) | E::Solver { .. } => CliError::Solver(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Run record: everything needed to reproduce the outputs. Timings are
/// kept out of it so reruns produce identical manifests.
#[derive(Serialize)]
struct Manifest {
    schema: u32,
    tool_version: &'static str,
    command: String,
    args: Vec<String>,
    root_seed: u64,
    streams: BTreeMap<String, u64>,
    instance: Option<String>,
    outputs: Vec<String>,
}

struct Run {
    out: PathBuf,
    seed: u64,
    threads: Option<usize>,
    manifest: Manifest,
    started: Instant,
}

impl Run {
    fn stream(&mut self, label: &str) -> u64 {
        let v = SeedStream::new(self.seed).child(label).value();
        self.manifest.streams.insert(label.to_string(), v);
        v
    }

    fn path(&mut self, name: &str) -> PathBuf {
        self.manifest.outputs.push(name.to_string());
        self.out.join(name)
    }

    fn write_json(&mut self, name: &str, value: &impl Serialize) -> CliResult<()> {
        let path = self.path(name);
        let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
        fs::write(&path, text + "\n").map_err(|e| io_err(&path, e))
    }

    fn write_csv<R: Serialize>(&mut self, name: &str, rows: &[R]) -> CliResult<()> {
        let path = self.path(name);
        let mut w = csv::Writer::from_path(&path).map_err(|e| io_err(&path, e))?;
        for r in rows {
            w.serialize(r).map_err(|e| io_err(&path, e))?;
        }
        w.flush().map_err(|e| io_err(&path, e))
    }

    fn finish(mut self) -> CliResult<()> {
        let manifest_path = self.out.join("manifest.json");
        self.manifest.outputs.sort();
        let text = serde_json::to_string_pretty(&self.manifest).map_err(|e| CliError::Io(e.to_string()))?;
        fs::write(&manifest_path, text + "\n").map_err(|e| io_err(&manifest_path, e))?;
        // Wall-clock facts go to a sidecar so the manifest stays reproducible.
        let log_path = self.out.join("run.log");
        let stamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let line = format!(
            "finished_unix={stamp} command={} elapsed_s={:.3} threads={:?}\n",
            self.manifest.command,
            self.started.elapsed().as_secs_f64(),
            self.threads
        );
        let mut log = fs::read_to_string(&log_path).unwrap_or_default();
        log.push_str(&line);
        fs::write(&log_path, log).map_err(|e| io_err(&log_path, e))
    }
}

/// Instance, demand spec and a label for result rows.
fn load_data(run: &mut Run, data: &DataArgs) -> CliResult<(Instance, UncertaintySpec, String)> {
    let (inst, label) = match (&data.instance, data.template) {
        (Some(path), _) => {
            let inst = Instance::load(path)?;
            let label = inst.id.clone();
            (inst, label)
        }
        (None, Some(id)) => {
            let template = InstanceTemplate::benchmark(id)?;
            let seed = run.stream("instance");
            (generate_instance(&template, HorizonKind::Monthly, seed), format!("T{id}"))
        }
        (None, None) => return Err(CliError::Usage("pass --instance PATH or --template N".into())),
    };
    let spec = match &data.spec {
        Some(path) => UncertaintySpec::load(path)?,
        None => {
            let seed = run.stream("spec");
            generate_spec(&inst, data.range.into(), seed)
        }
    };
    spec.check_dims(&inst)?;
    run.manifest.instance = Some(label.clone());
    Ok((inst, spec, label))
}

fn model_options(run: &mut Run, args: &ModelArgs, kind: ModelKind) -> CliResult<ModelOptions> {
    if args.scenarios == 0 {
        return Err(CliError::Usage("--scenarios must be positive".into()));
    }
    let mut opts = ModelOptions {
        n_scenarios: args.scenarios,
        seed: run.stream("model"),
        ..Default::default()
    };
    if args.gap.is_some() || args.time_limit.is_some() {
        let mut s = match kind {
            ModelKind::FSp => hscp_core::SolverOptions::fa_saa_default(),
            _ => hscp_core::SolverOptions::sp_default(),
        };
        if let Some(g) = args.gap {
            s = s.with_gap(g);
        }
        if let Some(t) = args.time_limit {
            s.time_limit = t;
            opts.ccg.time_limit = t;
        }
        opts.solver = Some(s);
    }
    if let Some(n) = run.threads {
        opts.ccg.threads = n as u32;
    }
    Ok(opts)
}

#[derive(Serialize)]
struct SolveRow {
    instance: String,
    model: String,
    seed: u64,
    headcount: u32,
    x: String,
    objective: f64,
    first_stage_cost: f64,
    wall_time: f64,
}

fn join_x(x: &[u32]) -> String {
    x.iter().map(u32::to_string).collect::<Vec<_>>().join(";")
}

fn cmd_gen(run: &mut Run, template: u32, range: Range, days: usize) -> CliResult<()> {
    if ![30, 90, 180].contains(&days) {
        return Err(CliError::Usage(format!("--days must be 30, 90 or 180, got {days}")));
    }
    let t = InstanceTemplate::benchmark(template)?;
    let t = if days == t.n_days { t } else { t.clone().with_dims(t.n_services, t.n_types, days) };
    let inst = generate_instance(&t, HorizonKind::from_days(days), run.stream("instance"));
    let spec = generate_spec(&inst, range.into(), run.stream("spec"));
    let stem = format!("instance_t{template}_s{}", run.seed);
    let path = run.path(&format!("{stem}.json"));
    inst.save(&path)?;
    let spec_path = run.path(&format!("{stem}_spec.json"));
    spec.save(&spec_path)?;
    run.manifest.instance = Some(stem);
    println!(
        "wrote {} (L={}, K={}, T={})",
        path.display(),
        inst.n_services,
        inst.n_types,
        inst.n_days
    );
    Ok(())
}

fn cmd_solve(run: &mut Run, data: &DataArgs, kind: ModelKind, args: &ModelArgs) -> CliResult<()> {
    let (inst, spec, label) = load_data(run, data)?;
    let opts = model_options(run, args, kind)?;
    let out = solve_model(&inst, &spec, kind, &opts)?;
    let row = SolveRow {
        instance: label,
        model: kind.name().into(),
        seed: run.seed,
        headcount: out.plan.headcount(),
        x: join_x(out.plan.x()),
        objective: out.objective,
        first_stage_cost: out.plan.first_stage_cost(),
        wall_time: out.wall_time,
    };
    println!(
        "{}: objective {:.2}, headcount {} [{}], {:.2}s",
        row.model, row.objective, row.headcount, row.x, row.wall_time
    );
    run.write_csv(&format!("solve_{}.csv", kind.name()), &[row])?;
    run.write_json(&format!("solution_{}.json", kind.name()), &out.plan)
}

#[allow(clippy::too_many_arguments)]
fn cmd_mco(
    run: &mut Run,
    data: &DataArgs,
    kind: ModelKind,
    n0: usize,
    replications: usize,
    n_eval: usize,
    epsilon: f64,
    max_n: usize,
) -> CliResult<()> {
    let sp_kind = match kind {
        ModelKind::ESp => SpKind::ESp,
        ModelKind::FSp => SpKind::FSp,
        other => return Err(CliError::Usage(format!("mco applies to e-sp or f-sp, not {other}"))),
    };
    let (inst, spec, label) = load_data(run, data)?;
    let opts = McoOptions {
        n0,
        replications,
        n_eval,
        epsilon,
        max_n,
        seed: run.stream("mco"),
        solver: None,
    };
    let report = run_mco(&inst, &spec, sp_kind, &opts)?;
    for r in &report.rounds {
        println!(
            "N={:>5}  v_N={:>12.2}  v_N'={:>12.2}  AOI={:+.5}  ({:.1}s)",
            r.n, r.mean_n, r.mean_eval, r.aoi, r.wall_time
        );
    }
    println!(
        "{label} {kind}: {} at N={} (AOI {:.5})",
        if report.converged { "converged" } else { "not converged" },
        report.n_final,
        report.final_aoi
    );
    let path = run.path(&format!("mco_{}.csv", kind.name()));
    report.write_csv(&path)?;
    run.write_json(&format!("mco_{}.json", kind.name()), &report)
}

#[derive(Serialize)]
struct CcgRow {
    instance: String,
    model: String,
    valid_ineq: bool,
    status: String,
    iterations: usize,
    lb: f64,
    ub: f64,
    gap: f64,
    headcount: u32,
    x: String,
    wall_time: f64,
}

#[allow(clippy::too_many_arguments)]
fn cmd_ccg(
    run: &mut Run,
    data: &DataArgs,
    vi: OnOff,
    epsilon: f64,
    max_iterations: usize,
    time_limit: f64,
    box_factor: Option<f64>,
) -> CliResult<()> {
    if box_factor.is_some_and(|f| !(f >= 1.0 && f.is_finite())) {
        return Err(CliError::Usage("--box-factor must be a finite number >= 1".into()));
    }
    let (inst, spec, label) = load_data(run, data)?;
    let opts = CcgOptions {
        epsilon,
        max_iterations,
        time_limit,
        valid_inequalities: vi == OnOff::On,
        loose_box_factor: box_factor.unwrap_or(CcgOptions::default().loose_box_factor),
        threads: run.threads.map_or(CcgOptions::default().threads, |n| n as u32),
        ..Default::default()
    };
    let r = dro_fa::solve_fdhscp_ccg(&inst, &spec, &opts)?;
    for it in &r.iterations {
        println!(
            "it {:>3}  LB {:>14.2}  UB {:>14.2}  pool {:>4}  (+{})",
            it.iteration, it.lb, it.ub, it.pool_size, it.added
        );
    }
    let tag = if opts.valid_inequalities { "on" } else { "off" };
    let row = CcgRow {
        instance: label,
        model: format!("f-dro-vi-{tag}"),
        valid_ineq: opts.valid_inequalities,
        status: format!("{:?}", r.status),
        iterations: r.n_iterations(),
        lb: r.lb,
        ub: r.ub,
        gap: r.gap,
        headcount: r.solution.headcount(),
        x: join_x(&r.solution.x),
        wall_time: r.wall_time,
    };
    println!("{:?} after {} iterations, gap {:.4}", r.status, row.iterations, r.gap);
    run.write_csv(&format!("ccg_vi_{tag}.csv"), &[row])?;
    run.write_csv(&format!("ccg_vi_{tag}_iterations.csv"), &r.iterations)
}

fn cmd_eval(
    run: &mut Run,
    data: &DataArgs,
    kind: ModelKind,
    set: u8,
    delta: f64,
    samples: usize,
    args: &ModelArgs,
) -> CliResult<()> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let (inst, spec, label) = load_data(run, data)?;
    let opts = model_options(run, args, kind)?;
    let out = solve_model(&inst, &spec, kind, &opts)?;
    let set_kind = if set == 1 { SetKind::Set1 } else { SetKind::Set2 };
    let eval = make_eval_samples(&spec, set_kind, delta, samples, run.stream("eval"))?;
    let rep = evaluate_out_of_sample(&inst, &out.plan, &eval, out.objective, kind.name(), delta)?;
    println!(
        "{label} {kind} set {set} delta {delta}: V_opt {:.2}, mean cost {:.2}, mean disappointment {:.2}%",
        rep.v_opt, rep.total.mean, rep.disappointment.mean
    );
    let stem = format!("eval_{}_set{set}_d{delta}", kind.name());
    let path = run.path(&format!("{stem}.csv"));
    rep.write_csv(&path)?;
    run.write_json(&format!("{stem}.json"), &rep)
}

fn cmd_sweep(run: &mut Run, data: &DataArgs, kind: ModelKind, cu: &[f64], co: &[f64], args: &ModelArgs) -> CliResult<()> {
    if cu.is_empty() || co.is_empty() {
        return Err(CliError::Usage("--cu and --co need at least one value each".into()));
    }
    if cu.iter().chain(co).any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(CliError::Usage("penalties must be finite and non-negative".into()));
    }
    let (inst, spec, _) = load_data(run, data)?;
    let opts = model_options(run, args, kind)?;
    let pairs: Vec<(f64, f64)> = cu.iter().flat_map(|&u| co.iter().map(move |&o| (u, o))).collect();
    let rows = sweep::penalty_sweep(&inst, &spec, kind, &pairs, &opts)?;
    for r in &rows {
        println!("c^u={:<6} c^o={:<6} headcount {:>3} [{}]", r.under_cost, r.over_cost, r.headcount, r.x);
    }
    let axis = match (cu.len() > 1, co.len() > 1) {
        (true, false) => Some(SweepAxis::Under),
        (false, true) => Some(SweepAxis::Over),
        _ => None,
    };
    if let Some(axis) = axis {
        let counts: Vec<u32> = rows.iter().map(|r| r.headcount).collect();
        let (n, worst) = sweep::monotonicity_violations(&counts, axis == SweepAxis::Under);
        println!("monotonicity violations: {n} (largest {worst})");
    }
    let path = run.path(&format!("sweep_{}.csv", kind.name()));
    sweep::write_csv(&rows, &path)?;
    Ok(())
}

#[derive(Serialize)]
struct ReportRow {
    instance: String,
    model: String,
    runs: usize,
    cpu_min: f64,
    cpu_avg: f64,
    cpu_max: f64,
}

fn collect_csvs(inputs: &[PathBuf]) -> CliResult<Vec<PathBuf>> {
    let mut files = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut entries: Vec<PathBuf> = fs::read_dir(p)
                .map_err(|e| io_err(p, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "csv"))
                .collect();
            entries.sort();
            files.extend(entries);
        } else if p.is_file() {
            files.push(p.clone());
        } else {
            return Err(CliError::Input(format!("{} does not exist", p.display())));
        }
    }
    Ok(files)
}

fn cmd_report(run: &mut Run, inputs: &[PathBuf]) -> CliResult<()> {
    let mut groups: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
    for file in collect_csvs(inputs)? {
        let mut rdr = csv::Reader::from_path(&file).map_err(|e| io_err(&file, e))?;
        let headers = rdr.headers().map_err(|e| io_err(&file, e))?.clone();
        let col = |name: &str| headers.iter().position(|h| h == name);
        let (Some(ci), Some(cm), Some(ct)) = (col("instance"), col("model"), col("wall_time")) else {
            continue;
        };
        for rec in rdr.records() {
            let rec = rec.map_err(|e| io_err(&file, e))?;
            let t: f64 = rec[ct]
                .parse()
                .map_err(|_| CliError::Input(format!("{}: bad wall_time '{}'", file.display(), &rec[ct])))?;
            groups.entry((rec[ci].to_string(), rec[cm].to_string())).or_default().push(t);
        }
    }
    if groups.is_empty() {
        return Err(CliError::Input("no result rows with instance, model and wall_time columns".into()));
    }
    let rows: Vec<ReportRow> = groups
        .into_iter()
        .map(|((instance, model), times)| ReportRow {
            instance,
            model,
            runs: times.len(),
            cpu_min: times.iter().copied().fold(f64::INFINITY, f64::min),
            cpu_avg: times.iter().sum::<f64>() / times.len() as f64,
            cpu_max: times.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
        .collect();
    println!("{:<12} {:<14} {:>5} {:>10} {:>10} {:>10}", "instance", "model", "runs", "min (s)", "avg (s)", "max (s)");
    for r in &rows {
        println!(
            "{:<12} {:<14} {:>5} {:>10.3} {:>10.3} {:>10.3}",
            r.instance, r.model, r.runs, r.cpu_min, r.cpu_avg, r.cpu_max
        );
    }
    run.write_csv("report.csv", &rows)
}

fn execute(cli: Cli, args: Vec<String>) -> CliResult<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        // Only fails if a global pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    fs::create_dir_all(&cli.out).map_err(|e| io_err(&cli.out, e))?;
    let command = format!("{:?}", cli.command).split([' ', '{']).next().unwrap_or("").to_lowercase();
    let mut run = Run {
        out: cli.out.clone(),
        seed: cli.seed,
        threads: cli.threads,
        manifest: Manifest {
            schema: OUTPUT_SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            args,
            root_seed: cli.seed,
            streams: BTreeMap::new(),
            instance: None,
            outputs: Vec::new(),
        },
        started: Instant::now(),
    };
    match &cli.command {
        Command::Gen { template, range, days } => cmd_gen(&mut run, *template, *range, *days)?,
        Command::Solve { data, model, model_opts } => cmd_solve(&mut run, data, *model, model_opts)?,
        Command::Mco { data, model, n0, replications, n_eval, epsilon, max_n } => {
            cmd_mco(&mut run, data, *model, *n0, *replications, *n_eval, *epsilon, *max_n)?
        }
        Command::Ccg { data, valid_ineq, epsilon, max_iterations, time_limit, box_factor } => {
            cmd_ccg(&mut run, data, *valid_ineq, *epsilon, *max_iterations, *time_limit, *box_factor)?
        }
        Command::Eval { data, model, set, delta, samples, model_opts } => {
            cmd_eval(&mut run, data, *model, *set, *delta, *samples, model_opts)?
        }
        Command::Sweep { data, model, cu, co, model_opts } => cmd_sweep(&mut run, data, *model, cu, co, model_opts)?,
        Command::Report { inputs } => cmd_report(&mut run, inputs)?,
    }
    run.finish()
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.verbose { log::LevelFilter::Info } else { log::LevelFilter::Warn })
        .parse_default_env()
        .init();
    match execute(cli, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hscp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
