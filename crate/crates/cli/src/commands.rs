use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use trussmerge_core::baselines::{hardness_fixture, nonsubmodularity_witness_with, FixtureSpec};
use trussmerge_core::metrics::{
    correlation_study_with, gen_er, gen_hk, gen_ws, greedy_improve, MetricId, Operation, StudyTrace,
};
use trussmerge_core::{run, truss_decompose, ConstraintFilter, Heuristics, Method, RunConfig};

use crate::args::{
    Cli, Command, CompareArgs, DecomposeArgs, FixtureArgs, Generator, MaximizeArgs, Output, SolverArgs, Study,
    StudyArgs,
};
use crate::error::{CliError, Result};
use crate::io::{read_coordinates, read_edge_list, write_edge_list, Dataset};
use crate::report::{ConfigEcho, DatasetStats, PlanReport, RunReport, CSV_SCHEMA, REPORT_SCHEMA};

struct Clock {
    start: Instant,
    phases: BTreeMap<String, f64>,
}

impl Clock {
    fn new() -> Self {
        Clock {
            start: Instant::now(),
            phases: BTreeMap::new(),
        }
    }

    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.phases.insert(phase.to_owned(), t.elapsed().as_secs_f64());
        out
    }

    fn finish(mut self, keep: bool) -> Option<BTreeMap<String, f64>> {
        keep.then(|| {
            self.phases.insert("total".into(), self.start.elapsed().as_secs_f64());
            self.phases
        })
    }
}

fn emit(output: &Output, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match &output.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(path, e))?;
            let mut w = BufWriter::new(file);
            write(&mut w)?;
            w.flush().map_err(|e| CliError::io(path, e))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w)?;
            w.flush().map_err(|e| CliError::Output(e.to_string()))
        }
    }
}

fn emit_report(output: &Output, report: &RunReport) -> Result<()> {
    let text = report.to_json()?;
    emit(output, |w| {
        w.write_all(text.as_bytes()).map_err(|e| CliError::Output(e.to_string()))
    })
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

pub fn run_config(k: u32, method: Method, s: &SolverArgs, dataset: &Dataset) -> Result<RunConfig> {
    let filter = match (&s.coords, s.dist_threshold) {
        (Some(path), threshold) => Some(ConstraintFilter::new(read_coordinates(path, dataset)?, threshold)),
        (None, Some(_)) => return Err(CliError::Usage("--dist-threshold needs --coords".into())),
        (None, None) => None,
    };
    let cfg = RunConfig {
        k,
        budget: s.budget,
        n_i: s.n_i,
        n_o: s.n_o,
        n_c: s.n_c,
        method,
        seed: s.seed,
        filter,
        heuristics: if s.literal_heuristics {
            Heuristics::Literal
        } else {
            Heuristics::Semantic
        },
        allow_no_op: s.allow_no_op,
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn decompose(a: &DecomposeArgs) -> Result<RunReport> {
    let mut clock = Clock::new();
    let dataset = clock.time("load", || read_edge_list(&a.input))?;
    let d = clock.time("decompose", || truss_decompose(&dataset.graph));
    for &k in &a.k {
        if k < 2 {
            return Err(trussmerge_core::Error::InvalidK(k).into());
        }
    }
    Ok(RunReport {
        schema_version: REPORT_SCHEMA,
        version: env!("CARGO_PKG_VERSION").into(),
        command: "decompose".into(),
        config: ConfigEcho {
            input: Some(display(&a.input)),
            ks: a.k.clone(),
            ..ConfigEcho::default()
        },
        dataset: DatasetStats::new(&dataset, &d, &a.k),
        plan: None,
        timings: clock.finish(!a.output.no_timings),
    })
}

pub fn maximize(a: &MaximizeArgs) -> Result<RunReport> {
    let mut clock = Clock::new();
    let dataset = clock.time("load", || read_edge_list(&a.input))?;
    let cfg = run_config(a.k, a.method, &a.solver, &dataset)?;
    let d = clock.time("decompose", || truss_decompose(&dataset.graph));
    let plan = clock.time("solve", || run(&dataset.graph, &cfg))?;
    let plan = PlanReport::new(&plan, &cfg, &dataset);
    if let Some(path) = &a.trace {
        let file = File::create(path).map_err(|e| CliError::io(path, e))?;
        crate::report::write_plan_trace(BufWriter::new(file), &plan)?;
    }
    Ok(RunReport {
        schema_version: REPORT_SCHEMA,
        version: env!("CARGO_PKG_VERSION").into(),
        command: "maximize".into(),
        config: ConfigEcho::from_run(
            &display(&a.input),
            &cfg,
            a.solver.coords.as_deref().map(|p| p.to_str().unwrap_or_default()),
        ),
        dataset: DatasetStats::new(&dataset, &d, &[a.k]),
        plan: Some(plan),
        timings: clock.finish(!a.output.no_timings),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub method: Method,
    pub k: u32,
    pub trials: usize,
    pub initial_size: usize,
    pub final_size: f64,
    pub increase: f64,
    pub seconds: f64,
}

/// Randomized methods average over `trials` consecutive seeds.
pub fn compare_rows(a: &CompareArgs) -> Result<Vec<CompareRow>> {
    let dataset = read_edge_list(&a.input)?;
    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for &k in &a.k {
        for &method in &a.methods {
            let base = run_config(k, method, &a.solver, &dataset)?;
            let trials = if method.is_randomized() { a.trials } else { 1 };
            let (mut finals, mut seconds, mut initial) = (0.0, 0.0, 0);
            for t in 0..trials {
                let cfg = RunConfig {
                    seed: base.seed.wrapping_add(t as u64),
                    ..base.clone()
                };
                let start = Instant::now();
                let plan = run(&dataset.graph, &cfg)?;
                seconds += start.elapsed().as_secs_f64();
                finals += plan.final_size as f64;
                initial = plan.initial_size;
            }
            let final_size = finals / trials as f64;
            rows.push(CompareRow {
                method,
                k,
                trials,
                initial_size: initial,
                final_size,
                increase: final_size - initial as f64,
                seconds: seconds / trials as f64,
            });
        }
    }
    Ok(rows)
}

pub fn write_compare<W: Write>(w: W, rows: &[CompareRow], timings: bool) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["schema", "method", "k", "trials", "initial_size", "final_size", "increase"];
    if timings {
        header.push("seconds");
    }
    out.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            CSV_SCHEMA.to_owned(),
            r.method.to_string(),
            r.k.to_string(),
            r.trials.to_string(),
            r.initial_size.to_string(),
            r.final_size.to_string(),
            r.increase.to_string(),
        ];
        if timings {
            rec.push(format!("{:.6}", r.seconds));
        }
        out.write_record(&rec)?;
    }
    out.flush().map_err(|e| CliError::Output(e.to_string()))
}

pub fn study_trace(a: &StudyArgs) -> Result<StudyTrace> {
    let graph = match &a.input {
        Some(path) => read_edge_list(path)?.graph,
        None => match a.generator {
            Generator::Er => gen_er(a.n, a.p, a.solver.seed),
            Generator::Ws => gen_ws(a.n, a.degree, a.p, a.solver.seed),
            Generator::Hk => gen_hk(a.n, a.degree, a.p, a.solver.seed),
        },
    };
    match a.study {
        Study::Merge => Ok(greedy_improve(&graph, a.metric, Operation::Merge, a.rounds)?),
        Study::Add => Ok(greedy_improve(&graph, a.metric, Operation::AddEdge, a.rounds)?),
        Study::Correlation => {
            if a.solver.coords.is_some() {
                return Err(CliError::Usage("robustness-study does not take --coords".into()));
            }
            let cfg = RunConfig {
                k: a.k,
                budget: a.rounds,
                n_i: a.solver.n_i,
                n_o: a.solver.n_o,
                n_c: a.solver.n_c,
                method: a.method,
                seed: a.solver.seed,
                filter: None,
                heuristics: if a.solver.literal_heuristics {
                    Heuristics::Literal
                } else {
                    Heuristics::Semantic
                },
                allow_no_op: a.solver.allow_no_op,
            };
            if a.rounds > 0 {
                cfg.validate()?;
            }
            Ok(correlation_study_with(&graph, &cfg, &MetricId::ROBUSTNESS)?)
        }
    }
}

/// One row per round, then a `pearson_r` row when correlations were taken.
pub fn write_study<W: Write>(w: W, trace: &StudyTrace) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header: Vec<String> = ["schema", "round", "a", "b", "truss_size"].map(String::from).to_vec();
    header.extend(trace.metrics.iter().map(|m| m.as_str().to_owned()));
    out.write_record(&header)?;
    for r in &trace.rounds {
        let (a, b) = r.pair.map_or((String::new(), String::new()), |(a, b)| (a.to_string(), b.to_string()));
        let mut rec = vec![
            CSV_SCHEMA.to_owned(),
            r.round.to_string(),
            a,
            b,
            r.truss_size.map(|s| s.to_string()).unwrap_or_default(),
        ];
        rec.extend(r.values.iter().map(|v| v.to_string()));
        out.write_record(&rec)?;
    }
    if !trace.pearson_r.is_empty() {
        let mut rec = vec![CSV_SCHEMA.to_owned(), "pearson_r".into(), String::new(), String::new(), String::new()];
        rec.extend(trace.pearson_r.iter().map(|r| r.map(|x| x.to_string()).unwrap_or_default()));
        out.write_record(&rec)?;
    }
    out.flush().map_err(|e| CliError::Output(e.to_string()))
}

fn parse_sets(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .map(|set| {
            set.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Usage(format!("bad element `{t}` in --sets")))
                })
                .collect()
        })
        .collect()
}

pub fn fixture(a: &FixtureArgs) -> Result<Dataset> {
    let fx = if a.witness {
        nonsubmodularity_witness_with(a.d)?.fixture
    } else {
        let mut spec = FixtureSpec::new(parse_sets(&a.sets)?, a.k, a.d);
        if let Some(r) = a.r_nodes {
            spec.r_nodes = r;
        }
        hardness_fixture(&spec)?
    };
    Ok(Dataset {
        graph: fx.graph,
        labels: fx.labels,
    })
}

pub fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Decompose(a) => emit_report(&a.output, &decompose(a)?),
        Command::Maximize(a) => emit_report(&a.output, &maximize(a)?),
        Command::Compare(a) => {
            let rows = compare_rows(a)?;
            emit(&a.output, |w| write_compare(w, &rows, !a.output.no_timings))
        }
        Command::RobustnessStudy(a) => {
            let trace = study_trace(a)?;
            emit(&a.output, |w| write_study(w, &trace))
        }
        Command::Fixtures(a) => {
            let d = fixture(a)?;
            emit(&a.output, |w| {
                write_edge_list(w, &d.graph, &d.labels).map_err(|e| CliError::Output(e.to_string()))
            })
        }
    }
}

/// Runs the command inside a pool of `cli.threads` workers when given.
pub fn execute_with_threads(cli: &Cli) -> Result<()> {
    match cli.threads {
        None => execute(cli),
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| execute(cli)),
    }
}
