//! The command-line surface: every pipeline behind one binary with
//! machine-readable JSON output. Each run embeds a manifest with the schema
//! tag, the full parameter set, and the wall-clock duration; everything else
//! in the output is deterministic for exact modes.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::asep::{
    local_generator, multi_site_generator, rate_positivity_scan, AsepParams, Configuration,
    DEFAULT_SITE_CAP,
};
use crate::central::CentralPipeline;
use crate::duality::verify_duality;
use crate::exact::{format_rational, parse_rational, BigRational, RationalFunction, Scalar};
use crate::hamiltonian::{analyze, HamiltonianReport};
use crate::json::{
    configuration_to_json, numeric_element_to_json, numeric_generator_to_json, ratfunc_to_json,
    symbolic_element_to_json, symbolic_generator_to_json,
};
use crate::lie::LieRank;
use crate::simulate::{
    duality_expectation_check, gillespie_run, semigroup_duality_residual, TrajectoryConfig,
};

pub const SCHEMA: &str = "typed-asep/1";

#[derive(Parser)]
#[command(name = "typed-asep", version, about = "Exact engine for the Type D exclusion process: central elements of U_q(so(2n)), generator extraction, and q-Krawtchouk duality checks")]
pub struct Cli {
    /// Cap the number of worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    Numeric,
}

#[derive(Subcommand)]
pub enum Command {
    /// Build the central element and verify its scalar action.
    Central {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        /// Rational evaluation point (numeric mode), e.g. 10 or 22/7.
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract the two-site generator from the quantum Hamiltonian.
    Hamiltonian {
        #[arg(long)]
        n: usize,
        /// Restrict the report to one ground-state index.
        #[arg(long)]
        delta: Option<usize>,
        /// Run numerically at this rational q instead of symbolically.
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the L-site generator directly.
    Generator {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        sites: usize,
        /// Rational q; omitted means fully symbolic entries.
        #[arg(long)]
        q: Option<String>,
        /// Also scan off-diagonal nonnegativity over this comma-separated
        /// rational grid.
        #[arg(long)]
        positivity_grid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify L D = D L^T exactly at sampled rational points.
    DualityCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sites: usize,
        #[arg(long, default_value_t = 5)]
        points: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run continuous-time trajectories of the process.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        sites: usize,
        #[arg(long)]
        q: String,
        #[arg(long)]
        tmax: f64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Initial configuration as comma-separated site states, e.g. 3,0,1.
        #[arg(long)]
        initial: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo two-sided duality expectation comparison.
    DualityMc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sites: usize,
        #[arg(long)]
        q: String,
        #[arg(long)]
        alpha1: String,
        #[arg(long)]
        alpha2: String,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Initial configuration of the primary copy.
        #[arg(long)]
        initial: Option<String>,
        /// Initial configuration of the dual copy.
        #[arg(long)]
        dual_initial: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the whole verification chain for one rank.
    VerifyAll {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CmdError {
    Usage(String),
    Check(String),
    Io(String),
}

impl CmdError {
    fn code(&self) -> i32 {
        match self {
            CmdError::Usage(_) => 2,
            CmdError::Check(_) | CmdError::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CmdError::Usage(m) | CmdError::Check(m) | CmdError::Io(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CmdError {
    CmdError::Usage(e.to_string())
}

fn check(e: impl std::fmt::Display) -> CmdError {
    CmdError::Check(e.to_string())
}

pub fn run<I>(args: I) -> i32
where
    I: IntoIterator,
    I::Item: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global();
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CmdError> {
    let started = Instant::now();
    match command {
        Command::Central { n, mode, q, out } => cmd_central(n, mode, q, out, started),
        Command::Hamiltonian { n, delta, q, out } => cmd_hamiltonian(n, delta, q, out, started),
        Command::Generator { n, delta, sites, q, positivity_grid, out } => {
            cmd_generator(n, delta, sites, q, positivity_grid, out, started)
        }
        Command::DualityCheck { n, sites, points, seed, out } => {
            cmd_duality_check(n, sites, points, seed, out, started)
        }
        Command::Simulate { n, delta, sites, q, tmax, trials, seed, initial, out } => {
            cmd_simulate(n, delta, sites, q, tmax, trials, seed, initial, out, started)
        }
        Command::DualityMc {
            n, sites, q, alpha1, alpha2, t, trials, seed, initial, dual_initial, out,
        } => cmd_duality_mc(n, sites, q, alpha1, alpha2, t, trials, seed, initial, dual_initial, out, started),
        Command::VerifyAll { n, out } => cmd_verify_all(n, out, started),
    }
}

fn parse_q(text: &str) -> Result<BigRational, CmdError> {
    parse_rational(text).map_err(usage)
}

fn parse_initial(text: Option<&str>, sites: usize) -> Result<Configuration, CmdError> {
    match text {
        None => Ok(Configuration(vec![0; sites])),
        Some(csv) => {
            let states: Result<Vec<u8>, _> = csv.split(',').map(|s| s.trim().parse::<u8>()).collect();
            let states = states.map_err(|e| usage(format!("bad --initial: {e}")))?;
            if states.len() != sites || states.iter().any(|&s| s > 3) {
                return Err(usage(format!(
                    "--initial needs {sites} comma-separated states in 0..=3"
                )));
            }
            Ok(Configuration(states))
        }
    }
}

fn rank_of(n: usize) -> Result<LieRank, CmdError> {
    if n < 2 {
        return Err(usage("n must be at least 2"));
    }
    Ok(LieRank::new(n))
}

fn manifest(command: &str, params: Value, started: Instant, out: &Option<PathBuf>) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "params": params,
        "artifact_version": env!("CARGO_PKG_VERSION"),
        "duration_ms": started.elapsed().as_millis() as u64,
        "output": out
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "stdout".to_string()),
    })
}

fn emit(out: &Option<PathBuf>, doc: &Value) -> Result<(), CmdError> {
    let mut text = serde_json::to_string_pretty(doc).map_err(|e| CmdError::Io(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CmdError::Io(e.to_string())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_central(
    n: usize,
    mode: Mode,
    q: Option<String>,
    out: Option<PathBuf>,
    started: Instant,
) -> Result<i32, CmdError> {
    let rank = rank_of(n)?;
    let (result, q_param) = match mode {
        Mode::Symbolic => {
            if q.is_some() {
                return Err(usage("--q applies to numeric mode only"));
            }
            let pipeline = CentralPipeline::symbolic(rank);
            let element = pipeline.assemble_central().map_err(check)?;
            let scalar = pipeline.verify_scalar_action(&element).map_err(check)?;
            (
                json!({
                    "n": n,
                    "mode": "symbolic",
                    "terms": element.num_terms(),
                    "scalar": ratfunc_to_json(&scalar),
                    "element": symbolic_element_to_json(&element),
                }),
                Value::Null,
            )
        }
        Mode::Numeric => {
            let q_text = q.ok_or_else(|| usage("numeric mode needs --q"))?;
            let q0 = parse_q(&q_text)?;
            let pipeline = CentralPipeline::numeric(rank, q0.clone()).map_err(usage)?;
            let element = pipeline.assemble_central().map_err(check)?;
            let scalar = pipeline.verify_scalar_action(&element).map_err(check)?;
            (
                json!({
                    "n": n,
                    "mode": "numeric",
                    "q": format_rational(&q0),
                    "terms": element.num_terms(),
                    "scalar": format_rational(&scalar),
                    "element": numeric_element_to_json(&element),
                }),
                Value::String(format_rational(&q0)),
            )
        }
    };
    let params = json!({
        "n": n,
        "mode": match mode { Mode::Symbolic => "symbolic", Mode::Numeric => "numeric" },
        "q": q_param,
    });
    emit(&out, &json!({
        "manifest": manifest("central", params, started, &out),
        "result": result,
    }))?;
    Ok(0)
}

fn hamiltonian_report_json<S: Scalar>(
    report: &HamiltonianReport<S>,
    delta: Option<usize>,
    encode: impl Fn(&S) -> Value,
) -> Value {
    let mut block_sizes: Vec<usize> = report.blocks.iter().map(|b| b.len()).collect();
    block_sizes.sort_unstable();
    let states: Vec<Value> = report
        .ground_states
        .iter()
        .filter(|g| delta.map(|d| g.delta == d).unwrap_or(true))
        .map(|g| {
            json!({
                "delta": g.delta,
                "support": g.support.to_vec(),
                "vector": g.vector.iter().map(&encode).collect::<Vec<_>>(),
            })
        })
        .collect();
    let pruned: Vec<Value> = report
        .ground_states
        .iter()
        .zip(&report.pruned)
        .filter(|(g, _)| delta.map(|d| g.delta == d).unwrap_or(true))
        .map(|(g, m)| {
            json!({
                "delta": g.delta,
                "matrix": (0..4)
                    .map(|r| (0..4).map(|c| encode(m.get(r, c))).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "lambda": encode(&report.lambda),
        "block_sizes": block_sizes,
        "big_rank": report.big_rank,
        "ground_states": states,
        "pruned": pruned,
        "asep_matches": report.asep_matches,
        "two_by_two_all_match": report.two_by_two_all_match,
        "one_by_one_all_zero": report.one_by_one_all_zero,
    })
}

fn cmd_hamiltonian(
    n: usize,
    delta: Option<usize>,
    q: Option<String>,
    out: Option<PathBuf>,
    started: Instant,
) -> Result<i32, CmdError> {
    let rank = rank_of(n)?;
    if let Some(d) = delta {
        if d + 2 > n {
            return Err(usage(format!("delta must satisfy 0 <= delta <= {}", n - 2)));
        }
    }
    let (report_json, all_pass) = match &q {
        None => {
            let pipeline = CentralPipeline::symbolic(rank);
            let element = pipeline.assemble_central().map_err(check)?;
            let report = analyze(&element, pipeline.rep()).map_err(check)?;
            let pass = report.asep_matches.iter().all(|&b| b)
                && report.two_by_two_all_match
                && report.one_by_one_all_zero;
            (hamiltonian_report_json(&report, delta, ratfunc_to_json), pass)
        }
        Some(q_text) => {
            let q0 = parse_q(q_text)?;
            let pipeline = CentralPipeline::numeric(rank, q0).map_err(usage)?;
            let element = pipeline.assemble_central().map_err(check)?;
            let report = analyze(&element, pipeline.rep()).map_err(check)?;
            let pass = report.asep_matches.iter().all(|&b| b)
                && report.two_by_two_all_match
                && report.one_by_one_all_zero;
            (
                hamiltonian_report_json(&report, delta, |v| Value::String(format_rational(v))),
                pass,
            )
        }
    };
    let params = json!({"n": n, "delta": delta, "q": q});
    emit(&out, &json!({
        "manifest": manifest("hamiltonian", params, started, &out),
        "result": report_json,
    }))?;
    Ok(if all_pass { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_generator(
    n: usize,
    delta: usize,
    sites: usize,
    q: Option<String>,
    positivity_grid: Option<String>,
    out: Option<PathBuf>,
    started: Instant,
) -> Result<i32, CmdError> {
    let mut result = match &q {
        None => {
            let params = AsepParams::new(RationalFunction::q(), n, delta).map_err(usage)?;
            let gen = if sites == 2 {
                local_generator(&params)
            } else {
                multi_site_generator(&params, sites, DEFAULT_SITE_CAP).map_err(usage)?
            };
            symbolic_generator_to_json(&gen)
        }
        Some(q_text) => {
            let q0 = parse_q(q_text)?;
            let params = AsepParams::new(q0, n, delta).map_err(usage)?;
            let gen = if sites == 2 {
                local_generator(&params)
            } else {
                multi_site_generator(&params, sites, DEFAULT_SITE_CAP).map_err(usage)?
            };
            numeric_generator_to_json(&gen)
        }
    };
    if let Some(grid_text) = &positivity_grid {
        let grid: Result<Vec<BigRational>, _> =
            grid_text.split(',').map(parse_rational).collect();
        let grid = grid.map_err(usage)?;
        let report = rate_positivity_scan(n, delta, sites, &grid).map_err(usage)?;
        let scan = json!({
            "all_nonnegative": report.all_nonnegative(),
            "minima": report
                .minima
                .iter()
                .map(|(q0, m)| json!([format_rational(q0), format_rational(m)]))
                .collect::<Vec<_>>(),
            "violations": report.violations.len(),
        });
        result
            .as_object_mut()
            .expect("generator result is an object")
            .insert("positivity".into(), scan);
        if !report.all_nonnegative() {
            return Err(check("negative off-diagonal rate found"));
        }
    }
    let params = json!({
        "n": n, "delta": delta, "sites": sites, "q": q, "positivity_grid": positivity_grid,
    });
    emit(&out, &json!({
        "manifest": manifest("generator", params, started, &out),
        "result": result,
    }))?;
    Ok(0)
}

fn cmd_duality_check(
    n: usize,
    sites: usize,
    points: usize,
    seed: u64,
    out: Option<PathBuf>,
    started: Instant,
) -> Result<i32, CmdError> {
    rank_of(n)?;
    let report = match verify_duality(n, sites, points, seed) {
        Ok(report) => report,
        Err(e @ crate::duality::DualityError::InvalidParams(_)) => return Err(usage(e)),
        Err(e @ crate::duality::DualityError::Asep(_)) => return Err(usage(e)),
        Err(e) => return Err(check(e)),
    };
    let result = json!({
        "n": n,
        "sites": sites,
        "seed": seed,
        "points": report
            .points
            .iter()
            .map(|(q, a1, a2)| json!({
                "q": format_rational(q),
                "alpha1": format_rational(a1),
                "alpha2": format_rational(a2),
            }))
            .collect::<Vec<_>>(),
        "max_residuals": report
            .max_residuals
            .iter()
            .map(|r| Value::String(format_rational(r)))
            .collect::<Vec<_>>(),
    });
    let params = json!({"n": n, "sites": sites, "points": points, "seed": seed});
    emit(&out, &json!({
        "manifest": manifest("duality-check", params, started, &out),
        "result": result,
    }))?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    n: usize,
    delta: usize,
    sites: usize,
    q: String,
    tmax: f64,
    trials: usize,
    seed: u64,
    initial: Option<String>,
    out: Option<PathBuf>,
    started: Instant,
) -> Result<i32, CmdError> {
    if !(tmax > 0.0) {
        return Err(usage("tmax must be positive"));
    }
    let q0 = parse_q(&q)?;
    let initial_config = parse_initial(initial.as_deref(), sites)?;
    let mut trajectories = Vec::with_capacity(trials);
    for k in 0..trials.max(1) {
        let cfg = TrajectoryConfig {
            q: q0.clone(),
            n,
            delta,
            sites,
            t_max: tmax,
            seed: seed.wrapping_add(k as u64),
            initial: initial_config.clone(),
        };
        let sample = gillespie_run(&cfg).map_err(usage)?;
        trajectories.push(json!({
            "times": sample.times,
            "states": sample.states.iter().map(configuration_to_json).collect::<Vec<_>>(),
            "final": configuration_to_json(&sample.final_state),
        }));
    }
    let params = json!({
        "n": n, "delta": delta, "sites": sites, "q": q, "tmax": tmax,
        "trials": trials, "seed": seed, "initial": initial,
    });
    emit(&out, &json!({
        "manifest": manifest("simulate", params, started, &out),
        "result": {"trajectories": trajectories},
    }))?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_duality_mc(
    n: usize,
    sites: usize,
    q: String,
    alpha1: String,
    alpha2: String,
    t: f64,
    trials: usize,
    seed: u64,
    initial: Option<String>,
    dual_initial: Option<String>,
    out: Option<PathBuf>,
    started: Instant,
) -> Result<i32, CmdError> {
    let q0 = parse_q(&q)?;
    let a1 = parse_q(&alpha1)?;
    let a2 = parse_q(&alpha2)?;
    let eta0 = match initial.as_deref() {
        Some(csv) => parse_initial(Some(csv), sites)?,
        None => {
            let mut sites_vec = vec![0u8; sites];
            sites_vec[0] = 3;
            Configuration(sites_vec)
        }
    };
    let xi0 = match dual_initial.as_deref() {
        Some(csv) => parse_initial(Some(csv), sites)?,
        None => {
            let mut sites_vec = vec![0u8; sites];
            sites_vec[sites - 1] = 3;
            Configuration(sites_vec)
        }
    };
    let cfg = TrajectoryConfig {
        q: q0.clone(),
        n,
        delta: 0,
        sites,
        t_max: t,
        seed,
        initial: eta0.clone(),
    };
    let report = duality_expectation_check(&cfg, [a1.clone(), a2.clone()], &xi0, t, trials)
        .map_err(usage)?;
    let semigroup = semigroup_duality_residual(&q0, n, [a1, a2], sites, t).map_err(usage)?;
    let result = json!({
        "forward_mean": report.forward_mean,
        "forward_se": report.forward_se,
        "backward_mean": report.backward_mean,
        "backward_se": report.backward_se,
        "compatible": report.compatible,
        "semigroup_residual": semigroup,
    });
    let params = json!({
        "n": n, "sites": sites, "q": q, "alpha1": alpha1, "alpha2": alpha2,
        "t": t, "trials": trials, "seed": seed,
        "initial": initial, "dual_initial": dual_initial,
    });
    emit(&out, &json!({
        "manifest": manifest("duality-mc", params, started, &out),
        "result": result,
    }))?;
    Ok(if report.compatible && semigroup < 1e-10 { 0 } else { 1 })
}

fn cmd_verify_all(n: usize, out: Option<PathBuf>, started: Instant) -> Result<i32, CmdError> {
    let rank = rank_of(n)?;
    let mut checks: Vec<(String, bool, String)> = Vec::new();
    let pipeline = CentralPipeline::symbolic(rank);
    let element = pipeline.assemble_central().map_err(check)?;
    let scalar = pipeline.verify_scalar_action(&element);
    let scalar_detail = match &scalar {
        Ok(s) => format!("acts as {s}"),
        Err(e) => e.to_string(),
    };
    checks.push(("central scalar action".into(), scalar.is_ok(), scalar_detail));
    let central_ok = pipeline.verify_centrality(&element);
    checks.push((
        "centrality commutators".into(),
        central_ok,
        format!("{} generators", 3 * n),
    ));
    match analyze(&element, pipeline.rep()) {
        Ok(report) => {
            let mut sizes: Vec<usize> = report.blocks.iter().map(|b| b.len()).collect();
            sizes.sort_unstable();
            let mut detail = String::new();
            let _ = write!(detail, "blocks {sizes:?}, lambda {}", report.lambda);
            checks.push(("hamiltonian block census".into(), true, detail));
            checks.push((
                "pruned blocks match the generator".into(),
                report.asep_matches.iter().all(|&b| b),
                format!("{:?}", report.asep_matches),
            ));
            checks.push((
                "2x2 blocks conjugate to the swap block".into(),
                report.two_by_two_all_match,
                String::new(),
            ));
            checks.push((
                "1x1 blocks vanish".into(),
                report.one_by_one_all_zero,
                String::new(),
            ));
        }
        Err(e) => checks.push(("hamiltonian extraction".into(), false, e.to_string())),
    }
    for sites in [2usize, 3] {
        let result = verify_duality(n, sites, 5, 2024);
        checks.push((
            format!("duality at {sites} sites"),
            result.is_ok(),
            match result {
                Ok(_) => "5 exact points, zero residual".into(),
                Err(e) => e.to_string(),
            },
        ));
    }
    let all_pass = checks.iter().all(|(_, ok, _)| *ok);
    let result = json!({
        "n": n,
        "pass": all_pass,
        "checks": checks
            .iter()
            .map(|(name, ok, detail)| json!({"name": name, "pass": ok, "detail": detail}))
            .collect::<Vec<_>>(),
    });
    emit(&out, &json!({
        "manifest": manifest("verify-all", json!({"n": n}), started, &out),
        "result": result,
    }))?;
    for (name, ok, _) in &checks {
        eprintln!("{} {name}", if *ok { "PASS" } else { "FAIL" });
    }
    Ok(if all_pass { 0 } else { 1 })
}
