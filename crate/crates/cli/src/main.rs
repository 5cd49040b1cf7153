//! Command-line front end: config ingestion, subcommand dispatch and report
//! emission for the coincidence / common-fixed-point toolkit.

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use coincide::certifier::{certify, CertifyOptions, SubspaceSpec, TheoremVariant};
use coincide::config::{ContractionSelector, ProblemConfig};
use coincide::contraction::{
    catalog, check_all_conditions, check_comparison, GridSpec, PairSampler,
};
use coincide::solver::{
    brute_force, detect_cauchy, extract_fixed_point, jungck_sequence, Direction, SolveOptions,
    SolverError,
};
use coincide::spaces::{PointRef, Space};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "coincide",
    version,
    about = "Run T-S-sequence iterations, certify common-fixed-point theorem hypotheses \
             and verify implicit-contraction conditions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirArg {
    Inc,
    Dec,
    Either,
}

impl From<DirArg> for Direction {
    fn from(d: DirArg) -> Direction {
        match d {
            DirArg::Inc => Direction::Increasing,
            DirArg::Dec => Direction::Decreasing,
            DirArg::Either => Direction::Either,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Problem config file.
    #[arg(long)]
    config: PathBuf,
    /// Catalog contraction selector, e.g. `linear-quasi:k=0.3` (overrides the
    /// config's contraction block).
    #[arg(long)]
    contraction: Option<String>,
    /// Iteration direction for the start condition.
    #[arg(long, value_enum)]
    direction: Option<DirArg>,
    /// Start point (label, index or number depending on the space flavor).
    #[arg(long)]
    x0: Option<String>,
    /// Iteration budget.
    #[arg(long)]
    budget: Option<usize>,
    /// Cauchy epsilon for numeric traces.
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Theorem variant id (overrides the config).
    #[arg(long)]
    variant: Option<String>,
    /// Subspace E: whole, t-image or s-image (overrides the config).
    #[arg(long)]
    e: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    config: PathBuf,
    /// Highest index enumerated on indexed spaces.
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ConditionsArgs {
    /// Catalog contraction selector, e.g. `nonlinear-quasi:k=0.4`.
    #[arg(long)]
    contraction: Option<String>,
    /// Config file with a contraction block (used when no selector is given).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check every hypothesis of a theorem variant and, if they hold, confirm
    /// the promised conclusion with the solver and brute force.
    Certify(CertifyArgs),
    /// Iterate the T-S-sequence from x0 and extract fixed points.
    Solve(CommonArgs),
    /// Brute-force the coincidence and common-fixed-point sets.
    Oracle(OracleArgs),
    /// List the built-in contraction catalog.
    Catalog(CatalogArgs),
    /// Certify the F1a/F1b/F1c/F2 conditions of a contraction on the default grid.
    Conditions(ConditionsArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Certify(args) => cmd_certify(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Catalog(args) => cmd_catalog(args),
        Command::Conditions(args) => cmd_conditions(args),
    }
}

fn load_config(path: &PathBuf) -> Result<ProblemConfig> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    Ok(ProblemConfig::parse(&text)?)
}

fn selector(flag: &Option<String>) -> Result<Option<ContractionSelector>> {
    match flag {
        Some(s) => Ok(Some(s.parse().map_err(|e: String| anyhow!(e))?)),
        None => Ok(None),
    }
}

struct Problem {
    space: Space,
    cfg: ProblemConfig,
    x0: Option<PointRef>,
    direction: Direction,
    solve_opts: SolveOptions,
    sampler: PairSampler,
}

fn build_problem(common: &CommonArgs) -> Result<Problem> {
    let mut cfg = load_config(&common.config)?;
    if let Some(x0) = &common.x0 {
        cfg.run.x0 = Some(x0.clone());
    }
    let space = cfg.build_space()?;
    let x0 = cfg.resolve_x0(&space)?;
    let direction = common
        .direction
        .map(Direction::from)
        .unwrap_or(cfg.run.direction);
    let mut solve_opts = SolveOptions {
        budget: common.budget.unwrap_or(cfg.run.budget),
        ..SolveOptions::default()
    };
    if let Some(eps) = common.eps {
        solve_opts.cauchy_eps = eps;
    } else {
        solve_opts.cauchy_eps = cfg.run.eps;
    }
    let sampler = PairSampler {
        index_cap: cfg.run.index_cap,
        numeric_points: cfg.run.samples,
        all_pairs: false,
    };
    Ok(Problem {
        space,
        cfg,
        x0,
        direction,
        solve_opts,
        sampler,
    })
}

fn cmd_certify(args: CertifyArgs) -> Result<ExitCode> {
    let p = build_problem(&args.common)?;
    let pair = p.cfg.build_pair()?;
    let sel = selector(&args.common.contraction)?;
    let ic = p.cfg.build_contraction(sel.as_ref())?;
    let variant = match &args.variant {
        Some(v) => v
            .parse::<TheoremVariant>()
            .map_err(|e| anyhow!(e))?,
        None => p
            .cfg
            .run
            .variant
            .ok_or_else(|| anyhow!("no variant given (config `run.variant` or --variant)"))?,
    };
    let e = match &args.e {
        Some(s) => match s.as_str() {
            "whole" => SubspaceSpec::Whole,
            "t-image" => SubspaceSpec::TImage,
            "s-image" => SubspaceSpec::SImage,
            other => return Err(anyhow!("unknown subspace `{other}`")),
        },
        None => p.cfg.subspace(&p.space)?,
    };
    let opts = CertifyOptions {
        grid: GridSpec::default_log(),
        sampler: p.sampler.clone(),
        solve: p.solve_opts.clone(),
        tol: p.solve_opts.cauchy_eps.max(1e-12),
    };
    let report = certify(
        &p.space,
        &pair,
        &ic,
        variant,
        p.direction,
        &e,
        p.x0,
        &opts,
    )?;
    match args.common.format {
        Format::Text => print!("{report}"),
        Format::Structured => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(if report.has_counterexample() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_solve(args: CommonArgs) -> Result<ExitCode> {
    let p = build_problem(&args)?;
    let pair = p.cfg.build_pair()?;
    let x0 = match p.x0 {
        Some(x) => x,
        None => return Err(anyhow!("solve needs an x0 (config `run.x0` or --x0)")),
    };
    let trace = jungck_sequence(&p.space, &pair, x0, p.direction, &p.solve_opts)?;
    let extraction = extract_fixed_point(&p.space, &pair, &trace, p.solve_opts.cauchy_eps);

    // Cauchy detection against the eps ladder when a comparison function is
    // available.
    let sel = selector(&args.contraction)?;
    let companion = p.cfg.build_contraction(sel.as_ref()).ok().map(|ic| ic.companion);
    let mut cauchy = Vec::new();
    if let Some(phi) = &companion {
        for &eps in &p.solve_opts.eps_ladder {
            if let Ok(report) = detect_cauchy(&p.space, &trace, phi, eps) {
                cauchy.push(report);
            }
        }
    }

    let failed = matches!(
        trace.verdict,
        coincide::solver::TraceVerdict::PreconditionFailed
    ) || extraction.is_err();

    match args.format {
        Format::Text => {
            print!("{}", trace.render(&p.space));
            for report in &cauchy {
                match report.detected_at {
                    Some(n) => println!(
                        "cauchy: eps {:e} first satisfied at step {n} (threshold {:e})",
                        report.eps, report.threshold
                    ),
                    None => println!("cauchy: eps {:e} never satisfied", report.eps),
                }
                if let Some((n, m, d)) = report.containment_violation {
                    println!(
                        "  containment violated: d(Tx_{m}, Tx_{n}) = {d:e} >= eps"
                    );
                }
            }
            match &extraction {
                Ok(fp) => {
                    println!(
                        "coincidence point: {} (residual {:e})",
                        p.space.describe(fp.coincidence),
                        fp.residual
                    );
                    println!(
                        "point of coincidence: {}",
                        p.space.describe(fp.point_of_coincidence)
                    );
                    match &fp.common {
                        Some(c) => println!(
                            "common fixed point: {} (T,S residuals {:e}, {:e})",
                            p.space.describe(c.z),
                            c.t_residual,
                            c.s_residual
                        ),
                        None => println!("no common fixed point verified at the candidate"),
                    }
                }
                Err(SolverError::NoCoincidence { at, residual }) => {
                    println!(
                        "no coincidence point: minimal residual {residual:e} at {}",
                        p.space.describe(*at)
                    );
                }
                Err(e) => return Err(anyhow!("{e}")),
            }
        }
        Format::Structured => {
            let extraction_json = match &extraction {
                Ok(fp) => serde_json::json!({ "fixed_point": fp }),
                Err(SolverError::NoCoincidence { at, residual }) => serde_json::json!({
                    "no_coincidence": { "at": at, "residual": residual }
                }),
                Err(e) => return Err(anyhow!("{e}")),
            };
            let doc = serde_json::json!({
                "trace": trace,
                "cauchy": cauchy,
                "extraction": extraction_json,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(if failed { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn cmd_oracle(args: OracleArgs) -> Result<ExitCode> {
    let mut cfg = load_config(&args.config)?;
    if let Some(cap) = args.cap {
        // restrict the enumeration by shrinking the space budget
        if let Some(coincide::config::SpaceConfig::Indexed { budget, .. }) = &mut cfg.space {
            *budget = (*budget).min(cap);
        }
    }
    let space = cfg.build_space()?;
    let pair = cfg.build_pair()?;
    let sets = brute_force(&space, &pair)?;
    match args.format {
        Format::Text => {
            println!("coincidence points ({}):", sets.coincidence.len());
            for p in &sets.coincidence {
                println!("  {}", space.describe(*p));
            }
            println!("common fixed points ({}):", sets.common_fixed.len());
            for p in &sets.common_fixed {
                println!("  {}", space.describe(*p));
            }
        }
        Format::Structured => println!("{}", serde_json::to_string_pretty(&sets)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_catalog(args: CatalogArgs) -> Result<ExitCode> {
    match args.format {
        Format::Text => {
            for entry in catalog() {
                let claims: Vec<&str> = entry.claims.iter().map(|c| c.as_str()).collect();
                let denied: Vec<&str> = entry.denied.iter().map(|c| c.as_str()).collect();
                let params: Vec<String> = entry
                    .defaults
                    .iter()
                    .map(|(n, v)| format!("{n}={v}"))
                    .collect();
                println!("{:<16} {}", entry.id, entry.formula);
                println!(
                    "{:<16}   params: {}; claims: {}{}",
                    "",
                    params.join(", "),
                    claims.join(","),
                    if denied.is_empty() {
                        String::new()
                    } else {
                        format!("; denied: {}", denied.join(","))
                    }
                );
            }
        }
        Format::Structured => {
            let doc: Vec<serde_json::Value> = catalog()
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "id": e.id,
                        "formula": e.formula,
                        "defaults": e.defaults,
                        "claims": e.claims,
                        "denied": e.denied,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_conditions(args: ConditionsArgs) -> Result<ExitCode> {
    let sel = selector(&args.contraction)?;
    let ic = match (&sel, &args.config) {
        (Some(_), _) => {
            let empty = ProblemConfig::default();
            empty.build_contraction(sel.as_ref())?
        }
        (None, Some(path)) => load_config(path)?.build_contraction(None)?,
        (None, None) => {
            return Err(anyhow!(
                "conditions needs --contraction or a --config with a contraction block"
            ))
        }
    };
    let grid = GridSpec::default_log();
    let mut reports = check_all_conditions(&ic, &grid);
    reports.push(check_comparison(&ic.companion, &grid));
    let any_counterexample = reports
        .iter()
        .any(|r| r.verdict == coincide::contraction::ConditionVerdict::Counterexample);
    match args.format {
        Format::Text => {
            println!("contraction: {} ({})", ic.label, ic.formula);
            for r in &reports {
                println!("{r}");
            }
        }
        Format::Structured => println!("{}", serde_json::to_string_pretty(&reports)?),
    }
    Ok(if any_counterexample {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}
