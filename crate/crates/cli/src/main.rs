use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use balpack::bench::{self, HpOverrides};
use balpack::format::{self, ResultFile};
use balpack::{corpus, solver, svg, Error, Hyperparameters, ProblemInstance};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "balpack", version, about = "Balanced circular bin packing with a virtual-force swarm")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance (embedded name or instance file).
    Solve(SolveArgs),
    /// Repeated runs over an instance or suite with aggregate statistics.
    Bench(BenchArgs),
    /// Render a stored result as SVG.
    Export {
        #[arg(long)]
        result: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Embedded benchmark instances.
    Instances {
        #[command(subcommand)]
        action: InstancesAction,
    },
}

#[derive(Subcommand)]
enum InstancesAction {
    /// Names, sizes and reference radii.
    List,
    /// Print one instance in the text format.
    Show {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Default)]
struct HpArgs {
    /// Iteration budget (default: 20000 for suite 1, 15000 for suite 2).
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long)]
    fmax: Option<f64>,
    #[arg(long)]
    vmax: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    smax: Option<f64>,
    #[arg(long)]
    smin: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
}

impl HpArgs {
    fn overrides(&self) -> HpOverrides {
        HpOverrides {
            f_max: self.fmax,
            v_max: self.vmax,
            alpha: self.alpha,
            s_max: self.smax,
            s_min: self.smin,
            c: self.c,
            dt: self.dt,
            n_it: self.iters,
            overlap_tol: None,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Embedded instance name (e.g. I1) or path to an instance file.
    instance: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Scale the length-carrying defaults to the instance's smallest radius.
    #[arg(long)]
    rescale: bool,
    #[command(flatten)]
    hp: HpArgs,
    #[arg(long)]
    out_json: Option<PathBuf>,
    #[arg(long)]
    out_svg: Option<PathBuf>,
    #[arg(long)]
    trace_csv: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// suite1, suite2, all, or an instance name.
    selector: String,
    #[arg(long, default_value_t = 20)]
    reps: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Directory for bench.json and runs.csv.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    hp: HpArgs,
}

fn load_instance(arg: &str) -> Result<ProblemInstance, Error> {
    if corpus::suite_of(arg).is_some() {
        return corpus::instance(arg);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(Error::UnknownSelection(arg.to_string()));
    }
    let bytes = fs::read(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    format::parse_instance(&bytes)
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Error> {
    fs::write(path, contents).map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn solve(args: SolveArgs) -> Result<ExitCode, Error> {
    let instance = load_instance(&args.instance)?;
    let mut base = bench::default_hyperparameters(&instance);
    if args.rescale {
        base = Hyperparameters { n_it: base.n_it, ..Hyperparameters::rescaled_for(&instance) };
    }
    let hp = args.hp.overrides().apply(base).with_seed(args.seed);
    let result = solver::solve(&instance, &hp)?;
    let file = ResultFile::new(&instance, &hp, &result);

    if let Some(path) = &args.out_json {
        write_file(path, file.to_json()?.as_bytes())?;
    }
    if let Some(path) = &args.trace_csv {
        let mut buf = Vec::new();
        format::write_trace_csv(&result.history, &mut buf)?;
        write_file(path, &buf)?;
    }

    let Some(radius) = result.best_radius() else {
        eprintln!("{}: no feasible layout in {} iterations", instance.name(), hp.n_it);
        return Ok(ExitCode::from(1));
    };
    if let Some(path) = &args.out_svg {
        write_file(path, svg::export_svg(&result, &instance)?.as_bytes())?;
    }
    print!("{} seed {} radius {radius:.4} at iteration {}", instance.name(), hp.seed, file.best_iteration.unwrap_or(0));
    match file.reference_radius {
        Some(r) => println!(" (reference {r}, gap {:+.2}%)", 100.0 * (radius / r - 1.0)),
        None => println!(),
    }
    Ok(ExitCode::SUCCESS)
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.3}"))
}

fn run_bench(args: BenchArgs) -> Result<ExitCode, Error> {
    let report = bench::run_bench(&args.selector, args.reps, &args.hp.overrides(), args.jobs)?;
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| Error::InvalidInput(format!("cannot create {}: {e}", dir.display())))?;
        write_file(&dir.join("bench.json"), serde_json::to_string_pretty(&report)?.as_bytes())?;
        let mut buf = Vec::new();
        bench::write_runs_csv(&report.runs, &mut buf)?;
        write_file(&dir.join("runs.csv"), &buf)?;
    }

    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{:<6} {:>4} {:>9} {:>10} {:>10} {:>10} {:>8}  within 10/5/1/0.5% of best", "inst", "N", "feasible", "best", "median", "reference", "gap");
    for r in &report.instances {
        let within: Vec<String> = r.robustness.iter().map(|c| c.within_best.to_string()).collect();
        let _ = writeln!(
            out,
            "{:<6} {:>4} {:>5}/{:<3} {:>10} {:>10} {:>10} {:>8}  {}",
            r.instance,
            r.circles,
            r.feasible_runs,
            r.runs,
            opt(r.best_radius),
            opt(r.median_radius),
            opt(r.reference_radius),
            r.gap_to_reference.map_or_else(|| "-".into(), |g| format!("{:+.2}%", 100.0 * g)),
            within.join("/"),
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn export(result: &Path, out: &Path) -> Result<ExitCode, Error> {
    let text = fs::read_to_string(result)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", result.display())))?;
    let file = ResultFile::from_json(&text)?;
    write_file(out, svg::export_result_file(&file)?.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn instances(action: InstancesAction) -> Result<ExitCode, Error> {
    match action {
        InstancesAction::List => {
            for name in corpus::names() {
                let inst = corpus::instance(name)?;
                println!("{name:<5} {:>4} circles  reference {}", inst.len(), opt(corpus::reference_radius(name)));
            }
        }
        InstancesAction::Show { name, json } => {
            let inst = corpus::instance(&name)?;
            if json {
                println!("{}", format::write_instance_json(&inst)?);
            } else {
                print!("{}", format::write_instance(&inst));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Bench(args) => run_bench(args),
        Command::Export { result, svg } => export(&result, &svg),
        Command::Instances { action } => instances(action),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
