use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use osp_core::combinatorics::{enumerate_sorting_networks, enumerate_syt, hook_count, staircase, Tableau};
use osp_core::correspondences::{burge, edelman_greene, edelman_greene_inverse, rsk, Weight};
use osp_core::io::{parse_network, parse_standard_tableau, parse_weights, WeightInput};
use osp_core::lpp::{lpp_pair, vn_wn_from_weights};
use osp_core::simulate::{run_trials, write_csv, Model};
use osp_core::stats::{compare_processes, joint_density, DensityModel, DensitySpec};
use osp_core::symbolic::{self, modp, BuildEvent, BuildOptions, Side};
use osp_core::Error;

/// Environment variable naming the default checkpoint directory for `verify`.
const CHECKPOINT_ENV: &str = "OSP_CHECKPOINT_DIR";

#[derive(Parser)]
#[command(name = "osp", version, about = "Staircase tableaux, sorting networks and the oriented swap process")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Suppress progress messages on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or count staircase tableaux or sorting networks.
    Enumerate {
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
        /// Stop after this many objects.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// RSK image of a weight tableau.
    Rsk(InputArgs),
    /// Burge image of a weight tableau.
    Burge(InputArgs),
    /// Sorting network of a staircase standard tableau.
    Eg(InputArgs),
    /// Staircase standard tableau of a sorting network.
    EgInv(InputArgs),
    /// LPP and dual LPP tableaux, and the corner vectors for staircases.
    Lpp(InputArgs),
    /// Sample trials of one process and write them as CSV.
    Simulate {
        #[arg(long, value_parser = parse_model)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Check F_n = G_n exactly or by random evaluation.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Seed for the random points of modular mode.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random points in modular mode.
        #[arg(long, default_value_t = 40)]
        points: usize,
        /// Prime modulus for modular mode.
        #[arg(long, default_value_t = modp::MERSENNE_61)]
        prime: u64,
        /// Directory for per-bucket checkpoints (exact mode); defaults to $OSP_CHECKPOINT_DIR.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Print every reduced component.
        #[arg(long)]
        components: bool,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Exact joint density of U_n or V_n at a point.
    Density {
        #[arg(long, value_parser = parse_density_model)]
        model: DensityModel,
        #[arg(long)]
        n: usize,
        /// Comma separated coordinates.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        point: Vec<f64>,
    },
    /// Compare two processes by sampling.
    Compare {
        #[arg(long, value_parser = parse_model)]
        a: Model,
        #[arg(long, value_parser = parse_model)]
        b: Model,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.01)]
        alpha: f64,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
}

#[derive(clap::Args)]
struct InputArgs {
    /// JSON input file; standard input if absent or `-`.
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum What {
    Syt,
    Networks,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Exact,
    Modular,
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_density_model(s: &str) -> Result<DensityModel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure outcome of a command.
enum Failure {
    /// The command ran and the checked property does not hold.
    Negative,
    /// Bad input or an environment problem.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(args: &InputArgs) -> Result<String, Failure> {
    match &args.input {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// Opens `path` for writing unless it exists and `force` is not set.
fn create(path: &Path, force: bool) -> Result<File, Failure> {
    if path.exists() && !force {
        return Err(Failure::Usage(format!("{} exists; pass --force to overwrite", path.display())));
    }
    File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn check_writable(path: Option<&Path>, force: bool) -> Outcome {
    match path {
        Some(p) if p.exists() && !force => {
            Err(Failure::Usage(format!("{} exists; pass --force to overwrite", p.display())))
        }
        _ => Ok(()),
    }
}

fn print_json(v: &impl Serialize) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn write_report(path: Option<&Path>, force: bool, report: &Value) -> Outcome {
    if let Some(p) = path {
        let mut f = create(p, force)?;
        serde_json::to_writer_pretty(&mut f, report)?;
        writeln!(f)?;
    }
    Ok(())
}

fn envelope(command: &str, config: Value, started: Instant, mut body: Value) -> Value {
    let obj = body.as_object_mut().expect("report body is an object");
    obj.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    obj.insert("command".into(), json!(command));
    obj.insert("config".into(), config);
    obj.insert("wall_time".into(), json!(started.elapsed().as_secs_f64()));
    body
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Enumerate { what, n, count_only, limit } => enumerate(cli, *what, *n, *count_only, *limit),
        Command::Rsk(args) => weight_map(args, rsk, rsk),
        Command::Burge(args) => weight_map(args, burge, burge),
        Command::Eg(args) => {
            let t = parse_standard_tableau(&read_input(args)?)?;
            print_json(&edelman_greene(&t)?)
        }
        Command::EgInv(args) => {
            let s = parse_network(&read_input(args)?)?;
            print_json(&edelman_greene_inverse(&s))
        }
        Command::Lpp(args) => match parse_weights(&read_input(args)?)? {
            WeightInput::Integer(x) => lpp_out(&x),
            WeightInput::Real(x) => lpp_out(&x),
        },
        Command::Simulate { model, n, trials, seed, out, force } => {
            check_writable(out.as_deref(), *force)?;
            let records = run_trials(*model, *n, *trials, *seed)?;
            match out {
                Some(p) => write_csv(&records, BufWriter::new(create(p, *force)?))?,
                None => write_csv(&records, io::stdout().lock())?,
            }
            Ok(())
        }
        Command::Verify { n, mode, seed, points, prime, checkpoint, components, report, force } => {
            check_writable(report.as_deref(), *force)?;
            let checkpoint = checkpoint.clone().or_else(|| std::env::var_os(CHECKPOINT_ENV).map(PathBuf::from));
            verify(cli, *n, *mode, *seed, *points, *prime, checkpoint.as_deref(), *components, report.as_deref(), *force)
        }
        Command::Density { model, n, point } => {
            let spec = DensitySpec::new(*model, *n)?;
            let value = joint_density(&spec, point)?;
            if cli.json {
                print_json(&json!({"model": model, "n": n, "point": point, "density": value}))
            } else {
                println!("{value:.15e}");
                Ok(())
            }
        }
        Command::Compare { a, b, n, trials, seed, alpha, report, force } => {
            check_writable(report.as_deref(), *force)?;
            let started = Instant::now();
            let r = compare_processes(*a, *b, *n, *trials, *seed, *alpha)?;
            let config = json!({"a": a, "b": b, "n": n, "trials": trials, "seed": seed, "alpha": alpha});
            let body = envelope("compare", config, started, serde_json::to_value(&r)?);
            write_report(report.as_deref(), *force, &body)?;
            if cli.json {
                print_json(&body)?;
            } else {
                for m in &r.marginals {
                    println!(
                        "t{}: KS {:.5} (threshold {:.5}) {}",
                        m.coordinate,
                        m.ks.statistic,
                        m.ks.threshold,
                        verdict(m.ks.pass)
                    );
                }
                if let Some(o) = &r.ordering {
                    println!(
                        "ordering: chi2 {:.3} on {} dof, p = {:.4} {}",
                        o.chi_square.statistic,
                        o.chi_square.dof,
                        o.chi_square.p_value,
                        verdict(o.pass)
                    );
                }
                println!(
                    "absorbing: KS {:.5} (threshold {:.5}) {}",
                    r.absorbing.statistic,
                    r.absorbing.threshold,
                    verdict(r.absorbing.pass)
                );
                println!("overall: {}", verdict(r.pass));
            }
            if r.pass {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn enumerate(cli: &Cli, what: What, n: usize, count_only: bool, limit: Option<usize>) -> Outcome {
    let limit = limit.unwrap_or(usize::MAX);
    if count_only {
        let count: u64 = match what {
            What::Syt => enumerate_syt(&staircase(n)?).take(limit).count() as u64,
            What::Networks => enumerate_sorting_networks(n)?.take(limit).count() as u64,
        };
        if cli.json {
            let formula = hook_count(&staircase(n)?).to_string();
            return print_json(&json!({"what": what, "n": n, "count": count, "hook_length_count": formula}));
        }
        println!("{count}");
        return Ok(());
    }
    let mut out = BufWriter::new(io::stdout().lock());
    match what {
        What::Syt => {
            for t in enumerate_syt(&staircase(n)?).take(limit) {
                serde_json::to_writer(&mut out, &t)?;
                writeln!(out)?;
            }
        }
        What::Networks => {
            for s in enumerate_sorting_networks(n)?.take(limit) {
                serde_json::to_writer(&mut out, &s)?;
                writeln!(out)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn weight_map(
    args: &InputArgs,
    int: impl Fn(&Tableau<u64>) -> Tableau<u64>,
    real: impl Fn(&Tableau<f64>) -> Tableau<f64>,
) -> Outcome {
    match parse_weights(&read_input(args)?)? {
        WeightInput::Integer(x) => print_json(&int(&x)),
        WeightInput::Real(x) => print_json(&real(&x)),
    }
}

fn lpp_out<T: Weight + Serialize>(x: &Tableau<T>) -> Outcome {
    let pair = lpp_pair(x);
    let (v, w) = match x.shape().staircase_order() {
        Some(_) => {
            let (v, w) = vn_wn_from_weights(x)?;
            (json!(v), json!(w))
        }
        None => (Value::Null, Value::Null),
    };
    print_json(&json!({"L": pair.l, "Lstar": pair.lstar, "V": v, "W": w}))
}

#[allow(clippy::too_many_arguments)]
fn verify(
    cli: &Cli,
    n: usize,
    mode: Mode,
    seed: u64,
    points: usize,
    prime: u64,
    checkpoint: Option<&Path>,
    show_components: bool,
    report: Option<&Path>,
    force: bool,
) -> Outcome {
    let started = Instant::now();
    let config = json!({
        "n": n, "mode": mode, "seed": seed, "points": points, "prime": prime,
        "checkpoint": checkpoint.map(|p| p.display().to_string()),
    });
    let quiet = cli.quiet;
    let body = match mode {
        Mode::Exact => {
            let progress = |side: Side| {
                move |e: &BuildEvent<'_>| {
                    if quiet {
                        return;
                    }
                    match e {
                        BuildEvent::Enumerated { objects, buckets } => {
                            eprintln!("{side}_{n}: {objects} objects in {buckets} buckets")
                        }
                        BuildEvent::Bucket { permutation, objects, distinct_denominators, resumed, done, total } => {
                            eprintln!(
                                "{side}_{n}: bucket {done}/{total} {permutation}: {objects} objects, {distinct_denominators} denominators{}",
                                if *resumed { " (from checkpoint)" } else { "" }
                            )
                        }
                    }
                }
            };
            let (pf, pg) = (progress(Side::Tableaux), progress(Side::Networks));
            let f = symbolic::build(n, Side::Tableaux, BuildOptions { checkpoint_dir: checkpoint, progress: Some(&pf) })?;
            let g = symbolic::build(n, Side::Networks, BuildOptions { checkpoint_dir: checkpoint, progress: Some(&pg) })?;
            let cmp = symbolic::equal(&f, &g)?;
            let mut body = json!({
                "n": n,
                "equal": cmp.equal,
                "components": f.len(),
                "witness": cmp.witness,
            });
            if show_components {
                let comps: serde_json::Map<String, Value> = f
                    .components()
                    .map(|(p, c)| {
                        let other = g.component(p).map(|c| c.to_string());
                        (p.to_string(), json!({"F": c.to_string(), "G": other}))
                    })
                    .collect();
                body["component_forms"] = Value::Object(comps);
            }
            body
        }
        Mode::Modular => {
            let r = symbolic::verify_modular(n, points, seed, prime)?;
            json!({
                "n": n,
                "equal": r.equal,
                "components": (1..n).product::<usize>(),
                "witness": r.witness,
                "points": r.points,
                "resampled": r.resampled,
                "prime": r.prime,
                "degree_bound": r.degree_bound,
                "failure_bound": r.failure_bound,
                "failure_bound_log10": r.failure_bound_log10,
            })
        }
    };
    let equal = body["equal"].as_bool() == Some(true);
    let body = envelope("verify", config, started, body);
    write_report(report, force, &body)?;
    if cli.json {
        print_json(&body)?;
    } else {
        println!(
            "n = {n} ({}): F_{n} {} G_{n} over {} components in {:.2}s",
            match mode {
                Mode::Exact => "exact",
                Mode::Modular => "modular",
            },
            if equal { "=" } else { "!=" },
            body["components"],
            body["wall_time"].as_f64().unwrap_or(0.0)
        );
        if let Some(comps) = body.get("component_forms").and_then(Value::as_object) {
            for (p, c) in comps {
                println!("{p}: {}", c["F"].as_str().unwrap_or(""));
            }
        }
        if let Some(b) = body.get("failure_bound_log10").and_then(Value::as_f64) {
            println!("failure probability bound: 10^{b:.1}");
        }
        if !body["witness"].is_null() {
            println!("witness: {}", body["witness"]);
        }
    }
    if equal {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}
