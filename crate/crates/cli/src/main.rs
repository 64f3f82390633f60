use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use innout_core::factor::Backend;
use innout_core::harness::{
    atomic_write, ensure_out_dir, function_coeffs, parse_coefficients, run_factor, run_gap, run_profile,
    run_verify_all, to_json_pretty, Norm, RunConfig, Status, OUT_DIR_ENV,
};
use innout_core::paths::ProfileBackend;
use innout_core::{Error, ErrorClass, Result};
use serde_json::json;

const GRAMMAR: &str = "\
Family specs:   kind(key=value,...)@[lo:hi:step]
  kinds: example24 | linear (a) | mobius (r, alpha, reversed) | h1 | outer_ramp (alpha, base, slope)
  e.g.  example24@[-0.1:0.1:0.05]   linear(a=1)@[0.5:1.5:0.1]

Function specs: factors joined by '*'
  blaschke:a1,a2,...   outer:<poly>   poly:<poly>   coeffs:c0,c1,...
  complex numbers as 0.5, 0.3i, 0.2-0.1i; polynomials as 2+z, 1-0.5z^2, (1+2i)z^3
  e.g.  blaschke:0.5*outer:2+z

Exit codes: 0 ok, 2 precondition or parse error, 3 numeric tolerance failure, 4 I/O";

#[derive(Parser)]
#[command(name = "innout", version, about = "Inner-outer factorization experiments on the unit disk", after_help = GRAMMAR)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Key-value (TOML) config file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
    /// Boundary grid size N (power of two).
    #[arg(long = "n", short = 'N', global = true)]
    n: Option<usize>,
    /// Ambient dimension M of the subspace model.
    #[arg(long = "m", short = 'M', global = true)]
    m: Option<usize>,
    /// Shift count K.
    #[arg(long = "k", short = 'K', global = true)]
    k: Option<usize>,
    #[arg(long, global = true)]
    oversample: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    residual_tol: Option<f64>,
    #[arg(long, global = true)]
    defect_tol: Option<f64>,
    /// Zero classification threshold.
    #[arg(long, global = true)]
    tau: Option<f64>,
    #[arg(long, global = true)]
    log_floor: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Factor one function; writes factor.json.
    Factor {
        /// Function spec, e.g. blaschke:0.5
        #[arg(required_unless_present = "coeffs", conflicts_with = "coeffs")]
        spec: Option<String>,
        /// Coefficient file: one `re [im]` per line, `#` comments.
        #[arg(long)]
        coeffs: Option<PathBuf>,
        /// modulus | zeros | auto
        #[arg(long, default_value = "auto")]
        backend: Backend,
        /// Sample on the half-offset grid.
        #[arg(long)]
        offset: bool,
    },
    /// Continuity profile of a family; writes profile.csv, profile.json, profile_report.json.
    Profile {
        family: String,
        /// modulus | zeros | both | auto
        #[arg(long, default_value = "auto")]
        backend: ProfileBackend,
        /// Compare every t with this reference parameter instead of its neighbour.
        #[arg(long)]
        reference: Option<f64>,
        #[arg(long, value_delimiter = ',', default_value = "sup,h2")]
        norms: Vec<Norm>,
    },
    /// Gap between f H² and g H² against ||f - g||_inf / c; writes gap.csv.
    Gap { f: String, g: String },
    /// Every acceptance criterion at the configured and doubled scale; writes verify_report.json.
    VerifyAll {
        /// Comma-separated criterion ids (1-11).
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<u8>>,
    },
}

fn load_config(g: &Global) -> Result<RunConfig> {
    let mut cfg = match &g.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(d) = &g.out_dir {
        cfg.out_dir = d.clone();
    }
    macro_rules! set {
        ($($field:ident),*) => { $(if let Some(v) = g.$field { cfg.$field = v; })* };
    }
    set!(n, oversample, seed, residual_tol, defect_tol, tau, log_floor);
    if g.m.is_some() {
        cfg.m = g.m;
    }
    if g.k.is_some() {
        cfg.k = g.k;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_artifact(cfg: &RunConfig, name: &str, text: &str) -> Result<String> {
    ensure_out_dir(&cfg.out_dir)?;
    let path = cfg.out_dir.join(name);
    atomic_write(&path, text.as_bytes())?;
    Ok(path.display().to_string())
}

fn exit_for(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = load_config(&cli.global)?;
    match cli.command {
        Command::Factor { spec, coeffs, backend, offset } => {
            let f = match (spec, coeffs) {
                (_, Some(path)) => parse_coefficients(&read_input(&path)?)?,
                (Some(spec), None) => function_coeffs(&spec, &cfg)?,
                (None, None) => unreachable!("clap requires one input"),
            };
            let run = run_factor(&f, backend, &cfg, offset)?;
            let path = write_artifact(&cfg, "factor.json", &run.json)?;
            println!("{}\n  wrote {path}", run.summary);
            Ok(exit_for(run.accepted))
        }
        Command::Profile { family, backend, reference, norms } => {
            let mut run = run_profile(&family, backend, reference, &norms, &cfg)?;
            let csv = write_artifact(&cfg, "profile.csv", &run.csv)?;
            let sidecar = write_artifact(&cfg, "profile.json", &run.sidecar)?;
            let report_path = cfg.out_dir.join("profile_report.json");
            run.report.artifacts = vec![csv, sidecar, report_path.display().to_string()];
            write_artifact(&cfg, "profile_report.json", &to_json_pretty(&run.report)?)?;
            for a in run.report.assertions.iter().filter(|a| a.status == Status::Fail) {
                eprintln!("FAIL {}: {} (bound {})", a.label, a.measured, a.bound);
            }
            println!(
                "{} rows, {} failed; report {}",
                run.profile.rows.len(),
                run.profile.failed_rows(),
                if run.report.passed { "PASS" } else { "FAIL" }
            );
            print!("{}", run.csv);
            Ok(exit_for(run.report.passed))
        }
        Command::Gap { f, g } => {
            let (report, csv) = run_gap(&f, &g, &cfg)?;
            let path = write_artifact(&cfg, "gap.csv", &csv)?;
            println!(
                "gap = {:.6e}, ||f-g||_inf = {:.6e}, c = {:.6}, bound = {:.6e}: {}\n  wrote {path}",
                report.gap,
                report.sup_dist,
                report.c,
                report.bound_rhs,
                if report.satisfied { "satisfied" } else { "VIOLATED" }
            );
            Ok(exit_for(report.satisfied))
        }
        Command::VerifyAll { only } => {
            ensure_out_dir(&cfg.out_dir)?;
            let mut report = run_verify_all(&cfg, only.as_deref());
            for c in &report.criteria {
                println!("{}", c.summary_line());
                for a in c.failures() {
                    println!("    {}: measured {:e}, bound {:e}{}", a.label, a.measured, a.bound,
                        a.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default());
                }
            }
            let path = cfg.out_dir.join("verify_report.json");
            report.artifacts = vec![path.display().to_string()];
            write_artifact(&cfg, "verify_report.json", &to_json_pretty(&report)?)?;
            println!("{} in {:.1}s", if report.passed { "ALL PASS" } else { "FAILURES" }, report.wall_time_s);
            Ok(exit_for(report.passed))
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(Error::from)
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Precondition => 2,
        ErrorClass::Numeric => 3,
        ErrorClass::Io => 4,
    }
}

fn error_object(e: &Error) -> serde_json::Value {
    let class = e.class();
    let mut obj = json!({
        "kind": e.kind(),
        "class": format!("{class:?}").to_lowercase(),
        "message": e.to_string(),
        "exit_code": exit_code(class),
    });
    if let Error::Parse { position, expected, .. } = e {
        obj["position"] = json!(position);
        obj["expected"] = json!(expected);
    }
    json!({ "error": obj })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            eprintln!("{}", error_object(&e));
            ExitCode::from(exit_code(e.class()))
        }
    }
}
