//! Command-line front end. Exit codes: 0 success, 1 domain failure, 2 usage
//! error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::coherence::{run_suite, DiagramReport};
use crate::error::Error;
use crate::iterator::{gate_counts, verify_equivalence, Form, IteratorBuild};
use crate::morphisms::{Mor, Semiring};
use crate::quantum::{check_controlled_power_action, multi_ctrl, qft, swap_decomposition_check, Circuit};
use crate::random::{derive_seed, random_perm, random_state, random_unitary, rng_for, DEFAULT_SEED};
use crate::shapes::ObjExpr;
use crate::shor::{self, FactorConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "distcat", version, about = "Distributive-category checks, iterator circuits and period finding")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Root seed; every random draw is derived from it.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Pass threshold for floating-point checks.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tolerance: f64,
    /// Random instances per check.
    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Control count (default: sweep 1..=6 for iterator, 6 for quantum).
        #[arg(long)]
        n: Option<usize>,
        /// Target dimension (default: sweep 2,3,4 for iterator, 5 for quantum).
        #[arg(long)]
        dim: Option<usize>,
        /// Largest atom dimension in the coherence suite.
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
    },
    /// Gate counts and build times of both iterator forms.
    Bench {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Time builds only up to this many controls.
        #[arg(long, default_value_t = 10)]
        time_max: usize,
        /// Target dimension for timed builds.
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Write a circuit as JSON.
    Export {
        #[arg(value_enum)]
        kind: ExportKind,
        /// Output file (falls back to --out, then stdout).
        path: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 7)]
        r: u64,
        #[arg(long = "K", alias = "k", default_value_t = 15)]
        modulus: u64,
    },
    /// Build the iterator of a random unitary and check it against the naive form.
    Iterate {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = FormArg::Efficient)]
        form: FormArg,
        /// Also write the gate form as circuit JSON.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Factor an integer by simulated period finding.
    Factor {
        #[arg(long = "K", alias = "k")]
        modulus: u64,
        /// Fixed base instead of random draws.
        #[arg(long)]
        base: Option<u64>,
        /// Control qubits (default 2*ceil(log2 K)).
        #[arg(long)]
        controls: Option<usize>,
        #[arg(long, default_value_t = 1024)]
        shots: usize,
        #[arg(long, default_value_t = 8)]
        max_attempts: usize,
        /// Measure after the inverse DFT instead of the forward one.
        #[arg(long)]
        inverse: bool,
        /// Same as --format json.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Coherence,
    Iterator,
    Quantum,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Naive,
    Efficient,
    ShorOracle,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Naive,
    Efficient,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::Naive => Form::Naive,
            FormArg::Efficient => Form::Efficient,
        }
    }
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::Parse { .. } | Error::NotCoprime { .. } => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_FAILURE, message: format!("cannot write {}: {e}", path.display()) }
}

/// Parses `args` (program name first) and runs the command, writing to
/// `out` and `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((code, text)) => match emit(&cli.config, &text, out) {
            Ok(()) => code,
            Err(f) => {
                let _ = writeln!(err, "error: {}", f.message);
                f.code
            }
        },
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn emit(cfg: &RunConfig, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure { code: EXIT_FAILURE, message: e.to_string() }),
    }
}

fn execute(cli: &Cli) -> Result<(i32, String), Failure> {
    let cfg = &cli.config;
    if cfg.tolerance.is_nan() || cfg.tolerance <= 0.0 {
        return Err(usage("--tolerance must be positive"));
    }
    match &cli.command {
        Command::Verify { suite, n, dim, max_dim } => cmd_verify(*suite, *n, *dim, *max_dim, cfg),
        Command::Bench { n_max, time_max, dim } => cmd_bench(*n_max, *time_max, *dim, cfg),
        Command::Export { kind, path, n, dim, r, modulus } => {
            cmd_export(*kind, path.as_deref(), *n, *dim, *r, *modulus, cfg)
        }
        Command::Iterate { n, dim, form, export } => cmd_iterate(*n, *dim, (*form).into(), export.as_deref(), cfg),
        Command::Factor { modulus, base, controls, shots, max_attempts, inverse, json } => {
            let factor_cfg = FactorConfig {
                controls: *controls,
                shots: *shots,
                seed: cfg.seed,
                max_attempts: *max_attempts,
                base: *base,
                inverse_qft: *inverse,
            };
            cmd_factor(*modulus, &factor_cfg, *json || cfg.format == Format::Json)
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serialises")
}

fn json_doc<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serialises");
    s.push('\n');
    s
}

fn report_line(r: &DiagramReport) -> String {
    let tolerance = if r.tolerance == 0.0 { "exact".to_string() } else { format!("{:.0e}", r.tolerance) };
    format!(
        "{} {:<26} {:<11} {:<40} discrepancy={:.3e} tolerance={}",
        if r.pass { "PASS" } else { "FAIL" },
        r.diagram,
        r.semiring,
        r.instance,
        r.discrepancy,
        tolerance
    )
}

fn positive(name: &str, v: usize) -> Result<(), Failure> {
    if v == 0 {
        Err(usage(format!("--{name} must be at least 1")))
    } else {
        Ok(())
    }
}

fn iterator_reports(n: Option<usize>, dim: Option<usize>, cfg: &RunConfig) -> crate::error::Result<Vec<DiagramReport>> {
    let ns: Vec<usize> = n.map_or_else(|| (1..=6).collect(), |n| vec![n]);
    let dims: Vec<usize> = dim.map_or_else(|| vec![2, 3, 4], |d| vec![d]);
    let mut reports = Vec::new();
    for &n in &ns {
        for &d in &dims {
            let x = ObjExpr::atom("X", d);
            for t in 0..cfg.trials as u64 {
                let label = format!("verify.iterator/{n}/{d}");
                let seed = derive_seed(cfg.seed, &label, t);
                let mut rng = rng_for(cfg.seed, &label, t);
                let u = random_unitary(&x, &mut rng);
                reports.push(verify_equivalence(&u, n)?.with_seed(seed));
                let p = Mor::<bool>::from_perm(&random_perm(&x, &mut rng));
                reports.push(verify_equivalence(&p, n)?.with_seed(seed));
            }
        }
    }
    Ok(reports)
}

fn quantum_reports(n: Option<usize>, dim: Option<usize>, cfg: &RunConfig) -> crate::error::Result<Vec<DiagramReport>> {
    let n = n.unwrap_or(6);
    let d = dim.unwrap_or(5);
    let x = ObjExpr::atom("X", d);
    let mut reports = vec![swap_decomposition_check()?];
    for width in 1..=10 {
        let f = qft(width, false)?;
        reports.push(DiagramReport::new(
            "qft_unitarity",
            format!("n={width}"),
            Complex64::NAME,
            f.unitarity_defect(),
            Complex64::TOLERANCE,
        ));
    }
    for t in 0..cfg.trials as u64 {
        let seed = derive_seed(cfg.seed, "verify.quantum", t);
        let mut rng = rng_for(cfg.seed, "verify.quantum", t);
        let u = random_unitary(&x, &mut rng);
        let psi = random_state(d, &mut rng);
        reports.push(check_controlled_power_action(&u, n, &psi)?.with_seed(seed));
        let small = n.min(4);
        let powers = (0..1u64 << small).map(|a| u.power(a)).collect::<crate::error::Result<Vec<_>>>()?;
        let blocks = multi_ctrl(&powers)?;
        let eff = IteratorBuild::efficient(&u, small)?.result()?;
        reports.push(
            DiagramReport::new(
                "multi_ctrl_vs_efficient",
                format!("n={small} d={d}"),
                Complex64::NAME,
                blocks.max_discrepancy(&eff)?,
                Complex64::TOLERANCE,
            )
            .with_seed(seed),
        );
    }
    Ok(reports)
}

fn cmd_verify(
    suite: Suite,
    n: Option<usize>,
    dim: Option<usize>,
    max_dim: usize,
    cfg: &RunConfig,
) -> Result<(i32, String), Failure> {
    positive("trials", cfg.trials)?;
    positive("max-dim", max_dim)?;
    if let Some(n) = n {
        if !(1..=10).contains(&n) {
            return Err(usage("--n must be in 1..=10"));
        }
    }
    if let Some(d) = dim {
        if !(1..=16).contains(&d) {
            return Err(usage("--dim must be in 1..=16"));
        }
    }
    let mut reports = Vec::new();
    if matches!(suite, Suite::Coherence | Suite::All) {
        reports.extend(run_suite::<Complex64>(cfg.seed, cfg.trials, max_dim)?);
        reports.extend(run_suite::<bool>(cfg.seed, cfg.trials, max_dim)?);
    }
    if matches!(suite, Suite::Iterator | Suite::All) {
        reports.extend(iterator_reports(n, dim, cfg)?);
    }
    if matches!(suite, Suite::Quantum | Suite::All) {
        reports.extend(quantum_reports(n, dim, cfg)?);
    }
    let reports: Vec<DiagramReport> = reports.into_iter().map(|r| r.with_tolerance(cfg.tolerance)).collect();
    let failed = reports.iter().filter(|r| !r.pass).count();
    let mut text = String::new();
    for r in &reports {
        text.push_str(&match cfg.format {
            Format::Json => json_line(r),
            Format::Text => report_line(r),
        });
        text.push('\n');
    }
    if cfg.format == Format::Text {
        text.push_str(&format!("{} checks, {} failed\n", reports.len(), failed));
    }
    Ok((if failed == 0 { EXIT_OK } else { EXIT_FAILURE }, text))
}

#[derive(Serialize)]
struct BenchRow {
    n: usize,
    naive: u64,
    efficient: u64,
    naive_build_s: Option<f64>,
    efficient_build_s: Option<f64>,
}

fn time_build(f: &Mor<Complex64>, n: usize, form: Form) -> crate::error::Result<f64> {
    let start = Instant::now();
    let build = IteratorBuild::build(f, n, form)?;
    let elapsed = start.elapsed().as_secs_f64();
    std::hint::black_box(build);
    Ok(elapsed)
}

fn cmd_bench(n_max: usize, time_max: usize, dim: usize, cfg: &RunConfig) -> Result<(i32, String), Failure> {
    positive("n-max", n_max)?;
    positive("dim", dim)?;
    if n_max >= 64 {
        return Err(usage("--n-max must be below 64"));
    }
    if time_max > 20 {
        return Err(usage("--time-max must be at most 20"));
    }
    let u = random_unitary(&ObjExpr::atom("X", dim), &mut rng_for(cfg.seed, "bench", 0));
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let counts = gate_counts(n)?;
        let (naive_build_s, efficient_build_s) = if n <= time_max {
            (Some(time_build(&u, n, Form::Naive)?), Some(time_build(&u, n, Form::Efficient)?))
        } else {
            (None, None)
        };
        rows.push(BenchRow { n, naive: counts.naive, efficient: counts.efficient, naive_build_s, efficient_build_s });
    }
    let text = match cfg.format {
        Format::Json => rows.iter().map(|r| json_line(r) + "\n").collect(),
        Format::Text => {
            let secs = |t: Option<f64>| t.map_or_else(|| "-".to_string(), |t| format!("{t:.3e}"));
            let mut s = format!("{:>3} {:>20} {:>9} {:>12} {:>12}\n", "n", "naive", "efficient", "naive_s", "efficient_s");
            for r in &rows {
                s.push_str(&format!(
                    "{:>3} {:>20} {:>9} {:>12} {:>12}\n",
                    r.n,
                    r.naive,
                    r.efficient,
                    secs(r.naive_build_s),
                    secs(r.efficient_build_s)
                ));
            }
            s
        }
    };
    Ok((EXIT_OK, text))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn iterator_circuit(n: usize, dim: usize, form: Form, seed: u64) -> crate::error::Result<Circuit> {
    let u = random_unitary(&ObjExpr::atom("X", dim), &mut rng_for(seed, "export.operator", 0));
    Circuit::from_iterator(&IteratorBuild::build(&u, n, form)?, "U")
}

fn check_controls(n: usize) -> Result<(), Failure> {
    if (1..=16).contains(&n) {
        Ok(())
    } else {
        Err(usage("--n must be in 1..=16"))
    }
}

fn cmd_export(
    kind: ExportKind,
    path: Option<&Path>,
    n: Option<usize>,
    dim: usize,
    r: u64,
    modulus: u64,
    cfg: &RunConfig,
) -> Result<(i32, String), Failure> {
    positive("dim", dim)?;
    let circuit = match kind {
        ExportKind::Naive | ExportKind::Efficient => {
            let n = n.unwrap_or(4);
            check_controls(n)?;
            let form = if kind == ExportKind::Naive { Form::Naive } else { Form::Efficient };
            iterator_circuit(n, dim, form, cfg.seed)?
        }
        ExportKind::ShorOracle => {
            if modulus < 2 {
                return Err(usage("--K must be at least 2"));
            }
            let n = n.unwrap_or_else(|| shor::default_controls(modulus));
            check_controls(n)?;
            shor::oracle(r, modulus, n, shor::qubits_for(modulus))?
        }
    };
    let text = json_doc(&circuit.to_json());
    match path {
        Some(p) => {
            write_file(p, &text)?;
            Ok((EXIT_OK, String::new()))
        }
        None => Ok((EXIT_OK, text)),
    }
}

#[derive(Serialize)]
struct IterateSummary {
    n: usize,
    dim: usize,
    form: Form,
    seed: u64,
    blocks: usize,
    gate_counts: crate::iterator::GateCounts,
    equivalence: DiagramReport,
}

fn cmd_iterate(n: usize, dim: usize, form: Form, export: Option<&Path>, cfg: &RunConfig) -> Result<(i32, String), Failure> {
    positive("dim", dim)?;
    if !(1..=10).contains(&n) {
        return Err(usage("--n must be in 1..=10"));
    }
    let seed = derive_seed(cfg.seed, "iterate", 0);
    let u = random_unitary(&ObjExpr::atom("X", dim), &mut rng_for(cfg.seed, "iterate", 0));
    let build = IteratorBuild::build(&u, n, form)?;
    let equivalence = verify_equivalence(&u, n)?.with_seed(seed).with_tolerance(cfg.tolerance);
    if let Some(p) = export {
        write_file(p, &json_doc(&Circuit::from_iterator(&build, "U")?.to_json()))?;
    }
    let summary =
        IterateSummary { n, dim, form, seed, blocks: build.stage_count(), gate_counts: gate_counts(n)?, equivalence };
    let code = if summary.equivalence.pass { EXIT_OK } else { EXIT_FAILURE };
    let text = match cfg.format {
        Format::Json => json_doc(&summary),
        Format::Text => format!(
            "form={} n={} dim={} blocks={} (naive {} / efficient {})\n{}\n",
            match form {
                Form::Naive => "naive",
                Form::Efficient => "efficient",
            },
            n,
            dim,
            summary.blocks,
            summary.gate_counts.naive,
            summary.gate_counts.efficient,
            report_line(&summary.equivalence)
        ),
    };
    Ok((code, text))
}

fn cmd_factor(modulus: u64, cfg: &FactorConfig, json: bool) -> Result<(i32, String), Failure> {
    if modulus < 2 {
        return Err(usage(format!("--K must be at least 2, got {modulus}")));
    }
    positive("shots", cfg.shots)?;
    let run = shor::factor(modulus, cfg)?;
    let code = if run.succeeded() { EXIT_OK } else { EXIT_FAILURE };
    let text = if json {
        json_doc(&run)
    } else {
        let mut s = String::new();
        for (i, a) in run.attempts.iter().enumerate() {
            s.push_str(&format!(
                "attempt {}: base={} method={} period={}\n",
                i + 1,
                a.base,
                serde_json::to_value(a.method).expect("enum serialises").as_str().unwrap_or_default(),
                a.period.map_or_else(|| "-".to_string(), |p| p.to_string())
            ));
        }
        s.push_str(&run.message);
        s.push('\n');
        s
    };
    Ok((code, text))
}
