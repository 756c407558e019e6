use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wree::css_opt::ree_numeric_restricted;
use wree::monogamy::{self, delta_with, Engine, MonogamyRecord, WParams};
use wree::output::{engine_label, render_svg, write_atomic, write_csv, CsvMeta, LogBase};
use wree::verify::{self, DEFAULT_SEED};
use wree::xfamily::{closed_form_parts, ree_closed_form, ree_vedral_plenio, XState};

const INPUT_TOL: f64 = 1e-9;
const MONOGAMY_FLOOR: f64 = -1e-9;

const EXIT_INPUT: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_VIOLATION: u8 = 4;
const EXIT_VERIFY: u8 = 5;

#[derive(Parser)]
#[command(
    name = "wree",
    version,
    about = "Relative entropy of entanglement of reduced W states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Closed,
    Numeric,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaseArg {
    #[value(name = "e")]
    E,
    #[value(name = "2")]
    Two,
}

impl From<BaseArg> for LogBase {
    fn from(b: BaseArg) -> Self {
        match b {
            BaseArg::E => LogBase::E,
            BaseArg::Two => LogBase::Two,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// REE of the two-qubit state with populations (a, b, c)
    #[command(allow_negative_numbers = true)]
    Ree {
        a: f64,
        b: f64,
        c: f64,
        #[arg(long, value_enum, default_value = "closed")]
        engine: EngineArg,
        #[arg(long = "log-base", value_enum, default_value = "e")]
        log_base: BaseArg,
    },
    /// REE of the Vedral-Plenio mixture (1-λ)|00><00| + λ|Ψ+><Ψ+|
    #[command(allow_negative_numbers = true)]
    Vp {
        lambda: f64,
        #[arg(long = "log-base", value_enum, default_value = "e")]
        log_base: BaseArg,
    },
    /// Monogamy slack of the W state α|001> + β|010> + γ|100>
    #[command(allow_negative_numbers = true)]
    Delta {
        alpha: f64,
        beta: f64,
        gamma: f64,
        #[arg(long, value_enum, default_value = "closed")]
        engine: EngineArg,
        #[arg(long = "log-base", value_enum, default_value = "e")]
        log_base: BaseArg,
    },
    /// Evaluate δ over the (β², γ²) simplex grid and write CSV (and SVG)
    Sweep {
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(2..))]
        resolution: u32,
        #[arg(long, value_enum, default_value = "closed")]
        engine: EngineArg,
        #[arg(long = "log-base", value_enum, default_value = "e")]
        log_base: BaseArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Cross-check closed form, numerical oracles and identities on random inputs
    Verify {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ree {
            a,
            b,
            c,
            engine,
            log_base,
        } => cmd_ree(a, b, c, engine, log_base.into()),
        Command::Vp { lambda, log_base } => cmd_vp(lambda, log_base.into()),
        Command::Delta {
            alpha,
            beta,
            gamma,
            engine,
            log_base,
        } => cmd_delta(alpha, beta, gamma, engine, log_base.into()),
        Command::Sweep {
            resolution,
            engine,
            log_base,
            out,
            svg,
            seed,
        } => cmd_sweep(resolution as usize, engine, log_base.into(), out, svg, seed),
        Command::Verify { samples, seed } => cmd_verify(samples, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn simplex_input(a: f64, b: f64, c: f64) -> Result<XState, Failure> {
    let sum = a + b + c;
    let finite = a.is_finite() && b.is_finite() && c.is_finite();
    if !finite
        || a < -INPUT_TOL
        || b < -INPUT_TOL
        || c < -INPUT_TOL
        || (sum - 1.0).abs() > INPUT_TOL
    {
        return Err(fail(
            EXIT_INPUT,
            format!("({a}, {b}, {c}) is not a simplex point (sum {sum})"),
        ));
    }
    let (a, b, c) = (a.max(0.0), b.max(0.0), c.max(0.0));
    let s = a + b + c;
    XState::new(a / s, b / s, c / s).map_err(|e| fail(EXIT_INPUT, e.to_string()))
}

fn w_input(alpha: f64, beta: f64, gamma: f64) -> Result<WParams, Failure> {
    let norm = alpha * alpha + beta * beta + gamma * gamma;
    if !norm.is_finite() || (norm - 1.0).abs() > INPUT_TOL {
        return Err(fail(
            EXIT_INPUT,
            format!("amplitudes ({alpha}, {beta}, {gamma}) have squared norm {norm}"),
        ));
    }
    let n = norm.sqrt();
    WParams::new(alpha / n, beta / n, gamma / n).map_err(|e| fail(EXIT_INPUT, e.to_string()))
}

fn cmd_ree(a: f64, b: f64, c: f64, engine: EngineArg, base: LogBase) -> Result<(), Failure> {
    let s = simplex_input(a, b, c)?;
    println!("state       a={} b={} c={}", s.a(), s.b(), s.c());
    if let Ok(parts) = closed_form_parts(&s) {
        println!("Delta       {}", parts.delta_disc);
        println!("M           {}", parts.m_param);
        println!("N           {}", parts.n_param);
    }
    let unit = base.unit();
    match engine {
        EngineArg::Closed => println!("ree         {} {unit}", base.convert(ree_closed_form(&s))),
        EngineArg::Numeric => {
            println!(
                "ree         {} {unit}",
                base.convert(ree_numeric_restricted(&s))
            )
        }
        EngineArg::Both => {
            let closed = ree_closed_form(&s);
            let numeric = ree_numeric_restricted(&s);
            println!("ree_closed  {} {unit}", base.convert(closed));
            println!("ree_numeric {} {unit}", base.convert(numeric));
            println!(
                "abs_diff    {} {unit}",
                base.convert((closed - numeric).abs())
            );
        }
    }
    Ok(())
}

fn cmd_vp(lambda: f64, base: LogBase) -> Result<(), Failure> {
    let vp = ree_vedral_plenio(lambda).map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    let s = XState::new(1.0 - lambda, lambda / 2.0, lambda / 2.0)
        .map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    let unit = base.unit();
    println!("lambda      {lambda}");
    println!("ree_vp      {} {unit}", base.convert(vp));
    println!("ree_closed  {} {unit}", base.convert(ree_closed_form(&s)));
    Ok(())
}

fn print_record(r: &MonogamyRecord, unit: &str, suffix: &str) {
    println!("e_ab{suffix:<8}{} {unit}", r.e_ab);
    println!("e_ac{suffix:<8}{} {unit}", r.e_ac);
    println!("e_abc{suffix:<7}{} {unit}", r.e_abc);
    println!("delta{suffix:<7}{} {unit}", r.delta);
}

fn cmd_delta(
    alpha: f64,
    beta: f64,
    gamma: f64,
    engine: EngineArg,
    base: LogBase,
) -> Result<(), Failure> {
    let w = w_input(alpha, beta, gamma)?;
    let closed = delta_with(&w, Engine::ClosedForm).in_base(base.ln_base());
    println!("alpha_sq    {}", closed.alpha_sq);
    println!("beta_sq     {}", closed.beta_sq);
    println!("gamma_sq    {}", closed.gamma_sq);
    let unit = base.unit();
    match engine {
        EngineArg::Closed => print_record(&closed, unit, ""),
        EngineArg::Numeric => print_record(
            &delta_with(&w, Engine::RestrictedNumeric).in_base(base.ln_base()),
            unit,
            "",
        ),
        EngineArg::Both => {
            print_record(&closed, unit, "");
            let numeric = delta_with(&w, Engine::RestrictedNumeric).in_base(base.ln_base());
            print_record(&numeric, unit, "_num");
        }
    }
    Ok(())
}

fn cmd_sweep(
    n: usize,
    engine: EngineArg,
    base: LogBase,
    out: PathBuf,
    svg: Option<PathBuf>,
    seed: u64,
) -> Result<(), Failure> {
    let run = |e: Engine| monogamy::sweep(n, e).map_err(|e| fail(EXIT_INPUT, e.to_string()));
    let (primary, numeric, label) = match engine {
        EngineArg::Closed => (
            run(Engine::ClosedForm)?,
            None,
            engine_label(Engine::ClosedForm),
        ),
        EngineArg::Numeric => (
            run(Engine::RestrictedNumeric)?,
            None,
            engine_label(Engine::RestrictedNumeric),
        ),
        EngineArg::Both => (
            run(Engine::ClosedForm)?,
            Some(run(Engine::RestrictedNumeric)?),
            "both",
        ),
    };
    let violations = primary
        .iter()
        .chain(numeric.iter().flatten())
        .filter(|r| r.delta < MONOGAMY_FLOOR)
        .count();
    let min_delta = primary
        .iter()
        .map(|r| r.delta)
        .fold(f64::INFINITY, f64::min);

    let convert = |rs: &[MonogamyRecord]| -> Vec<MonogamyRecord> {
        rs.iter().map(|r| r.in_base(base.ln_base())).collect()
    };
    let shown = convert(&primary);
    let shown_numeric = numeric.as_deref().map(convert);
    let meta = CsvMeta {
        engine: label,
        resolution: n,
        seed,
        log_base: base,
    };
    let csv = write_csv(&shown, shown_numeric.as_deref(), &meta);
    write_atomic(&out, csv.as_bytes())
        .map_err(|e| fail(EXIT_IO, format!("writing {}: {e}", out.display())))?;
    if let Some(path) = &svg {
        let doc = render_svg(&shown, n, base).map_err(|e| fail(EXIT_IO, e.to_string()))?;
        write_atomic(path, doc.as_bytes())
            .map_err(|e| fail(EXIT_IO, format!("writing {}: {e}", path.display())))?;
    }
    println!("points      {}", shown.len());
    println!("min_delta   {min_delta:e} nats");
    if violations > 0 {
        return Err(fail(
            EXIT_VIOLATION,
            format!("monogamy violated at {violations} grid points (delta < {MONOGAMY_FLOOR:e})"),
        ));
    }
    Ok(())
}

fn cmd_verify(samples: usize, seed: u64) -> Result<(), Failure> {
    if samples == 0 {
        return Err(fail(EXIT_INPUT, "samples must be at least 1"));
    }
    let summary = verify::run_all(samples, seed).map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    println!("seed={} samples={}", summary.seed, summary.samples);
    for s in &summary.suites {
        println!(
            "{:<22} {} max_error={:.3e} ({})",
            s.name,
            if s.passed { "PASS" } else { "FAIL" },
            s.max_error,
            s.criterion
        );
    }
    if summary.all_passed() {
        Ok(())
    } else {
        Err(fail(
            EXIT_VERIFY,
            format!("failed suites: {}", summary.failed().join(", ")),
        ))
    }
}
