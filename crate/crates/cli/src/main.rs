//! `ancrc`: run the verification suites or print tables.
//!
//! Exit codes: 0 when every case passes, 1 when some case fails, 2 on a
//! configuration error.

mod parse;
mod table;

use ancrc_core::an_geometry::{SmallQCPoint, TorusWeights};
use ancrc_core::periods::PeriodParams;
use ancrc_core::verify::{self, Report, RunConfig, Suite};
use ancrc_core::{PrecisionPolicy, C64};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ancrc", version, about = "Numerical checks of the open crepant resolution correspondence for A_n")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report per-case errors.
    Verify(VerifyArgs),
    /// Print a matrix or correlator grid.
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    /// gamma, hypergeom, cohomology, mirror, periods, ocrc, monodromy or all (comma separated)
    #[arg(long, default_value = "all")]
    suite: String,
    /// inclusive range of n, e.g. 1..4
    #[arg(long = "n", default_value = "1..4", value_parser = parse::n_range)]
    n: (usize, usize),
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "tol-gamma")]
    tol_gamma: Option<f64>,
    #[arg(long = "tol-hypergeom")]
    tol_hypergeom: Option<f64>,
    #[arg(long = "tol-cohomology")]
    tol_cohomology: Option<f64>,
    #[arg(long = "tol-mirror")]
    tol_mirror: Option<f64>,
    #[arg(long = "tol-periods")]
    tol_periods: Option<f64>,
    #[arg(long = "tol-ocrc")]
    tol_ocrc: Option<f64>,
    #[arg(long = "tol-monodromy")]
    tol_monodromy: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    UMatrix,
    Oz,
    AMatrices,
    Correlators,
    Monodromy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LegArg {
    Ineffective,
    Effective,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    X,
    Y,
}

#[derive(Args)]
struct TableArgs {
    what: What,
    #[arg(long = "n", default_value_t = 1)]
    n: usize,
    #[arg(long, default_value = "0.7+0.2i", value_parser = parse::complex, allow_hyphen_values = true)]
    alpha1: C64,
    #[arg(long, default_value = "1.1-0.3i", value_parser = parse::complex, allow_hyphen_values = true)]
    alpha2: C64,
    #[arg(long, default_value = "3.1+0.4i", value_parser = parse::complex, allow_hyphen_values = true)]
    z: C64,
    /// boundary condition for `oz`
    #[arg(long, value_enum, default_value = "ineffective")]
    leg: LegArg,
    /// winding for `oz`
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// side for `correlators`
    #[arg(long, value_enum, default_value = "y")]
    side: SideArg,
    /// Y point t_1,..,t_{n+1} (default -0.7 for each t_i, 0 for t_{n+1})
    #[arg(long, value_parser = parse::complex, value_delimiter = ',', allow_hyphen_values = true)]
    t: Option<Vec<C64>>,
    /// X point x_1,..,x_{n+1} (default 0.05 each)
    #[arg(long, value_parser = parse::complex, value_delimiter = ',', allow_hyphen_values = true)]
    x: Option<Vec<C64>>,
    /// exponent a for `monodromy` (otherwise from alpha and z)
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    a: Option<C64>,
    /// exponent b for `monodromy`, given together with --a
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    b: Option<C64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

enum Failure {
    Config(String),
    Runtime(String),
}

impl From<ancrc_core::Error> for Failure {
    fn from(e: ancrc_core::Error) -> Self {
        match e {
            ancrc_core::Error::Config(_) => Failure::Config(e.to_string()),
            ancrc_core::Error::Resonance(_) | ancrc_core::Error::Domain(_) | ancrc_core::Error::Pole { .. } => {
                Failure::Config(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let r = match cli.cmd {
        Command::Verify(a) => cmd_verify(a),
        Command::Table(a) => cmd_table(a).map(|()| true),
    };
    match r {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<bool, Failure> {
    let suites = Suite::parse_list(&a.suite)?;
    let mut tol_overrides = BTreeMap::new();
    for (s, t) in [
        (Suite::Gamma, a.tol_gamma),
        (Suite::Hypergeom, a.tol_hypergeom),
        (Suite::Cohomology, a.tol_cohomology),
        (Suite::Mirror, a.tol_mirror),
        (Suite::Periods, a.tol_periods),
        (Suite::Ocrc, a.tol_ocrc),
        (Suite::Monodromy, a.tol_monodromy),
    ] {
        if let Some(t) = t {
            tol_overrides.insert(s, t);
        }
    }
    let cfg = RunConfig {
        suites,
        n_min: a.n.0,
        n_max: a.n.1,
        samples: a.samples,
        seed: a.seed,
        tol_overrides,
        policy: PrecisionPolicy::from_env()?,
    };
    let report = verify::run(&cfg)?;
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&report).map_err(|e| Failure::Runtime(e.to_string()))? + "\n",
        Format::Csv => report_csv(&report).map_err(|e| Failure::Runtime(e.to_string()))?,
        Format::Text => report_text(&report),
    };
    match &a.out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Config(format!("cannot write {}: {e}", p.display())))?
        }
        None => print!("{text}"),
    }
    eprintln!(
        "{} of {} cases passed in {:.1} s",
        report.summary.passed, report.summary.total, report.summary.wall_time
    );
    Ok(report.all_passed())
}

fn report_csv(r: &Report) -> Result<String, Box<dyn std::error::Error>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["suite", "case_id", "n", "params", "max_abs_err", "tolerance", "pass", "note"])?;
    for c in &r.cases {
        w.write_record([
            c.suite.name().to_string(),
            c.case_id.clone(),
            c.n.map(|n| n.to_string()).unwrap_or_default(),
            serde_json::to_string(&c.params)?,
            c.max_abs_err.map(|e| format!("{e:e}")).unwrap_or_default(),
            format!("{:e}", c.tolerance),
            c.pass.to_string(),
            c.note.clone().unwrap_or_default(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn report_text(r: &Report) -> String {
    let width = r.cases.iter().map(|c| c.suite.name().len() + c.case_id.len() + 1).max().unwrap_or(0);
    let mut s = String::new();
    for c in &r.cases {
        let id = format!("{}/{}", c.suite, c.case_id);
        let err = c.max_abs_err.map(|e| format!("{e:.3e}")).unwrap_or_else(|| "error".into());
        s.push_str(&format!(
            "{} {id:width$}  err {err:>10}  tol {:.1e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.tolerance
        ));
        if let Some(note) = &c.note {
            s.push_str(&format!("  ({note})"));
        }
        s.push('\n');
    }
    s.push_str(&format!("{} of {} passed, {:.1} s\n", r.summary.passed, r.summary.total, r.summary.wall_time));
    s
}

fn cmd_table(a: TableArgs) -> Result<(), Failure> {
    if a.n == 0 {
        return Err(Failure::Config("n must be at least 1".into()));
    }
    let w = TorusWeights::new(a.n, a.alpha1, a.alpha2)?;
    let tables = match a.what {
        What::UMatrix => table::u_matrix(&PeriodParams::new(w, a.z)?)?,
        What::AMatrices => table::a_matrices(&PeriodParams::new(w, a.z)?)?,
        What::Oz => {
            if a.d == 0 {
                return Err(Failure::Config("d must be at least 1".into()));
            }
            table::oz(&w, a.leg == LegArg::Effective, a.d)?
        }
        What::Correlators => {
            let point = match a.side {
                SideArg::Y => {
                    let mut t = vec![C64::new(-0.7, 0.0); a.n];
                    t.push(C64::new(0.0, 0.0));
                    SmallQCPoint::y(point_arg(a.t, t, a.n)?)?
                }
                SideArg::X => SmallQCPoint::x(point_arg(a.x, vec![C64::new(0.05, 0.0); a.n + 1], a.n)?),
            };
            table::correlators(&w, &point)?
        }
        What::Monodromy => {
            if a.n != 1 {
                return Err(Failure::Config("monodromy tables exist for n = 1 only".into()));
            }
            let (ea, eb) = match (a.a, a.b) {
                (Some(x), Some(y)) => (x, y),
                (None, None) => {
                    let p = PeriodParams::new(w, a.z)?;
                    (p.a(), p.b())
                }
                _ => return Err(Failure::Config("give both --a and --b or neither".into())),
            };
            table::monodromy(ea, eb)?
        }
    };
    let text = match a.format {
        Format::Text => table::render_text(&tables),
        Format::Csv => table::render_csv(&tables).map_err(|e| Failure::Runtime(e.to_string()))?,
        Format::Json => table::render_json(&tables) + "\n",
    };
    print!("{text}");
    Ok(())
}

fn point_arg(given: Option<Vec<C64>>, default: Vec<C64>, n: usize) -> Result<Vec<C64>, Failure> {
    let v = given.unwrap_or(default);
    if v.len() != n + 1 {
        return Err(Failure::Config(format!("expected {} coordinates, got {}", n + 1, v.len())));
    }
    Ok(v)
}
