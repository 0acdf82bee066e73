mod certificate;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::{Check, FieldChoice, JobConfig, Report};
use sdmkit_core::exact_algebra::{Rational, F32003};
use sdmkit_core::AlgebraError;

#[derive(Parser, Debug)]
#[command(name = "sdmkit", version, about = "Exact checks for determinantal and hypersurface rings")]
pub struct Cli {
    /// Coefficient field.
    #[arg(long, value_enum, default_value = "f32003", global = true)]
    pub field: FieldArg,
    /// Where the JSON report goes; tables go next to it with a .csv suffix.
    #[arg(long, default_value = "sdmkit-report.json", global = true)]
    pub out: PathBuf,
    /// Worker threads for graded-piece computations.
    #[arg(long, env = "SDMKIT_WORKERS", global = true)]
    pub workers: Option<usize>,
    /// Groebner step limit.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub step_cap: Option<u64>,
    /// Seconds before remaining Ext computations are skipped as infeasible.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub time_limit: Option<u64>,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldArg {
    F32003,
    Rational,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RingArg {
    Det,
    Hypersurface,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineArg {
    Syzygy,
    Truncated,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RingArgs {
    #[arg(long, value_enum, default_value = "det")]
    pub ring: RingArg,
    /// Columns (det) or the exponent in XY - Z^n (hypersurface).
    #[arg(long)]
    pub n: u32,
    /// Rows; defaults to n.
    #[arg(long)]
    pub m: Option<usize>,
    /// Minor size; defaults to min(m, n).
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cmd {
    /// AB = BA = fI for the determinant or hypersurface factorizations.
    VerifyMatfac {
        #[command(flatten)]
        ring: RingArgs,
        /// Hypersurface class m; all 0 < m < n when absent.
        #[arg(long, alias = "ell")]
        class: Option<i64>,
    },
    /// A free resolution of the ideal realizing a class.
    Resolution {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, alias = "ell", allow_hyphen_values = true)]
        class: i64,
        #[arg(long, default_value_t = 4)]
        length: usize,
    },
    /// The presentation matrix of p^l over R_n(X).
    Gamma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Certifies im gamma = ker eps.
    Presentation {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
    },
    /// Writes a product of minors in the standard monomial basis.
    Straighten {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        /// Factors like "[1,2|1,3]*[1|2]".
        #[arg(long)]
        factors: String,
    },
    /// Every Plücker relation of a generic m x p matrix vanishes.
    Plucker {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
    },
    /// Every cofactor identity vanishes in R_n(X).
    CofactorId {
        #[arg(long)]
        n: usize,
    },
    /// Localization at the last variable sends R_t(X) to R_(t-1)(Y)[...].
    Localize {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Ext^i(C, C) for 1 <= i <= imax.
    Ext {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, alias = "ell", allow_hyphen_values = true)]
        class: i64,
        #[arg(long, default_value_t = 3)]
        imax: usize,
        #[arg(long, value_enum, default_value = "syzygy")]
        engine: EngineArg,
        /// Piece-degree bound for the truncated engine.
        #[arg(long)]
        bound: Option<i32>,
    },
    /// How far a class is semidualizing.
    Classify {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, alias = "ell", allow_hyphen_values = true)]
        class: i64,
        #[arg(long, default_value_t = 3)]
        imax: usize,
        #[arg(long, value_enum, default_value = "syzygy")]
        engine: EngineArg,
        #[arg(long)]
        bound: Option<i32>,
    },
    /// Group laws at the ideal level, and which classes are rigid.
    Clgroup {
        #[command(flatten)]
        ring: RingArgs,
        /// Classes -range..=range (determinantal).
        #[arg(long, default_value_t = 2)]
        range: i64,
        #[arg(long, default_value_t = 1)]
        imax: usize,
    },
    /// Ext table for R_t(X) over an m x n matrix.
    ConjectureTable {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 4)]
        imax: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,1")]
        classes: Vec<i64>,
        #[arg(long, value_enum, default_value = "syzygy")]
        engine: EngineArg,
        #[arg(long)]
        bound: Option<i32>,
    },
    /// Quick built-in checks, or re-verification of a report's certificates.
    Selftest {
        #[arg(long)]
        replay: Option<PathBuf>,
    },
}

impl Cmd {
    pub fn name(&self) -> &'static str {
        match self {
            Cmd::VerifyMatfac { .. } => "verify-matfac",
            Cmd::Resolution { .. } => "resolution",
            Cmd::Gamma { .. } => "gamma",
            Cmd::Presentation { .. } => "presentation",
            Cmd::Straighten { .. } => "straighten",
            Cmd::Plucker { .. } => "plucker",
            Cmd::CofactorId { .. } => "cofactor-id",
            Cmd::Localize { .. } => "localize",
            Cmd::Ext { .. } => "ext",
            Cmd::Classify { .. } => "classify",
            Cmd::Clgroup { .. } => "clgroup",
            Cmd::ConjectureTable { .. } => "conjecture-table",
            Cmd::Selftest { .. } => "selftest",
        }
    }
}

fn job_config(cli: &Cli) -> JobConfig {
    let (i_max, engine, bound, format) = match &cli.cmd {
        Cmd::Ext { imax, engine, bound, .. }
        | Cmd::Classify { imax, engine, bound, .. }
        | Cmd::ConjectureTable { imax, engine, bound, .. } => (Some(*imax), Some(*engine), *bound, None),
        Cmd::Clgroup { imax, .. } => (Some(*imax), None, None, None),
        Cmd::Gamma { format, .. } => (None, None, None, Some(*format)),
        _ => (None, None, None, None),
    };
    let tag = |v: serde_json::Value| v.as_str().map(String::from);
    JobConfig {
        command: cli.cmd.name().into(),
        field: match cli.field {
            FieldArg::F32003 => FieldChoice::F32003,
            FieldArg::Rational => FieldChoice::Rational,
        },
        bound,
        i_max,
        engine: engine.and_then(|e| tag(serde_json::to_value(e).unwrap())),
        step_cap: cli.step_cap,
        time_limit_s: cli.time_limit,
        format: format.and_then(|f| tag(serde_json::to_value(f).unwrap())),
        out: cli.out.display().to_string(),
        seed: cli.seed,
        workers: cli.workers,
        args: serde_json::to_value(&cli.cmd).unwrap(),
    }
}

fn usage_error(e: &AlgebraError) -> bool {
    matches!(
        e,
        AlgebraError::Precondition(_)
            | AlgebraError::Parse(_)
            | AlgebraError::OutOfRange(_)
            | AlgebraError::IncompatibleContext(_)
            | AlgebraError::DimensionMismatch(_)
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    let start = Instant::now();
    let mut report = Report::new(job_config(&cli));
    let result = match cli.field {
        FieldArg::F32003 => commands::run::<F32003>(&cli, &mut report),
        FieldArg::Rational => commands::run::<Rational>(&cli, &mut report),
    };
    let mut code = 0;
    if let Err(e) = result {
        report.error = Some(e.to_string());
        match &e {
            commands::CliError::Algebra(AlgebraError::Infeasible(r)) => report.check(Check::infeasible(cli.cmd.name(), r.clone())),
            commands::CliError::Algebra(a) if usage_error(a) => code = 2,
            commands::CliError::Usage(_) => code = 2,
            _ => code = 1,
        }
        eprintln!("error: {e}");
    }
    report.wall_time_ms = start.elapsed().as_millis();
    if let Err(e) = report.write(&cli.out) {
        eprintln!("error: cannot write {}: {e}", cli.out.display());
        return ExitCode::from(1);
    }
    eprintln!("{}", report.summary());
    if code == 0 && report.failed() {
        code = 1;
    }
    ExitCode::from(code)
}
