//! The `ergodic` command line front end.
//!
//! Every subcommand starts from a preset, applies explicit flag overrides,
//! runs one pipeline and emits a [`RunReport`] as text or JSON. Lower and
//! upper endpoints are rendered with directed rounding, so the serialized
//! report is itself an enclosure.

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::config::PrecisionConfig;
use crate::decimal::{common_prefix, places_for_prec, to_decimal};
use crate::dynsys::OperatorFamily;
use crate::error::Error;
use crate::quantities::{
    dimension_bounds, digit_frequency_bounds, entropy_bounds, finite_section_entropy_degree, generalized_entropy_bounds,
    lochs_constant, CertifiedDecimal,
};

#[derive(Debug, Parser)]
#[command(name = "ergodic", version, about = "Certified enclosures of ergodic quantities of the Bolyai-Renyi map")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Metric entropy of the acim.
    Entropy,
    /// Frequency of one digit in a typical expansion.
    Freq {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        digit: u32,
    },
    /// log 3 / h, base-3 digits per radical digit.
    Lochs,
    /// Hausdorff dimension of the set using only digits 1 and 3.
    Dim,
    /// Entropy of the degree-M generalization.
    GenEntropy {
        #[arg(long)]
        degree: u32,
    },
    /// Non-rigorous finite-section entropy estimate at rank M.
    FiniteSection {
        #[arg(long)]
        rank: usize,
        /// Map degree (2 is the classical map).
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Paper,
    Desk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Perturbation size for the entropy slopes.
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Rank of the operator matrix.
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Interpolation rank for the min-max check.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Subdivisions for ball suprema.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Inner Bernstein ellipse parameter.
    #[arg(long, global = true)]
    pub rho: Option<f64>,
    /// Outer Bernstein ellipse parameter.
    #[arg(long = "R", global = true)]
    pub big_r: Option<f64>,
    /// Working precision in bits.
    #[arg(long, global = true, env = "ERGODIC_PREC")]
    pub prec: Option<u32>,
    /// Target width of the dimension bracket.
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    /// Dimension bracket, lower end.
    #[arg(long, global = true, default_value_t = 0.5)]
    pub t0: f64,
    /// Dimension bracket, upper end.
    #[arg(long, global = true, default_value_t = 0.8)]
    pub t1: f64,
    /// Largest rank the dimension search may reach.
    #[arg(long, global = true, default_value_t = 200)]
    pub mmax: usize,
    /// Base parameter set; explicit flags override it.
    #[arg(long, global = true, value_enum, default_value_t = Preset::Desk)]
    pub preset: Preset,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// The machine-readable outcome of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub quantity: String,
    pub preset: Preset,
    pub params: PrecisionConfig,
    pub lower: String,
    pub upper: String,
    pub digits: String,
    pub places: usize,
    pub seconds: f64,
    /// `false` only for the finite-section estimate.
    pub rigorous: bool,
    /// Rank reached by the dimension search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_rank: Option<usize>,
}

/// A pipeline error together with the stage that raised it.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub quantity: String,
    pub error: Error,
}

impl Failure {
    pub fn stage(&self) -> &'static str {
        match self.error {
            Error::Parameter(_) => "parameter validation",
            Error::Bracket(_) => "initial bracket check",
            Error::NonPositiveEigenfunction { .. } => "eigenfunction positivity check",
            Error::RankExhausted { .. } => "rank escalation",
            Error::PrecisionInsufficient { .. } => "precision check",
            Error::Convergence { .. } => "power method",
            Error::InvalidBall(_) | Error::BranchCut => "ball arithmetic",
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {} failed: {}", self.quantity, self.stage(), self.error)
    }
}

/// Exit status for a failed run.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parameter(_) | Error::Bracket(_) => 2,
        Error::NonPositiveEigenfunction { .. } => 3,
        Error::RankExhausted { .. } => 4,
        Error::PrecisionInsufficient { .. } => 5,
        _ => 6,
    }
}

impl Command {
    pub fn quantity(&self) -> String {
        match self {
            Command::Entropy => "entropy".into(),
            Command::Freq { digit } => format!("freq{digit}"),
            Command::Lochs => "lochs".into(),
            Command::Dim => "dim".into(),
            Command::GenEntropy { degree } => format!("entropy[degree={degree}]"),
            Command::FiniteSection { rank, degree } if *degree == 2 => format!("finite-section[rank={rank}]"),
            Command::FiniteSection { rank, degree } => format!("finite-section[rank={rank},degree={degree}]"),
        }
    }
}

/// Preset values for `command`, with explicit flags applied on top.
pub fn resolve_config(command: &Command, opts: &Options) -> PrecisionConfig {
    let base = match (command, opts.preset) {
        (Command::Dim, Preset::Desk) => PrecisionConfig::desk_dimension(),
        (Command::Dim, Preset::Paper) => PrecisionConfig::paper_dimension(),
        (_, Preset::Desk) => PrecisionConfig::desk(),
        (_, Preset::Paper) => PrecisionConfig::paper(),
    };
    PrecisionConfig {
        prec: opts.prec.unwrap_or(base.prec),
        eps: opts.eps.unwrap_or(base.eps),
        m: opts.m.unwrap_or(base.m),
        n: opts.n.unwrap_or(base.n),
        k: opts.k.unwrap_or(base.k),
        rho: opts.rho.unwrap_or(base.rho),
        big_r: opts.big_r.unwrap_or(base.big_r),
        delta: opts.delta.unwrap_or(base.delta),
    }
}

/// Runs the pipeline selected by `cli`.
pub fn execute(cli: &Cli) -> Result<RunReport, Failure> {
    let quantity = cli.command.quantity();
    let fail = |error: Error| Failure {
        quantity: quantity.clone(),
        error,
    };
    let cfg = resolve_config(&cli.command, &cli.opts);
    cfg.validate().map_err(fail)?;
    let start = Instant::now();
    let mut final_rank = None;
    let (value, rigorous) = match &cli.command {
        Command::Entropy => (entropy_bounds(&cfg, &OperatorFamily::bolyai_full(0.0)), true),
        Command::Freq { digit } => (digit_frequency_bounds(*digit, &cfg), true),
        Command::Lochs => (
            entropy_bounds(&cfg, &OperatorFamily::bolyai_full(0.0)).and_then(|h| lochs_constant(&h)),
            true,
        ),
        Command::Dim => {
            let bracket = dimension_bounds(cli.opts.t0, cli.opts.t1, &cfg, cli.opts.mmax).map_err(fail)?;
            final_rank = Some(bracket.final_m);
            (bracket.to_decimal(), true)
        }
        Command::GenEntropy { degree } => (generalized_entropy_bounds(&cfg, *degree), true),
        Command::FiniteSection { rank, degree } => {
            let fs = finite_section_entropy_degree(*degree, *rank, cfg.prec).map_err(fail)?;
            let places = places_for_prec(cfg.prec);
            let lower = to_decimal(&fs.value, places, false);
            let upper = to_decimal(&fs.value, places, true);
            let (digits, places) = common_prefix(&lower, &upper);
            return Ok(RunReport {
                quantity,
                preset: cli.opts.preset,
                params: PrecisionConfig { m: *rank, ..cfg },
                lower,
                upper,
                digits,
                places,
                seconds: start.elapsed().as_secs_f64(),
                rigorous: false,
                final_rank: None,
            });
        }
    };
    let value: CertifiedDecimal = value.map_err(fail)?;
    Ok(RunReport {
        quantity: quantity.clone(),
        preset: cli.opts.preset,
        params: cfg,
        lower: value.lower,
        upper: value.upper,
        digits: value.digits,
        places: value.places,
        seconds: start.elapsed().as_secs_f64(),
        rigorous,
        final_rank,
    })
}

/// One report line plus a parameter echo, or the JSON document.
pub fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes"),
        Format::Text => {
            let p = &report.params;
            let preset = match report.preset {
                Preset::Paper => "paper",
                Preset::Desk => "desk",
            };
            let kind = if report.rigorous { "certified" } else { "heuristic" };
            let rank = match report.final_rank {
                Some(m) => format!(" final rank {m},"),
                None => String::new(),
            };
            format!(
                "{} = {}… ({} {kind} places)\n  lower {}\n  upper {}\n  preset {preset}: prec={} eps={:e} m={} n={} k={} rho={} R={} delta={:e},{rank} {:.2} s\n",
                report.quantity,
                report.digits,
                report.places,
                report.lower,
                report.upper,
                p.prec,
                p.eps,
                p.m,
                p.n,
                p.k,
                p.rho,
                p.big_r,
                p.delta,
                report.seconds,
            )
        }
    }
}

/// Parses `args`, runs, prints, and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            print!("{}", render(&report, cli.opts.format));
            if cli.opts.format == Format::Json {
                println!();
            }
            0
        }
        Err(failure) => {
            eprintln!("ergodic: {failure}");
            exit_code(&failure.error)
        }
    }
}
