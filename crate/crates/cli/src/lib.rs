//! Command-line driver: reads a dual graph, computes zeta functions, checks the
//! divisorial closed form against the stratum sum, and counts strata.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use divzeta::zeta::ZetaError;
use divzeta::{
    closed_form, closed_series, count_strata, enumerate_stable_pairs, verify, DualGraph,
    GraphError, MeasureError, MeasureKind, MeasureSpec, ZetaKind, DEFAULT_ORDER,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Compute,
    Verify,
    CountStrata,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZetaArg {
    Divisorial,
    Hilbert,
    KapranovNodal,
    KapranovSmooth,
}

impl From<ZetaArg> for ZetaKind {
    fn from(z: ZetaArg) -> Self {
        match z {
            ZetaArg::Divisorial => ZetaKind::Divisorial,
            ZetaArg::Hilbert => ZetaKind::Hilbert,
            ZetaArg::KapranovNodal => ZetaKind::KapranovNodal,
            ZetaArg::KapranovSmooth => ZetaKind::KapranovSmooth,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Symbolic,
    Euler,
    PointCount,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Coefficients,
    Rational,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "divzeta",
    version,
    about = "Motivic zeta functions of stable marked curves"
)]
pub struct Cli {
    /// Same as --mode.
    #[arg(value_enum, value_name = "MODE")]
    pub mode_arg: Option<Mode>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Dual graph JSON file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "divisorial")]
    pub zeta: ZetaArg,
    #[arg(long, default_value_t = DEFAULT_ORDER as u32)]
    pub max_degree: u32,
    #[arg(long, value_enum)]
    pub measure: Option<MeasureArg>,
    /// Field size for --measure point-count.
    #[arg(long)]
    pub q: Option<i64>,
    /// Measure config JSON, e.g. {"measure":"point-count","q":3,"numerators":{"m":[1,-2,5]}}.
    #[arg(long)]
    pub measure_spec: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "coefficients")]
    pub output: OutputFormat,
    /// Accept an unstable single smooth component (e.g. P^1 or the torus).
    #[arg(long)]
    pub allow_unstable: bool,
    /// With count-strata, list every stable pair.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("invalid measure: {0}")]
    MeasureSpec(serde_json::Error),
    #[error("{0}")]
    Measure(#[from] MeasureError),
    #[error("{0}")]
    Zeta(#[from] ZetaError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            _ => EXIT_VALIDATION,
        }
    }
}

/// Validated run parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub mode: Mode,
    pub zeta: ZetaKind,
    pub max_degree: u32,
    pub measure: MeasureSpec,
    pub output: OutputFormat,
    pub input: PathBuf,
    pub allow_unstable: bool,
    pub dump: bool,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig, CliError> {
        let mode = match (cli.mode_arg, cli.mode) {
            (Some(a), Some(b)) if a != b => {
                return Err(CliError::Usage("conflicting modes given".into()))
            }
            (Some(m), _) | (None, Some(m)) => m,
            (None, None) => Mode::Compute,
        };
        let zeta = ZetaKind::from(cli.zeta);
        if mode == Mode::Verify && zeta != ZetaKind::Divisorial {
            return Err(CliError::Usage(
                "verify only applies to the divisorial zeta function".into(),
            ));
        }
        let mut measure = match &cli.measure_spec {
            Some(p) => serde_json::from_str(&read(p)?).map_err(CliError::MeasureSpec)?,
            None => MeasureSpec::default(),
        };
        if let Some(m) = cli.measure {
            measure.measure = match m {
                MeasureArg::Symbolic => MeasureKind::Symbolic,
                MeasureArg::Euler => MeasureKind::Euler,
                MeasureArg::PointCount => MeasureKind::PointCount,
            };
        }
        if cli.q.is_some() {
            measure.q = cli.q;
        }
        if measure.measure == MeasureKind::PointCount && measure.q.is_none() {
            return Err(CliError::Usage("point-count needs --q".into()));
        }
        Ok(RunConfig {
            mode,
            zeta,
            max_degree: cli.max_degree,
            measure,
            output: cli.output,
            input: cli.input,
            allow_unstable: cli.allow_unstable,
            dump: cli.dump,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub legs: usize,
    pub punctures: u64,
    pub genus: u64,
}

impl GraphSummary {
    pub fn of(g: &DualGraph) -> Self {
        GraphSummary {
            vertices: g.vertices().len(),
            edges: g.edges().len(),
            legs: g.legs().len(),
            punctures: g.total_punctures(),
            genus: g.total_genus(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyLine {
    pub degree: u32,
    pub oracle: String,
    pub closed: String,
    pub difference: String,
}

/// Machine-readable report, the `--output json` schema.
///
/// Ring elements are written in canonical text form (integers under a
/// numeric measure).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub graph: GraphSummary,
    pub mode: Mode,
    pub zeta: String,
    pub measure: MeasureKind,
    pub max_degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<VerifyLine>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata_counts: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata: Option<Vec<Vec<String>>>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.verified {
            Some(false) => EXIT_MISMATCH,
            _ => EXIT_OK,
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        if format == OutputFormat::Json {
            return serde_json::to_string_pretty(self).expect("report serializes") + "\n";
        }
        let mut s = String::new();
        let g = &self.graph;
        let _ = writeln!(
            s,
            "graph: |V|={} |E|={} n={} punctures={} genus={}",
            g.vertices, g.edges, g.legs, g.punctures, g.genus
        );
        let measure = serde_json::to_value(self.measure).expect("kind serializes");
        let _ = writeln!(
            s,
            "zeta: {}  measure: {}  max-degree: {}",
            self.zeta,
            measure.as_str().unwrap_or_default(),
            self.max_degree
        );
        if let (Some(cs), true) = (&self.coefficients, format == OutputFormat::Coefficients) {
            for (d, c) in cs.iter().enumerate() {
                let _ = writeln!(s, "t^{d}: {c}");
            }
        }
        if let Some(r) = &self.rational {
            let _ = writeln!(s, "rational: {r}");
        }
        if let Some(rows) = &self.verification {
            for r in rows {
                let _ = writeln!(
                    s,
                    "d={}: oracle = {} | closed = {} | difference = {}",
                    r.degree, r.oracle, r.closed, r.difference
                );
            }
        }
        if let Some(v) = self.verified {
            let _ = writeln!(s, "verified: {}", if v { "yes" } else { "NO" });
        }
        if let Some(counts) = &self.strata_counts {
            for (d, c) in counts.iter().enumerate() {
                let _ = writeln!(s, "d={d}: {c}");
                if let Some(dump) = &self.strata {
                    for line in &dump[d] {
                        let _ = writeln!(s, "  {line}");
                    }
                }
            }
        }
        s
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = DualGraph::from_json(&read(&cfg.input)?, cfg.allow_unstable)?;
    let measure = cfg.measure.build(&g)?;
    let mut report = Report {
        graph: GraphSummary::of(&g),
        mode: cfg.mode,
        zeta: cfg.zeta.name().to_string(),
        measure: cfg.measure.measure,
        max_degree: cfg.max_degree,
        coefficients: None,
        rational: None,
        verification: None,
        verified: None,
        strata_counts: None,
        strata: None,
    };
    match cfg.mode {
        Mode::Compute => {
            let series = closed_series(cfg.zeta, &g, cfg.max_degree as usize)?;
            let series = measure.apply_series(&series)?;
            report.coefficients = Some(series.coeffs().iter().map(ToString::to_string).collect());
            let cf = closed_form(cfg.zeta, &g)?;
            report.rational = Some(if measure.is_symbolic() {
                cf.to_string()
            } else {
                measure.realize(&cf)?.to_string()
            });
        }
        Mode::Verify => {
            let r = verify(&g, cfg.max_degree, &measure)?;
            report.verified = Some(r.is_verified());
            report.verification = Some(
                r.rows
                    .iter()
                    .map(|row| VerifyLine {
                        degree: row.degree,
                        oracle: row.oracle.to_string(),
                        closed: row.closed.to_string(),
                        difference: row.difference.to_string(),
                    })
                    .collect(),
            );
        }
        Mode::CountStrata => {
            if cfg.dump {
                let dump: Vec<Vec<String>> = (0..=cfg.max_degree)
                    .map(|d| {
                        enumerate_stable_pairs(&g, d)
                            .iter()
                            .map(|p| p.dump(&g))
                            .collect()
                    })
                    .collect();
                report.strata_counts = Some(dump.iter().map(Vec::len).collect());
                report.strata = Some(dump);
            } else {
                report.strata_counts = Some(count_strata(&g, cfg.max_degree));
            }
        }
    }
    Ok(report)
}

/// Parses arguments, runs, and returns `(exit code, stdout, stderr)`.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                (code, text, String::new())
            } else {
                (code, String::new(), text)
            };
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| {
        let report = execute(&cfg)?;
        Ok((report.exit_code(), report.render(cfg.output)))
    });
    match result {
        Ok((code, out)) => (code, out, String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
