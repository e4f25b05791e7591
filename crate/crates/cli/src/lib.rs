//! Command-line front end for the `svsplit` toolkit.
//!
//! Every subcommand produces a [`RunReport`]; numeric series go to CSV
//! [`Table`]s written next to the report when `--out` is given.

mod commands;
pub mod report;
pub mod table;

use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use svsplit::selection::DEFAULT_SAMPLES;
use svsplit::{Error, Tolerances};

pub use report::{Check, RunConfig, RunReport, EXIT_CERTIFICATE, EXIT_CONFIG, EXIT_OK};
pub use table::Table;

#[derive(Debug, Parser)]
#[command(
    name = "svsplit",
    version,
    about = "Convex bodies, P-sets and Lipschitz splitting of set-valued maps"
)]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Certificate tolerance for residuals and membership slack.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Points per full turn for arc-based bodies.
    #[arg(long, global = true, default_value_t = 720)]
    pub arc_points: usize,
    /// Approximation radius for `split approx`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub epsilon: Option<f64>,
    /// Directory for report.json and CSV tables.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Solver tolerance record.
    #[arg(
        long,
        global = true,
        env = "SVSPLIT_TOL_PROFILE",
        default_value = "default"
    )]
    pub tol_profile: String,
    #[command(subcommand)]
    pub command: Command,
}

/// Bodies are given as a JSON file, inline JSON (`{...}`) or a zoo name.
#[derive(Clone, Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Support value and support point of a body in a direction.
    Support {
        #[arg(long)]
        body: String,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        direction: Vec<f64>,
    },
    /// Hausdorff distance between two bodies, with its error bound.
    Hausdorff {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Steiner point.
    Steiner {
        #[arg(long)]
        body: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Chebyshev center and radius.
    Chebyshev {
        #[arg(long)]
        body: String,
    },
    /// Minkowski sum or geometric difference.
    Minkowski {
        op: MinkowskiOp,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Intersection with the hyperplane `normal·x = offset`.
    Slice {
        #[arg(long)]
        body: String,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        normal: Vec<f64>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        offset: f64,
    },
    /// Classify one body as a P-set.
    PsetCheck {
        #[arg(long)]
        body: String,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
    },
    /// Classify several bodies; a failing row does not stop the table.
    PsetTable {
        bodies: Vec<String>,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
    },
    /// Split a selection with a request file or a bundled demo.
    Split {
        mode: SplitModeArg,
        #[arg(long, conflicts_with = "demo")]
        request: Option<PathBuf>,
        #[arg(long)]
        demo: Option<String>,
        /// Samples of the demo grid.
        #[arg(long, default_value_t = 21)]
        grid: usize,
    },
    /// Intersection-modulus consistency check for two maps.
    Modulus {
        #[arg(long, requires = "f2", conflicts_with = "family")]
        f1: Option<PathBuf>,
        #[arg(long)]
        f2: Option<PathBuf>,
        /// Bundled pair: translating_ball, rotating_polytope or tilting_segment.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
    /// Decomposition gap of the arc example across its corner point.
    Example11 {
        #[arg(long, value_delimiter = ',', default_value = "0.05,0.02,0.01")]
        deltas: Vec<f64>,
        /// Samples of the plotted curve `(t, a(c(t)))`.
        #[arg(long, default_value_t = 61)]
        curve_points: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinkowskiOp {
    Sum,
    Diff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitModeArg {
    Sum,
    Strict,
    Surjection,
    Approx,
}

impl SplitModeArg {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Sum => "sum",
            Self::Strict => "strict",
            Self::Surjection => "surjection",
            Self::Approx => "approx",
        }
    }
}

/// A finished run: the report and the tables and JSON side files it names.
pub struct Outcome {
    pub report: RunReport,
    pub tables: Vec<(String, Table)>,
    pub json: Vec<(String, serde_json::Value)>,
}

impl Cli {
    fn config(&self) -> Result<RunConfig, Error> {
        let tolerances = Tolerances::from_profile(&self.tol_profile).ok_or_else(|| {
            Error::Config(format!("unknown tolerance profile `{}`", self.tol_profile))
        })?;
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::Config("--tol must be positive".into()));
        }
        Ok(RunConfig {
            seed: self.seed,
            tol_profile: self.tol_profile.clone(),
            tolerances,
            certificate_tol: self.tol,
            arc_points: self.arc_points,
            epsilon: self.epsilon,
        })
    }

    /// Run the command. Input errors and mathematical failures both end up
    /// in the report; the exit code tells them apart.
    pub fn run(&self) -> Outcome {
        let command = serde_json::to_value(&self.command).expect("commands serialize");
        let config = match self.config() {
            Ok(c) => c,
            Err(e) => {
                let fallback = RunConfig {
                    seed: self.seed,
                    tol_profile: self.tol_profile.clone(),
                    tolerances: Tolerances::default(),
                    certificate_tol: self.tol,
                    arc_points: self.arc_points,
                    epsilon: self.epsilon,
                };
                let mut report = RunReport::new(command, fallback);
                report.error = Some(report::ErrorInfo::from_error(&e));
                return Outcome {
                    report: report.finish(),
                    tables: Vec::new(),
                    json: Vec::new(),
                };
            }
        };
        let mut out = Outcome {
            report: RunReport::new(command, config.clone()),
            tables: Vec::new(),
            json: Vec::new(),
        };
        if let Err(e) = commands::dispatch(&self.command, &config, &mut out) {
            out.report.error = Some(report::ErrorInfo::from_error(&e));
        }
        out.report.artifacts = out
            .tables
            .iter()
            .map(|(n, _)| format!("{n}.csv"))
            .chain(out.json.iter().map(|(n, _)| format!("{n}.json")))
            .collect();
        out.report = out.report.finish();
        out
    }
}

impl Outcome {
    pub fn report_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Write `report.json` and every artifact into `dir`.
    pub fn write_to(&self, dir: &Path) -> anyhow::Result<()> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        std::fs::write(dir.join("report.json"), self.report_json())?;
        for (name, table) in &self.tables {
            table.save(&dir.join(format!("{name}.csv")))?;
        }
        for (name, value) in &self.json {
            let mut s = serde_json::to_string_pretty(value)?;
            s.push('\n');
            std::fs::write(dir.join(format!("{name}.json")), s)?;
        }
        Ok(())
    }
}
