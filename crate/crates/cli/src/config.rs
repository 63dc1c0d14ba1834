//! Experiment configuration and validation.

use std::str::FromStr;

use pq_approx::{king_interval_end, FunctionSpec, IntegrationPolicy, OperatorKind, PqParams};
use serde::Serialize;
use thiserror::Error;

// Note on the King grid cap: the stated interval end [n+2]/(p[n]) shrinks as
// n grows (for p < 1), so a shared grid capped by the smallest n reaches
// slightly beyond the stated interval of the larger orders; the operator
// accepts any x >= 0 with sign-tracked weights, so those points stay
// well-defined.

/// Uniform evaluation grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl GridSpec {
    /// The `i`-th point; endpoints are returned exactly.
    pub fn point(&self, i: usize) -> f64 {
        debug_assert!(i < self.points);
        if i == 0 {
            self.start
        } else if i == self.points - 1 {
            self.end
        } else {
            self.start + (self.end - self.start) * i as f64 / (self.points - 1) as f64
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|i| self.point(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format {other:?}; use csv or json")),
        }
    }
}

/// Configuration or input-parsing failure; maps to exit code 2.
#[derive(Debug, Clone, Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

/// Where a report goes and in which format. The path never enters the
/// serialized config echo: embedding the destination inside the artifact it
/// names would make two otherwise-identical runs differ byte-wise just
/// because they were written to different files.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputSpec {
    pub format: OutputFormat,
    /// Target path; stdout when absent.
    #[serde(skip_serializing)]
    pub path: Option<String>,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            format: OutputFormat::Csv,
            path: None,
        }
    }
}

/// A validated convergence/limit/profile experiment.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub operator: OperatorKind,
    pub params: PqParams,
    pub n_values: Vec<u32>,
    pub function: FunctionSpec,
    pub grid: GridSpec,
    pub output: OutputSpec,
    pub tol: f64,
}

/// Serializable echo of a config, embedded in every JSON report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub operator: String,
    pub p: f64,
    pub q: f64,
    pub n_values: Vec<u32>,
    pub function: String,
    pub grid: GridSpec,
    pub output: OutputSpec,
    pub tol: f64,
}

pub fn operator_name(kind: OperatorKind) -> &'static str {
    match kind {
        OperatorKind::Bernstein => "bernstein",
        OperatorKind::Durrmeyer => "durrmeyer",
        OperatorKind::KingDurrmeyer => "king_durrmeyer",
    }
}

impl ExperimentConfig {
    pub fn new(
        operator: OperatorKind,
        params: PqParams,
        n_values: Vec<u32>,
        function: FunctionSpec,
        grid: GridSpec,
        tol: f64,
    ) -> Result<Self, ConfigError> {
        Self::with_output(
            operator,
            params,
            n_values,
            function,
            grid,
            OutputSpec::default(),
            tol,
        )
    }

    #[allow(clippy::too_many_arguments)]
    pub fn with_output(
        operator: OperatorKind,
        params: PqParams,
        n_values: Vec<u32>,
        function: FunctionSpec,
        grid: GridSpec,
        output: OutputSpec,
        tol: f64,
    ) -> Result<Self, ConfigError> {
        if n_values.is_empty() {
            return Err(ConfigError("n list must not be empty".into()));
        }
        if !n_values.windows(2).all(|w| w[0] < w[1]) {
            return Err(ConfigError(format!(
                "n values must be strictly increasing, got {n_values:?}"
            )));
        }
        if n_values[0] == 0 {
            return Err(ConfigError("n values must be positive".into()));
        }
        if grid.points < 2 {
            return Err(ConfigError(format!(
                "grid needs at least 2 points, got {}",
                grid.points
            )));
        }
        if !grid.start.is_finite() || !grid.end.is_finite() || grid.start >= grid.end {
            return Err(ConfigError(format!(
                "grid start must be below grid end, got [{}, {}]",
                grid.start, grid.end
            )));
        }
        // validate the tolerance through the policy constructor
        IntegrationPolicy::new(tol, 20_000).map_err(|e| ConfigError(e.to_string()))?;

        let p = params.p();
        match operator {
            OperatorKind::Bernstein => {
                if grid.start < 0.0 || grid.end > 1.0 {
                    return Err(ConfigError(format!(
                        "the Bernstein operator is evaluated on [0,1]; grid reaches [{}, {}]",
                        grid.start, grid.end
                    )));
                }
                if !function.covers(0.0, 1.0) {
                    return Err(ConfigError(format!(
                        "function domain {:?} must cover [0, 1] (Bernstein nodes fill it)",
                        function.domain()
                    )));
                }
            }
            OperatorKind::Durrmeyer => {
                if grid.start < 0.0 || grid.end > 1.0 {
                    return Err(ConfigError(format!(
                        "the Durrmeyer operator is evaluated on [0,1]; grid reaches [{}, {}]",
                        grid.start, grid.end
                    )));
                }
                if !function.covers(0.0, 1.0 / p) {
                    return Err(ConfigError(format!(
                        "function domain {:?} must cover [0, {}]: integration nodes reach 1/p",
                        function.domain(),
                        1.0 / p
                    )));
                }
            }
            OperatorKind::KingDurrmeyer => {
                let end = king_interval_end(n_values[0], params);
                if grid.start < 0.0 || grid.end > end + 1e-12 {
                    return Err(ConfigError(format!(
                        "King grid must stay inside [0, {end}] (the stated interval for the \
                         smallest n = {}); grid reaches [{}, {}]",
                        n_values[0], grid.start, grid.end
                    )));
                }
                let reach = (1.0 / p).max(grid.end);
                if !function.covers(0.0, reach) {
                    return Err(ConfigError(format!(
                        "function domain {:?} must cover [0, {reach}]",
                        function.domain()
                    )));
                }
            }
        }
        Ok(Self {
            operator,
            params,
            n_values,
            function,
            grid,
            output,
            tol,
        })
    }

    pub fn policy(&self) -> IntegrationPolicy {
        IntegrationPolicy::new(self.tol, 20_000).expect("validated at construction")
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            operator: operator_name(self.operator).to_string(),
            p: self.params.p(),
            q: self.params.q(),
            n_values: self.n_values.clone(),
            function: self.function.describe(),
            grid: self.grid,
            output: self.output.clone(),
            tol: self.tol,
        }
    }
}
