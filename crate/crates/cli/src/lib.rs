//! Shared plumbing for the `drazinlab` binary: error-to-exit-code
//! mapping, tolerance resolution, and the command implementations.

pub mod campaign;
pub mod commands;
pub mod report;

use drazinlab_core::{
    DrazinError, GenError, IdentityError, JsonError, MatrixError, SolveError, DEFAULT_EPS_REL,
};
use serde_json::{json, Value};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
/// A formula, oracle, or condition verdict came back negative.
pub const EXIT_FAIL: i32 = 1;
/// Input could not be parsed or the configuration is invalid.
pub const EXIT_INPUT: i32 = 2;
/// A floating-point rank decision sat too close to its threshold.
pub const EXIT_AMBIGUOUS: i32 = 3;
/// A strict precondition (entwining condition, group-index bound) refused.
pub const EXIT_REFUSED: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Ambiguous(String),
    #[error("{message}")]
    Refused { message: String, detail: Option<Value> },
    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => EXIT_INPUT,
            CliError::Failed(_) => EXIT_FAIL,
            CliError::Ambiguous(_) => EXIT_AMBIGUOUS,
            CliError::Refused { .. } => EXIT_REFUSED,
        }
    }

    /// Structured context printed to stdout alongside the stderr message.
    pub fn detail_json(&self) -> Option<Value> {
        match self {
            CliError::Refused { detail, .. } => detail.clone(),
            _ => None,
        }
    }
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::NumericalRankAmbiguous => CliError::Ambiguous(e.to_string()),
            SolveError::Matrix(_) => CliError::Input(e.to_string()),
        }
    }
}

impl From<DrazinError> for CliError {
    fn from(e: DrazinError) -> Self {
        match e {
            DrazinError::Solve(s) => s.into(),
            DrazinError::Unstable(_) => CliError::Ambiguous(e.to_string()),
            DrazinError::GroupInverseAbsent { .. } => {
                CliError::Refused { message: e.to_string(), detail: None }
            }
            DrazinError::Matrix(_) => CliError::Input(e.to_string()),
        }
    }
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        match e {
            IdentityError::ConditionFailed { ref report } => CliError::Refused {
                message: e.to_string(),
                detail: Some(json!({
                    "refused": "condition not satisfied",
                    "condition": report::condition_to_value(report),
                })),
            },
            IdentityError::Drazin(d) => d.into(),
            IdentityError::Solve(s) => s.into(),
            IdentityError::ResolventSingular => CliError::Failed(e.to_string()),
            IdentityError::Matrix(_) | IdentityError::Shape(_) => {
                CliError::Input(e.to_string())
            }
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        match e {
            GenError::Solve(SolveError::NumericalRankAmbiguous) => {
                CliError::Ambiguous(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Tolerance for the complex field: explicit flag, then the
/// `DRAZINLAB_EPS` environment variable, then the built-in default.
pub fn resolve_eps(flag: Option<f64>) -> Result<f64, CliError> {
    let eps = match flag {
        Some(e) => e,
        None => match std::env::var("DRAZINLAB_EPS") {
            Ok(s) => s.trim().parse::<f64>().map_err(|_| {
                CliError::Input(format!("DRAZINLAB_EPS must be a number, got \"{s}\""))
            })?,
            Err(_) => DEFAULT_EPS_REL,
        },
    };
    if !(eps.is_finite() && eps > 0.0) {
        return Err(CliError::Input(format!("tolerance must be positive, got {eps}")));
    }
    Ok(eps)
}

/// Dimension lists: `"3"`, `"2,3,4"`, or the inclusive span `"2..4"`.
pub fn parse_dims(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = |msg: &str| CliError::Input(format!("bad dimension list \"{s}\": {msg}"));
    let parse_one = |part: &str| -> Result<usize, CliError> {
        part.trim()
            .parse::<usize>()
            .map_err(|_| bad("entries must be positive integers"))
    };
    let dims: Vec<usize> = if let Some((lo, hi)) = s.split_once("..") {
        let lo = parse_one(lo)?;
        let hi = parse_one(hi)?;
        if lo > hi {
            return Err(bad("range start exceeds end"));
        }
        (lo..=hi).collect()
    } else {
        s.split(',').map(parse_one).collect::<Result<_, _>>()?
    };
    if dims.is_empty() {
        return Err(bad("no dimensions given"));
    }
    if dims.contains(&0) {
        return Err(bad("dimension 0 is not a matrix size"));
    }
    if dims.iter().any(|&d| d > 32) {
        return Err(bad("dimensions above 32 are not supported"));
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_accept_single_list_and_span() {
        assert_eq!(parse_dims("3").unwrap(), vec![3]);
        assert_eq!(parse_dims("2,3,4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_dims("2..4").unwrap(), vec![2, 3, 4]);
        assert!(parse_dims("4..2").is_err());
        assert!(parse_dims("0").is_err());
        assert!(parse_dims("x").is_err());
    }

    #[test]
    fn exit_codes_partition_the_error_space() {
        assert_eq!(CliError::Input("x".into()).exit_code(), EXIT_INPUT);
        assert_eq!(CliError::Failed("x".into()).exit_code(), EXIT_FAIL);
        assert_eq!(CliError::Ambiguous("x".into()).exit_code(), EXIT_AMBIGUOUS);
        let refused = CliError::Refused { message: "x".into(), detail: None };
        assert_eq!(refused.exit_code(), EXIT_REFUSED);
        let from_solve: CliError = SolveError::NumericalRankAmbiguous.into();
        assert_eq!(from_solve.exit_code(), EXIT_AMBIGUOUS);
        let from_drazin: CliError = DrazinError::GroupInverseAbsent { index: 2 }.into();
        assert_eq!(from_drazin.exit_code(), EXIT_REFUSED);
    }

    #[test]
    fn eps_resolution_prefers_flag() {
        assert_eq!(resolve_eps(Some(1e-6)).unwrap(), 1e-6);
        assert!(resolve_eps(Some(-1.0)).is_err());
        assert!(resolve_eps(Some(f64::NAN)).is_err());
    }
}
