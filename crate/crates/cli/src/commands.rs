//! In-process command implementations. Each returns a [`CmdOutput`] so
//! integration tests can drive the binary's behavior without spawning
//! processes; `main` only adds argument parsing and file IO.

use crate::report::{
    comparison_row, condition_to_value, decomposition_to_value, formula_to_value,
    oracle_to_value, render,
};
use crate::{CliError, EXIT_FAIL, EXIT_OK};
use drazinlab_core::{
    check_condition, check_condition_triple, cline_full, cline_triple, cline_triple_c6,
    cline_two_condition, counterexample_triple, drazin_inverse, elements_from_value, generate,
    jacobson_gdrazin, jacobson_group, jacobson_proof_obligations, jacobson_triple,
    matrix_from_value, matrix_to_value, quadruple_to_value, triple_to_value,
    verify_drazin_axioms, ConditionId, ElementsInput, FormulaResult, Gate, GenSpec, Generated,
    Matrix, Quadruple, Strategy, Triple,
};
use serde_json::{json, Value};

#[derive(Debug, Clone)]
pub struct CmdOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CmdOutput {
    pub fn with_code(exit_code: i32, stdout: String) -> Self {
        CmdOutput { exit_code, stdout, stderr: String::new() }
    }

    pub fn from_error(e: CliError) -> Self {
        CmdOutput {
            exit_code: e.exit_code(),
            stdout: e.detail_json().map(|v| render(&v)).unwrap_or_default(),
            stderr: format!("error: {e}\n"),
        }
    }
}

fn parse_json(input: &str) -> Result<Value, CliError> {
    serde_json::from_str(input).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))
}

fn quadruple_input(input: &str, eps: f64) -> Result<Quadruple, CliError> {
    match elements_from_value(&parse_json(input)?, eps)? {
        ElementsInput::Quadruple(q) => Ok(q),
        ElementsInput::Triple(_) => Err(CliError::Input(
            "this variant needs all four elements; \"d\" is missing".into(),
        )),
    }
}

fn triple_input(input: &str, eps: f64) -> Result<Triple, CliError> {
    match elements_from_value(&parse_json(input)?, eps)? {
        ElementsInput::Triple(t) => Ok(t),
        ElementsInput::Quadruple(_) => Err(CliError::Input(
            "triple variants take exactly a, b, c; remove \"d\" or pick a quadruple variant"
                .into(),
        )),
    }
}

pub fn run_drazin(input: &str, eps: f64) -> CmdOutput {
    let go = || -> Result<CmdOutput, CliError> {
        let m = matrix_from_value(&parse_json(input)?, eps)?;
        let dec = drazin_inverse(&m)?;
        let oracle = verify_drazin_axioms(&m, &dec.inverse)?;
        let mut v = decomposition_to_value(&dec)?;
        v.as_object_mut()
            .unwrap()
            .insert("oracle".into(), oracle_to_value(&oracle));
        let code = if oracle.ok { EXIT_OK } else { EXIT_FAIL };
        Ok(CmdOutput::with_code(code, render(&v)))
    };
    go().unwrap_or_else(CmdOutput::from_error)
}

pub fn run_check(input: &str, condition: &str, eps: f64) -> CmdOutput {
    let go = || -> Result<CmdOutput, CliError> {
        let id = ConditionId::parse(condition)
            .ok_or_else(|| CliError::Input(format!("unknown condition \"{condition}\"")))?;
        let report = match elements_from_value(&parse_json(input)?, eps)? {
            ElementsInput::Quadruple(q) => check_condition(&q, id)?,
            ElementsInput::Triple(t) => {
                if id.needs_quadruple() {
                    return Err(CliError::Input(format!(
                        "condition {} involves d; provide all four elements",
                        id.label()
                    )));
                }
                check_condition_triple(&t, id)?
            }
        };
        let code = if report.all_hold { EXIT_OK } else { EXIT_FAIL };
        Ok(CmdOutput::with_code(code, render(&condition_to_value(&report))))
    };
    go().unwrap_or_else(CmdOutput::from_error)
}

fn formula_output(result: FormulaResult) -> Result<CmdOutput, CliError> {
    let code = if result.matches && result.oracle.ok { EXIT_OK } else { EXIT_FAIL };
    Ok(CmdOutput::with_code(code, render(&formula_to_value(&result)?)))
}

pub fn run_cline(input: &str, variant: &str, force: bool, eps: f64) -> CmdOutput {
    let gate = if force { Gate::Force } else { Gate::Strict };
    let go = || -> Result<CmdOutput, CliError> {
        match variant {
            "full" => formula_output(cline_full(&quadruple_input(input, eps)?, gate)?),
            "two-condition" | "two_condition" => {
                formula_output(cline_two_condition(&quadruple_input(input, eps)?, gate)?)
            }
            "triple" => formula_output(cline_triple(&triple_input(input, eps)?, gate)?),
            "triple-c6" | "triple_c6" => {
                formula_output(cline_triple_c6(&triple_input(input, eps)?, gate)?)
            }
            other => Err(CliError::Input(format!(
                "unknown variant \"{other}\"; expected full, two-condition, triple, or triple-c6"
            ))),
        }
    };
    go().unwrap_or_else(CmdOutput::from_error)
}

pub fn run_jacobson(input: &str, variant: &str, force: bool, eps: f64) -> CmdOutput {
    let gate = if force { Gate::Force } else { Gate::Strict };
    let go = || -> Result<CmdOutput, CliError> {
        match variant {
            "full" => {
                let q = quadruple_input(input, eps)?;
                let result = jacobson_gdrazin(&q, gate)?;
                let obligations = jacobson_proof_obligations(&q, gate)?;
                let ok = result.matches && result.oracle.ok && obligations.ok;
                let mut v = formula_to_value(&result)?;
                v.as_object_mut()
                    .unwrap()
                    .insert("proof_obligations".into(), oracle_to_value(&obligations));
                let code = if ok { EXIT_OK } else { EXIT_FAIL };
                Ok(CmdOutput::with_code(code, render(&v)))
            }
            "group" => formula_output(jacobson_group(&quadruple_input(input, eps)?, gate)?),
            "triple" => formula_output(jacobson_triple(&triple_input(input, eps)?, gate)?),
            other => Err(CliError::Input(format!(
                "unknown variant \"{other}\"; expected full, group, or triple"
            ))),
        }
    };
    go().unwrap_or_else(CmdOutput::from_error)
}

/// Produces one seeded quadruple or triple as an elements file that the
/// other commands accept directly.
pub fn run_generate(
    strategy: &str,
    field: drazinlab_core::FieldSpec,
    dim: usize,
    seed: u64,
    entry_bound: i64,
) -> CmdOutput {
    let go = || -> Result<CmdOutput, CliError> {
        let strategy = Strategy::parse(strategy)
            .ok_or_else(|| CliError::Input(format!("unknown strategy \"{strategy}\"")))?;
        let spec = GenSpec { strategy, field, dim, seed, entry_bound };
        let v = match generate(&spec)? {
            Generated::Quadruple(q) => quadruple_to_value(&q)?,
            Generated::Triple(t) => triple_to_value(&t)?,
        };
        Ok(CmdOutput::with_code(EXIT_OK, render(&v)))
    };
    go().unwrap_or_else(CmdOutput::from_error)
}

/// Evaluates the built-in 2x2 counterexample triple: every quantity the
/// usual discussion quotes is recomputed, printed next to the quoted
/// claim, and the two machine-verifiable facts gate the exit code.
pub fn run_counterexample() -> CmdOutput {
    let go = || -> Result<CmdOutput, CliError> {
        let t = counterexample_triple();
        let (a, b, c) = (&t.a, &t.b, &t.c);
        let f = a.field;
        let ab = a.mul(b)?;
        let ba = b.mul(a)?;
        let ac = a.mul(c)?;
        let ca = c.mul(a)?;
        let aba = ab.mul(a)?;
        let aca = ac.mul(a)?;
        let a_ca2 = a.mul(&ca.pow(2)?)?;
        let ab2_a = ab.pow(2)?.mul(a)?;
        let ac_d = drazin_inverse(&ac)?;
        let ca_d = drazin_inverse(&ca)?;
        let ba_d = drazin_inverse(&ba)?;
        let ab_d = drazin_inverse(&ab)?;
        let zero = Matrix::zero(f, 2, 2);
        let claimed_acd = Matrix::from_i64_rows(f, &[vec![0, 1], vec![0, 1]])?;
        let c5 = check_condition_triple(&t, ConditionId::C5)?;
        let c6 = check_condition_triple(&t, ConditionId::C6)?;

        let ba_drazin_zero = ba_d.inverse.is_zero_exact();
        let ca_idempotent = ca.mul(&ca)?.equals(&ca);
        let ca_drazin_equals_ca = ca_d.inverse.equals(&ca);
        let ok = ba_drazin_zero && ca_idempotent && ca_drazin_equals_ca;

        let v = json!({
            "elements": triple_to_value(&t)?,
            "computed": {
                "ab": matrix_to_value(&ab)?,
                "ba": matrix_to_value(&ba)?,
                "ac": matrix_to_value(&ac)?,
                "ca": matrix_to_value(&ca)?,
                "aba": matrix_to_value(&aba)?,
                "aca": matrix_to_value(&aca)?,
                "a(ca)^2": matrix_to_value(&a_ca2)?,
                "(ab)^2a": matrix_to_value(&ab2_a)?,
                "(ac)^D": matrix_to_value(&ac_d.inverse)?,
                "(ca)^D": matrix_to_value(&ca_d.inverse)?,
                "(ba)^D": matrix_to_value(&ba_d.inverse)?,
                "(ab)^D": matrix_to_value(&ab_d.inverse)?,
            },
            "claimed_vs_computed": [
                comparison_row("a(ca)^2", &zero, &a_ca2)?,
                comparison_row("(ab)^2a", &zero, &ab2_a)?,
                comparison_row("(ac)^D", &claimed_acd, &ac_d.inverse)?,
                comparison_row("(ba)^D", &zero, &ba_d.inverse)?,
            ],
            "claimed_ac_drazin_equals_computed_ca_drazin":
                claimed_acd.equals(&ca_d.inverse),
            "conditions": {
                "c5": condition_to_value(&c5),
                "c6": condition_to_value(&c6),
            },
            "verified": {
                "ba_drazin_zero": ba_drazin_zero,
                "ca_idempotent": ca_idempotent,
                "ca_drazin_equals_ca": ca_drazin_equals_ca,
            },
            "ok": ok,
        });
        let code = if ok { EXIT_OK } else { EXIT_FAIL };
        Ok(CmdOutput::with_code(code, render(&v)))
    };
    go().unwrap_or_else(CmdOutput::from_error)
}
