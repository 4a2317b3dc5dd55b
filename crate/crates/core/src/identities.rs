//! Entwining conditions on a quadruple `(a, b, c, d)` and the transfer
//! formulas they license: Cline-style formulas relating the Drazin
//! inverses of the products `ac` and `bd` (or `ba`), and Jacobson-style
//! formulas relating the Drazin inverses of `1 - bd` and `1 - ac`.
//!
//! Every formula is checked two ways: against an independently computed
//! Drazin inverse of the target, and against the defining axioms
//! verified from scratch.

use crate::drazin::{drazin_inverse, index_of, verify_drazin_axioms, DrazinError, OracleCheck, OracleReport};
use crate::field::FieldSpec;
use crate::matrix::{Matrix, MatrixError};
use crate::solve::{mat_inverse, poly_span_membership, SolveError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Drazin(#[from] DrazinError),
    #[error("{0}")]
    Shape(String),
    #[error("condition {} not satisfied: {} of {} equalities failed",
        .report.label, .report.failed_count(), .report.equalities.len())]
    ConditionFailed { report: ConditionReport },
    #[error("resolvent factor is singular")]
    ResolventSingular,
}

/// The entwining conditions, ordered as a hierarchy for quadruples
/// (C3 implies C1 implies C2) and for triples (C5 implies C4 implies C6).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionId {
    /// Six-equality entwining of `(a,b,c,d)`.
    C1,
    /// Two-equality weakening of C1.
    C2,
    /// `bac = bdb` and `cac = cdb`.
    C3,
    /// Four-term chain on a triple `(a,b,c)`.
    C4,
    /// `aba = aca`.
    C5,
    /// `a(ca)^2 = (ab)^2a`.
    C6,
}

impl ConditionId {
    pub fn label(self) -> &'static str {
        match self {
            ConditionId::C1 => "c1",
            ConditionId::C2 => "c2",
            ConditionId::C3 => "c3",
            ConditionId::C4 => "c4",
            ConditionId::C5 => "c5",
            ConditionId::C6 => "c6",
        }
    }

    pub fn parse(s: &str) -> Option<ConditionId> {
        match s.to_ascii_lowercase().as_str() {
            "c1" => Some(ConditionId::C1),
            "c2" => Some(ConditionId::C2),
            "c3" => Some(ConditionId::C3),
            "c4" => Some(ConditionId::C4),
            "c5" => Some(ConditionId::C5),
            "c6" => Some(ConditionId::C6),
            _ => None,
        }
    }

    /// C1-C3 constrain all four elements; C4-C6 only `(a,b,c)`.
    pub fn needs_quadruple(self) -> bool {
        matches!(self, ConditionId::C1 | ConditionId::C2 | ConditionId::C3)
    }
}

/// One verified equality inside a condition.
#[derive(Debug, Clone)]
pub struct EqualityCheck {
    pub name: &'static str,
    pub holds: bool,
    pub residual: Option<f64>,
}

/// All equalities of one condition evaluated on concrete matrices.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub label: &'static str,
    pub equalities: Vec<EqualityCheck>,
    pub all_hold: bool,
}

impl ConditionReport {
    fn from_equalities(label: &'static str, equalities: Vec<EqualityCheck>) -> Self {
        let all_hold = equalities.iter().all(|e| e.holds);
        ConditionReport { label, equalities, all_hold }
    }

    pub fn failed_count(&self) -> usize {
        self.equalities.iter().filter(|e| !e.holds).count()
    }
}

fn equality(name: &'static str, l: &Matrix, r: &Matrix) -> EqualityCheck {
    let residual = match l.field {
        FieldSpec::ComplexFloat(_) => Some(l.relative_residual(r)),
        _ => None,
    };
    EqualityCheck { name, holds: l.equals(r), residual }
}

fn check_shapes(ms: &[&Matrix]) -> Result<(FieldSpec, usize), IdentityError> {
    let first = ms[0];
    let n = first
        .require_square()
        .map_err(|e| IdentityError::Shape(e.to_string()))?;
    for m in ms {
        if m.field != first.field {
            return Err(IdentityError::Shape(format!(
                "mixed fields {:?} and {:?}",
                first.field, m.field
            )));
        }
        if m.rows != n || m.cols != n {
            return Err(IdentityError::Shape(format!(
                "expected {n}x{n}, got {}x{}",
                m.rows, m.cols
            )));
        }
    }
    Ok((first.field, n))
}

/// Four square matrices of equal size over one field.
#[derive(Debug, Clone)]
pub struct Quadruple {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub d: Matrix,
}

impl Quadruple {
    pub fn new(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Result<Self, IdentityError> {
        check_shapes(&[&a, &b, &c, &d])?;
        Ok(Quadruple { a, b, c, d })
    }

    pub fn dim(&self) -> usize {
        self.a.rows
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field
    }

    pub fn as_triple(&self) -> Triple {
        Triple { a: self.a.clone(), b: self.b.clone(), c: self.c.clone() }
    }
}

/// Three square matrices of equal size over one field.
#[derive(Debug, Clone)]
pub struct Triple {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
}

impl Triple {
    pub fn new(a: Matrix, b: Matrix, c: Matrix) -> Result<Self, IdentityError> {
        check_shapes(&[&a, &b, &c])?;
        Ok(Triple { a, b, c })
    }

    pub fn dim(&self) -> usize {
        self.a.rows
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field
    }

    /// Embeds as a quadruple with `d = a`, the shape used by the
    /// triple variants of the transfer formulas.
    pub fn with_d_equal_a(&self) -> Quadruple {
        Quadruple {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            d: self.a.clone(),
        }
    }
}

/// Whether a formula should refuse to run when its condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Strict,
    Force,
}

fn gate_condition(report: ConditionReport, gate: Gate) -> Result<ConditionReport, IdentityError> {
    if gate == Gate::Strict && !report.all_hold {
        return Err(IdentityError::ConditionFailed { report });
    }
    Ok(report)
}

/// Evaluates one condition on a quadruple (C4-C6 ignore `d`).
pub fn check_condition(q: &Quadruple, id: ConditionId) -> Result<ConditionReport, IdentityError> {
    match id {
        ConditionId::C1 | ConditionId::C2 | ConditionId::C3 => {
            let (a, b, c, d) = (&q.a, &q.b, &q.c, &q.d);
            let ac = a.mul(c)?;
            let db = d.mul(b)?;
            match id {
                ConditionId::C1 => {
                    let b_acac = b.mul(&ac)?.mul(&ac)?;
                    let b_acdb = b.mul(&ac)?.mul(&db)?;
                    let b_dbac = b.mul(&db)?.mul(&ac)?;
                    let b_dbdb = b.mul(&db)?.mul(&db)?;
                    let c_acac = c.mul(&ac)?.mul(&ac)?;
                    let c_acdb = c.mul(&ac)?.mul(&db)?;
                    let c_dbac = c.mul(&db)?.mul(&ac)?;
                    let c_dbdb = c.mul(&db)?.mul(&db)?;
                    Ok(ConditionReport::from_equalities(
                        "c1",
                        vec![
                            equality("b(ac)(ac)=b(ac)(db)", &b_acac, &b_acdb),
                            equality("b(ac)(db)=b(db)(ac)", &b_acdb, &b_dbac),
                            equality("b(db)(ac)=b(db)(db)", &b_dbac, &b_dbdb),
                            equality("c(ac)(ac)=c(ac)(db)", &c_acac, &c_acdb),
                            equality("c(ac)(db)=c(db)(ac)", &c_acdb, &c_dbac),
                            equality("c(db)(ac)=c(db)(db)", &c_dbac, &c_dbdb),
                        ],
                    ))
                }
                ConditionId::C2 => {
                    let b_acac = b.mul(&ac)?.mul(&ac)?;
                    let b_dbdb = b.mul(&db)?.mul(&db)?;
                    let c_acac = c.mul(&ac)?.mul(&ac)?;
                    let c_dbdb = c.mul(&db)?.mul(&db)?;
                    Ok(ConditionReport::from_equalities(
                        "c2",
                        vec![
                            equality("b(ac)(ac)=b(db)(db)", &b_acac, &b_dbdb),
                            equality("c(ac)(ac)=c(db)(db)", &c_acac, &c_dbdb),
                        ],
                    ))
                }
                _ => {
                    let bac = b.mul(&ac)?;
                    let bdb = b.mul(&d.mul(b)?)?;
                    let cac = c.mul(&ac)?;
                    let cdb = c.mul(&d.mul(b)?)?;
                    Ok(ConditionReport::from_equalities(
                        "c3",
                        vec![equality("bac=bdb", &bac, &bdb), equality("cac=cdb", &cac, &cdb)],
                    ))
                }
            }
        }
        _ => check_condition_triple(&q.as_triple(), id),
    }
}

/// Evaluates one of the triple conditions C4-C6.
pub fn check_condition_triple(t: &Triple, id: ConditionId) -> Result<ConditionReport, IdentityError> {
    if id.needs_quadruple() {
        return Err(IdentityError::Shape(format!(
            "condition {} needs all four elements",
            id.label()
        )));
    }
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let ac = a.mul(c)?;
    let ba = b.mul(a)?;
    let ab = a.mul(b)?;
    let ca = c.mul(a)?;
    match id {
        ConditionId::C4 => {
            let acaca = ac.mul(&ac)?.mul(a)?;
            let acaba = ac.mul(&ab)?.mul(a)?;
            let abaca = ab.mul(&ac)?.mul(a)?;
            let ababa = a.mul(&ba)?.mul(&ba)?;
            Ok(ConditionReport::from_equalities(
                "c4",
                vec![
                    equality("(ac)(ac)a=(ac)(ab)a", &acaca, &acaba),
                    equality("(ac)(ab)a=(ab)(ac)a", &acaba, &abaca),
                    equality("(ab)(ac)a=a(ba)(ba)", &abaca, &ababa),
                ],
            ))
        }
        ConditionId::C5 => {
            let aba = ab.mul(a)?;
            let aca = ac.mul(a)?;
            Ok(ConditionReport::from_equalities("c5", vec![equality("aba=aca", &aba, &aca)]))
        }
        ConditionId::C6 => {
            let acaca = a.mul(&ca)?.mul(&ca)?;
            let ababa = ab.mul(&ab)?.mul(a)?;
            Ok(ConditionReport::from_equalities(
                "c6",
                vec![equality("a(ca)(ca)=(ab)(ab)a", &acaca, &ababa)],
            ))
        }
        _ => unreachable!(),
    }
}

/// The quadruple hierarchy instance: C3 should imply C1, C1 should
/// imply C2, on these concrete matrices.
#[derive(Debug, Clone)]
pub struct HierarchyReport {
    pub c3_holds: bool,
    pub c1_holds: bool,
    pub c2_holds: bool,
    pub c3_implies_c1: bool,
    pub c1_implies_c2: bool,
    pub ok: bool,
}

pub fn condition_hierarchy_check(q: &Quadruple) -> Result<HierarchyReport, IdentityError> {
    let c3 = check_condition(q, ConditionId::C3)?.all_hold;
    let c1 = check_condition(q, ConditionId::C1)?.all_hold;
    let c2 = check_condition(q, ConditionId::C2)?.all_hold;
    let c3_implies_c1 = !c3 || c1;
    let c1_implies_c2 = !c1 || c2;
    Ok(HierarchyReport {
        c3_holds: c3,
        c1_holds: c1,
        c2_holds: c2,
        c3_implies_c1,
        c1_implies_c2,
        ok: c3_implies_c1 && c1_implies_c2,
    })
}

/// The triple hierarchy instance: C5 should imply C4, C4 should imply C6.
#[derive(Debug, Clone)]
pub struct TripleHierarchyReport {
    pub c5_holds: bool,
    pub c4_holds: bool,
    pub c6_holds: bool,
    pub c5_implies_c4: bool,
    pub c4_implies_c6: bool,
    pub ok: bool,
}

pub fn triple_hierarchy_check(t: &Triple) -> Result<TripleHierarchyReport, IdentityError> {
    let c5 = check_condition_triple(t, ConditionId::C5)?.all_hold;
    let c4 = check_condition_triple(t, ConditionId::C4)?.all_hold;
    let c6 = check_condition_triple(t, ConditionId::C6)?.all_hold;
    let c5_implies_c4 = !c5 || c4;
    let c4_implies_c6 = !c4 || c6;
    Ok(TripleHierarchyReport {
        c5_holds: c5,
        c4_holds: c4,
        c6_holds: c6,
        c5_implies_c4,
        c4_implies_c6,
        ok: c5_implies_c4 && c4_implies_c6,
    })
}

/// Outcome of one transfer formula: the constructed candidate, the
/// independently computed inverse it should equal, and the from-scratch
/// axiom verification.
#[derive(Debug, Clone)]
pub struct FormulaResult {
    pub condition: ConditionReport,
    pub source_index: usize,
    pub target_index: usize,
    pub value: Matrix,
    pub expected: Matrix,
    pub matches: bool,
    pub oracle: OracleReport,
}

impl FormulaResult {
    pub fn ok(&self) -> bool {
        self.matches && self.oracle.ok
    }

    pub fn max_residual(&self) -> f64 {
        let formula = match self.value.field {
            FieldSpec::ComplexFloat(_) => self.value.relative_residual(&self.expected),
            _ => 0.0,
        };
        formula.max(self.oracle.max_residual())
    }
}

fn cline_result(
    condition: ConditionReport,
    source: &Matrix,
    target: &Matrix,
    left: &Matrix,
    right: &Matrix,
) -> Result<FormulaResult, IdentityError> {
    let src = drazin_inverse(source)?;
    let tgt = drazin_inverse(target)?;
    let h2 = src.inverse.mul(&src.inverse)?;
    let value = left.mul(&h2)?.mul(right)?;
    let oracle = verify_drazin_axioms(target, &value)?;
    let matches = value.equals(&tgt.inverse);
    Ok(FormulaResult {
        condition,
        source_index: src.index,
        target_index: tgt.index,
        value,
        expected: tgt.inverse,
        matches,
        oracle,
    })
}

/// `(bd)^D = b ((ac)^D)^2 d` under the six-equality condition C1.
pub fn cline_full(q: &Quadruple, gate: Gate) -> Result<FormulaResult, IdentityError> {
    let condition = gate_condition(check_condition(q, ConditionId::C1)?, gate)?;
    let ac = q.a.mul(&q.c)?;
    let bd = q.b.mul(&q.d)?;
    cline_result(condition, &ac, &bd, &q.b, &q.d)
}

/// `(bd)^D = b ((ac)^D)^2 d` under the two-equality condition C2.
pub fn cline_two_condition(q: &Quadruple, gate: Gate) -> Result<FormulaResult, IdentityError> {
    let condition = gate_condition(check_condition(q, ConditionId::C2)?, gate)?;
    let ac = q.a.mul(&q.c)?;
    let bd = q.b.mul(&q.d)?;
    cline_result(condition, &ac, &bd, &q.b, &q.d)
}

/// `(ba)^D = b ((ac)^D)^2 a` under the chain condition C4.
pub fn cline_triple(t: &Triple, gate: Gate) -> Result<FormulaResult, IdentityError> {
    let condition = gate_condition(check_condition_triple(t, ConditionId::C4)?, gate)?;
    let ac = t.a.mul(&t.c)?;
    let ba = t.b.mul(&t.a)?;
    cline_result(condition, &ac, &ba, &t.b, &t.a)
}

/// `(ba)^D = b ((ac)^D)^2 a` under the single equality C6.
pub fn cline_triple_c6(t: &Triple, gate: Gate) -> Result<FormulaResult, IdentityError> {
    let condition = gate_condition(check_condition_triple(t, ConditionId::C6)?, gate)?;
    let ac = t.a.mul(&t.c)?;
    let ba = t.b.mul(&t.a)?;
    cline_result(condition, &ac, &ba, &t.b, &t.a)
}

/// Nilpotency carried across the product swap: if the two carrier
/// equalities hold and `ac` is nilpotent, `bd` must be nilpotent.
#[derive(Debug, Clone)]
pub struct TransferReport {
    pub condition: ConditionReport,
    pub ac_nilpotent: bool,
    pub bd_nilpotent: bool,
    /// The implication itself on this instance.
    pub holds: bool,
}

pub fn nilpotent_transfer(q: &Quadruple) -> Result<TransferReport, IdentityError> {
    let (a, b, c, d) = (&q.a, &q.b, &q.c, &q.d);
    let ac = a.mul(c)?;
    let db = d.mul(b)?;
    let b_dbac = b.mul(&db)?.mul(&ac)?;
    let b_dbdb = b.mul(&db)?.mul(&db)?;
    let c_acdb = c.mul(&ac)?.mul(&db)?;
    let c_dbdb = c.mul(&db)?.mul(&db)?;
    let condition = ConditionReport::from_equalities(
        "transfer",
        vec![
            equality("b(db)(ac)=b(db)(db)", &b_dbac, &b_dbdb),
            equality("c(ac)(db)=c(db)(db)", &c_acdb, &c_dbdb),
        ],
    );
    let ac_nilpotent = ac.is_nilpotent()?;
    let bd_nilpotent = q.b.mul(&q.d)?.is_nilpotent()?;
    let holds = !(condition.all_hold && ac_nilpotent) || bd_nilpotent;
    Ok(TransferReport { condition, ac_nilpotent, bd_nilpotent, holds })
}

struct JacobsonParts {
    alpha_index: usize,
    beta: Matrix,
    value: Matrix,
}

fn jacobson_parts(q: &Quadruple, group_form: bool) -> Result<JacobsonParts, IdentityError> {
    let (a, b, c, d) = (&q.a, &q.b, &q.c, &q.d);
    let n = q.dim();
    let id = Matrix::identity(q.field(), n);
    let ac = a.mul(c)?;
    let bd = b.mul(d)?;
    let alpha = id.sub(&bd)?;
    let beta = id.sub(&ac)?;
    let alpha_dec = drazin_inverse(&alpha)?;
    let p = &alpha_dec.idempotent;
    let x = &alpha_dec.inverse;
    let acd = ac.mul(d)?;
    let bac = b.mul(&ac)?;
    let poly_ac = id.add(&ac)?.add(&ac.mul(&ac)?)?;
    let head = if group_form {
        acd.mul(p)?.mul(&bac)?
    } else {
        let poly_bd = id.add(&bd)?.add(&bd.mul(&bd)?)?;
        let resolvent = id.sub(&alpha.mul(p)?.mul(&poly_bd)?)?;
        let resolvent_inv = mat_inverse(&resolvent)?.ok_or(IdentityError::ResolventSingular)?;
        acd.mul(p)?.mul(&resolvent_inv)?.mul(&bac)?
    };
    let term1 = id.sub(&head)?.mul(&poly_ac)?;
    let term2 = acd.mul(x)?.mul(&bac)?;
    let value = term1.add(&term2)?;
    Ok(JacobsonParts { alpha_index: alpha_dec.index, beta, value })
}

/// Drazin inverse of `1 - ac` expressed through the Drazin data of
/// `1 - bd`, under C1.
pub fn jacobson_gdrazin(q: &Quadruple, gate: Gate) -> Result<FormulaResult, IdentityError> {
    let condition = gate_condition(check_condition(q, ConditionId::C1)?, gate)?;
    let parts = jacobson_parts(q, false)?;
    let tgt = drazin_inverse(&parts.beta)?;
    let oracle = verify_drazin_axioms(&parts.beta, &parts.value)?;
    let matches = parts.value.equals(&tgt.inverse);
    Ok(FormulaResult {
        condition,
        source_index: parts.alpha_index,
        target_index: tgt.index,
        value: parts.value,
        expected: tgt.inverse,
        matches,
        oracle,
    })
}

/// Triple form: `d = a`, so the source is `1 - ba`; gated on C4.
pub fn jacobson_triple(t: &Triple, gate: Gate) -> Result<FormulaResult, IdentityError> {
    let condition = gate_condition(check_condition_triple(t, ConditionId::C4)?, gate)?;
    let parts = jacobson_parts(&t.with_d_equal_a(), false)?;
    let tgt = drazin_inverse(&parts.beta)?;
    let oracle = verify_drazin_axioms(&parts.beta, &parts.value)?;
    let matches = parts.value.equals(&tgt.inverse);
    Ok(FormulaResult {
        condition,
        source_index: parts.alpha_index,
        target_index: tgt.index,
        value: parts.value,
        expected: tgt.inverse,
        matches,
        oracle,
    })
}

/// The four closure properties the constructed candidate must satisfy
/// against `beta = 1 - ac`, each verified directly.
pub fn jacobson_proof_obligations(q: &Quadruple, gate: Gate) -> Result<OracleReport, IdentityError> {
    gate_condition(check_condition(q, ConditionId::C1)?, gate)?;
    let parts = jacobson_parts(q, false)?;
    let y = &parts.value;
    let beta = &parts.beta;
    let n = beta.rows;
    let mut checks = Vec::with_capacity(4);
    let yby = y.mul(beta)?.mul(y)?;
    checks.push(oracle_equation("fixed_point", &yby, y));
    let by = beta.mul(y)?;
    let yb = y.mul(beta)?;
    checks.push(oracle_equation("commutes", &by, &yb));
    let remainder = beta.sub(&beta.mul(y)?.mul(beta)?)?;
    let nil = remainder.is_nilpotent()?;
    let nil_residual = match beta.field {
        FieldSpec::ComplexFloat(_) => {
            let p = remainder.pow(n)?;
            Some(p.frobenius_norm() / 1f64.max(remainder.frobenius_norm().powi(n as i32)))
        }
        _ => None,
    };
    checks.push(OracleCheck { name: "remainder_nilpotent", holds: nil, residual: nil_residual });
    let in_span = poly_span_membership(y, beta)?.is_some();
    checks.push(OracleCheck { name: "polynomial_in_target", holds: in_span, residual: None });
    let ok = checks.iter().all(|c| c.holds);
    Ok(OracleReport { ok, checks })
}

fn oracle_equation(name: &'static str, l: &Matrix, r: &Matrix) -> OracleCheck {
    let residual = match l.field {
        FieldSpec::ComplexFloat(_) => Some(l.relative_residual(r)),
        _ => None,
    };
    OracleCheck { name, holds: l.equals(r), residual }
}

/// Group-inverse form: requires `1 - bd` to have index at most 1; then
/// `1 - ac` must too, with the resolvent-free formula. The oracle checks
/// the three group axioms plus span membership.
pub fn jacobson_group(q: &Quadruple, gate: Gate) -> Result<FormulaResult, IdentityError> {
    let condition = gate_condition(check_condition(q, ConditionId::C1)?, gate)?;
    let n = q.dim();
    let id = Matrix::identity(q.field(), n);
    let alpha = id.sub(&q.b.mul(&q.d)?)?;
    let alpha_index = index_of(&alpha)?;
    if alpha_index > 1 {
        return Err(IdentityError::Drazin(DrazinError::GroupInverseAbsent {
            index: alpha_index,
        }));
    }
    let parts = jacobson_parts(q, true)?;
    let beta = &parts.beta;
    let tgt = drazin_inverse(beta)?;
    let y = &parts.value;
    let mut checks = Vec::with_capacity(4);
    let yby = y.mul(beta)?.mul(y)?;
    checks.push(oracle_equation("inverse_fixed_point", &yby, y));
    let by = beta.mul(y)?;
    let yb = y.mul(beta)?;
    checks.push(oracle_equation("commutes", &by, &yb));
    let byb = beta.mul(y)?.mul(beta)?;
    checks.push(oracle_equation("inner_inverse", &byb, beta));
    let in_span = poly_span_membership(y, beta)?.is_some();
    checks.push(OracleCheck { name: "polynomial_in_target", holds: in_span, residual: None });
    let ok = checks.iter().all(|c| c.holds);
    let oracle = OracleReport { ok, checks };
    let matches = y.equals(&tgt.inverse) && tgt.index <= 1;
    Ok(FormulaResult {
        condition,
        source_index: alpha_index,
        target_index: tgt.index,
        value: parts.value,
        expected: tgt.inverse,
        matches,
        oracle,
    })
}

/// Indexes on both sides of each transfer plus whether the constructive
/// formula reproduced the independently computed inverse.
#[derive(Debug, Clone)]
pub struct VersionCheck {
    pub source_index: usize,
    pub target_index: usize,
    pub formula_matches: bool,
}

#[derive(Debug, Clone)]
pub struct VersionReport {
    pub cline: VersionCheck,
    pub jacobson: VersionCheck,
}

/// Finite-index (Drazin, as opposed to merely generalized) form of both
/// transfers on one quadruple; conditions are evaluated but not gated.
pub fn drazin_version_check(q: &Quadruple) -> Result<VersionReport, IdentityError> {
    let cline = cline_full(q, Gate::Force)?;
    let jacobson = jacobson_gdrazin(q, Gate::Force)?;
    Ok(VersionReport {
        cline: VersionCheck {
            source_index: cline.source_index,
            target_index: cline.target_index,
            formula_matches: cline.matches,
        },
        jacobson: VersionCheck {
            source_index: jacobson.source_index,
            target_index: jacobson.target_index,
            formula_matches: jacobson.matches,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_field() -> FieldSpec {
        FieldSpec::rational()
    }

    fn m(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64_rows(q_field(), rows).unwrap()
    }

    fn classic_quadruple() -> Quadruple {
        // c = b and d = a collapses the entwining to the classic swap
        let a = m(&[vec![0, 1], vec![0, 0]]);
        let b = m(&[vec![1, 0], vec![0, 0]]);
        Quadruple::new(a.clone(), b.clone(), b, a).unwrap()
    }

    #[test]
    fn classic_satisfies_whole_hierarchy() {
        let q = classic_quadruple();
        for id in [ConditionId::C1, ConditionId::C2, ConditionId::C3] {
            assert!(check_condition(&q, id).unwrap().all_hold, "{}", id.label());
        }
        let h = condition_hierarchy_check(&q).unwrap();
        assert!(h.c3_holds && h.c1_holds && h.c2_holds && h.ok);
    }

    #[test]
    fn classic_cline_matches() {
        let q = classic_quadruple();
        let r = cline_full(&q, Gate::Strict).unwrap();
        assert!(r.value.is_zero_exact());
        assert!(r.matches);
        assert!(r.oracle.ok);
        let r2 = cline_two_condition(&q, Gate::Strict).unwrap();
        assert!(r2.matches && r2.oracle.ok);
    }

    #[test]
    fn classic_transfer_of_nilpotency() {
        let q = classic_quadruple();
        let t = nilpotent_transfer(&q).unwrap();
        assert!(t.condition.all_hold);
        assert!(t.ac_nilpotent);
        assert!(t.bd_nilpotent);
        assert!(t.holds);
    }

    #[test]
    fn strict_gate_refuses_broken_condition() {
        let a = Matrix::identity(q_field(), 2);
        let q = Quadruple::new(a.clone(), a.clone(), a.clone(), Matrix::zero(q_field(), 2, 2))
            .unwrap();
        match cline_full(&q, Gate::Strict) {
            Err(IdentityError::ConditionFailed { report }) => {
                assert_eq!(report.label, "c1");
                assert!(report.failed_count() > 0);
            }
            other => panic!("expected gate refusal, got {other:?}"),
        }
        assert!(cline_full(&q, Gate::Force).is_ok());
    }

    #[test]
    fn jacobson_on_unipotent_shift() {
        // a strictly upper shift, b = d = 0, c = identity: the target
        // 1 - ac is unipotent and its inverse is 1 + a
        let a = m(&[vec![0, 1], vec![0, 0]]);
        let zero = Matrix::zero(q_field(), 2, 2);
        let id = Matrix::identity(q_field(), 2);
        let q = Quadruple::new(a.clone(), zero.clone(), id.clone(), zero).unwrap();
        assert!(check_condition(&q, ConditionId::C1).unwrap().all_hold);
        let r = jacobson_gdrazin(&q, Gate::Strict).unwrap();
        let expect = id.add(&a).unwrap();
        assert_eq!(r.value, expect);
        assert!(r.matches && r.oracle.ok);
        assert_eq!(r.source_index, 0);
        assert_eq!(r.target_index, 0);
        let obligations = jacobson_proof_obligations(&q, Gate::Strict).unwrap();
        assert!(obligations.ok);
        let g = jacobson_group(&q, Gate::Strict).unwrap();
        assert_eq!(g.value, expect);
        assert!(g.matches && g.oracle.ok);
    }

    #[test]
    fn jacobson_identity_quadruple() {
        let q = classic_quadruple();
        let r = jacobson_gdrazin(&q, Gate::Strict).unwrap();
        assert!(r.matches && r.oracle.ok);
        let g = jacobson_group(&q, Gate::Strict).unwrap();
        assert!(g.matches && g.oracle.ok);
    }

    #[test]
    fn paper_style_triple_fails_its_conditions() {
        // a shift, b a projection, c unipotent lower: aba = 0 while
        // aca != 0, and the single-equality condition fails too
        let a = m(&[vec![0, 1], vec![0, 0]]);
        let b = m(&[vec![1, 0], vec![0, 0]]);
        let c = m(&[vec![1, 0], vec![1, 1]]);
        let t = Triple::new(a, b, c).unwrap();
        assert!(!check_condition_triple(&t, ConditionId::C5).unwrap().all_hold);
        assert!(!check_condition_triple(&t, ConditionId::C6).unwrap().all_hold);
        let forced = cline_triple_c6(&t, Gate::Force).unwrap();
        assert!(!forced.matches);
        assert!(!forced.oracle.ok);
        assert!(matches!(
            cline_triple_c6(&t, Gate::Strict),
            Err(IdentityError::ConditionFailed { .. })
        ));
    }

    #[test]
    fn aba_aca_triple_runs_both_variants() {
        // aba = aca = 0 by construction
        let a = m(&[vec![1, 0], vec![0, 0]]);
        let b = m(&[vec![0, 0], vec![1, 0]]);
        let c = m(&[vec![0, 1], vec![1, 0]]);
        let t = Triple::new(a, b, c).unwrap();
        assert!(check_condition_triple(&t, ConditionId::C5).unwrap().all_hold);
        let h = triple_hierarchy_check(&t).unwrap();
        assert!(h.c5_holds && h.c4_holds && h.c6_holds && h.ok);
        let r4 = cline_triple(&t, Gate::Strict).unwrap();
        assert!(r4.matches && r4.oracle.ok);
        let r6 = cline_triple_c6(&t, Gate::Strict).unwrap();
        assert!(r6.matches && r6.oracle.ok);
        let rj = jacobson_triple(&t, Gate::Strict).unwrap();
        assert!(rj.matches && rj.oracle.ok);
    }

    #[test]
    fn version_check_on_classic() {
        let q = classic_quadruple();
        let v = drazin_version_check(&q).unwrap();
        assert!(v.cline.formula_matches);
        assert!(v.jacobson.formula_matches);
        assert_eq!(v.cline.source_index, 1);
        assert_eq!(v.cline.target_index, 2);
    }

    #[test]
    fn gf5_quadruple_with_identity_b() {
        // with b = 1 the compatible d is a*c, which satisfies C3 on the nose
        let f = FieldSpec::prime(5).unwrap();
        let a = Matrix::from_i64_rows(f, &[vec![1, 2], vec![3, 4]]).unwrap();
        let c = Matrix::from_i64_rows(f, &[vec![2, 0], vec![1, 1]]).unwrap();
        let b = Matrix::identity(f, 2);
        let d = a.mul(&c).unwrap();
        let q = Quadruple::new(a, b, c, d).unwrap();
        assert!(check_condition(&q, ConditionId::C3).unwrap().all_hold);
        let h = condition_hierarchy_check(&q).unwrap();
        assert!(h.ok && h.c1_holds && h.c2_holds);
        let r = cline_full(&q, Gate::Strict).unwrap();
        assert!(r.matches && r.oracle.ok);
        let j = jacobson_gdrazin(&q, Gate::Strict).unwrap();
        assert!(j.matches && j.oracle.ok);
    }
}
