//! JSON views of the core report types. Keys come out sorted, so
//! serialized reports are byte-stable for identical inputs.

use drazinlab_core::{
    matrix_to_value, ConditionReport, DrazinDecomposition, EqualityCheck, FieldSpec,
    FormulaResult, HierarchyReport, JsonError, Matrix, OracleCheck, OracleReport,
    TransferReport, TripleHierarchyReport, VersionCheck, VersionReport,
};
use serde_json::{json, Map, Number, Value};

pub fn float_value(x: f64) -> Value {
    Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn equality_to_value(e: &EqualityCheck) -> Value {
    let mut obj = Map::new();
    obj.insert("name".into(), Value::String(e.name.into()));
    obj.insert("holds".into(), Value::Bool(e.holds));
    if let Some(r) = e.residual {
        obj.insert("residual".into(), float_value(r));
    }
    Value::Object(obj)
}

pub fn condition_to_value(c: &ConditionReport) -> Value {
    json!({
        "label": c.label,
        "all_hold": c.all_hold,
        "equalities": c.equalities.iter().map(equality_to_value).collect::<Vec<_>>(),
    })
}

fn oracle_check_to_value(c: &OracleCheck) -> Value {
    let mut obj = Map::new();
    obj.insert("name".into(), Value::String(c.name.into()));
    obj.insert("holds".into(), Value::Bool(c.holds));
    if let Some(r) = c.residual {
        obj.insert("residual".into(), float_value(r));
    }
    Value::Object(obj)
}

pub fn oracle_to_value(o: &OracleReport) -> Value {
    json!({
        "ok": o.ok,
        "checks": o.checks.iter().map(oracle_check_to_value).collect::<Vec<_>>(),
    })
}

pub fn decomposition_to_value(d: &DrazinDecomposition) -> Result<Value, JsonError> {
    let mut obj = Map::new();
    obj.insert("index".into(), Value::Number(d.index.into()));
    obj.insert("inverse".into(), matrix_to_value(&d.inverse)?);
    obj.insert("idempotent".into(), matrix_to_value(&d.idempotent)?);
    obj.insert("core_rank".into(), Value::Number(d.core_rank.into()));
    if matches!(d.inverse.field, FieldSpec::ComplexFloat(_)) {
        obj.insert("max_residual".into(), float_value(d.max_residual));
    }
    Ok(Value::Object(obj))
}

pub fn formula_to_value(f: &FormulaResult) -> Result<Value, JsonError> {
    let mut residuals = Map::new();
    if matches!(f.value.field, FieldSpec::ComplexFloat(_)) {
        residuals.insert(
            "formula".into(),
            float_value(f.value.relative_residual(&f.expected)),
        );
        residuals.insert("oracle_max".into(), float_value(f.oracle.max_residual()));
    }
    Ok(json!({
        "condition": condition_to_value(&f.condition),
        "source_index": f.source_index,
        "target_index": f.target_index,
        "value": matrix_to_value(&f.value)?,
        "target": matrix_to_value(&f.expected)?,
        "matches": f.matches,
        "oracle": oracle_to_value(&f.oracle),
        "oracle_ok": f.oracle.ok,
        "residuals": Value::Object(residuals),
    }))
}

/// Compact view for campaign trial maps: verdicts and indexes, no matrices.
pub fn formula_summary_to_value(f: &FormulaResult, asserted: bool) -> Value {
    json!({
        "asserted": asserted,
        "condition_holds": f.condition.all_hold,
        "matches": f.matches,
        "oracle_ok": f.oracle.ok,
        "source_index": f.source_index,
        "target_index": f.target_index,
        "max_residual": float_value(f.max_residual()),
    })
}

pub fn hierarchy_to_value(h: &HierarchyReport) -> Value {
    json!({
        "c3_holds": h.c3_holds,
        "c1_holds": h.c1_holds,
        "c2_holds": h.c2_holds,
        "c3_implies_c1": h.c3_implies_c1,
        "c1_implies_c2": h.c1_implies_c2,
        "ok": h.ok,
    })
}

pub fn triple_hierarchy_to_value(h: &TripleHierarchyReport) -> Value {
    json!({
        "c5_holds": h.c5_holds,
        "c4_holds": h.c4_holds,
        "c6_holds": h.c6_holds,
        "c5_implies_c4": h.c5_implies_c4,
        "c4_implies_c6": h.c4_implies_c6,
        "ok": h.ok,
    })
}

pub fn transfer_to_value(t: &TransferReport) -> Value {
    json!({
        "condition": condition_to_value(&t.condition),
        "ac_nilpotent": t.ac_nilpotent,
        "bd_nilpotent": t.bd_nilpotent,
        "holds": t.holds,
    })
}

fn version_check_to_value(v: &VersionCheck) -> Value {
    json!({
        "source_index": v.source_index,
        "target_index": v.target_index,
        "formula_matches": v.formula_matches,
    })
}

pub fn version_to_value(v: &VersionReport) -> Value {
    json!({
        "cline": version_check_to_value(&v.cline),
        "jacobson": version_check_to_value(&v.jacobson),
    })
}

/// Claimed-vs-computed row for the fixed counterexample report.
pub fn comparison_row(
    quantity: &str,
    claimed: &Matrix,
    computed: &Matrix,
) -> Result<Value, JsonError> {
    Ok(json!({
        "quantity": quantity,
        "claimed": matrix_to_value(claimed)?,
        "computed": matrix_to_value(computed)?,
        "agrees": claimed.equals(computed),
    }))
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values are always serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_sorted_keys_and_trailing_newline() {
        let v = json!({"zeta": 1, "alpha": 2});
        let s = render(&v);
        assert!(s.ends_with('\n'));
        let za = s.find("zeta").unwrap();
        let al = s.find("alpha").unwrap();
        assert!(al < za);
    }

    #[test]
    fn non_finite_floats_become_null() {
        assert_eq!(float_value(f64::NAN), Value::Null);
        assert_eq!(float_value(1.5), json!(1.5));
    }
}
