//! Acceptance gate: ten criteria, each a test that prints one PASS line
//! with its measured scale and runtime. Run with `--nocapture` to see
//! the lines on success; any failure prints its counterexample seed.

use drazinlab_cli::campaign::{run_campaign, scrub_timing, CampaignConfig};
use drazinlab_cli::commands::run_counterexample;
use drazinlab_core::{
    cline_full, cline_two_condition, condition_hierarchy_check, drazin_inverse, gen_aba_aca,
    gen_mosic, gen_nilpotent_ac, generate, index_of, jacobson_gdrazin, jacobson_group,
    jacobson_proof_obligations, nilpotent_transfer, sample_matrix, triple_hierarchy_check,
    verify_drazin_axioms, FieldSpec, Gate, GenSpec, Generated, Matrix, Strategy,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::time::{Duration, Instant};

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn mosic_spec(field: FieldSpec, dim: usize, seed: u64, bound: i64) -> GenSpec {
    GenSpec { strategy: Strategy::Mosic, field, dim, seed, entry_bound: bound }
}

/// Random square matrix; odd draws are low-rank products so nontrivial
/// indexes appear.
fn random_square(field: FieldSpec, n: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if seed % 2 == 0 {
        sample_matrix(field, n, n, 3, &mut rng)
    } else {
        let r = 1 + (seed as usize / 2) % n;
        let u = sample_matrix(field, n, r, 3, &mut rng);
        let v = sample_matrix(field, r, n, 3, &mut rng);
        u.mul(&v).unwrap()
    }
}

#[test]
fn acceptance_01_drazin_oracle_soundness() {
    let started = Instant::now();
    let fields = [FieldSpec::rational(), gf(5), gf(7)];
    let mut checked = 0usize;
    for (fi, field) in fields.iter().enumerate() {
        for i in 0..500u64 {
            let n = 2 + (i as usize % 4);
            let a = random_square(*field, n, (fi as u64) << 32 | i);
            let dec = drazin_inverse(&a).unwrap();
            let report = verify_drazin_axioms(&a, &dec.inverse).unwrap();
            assert!(
                report.ok,
                "oracle rejected field slice {fi}, draw {i}: {:?}",
                report.failed_checks()
            );
            checked += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(30), "budget exceeded: {elapsed:.2?}");
    println!(
        "acceptance 01 PASS: constructive Drazin inverse passed the axiom oracle on \
         {checked} random matrices over 3 fields, n in 2..=5, in {elapsed:.2?}"
    );
}

fn cline_sweep(field: FieldSpec, trials: u64, dims: &[usize], bound: i64) -> usize {
    let mut checked = 0;
    for i in 0..trials {
        let dim = dims[i as usize % dims.len()];
        let q = gen_mosic(&mosic_spec(field, dim, i, bound)).unwrap();
        let r = cline_full(&q, Gate::Strict).unwrap();
        assert!(
            r.matches && r.oracle.ok,
            "product-swap formula failed at seed {i}, dim {dim}: matches={} oracle={:?}",
            r.matches,
            r.oracle.failed_checks()
        );
        checked += 1;
    }
    checked
}

#[test]
fn acceptance_02_cline_formula_at_scale() {
    let dims = [2, 3, 4];
    let started = Instant::now();
    let c5 = cline_sweep(gf(5), 1000, &dims, 3);
    let t5 = started.elapsed();
    assert!(t5 < Duration::from_secs(60), "GF(5) budget exceeded: {t5:.2?}");
    let started7 = Instant::now();
    let c7 = cline_sweep(gf(7), 1000, &dims, 3);
    let t7 = started7.elapsed();
    assert!(t7 < Duration::from_secs(60), "GF(7) budget exceeded: {t7:.2?}");
    println!(
        "acceptance 02 PASS: (bd)^D = b((ac)^D)^2 d matched the independent inverse \
         exactly on {c5} GF(5) ({t5:.2?}) and {c7} GF(7) ({t7:.2?}) generated quadruples"
    );
}

fn jacobson_sweep(field: FieldSpec, trials: u64, dims: &[usize], bound: i64) -> usize {
    let mut checked = 0;
    for i in 0..trials {
        let dim = dims[i as usize % dims.len()];
        let q = gen_mosic(&mosic_spec(field, dim, i, bound)).unwrap();
        let r = jacobson_gdrazin(&q, Gate::Strict).unwrap();
        assert!(
            r.matches && r.oracle.ok,
            "one-minus-product formula failed at seed {i}, dim {dim}"
        );
        let obligations = jacobson_proof_obligations(&q, Gate::Strict).unwrap();
        assert!(
            obligations.ok && obligations.checks.len() == 4,
            "proof obligation failed at seed {i}, dim {dim}: {:?}",
            obligations.failed_checks()
        );
        checked += 1;
    }
    checked
}

#[test]
fn acceptance_03_jacobson_formula_at_scale() {
    let dims = [2, 3, 4];
    let started = Instant::now();
    let c5 = jacobson_sweep(gf(5), 1000, &dims, 3);
    let c7 = jacobson_sweep(gf(7), 1000, &dims, 3);
    let elapsed = started.elapsed();
    println!(
        "acceptance 03 PASS: (1-ac)^D formula plus all four proof obligations held on \
         {c5} GF(5) and {c7} GF(7) generated quadruples in {elapsed:.2?}"
    );
}

#[test]
fn acceptance_04_group_inverse_form() {
    let dims = [2, 3, 4];
    let mut subpop = 0usize;
    let started = Instant::now();
    for i in 0..1000u64 {
        let dim = dims[i as usize % dims.len()];
        let q = gen_mosic(&mosic_spec(gf(5), dim, i, 3)).unwrap();
        let id = Matrix::identity(q.field(), q.dim());
        let alpha = id.sub(&q.b.mul(&q.d).unwrap()).unwrap();
        if index_of(&alpha).unwrap() > 1 {
            continue;
        }
        let r = jacobson_group(&q, Gate::Strict).unwrap();
        assert!(
            r.matches && r.oracle.ok && r.target_index <= 1,
            "group-form failure at seed {i}, dim {dim}: target index {}",
            r.target_index
        );
        subpop += 1;
    }
    let elapsed = started.elapsed();
    assert!(subpop >= 50, "subpopulation too small: {subpop}");
    println!(
        "acceptance 04 PASS: group-inverse form verified on {subpop} index-at-most-1 \
         instances (needed 50) in {elapsed:.2?}"
    );
}

#[test]
fn acceptance_05_nilpotent_transfer() {
    let dims = [2, 3, 4];
    let started = Instant::now();
    let mut checked = 0usize;
    for i in 0..500u64 {
        let dim = dims[i as usize % dims.len()];
        let spec = GenSpec {
            strategy: Strategy::NilpotentAc,
            field: gf(5),
            dim,
            seed: i,
            entry_bound: 3,
        };
        let q = gen_nilpotent_ac(&spec).unwrap();
        let t = nilpotent_transfer(&q).unwrap();
        assert!(
            t.condition.all_hold && t.ac_nilpotent,
            "generator postcondition broken at seed {i}, dim {dim}"
        );
        assert!(
            t.bd_nilpotent && t.holds,
            "nilpotency failed to transfer at seed {i}, dim {dim}"
        );
        checked += 1;
    }
    let elapsed = started.elapsed();
    println!(
        "acceptance 05 PASS: nilpotency of ac carried to bd on {checked} constructed \
         GF(5) instances, none vacuous, in {elapsed:.2?}"
    );
}

#[test]
fn acceptance_06_condition_hierarchy() {
    let started = Instant::now();
    let mut checked = 0usize;
    let quad_slices: &[(Strategy, FieldSpec, &[usize], i64, u64)] = &[
        (Strategy::Classic, gf(5), &[2, 3, 4], 3, 200),
        (Strategy::Mosic, gf(5), &[2, 3, 4], 3, 200),
        (Strategy::Mosic, gf(7), &[2, 3, 4], 3, 200),
        (Strategy::Mosic, FieldSpec::rational(), &[2, 3], 2, 100),
        (Strategy::NilpotentAc, gf(5), &[2, 3, 4], 3, 200),
        (Strategy::Rejection, gf(2), &[2], 2, 50),
        (Strategy::Rejection, gf(5), &[2], 3, 50),
    ];
    for &(strategy, field, dims, bound, trials) in quad_slices {
        for i in 0..trials {
            let dim = dims[i as usize % dims.len()];
            let spec = GenSpec { strategy, field, dim, seed: i, entry_bound: bound };
            let q = match generate(&spec) {
                Ok(Generated::Quadruple(q)) => q,
                Ok(Generated::Triple(_)) => unreachable!("quadruple strategies only"),
                Err(_) => continue,
            };
            let h = condition_hierarchy_check(&q).unwrap();
            assert!(
                h.ok,
                "hierarchy violated by {} seed {i} dim {dim}: c3={} c1={} c2={}",
                strategy.label(),
                h.c3_holds,
                h.c1_holds,
                h.c2_holds
            );
            checked += 1;
        }
    }
    for i in 0..200u64 {
        let dim = [2, 3, 4][i as usize % 3];
        let spec = GenSpec {
            strategy: Strategy::AbaAca,
            field: gf(5),
            dim,
            seed: i,
            entry_bound: 3,
        };
        let t = gen_aba_aca(&spec).unwrap();
        let h = triple_hierarchy_check(&t).unwrap();
        assert!(
            h.ok,
            "triple hierarchy violated at seed {i} dim {dim}: c5={} c4={} c6={}",
            h.c5_holds,
            h.c4_holds,
            h.c6_holds
        );
        checked += 1;
    }
    let elapsed = started.elapsed();
    println!(
        "acceptance 06 PASS: no hierarchy violation (c3=>c1=>c2, c5=>c4=>c6) across \
         {checked} generated instances over 8 field/strategy slices in {elapsed:.2?}"
    );
}

#[test]
fn acceptance_07_exact_rational_campaign() {
    let field = FieldSpec::rational();
    let dims = [2, 3];
    let started = Instant::now();
    let mut checked = 0usize;
    for i in 0..200u64 {
        let dim = dims[i as usize % dims.len()];
        let q = gen_mosic(&mosic_spec(field, dim, i, 2)).unwrap();
        let cline = cline_full(&q, Gate::Strict).unwrap();
        assert!(cline.matches && cline.oracle.ok, "swap formula failed at seed {i}");
        let two = cline_two_condition(&q, Gate::Strict).unwrap();
        assert!(two.matches && two.oracle.ok, "two-equality gate failed at seed {i}");
        let jac = jacobson_gdrazin(&q, Gate::Strict).unwrap();
        assert!(jac.matches && jac.oracle.ok, "one-minus-product failed at seed {i}");
        let obligations = jacobson_proof_obligations(&q, Gate::Strict).unwrap();
        assert!(obligations.ok, "obligations failed at seed {i}");
        checked += 1;
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120), "budget exceeded: {elapsed:.2?}");
    println!(
        "acceptance 07 PASS: both formulas exact on {checked} rational quadruples \
         (entry bound 2, n in 2..=3) in {elapsed:.2?}"
    );
}

#[test]
fn acceptance_08_complex_float_campaign() {
    let field = FieldSpec::complex_default();
    let started = Instant::now();
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for i in 0..200u64 {
        let q = gen_mosic(&mosic_spec(field, 3, i, 3)).unwrap();
        let cline = cline_full(&q, Gate::Strict).unwrap();
        let jac = jacobson_gdrazin(&q, Gate::Strict).unwrap();
        for (name, r) in [("cline", &cline), ("jacobson", &jac)] {
            assert!(
                r.matches && r.oracle.ok,
                "{name} failed at seed {i}: residual {}",
                r.max_residual()
            );
            worst = worst.max(r.max_residual());
        }
        checked += 1;
    }
    assert!(worst <= 1e-8, "worst residual {worst} above 1e-8");
    let elapsed = started.elapsed();
    println!(
        "acceptance 08 PASS: {checked} complex 3x3 quadruples, every formula-vs-oracle \
         residual at most {worst:.2e} (budget 1e-8) in {elapsed:.2?}"
    );
}

#[test]
fn acceptance_09_counterexample_regression() {
    let started = Instant::now();
    let out = run_counterexample();
    assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["verified"]["ba_drazin_zero"], json!(true));
    assert_eq!(v["verified"]["ca_idempotent"], json!(true));
    assert_eq!(v["verified"]["ca_drazin_equals_ca"], json!(true));
    assert_eq!(v["computed"]["(ca)^D"]["rows"], json!([[0, 1], [0, 1]]));
    let rows = v["claimed_vs_computed"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let agrees = |name: &str| {
        rows.iter()
            .find(|r| r["quantity"] == json!(name))
            .unwrap_or_else(|| panic!("missing table row {name}"))["agrees"]
            .as_bool()
            .unwrap()
    };
    assert!(!agrees("a(ca)^2"), "discrepancy row must disagree");
    assert!(!agrees("(ac)^D"), "mislabeled inverse row must disagree");
    assert!(agrees("(ba)^D"));
    assert!(agrees("(ab)^2a"));
    let elapsed = started.elapsed();
    println!(
        "acceptance 09 PASS: counterexample regression verified (ba)^D = 0 and \
         (ca)^D = ca, and flagged both bogus claimed values, in {elapsed:.2?}"
    );
}

#[test]
fn acceptance_10_campaign_determinism() {
    let started = Instant::now();
    let configs = [
        CampaignConfig {
            strategy: Strategy::Mosic,
            field: gf(5),
            dims: vec![2, 3, 4],
            trials: 60,
            seed0: 5,
            entry_bound: 3,
        },
        CampaignConfig {
            strategy: Strategy::Mosic,
            field: FieldSpec::complex_default(),
            dims: vec![3],
            trials: 40,
            seed0: 11,
            entry_bound: 3,
        },
    ];
    for (ci, cfg) in configs.iter().enumerate() {
        let first = run_campaign(cfg).unwrap();
        let second = run_campaign(cfg).unwrap();
        assert_eq!(first.failures, 0, "config {ci} had failures: {}", first.report);
        let mut a = first.report;
        let mut b = second.report;
        scrub_timing(&mut a);
        scrub_timing(&mut b);
        let sa = serde_json::to_string(&a).unwrap();
        let sb = serde_json::to_string(&b).unwrap();
        assert_eq!(sa, sb, "config {ci} reports diverged after timing scrub");
    }
    let elapsed = started.elapsed();
    println!(
        "acceptance 10 PASS: identical configs produced byte-identical campaign \
         reports (timing keys scrubbed) for exact and complex fields in {elapsed:.2?}"
    );
}
