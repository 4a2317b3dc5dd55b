//! Deterministic generators for quadruples and triples satisfying the
//! entwining conditions by construction.
//!
//! Every generator is a pure function of its [`GenSpec`]: the same spec
//! always yields the same matrices, so campaign runs are reproducible
//! from a seed.

use crate::field::{FieldSpec, Scalar};
use crate::identities::{Quadruple, Triple};
use crate::matrix::{Matrix, MatrixError};
use crate::solve::{mat_inverse, solve_general, Solution, SolveError};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

const RESAMPLE_CAP: usize = 64;
const REJECTION_CAP: usize = 100_000;
const COMPLEX_NORM_CAP: f64 = 1e3;

#[derive(Debug, Error)]
pub enum GenError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("invalid generator spec: {0}")]
    BadSpec(String),
    #[error("{strategy} generator gave up after {attempts} attempts")]
    Unsatisfiable { strategy: &'static str, attempts: usize },
}

/// Construction recipe for one sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// `c = b`, `d = a`: the classic two-element swap.
    Classic,
    /// Random `a, b, c` with `d` solved from `bdb = bac`, `cdb = cac`.
    Mosic,
    /// Triples with `aba = aca` enforced linearly.
    AbaAca,
    /// Like `Mosic` but `ac` is forced nilpotent.
    NilpotentAc,
    /// Unconstrained sampling kept only when the two-equality condition
    /// happens to hold; practical only over tiny prime fields.
    Rejection,
}

impl Strategy {
    pub fn label(self) -> &'static str {
        match self {
            Strategy::Classic => "classic",
            Strategy::Mosic => "mosic",
            Strategy::AbaAca => "aba_aca",
            Strategy::NilpotentAc => "nilpotent_ac",
            Strategy::Rejection => "rejection",
        }
    }

    pub fn parse(s: &str) -> Option<Strategy> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "classic" => Some(Strategy::Classic),
            "mosic" => Some(Strategy::Mosic),
            "aba_aca" => Some(Strategy::AbaAca),
            "nilpotent_ac" => Some(Strategy::NilpotentAc),
            "rejection" => Some(Strategy::Rejection),
            _ => None,
        }
    }

    pub fn yields_triple(self) -> bool {
        matches!(self, Strategy::AbaAca)
    }
}

/// Everything a generator needs; same spec, same output.
#[derive(Debug, Clone)]
pub struct GenSpec {
    pub strategy: Strategy,
    pub field: FieldSpec,
    pub dim: usize,
    pub seed: u64,
    /// Integer entries are drawn uniformly from `[-entry_bound, entry_bound]`;
    /// the complex field draws real and imaginary parts from `[-1, 1]`.
    pub entry_bound: i64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.dim == 0 {
            return Err(GenError::BadSpec("dimension must be at least 1".into()));
        }
        if self.entry_bound < 1 {
            return Err(GenError::BadSpec("entry bound must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum Generated {
    Quadruple(Quadruple),
    Triple(Triple),
}

fn sample_scalar(field: FieldSpec, bound: i64, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        FieldSpec::ComplexFloat(_) => {
            let re = rng.random_range(-1.0..=1.0);
            let im = rng.random_range(-1.0..=1.0);
            Scalar::complex(re, im)
        }
        _ => field.from_i64(rng.random_range(-bound..=bound)),
    }
}

/// Uniform random matrix with entries bounded by `bound`.
pub fn sample_matrix(field: FieldSpec, rows: usize, cols: usize, bound: i64, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zero(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, sample_scalar(field, bound, rng));
        }
    }
    m
}

fn sample_invertible(
    field: FieldSpec,
    n: usize,
    bound: i64,
    rng: &mut ChaCha8Rng,
    strategy: &'static str,
) -> Result<Matrix, GenError> {
    for _ in 0..RESAMPLE_CAP {
        let m = sample_matrix(field, n, n, bound, rng);
        if let Ok(Some(_)) = mat_inverse(&m) {
            return Ok(m);
        }
    }
    Err(GenError::Unsatisfiable { strategy, attempts: RESAMPLE_CAP })
}

fn unvec(field: FieldSpec, n: usize, v: &Matrix) -> Matrix {
    let mut m = Matrix::zero(field, n, n);
    for k in 0..n {
        for l in 0..n {
            m.set(k, l, v.get(k * n + l, 0).clone());
        }
    }
    m
}

/// Solves the linear constraints `b d b = bac`, `c d b = cac` for `d`,
/// then perturbs along the solution space to avoid always returning the
/// same particular solution. `None` when the constraints are inconsistent.
fn solve_compatible_d(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    bound: i64,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Matrix>, GenError> {
    let n = a.rows;
    let f = a.field;
    let bac = b.mul(a)?.mul(c)?;
    let cac = c.mul(a)?.mul(c)?;
    let mut sys = Matrix::zero(f, 2 * n * n, n * n);
    let mut rhs = Matrix::zero(f, 2 * n * n, 1);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    sys.set(i * n + j, k * n + l, f.mul(b.get(i, k), b.get(l, j)));
                    sys.set(n * n + i * n + j, k * n + l, f.mul(c.get(i, k), b.get(l, j)));
                }
            }
            rhs.set(i * n + j, 0, bac.get(i, j).clone());
            rhs.set(n * n + i * n + j, 0, cac.get(i, j).clone());
        }
    }
    match solve_general(&sys, &rhs)? {
        Solution::NoSolution => Ok(None),
        Solution::Solved { particular, nullspace } => {
            let mut d_vec = particular;
            for v in &nullspace {
                let coeff = sample_scalar(f, bound, rng);
                d_vec = d_vec.add(&v.scale(&coeff))?;
            }
            Ok(Some(unvec(f, n, &d_vec)))
        }
    }
}

/// `(a, b, b, a)`: both condition rows collapse to identities.
pub fn gen_classic(spec: &GenSpec) -> Result<Quadruple, GenError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let a = sample_matrix(spec.field, spec.dim, spec.dim, spec.entry_bound, &mut rng);
    let b = sample_matrix(spec.field, spec.dim, spec.dim, spec.entry_bound, &mut rng);
    Ok(Quadruple::new(a.clone(), b.clone(), b, a).expect("square by construction"))
}

/// Random `a, b, c` with a compatible `d`; satisfies `bac = bdb`,
/// `cac = cdb` by construction.
pub fn gen_mosic(spec: &GenSpec) -> Result<Quadruple, GenError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..RESAMPLE_CAP {
        let a = sample_matrix(spec.field, spec.dim, spec.dim, spec.entry_bound, &mut rng);
        let b = sample_matrix(spec.field, spec.dim, spec.dim, spec.entry_bound, &mut rng);
        let c = sample_matrix(spec.field, spec.dim, spec.dim, spec.entry_bound, &mut rng);
        if let Some(d) = solve_compatible_d(&a, &b, &c, spec.entry_bound, &mut rng)? {
            if matches!(spec.field, FieldSpec::ComplexFloat(_))
                && d.frobenius_norm() > COMPLEX_NORM_CAP
            {
                continue;
            }
            return Ok(Quadruple::new(a, b, c, d).expect("square by construction"));
        }
    }
    Err(GenError::Unsatisfiable { strategy: "mosic", attempts: RESAMPLE_CAP })
}

/// Triples with `aba = aca`: `c = b + s` where `s` solves `a s a = 0`.
pub fn gen_aba_aca(spec: &GenSpec) -> Result<Triple, GenError> {
    spec.validate()?;
    let n = spec.dim;
    let f = spec.field;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let r = rng.random_range(1..=n);
    let left = sample_matrix(f, n, r, spec.entry_bound, &mut rng);
    let right = sample_matrix(f, r, n, spec.entry_bound, &mut rng);
    let a = left.mul(&right)?;
    let b = sample_matrix(f, n, n, spec.entry_bound, &mut rng);
    let mut sys = Matrix::zero(f, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    sys.set(i * n + j, k * n + l, f.mul(a.get(i, k), a.get(l, j)));
                }
            }
        }
    }
    let zero = Matrix::zero(f, n * n, 1);
    let s = match solve_general(&sys, &zero)? {
        Solution::Solved { nullspace, .. } => {
            let mut acc = Matrix::zero(f, n * n, 1);
            for v in &nullspace {
                let coeff = sample_scalar(f, spec.entry_bound, &mut rng);
                acc = acc.add(&v.scale(&coeff))?;
            }
            unvec(f, n, &acc)
        }
        Solution::NoSolution => unreachable!("homogeneous system"),
    };
    let c = b.add(&s)?;
    Ok(Triple::new(a, b, c).expect("square by construction"))
}

/// Mosic-style quadruple whose `ac` is nilpotent: `a` invertible,
/// `c = a^-1 N` for a conjugated strictly-upper `N`.
pub fn gen_nilpotent_ac(spec: &GenSpec) -> Result<Quadruple, GenError> {
    spec.validate()?;
    let n = spec.dim;
    let f = spec.field;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..RESAMPLE_CAP {
        let a = sample_invertible(f, n, spec.entry_bound, &mut rng, "nilpotent_ac")?;
        let a_inv = mat_inverse(&a)?.expect("sampled invertible");
        let mut upper = Matrix::zero(f, n, n);
        for i in 0..n {
            for j in i + 1..n {
                upper.set(i, j, sample_scalar(f, spec.entry_bound, &mut rng));
            }
        }
        let s = sample_invertible(f, n, spec.entry_bound, &mut rng, "nilpotent_ac")?;
        let s_inv = mat_inverse(&s)?.expect("sampled invertible");
        let nilpotent = s.mul(&upper)?.mul(&s_inv)?;
        let c = a_inv.mul(&nilpotent)?;
        let b = sample_matrix(f, n, n, spec.entry_bound, &mut rng);
        if let Some(d) = solve_compatible_d(&a, &b, &c, spec.entry_bound, &mut rng)? {
            if matches!(f, FieldSpec::ComplexFloat(_)) && d.frobenius_norm() > COMPLEX_NORM_CAP {
                continue;
            }
            return Ok(Quadruple::new(a, b, c, d).expect("square by construction"));
        }
    }
    Err(GenError::Unsatisfiable { strategy: "nilpotent_ac", attempts: RESAMPLE_CAP })
}

/// Blind sampling filtered on the two-equality condition. Viable only
/// where the condition has non-negligible mass (small fields, small
/// dimensions); gives up after a fixed number of draws.
pub fn gen_rejection(spec: &GenSpec) -> Result<Quadruple, GenError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..REJECTION_CAP {
        let a = sample_matrix(spec.field, spec.dim, spec.dim, spec.entry_bound, &mut rng);
        let b = sample_matrix(spec.field, spec.dim, spec.dim, spec.entry_bound, &mut rng);
        let c = sample_matrix(spec.field, spec.dim, spec.dim, spec.entry_bound, &mut rng);
        let d = sample_matrix(spec.field, spec.dim, spec.dim, spec.entry_bound, &mut rng);
        let ac2 = a.mul(&c)?.pow(2)?;
        let db2 = d.mul(&b)?.pow(2)?;
        if !b.mul(&ac2)?.equals(&b.mul(&db2)?) {
            continue;
        }
        if !c.mul(&ac2)?.equals(&c.mul(&db2)?) {
            continue;
        }
        return Ok(Quadruple::new(a, b, c, d).expect("square by construction"));
    }
    Err(GenError::Unsatisfiable { strategy: "rejection", attempts: REJECTION_CAP })
}

/// Dispatches on `spec.strategy`.
pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    match spec.strategy {
        Strategy::Classic => Ok(Generated::Quadruple(gen_classic(spec)?)),
        Strategy::Mosic => Ok(Generated::Quadruple(gen_mosic(spec)?)),
        Strategy::AbaAca => Ok(Generated::Triple(gen_aba_aca(spec)?)),
        Strategy::NilpotentAc => Ok(Generated::Quadruple(gen_nilpotent_ac(spec)?)),
        Strategy::Rejection => Ok(Generated::Quadruple(gen_rejection(spec)?)),
    }
}

/// A fixed 2x2 counterexample triple: a shift, a projection, and a
/// unipotent lower-triangular matrix, realized exactly over the
/// rationals. It satisfies neither chain condition, yet `ba` is
/// nilpotent, which makes it the standard probe for condition sharpness.
pub fn counterexample_triple() -> Triple {
    let f = FieldSpec::rational();
    let a = Matrix::from_i64_rows(f, &[vec![0, 1], vec![0, 0]]).unwrap();
    let b = Matrix::from_i64_rows(f, &[vec![1, 0], vec![0, 0]]).unwrap();
    let c = Matrix::from_i64_rows(f, &[vec![1, 0], vec![1, 1]]).unwrap();
    Triple::new(a, b, c).unwrap()
}
