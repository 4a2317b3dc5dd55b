//! Drazin-family generalized inverses via the core-nilpotent splitting.
//!
//! For square `A` with index `k`, the space splits as
//! `col(A^k) (+) null(A^k)`; in a basis adapted to that splitting `A`
//! becomes `blockdiag(C, N)` with `C` invertible and `N` nilpotent, and
//! the Drazin inverse is `blockdiag(C^-1, 0)` pulled back. The verifier
//! re-checks the defining equations from scratch so it shares no code
//! path with the construction.

use crate::field::FieldSpec;
use crate::matrix::{Matrix, MatrixError};
use crate::solve::{column_space_basis, mat_inverse, nullspace_basis, poly_span_membership, rank, SolveError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DrazinError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("group inverse requires index at most 1, matrix has index {index}")]
    GroupInverseAbsent { index: usize },
    #[error("decomposition unstable: {0}")]
    Unstable(&'static str),
}

/// Core-nilpotent data of a square matrix.
#[derive(Debug, Clone)]
pub struct DrazinDecomposition {
    pub index: usize,
    pub inverse: Matrix,
    /// Spectral idempotent `I - A A^D`; projects onto the nilpotent part.
    pub idempotent: Matrix,
    /// Rank of `A^index`, the dimension of the invertible core.
    pub core_rank: usize,
    /// Largest relative residual among the defining equations;
    /// exactly zero over the exact fields.
    pub max_residual: f64,
}

/// Smallest `j >= 0` with `rank(A^j) = rank(A^(j+1))`.
pub fn index_of(a: &Matrix) -> Result<usize, DrazinError> {
    let n = a.require_square()?;
    if n == 0 {
        return Ok(0);
    }
    let mut prev_rank = n;
    let mut power = a.clone();
    for j in 1..=n + 1 {
        let r = rank(&power)?;
        if r == prev_rank {
            return Ok(j - 1);
        }
        prev_rank = r;
        power = power.mul(a)?;
    }
    unreachable!("rank sequence stabilizes within the dimension")
}

/// Drazin inverse with its spectral idempotent and index.
pub fn drazin_inverse(a: &Matrix) -> Result<DrazinDecomposition, DrazinError> {
    let n = a.require_square()?;
    if n == 0 {
        return Ok(DrazinDecomposition {
            index: 0,
            inverse: a.clone(),
            idempotent: a.clone(),
            core_rank: 0,
            max_residual: 0.0,
        });
    }
    let k = index_of(a)?;
    let (inverse, core_rank) = if k == 0 {
        let inv = mat_inverse(a)?
            .ok_or(DrazinError::Unstable("index-0 matrix failed to invert"))?;
        (inv, n)
    } else {
        let p = a.pow(k)?;
        let u = column_space_basis(&p)?;
        let v = nullspace_basis(&p)?;
        let r = u.cols;
        let s = u.hstack(&v)?;
        let s_inv = mat_inverse(&s)?
            .ok_or(DrazinError::Unstable("core and nilpotent parts fail to span"))?;
        let t = s_inv.mul(a)?.mul(&s)?;
        let mut core = Matrix::zero(a.field, r, r);
        for i in 0..r {
            for j in 0..r {
                core.set(i, j, t.get(i, j).clone());
            }
        }
        let core_inv = match mat_inverse(&core)? {
            Some(ci) => ci,
            None => return Err(DrazinError::Unstable("core block is singular")),
        };
        let mut block = Matrix::zero(a.field, n, n);
        for i in 0..r {
            for j in 0..r {
                block.set(i, j, core_inv.get(i, j).clone());
            }
        }
        (s.mul(&block)?.mul(&s_inv)?, r)
    };
    let idempotent = Matrix::identity(a.field, n).sub(&a.mul(&inverse)?)?;
    let max_residual = match a.field {
        FieldSpec::ComplexFloat(_) => {
            let xax = inverse.mul(a)?.mul(&inverse)?;
            let ax = a.mul(&inverse)?;
            let xa = inverse.mul(a)?;
            let akx = a.pow(k + 1)?.mul(&inverse)?;
            let ak = a.pow(k)?;
            xax.relative_residual(&inverse)
                .max(ax.relative_residual(&xa))
                .max(akx.relative_residual(&ak))
        }
        _ => 0.0,
    };
    Ok(DrazinDecomposition { index: k, inverse, idempotent, core_rank, max_residual })
}

/// Group inverse; exists exactly when the index is at most 1.
pub fn group_inverse(a: &Matrix) -> Result<DrazinDecomposition, DrazinError> {
    let k = index_of(a)?;
    if k > 1 {
        return Err(DrazinError::GroupInverseAbsent { index: k });
    }
    drazin_inverse(a)
}

/// `I - A A^D`.
pub fn spectral_idempotent(a: &Matrix) -> Result<Matrix, DrazinError> {
    Ok(drazin_inverse(a)?.idempotent)
}

/// One verified equation in an oracle report.
#[derive(Debug, Clone)]
pub struct OracleCheck {
    pub name: &'static str,
    pub holds: bool,
    /// Relative residual over the complex field; `None` over exact fields.
    pub residual: Option<f64>,
}

/// Outcome of re-checking the Drazin axioms for a candidate inverse.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub ok: bool,
    pub checks: Vec<OracleCheck>,
}

impl OracleReport {
    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter_map(|c| c.residual)
            .fold(0.0, f64::max)
    }

    pub fn failed_checks(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.holds).map(|c| c.name).collect()
    }
}

fn equation_check(name: &'static str, l: &Matrix, r: &Matrix) -> OracleCheck {
    let holds = l.equals(r);
    let residual = match l.field {
        FieldSpec::ComplexFloat(_) => Some(l.relative_residual(r)),
        _ => None,
    };
    OracleCheck { name, holds, residual }
}

/// Re-derives, from first principles, whether `x` is the Drazin inverse
/// of `a`: `xax = x`, `ax = xa`, `a - a^2 x` nilpotent, and `x` lies in
/// the polynomial algebra generated by `a`.
pub fn verify_drazin_axioms(a: &Matrix, x: &Matrix) -> Result<OracleReport, DrazinError> {
    let n = a.require_square()?;
    if x.rows != n || x.cols != n {
        return Err(MatrixError::DimensionMismatch(format!(
            "candidate is {}x{}, matrix is {}x{}",
            x.rows, x.cols, n, n
        ))
        .into());
    }
    let mut checks = Vec::with_capacity(4);
    let xax = x.mul(a)?.mul(x)?;
    checks.push(equation_check("inverse_fixed_point", &xax, x));
    let ax = a.mul(x)?;
    let xa = x.mul(a)?;
    checks.push(equation_check("commutes", &ax, &xa));
    let core = a.sub(&a.mul(a)?.mul(x)?)?;
    let nil = core.is_nilpotent()?;
    let nil_residual = match a.field {
        FieldSpec::ComplexFloat(_) => {
            let p = core.pow(n)?;
            Some(p.frobenius_norm() / 1f64.max(core.frobenius_norm().powi(n as i32)))
        }
        _ => None,
    };
    checks.push(OracleCheck { name: "core_nilpotent", holds: nil, residual: nil_residual });
    let in_span = poly_span_membership(x, a)?.is_some();
    checks.push(OracleCheck { name: "polynomial_in_target", holds: in_span, residual: None });
    let ok = checks.iter().all(|c| c.holds);
    Ok(OracleReport { ok, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    fn m(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64_rows(q(), rows).unwrap()
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_of(&Matrix::identity(q(), 3)).unwrap(), 0);
        assert_eq!(index_of(&m(&[vec![2, 0], vec![0, 0]])).unwrap(), 1);
        assert_eq!(index_of(&m(&[vec![0, 1], vec![0, 0]])).unwrap(), 2);
        assert_eq!(index_of(&m(&[vec![0, 1], vec![0, 1]])).unwrap(), 1);
        assert_eq!(index_of(&Matrix::zero(q(), 2, 2)).unwrap(), 1);
    }

    #[test]
    fn projection_like_matrix() {
        let a = m(&[vec![2, 0], vec![0, 0]]);
        let dec = drazin_inverse(&a).unwrap();
        assert_eq!(dec.index, 1);
        assert_eq!(dec.core_rank, 1);
        let mut inv = Matrix::zero(q(), 2, 2);
        inv.set(0, 0, Scalar::rational(1, 2));
        assert_eq!(dec.inverse, inv);
        assert_eq!(dec.idempotent, m(&[vec![0, 0], vec![0, 1]]));
        assert!(verify_drazin_axioms(&a, &dec.inverse).unwrap().ok);
    }

    #[test]
    fn nilpotent_matrix_has_zero_inverse() {
        let a = m(&[vec![0, 1], vec![0, 0]]);
        let dec = drazin_inverse(&a).unwrap();
        assert_eq!(dec.index, 2);
        assert_eq!(dec.core_rank, 0);
        assert!(dec.inverse.is_zero_exact());
        assert_eq!(dec.idempotent, Matrix::identity(q(), 2));
        assert!(verify_drazin_axioms(&a, &dec.inverse).unwrap().ok);
    }

    #[test]
    fn idempotent_is_its_own_inverse() {
        let a = m(&[vec![0, 1], vec![0, 1]]);
        let dec = drazin_inverse(&a).unwrap();
        assert_eq!(dec.index, 1);
        assert_eq!(dec.inverse, a);
        assert!(verify_drazin_axioms(&a, &dec.inverse).unwrap().ok);
    }

    #[test]
    fn invertible_matrix_gives_plain_inverse() {
        let a = m(&[vec![2, 1], vec![1, 1]]);
        let dec = drazin_inverse(&a).unwrap();
        assert_eq!(dec.index, 0);
        assert_eq!(dec.inverse, m(&[vec![1, -1], vec![-1, 2]]));
        assert!(dec.idempotent.is_zero_exact());
        assert_eq!(dec.core_rank, 2);
    }

    #[test]
    fn group_inverse_refuses_high_index() {
        let a = m(&[vec![0, 1], vec![0, 0]]);
        assert_eq!(
            group_inverse(&a).unwrap_err(),
            DrazinError::GroupInverseAbsent { index: 2 }
        );
        let b = m(&[vec![0, 1], vec![0, 1]]);
        assert_eq!(group_inverse(&b).unwrap().inverse, b);
    }

    #[test]
    fn oracle_flags_wrong_candidate_precisely() {
        let a = m(&[vec![2, 0], vec![0, 0]]);
        let mut x = Matrix::zero(q(), 2, 2);
        x.set(0, 0, Scalar::rational(1, 2));
        x.set(1, 1, Scalar::rational(1, 1));
        let report = verify_drazin_axioms(&a, &x).unwrap();
        assert!(!report.ok);
        assert_eq!(report.failed_checks(), vec!["inverse_fixed_point"]);
    }

    #[test]
    fn gf5_nilpotent_by_reduction() {
        let f = FieldSpec::prime(5).unwrap();
        let a = Matrix::from_i64_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap();
        let dec = drazin_inverse(&a).unwrap();
        assert_eq!(dec.index, 2);
        assert!(dec.inverse.is_zero_exact());
        assert!(verify_drazin_axioms(&a, &dec.inverse).unwrap().ok);
    }

    #[test]
    fn complex_diagonal_within_tolerance() {
        let f = FieldSpec::complex_default();
        let mut a = Matrix::zero(f, 2, 2);
        a.set(0, 0, Scalar::complex(2.0, 0.0));
        let dec = drazin_inverse(&a).unwrap();
        assert_eq!(dec.index, 1);
        let mut expect = Matrix::zero(f, 2, 2);
        expect.set(0, 0, Scalar::complex(0.5, 0.0));
        assert!(dec.inverse.equals(&expect));
        assert!(dec.max_residual <= 1e-12);
        assert!(verify_drazin_axioms(&a, &dec.inverse).unwrap().ok);
    }

    #[test]
    fn spectral_idempotent_squares_to_itself() {
        let a = m(&[vec![1, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let p = spectral_idempotent(&a).unwrap();
        assert_eq!(p.mul(&p).unwrap(), p);
        assert_eq!(a.mul(&p).unwrap(), p.mul(&a).unwrap());
    }
}
