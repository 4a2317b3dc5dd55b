//! Elimination-based solvers: rank, reduced row echelon form, linear
//! systems with nullspace bases, inverses, and polynomial-span membership.
//!
//! Rational rank goes through fraction-free (Bareiss) elimination on
//! cleared-denominator integers so intermediate growth stays polynomial.
//! GF(p) uses plain Gauss. The complex field eliminates with a pivot
//! threshold `eps_rel * ||A||_F` and reports ambiguity when the rank
//! decision flips between thresholds a decade apart.

use crate::field::{FieldSpec, Scalar};
use crate::matrix::{Matrix, MatrixError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("rank decision is ambiguous near the pivot threshold")]
    NumericalRankAmbiguous,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

fn pivot_threshold(a: &Matrix) -> f64 {
    match a.field {
        FieldSpec::ComplexFloat(eps) => eps * a.frobenius_norm(),
        _ => 0.0,
    }
}

/// RREF restricted to pivoting within the first `pivot_cols` columns,
/// with `threshold` as the smallest usable pivot magnitude (exact fields
/// pass zero and use structural nonzero tests).
fn rref_inner(a: &Matrix, pivot_cols: usize, threshold: f64) -> Rref {
    let f = a.field;
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..pivot_cols.min(m.cols) {
        if r == m.rows {
            break;
        }
        let pivot_row = match f {
            FieldSpec::ComplexFloat(_) => {
                let mut best: Option<(usize, f64)> = None;
                for i in r..m.rows {
                    let mag = m.get(i, c).abs_sq().sqrt();
                    if mag > threshold && best.is_none_or(|(_, bm)| mag > bm) {
                        best = Some((i, mag));
                    }
                }
                best.map(|(i, _)| i)
            }
            _ => (r..m.rows).find(|&i| !m.get(i, c).is_zero()),
        };
        let Some(p) = pivot_row else { continue };
        if p != r {
            for j in 0..m.cols {
                let tmp = m.get(r, j).clone();
                m.set(r, j, m.get(p, j).clone());
                m.set(p, j, tmp);
            }
        }
        let inv = f.inv(m.get(r, c));
        for j in c..m.cols {
            let v = f.mul(&inv, m.get(r, j));
            m.set(r, j, v);
        }
        m.set(r, c, f.one());
        for i in 0..m.rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in c..m.cols {
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
            m.set(i, c, f.zero());
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: m, pivots }
}

/// Full reduced row echelon form at the field's default threshold.
pub fn rref(a: &Matrix) -> Rref {
    rref_inner(a, a.cols, pivot_threshold(a))
}

fn bareiss_rank(a: &Matrix) -> usize {
    let mut w: Vec<Vec<BigInt>> = (0..a.rows)
        .map(|i| {
            let mut lcm_den = BigInt::one();
            for j in 0..a.cols {
                if let Scalar::Rational(r) = a.get(i, j) {
                    lcm_den = lcm_den.lcm(r.denom());
                }
            }
            (0..a.cols)
                .map(|j| match a.get(i, j) {
                    Scalar::Rational(r) => r.numer() * (&lcm_den / r.denom()),
                    _ => unreachable!("bareiss_rank over a non-rational matrix"),
                })
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    for c in 0..a.cols {
        if rank == a.rows {
            break;
        }
        let Some(p) = (rank..a.rows).find(|&i| !w[i][c].is_zero()) else { continue };
        w.swap(rank, p);
        for i in rank + 1..a.rows {
            for j in c + 1..a.cols {
                let num = &w[rank][c] * &w[i][j] - &w[i][c] * &w[rank][j];
                let (q, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "fraction-free elimination produced a remainder");
                w[i][j] = q;
            }
            w[i][c] = BigInt::zero();
        }
        prev = w[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Rank of a matrix. Exact over the exact fields; over the complex field
/// the decision is made at `eps_rel * ||A||_F` and cross-checked a decade
/// above and below, erroring if those disagree.
pub fn rank(a: &Matrix) -> Result<usize, SolveError> {
    match a.field {
        FieldSpec::ExactRational => Ok(bareiss_rank(a)),
        FieldSpec::PrimeField(_) => Ok(rref(a).pivots.len()),
        FieldSpec::ComplexFloat(_) => {
            let t = pivot_threshold(a);
            if t == 0.0 {
                return Ok(0);
            }
            let lo = rref_inner(a, a.cols, t / 10.0).pivots.len();
            let hi = rref_inner(a, a.cols, t * 10.0).pivots.len();
            if lo != hi {
                return Err(SolveError::NumericalRankAmbiguous);
            }
            Ok(rref_inner(a, a.cols, t).pivots.len())
        }
    }
}

/// Outcome of a general linear solve `A X = B`.
#[derive(Debug, Clone)]
pub enum Solution {
    /// One particular solution (free variables set to zero) plus a basis of
    /// the homogeneous nullspace, each a column vector.
    Solved { particular: Matrix, nullspace: Vec<Matrix> },
    NoSolution,
}

/// Solves `A X = B` for all right-hand columns at once.
pub fn solve_general(a: &Matrix, b: &Matrix) -> Result<Solution, SolveError> {
    if a.rows != b.rows {
        return Err(MatrixError::DimensionMismatch(format!(
            "solve: {} equations vs {} right-hand rows",
            a.rows, b.rows
        ))
        .into());
    }
    let aug = a.hstack(b)?;
    let t = pivot_threshold(&aug);
    let rr = rref_inner(&aug, a.cols, t);
    let rank = rr.pivots.len();
    for i in rank..aug.rows {
        for j in a.cols..aug.cols {
            let entry = rr.matrix.get(i, j);
            let nonzero = match a.field {
                FieldSpec::ComplexFloat(_) => entry.abs_sq().sqrt() > t,
                _ => !entry.is_zero(),
            };
            if nonzero {
                return Ok(Solution::NoSolution);
            }
        }
    }
    let f = a.field;
    let mut particular = Matrix::zero(f, a.cols, b.cols);
    for (row, &col) in rr.pivots.iter().enumerate() {
        for j in 0..b.cols {
            particular.set(col, j, rr.matrix.get(row, a.cols + j).clone());
        }
    }
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; a.cols];
        for &c in &rr.pivots {
            s[c] = true;
        }
        s
    };
    let mut nullspace = Vec::new();
    for free in 0..a.cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = Matrix::zero(f, a.cols, 1);
        v.set(free, 0, f.one());
        for (row, &col) in rr.pivots.iter().enumerate() {
            v.set(col, 0, f.neg(rr.matrix.get(row, free)));
        }
        nullspace.push(v);
    }
    Ok(Solution::Solved { particular, nullspace })
}

/// Inverse of a square matrix; `None` when singular.
pub fn mat_inverse(a: &Matrix) -> Result<Option<Matrix>, SolveError> {
    let n = a.require_square()?;
    if matches!(a.field, FieldSpec::ComplexFloat(_)) && rank(a)? < n {
        return Ok(None);
    }
    let aug = a.hstack(&Matrix::identity(a.field, n))?;
    let rr = rref_inner(&aug, n, pivot_threshold(&aug));
    if rr.pivots.len() < n {
        return Ok(None);
    }
    let mut inv = Matrix::zero(a.field, n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, rr.matrix.get(i, n + j).clone());
        }
    }
    Ok(Some(inv))
}

/// Basis of the column space, returned as the columns of an
/// `rows x rank` matrix (the original columns at the pivot positions).
pub fn column_space_basis(a: &Matrix) -> Result<Matrix, SolveError> {
    let rr = rref(a);
    let mut out = Matrix::zero(a.field, a.rows, rr.pivots.len());
    for (k, &c) in rr.pivots.iter().enumerate() {
        for i in 0..a.rows {
            out.set(i, k, a.get(i, c).clone());
        }
    }
    Ok(out)
}

/// Basis of the right nullspace, returned as the columns of a
/// `cols x (cols - rank)` matrix.
pub fn nullspace_basis(a: &Matrix) -> Result<Matrix, SolveError> {
    let zero = Matrix::zero(a.field, a.rows, 1);
    match solve_general(a, &zero)? {
        Solution::Solved { nullspace, .. } => {
            let mut out = Matrix::zero(a.field, a.cols, nullspace.len());
            for (k, v) in nullspace.iter().enumerate() {
                for i in 0..a.cols {
                    out.set(i, k, v.get(i, 0).clone());
                }
            }
            Ok(out)
        }
        Solution::NoSolution => unreachable!("homogeneous system is always consistent"),
    }
}

/// Decides whether `x` lies in `span{I, A, ..., A^(n-1)}`, returning the
/// coefficients of one witness combination when it does. By
/// Cayley-Hamilton this span is the full unital subalgebra generated
/// by `A`.
pub fn poly_span_membership(x: &Matrix, a: &Matrix) -> Result<Option<Vec<Scalar>>, SolveError> {
    let n = a.require_square()?;
    if x.rows != n || x.cols != n {
        return Err(MatrixError::DimensionMismatch(format!(
            "span membership: {}x{} candidate against dimension {}",
            x.rows, x.cols, n
        ))
        .into());
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut m = Matrix::zero(a.field, n * n, n);
    let mut power = Matrix::identity(a.field, n);
    for j in 0..n {
        for i in 0..n {
            for k in 0..n {
                m.set(i * n + k, j, power.get(i, k).clone());
            }
        }
        if j + 1 < n {
            power = power.mul(a)?;
        }
    }
    let mut rhs = Matrix::zero(a.field, n * n, 1);
    for i in 0..n {
        for k in 0..n {
            rhs.set(i * n + k, 0, x.get(i, k).clone());
        }
    }
    match solve_general(&m, &rhs)? {
        Solution::Solved { particular, .. } => {
            Ok(Some((0..n).map(|j| particular.get(j, 0).clone()).collect()))
        }
        Solution::NoSolution => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn rank_examples() {
        let a = Matrix::from_i64_rows(q(), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(rank(&a).unwrap(), 1);
        let b = Matrix::identity(q(), 3);
        assert_eq!(rank(&b).unwrap(), 3);
        let z = Matrix::zero(q(), 2, 2);
        assert_eq!(rank(&z).unwrap(), 0);
    }

    #[test]
    fn rank_gf2() {
        let f = FieldSpec::prime(2).unwrap();
        let a = Matrix::from_i64_rows(f, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(rank(&a).unwrap(), 1);
    }

    #[test]
    fn bareiss_agrees_with_rref_pivots() {
        let rows = vec![
            vec![2, 4, 1, 3],
            vec![1, 2, 0, 1],
            vec![3, 6, 1, 4],
            vec![0, 0, 1, 1],
        ];
        let a = Matrix::from_i64_rows(q(), &rows).unwrap();
        assert_eq!(bareiss_rank(&a), rref(&a).pivots.len());
        assert_eq!(rank(&a).unwrap(), 2);
    }

    #[test]
    fn inverse_diagonal() {
        let a = Matrix::from_i64_rows(q(), &[vec![2, 0], vec![0, 3]]).unwrap();
        let inv = mat_inverse(&a).unwrap().unwrap();
        let mut expect = Matrix::zero(q(), 2, 2);
        expect.set(0, 0, Scalar::rational(1, 2));
        expect.set(1, 1, Scalar::rational(1, 3));
        assert_eq!(inv, expect);
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(q(), 2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let a = Matrix::from_i64_rows(q(), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(mat_inverse(&a).unwrap(), None);
    }

    #[test]
    fn solve_consistent_underdetermined() {
        let a = Matrix::from_i64_rows(q(), &[vec![1, 2], vec![2, 4]]).unwrap();
        let b = Matrix::from_i64_rows(q(), &[vec![3], vec![6]]).unwrap();
        match solve_general(&a, &b).unwrap() {
            Solution::Solved { particular, nullspace } => {
                assert_eq!(a.mul(&particular).unwrap(), b);
                assert_eq!(nullspace.len(), 1);
                for v in &nullspace {
                    assert!(a.mul(v).unwrap().is_zero_exact());
                }
            }
            Solution::NoSolution => panic!("expected a solution"),
        }
    }

    #[test]
    fn solve_inconsistent() {
        let a = Matrix::from_i64_rows(q(), &[vec![1, 2], vec![2, 4]]).unwrap();
        let b = Matrix::from_i64_rows(q(), &[vec![1], vec![0]]).unwrap();
        assert!(matches!(solve_general(&a, &b).unwrap(), Solution::NoSolution));
    }

    #[test]
    fn nullspace_dimension_matches_rank() {
        let a = Matrix::from_i64_rows(q(), &[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        let ns = nullspace_basis(&a).unwrap();
        assert_eq!(ns.cols, 3 - rank(&a).unwrap());
        assert!(a.mul(&ns).unwrap().is_zero_exact());
    }

    #[test]
    fn column_space_has_rank_columns() {
        let a = Matrix::from_i64_rows(q(), &[vec![1, 2, 0], vec![2, 4, 1], vec![3, 6, 1]])
            .unwrap();
        let cs = column_space_basis(&a).unwrap();
        assert_eq!(cs.cols, rank(&a).unwrap());
        assert_eq!(rank(&cs).unwrap(), cs.cols);
    }

    #[test]
    fn complex_rank_with_clear_gap() {
        let f = FieldSpec::complex_default();
        let mut a = Matrix::identity(f, 2);
        a.set(1, 1, Scalar::complex(1e-3, 0.0));
        assert_eq!(rank(&a).unwrap(), 2);
        a.set(1, 1, Scalar::complex(1e-15, 0.0));
        assert_eq!(rank(&a).unwrap(), 1);
    }

    #[test]
    fn complex_rank_ambiguity_detected() {
        let f = FieldSpec::complex_default();
        let mut a = Matrix::identity(f, 2);
        a.set(1, 1, Scalar::complex(1e-9, 0.0));
        assert_eq!(rank(&a), Err(SolveError::NumericalRankAmbiguous));
    }

    #[test]
    fn span_membership_polynomials() {
        let a = Matrix::from_i64_rows(q(), &[vec![0, 1], vec![0, 0]]).unwrap();
        let i = Matrix::identity(q(), 2);
        let combo = i.add(&a.scale(&Scalar::rational(3, 1))).unwrap();
        let coeffs = poly_span_membership(&combo, &a).unwrap().unwrap();
        assert_eq!(coeffs, vec![Scalar::rational(1, 1), Scalar::rational(3, 1)]);
        let outside = Matrix::from_i64_rows(q(), &[vec![0, 0], vec![1, 0]]).unwrap();
        assert_eq!(poly_span_membership(&outside, &a).unwrap(), None);
    }

    #[test]
    fn gfp_solve_roundtrip() {
        let f = FieldSpec::prime(7).unwrap();
        let a = Matrix::from_i64_rows(f, &[vec![2, 1], vec![1, 3]]).unwrap();
        let inv = mat_inverse(&a).unwrap().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(f, 2));
    }
}
