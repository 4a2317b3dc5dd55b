//! Dense matrices over a [`FieldSpec`], stored row-major.

use crate::field::{FieldSpec, Scalar};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("fields differ: {0:?} vs {1:?}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}

/// Dense matrix; every entry belongs to `field`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, entries }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds from integer rows, mapped into the field.
    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::DimensionMismatch("ragged rows".into()));
        }
        let mut m = Matrix::zero(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(*v));
            }
        }
        Ok(m)
    }

    pub fn from_scalar_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::DimensionMismatch("ragged rows".into()));
        }
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        Ok(Matrix { field, rows: r, cols: c, entries })
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    fn check_same_field(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(MatrixError::FieldMismatch(self.field, other.field))
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| self.field.add(x, y))
            .collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(|x| self.field.neg(x)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let entries = self.entries.iter().map(|x| self.field.mul(s, x)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "mul {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    let term = f.mul(aik, other.get(k, j));
                    out.set(i, j, f.add(cur, &term));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Non-negative integer power; `A^0 = I`. Square matrices only.
    pub fn pow(&self, e: usize) -> Result<Matrix, MatrixError> {
        let n = self.require_square()?;
        let mut acc = Matrix::identity(self.field, n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x.abs_sq()).sum::<f64>().sqrt()
    }

    /// Exact structural zero test (every entry zero); ignores tolerances.
    pub fn is_zero_exact(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// Field-aware equality: exact over the exact fields, relative
    /// Frobenius tolerance over the complex field
    /// (`||L-R||_F <= eps * max(1, ||L||_F, ||R||_F)`).
    pub fn equals(&self, other: &Matrix) -> bool {
        if self.field != other.field || self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        match self.field {
            FieldSpec::ComplexFloat(eps) => {
                let diff = match self.sub(other) {
                    Ok(d) => d,
                    Err(_) => return false,
                };
                let scale = 1f64.max(self.frobenius_norm()).max(other.frobenius_norm());
                diff.frobenius_norm() <= eps * scale
            }
            _ => self.entries == other.entries,
        }
    }

    /// Residual of the comparison `l == r`, normalized the same way as
    /// [`Matrix::equals`]. Zero for exact equality.
    pub fn relative_residual(&self, other: &Matrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        let diff = match self.sub(other) {
            Ok(d) => d,
            Err(_) => return f64::INFINITY,
        };
        let scale = 1f64.max(self.frobenius_norm()).max(other.frobenius_norm());
        diff.frobenius_norm() / scale
    }

    /// True when `A^n = 0` with `n` the dimension, which over a field is
    /// equivalent to nilpotency of any order.
    pub fn is_nilpotent(&self) -> Result<bool, MatrixError> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(true);
        }
        let p = self.pow(n)?;
        Ok(match self.field {
            FieldSpec::ComplexFloat(eps) => {
                // compare against zero with the scale of A^n's build-up
                let scale = 1f64.max(self.frobenius_norm().powi(n as i32));
                p.frobenius_norm() <= eps * scale
            }
            _ => p.is_zero_exact(),
        })
    }

    /// Row views for serialization.
    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_same_field(other)?;
        if self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "vstack {} cols with {} cols",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, entries })
    }

    /// Places `self` left of `other` (same row count).
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_same_field(other)?;
        if self.rows != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "hstack {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Matrix::zero(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn column(&self, j: usize) -> Matrix {
        let mut out = Matrix::zero(self.field, self.rows, 1);
        for i in 0..self.rows {
            out.set(i, 0, self.get(i, j).clone());
        }
        out
    }
}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
