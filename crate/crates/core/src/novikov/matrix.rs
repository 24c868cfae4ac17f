use serde::{Serialize, Serializer};

use crate::gf2bar::Field;
use crate::rational::Rational;

use super::{NovikovError, NovikovPoly, RankMethod};

/// Dense row-major matrix of Novikov polynomials over one field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NovikovMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<NovikovPoly>,
}

impl NovikovMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        NovikovMatrix {
            field,
            rows,
            cols,
            entries: vec![NovikovPoly::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::scalar(&NovikovPoly::one(field), n)
    }

    /// `value * identity`.
    pub fn scalar(value: &NovikovPoly, n: usize) -> Self {
        let mut m = Self::zeros(value.field(), n, n);
        for i in 0..n {
            m.entries[i * n + i] = value.clone();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<NovikovPoly>>) -> Result<Self, NovikovError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(NovikovError::DimensionMismatch {
                    left: (r, c),
                    right: (1, row.len()),
                });
            }
            for p in row {
                field.check_same(p.field())?;
                entries.push(p);
            }
        }
        Ok(NovikovMatrix {
            field,
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[NovikovPoly] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &NovikovPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: NovikovPoly) -> Result<(), NovikovError> {
        self.field.check_same(value.field())?;
        self.entries[i * self.cols + j] = value;
        Ok(())
    }

    /// Adds `value` into entry `(i, j)`.
    pub fn accumulate(&mut self, i: usize, j: usize, value: &NovikovPoly) -> Result<(), NovikovError> {
        let k = i * self.cols + j;
        self.entries[k] = self.entries[k].checked_add(value)?;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[NovikovPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NovikovPoly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &NovikovMatrix) -> Result<NovikovMatrix, NovikovError> {
        self.field.check_same(other.field)?;
        if self.cols != other.rows {
            return Err(NovikovError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.accumulate(i, j, &(a * b))?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &NovikovMatrix) -> Result<NovikovMatrix, NovikovError> {
        self.field.check_same(other.field)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(NovikovError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(NovikovMatrix {
            entries,
            ..self.clone()
        })
    }

    /// Kronecker product; `(i1, i2)` maps to row `i1 * other.rows + i2`.
    pub fn kronecker(&self, other: &NovikovMatrix) -> Result<NovikovMatrix, NovikovError> {
        self.field.check_same(other.field)?;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(self.field, r, c);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if !b.is_zero() {
                            out.entries[(i1 * other.rows + i2) * c + j1 * other.cols + j2] = a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale_row(&mut self, i: usize, by: &NovikovPoly) -> Result<(), NovikovError> {
        self.field.check_same(by.field())?;
        for j in 0..self.cols {
            let k = i * self.cols + j;
            self.entries[k] = &self.entries[k] * by;
        }
        Ok(())
    }

    pub fn rescale_exponents(&self, factor: &Rational) -> NovikovMatrix {
        NovikovMatrix {
            entries: self
                .entries
                .iter()
                .map(|p| p.rescale_exponents(factor))
                .collect(),
            ..self.clone()
        }
    }

    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> NovikovMatrix {
        let mut out = Self::zeros(self.field, self.rows, self.cols);
        for (i, &r) in row_perm.iter().enumerate() {
            for (j, &c) in col_perm.iter().enumerate() {
                out.entries[i * self.cols + j] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Rank over the fraction field of the Novikov polynomial ring.
    pub fn rank(&self, method: RankMethod) -> Result<usize, NovikovError> {
        super::rank::rank(self, method)
    }
}

impl Serialize for NovikovMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[NovikovPoly]> = (0..self.rows).map(|i| self.row(i)).collect();
        rows.serialize(serializer)
    }
}
