//! Univariate polynomials `S^shift * (c_0 + c_1 S + ...)` over GF(2^m) with
//! integer exponents. Novikov data lands here once all exponents are put on
//! a common lattice `S = T^(1/D)`.

use crate::gf2bar::Field;

use super::NovikovError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoly {
    field: Field,
    shift: u64,
    /// Raw coordinate words; empty for zero, otherwise first and last are nonzero.
    coeffs: Vec<u32>,
}

impl LatticePoly {
    pub fn zero(field: Field) -> Self {
        LatticePoly {
            field,
            shift: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        LatticePoly {
            field,
            shift: 0,
            coeffs: vec![1],
        }
    }

    /// Builds from `(exponent, coefficient bits)` pairs; repeated exponents add up.
    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (u64, u32)>) -> Self {
        let terms: Vec<_> = terms.into_iter().filter(|t| t.1 != 0).collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero(field);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![0u32; (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] ^= c;
        }
        Self::normalized(field, lo, coeffs)
    }

    fn normalized(field: Field, mut shift: u64, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == coeffs.len() {
            return Self::zero(field);
        }
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            shift += lead_zeros as u64;
        }
        LatticePoly {
            field,
            shift,
            coeffs,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent present; `None` for zero.
    pub fn valuation(&self) -> Option<u64> {
        (!self.is_zero()).then_some(self.shift)
    }

    pub fn degree(&self) -> Option<u64> {
        (!self.is_zero()).then(|| self.shift + self.coeffs.len() as u64 - 1)
    }

    /// Nonzero `(exponent, coefficient bits)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.shift + i as u64, c))
    }

    /// Splits off `S^shift`, leaving a polynomial with nonzero constant term.
    pub fn split_shift(mut self) -> (u64, LatticePoly) {
        let shift = std::mem::take(&mut self.shift);
        (shift, self)
    }

    pub fn add(&self, other: &LatticePoly) -> LatticePoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(other.shift);
        let hi = self.degree().unwrap().max(other.degree().unwrap());
        let mut coeffs = vec![0u32; (hi - lo + 1) as usize];
        for p in [self, other] {
            let off = (p.shift - lo) as usize;
            for (i, &c) in p.coeffs.iter().enumerate() {
                coeffs[off + i] ^= c;
            }
        }
        Self::normalized(self.field, lo, coeffs)
    }

    pub fn mul(&self, other: &LatticePoly) -> LatticePoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let field = self.field;
        let mut coeffs = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] ^= field.mul_bits(a, b);
            }
        }
        // leading and trailing coefficients are products of units, so no renormalizing
        LatticePoly {
            field,
            shift: self.shift + other.shift,
            coeffs,
        }
    }

    /// The quotient `self / divisor`, which must be exact.
    pub fn exact_div(&self, divisor: &LatticePoly) -> Result<LatticePoly, NovikovError> {
        if divisor.is_zero() {
            return Err(NovikovError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let field = self.field;
        if self.shift < divisor.shift || self.coeffs.len() < divisor.coeffs.len() {
            return Err(NovikovError::InexactDivision);
        }
        let db = divisor.coeffs.len() - 1;
        let lead_inv = field.inv_bits(divisor.coeffs[db]);
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - db;
        let mut quot = vec![0u32; qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + db];
            if top == 0 {
                continue;
            }
            let q = field.mul_bits(top, lead_inv);
            quot[k] = q;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] ^= field.mul_bits(q, b);
            }
        }
        if rem[..db].iter().any(|&c| c != 0) {
            return Err(NovikovError::InexactDivision);
        }
        Ok(Self::normalized(field, self.shift - divisor.shift, quot))
    }
}
