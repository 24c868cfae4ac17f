//! The Novikov polynomial ring: finite sums `a_1 T^l_1 + ... + a_k T^l_k`
//! with rational exponents and coefficients in GF(2^m), plus dense matrices
//! over it and their rank over the fraction field.

mod lattice;
mod matrix;
mod rank;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::gf2bar::{Field, FieldElement, FieldError};
use crate::rational::{self, Rational};

pub use lattice::LatticePoly;
pub use matrix::NovikovMatrix;
pub use rank::{probabilistic_field, RankMethod};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NovikovError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("division by the zero Novikov polynomial")]
    DivisionByZero,
    #[error("divisor does not divide the dividend exactly")]
    InexactDivision,
    #[error("exponent lattice does not fit in 64 bits")]
    ExponentOverflow,
    #[error("matrix dimensions {left:?} and {right:?} are incompatible")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
}

/// Lowest exponent of a Novikov polynomial; the zero polynomial sits at infinity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(Rational),
    Infinite,
}

#[derive(Clone, PartialEq, Eq)]
pub struct NovikovPoly {
    field: Field,
    /// Strictly increasing exponents, no zero coefficients.
    terms: Vec<(Rational, FieldElement)>,
}

impl NovikovPoly {
    pub fn zero(field: Field) -> Self {
        NovikovPoly {
            field,
            terms: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::monomial(field.one(), rational::int(0))
    }

    /// `coeff * T^exp`.
    pub fn monomial(coeff: FieldElement, exp: Rational) -> Self {
        let field = coeff.field();
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![(exp, coeff)]
        };
        NovikovPoly { field, terms }
    }

    /// Sums arbitrary `(exponent, coefficient)` pairs.
    pub fn from_terms(
        field: Field,
        terms: impl IntoIterator<Item = (Rational, FieldElement)>,
    ) -> Result<Self, NovikovError> {
        let mut terms: Vec<_> = terms.into_iter().collect();
        for (_, c) in &terms {
            field.check_same(c.field())?;
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(NovikovPoly {
            field,
            terms: collect_sorted(terms),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &[(Rational, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.first() {
            Some((e, _)) => Valuation::Finite(e.clone()),
            None => Valuation::Infinite,
        }
    }

    /// Coefficient of `T^exp`.
    pub fn coefficient(&self, exp: &Rational) -> FieldElement {
        self.terms
            .binary_search_by(|(e, _)| e.cmp(exp))
            .map(|i| self.terms[i].1)
            .unwrap_or_else(|_| self.field.zero())
    }

    pub fn checked_add(&self, other: &NovikovPoly) -> Result<NovikovPoly, NovikovError> {
        self.field.check_same(other.field)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a.1 + b.1;
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(NovikovPoly {
            field: self.field,
            terms: out,
        })
    }

    pub fn checked_mul(&self, other: &NovikovPoly) -> Result<NovikovPoly, NovikovError> {
        self.field.check_same(other.field)?;
        let mut prod = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                prod.push((ea + eb, *ca * *cb));
            }
        }
        prod.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(NovikovPoly {
            field: self.field,
            terms: collect_sorted(prod),
        })
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: FieldElement) -> Result<NovikovPoly, NovikovError> {
        self.field.check_same(c.field())?;
        if c.is_zero() {
            return Ok(Self::zero(self.field));
        }
        Ok(NovikovPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), *a * c)).collect(),
        })
    }

    /// Maps every exponent `l` to `factor * l`; `factor` must be positive.
    pub fn rescale_exponents(&self, factor: &Rational) -> NovikovPoly {
        assert!(factor.is_positive(), "exponent rescale must be positive");
        NovikovPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e * factor, *a))
                .collect(),
        }
    }

    /// Same sum with coefficients pushed into a larger field.
    pub fn embed(&self, target: Field) -> Result<NovikovPoly, NovikovError> {
        Ok(NovikovPoly {
            field: target,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| Ok((e.clone(), a.embed(target)?)))
                .collect::<Result<_, FieldError>>()?,
        })
    }

    /// `self / divisor`, which must be exact in the ring of finite sums.
    pub fn exact_div(&self, divisor: &NovikovPoly) -> Result<NovikovPoly, NovikovError> {
        self.field.check_same(divisor.field)?;
        if divisor.is_zero() {
            return Err(NovikovError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let lattice = ExponentLattice::covering([self, divisor]);
        // monomials are units here, so divide the shift-free parts and reattach T^(va - vb)
        let (sa, a) = lattice.to_lattice(self)?.split_shift();
        let (sb, b) = lattice.to_lattice(divisor)?.split_shift();
        let q = a.exact_div(&b)?;
        let d = Rational::from_integer(lattice.denominator.clone());
        let origin = (Rational::from_integer(BigInt::from(sa)) - Rational::from_integer(BigInt::from(sb))) / d;
        Ok(ExponentLattice {
            denominator: lattice.denominator,
            origin,
        }
        .lift(&q))
    }
}

fn collect_sorted(sorted: Vec<(Rational, FieldElement)>) -> Vec<(Rational, FieldElement)> {
    let mut out: Vec<(Rational, FieldElement)> = Vec::with_capacity(sorted.len());
    for (e, c) in sorted {
        match out.last_mut() {
            Some(last) if last.0 == e => last.1 += c,
            _ => out.push((e, c)),
        }
    }
    out.retain(|t| !t.1.is_zero());
    out
}

/// The substitution `T^l = S^((l - origin) * denominator)` that turns a finite
/// family of Novikov polynomials into ordinary polynomials in `S`.
#[derive(Debug, Clone)]
pub(crate) struct ExponentLattice {
    pub denominator: BigInt,
    pub origin: Rational,
}

impl ExponentLattice {
    pub fn covering<'a>(
        polys: impl IntoIterator<Item = &'a NovikovPoly>,
    ) -> Self {
        let polys: Vec<_> = polys.into_iter().collect();
        let exps = polys.iter().flat_map(|p| p.terms.iter().map(|t| &t.0));
        let denominator = rational::lcm_of_denominators(exps.clone());
        let origin = exps.min().cloned().unwrap_or_else(Rational::zero);
        ExponentLattice {
            denominator,
            origin,
        }
    }

    pub fn index(&self, exp: &Rational) -> Result<u64, NovikovError> {
        let k = (exp - &self.origin) * Rational::from_integer(self.denominator.clone());
        debug_assert!(k.is_integer() && !k.is_negative());
        k.to_integer().to_u64().ok_or(NovikovError::ExponentOverflow)
    }

    pub fn to_lattice(&self, p: &NovikovPoly) -> Result<LatticePoly, NovikovError> {
        let terms = p
            .terms
            .iter()
            .map(|(e, c)| Ok((self.index(e)?, c.bits())))
            .collect::<Result<Vec<_>, NovikovError>>()?;
        Ok(LatticePoly::from_terms(p.field, terms))
    }

    pub fn lift(&self, p: &LatticePoly) -> NovikovPoly {
        let d = Rational::from_integer(self.denominator.clone());
        let field = p.field();
        NovikovPoly {
            field,
            terms: p
                .terms()
                .map(|(k, c)| {
                    let e = Rational::from_integer(BigInt::from(k)) / &d + &self.origin;
                    (e, field.element(c).expect("lattice coefficient fits field"))
                })
                .collect(),
        }
    }
}

impl Add for &NovikovPoly {
    type Output = NovikovPoly;

    fn add(self, rhs: &NovikovPoly) -> NovikovPoly {
        self.checked_add(rhs).expect("field mismatch in Novikov addition")
    }
}

impl Mul for &NovikovPoly {
    type Output = NovikovPoly;

    fn mul(self, rhs: &NovikovPoly) -> NovikovPoly {
        self.checked_mul(rhs)
            .expect("field mismatch in Novikov multiplication")
    }
}

impl fmt::Debug for NovikovPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} @{}", self.field)
    }
}

impl fmt::Display for NovikovPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            if e.is_integer() {
                write!(f, "T^{e}")?;
            } else {
                write!(f, "T^({e})")?;
            }
        }
        Ok(())
    }
}

/// One serialized term: `{"coeff": {"bits": .., "m": ..}, "exp": "p/q"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub coeff: FieldElement,
    #[serde(with = "rational::as_string")]
    pub exp: Rational,
}

/// Serialized Novikov polynomial. The zero polynomial is `[]`, so the field
/// has to be supplied when converting back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyRepr(pub Vec<TermRepr>);

impl PolyRepr {
    pub fn into_poly(self, field: Field) -> Result<NovikovPoly, NovikovError> {
        NovikovPoly::from_terms(field, self.0.into_iter().map(|t| (t.exp, t.coeff)))
    }
}

impl From<&NovikovPoly> for PolyRepr {
    fn from(p: &NovikovPoly) -> Self {
        PolyRepr(
            p.terms
                .iter()
                .map(|(e, c)| TermRepr {
                    coeff: *c,
                    exp: e.clone(),
                })
                .collect(),
        )
    }
}

impl Serialize for NovikovPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyRepr::from(self).serialize(serializer)
    }
}
