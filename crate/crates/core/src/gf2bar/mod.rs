//! Arithmetic in the finite fields GF(2^m) that together stand in for the
//! algebraic closure of GF(2).
//!
//! Every field is built over the canonical modulus from [`table`], so the
//! polynomial generator `x` is primitive and embeddings between layers are
//! given by generator powers. Multiplication goes through discrete log
//! tables that are built once per degree and shared for the process lifetime.

mod roots;
pub mod table;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign};
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use roots::find_roots;
pub use table::{CONWAY_MODULI, MAX_DEGREE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("extension degree {0} is outside the supported range 1..={MAX_DEGREE}")]
    DegreeOutOfRange(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands live in different fields: GF(2^{left}) and GF(2^{right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("GF(2^{from}) does not embed into GF(2^{target})")]
    NotASubfield { from: u32, target: u32 },
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("invalid element encoding: {0}")]
    InvalidEncoding(String),
}

struct FieldData {
    degree: u32,
    modulus: u32,
    /// `exp[k] = x^k`, stored for `k < 2 * (2^m - 1)` so sums of logs need no reduction.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

impl FieldData {
    fn build(degree: u32) -> FieldData {
        let modulus = CONWAY_MODULI[degree as usize];
        let size = 1usize << degree;
        let units = size - 1;
        let mut exp = vec![0u32; 2 * units];
        let mut log = vec![0u32; size];
        let mut a = 1u32;
        for k in 0..units {
            exp[k] = a;
            exp[k + units] = a;
            log[a as usize] = k as u32;
            a <<= 1;
            if a & (1 << degree) != 0 {
                a ^= modulus;
            }
        }
        FieldData {
            degree,
            modulus,
            exp,
            log,
        }
    }

    #[inline]
    fn units(&self) -> u32 {
        ((1u64 << self.degree) - 1) as u32
    }
}

static FIELDS: [OnceLock<FieldData>; (MAX_DEGREE + 1) as usize] =
    [const { OnceLock::new() }; (MAX_DEGREE + 1) as usize];

/// Descriptor of GF(2^m) with its canonical modulus. Cheap to copy.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldData);

impl Field {
    pub fn new(degree: u32) -> Result<Field, FieldError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(FieldError::DegreeOutOfRange(degree));
        }
        let data = FIELDS[degree as usize].get_or_init(|| FieldData::build(degree));
        Ok(Field(data))
    }

    /// GF(2) itself.
    pub fn prime() -> Field {
        Field::new(1).expect("degree 1 is tabulated")
    }

    pub fn degree(self) -> u32 {
        self.0.degree
    }

    /// Modulus bits, `x^i` at bit `i`, including the leading `x^m`.
    pub fn modulus(self) -> u32 {
        self.0.modulus
    }

    /// Number of elements, `2^m`.
    pub fn size(self) -> u32 {
        1 << self.0.degree
    }

    /// Order of the multiplicative group, `2^m - 1`.
    pub fn unit_count(self) -> u32 {
        self.0.units()
    }

    pub fn zero(self) -> FieldElement {
        FieldElement {
            field: self,
            bits: 0,
        }
    }

    pub fn one(self) -> FieldElement {
        FieldElement {
            field: self,
            bits: 1,
        }
    }

    /// The class of `x`, a primitive element by choice of modulus.
    pub fn generator(self) -> FieldElement {
        FieldElement {
            field: self,
            bits: self.0.exp[1 % self.0.exp.len()],
        }
    }

    pub fn element(self, bits: u32) -> Result<FieldElement, FieldError> {
        if bits >> self.degree() != 0 {
            return Err(FieldError::InvalidEncoding(format!(
                "{bits:#x} has more than {} bits",
                self.degree()
            )));
        }
        Ok(FieldElement { field: self, bits })
    }

    /// `g^k` for the canonical generator `g`.
    pub fn exp(self, k: u64) -> FieldElement {
        let units = self.0.units() as u64;
        FieldElement {
            field: self,
            bits: self.0.exp[(k % units) as usize],
        }
    }

    /// All elements in canonical order.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.size()).map(move |bits| FieldElement { field: self, bits })
    }

    /// Nonzero elements in canonical order.
    pub fn units(self) -> impl Iterator<Item = FieldElement> {
        (1..self.size()).map(move |bits| FieldElement { field: self, bits })
    }

    pub fn is_subfield_of(self, other: Field) -> bool {
        other.degree().is_multiple_of(self.degree())
    }

    /// Product of raw coordinate words, skipping element wrappers.
    #[inline]
    pub(crate) fn mul_bits(self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let data = self.0;
        data.exp[(data.log[a as usize] + data.log[b as usize]) as usize]
    }

    #[inline]
    pub(crate) fn inv_bits(self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let data = self.0;
        let units = data.units();
        data.exp[((units - data.log[a as usize]) % units) as usize]
    }

    pub(crate) fn check_same(self, other: Field) -> Result<(), FieldError> {
        if self == other {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch {
                left: self.degree(),
                right: other.degree(),
            })
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.degree == other.0.degree
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.degree.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.0.degree)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.0.degree)
    }
}

/// An element of GF(2^m) in polynomial-basis coordinates.
#[derive(Clone, Copy)]
pub struct FieldElement {
    field: Field,
    bits: u32,
}

impl FieldElement {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    /// Discrete log to the canonical generator; `None` for zero.
    pub fn log(&self) -> Option<u32> {
        (!self.is_zero()).then(|| self.field.0.log[self.bits as usize])
    }

    pub fn checked_add(self, rhs: FieldElement) -> Result<FieldElement, FieldError> {
        self.field.check_same(rhs.field)?;
        Ok(FieldElement {
            field: self.field,
            bits: self.bits ^ rhs.bits,
        })
    }

    pub fn checked_mul(self, rhs: FieldElement) -> Result<FieldElement, FieldError> {
        self.field.check_same(rhs.field)?;
        Ok(self.mul_unchecked(rhs))
    }

    #[inline]
    fn mul_unchecked(self, rhs: FieldElement) -> FieldElement {
        if self.bits == 0 || rhs.bits == 0 {
            return self.field.zero();
        }
        let data = self.field.0;
        let k = data.log[self.bits as usize] + data.log[rhs.bits as usize];
        FieldElement {
            field: self.field,
            bits: data.exp[k as usize],
        }
    }

    pub fn inv(self) -> Result<FieldElement, FieldError> {
        let k = self.log().ok_or(FieldError::ZeroInverse)?;
        let units = self.field.unit_count();
        Ok(self.field.exp(((units - k) % units) as u64))
    }

    /// `self^e`; negative exponents require a unit, and `0^0 = 1`.
    pub fn pow(self, e: i64) -> Result<FieldElement, FieldError> {
        if e == 0 {
            return Ok(self.field.one());
        }
        match self.log() {
            None if e < 0 => Err(FieldError::ZeroInverse),
            None => Ok(self),
            Some(k) => {
                let units = self.field.unit_count() as i128;
                let t = (k as i128 * e as i128).rem_euclid(units);
                Ok(self.field.exp(t as u64))
            }
        }
    }

    pub fn square(self) -> FieldElement {
        self.mul_unchecked(self)
    }

    /// The Frobenius preimage, `a^(2^(m-1))`.
    pub fn sqrt(self) -> FieldElement {
        let mut r = self;
        for _ in 1..self.field.degree() {
            r = r.square();
        }
        r
    }

    /// Image under the canonical inclusion GF(2^m) -> GF(2^(l m)).
    pub fn embed(self, target: Field) -> Result<FieldElement, FieldError> {
        if !self.field.is_subfield_of(target) {
            return Err(FieldError::NotASubfield {
                from: self.field.degree(),
                target: target.degree(),
            });
        }
        match self.log() {
            None => Ok(target.zero()),
            Some(k) => {
                let stride = (target.unit_count() / self.field.unit_count()) as u64;
                Ok(target.exp(k as u64 * stride))
            }
        }
    }

    /// Order in the multiplicative group; `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u32> {
        let k = self.log()?;
        let units = self.field.unit_count();
        Some(units / gcd(k, units))
    }

    /// Degree of the smallest subfield containing this element.
    pub fn minimal_degree(&self) -> u32 {
        let m = self.field.degree();
        (1..=m)
            .filter(|&d| m.is_multiple_of(d))
            .find(|&d| {
                let mut r = *self;
                for _ in 0..d {
                    r = r.square();
                }
                r.bits == self.bits
            })
            .unwrap_or(m)
    }

    /// Degree-ascending coefficient string of length `m`.
    pub fn to_bit_string(&self) -> String {
        (0..self.field.degree())
            .map(|i| if self.bits >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn from_bit_string(field: Field, s: &str) -> Result<FieldElement, FieldError> {
        if s.len() != field.degree() as usize {
            return Err(FieldError::InvalidEncoding(format!(
                "expected {} bits for {field}, got {:?}",
                field.degree(),
                s
            )));
        }
        let mut bits = 0u32;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => {
                    return Err(FieldError::InvalidEncoding(format!(
                        "unexpected character {ch:?} in {s:?}"
                    )))
                }
            }
        }
        Ok(FieldElement { field, bits })
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.bits == other.bits
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.bits.hash(state);
    }
}

/// Canonical order: by field degree, then by the coefficient bits read from
/// the highest power of `x` down.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.degree(), self.bits).cmp(&(other.field.degree(), other.bits))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.to_bit_string(), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(0) => write!(f, "1"),
            Some(1) => write!(f, "g"),
            Some(k) => write!(f, "g^{k}"),
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = *self * rhs;
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    bits: String,
    m: u32,
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ElementRepr {
            bits: self.to_bit_string(),
            m: self.field.degree(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        let field = Field::new(repr.m).map_err(serde::de::Error::custom)?;
        FieldElement::from_bit_string(field, &repr.bits).map_err(serde::de::Error::custom)
    }
}
