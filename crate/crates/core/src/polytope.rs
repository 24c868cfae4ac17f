//! Moment polytopes `{u : <u, v_j> >= lambda_j}`, interior points, facet
//! energies, products, and the builtin examples.
//!
//! Fano-ness and smoothness of the toric manifold are taken on trust; the
//! only lattice condition checked is that some `n` normals form a basis of
//! `Z^n`, which the normal form needs.

use std::fmt;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("invalid polytope data: {0}")]
    Invalid(Box<Diagnostic>),
    #[error("no {0} of the facet normals form a unimodular basis")]
    NoUnimodularBasis(usize),
    #[error("unknown builtin polytope {0:?} (expected cpn(k), blowup_cp3 or rp_product(k,j))")]
    UnknownBuiltin(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub v: Vec<i64>,
    #[serde(with = "rational::as_string")]
    pub lambda: Rational,
}

impl Facet {
    pub fn new(v: Vec<i64>, lambda: Rational) -> Self {
        Facet { v, lambda }
    }

    /// `<c, v> - lambda`.
    pub fn slack(&self, c: &InteriorPoint) -> Rational {
        let dot: Rational = self
            .v
            .iter()
            .zip(&c.0)
            .map(|(&vi, ci)| ci * int(vi))
            .sum();
        dot - &self.lambda
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoPolytope {
    dim: usize,
    facets: Vec<Facet>,
    name: Option<String>,
}

impl FanoPolytope {
    /// Unchecked constructor; run [`validate`] before trusting the data.
    pub fn new(dim: usize, facets: Vec<Facet>) -> Self {
        FanoPolytope {
            dim,
            facets,
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn normals(&self) -> impl Iterator<Item = &[i64]> {
        self.facets.iter().map(|f| f.v.as_slice())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Same polytope with facets listed in the given order.
    pub fn reorder_facets(&self, order: &[usize]) -> Self {
        FanoPolytope {
            facets: order.iter().map(|&j| self.facets[j].clone()).collect(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InteriorPoint(#[serde(with = "rational::vec_as_string")] pub Vec<Rational>);

impl InteriorPoint {
    pub fn uniform(n: usize, value: Rational) -> Self {
        InteriorPoint(vec![value; n])
    }
}

/// Facet energies `<c, v_j> - lambda_j`, without the factor `2 pi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EnergyVector(#[serde(with = "rational::vec_as_string")] pub Vec<Rational>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    EmptyDimension,
    TooFewFacets { facets: usize, needed: usize },
    NormalLength { facet: usize, expected: usize, found: usize },
    PointLength { expected: usize, found: usize },
    NotPrimitive { facet: usize },
    NoUnimodularBasis,
    NotInterior {
        facet: usize,
        #[serde(with = "rational::as_string")]
        pairing: Rational,
        #[serde(with = "rational::as_string")]
        lambda: Rational,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::EmptyDimension => write!(f, "dimension must be positive"),
            Diagnostic::TooFewFacets { facets, needed } => {
                write!(f, "{facets} facets given, at least {needed} needed")
            }
            Diagnostic::NormalLength {
                facet,
                expected,
                found,
            } => write!(f, "facet {facet}: normal has {found} entries, expected {expected}"),
            Diagnostic::PointLength { expected, found } => {
                write!(f, "interior point has {found} coordinates, expected {expected}")
            }
            Diagnostic::NotPrimitive { facet } => write!(f, "facet {facet}: normal is not primitive"),
            Diagnostic::NoUnimodularBasis => {
                write!(f, "no n facet normals form a basis of the lattice")
            }
            Diagnostic::NotInterior {
                facet,
                pairing,
                lambda,
            } => write!(
                f,
                "facet {facet}: <c, v> = {} is not greater than lambda = {}",
                rational::format(pairing),
                rational::format(lambda)
            ),
        }
    }
}

/// Findings of [`validate`]; facet numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    pub issues: Vec<Diagnostic>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn first(&self) -> Option<&Diagnostic> {
        self.issues.first()
    }

    pub fn into_result(self) -> Result<(), PolytopeError> {
        match self.issues.into_iter().next() {
            None => Ok(()),
            Some(d) => Err(PolytopeError::Invalid(Box::new(d))),
        }
    }
}

pub fn validate(p: &FanoPolytope, c: &InteriorPoint) -> Diagnostics {
    let mut issues = Vec::new();
    let n = p.dim;
    if n == 0 {
        issues.push(Diagnostic::EmptyDimension);
        return Diagnostics { issues };
    }
    if p.facets.len() < n + 1 {
        issues.push(Diagnostic::TooFewFacets {
            facets: p.facets.len(),
            needed: n + 1,
        });
    }
    let mut shapes_ok = true;
    for (j, f) in p.facets.iter().enumerate() {
        if f.v.len() != n {
            shapes_ok = false;
            issues.push(Diagnostic::NormalLength {
                facet: j + 1,
                expected: n,
                found: f.v.len(),
            });
        } else if f.v.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
            issues.push(Diagnostic::NotPrimitive { facet: j + 1 });
        }
    }
    if c.0.len() != n {
        shapes_ok = false;
        issues.push(Diagnostic::PointLength {
            expected: n,
            found: c.0.len(),
        });
    }
    if !shapes_ok {
        return Diagnostics { issues };
    }
    if unimodular_subset(p).is_none() {
        issues.push(Diagnostic::NoUnimodularBasis);
    }
    for (j, f) in p.facets.iter().enumerate() {
        let slack = f.slack(c);
        if !slack.is_positive() {
            issues.push(Diagnostic::NotInterior {
                facet: j + 1,
                pairing: slack + &f.lambda,
                lambda: f.lambda.clone(),
            });
        }
    }
    Diagnostics { issues }
}

pub fn energies(p: &FanoPolytope, c: &InteriorPoint) -> Result<EnergyVector, PolytopeError> {
    validate(p, c).into_result()?;
    Ok(EnergyVector(p.facets.iter().map(|f| f.slack(c)).collect()))
}

/// Lexicographically first `n`-subset of facet indices whose normals have determinant +-1.
fn unimodular_subset(p: &FanoPolytope) -> Option<Vec<usize>> {
    (0..p.facets.len()).combinations(p.dim).find(|subset| {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&j| p.facets[j].v.clone()).collect();
        determinant(&rows).abs() == 1
    })
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn determinant(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

/// Inverse of a unimodular integer matrix.
fn unimodular_inverse(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = rows.len();
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .map(|&x| int(x))
                .chain((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }))
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).expect("unimodular");
        a.swap(p, k);
        let inv = a[k][k].recip();
        for x in a[k].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                let pivot_row = a[k].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= y * &f;
                }
            }
        }
    }
    a.into_iter()
        .map(|r| {
            r[n..]
                .iter()
                .map(|x| {
                    assert!(x.is_integer(), "inverse of a unimodular matrix is integral");
                    num_traits::ToPrimitive::to_i64(&x.to_integer()).expect("fits i64")
                })
                .collect()
        })
        .collect()
}

/// Affine unimodular change of coordinates `u' = B u - shift`, where the rows of
/// `B` are the chosen basis normals, together with the facet reordering that
/// puts those normals first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularTransform {
    /// New facet `k` is old facet `facet_order[k]`.
    pub facet_order: Vec<usize>,
    pub basis: Vec<Vec<i64>>,
    pub basis_inverse: Vec<Vec<i64>>,
    pub shift: Vec<Rational>,
}

impl UnimodularTransform {
    pub fn is_identity(&self) -> bool {
        self.facet_order.iter().enumerate().all(|(i, &j)| i == j)
            && self.shift.iter().all(Zero::is_zero)
            && self
                .basis
                .iter()
                .enumerate()
                .all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }

    /// Old normal `v` in new coordinates, `B^{-T} v`.
    pub fn map_normal(&self, v: &[i64]) -> Vec<i64> {
        let n = v.len();
        (0..n)
            .map(|k| (0..n).map(|i| self.basis_inverse[i][k] * v[i]).sum())
            .collect()
    }

    pub fn map_point(&self, c: &InteriorPoint) -> InteriorPoint {
        InteriorPoint(
            self.basis
                .iter()
                .zip(&self.shift)
                .map(|(row, s)| {
                    let dot: Rational = row.iter().zip(&c.0).map(|(&b, ci)| ci * int(b)).sum();
                    dot - s
                })
                .collect(),
        )
    }

    /// Exponent vectors expressing old characters through new ones:
    /// a character with new coordinates `r'` has old coordinate `i` equal to
    /// `r'^(row i of B^{-1})`.
    pub fn old_coordinate_exponents(&self) -> &[Vec<i64>] {
        &self.basis_inverse
    }

    /// Exponent vectors expressing new characters through old ones: new
    /// coordinate `k` is `r^(row k of B)`.
    pub fn new_coordinate_exponents(&self) -> &[Vec<i64>] {
        &self.basis
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub polytope: FanoPolytope,
    pub point: InteriorPoint,
    pub transform: UnimodularTransform,
}

/// Brings `(P, c)` to the form where the first `n` facets are `v_i = e_i`,
/// `lambda_i = 0`, using the lexicographically first unimodular `n`-subset.
pub fn normalize(p: &FanoPolytope, c: &InteriorPoint) -> Result<Normalized, PolytopeError> {
    validate(p, c).into_result()?;
    let subset = unimodular_subset(p).ok_or(PolytopeError::NoUnimodularBasis(p.dim))?;
    let basis: Vec<Vec<i64>> = subset.iter().map(|&j| p.facets[j].v.clone()).collect();
    let shift: Vec<Rational> = subset.iter().map(|&j| p.facets[j].lambda.clone()).collect();
    let mut facet_order = subset.clone();
    facet_order.extend((0..p.facets.len()).filter(|j| !subset.contains(j)));
    let transform = UnimodularTransform {
        facet_order,
        basis_inverse: unimodular_inverse(&basis),
        basis,
        shift,
    };
    let facets = transform
        .facet_order
        .iter()
        .map(|&j| {
            let f = &p.facets[j];
            let v = transform.map_normal(&f.v);
            let pairing: Rational = transform
                .shift
                .iter()
                .zip(&v)
                .map(|(s, &x)| s * int(x))
                .sum();
            Facet::new(v, &f.lambda - pairing)
        })
        .collect();
    Ok(Normalized {
        polytope: FanoPolytope {
            dim: p.dim,
            facets,
            name: p.name.clone(),
        },
        point: transform.map_point(c),
        transform,
    })
}

/// `P1 x P2` with block-embedded normals, factor-1 facets first, and `c = (c1, c2)`.
pub fn product(
    p1: &FanoPolytope,
    c1: &InteriorPoint,
    p2: &FanoPolytope,
    c2: &InteriorPoint,
) -> Result<(FanoPolytope, InteriorPoint), PolytopeError> {
    validate(p1, c1).into_result()?;
    validate(p2, c2).into_result()?;
    let (n1, n2) = (p1.dim, p2.dim);
    let left = p1.facets.iter().map(|f| {
        let mut v = f.v.clone();
        v.resize(n1 + n2, 0);
        Facet::new(v, f.lambda.clone())
    });
    let right = p2.facets.iter().map(|f| {
        let mut v = vec![0; n1];
        v.extend_from_slice(&f.v);
        Facet::new(v, f.lambda.clone())
    });
    let name = format!(
        "{} x {}",
        p1.name.as_deref().unwrap_or("P"),
        p2.name.as_deref().unwrap_or("P")
    );
    let polytope = FanoPolytope::new(n1 + n2, left.chain(right).collect()).with_name(name);
    let point = InteriorPoint(c1.0.iter().chain(&c2.0).cloned().collect());
    Ok((polytope, point))
}

/// Monotone `CP^k`: normals `e_1..e_k, -(e_1+..+e_k)`, `lambda = (0,..,0,-k-1)`, `c = (1,..,1)`.
pub fn cpn(k: usize) -> (FanoPolytope, InteriorPoint) {
    let mut facets: Vec<Facet> = (0..k).map(|i| Facet::new(unit(k, i), int(0))).collect();
    facets.push(Facet::new(vec![-1; k], int(-(k as i64) - 1)));
    (
        FanoPolytope::new(k, facets).with_name(format!("cpn({k})")),
        InteriorPoint::uniform(k, int(1)),
    )
}

/// The one-point blow-up of `CP^3` with its monotone form and `c = (1,1,1)`.
pub fn blowup_cp3() -> (FanoPolytope, InteriorPoint) {
    let mut facets: Vec<Facet> = (0..3).map(|i| Facet::new(unit(3, i), int(0))).collect();
    facets.push(Facet::new(vec![-1, -1, -1], int(-4)));
    facets.push(Facet::new(vec![1, 1, 1], int(2)));
    (
        FanoPolytope::new(3, facets).with_name("blowup_cp3"),
        InteriorPoint::uniform(3, int(1)),
    )
}

/// Monotone `CP^2k x CP^2j` in the presentation `e_1..e_{2k+2j}`,
/// `-(e_1+..+e_2k)`, `-(e_{2k+1}+..+e_{2k+2j})`.
pub fn rp_product(k: usize, j: usize) -> (FanoPolytope, InteriorPoint) {
    let n = 2 * k + 2 * j;
    let mut facets: Vec<Facet> = (0..n).map(|i| Facet::new(unit(n, i), int(0))).collect();
    let first: Vec<i64> = (0..n).map(|i| if i < 2 * k { -1 } else { 0 }).collect();
    let second: Vec<i64> = (0..n).map(|i| if i < 2 * k { 0 } else { -1 }).collect();
    facets.push(Facet::new(first, int(-2 * k as i64 - 1)));
    facets.push(Facet::new(second, int(-2 * j as i64 - 1)));
    (
        FanoPolytope::new(n, facets).with_name(format!("rp_product({k},{j})")),
        InteriorPoint::uniform(n, int(1)),
    )
}

/// Parses `cpn(k)`, `blowup_cp3` or `rp_product(k,j)`.
pub fn builtin(name: &str) -> Result<(FanoPolytope, InteriorPoint), PolytopeError> {
    let unknown = || PolytopeError::UnknownBuiltin(name.to_string());
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "blowup_cp3" {
        return Ok(blowup_cp3());
    }
    let (head, args) = compact
        .strip_suffix(')')
        .and_then(|s| s.split_once('('))
        .ok_or_else(unknown)?;
    let args: Vec<usize> = args
        .split(',')
        .map(|a| a.parse::<usize>().ok().filter(|&x| x >= 1))
        .collect::<Option<_>>()
        .ok_or_else(unknown)?;
    match (head, args.as_slice()) {
        ("cpn", &[k]) => Ok(cpn(k)),
        ("rp_product", &[k, j]) => Ok(rp_product(k, j)),
        _ => Err(unknown()),
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|k| i64::from(k == i)).collect()
}

/// On-disk polytope description:
/// `{"n": 3, "facets": [{"v": [1,0,0], "lambda": "0/1"}, ...], "c": ["1/1", ...], "name": "..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub n: usize,
    pub facets: Vec<Facet>,
    pub c: InteriorPoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl PolytopeFile {
    pub fn new(p: &FanoPolytope, c: &InteriorPoint) -> Self {
        PolytopeFile {
            n: p.dim,
            facets: p.facets.clone(),
            c: c.clone(),
            name: p.name.clone(),
        }
    }

    pub fn into_parts(self) -> (FanoPolytope, InteriorPoint) {
        (
            FanoPolytope {
                dim: self.n,
                facets: self.facets,
                name: self.name,
            },
            self.c,
        )
    }
}
