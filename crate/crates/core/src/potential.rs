//! The potential `W_c(rho) = sum_j rho^{v_j} T^{e_j}`, its logarithmic
//! derivatives `Z_i = sum_j v^i_j rho^{v_j} T^{e_j}`, and the search for
//! local systems with `Z = 0` over the layers GF(2^m).
//!
//! `W_c(rho)` is also the obstruction of the twisted Floer complex.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2bar::{Field, FieldElement, FieldError, MAX_DEGREE};
use crate::novikov::{NovikovError, NovikovPoly};
use crate::polytope::{self, FanoPolytope, InteriorPoint, PolytopeError};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotentialError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
    #[error("local system has {found} values but the polytope has dimension {expected}")]
    RhoLength { expected: usize, found: usize },
    #[error("local system value {index} is zero")]
    ZeroRhoValue { index: usize },
    #[error("a local system needs at least one value")]
    EmptyRho,
    #[error("max degree {0} is outside 1..={MAX_DEGREE}")]
    MaxDegree(u32),
    #[error("search budget exceeded at GF(2^{layer}): {cost} candidates > budget {budget}")]
    BudgetExceeded { layer: u32, cost: u128, budget: u64 },
}

/// The values `rho_i = rho(l_i)` of a rank-one local system, all nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RhoAssignment {
    values: Vec<FieldElement>,
}

impl RhoAssignment {
    pub fn new(values: Vec<FieldElement>) -> Result<Self, PotentialError> {
        let first = values.first().ok_or(PotentialError::EmptyRho)?;
        let field = first.field();
        for (i, v) in values.iter().enumerate() {
            if v.field() != field {
                return Err(FieldError::FieldMismatch {
                    left: field.degree(),
                    right: v.field().degree(),
                }
                .into());
            }
            if v.is_zero() {
                return Err(PotentialError::ZeroRhoValue { index: i + 1 });
            }
        }
        Ok(RhoAssignment { values })
    }

    /// `rho = (1, ..., 1)` over GF(2).
    pub fn trivial(n: usize) -> Self {
        RhoAssignment {
            values: vec![Field::prime().one(); n],
        }
    }

    /// `(a, ..., a)`.
    pub fn diagonal(a: FieldElement, n: usize) -> Result<Self, PotentialError> {
        Self::new(vec![a; n])
    }

    pub fn field(&self) -> Field {
        self.values[0].field()
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(FieldElement::is_one)
    }

    pub fn embed(&self, target: Field) -> Result<Self, PotentialError> {
        Ok(RhoAssignment {
            values: self
                .values
                .iter()
                .map(|v| v.embed(target))
                .collect::<Result<_, _>>()?,
        })
    }

    /// `(rho, sigma)` for the product local system.
    pub fn concat(&self, other: &RhoAssignment) -> Result<Self, PotentialError> {
        let field = if self.field().is_subfield_of(other.field()) {
            other.field()
        } else if other.field().is_subfield_of(self.field()) {
            self.field()
        } else {
            return Err(FieldError::FieldMismatch {
                left: self.field().degree(),
                right: other.field().degree(),
            }
            .into());
        };
        let mut values = self.embed(field)?.values;
        values.extend(other.embed(field)?.values);
        Ok(RhoAssignment { values })
    }

    /// Degree of the smallest layer containing every value.
    pub fn minimal_degree(&self) -> u32 {
        self.values
            .iter()
            .map(FieldElement::minimal_degree)
            .fold(1, |a, b| a * b / gcd(a, b))
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Local-system file: `{"m": 3, "values": [{"bits": "011", "m": 3}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhoFile {
    pub m: u32,
    pub values: Vec<FieldElement>,
}

impl RhoFile {
    pub fn into_rho(self) -> Result<RhoAssignment, PotentialError> {
        let field = Field::new(self.m)?;
        let values = self
            .values
            .into_iter()
            .map(|v| v.embed(field))
            .collect::<Result<Vec<_>, _>>()?;
        RhoAssignment::new(values)
    }
}

impl From<&RhoAssignment> for RhoFile {
    fn from(rho: &RhoAssignment) -> Self {
        RhoFile {
            m: rho.field().degree(),
            values: rho.values.clone(),
        }
    }
}

impl Serialize for RhoAssignment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RhoFile::from(self).serialize(serializer)
    }
}

/// `rho^v = rho_1^{v_1} ... rho_n^{v_n}`; negative exponents are fine since values are units.
pub fn monomial_power(rho: &RhoAssignment, v: &[i64]) -> Result<FieldElement, PotentialError> {
    if v.len() != rho.len() {
        return Err(PotentialError::RhoLength {
            expected: v.len(),
            found: rho.len(),
        });
    }
    let mut acc = rho.field().one();
    for (&r, &e) in rho.values.iter().zip(v) {
        acc *= r.pow(e)?;
    }
    Ok(acc)
}

pub(crate) fn check_inputs(
    p: &FanoPolytope,
    c: &InteriorPoint,
    rho: &RhoAssignment,
) -> Result<Vec<Rational>, PotentialError> {
    let energies = polytope::energies(p, c)?;
    if rho.len() != p.dim() {
        return Err(PotentialError::RhoLength {
            expected: p.dim(),
            found: rho.len(),
        });
    }
    Ok(energies.0)
}

/// `W_c(rho)`, equal to the obstruction `o(L_c, rho)`.
pub fn potential_value(
    p: &FanoPolytope,
    c: &InteriorPoint,
    rho: &RhoAssignment,
) -> Result<NovikovPoly, PotentialError> {
    let energies = check_inputs(p, c, rho)?;
    let terms = p
        .normals()
        .zip(energies)
        .map(|(v, e)| Ok((e, monomial_power(rho, v)?)))
        .collect::<Result<Vec<_>, PotentialError>>()?;
    Ok(NovikovPoly::from_terms(rho.field(), terms)?)
}

/// `Z_1, ..., Z_n`, with the integer multipliers `v^i_j` taken mod 2.
pub fn grad_components(
    p: &FanoPolytope,
    c: &InteriorPoint,
    rho: &RhoAssignment,
) -> Result<Vec<NovikovPoly>, PotentialError> {
    let energies = check_inputs(p, c, rho)?;
    let monomials = p
        .normals()
        .map(|v| monomial_power(rho, v))
        .collect::<Result<Vec<_>, _>>()?;
    (0..p.dim())
        .map(|i| {
            let terms = p
                .normals()
                .zip(&energies)
                .zip(&monomials)
                .filter(|((v, _), _)| v[i].rem_euclid(2) == 1)
                .map(|((_, e), &m)| (e.clone(), m));
            Ok(NovikovPoly::from_terms(rho.field(), terms)?)
        })
        .collect()
}

/// Values of `W` and `Z` at one local system, with the two flags derived from them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalReport {
    pub rho: RhoAssignment,
    pub w_value: NovikovPoly,
    pub z_values: Vec<NovikovPoly>,
    /// `W = 0`: the Floer cohomology is defined.
    pub defined: bool,
    /// `Z = 0`: the Floer cohomology is nonzero whenever it is defined.
    pub nonvanishing: bool,
}

impl CriticalReport {
    pub fn from_values(rho: RhoAssignment, w_value: NovikovPoly, z_values: Vec<NovikovPoly>) -> Self {
        let defined = w_value.is_zero();
        let nonvanishing = z_values.iter().all(NovikovPoly::is_zero);
        CriticalReport {
            rho,
            w_value,
            z_values,
            defined,
            nonvanishing,
        }
    }

    pub fn evaluate(
        p: &FanoPolytope,
        c: &InteriorPoint,
        rho: &RhoAssignment,
    ) -> Result<Self, PotentialError> {
        Ok(Self::from_values(
            rho.clone(),
            potential_value(p, c, rho)?,
            grad_components(p, c, rho)?,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_degree: u32,
    /// Largest number of candidate tuples examined in one layer.
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_degree: 8,
            budget: 1 << 24,
        }
    }
}

/// Candidates examined in layer `m` by [`find_critical`].
pub fn search_cost(p: &FanoPolytope, layer: u32) -> u128 {
    let units = (1u128 << layer) - 1;
    let free = p.dim().min(p.facets().len().saturating_sub(p.dim()));
    units.saturating_pow(free as u32)
}

/// Every `rho` with `Z = 0` whose values generate GF(2^m) for some
/// `m <= max_degree`, each reported once from its smallest layer, ordered by
/// layer and then by values.
///
/// The search runs in the normal form where `v_i = e_i` for `i <= n`. There
/// `Z_i = 0` forces `rho_i` to equal the sum of `rho^{v_j}` over the facets
/// `j > n` with `v^i_j` odd and `e_j = e_i`, so it is enough to enumerate
/// the values `rho^{v_j}` for `j > n` whenever there are fewer such facets
/// than coordinates; otherwise `rho` itself is enumerated.
pub fn find_critical(
    p: &FanoPolytope,
    c: &InteriorPoint,
    options: &SearchOptions,
) -> Result<Vec<CriticalReport>, PotentialError> {
    if options.max_degree == 0 || options.max_degree > MAX_DEGREE {
        return Err(PotentialError::MaxDegree(options.max_degree));
    }
    let norm = polytope::normalize(p, c)?;
    let system = CriticalSystem::new(&norm.polytope, &norm.point)?;
    let back = norm.transform.old_coordinate_exponents();

    // costs grow with the layer, so fail before doing any work
    for layer in 1..=options.max_degree {
        let cost = search_cost(&norm.polytope, layer);
        if cost > options.budget as u128 {
            return Err(PotentialError::BudgetExceeded {
                layer,
                cost,
                budget: options.budget,
            });
        }
    }

    let mut reports = Vec::new();
    for layer in 1..=options.max_degree {
        let field = Field::new(layer)?;
        let mut found: Vec<RhoAssignment> = system
            .solve_layer(field)
            .into_iter()
            .map(|normal_rho| {
                let values = back
                    .iter()
                    .map(|row| monomial_power(&normal_rho, row))
                    .collect::<Result<Vec<_>, _>>()?;
                RhoAssignment::new(values)
            })
            .collect::<Result<_, _>>()?;
        found.sort();
        for rho in found {
            let report = CriticalReport::evaluate(p, c, &rho)?;
            debug_assert!(report.nonvanishing);
            reports.push(report);
        }
    }
    Ok(reports)
}

/// `Z = 0` in log coordinates for a polytope in normal form.
struct CriticalSystem {
    n: usize,
    normals: Vec<Vec<i64>>,
    /// For each coordinate, the facet sets with odd `v^i_j` grouped by energy;
    /// each group must sum to zero.
    groups: Vec<Vec<usize>>,
    /// For coordinate `i`, the facets `j >= n` in the group containing facet `i`.
    solving: Vec<Vec<usize>>,
}

impl CriticalSystem {
    fn new(p: &FanoPolytope, c: &InteriorPoint) -> Result<Self, PotentialError> {
        let energies = polytope::energies(p, c)?.0;
        let n = p.dim();
        let normals: Vec<Vec<i64>> = p.normals().map(<[i64]>::to_vec).collect();
        let mut groups = Vec::new();
        let mut solving = Vec::with_capacity(n);
        for i in 0..n {
            let mut by_energy: BTreeMap<&Rational, Vec<usize>> = BTreeMap::new();
            for (j, v) in normals.iter().enumerate() {
                if v[i].rem_euclid(2) == 1 {
                    by_energy.entry(&energies[j]).or_default().push(j);
                }
            }
            solving.push(
                by_energy
                    .get(&energies[i])
                    .map(|g| g.iter().copied().filter(|&j| j >= n).collect())
                    .unwrap_or_default(),
            );
            groups.extend(by_energy.into_values());
        }
        Ok(CriticalSystem {
            n,
            normals,
            groups,
            solving,
        })
    }

    fn extra(&self) -> usize {
        self.normals.len() - self.n
    }

    /// Normal-form solutions whose smallest layer is exactly `field`.
    fn solve_layer(&self, field: Field) -> Vec<RhoAssignment> {
        let units = field.unit_count() as u64;
        let free = self.n.min(self.extra());
        let by_facets = self.extra() < self.n;
        let layer = field.degree();
        let total = units.pow(free as u32);
        (0..total)
            .into_par_iter()
            .filter_map(|index| {
                let mut digits = vec![0u64; free];
                let mut rest = index;
                for d in digits.iter_mut() {
                    *d = rest % units;
                    rest /= units;
                }
                let logs = if by_facets {
                    self.rho_from_facet_values(field, &digits)?
                } else {
                    digits
                };
                let values: Vec<FieldElement> = logs.iter().map(|&k| field.exp(k)).collect();
                let rho = RhoAssignment { values };
                (self.is_critical(field, &logs) && rho.minimal_degree() == layer).then_some(rho)
            })
            .collect()
    }

    /// Given logs of `rho^{v_j}` for `j >= n`, the forced `rho` if consistent.
    fn rho_from_facet_values(&self, field: Field, facet_logs: &[u64]) -> Option<Vec<u64>> {
        let units = field.unit_count() as i128;
        let logs = self
            .solving
            .iter()
            .map(|group| {
                let sum = group
                    .iter()
                    .fold(field.zero(), |acc, &j| acc + field.exp(facet_logs[j - self.n]));
                sum.log().map(u64::from)
            })
            .collect::<Option<Vec<u64>>>()?;
        let consistent = (self.n..self.normals.len()).all(|j| {
            let k: i128 = self.normals[j]
                .iter()
                .zip(&logs)
                .map(|(&v, &l)| v as i128 * l as i128)
                .sum();
            k.rem_euclid(units) as u64 == facet_logs[j - self.n]
        });
        consistent.then_some(logs)
    }

    fn is_critical(&self, field: Field, logs: &[u64]) -> bool {
        let units = field.unit_count() as i128;
        let monomials: Vec<FieldElement> = self
            .normals
            .iter()
            .map(|v| {
                let k: i128 = v.iter().zip(logs).map(|(&a, &l)| a as i128 * l as i128).sum();
                field.exp(k.rem_euclid(units) as u64)
            })
            .collect();
        self.groups.iter().all(|g| {
            g.iter()
                .fold(field.zero(), |acc, &j| acc + monomials[j])
                .is_zero()
        })
    }
}
