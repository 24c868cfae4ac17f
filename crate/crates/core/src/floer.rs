//! The twisted Floer complex of a torus fiber against the real Lagrangian.
//!
//! The basis is `{0,1}^n`; tuple `eps` sits at index `sum eps_i 2^(n-i)`, so
//! `eps_1` is the most significant bit and the order is lexicographic. Facet
//! `j` contributes `sqrt(rho^{v_j}) T^{e_j/2}` from `eps` to `eps + v_j mod 2`.

use num_integer::Roots;
use serde::Serialize;
use thiserror::Error;

use crate::novikov::{NovikovError, NovikovMatrix, NovikovPoly, RankMethod};
use crate::polytope::{self, FanoPolytope, InteriorPoint};
use crate::potential::{self, monomial_power, PotentialError, RhoAssignment};
use crate::rational::ratio;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloerError {
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
    #[error("local system is not a critical point of the potential (Z_{index} = {value})")]
    NotCritical { index: usize, value: String },
    #[error("dimension {0} is too large for an explicit complex")]
    TooLarge(usize),
}

impl From<polytope::PolytopeError> for FloerError {
    fn from(e: polytope::PolytopeError) -> Self {
        FloerError::Potential(e.into())
    }
}

/// Largest dimension accepted by [`build_complex`] (a `2^12 x 2^12` matrix).
pub const MAX_COMPLEX_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloerComplex {
    n: usize,
    delta: NovikovMatrix,
    obstruction: NovikovPoly,
}

impl FloerComplex {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `2^n`.
    pub fn rank(&self) -> usize {
        1 << self.n
    }

    pub fn delta(&self) -> &NovikovMatrix {
        &self.delta
    }

    pub fn obstruction(&self) -> &NovikovPoly {
        &self.obstruction
    }

    /// The tuple at basis position `index`.
    pub fn basis_tuple(&self, index: usize) -> Vec<u8> {
        (0..self.n).map(|i| ((index >> (self.n - 1 - i)) & 1) as u8).collect()
    }

    pub fn basis_index(&self, eps: &[u8]) -> usize {
        eps.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b & 1))
    }
}

/// Bit mask of `v mod 2` in basis-index layout.
fn parity_mask(v: &[i64]) -> usize {
    v.iter().fold(0, |acc, &x| (acc << 1) | (x.rem_euclid(2) as usize))
}

pub fn build_complex(
    p: &FanoPolytope,
    c: &InteriorPoint,
    rho: &RhoAssignment,
) -> Result<FloerComplex, FloerError> {
    let obstruction = potential::potential_value(p, c, rho)?;
    let n = p.dim();
    if n > MAX_COMPLEX_DIM {
        return Err(FloerError::TooLarge(n));
    }
    let energies = polytope::energies(p, c)?.0;
    let field = rho.field();
    let half = ratio(1, 2);
    let mut delta = NovikovMatrix::zeros(field, 1 << n, 1 << n);
    for (v, e) in p.normals().zip(&energies) {
        let coeff = monomial_power(rho, v)?.sqrt();
        let term = NovikovPoly::monomial(coeff, e * &half);
        let mask = parity_mask(v);
        for eps in 0..1usize << n {
            delta.accumulate(eps ^ mask, eps, &term)?;
        }
    }
    Ok(FloerComplex {
        n,
        delta,
        obstruction,
    })
}

/// `delta^2 = o * id`, entry by entry.
pub fn check_obstruction(k: &FloerComplex) -> bool {
    match k.delta.checked_mul(&k.delta) {
        Ok(square) => square == NovikovMatrix::scalar(&k.obstruction, k.rank()),
        Err(_) => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HFResult {
    pub defined: bool,
    pub obstruction: NovikovPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hf_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
}

/// Rank of the cohomology of a complex; absent when `o != 0`.
pub fn complex_hf(k: &FloerComplex, method: RankMethod) -> Result<HFResult, FloerError> {
    let defined = k.obstruction.is_zero();
    let (delta_rank, hf_rank) = if defined {
        let r = k.delta.rank(method)?;
        debug_assert!(2 * r <= k.rank());
        (Some(r), Some(k.rank() - 2 * r))
    } else {
        (None, None)
    };
    Ok(HFResult {
        defined,
        obstruction: k.obstruction.clone(),
        delta_rank,
        hf_rank,
        bound: None,
    })
}

pub fn hf_rank(
    p: &FanoPolytope,
    c: &InteriorPoint,
    rho: &RhoAssignment,
    method: RankMethod,
) -> Result<HFResult, FloerError> {
    complex_hf(&build_complex(p, c, rho)?, method)
}

/// Lower bound on intersections from `HF(P x P)` at `(rho, rho)`, where the
/// obstruction `2 W(rho)` vanishes. `rho` must be critical.
pub fn product_bound(
    p: &FanoPolytope,
    c: &InteriorPoint,
    rho: &RhoAssignment,
    method: RankMethod,
) -> Result<HFResult, FloerError> {
    let z = potential::grad_components(p, c, rho)?;
    if let Some((i, zi)) = z.iter().enumerate().find(|(_, zi)| !zi.is_zero()) {
        return Err(FloerError::NotCritical {
            index: i + 1,
            value: zi.to_string(),
        });
    }
    let (pp, cc) = polytope::product(p, c, p, c)?;
    let doubled = rho.concat(rho)?;
    let mut result = hf_rank(&pp, &cc, &doubled, method)?;
    assert!(result.defined, "product obstruction must cancel");
    let rank = result.hf_rank.unwrap_or(0) as u64;
    result.bound = Some(ceil_sqrt(rank));
    Ok(result)
}

fn ceil_sqrt(x: u64) -> u64 {
    let r = x.sqrt();
    if r * r == x {
        r
    } else {
        r + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2bar::{Field, FieldElement};
    use crate::polytope::{blowup_cp3, cpn, rp_product, Facet};
    use crate::rational::int;

    fn gf(m: u32) -> Field {
        Field::new(m).unwrap()
    }

    fn xi() -> FieldElement {
        gf(3)
            .units()
            .find(|&x| (x * x * x + x * x + gf(3).one()).is_zero())
            .unwrap()
    }

    #[test]
    fn ceil_sqrt_values() {
        let got: Vec<u64> = [0, 1, 2, 3, 4, 5, 8, 9, 10, 16].iter().map(|&x| ceil_sqrt(x)).collect();
        assert_eq!(got, [0, 1, 2, 2, 2, 3, 3, 3, 4, 4]);
    }

    #[test]
    fn basis_layout() {
        let (p, c) = cpn(3);
        let k = build_complex(&p, &c, &RhoAssignment::trivial(3)).unwrap();
        assert_eq!(k.basis_tuple(4), vec![1, 0, 0]);
        assert_eq!(k.basis_tuple(3), vec![0, 1, 1]);
        for i in 0..8 {
            assert_eq!(k.basis_index(&k.basis_tuple(i)), i);
        }
    }

    #[test]
    fn cp1_differential_cancels() {
        let (p, c) = cpn(1);
        let k = build_complex(&p, &c, &RhoAssignment::trivial(1)).unwrap();
        assert!(k.delta().is_zero());
        assert!(check_obstruction(&k));
        let hf = complex_hf(&k, RankMethod::Exact).unwrap();
        assert_eq!((hf.delta_rank, hf.hf_rank), (Some(0), Some(2)));
    }

    #[test]
    fn cp2_square_is_t() {
        let (p, c) = cpn(2);
        let k = build_complex(&p, &c, &RhoAssignment::trivial(2)).unwrap();
        assert_eq!(*k.obstruction(), NovikovPoly::monomial(Field::prime().one(), int(1)));
        assert!(check_obstruction(&k));
        let hf = complex_hf(&k, RankMethod::Exact).unwrap();
        assert!(!hf.defined);
        assert_eq!(hf.hf_rank, None);
    }

    #[test]
    fn odd_projective_spaces() {
        for (k, expected) in [(1, 2), (3, 4), (5, 8)] {
            let (p, c) = cpn(k);
            let hf = hf_rank(&p, &c, &RhoAssignment::trivial(k), RankMethod::Exact).unwrap();
            assert!(hf.defined);
            assert_eq!(hf.hf_rank, Some(expected), "cpn({k})");
        }
    }

    #[test]
    fn blowup_matches_hand_matrix() {
        // hand layout: delta(e', e) = eta T^(1/2) when e' - e is a unit
        // vector, x T^(1/2) when e' - e = (1,1,1), with x = eta^3 + eta^-3
        let (p, c) = blowup_cp3();
        let xi = xi();
        let eta = xi.sqrt();
        assert_eq!(eta * eta, xi);
        let x = eta.pow(3).unwrap() + eta.pow(-3).unwrap();
        assert_eq!(x, eta);
        let k = build_complex(&p, &c, &RhoAssignment::diagonal(xi, 3).unwrap()).unwrap();
        let half = ratio(1, 2);
        for row in 0..8usize {
            for col in 0..8usize {
                let expected = match row ^ col {
                    1 | 2 | 4 => NovikovPoly::monomial(eta, half.clone()),
                    7 => NovikovPoly::monomial(x, half.clone()),
                    _ => NovikovPoly::zero(gf(3)),
                };
                assert_eq!(k.delta().get(row, col), &expected, "entry ({row}, {col})");
            }
        }
        assert!(check_obstruction(&k));
        let hf = complex_hf(&k, RankMethod::Exact).unwrap();
        assert!(hf.defined);
        assert_eq!((hf.delta_rank, hf.hf_rank), (Some(2), Some(4)));
    }

    #[test]
    fn rp_product_base_case() {
        let (p, c) = rp_product(1, 1);
        let k = build_complex(&p, &c, &RhoAssignment::trivial(4)).unwrap();
        assert_eq!(k.delta().rows(), 16);
        let hf = complex_hf(&k, RankMethod::Exact).unwrap();
        assert_eq!((hf.delta_rank, hf.hf_rank), (Some(6), Some(4)));
    }

    #[test]
    fn product_differential_is_tensor_sum() {
        let (p, c) = cpn(2);
        let omega = gf(2).generator();
        let rho = RhoAssignment::diagonal(omega, 2).unwrap();
        let d = build_complex(&p, &c, &rho).unwrap();
        let (pp, cc) = polytope::product(&p, &c, &p, &c).unwrap();
        let dd = build_complex(&pp, &cc, &rho.concat(&rho).unwrap()).unwrap();
        let id = NovikovMatrix::identity(gf(2), 4);
        let expected = d
            .delta()
            .kronecker(&id)
            .unwrap()
            .checked_add(&id.kronecker(d.delta()).unwrap())
            .unwrap();
        assert_eq!(*dd.delta(), expected);
        assert!(dd.obstruction().is_zero());
    }

    #[test]
    fn product_bounds() {
        let (p, c) = cpn(2);
        let omega = gf(2).generator();
        let r = product_bound(&p, &c, &RhoAssignment::diagonal(omega, 2).unwrap(), RankMethod::Exact)
            .unwrap();
        assert_eq!((r.hf_rank, r.bound), (Some(4), Some(2)));

        let (p, c) = cpn(1);
        let r = product_bound(&p, &c, &RhoAssignment::trivial(1), RankMethod::Exact).unwrap();
        assert_eq!((r.hf_rank, r.bound), (Some(4), Some(2)));

        let (p, c) = cpn(2);
        let g = gf(4).generator();
        let err = product_bound(&p, &c, &RhoAssignment::diagonal(g, 2).unwrap(), RankMethod::Exact);
        assert!(matches!(err, Err(FloerError::NotCritical { .. })));
    }

    #[test]
    fn invariant_under_presentation_changes() {
        let (p, c) = blowup_cp3();
        let rho = RhoAssignment::diagonal(xi(), 3).unwrap();
        let base = hf_rank(&p, &c, &rho, RankMethod::Exact).unwrap().hf_rank;

        // rescaling every energy: scale lambda and c together
        let scaled = FanoPolytope::new(
            3,
            p.facets()
                .iter()
                .map(|f| Facet::new(f.v.clone(), &f.lambda * int(3)))
                .collect(),
        );
        let c3 = InteriorPoint(c.0.iter().map(|x| x * int(3)).collect());
        assert_eq!(hf_rank(&scaled, &c3, &rho, RankMethod::Exact).unwrap().hf_rank, base);

        let shuffled = p.reorder_facets(&[4, 2, 0, 3, 1]);
        assert_eq!(hf_rank(&shuffled, &c, &rho, RankMethod::Exact).unwrap().hf_rank, base);

        // normal form with the local system moved to the new coordinates
        let norm = polytope::normalize(&shuffled, &c).unwrap();
        let moved = RhoAssignment::new(
            norm.transform
                .new_coordinate_exponents()
                .iter()
                .map(|row| monomial_power(&rho, row).unwrap())
                .collect(),
        )
        .unwrap();
        assert_eq!(
            hf_rank(&norm.polytope, &norm.point, &moved, RankMethod::Exact).unwrap().hf_rank,
            base
        );
    }
}
