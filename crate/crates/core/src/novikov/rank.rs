//! Rank over the Novikov field.
//!
//! Exact: put every exponent on the lattice `S = T^(1/D)` shifted so the
//! smallest exponent is zero, then run fraction-free (Bareiss) elimination
//! over GF(2^m)[S] with full pivoting. The pivot is the nonzero entry of
//! least valuation in the trailing block, ties broken in row-major order.
//!
//! Probabilistic: substitute a random nonzero `S` from a larger field and
//! take the rank of the resulting matrix over that field. The result can
//! only undercount, and only when `S` hits a root of every maximal nonzero
//! minor, so it is used as a cross-check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf2bar::{Field, MAX_DEGREE};

use super::{ExponentLattice, LatticePoly, NovikovError, NovikovMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMethod {
    Exact,
    Probabilistic { seed: u64 },
}

/// Evaluation field for the probabilistic method: the largest layer of the
/// tower containing `base` (degree 12 or more whenever `base` has degree <= 8).
pub fn probabilistic_field(base: Field) -> Field {
    let m = base.degree();
    Field::new(MAX_DEGREE / m * m).expect("multiple of a tabulated degree within range")
}

pub(super) fn rank(matrix: &NovikovMatrix, method: RankMethod) -> Result<usize, NovikovError> {
    for p in matrix.entries() {
        matrix.field().check_same(p.field())?;
    }
    match method {
        RankMethod::Exact => exact_rank(matrix),
        RankMethod::Probabilistic { seed } => probabilistic_rank(matrix, seed),
    }
}

fn exact_rank(matrix: &NovikovMatrix) -> Result<usize, NovikovError> {
    let lattice = ExponentLattice::covering(matrix.entries());
    let grid = matrix
        .entries()
        .iter()
        .map(|p| lattice.to_lattice(p))
        .collect::<Result<Vec<_>, _>>()?;
    bareiss_rank(matrix.field(), matrix.rows(), matrix.cols(), grid)
}

fn bareiss_rank(
    field: Field,
    rows: usize,
    cols: usize,
    mut a: Vec<LatticePoly>,
) -> Result<usize, NovikovError> {
    let idx = |i: usize, j: usize| i * cols + j;
    let mut prev = LatticePoly::one(field);
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let mut best: Option<(u64, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if let Some(v) = a[idx(i, j)].valuation() {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            break;
        };
        if pi != k {
            for j in 0..cols {
                a.swap(idx(k, j), idx(pi, j));
            }
        }
        if pj != k {
            for i in 0..rows {
                a.swap(idx(i, k), idx(i, pj));
            }
        }
        let pivot = a[idx(k, k)].clone();
        for i in k + 1..rows {
            let lead = std::mem::replace(&mut a[idx(i, k)], LatticePoly::zero(field));
            for j in k + 1..cols {
                let cur = &a[idx(i, j)];
                let kj = &a[idx(k, j)];
                // characteristic 2: pivot*cur - lead*kj = pivot*cur + lead*kj
                let num = if lead.is_zero() || kj.is_zero() {
                    pivot.mul(cur)
                } else {
                    pivot.mul(cur).add(&lead.mul(kj))
                };
                a[idx(i, j)] = num.exact_div(&prev)?;
            }
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}

fn probabilistic_rank(matrix: &NovikovMatrix, seed: u64) -> Result<usize, NovikovError> {
    let base = matrix.field();
    let field = probabilistic_field(base);
    let lattice = ExponentLattice::covering(matrix.entries());
    let units = field.unit_count() as u128;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s_log = rng.gen_range(0..units);

    let mut grid = Vec::with_capacity(matrix.rows() * matrix.cols());
    for p in matrix.entries() {
        let mut v = field.zero();
        for (e, c) in p.terms() {
            let k = lattice.index(e)? as u128;
            v += c.embed(field)? * field.exp((s_log * k % units) as u64);
        }
        grid.push(v.bits());
    }
    Ok(gauss_rank(field, matrix.rows(), matrix.cols(), grid))
}

fn gauss_rank(field: Field, rows: usize, cols: usize, mut a: Vec<u32>) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| a[i * cols + col] != 0) else {
            continue;
        };
        for j in 0..cols {
            a.swap(rank * cols + j, p * cols + j);
        }
        let inv = field.inv_bits(a[rank * cols + col]);
        for i in rank + 1..rows {
            let f = field.mul_bits(a[i * cols + col], inv);
            if f == 0 {
                continue;
            }
            for j in col..cols {
                a[i * cols + j] ^= field.mul_bits(f, a[rank * cols + j]);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::NovikovPoly;
    use crate::rational::{int, ratio};

    fn mono(field: Field, c: u32, e: crate::rational::Rational) -> NovikovPoly {
        NovikovPoly::monomial(field.element(c).unwrap(), e)
    }

    #[test]
    fn evaluation_field_choice() {
        let degrees: Vec<u32> = (1..=16)
            .map(|m| probabilistic_field(Field::new(m).unwrap()).degree())
            .collect();
        assert_eq!(degrees, [16, 16, 15, 16, 15, 12, 14, 16, 9, 10, 11, 12, 13, 14, 15, 16]);
    }

    #[test]
    fn identity_rank() {
        let f = Field::new(3).unwrap();
        for k in 0..6 {
            let id = NovikovMatrix::identity(f, k);
            assert_eq!(id.rank(RankMethod::Exact).unwrap(), k);
            assert_eq!(id.rank(RankMethod::Probabilistic { seed: 7 }).unwrap(), k);
        }
    }

    #[test]
    fn rank_one_outer_product() {
        let f = Field::new(2).unwrap();
        let u = [mono(f, 1, int(0)), &mono(f, 2, ratio(1, 2)) + &mono(f, 1, int(3))];
        let v = [mono(f, 3, int(1)), mono(f, 1, ratio(-1, 3)), NovikovPoly::zero(f)];
        let rows = u.iter().map(|a| v.iter().map(|b| a * b).collect()).collect();
        let m = NovikovMatrix::from_rows(f, rows).unwrap();
        assert_eq!(m.rank(RankMethod::Exact).unwrap(), 1);
        assert_eq!(m.transpose().rank(RankMethod::Exact).unwrap(), 1);
    }

    #[test]
    fn singular_over_fraction_field_but_not_entrywise_zero() {
        // [[1, T], [T, T^2]] has rank 1; [[1, T], [T, 1]] has rank 2 since 1 + T^2 != 0
        let f = Field::prime();
        let one = NovikovPoly::one(f);
        let t = mono(f, 1, int(1));
        let t2 = mono(f, 1, int(2));
        let a = NovikovMatrix::from_rows(f, vec![vec![one.clone(), t.clone()], vec![t.clone(), t2]])
            .unwrap();
        assert_eq!(a.rank(RankMethod::Exact).unwrap(), 1);
        let b = NovikovMatrix::from_rows(f, vec![vec![one.clone(), t.clone()], vec![t, one]]).unwrap();
        assert_eq!(b.rank(RankMethod::Exact).unwrap(), 2);
    }

    #[test]
    fn mixed_fields_rejected() {
        let f = Field::new(2).unwrap();
        let g = Field::new(3).unwrap();
        let mut m = NovikovMatrix::identity(f, 2);
        assert!(m.set(0, 1, NovikovPoly::one(g)).is_err());
    }
}
