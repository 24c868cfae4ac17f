//! Seeded instance generators for the property suites and the self-test.
//!
//! Random polytopes keep `e_1, ..., e_n` as the first facets so a unimodular
//! basis always exists, add primitive normals with small entries, and draw
//! energies from a short list so that equal energies (and hence
//! cancellations) are common. Fano-ness is not enforced.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf2bar::Field;
use crate::polytope::{self, blowup_cp3, cpn, rp_product, Facet, FanoPolytope, InteriorPoint};
use crate::potential::{find_critical, PotentialError, RhoAssignment, SearchOptions};
use crate::rational::{ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub label: String,
    pub polytope: FanoPolytope,
    pub point: InteriorPoint,
    pub rho: RhoAssignment,
}

impl Instance {
    pub fn new(label: impl Into<String>, (polytope, point): (FanoPolytope, InteriorPoint), rho: RhoAssignment) -> Self {
        Instance {
            label: label.into(),
            polytope,
            point,
            rho,
        }
    }
}

fn energy_choices() -> [Rational; 4] {
    [ratio(1, 2), ratio(1, 1), ratio(1, 1), ratio(3, 2)]
}

/// In dimension 1 only two primitive normals exist, so `facets` is capped at 2 there.
pub fn random_polytope<R: Rng>(rng: &mut R, n: usize, facets: usize) -> (FanoPolytope, InteriorPoint) {
    assert!(facets > n && n >= 1);
    let facets = if n == 1 { 2 } else { facets };
    let energies = energy_choices();
    let c: Vec<Rational> = (0..n).map(|_| energies.choose(rng).unwrap().clone()).collect();
    let mut normals: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|k| i64::from(k == i)).collect())
        .collect();
    while normals.len() < facets {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g == 1 && !normals.contains(&v) {
            normals.push(v);
        }
    }
    let list = normals
        .into_iter()
        .enumerate()
        .map(|(j, v)| {
            let e = if j < n { c[j].clone() } else { energies.choose(rng).unwrap().clone() };
            let pairing: Rational = v.iter().zip(&c).map(|(&x, ci)| ci * Rational::from_integer(x.into())).sum();
            Facet::new(v, pairing - e)
        })
        .collect();
    (FanoPolytope::new(n, list), InteriorPoint(c))
}

pub fn random_rho<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> RhoAssignment {
    let field = Field::new(rng.gen_range(1..=max_degree)).expect("degree within table");
    let units = u64::from(field.unit_count());
    let values = (0..n).map(|_| field.exp(rng.gen_range(0..units))).collect();
    RhoAssignment::new(values).expect("units are nonzero")
}

/// Dimension `n <= 4`, at most 8 facets, local systems over GF(2^m) with `m <= 6`.
pub fn random_corpus(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.gen_range(1..=4);
            let facets = rng.gen_range(n + 1..=8);
            let pc = random_polytope(&mut rng, n, facets);
            let rho = random_rho(&mut rng, n, 6);
            let facets = pc.0.facets().len();
            Instance::new(format!("random#{k} (n={n}, {facets} facets, {})", rho.field()), pc, rho)
        })
        .collect()
}

/// The builtin examples at their natural local systems.
pub fn builtin_corpus() -> Vec<Instance> {
    let gf4 = Field::new(2).unwrap();
    let gf8 = Field::new(3).unwrap();
    let omega = gf4.generator();
    let xi = gf8
        .units()
        .find(|&x| (x * x * x + x * x + gf8.one()).is_zero())
        .expect("cubic has a root in GF(8)");
    let mut out = Vec::new();
    for k in 1..=4 {
        out.push(Instance::new(format!("cpn({k}) trivial"), cpn(k), RhoAssignment::trivial(k)));
    }
    out.push(Instance::new(
        "cpn(2) at (w, w)",
        cpn(2),
        RhoAssignment::diagonal(omega, 2).unwrap(),
    ));
    out.push(Instance::new(
        "blowup_cp3 at (x, x, x)",
        blowup_cp3(),
        RhoAssignment::diagonal(xi, 3).unwrap(),
    ));
    out.push(Instance::new(
        "rp_product(1,1) trivial",
        rp_product(1, 1),
        RhoAssignment::trivial(4),
    ));
    out
}

/// Instances with vanishing obstruction, covering both `Z = 0` and `Z != 0`.
///
/// Three sources: doubled local systems `(rho, rho)` on products `P x P`,
/// where the obstruction cancels for any `rho` and `Z` vanishes exactly when
/// `rho` is critical for `P`; critical points of small random polytopes; and
/// the unobstructed builtins.
pub fn unobstructed_corpus(seed: u64, count: usize) -> Result<Vec<Instance>, PotentialError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Instance> = builtin_corpus()
        .into_iter()
        .filter(|i| {
            crate::potential::potential_value(&i.polytope, &i.point, &i.rho)
                .is_ok_and(|w| w.is_zero())
        })
        .collect();
    let options = SearchOptions {
        max_degree: 4,
        budget: 1 << 20,
    };
    let mut k = 0;
    while out.len() < count {
        let n = rng.gen_range(1..=2);
        let facets = rng.gen_range(n + 1..=4);
        let (p, c) = random_polytope(&mut rng, n, facets);
        let facets = p.facets().len();
        let (pp, cc) = polytope::product(&p, &c, &p, &c)?;
        let rho = random_rho(&mut rng, n, 4);
        out.push(Instance::new(
            format!("double#{k} (n={n}, {facets} facets, {})", rho.field()),
            (pp.clone(), cc.clone()),
            rho.concat(&rho)?,
        ));
        for (i, report) in find_critical(&p, &c, &options)?.into_iter().enumerate().take(2) {
            out.push(Instance::new(
                format!("double-critical#{k}.{i}"),
                (pp.clone(), cc.clone()),
                report.rho.concat(&report.rho)?,
            ));
            if report.defined {
                out.push(Instance::new(format!("critical#{k}.{i}"), (p.clone(), c.clone()), report.rho));
            }
        }
        k += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::potential_value;

    #[test]
    fn random_instances_are_valid_and_reproducible() {
        let a = random_corpus(11, 40);
        assert_eq!(a, random_corpus(11, 40));
        for inst in &a {
            assert!(polytope::validate(&inst.polytope, &inst.point).is_valid(), "{}", inst.label);
            assert!(inst.polytope.facets().len() <= 8 && inst.polytope.dim() <= 4);
            assert!(inst.rho.field().degree() <= 6);
        }
    }

    #[test]
    fn unobstructed_corpus_has_zero_obstruction() {
        let corpus = unobstructed_corpus(3, 30).unwrap();
        assert!(corpus.len() >= 30);
        for inst in &corpus {
            assert!(potential_value(&inst.polytope, &inst.point, &inst.rho).unwrap().is_zero(), "{}", inst.label);
        }
    }
}
