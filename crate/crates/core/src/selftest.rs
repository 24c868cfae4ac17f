//! The acceptance checks, shared by `floer selftest` and the `acceptance` test target.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::corpus::{builtin_corpus, random_corpus, unobstructed_corpus, Instance};
use crate::floer::{build_complex, check_obstruction, complex_hf, hf_rank, product_bound};
use crate::gf2bar::Field;
use crate::novikov::{NovikovPoly, RankMethod};
use crate::polytope::{self, blowup_cp3, cpn, rp_product};
use crate::potential::{find_critical, grad_components, RhoAssignment, SearchOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} [{}] {}: {} ({:.3}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

type Check = fn() -> Result<String, String>;

const CHECKS: [(u32, &str, Check); 9] = [
    (1, "blow-up of CP^3 at its cubic critical points", blowup_example),
    (2, "odd projective spaces", odd_projective),
    (3, "even projective spaces are obstructed", even_projective),
    (4, "products of even projective spaces", rp_products),
    (5, "product-trick bounds", product_bounds),
    (6, "delta^2 = o * id on a random corpus", square_identity),
    (7, "HF != 0 iff Z = 0 on unobstructed instances", nonvanishing_criterion),
    (8, "critical points of monotone builtins", monotone_critical_points),
    (9, "exact and probabilistic ranks agree; field invariants", rank_cross_check),
];

/// Seed of the random corpora; fixed so that every run checks the same instances.
pub const CORPUS_SEED: u64 = 20_240_611;

pub fn run_all() -> Vec<CheckOutcome> {
    CHECKS.iter().map(|&(id, name, check)| run_one(id, name, check)).collect()
}

pub fn run_check(id: u32) -> Option<CheckOutcome> {
    CHECKS
        .iter()
        .find(|c| c.0 == id)
        .map(|&(id, name, check)| run_one(id, name, check))
}

fn run_one(id: u32, name: &str, check: Check) -> CheckOutcome {
    let start = Instant::now();
    let result = check();
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome {
        id,
        name: name.to_string(),
        passed,
        detail,
        seconds,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> Result<T, String>) -> Result<T, String> {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))?;
    Ok(out)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn cubic_roots() -> Vec<crate::gf2bar::FieldElement> {
    let f = Field::new(3).expect("GF(8)");
    f.units()
        .filter(|&x| (x * x * x + x * x + f.one()).is_zero())
        .collect()
}

fn blowup_example() -> Result<String, String> {
    let (p, c) = blowup_cp3();
    let roots = cubic_roots();
    ensure(roots.len() == 3, || format!("expected 3 roots, found {}", roots.len()))?;
    for xi in &roots {
        let rho = RhoAssignment::diagonal(*xi, 3).map_err(err)?;
        let hf = timed(Duration::from_secs(1), "rank", || {
            hf_rank(&p, &c, &rho, RankMethod::Exact).map_err(err)
        })?;
        ensure(hf.obstruction.is_zero(), || format!("obstruction {}", hf.obstruction))?;
        ensure(hf.delta_rank == Some(2) && hf.hf_rank == Some(4), || {
            format!("at {xi}: delta_rank {:?}, hf_rank {:?}", hf.delta_rank, hf.hf_rank)
        })?;
    }
    Ok("obstruction 0, delta_rank 2, hf_rank 4 at all three roots".into())
}

fn odd_projective() -> Result<String, String> {
    for (k, expected) in [(1, 2), (3, 4)] {
        let (p, c) = cpn(k);
        let hf = timed(Duration::from_secs(1), "rank", || {
            hf_rank(&p, &c, &RhoAssignment::trivial(k), RankMethod::Exact).map_err(err)
        })?;
        ensure(hf.hf_rank == Some(expected), || {
            format!("cpn({k}): hf_rank {:?}, expected {expected}", hf.hf_rank)
        })?;
    }
    Ok("cpn(1) -> 2, cpn(3) -> 4".into())
}

fn even_projective() -> Result<String, String> {
    for k in [2, 4] {
        let (p, c) = cpn(k);
        let hf = timed(Duration::from_secs(1), "complex", || {
            hf_rank(&p, &c, &RhoAssignment::trivial(k), RankMethod::Exact).map_err(err)
        })?;
        let energy = polytope::energies(&p, &c).map_err(err)?.0[0].clone();
        let expected = NovikovPoly::monomial(Field::prime().one(), energy);
        ensure(!hf.defined && hf.obstruction == expected, || {
            format!("cpn({k}): defined {}, obstruction {}", hf.defined, hf.obstruction)
        })?;
    }
    Ok("cpn(2), cpn(4): undefined with obstruction T".into())
}

fn check_critical(p: &polytope::FanoPolytope, c: &polytope::InteriorPoint, rho: &RhoAssignment) -> Result<(), String> {
    let z = grad_components(p, c, rho).map_err(err)?;
    ensure(z.iter().all(NovikovPoly::is_zero), || "local system is not critical".into())
}

fn rp_products() -> Result<String, String> {
    let (p, c) = rp_product(1, 1);
    let rho = RhoAssignment::trivial(4);
    check_critical(&p, &c, &rho)?;
    let k = build_complex(&p, &c, &rho).map_err(err)?;
    ensure(k.delta().rows() == 16 && k.delta().cols() == 16, || "delta is not 16x16".into())?;
    let hf = complex_hf(&k, RankMethod::Exact).map_err(err)?;
    ensure(hf.delta_rank == Some(6) && hf.hf_rank == Some(4), || {
        format!("rp_product(1,1): delta_rank {:?}, hf_rank {:?}", hf.delta_rank, hf.hf_rank)
    })?;

    let (p, c) = rp_product(1, 2);
    let rho = RhoAssignment::trivial(6);
    check_critical(&p, &c, &rho)?;
    let start = Instant::now();
    let hf = timed(Duration::from_secs(60), "64x64 rank", || {
        hf_rank(&p, &c, &rho, RankMethod::Exact).map_err(err)
    })?;
    ensure(hf.hf_rank == Some(8), || format!("rp_product(1,2): hf_rank {:?}", hf.hf_rank))?;
    Ok(format!(
        "rp_product(1,1): 16x16, rank 6, HF 4; rp_product(1,2): HF 8 in {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn product_bounds() -> Result<String, String> {
    let (p, c) = cpn(2);
    let omega = Field::new(2).map_err(err)?.generator();
    let r = product_bound(&p, &c, &RhoAssignment::diagonal(omega, 2).map_err(err)?, RankMethod::Exact)
        .map_err(err)?;
    ensure(r.bound == Some(2), || format!("cpn(2): bound {:?}", r.bound))?;

    let (p, c) = cpn(1);
    let rho = RhoAssignment::trivial(1);
    let r = product_bound(&p, &c, &rho, RankMethod::Exact).map_err(err)?;
    let direct = hf_rank(&p, &c, &rho, RankMethod::Exact).map_err(err)?;
    ensure(r.bound == Some(2) && direct.hf_rank == Some(2), || {
        format!("cpn(1): bound {:?}, direct hf_rank {:?}", r.bound, direct.hf_rank)
    })?;
    Ok("cpn(2) at (w, w): bound 2; cpn(1): bound 2, direct HF 2".into())
}

fn square_identity() -> Result<String, String> {
    let corpus = random_corpus(CORPUS_SEED, 120);
    let mut failures = Vec::new();
    for inst in &corpus {
        let k = build_complex(&inst.polytope, &inst.point, &inst.rho).map_err(err)?;
        if !check_obstruction(&k) {
            failures.push(inst.label.clone());
        }
    }
    ensure(failures.is_empty(), || format!("failed on {}", failures.join(", ")))?;
    Ok(format!("{} instances, 0 failures", corpus.len()))
}

/// Unobstructed instances for the nonvanishing criterion: the dedicated
/// corpus plus every random instance whose obstruction happens to vanish.
pub fn nonvanishing_corpus() -> Result<Vec<Instance>, String> {
    let mut corpus = unobstructed_corpus(CORPUS_SEED, 120).map_err(err)?;
    for inst in random_corpus(CORPUS_SEED, 120) {
        let w = crate::potential::potential_value(&inst.polytope, &inst.point, &inst.rho).map_err(err)?;
        if w.is_zero() {
            corpus.push(inst);
        }
    }
    Ok(corpus)
}

fn nonvanishing_criterion() -> Result<String, String> {
    let corpus = nonvanishing_corpus()?;
    let (mut critical, mut other) = (0, 0);
    let mut failures = Vec::new();
    for inst in &corpus {
        let hf = hf_rank(&inst.polytope, &inst.point, &inst.rho, RankMethod::Exact).map_err(err)?;
        let z = grad_components(&inst.polytope, &inst.point, &inst.rho).map_err(err)?;
        let z_zero = z.iter().all(NovikovPoly::is_zero);
        let positive = hf.hf_rank.is_some_and(|r| r > 0);
        if z_zero {
            critical += 1;
        } else {
            other += 1;
        }
        if !hf.defined || positive != z_zero {
            failures.push(format!("{} (Z = 0: {z_zero}, hf_rank {:?})", inst.label, hf.hf_rank));
        }
    }
    ensure(failures.is_empty(), || format!("failed on {}", failures.join("; ")))?;
    ensure(critical > 0 && other > 0, || {
        format!("corpus does not cover both cases ({critical} with Z = 0, {other} without)")
    })?;
    Ok(format!("{} instances ({critical} with Z = 0, {other} with Z != 0), 0 failures", corpus.len()))
}

fn monotone_critical_points() -> Result<String, String> {
    let options = SearchOptions {
        max_degree: 8,
        ..SearchOptions::default()
    };
    let mut summary = Vec::new();
    let cases: Vec<(String, _)> = (1..=4)
        .map(|k| (format!("cpn({k})"), cpn(k)))
        .chain([("rp_product(1,1)".to_string(), rp_product(1, 1))])
        .collect();
    for (name, (p, c)) in cases {
        let found = timed(Duration::from_secs(30), &name, || {
            find_critical(&p, &c, &options).map_err(err)
        })?;
        let count = found.iter().filter(|r| r.nonvanishing).count();
        ensure(count > 0, || format!("{name}: no critical point up to GF(2^8)"))?;
        summary.push(format!("{name}: {count}"));
    }
    Ok(summary.join(", "))
}

fn rank_cross_check() -> Result<String, String> {
    let mut corpus = builtin_corpus();
    corpus.extend(random_corpus(CORPUS_SEED, 120));
    corpus.extend(unobstructed_corpus(CORPUS_SEED, 120).map_err(err)?);
    let mut comparisons = 0;
    for inst in &corpus {
        let k = build_complex(&inst.polytope, &inst.point, &inst.rho).map_err(err)?;
        let exact = k.delta().rank(RankMethod::Exact).map_err(err)?;
        for seed in 0..5 {
            let prob = k.delta().rank(RankMethod::Probabilistic { seed }).map_err(err)?;
            ensure(prob == exact, || {
                format!("{}: exact {exact}, probabilistic {prob} (seed {seed})", inst.label)
            })?;
            comparisons += 1;
        }
    }
    let mut elements = 0;
    for m in 1..=8 {
        let f = Field::new(m).map_err(err)?;
        for a in f.elements() {
            let frob = (0..m).fold(a, |x, _| x.square());
            ensure(frob == a, || format!("Frobenius fails at {a:?}"))?;
            ensure(a.sqrt().square() == a && a.square().sqrt() == a, || {
                format!("sqrt round trip fails at {a:?}")
            })?;
            if !a.is_zero() {
                let inv = a.inv().map_err(err)?;
                ensure((a * inv).is_one(), || format!("inverse fails at {a:?}"))?;
            }
            elements += 1;
        }
    }
    Ok(format!(
        "{} matrices x 5 seeds = {comparisons} agreements; {elements} field elements checked",
        corpus.len()
    ))
}
