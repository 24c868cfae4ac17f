//! Recomputes the modulus table from the definition of Conway polynomials:
//! the lexicographically least primitive polynomial of degree m whose
//! generator powers are compatible with every smaller layer d | m.

use floer_core::gf2bar::{CONWAY_MODULI, MAX_DEGREE};

fn mulmod(mut a: u64, mut b: u64, modulus: u64, degree: u32) -> u64 {
    let mut r = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> degree & 1 == 1 {
            a ^= modulus;
        }
    }
    r
}

fn powmod(mut a: u64, mut e: u64, modulus: u64, degree: u32) -> u64 {
    let mut r = 1;
    while e != 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, modulus, degree);
        }
        a = mulmod(a, a, modulus, degree);
        e >>= 1;
    }
    r
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_primitive(modulus: u64, degree: u32) -> bool {
    // in GF(2) the class of x is 1
    let x = if degree == 1 { 1 } else { 2 };
    let units = (1u64 << degree) - 1;
    powmod(x, units, modulus, degree) == 1
        && prime_factors(units)
            .iter()
            .all(|q| powmod(x, units / q, modulus, degree) != 1)
}

fn eval_at(poly: u64, poly_degree: u32, at: u64, modulus: u64, degree: u32) -> u64 {
    (0..=poly_degree).rev().fold(0, |acc, i| {
        mulmod(acc, at, modulus, degree) ^ (poly >> i & 1)
    })
}

#[test]
fn table_matches_conway_definition() {
    let mut found = vec![0u64; MAX_DEGREE as usize + 1];
    for m in 1..=MAX_DEGREE {
        let units = (1u64 << m) - 1;
        let candidate = ((1u64 << m)..(1u64 << (m + 1)))
            .filter(|p| p & 1 == 1)
            .find(|&p| {
                is_primitive(p, m)
                    && (1..m).filter(|d| m % d == 0).all(|d| {
                        let x = if m == 1 { 1 } else { 2 };
                        let image = powmod(x, units / ((1u64 << d) - 1), p, m);
                        eval_at(found[d as usize], d, image, p, m) == 0
                    })
            })
            .expect("a Conway polynomial exists");
        found[m as usize] = candidate;
        assert_eq!(
            CONWAY_MODULI[m as usize] as u64, candidate,
            "degree {m} modulus"
        );
    }
}

#[test]
fn every_modulus_is_irreducible_by_trial_division() {
    fn rem(mut a: u64, b: u64) -> u64 {
        let db = 63 - b.leading_zeros();
        while a != 0 && 63 - a.leading_zeros() >= db {
            a ^= b << (63 - a.leading_zeros() - db);
        }
        a
    }
    for m in 1..=MAX_DEGREE {
        let p = CONWAY_MODULI[m as usize] as u64;
        assert_eq!(63 - p.leading_zeros(), m);
        for divisor in 2u64..(1 << (m / 2 + 1)) {
            let d = 63 - divisor.leading_zeros();
            if d >= 1 && d <= m / 2 {
                assert_ne!(rem(p, divisor), 0, "degree {m} divisible by {divisor:#b}");
            }
        }
    }
}
