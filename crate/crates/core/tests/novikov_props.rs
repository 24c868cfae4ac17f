use floer_core::gf2bar::Field;
use floer_core::novikov::{NovikovMatrix, NovikovPoly, RankMethod};
use floer_core::rational::{ratio, Rational};
use proptest::prelude::*;

fn field() -> Field {
    Field::new(3).unwrap()
}

/// Up to four terms with exponents in halves and thirds.
fn poly() -> impl Strategy<Value = NovikovPoly> {
    prop::collection::vec((0u32..8, -6i64..12, prop::sample::select(vec![1i64, 2, 3])), 0..4).prop_map(
        |terms| {
            let f = field();
            NovikovPoly::from_terms(
                f,
                terms
                    .into_iter()
                    .map(|(bits, p, q)| (ratio(p, q), f.element(bits).unwrap())),
            )
            .unwrap()
        },
    )
}

fn nonzero_poly() -> impl Strategy<Value = NovikovPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Unit upper-triangular matrix with arbitrary entries above the diagonal.
fn unitriangular(n: usize, entries: &[NovikovPoly]) -> NovikovMatrix {
    let f = field();
    let mut m = NovikovMatrix::identity(f, n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, entries[k % entries.len()].clone()).unwrap();
            k += 1;
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &a).is_zero());
        prop_assert_eq!(&a * &NovikovPoly::one(field()), a.clone());
    }

    #[test]
    fn frobenius_on_polynomials(a in poly(), b in poly()) {
        let s = &a + &b;
        prop_assert_eq!(&s * &s, &(&a * &a) + &(&b * &b));
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in nonzero_poly()) {
        let prod = &a * &b;
        prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn rank_of_constructed_matrix(
        n in 2usize..6,
        r_frac in 0usize..6,
        diag in prop::collection::vec(nonzero_poly(), 6),
        upper in prop::collection::vec(poly(), 1..10),
        lower in prop::collection::vec(poly(), 1..10),
        seed in 0u64..1000,
    ) {
        // U * D * L^T with U, L unit triangular and D of rank r has rank r
        let r = r_frac % (n + 1);
        let f = field();
        let mut d = NovikovMatrix::zeros(f, n, n);
        for (i, p) in diag.iter().take(r).enumerate() {
            d.set(i, i, p.clone()).unwrap();
        }
        let u = unitriangular(n, &upper);
        let l = unitriangular(n, &lower).transpose();
        let m = u.checked_mul(&d).unwrap().checked_mul(&l).unwrap();
        prop_assert_eq!(m.rank(RankMethod::Exact).unwrap(), r);
        prop_assert_eq!(m.transpose().rank(RankMethod::Exact).unwrap(), r);
        prop_assert_eq!(m.rank(RankMethod::Probabilistic { seed }).unwrap(), r);

        let rows: Vec<usize> = (0..n).rev().collect();
        let cols: Vec<usize> = (0..n).map(|j| (j + 1) % n).collect();
        prop_assert_eq!(m.permuted(&rows, &cols).rank(RankMethod::Exact).unwrap(), r);
        let factor: Rational = ratio(5, 2);
        prop_assert_eq!(m.rescale_exponents(&factor).rank(RankMethod::Exact).unwrap(), r);
    }

    #[test]
    fn kronecker_mixed_product(a in prop::collection::vec(poly(), 4), b in prop::collection::vec(poly(), 4)) {
        // (A x I)(I x B) = A x B
        let f = field();
        let ma = NovikovMatrix::from_rows(f, vec![a[..2].to_vec(), a[2..].to_vec()]).unwrap();
        let mb = NovikovMatrix::from_rows(f, vec![b[..2].to_vec(), b[2..].to_vec()]).unwrap();
        let id = NovikovMatrix::identity(f, 2);
        let lhs = ma.kronecker(&id).unwrap().checked_mul(&id.kronecker(&mb).unwrap()).unwrap();
        prop_assert_eq!(lhs, ma.kronecker(&mb).unwrap());
    }
}
