use floer_core::corpus::{random_polytope, random_rho};
use floer_core::gf2bar::Field;
use floer_core::novikov::NovikovPoly;
use floer_core::potential::{find_critical, grad_components, monomial_power, RhoAssignment, SearchOptions};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomial_power_is_a_character(
        logs in prop::collection::vec(0u64..255, 3),
        v in prop::collection::vec(-9i64..9, 3),
        w in prop::collection::vec(-9i64..9, 3),
    ) {
        let f = Field::new(8).unwrap();
        let rho = RhoAssignment::new(logs.iter().map(|&k| f.exp(k)).collect()).unwrap();
        let sum: Vec<i64> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
        prop_assert_eq!(
            monomial_power(&rho, &sum).unwrap(),
            monomial_power(&rho, &v).unwrap() * monomial_power(&rho, &w).unwrap()
        );
        let neg: Vec<i64> = v.iter().map(|a| -a).collect();
        prop_assert!((monomial_power(&rho, &v).unwrap() * monomial_power(&rho, &neg).unwrap()).is_one());
    }

    #[test]
    fn search_matches_exhaustive_evaluation(extra in 1usize..4, seed in any::<u64>()) {
        // dimension 2, every rho over GF(2), GF(4), GF(8)
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, c) = random_polytope(&mut rng, 2, 2 + extra);
        let found: Vec<RhoAssignment> = find_critical(&p, &c, &SearchOptions { max_degree: 3, budget: 1 << 16 })
            .unwrap()
            .into_iter()
            .map(|r| {
                assert!(r.nonvanishing);
                r.rho
            })
            .collect();
        let mut brute = Vec::new();
        for m in 1..=3 {
            let f = Field::new(m).unwrap();
            let mut layer = Vec::new();
            for a in f.units() {
                for b in f.units() {
                    let rho = RhoAssignment::new(vec![a, b]).unwrap();
                    if rho.minimal_degree() == m
                        && grad_components(&p, &c, &rho).unwrap().iter().all(NovikovPoly::is_zero)
                    {
                        layer.push(rho);
                    }
                }
            }
            layer.sort();
            brute.extend(layer);
        }
        prop_assert_eq!(found, brute);
    }

    #[test]
    fn embedding_preserves_criticality(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, c) = random_polytope(&mut rng, 3, 5);
        let rho = random_rho(&mut rng, 3, 4);
        let big = Field::new(rho.field().degree() * 2).unwrap();
        let z = grad_components(&p, &c, &rho).unwrap();
        let z_big = grad_components(&p, &c, &rho.embed(big).unwrap()).unwrap();
        for (a, b) in z.iter().zip(&z_big) {
            prop_assert_eq!(&a.embed(big).unwrap(), b);
        }
    }
}
