use complexes::random::{random_algebra, random_automorphism, random_chain_map, random_minimal_complex};
use complexes::{cone, hom_k, minimize, ChainMap, ProjComplex};
use exact_linalg::{Rational, F32003};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn minimize_is_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra::<Rational, _>(&mut rng, 5);
        let x = random_minimal_complex(&alg, &mut rng, -1, 3, 2);
        let y = random_minimal_complex(&alg, &mut rng, -1, 3, 2);
        let f = random_chain_map(&alg, &mut rng, &x, &y);
        let c = cone(&alg, &f).complex;
        let once = minimize(&alg, &c).complex;
        let twice = minimize(&alg, &once).complex;
        prop_assert!(once.is_minimal(&alg));
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn hom_dimension_survives_minimization(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra::<F32003, _>(&mut rng, 4);
        let x = random_minimal_complex(&alg, &mut rng, 0, 2, 2);
        let y = random_minimal_complex(&alg, &mut rng, 0, 2, 2);
        let f = random_chain_map(&alg, &mut rng, &x, &y);
        let c = cone(&alg, &f).complex;
        let m = minimize(&alg, &c).complex;
        prop_assert_eq!(hom_k(&alg, &c, &x).dim, hom_k(&alg, &m, &x).dim);
        prop_assert_eq!(hom_k(&alg, &y, &c).dim, hom_k(&alg, &y, &m).dim);
    }

    #[test]
    fn automorphisms_are_chain_isomorphisms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra::<Rational, _>(&mut rng, 5);
        let x: ProjComplex<Rational> = random_minimal_complex(&alg, &mut rng, 0, 3, 2);
        let (y, there, home) = random_automorphism(&alg, &mut rng, &x);
        prop_assert!(y.is_minimal(&alg));
        prop_assert!(there.is_chain_map(&alg));
        prop_assert!(home.is_chain_map(&alg));
        let back = complexes::compose(&alg, &home, &there).unwrap();
        prop_assert_eq!(back, ChainMap::identity(&alg, &x));
    }

    #[test]
    fn standard_triangle_composites(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra::<Rational, _>(&mut rng, 4);
        let x = random_minimal_complex(&alg, &mut rng, 0, 2, 2);
        let y = random_minimal_complex(&alg, &mut rng, 0, 2, 2);
        let f = random_chain_map(&alg, &mut rng, &x, &y);
        let c = cone(&alg, &f);
        let pt = complexes::compose(&alg, &c.projection, &c.inclusion).unwrap();
        prop_assert!(pt.is_zero());
        let tf = complexes::compose(&alg, &c.inclusion, &f).unwrap();
        prop_assert!(complexes::is_null_homotopic(&alg, &tf).is_some());
    }
}
