use complexes::random::random_algebra;
use complexes::{compose, minimize, ChainMap};
use exact_linalg::{Rational, F32003};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shapes::sample::{sample_classified, ClassKind};
use shapes::{classify, reduced_cone, split_pattern, standard_form};

fn kind() -> impl Strategy<Value = ClassKind> {
    prop_oneof![Just(ClassKind::Smonic), Just(ClassKind::Sepic), Just(ClassKind::Sirreducible)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn reduced_cone_witnesses_verify(seed in any::<u64>(), kind in kind()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra::<Rational, _>(&mut rng, 6);
        if let Some(f) = sample_classified(&alg, &mut rng, kind, 60) {
            let r = reduced_cone(&alg, &f).unwrap();
            prop_assert_eq!(r.verify(&alg), Ok(()));
            let theirs = minimize(&alg, &r.cone.complex).complex;
            prop_assert!(r.complex.is_minimal(&alg));
            prop_assert_eq!(r.complex.signature(&alg).unwrap(), theirs.signature(&alg).unwrap());
        }
    }

    #[test]
    fn prime_field_reduced_cones(seed in any::<u64>(), kind in kind()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra::<F32003, _>(&mut rng, 5);
        if let Some(f) = sample_classified(&alg, &mut rng, kind, 60) {
            prop_assert_eq!(reduced_cone(&alg, &f).unwrap().verify(&alg), Ok(()));
        }
    }

    #[test]
    fn split_witnesses_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra::<Rational, _>(&mut rng, 5);
        let x = complexes::random::random_minimal_complex(&alg, &mut rng, -1, 3, 2);
        let y = complexes::random::random_minimal_complex(&alg, &mut rng, -1, 3, 2);
        let f = complexes::random::random_chain_map(&alg, &mut rng, &x, &y);
        prop_assert!(split_pattern(&alg, &f).verify(&alg, &f));
    }

    #[test]
    fn class_survives_automorphisms(seed in any::<u64>(), kind in kind()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra::<Rational, _>(&mut rng, 5);
        if let Some(f) = sample_classified(&alg, &mut rng, kind, 60) {
            let c1 = classify(&alg, &f).unwrap();
            let (y2, there, _) = complexes::random::random_automorphism(&alg, &mut rng, f.target());
            let g: ChainMap<Rational> = compose(&alg, &there, &f).unwrap().with_ends(f.source().clone(), y2);
            let c2 = classify(&alg, &g).unwrap();
            prop_assert!(c1.same_class(&c2));
            prop_assert!(standard_form(&alg, &g).unwrap().verify(&alg));
        }
    }
}
