use cli::{write_complex, write_map, Problem};
use complexes::random::{random_algebra, random_chain_map, random_minimal_complex};
use exact_linalg::{Rational, Scalar, F32003};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check<F: Scalar>(seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alg = random_algebra::<F, _>(&mut rng, 6);
    let p = Problem::new("R", alg).unwrap();
    let lo = rng.gen_range(-2..=1);
    let x = random_minimal_complex(&p.alg, &mut rng, lo, 3, 2);
    let lo = rng.gen_range(-2..=1);
    let y = random_minimal_complex(&p.alg, &mut rng, lo, 3, 2);
    let f = random_chain_map(&p.alg, &mut rng, &x, &y);

    let back = p.read_serialized(&write_complex(&p, "x", &x)).unwrap();
    prop_assert_eq!(&back.complexes[0].1, &x);
    let text = write_map(&p, "f", &f);
    let back = p.read_serialized(&text).unwrap();
    prop_assert_eq!(&back.maps[0].map, &f);
    prop_assert_eq!(write_map(&back, "f", &back.maps[0].map), text);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rational_values_round_trip(seed in any::<u64>()) {
        check::<Rational>(seed)?;
    }

    #[test]
    fn prime_field_values_round_trip(seed in any::<u64>()) {
        check::<F32003>(seed)?;
    }
}

#[test]
fn multi_term_coefficients_round_trip() {
    let text = "[quiver]\nname K\nvertices 1 2 3\narrow a : 2 -> 1\narrow b : 3 -> 2\narrow c : 3 -> 1\n\
                [complexes]\ncomplex x\n  cell 0 : 1\n  cell 1 : 3\n  d 0 = [7/3*b a - 5*c]\nend\n";
    let p = cli::parse_problem::<Rational>(text).unwrap();
    let x = p.complex("x").unwrap();
    let written = write_complex(&p, "x", &x);
    assert!(written.contains("-5*c + 7/3*b a"), "{written}");
    assert_eq!(p.read_serialized(&written).unwrap().complexes[0].1, x);
}
