use num_traits::Zero;
use pathsig::algebra::{MultiPoly, VariableTable};
use pathsig::varieties::{
    affine_image_dimension, affine_image_dimension_float, low_degree_ideal_counts, low_degree_relations,
    random_point, signature_variety_map, universal_variety_map, Family, IdealMethod, PolynomialMap,
};
use pathsig::words::Word;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::PiecewiseLinear), Just(Family::Polynomial)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn signature_maps_are_homogeneous(f in family(), d in 1usize..=3, k in 1usize..=3, m in 1usize..=3) {
        let map = signature_variety_map(f, d, k, m).unwrap();
        prop_assert_eq!(map.num_coords(), d.pow(k as u32));
        prop_assert_eq!(map.num_params(), d * m);
        for e in map.entries() {
            prop_assert!(e.is_zero() || (e.is_homogeneous() && e.total_degree() == Some(k as u32)));
        }
    }

    #[test]
    fn universal_maps_are_weighted_homogeneous(d in 1usize..=3, k in 1usize..=3) {
        let map = universal_variety_map(d, k).unwrap();
        for e in map.entries() {
            prop_assert!(e.is_zero() || e.weighted_homogeneous_degree(map.weights()) == Some(k as u32));
        }
    }

    #[test]
    fn rank_is_bounded_and_seeded(f in family(), d in 1usize..=3, k in 1usize..=3, m in 1usize..=2, seed in any::<u64>()) {
        let map = signature_variety_map(f, d, k, m).unwrap();
        let dim = affine_image_dimension(&map, 3, &mut rng(seed)).unwrap();
        prop_assert!(dim <= map.num_params().min(map.num_coords()));
        prop_assert_eq!(dim, affine_image_dimension(&map, 3, &mut rng(seed)).unwrap());
        prop_assert_eq!(dim, affine_image_dimension_float(&map, 3, &mut rng(seed)).unwrap());
    }

    #[test]
    fn json_round_trip(f in family(), d in 1usize..=2, k in 1usize..=3, m in 1usize..=3) {
        let map = signature_variety_map(f, d, k, m).unwrap();
        let text = serde_json::to_string(&map.to_json()).unwrap();
        prop_assert_eq!(PolynomialMap::parse_json(&text).unwrap(), map);
    }
}

#[test]
fn relations_vanish_at_fresh_points() {
    let maps = [
        universal_variety_map(2, 3).unwrap(),
        universal_variety_map(3, 2).unwrap(),
        signature_variety_map(Family::PiecewiseLinear, 2, 3, 2).unwrap(),
        signature_variety_map(Family::Polynomial, 2, 3, 2).unwrap(),
        signature_variety_map(Family::PiecewiseLinear, 3, 2, 1).unwrap(),
    ];
    let mut g = rng(5);
    for f in &maps {
        for method in [IdealMethod::Coefficients, IdealMethod::Sampling { samples: None }] {
            let rel = low_degree_relations(f, 2, method, &mut g).unwrap();
            for _ in 0..10 {
                let z = f.eval(&random_point(f.num_params(), &mut g)).unwrap();
                let (lin, quad) = rel.eval(&z);
                assert!(lin.iter().chain(&quad).all(Zero::is_zero));
            }
        }
    }
}

#[test]
fn routes_agree_on_counts() {
    let maps = [
        universal_variety_map(3, 2).unwrap(),
        signature_variety_map(Family::PiecewiseLinear, 2, 3, 2).unwrap(),
        signature_variety_map(Family::Polynomial, 2, 3, 2).unwrap(),
        signature_variety_map(Family::PiecewiseLinear, 2, 2, 3).unwrap(),
    ];
    for f in &maps {
        let exact = low_degree_ideal_counts(f, 2, IdealMethod::Coefficients, &mut rng(1)).unwrap();
        let sampled = low_degree_ideal_counts(f, 2, IdealMethod::Sampling { samples: None }, &mut rng(2)).unwrap();
        assert_eq!(exact, sampled);
    }
}

#[test]
fn level_two_signatures_of_one_segment() {
    // a single linear segment has σ⁽²⁾ = x⊗x/2: rank-one symmetric matrices
    let f = signature_variety_map(Family::PiecewiseLinear, 2, 2, 1).unwrap();
    let c = low_degree_ideal_counts(&f, 2, IdealMethod::Coefficients, &mut rng(0)).unwrap();
    // z_12 = z_21 and the 2x2 minor
    assert_eq!(c.linear, 1);
    assert_eq!(c.quadrics.unwrap().minimal, 1);
    assert_eq!(affine_image_dimension(&f, 3, &mut rng(0)).unwrap(), 2);
}

#[test]
fn seeds_fix_sampled_relations() {
    let f = universal_variety_map(2, 3).unwrap();
    let a = low_degree_relations(&f, 2, IdealMethod::Sampling { samples: None }, &mut rng(9)).unwrap();
    let b = low_degree_relations(&f, 2, IdealMethod::Sampling { samples: None }, &mut rng(9)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn full_space_has_no_relations() {
    let v = VariableTable::new(["u_1", "u_2", "u_3", "u_4"]).unwrap();
    let f = PolynomialMap::new(
        &v,
        vec![1; 4],
        Word::all_of_length(2, 2),
        (0..4).map(|i| MultiPoly::var(&v, i)).collect(),
    )
    .unwrap();
    let c = low_degree_ideal_counts(&f, 2, IdealMethod::Coefficients, &mut rng(0)).unwrap();
    assert_eq!(c.pair(), (0, Some(0)));
    assert_eq!(affine_image_dimension(&f, 3, &mut rng(0)).unwrap(), 4);
}
