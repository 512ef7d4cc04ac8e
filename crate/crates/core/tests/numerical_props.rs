//! Property tests for numerical polynomials and `omega`.

mod common;

use common::random_index_set;
use dmodpoly::numerical::{lex_extremal, IndexSet};
use dmodpoly::oracle::enum_v_a;
use dmodpoly::{minimize, omega, NumericalPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn index_set(seed: u64) -> IndexSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_index_set(&mut rng, 4, 3, 4)
}

fn poly_strategy() -> impl Strategy<Value = NumericalPolynomial> {
    (1usize..=3).prop_flat_map(|p| {
        proptest::collection::vec((proptest::collection::vec(0u32..=3, p), -20i64..=20), 0..6).prop_map(move |rows| {
            // duplicate indices are summed by from_coeffs
            NumericalPolynomial::from_coeffs(p, rows.into_iter().map(|(i, c)| (i, BigInt::from(c)))).unwrap()
        })
    })
}

fn grid(origin: &[i64], degrees: &[u32]) -> Vec<Vec<i64>> {
    let mut pts = vec![Vec::new()];
    for (o, d) in origin.iter().zip(degrees) {
        pts = pts
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=*d as i64).map(move |k| {
                    let mut w = v.clone();
                    w.push(o + k);
                    w
                })
            })
            .collect();
    }
    pts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn omega_respects_degree_bounds(seed in any::<u64>()) {
        let set = index_set(seed);
        let w = omega(&set);
        let sizes = set.blocks().sizes();
        if let Some(d) = w.total_degree() {
            prop_assert!(d as usize <= set.q());
        }
        for (j, d) in w.degrees().into_iter().enumerate() {
            if let Some(d) = d {
                prop_assert!(d as usize <= sizes[j]);
            }
        }
    }

    #[test]
    fn omega_ignores_non_minimal_points(seed in any::<u64>()) {
        let set = index_set(seed);
        prop_assert_eq!(omega(&set), omega(&minimize(&set)));
    }

    #[test]
    fn omega_counts_at_large_radii(seed in any::<u64>()) {
        let set = minimize(&index_set(seed));
        let p = set.blocks().p();
        let max_entry = set.points().iter().flatten().copied().max().unwrap_or(0) as i64;
        let r0 = max_entry * set.q() as i64;
        let w = omega(&set);
        for r in grid(&vec![r0; p], &vec![1; p]) {
            prop_assert_eq!(w.eval(&r), BigInt::from(enum_v_a(&set, &r).unwrap()));
        }
    }

    #[test]
    fn grid_values_determine_coefficients(poly in poly_strategy(), shift in -3i64..=3) {
        let p = poly.p();
        let degrees: Vec<u32> = poly.degrees().into_iter().map(|d| d.unwrap_or(0)).collect();
        let origin = vec![shift; p];
        let values: Vec<BigInt> = grid(&origin, &degrees).iter().map(|r| poly.eval(r)).collect();
        prop_assert_eq!(NumericalPolynomial::from_grid(&origin, &degrees, &values).unwrap(), poly.clone());
        let view = poly.monomial_view();
        for r in grid(&origin, &degrees) {
            prop_assert_eq!(view.eval_int(&r), BigRational::from_integer(poly.eval(&r)));
        }
    }

    #[test]
    fn extremal_points_ignore_input_order(
        points in proptest::collection::vec(proptest::collection::vec(0u32..=4, 3), 1..8),
        seed in any::<u64>()
    ) {
        let mut shuffled = points.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(lex_extremal(&points), lex_extremal(&shuffled));
    }
}
