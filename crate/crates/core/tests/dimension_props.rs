//! Property tests for the dimension engine on random small presentations.

mod common;

use common::{q, random_presentation, PresentationShape};
use dmodpoly::dimension::{
    bernstein_polynomial_with, dimension_polynomial_with, omega_part, DimensionOptions, DimensionReport, Presentation,
    PsiStrategy,
};
use dmodpoly::groebner::Limits;
use dmodpoly::{Error, ExponentPair, WeylElement};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SHAPE: PresentationShape =
    PresentationShape { max_n: 2, max_p: 2, max_m: 1, max_relations: 2, max_terms: 2, max_exponent: 2 };
const BUDGET: Limits = Limits { max_elements: 60, max_coeff_bits: 512 };

fn options(strategy: PsiStrategy) -> DimensionOptions {
    DimensionOptions { strategy, limits: BUDGET, ..DimensionOptions::default() }
}

/// `None` when completion exceeds the test budget.
fn run(pres: &Presentation, strategy: PsiStrategy) -> Option<DimensionReport> {
    match dimension_polynomial_with(pres, options(strategy)) {
        Ok(r) => Some(r),
        Err(Error::BudgetExceeded(_)) => None,
        Err(e) => panic!("engine failed on {:?}: {e}", pres.relations()),
    }
}

fn presentation(seed: u64) -> (Presentation, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pres = random_presentation(&mut rng, &SHAPE);
    (pres, rng)
}

/// Largest coordinate at which a report was checked against counting.
fn verified_reach(report: &DimensionReport) -> i64 {
    report.verified.iter().flat_map(|(r, _)| r.iter().copied()).max().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn phi_splits_into_omega_and_psi(seed in any::<u64>()) {
        let (pres, _) = presentation(seed);
        let Some(report) = run(&pres, PsiStrategy::Auto) else { return Ok(()) };
        prop_assert_eq!(report.omega_part.add(&report.psi_part).unwrap(), report.phi.clone());
        prop_assert_eq!(omega_part(&report.basis), report.omega_part.clone());
        for (r, count) in &report.verified {
            prop_assert_eq!(&report.phi.eval(r), count);
        }
    }

    #[test]
    fn symbolic_and_interpolated_psi_agree(seed in any::<u64>()) {
        let (pres, _) = presentation(seed);
        let Some(auto) = run(&pres, PsiStrategy::Auto) else { return Ok(()) };
        let Some(interp) = run(&pres, PsiStrategy::Interpolate) else { return Ok(()) };
        prop_assert_eq!(auto.psi_part, interp.psi_part);
        prop_assert_eq!(auto.phi, interp.phi);
    }

    #[test]
    fn univariate_polynomial_brackets_phi(seed in any::<u64>()) {
        let (pres, _) = presentation(seed);
        let Some(report) = run(&pres, PsiStrategy::Auto) else { return Ok(()) };
        let b = match bernstein_polynomial_with(&pres, options(PsiStrategy::Auto)) {
            Ok(b) => b,
            Err(Error::BudgetExceeded(_)) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let p = pres.p() as i64;
        let start = verified_reach(&report).max(verified_reach(&b.report));
        for r in start..start + 3 {
            let phi = report.phi.eval(&vec![r; pres.p()]);
            prop_assert!(b.psi.eval(&[r]) <= phi, "psi({}) > phi", r);
            prop_assert!(phi <= b.psi.eval(&[p * r]), "phi > psi({})", p * r);
        }
        if pres.p() == 1 {
            prop_assert_eq!(&b.psi, &report.phi);
        }
        if let Some(d) = b.dimension {
            prop_assert!(b.multiplicity > BigInt::from(0));
            prop_assert!(d as usize >= pres.n() && d as usize <= 2 * pres.n());
        }
    }

    #[test]
    fn invariants_survive_a_new_generator(seed in any::<u64>()) {
        let (pres, mut rng) = presentation(seed);
        let n = pres.n();
        let k = rng.gen_range(0..n);
        let theta = if rng.gen_bool(0.5) { ExponentPair::x(n, k) } else { ExponentPair::d(n, k) };
        let d = WeylElement::monomial(theta, q(1)).add(&WeylElement::constant(n, q(rng.gen_range(0..=2)))).unwrap();
        let Some(base) = run(&pres, PsiStrategy::Auto) else { return Ok(()) };
        let Some(other) = run(&pres.with_extra_generator(&d, 0).unwrap(), PsiStrategy::Auto) else { return Ok(()) };
        let (x, y) = (&base.invariants, &other.invariants);
        prop_assert_eq!(x.total_degree, y.total_degree);
        prop_assert_eq!(&x.top_coeffs, &y.top_coeffs);
        prop_assert_eq!(&x.extremal, &y.extremal);
        prop_assert_eq!((&x.caps, &x.cap_coeff), (&y.caps, &y.cap_coeff));
    }
}
