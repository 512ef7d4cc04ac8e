//! Small constructors shared by the unit tests.

use num_rational::BigRational;

use crate::module::{ModuleElement, Term};
use crate::weyl::ExponentPair;

pub(crate) fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub(crate) fn t(gen: usize, alpha: &[u32], beta: &[u32]) -> Term {
    Term::new(gen, ExponentPair::new(alpha.to_vec(), beta.to_vec()).unwrap())
}

/// Module element from `(coeff, gen, alpha, beta)` rows.
pub(crate) fn me(m: usize, rows: &[(i64, usize, &[u32], &[u32])]) -> ModuleElement {
    let n = rows.first().map(|r| r.2.len()).unwrap_or(0);
    ModuleElement::from_terms(n, m, rows.iter().map(|(c, g, a, b)| (t(*g, a, b), q(*c)))).unwrap()
}

/// The elements h1, h2, h3 of the two-generator running example over A_2.
pub(crate) fn running_example() -> (ModuleElement, ModuleElement, ModuleElement) {
    let h1 = me(2, &[(1, 1, &[0, 2], &[1, 1]), (1, 0, &[1, 1], &[1, 1])]);
    let h2 = me(2, &[(1, 1, &[0, 1], &[2, 0]), (1, 0, &[1, 0], &[2, 0])]);
    let h3 = me(2, &[(1, 0, &[0, 1], &[1, 1]), (-1, 1, &[0, 1], &[2, 0])]);
    (h1, h2, h3)
}
