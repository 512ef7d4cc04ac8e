//! Shared fixtures and random generators for the integration suites.
#![allow(dead_code)]

use dmodpoly::dimension::Presentation;
use dmodpoly::numerical::{IndexSet, NumericalPolynomial};
use dmodpoly::{ExponentPair, ModuleElement, Partition, Term, WeylElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn term(gen: usize, alpha: &[u32], beta: &[u32]) -> Term {
    Term::new(gen, ExponentPair::new(alpha.to_vec(), beta.to_vec()).unwrap())
}

/// Module element from `(coeff, gen, alpha, beta)` rows.
pub fn elem(n: usize, m: usize, rows: &[(i64, usize, &[u32], &[u32])]) -> ModuleElement {
    ModuleElement::from_terms(n, m, rows.iter().map(|(c, g, a, b)| (term(*g, a, b), q(*c)))).unwrap()
}

pub fn mono(alpha: &[u32], beta: &[u32]) -> WeylElement {
    WeylElement::monomial(ExponentPair::new(alpha.to_vec(), beta.to_vec()).unwrap(), q(1))
}

/// `prod_j C(t_j + shift_j, k_j)`.
pub fn binoms(factors: &[(i64, u32)]) -> NumericalPolynomial {
    let f: Vec<Vec<BigInt>> =
        factors.iter().map(|&(s, k)| NumericalPolynomial::shifted_binomial_coeffs(s, k)).collect();
    NumericalPolynomial::product_of_univariate(&f)
}

/// The single-relation module `(x_1^a d_2^b + x_2^g d_1^a) e` over `(1, 1)`.
pub fn two_block(a: u32, b: u32, g: u32) -> Presentation {
    let rel = elem(2, 1, &[(1, 0, &[a, 0], &[0, b]), (1, 0, &[0, g], &[a, 0])]);
    Presentation::new(Partition::new(vec![1, 1]).unwrap(), 1, vec![rel]).unwrap()
}

/// `C(t1+2,2) C(t2+2,2) - C(t1+2-a,2) C(t2+2-g,2)`.
pub fn two_block_phi(a: u32, g: u32) -> NumericalPolynomial {
    binoms(&[(2, 2), (2, 2)]).sub(&binoms(&[(2 - a as i64, 2), (2 - g as i64, 2)])).unwrap()
}

/// Relations `d_1 e, d_2 e` over `(1, 1)`: the module `K[x_1, x_2]`.
pub fn polynomial_ring() -> Presentation {
    let rels = vec![elem(2, 1, &[(1, 0, &[0, 0], &[1, 0])]), elem(2, 1, &[(1, 0, &[0, 0], &[0, 1])])];
    Presentation::new(Partition::new(vec![1, 1]).unwrap(), 1, rels).unwrap()
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Partition {
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(p - 1).collect();
    cuts.sort();
    let mut sizes = Vec::new();
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(n)) {
        sizes.push(c - prev);
        prev = c;
    }
    Partition::new(sizes).unwrap()
}

/// A minimized-or-not random subset of `N^q` with entries at most `max_entry`.
pub fn random_index_set(rng: &mut ChaCha8Rng, max_q: usize, max_p: usize, max_entry: u32) -> IndexSet {
    let q = rng.gen_range(1..=max_q);
    let p = rng.gen_range(1..=max_p.min(q));
    let blocks = random_partition(rng, q, p);
    let size = rng.gen_range(0..=4);
    let points = (0..size).map(|_| (0..q).map(|_| rng.gen_range(0..=max_entry)).collect()).collect();
    IndexSet::new(points, blocks).unwrap()
}

/// Shape of the random presentation corpus.
#[derive(Clone, Copy, Debug)]
pub struct PresentationShape {
    pub max_n: usize,
    pub max_p: usize,
    pub max_m: usize,
    pub max_relations: usize,
    pub max_terms: usize,
    pub max_exponent: u32,
}

impl Default for PresentationShape {
    fn default() -> Self {
        Self { max_n: 3, max_p: 3, max_m: 2, max_relations: 2, max_terms: 2, max_exponent: 2 }
    }
}

fn random_exponents(rng: &mut ChaCha8Rng, n: usize, max_exponent: u32) -> Vec<u32> {
    (0..n).map(|_| if rng.gen_bool(0.4) { rng.gen_range(1..=max_exponent) } else { 0 }).collect()
}

pub fn random_relation(rng: &mut ChaCha8Rng, n: usize, m: usize, shape: &PresentationShape) -> ModuleElement {
    loop {
        let terms = rng.gen_range(1..=shape.max_terms);
        let rows = (0..terms).map(|_| {
            let gen = rng.gen_range(0..m);
            let alpha = random_exponents(rng, n, shape.max_exponent);
            let beta = random_exponents(rng, n, shape.max_exponent);
            let c = *[-2i64, -1, 1, 1, 2, 3].choose(rng).unwrap();
            (Term::new(gen, ExponentPair::new(alpha, beta).unwrap()), q(c))
        });
        let f = ModuleElement::from_terms(n, m, rows.collect::<Vec<_>>()).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_presentation(rng: &mut ChaCha8Rng, shape: &PresentationShape) -> Presentation {
    let n = rng.gen_range(1..=shape.max_n);
    let p = rng.gen_range(1..=shape.max_p.min(n));
    let partition = random_partition(rng, n, p);
    let m = rng.gen_range(1..=shape.max_m);
    let k = rng.gen_range(1..=shape.max_relations);
    let relations = (0..k).map(|_| random_relation(rng, n, m, shape)).collect();
    Presentation::new(partition, m, relations).unwrap()
}

/// Every point of the box `[0, rmax]^p`.
pub fn box_points(p: usize, rmax: i64) -> Vec<Vec<i64>> {
    let mut pts = vec![Vec::new()];
    for _ in 0..p {
        pts = pts
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=rmax).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    pts
}
