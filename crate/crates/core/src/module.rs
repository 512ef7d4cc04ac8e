//! Terms and elements of the free module `E = A_n^m`, the partition-induced
//! term orders `<_1 .. <_p`, leaders, and the rho-map into `Gamma e`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::weyl::{monomial_product, write_linear_combination, ExponentPair, Partition, WeylElement};

/// A term `theta e_gen`. Generator indices are 0-based in the API and
/// printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub gen: usize,
    pub theta: ExponentPair,
}

impl Term {
    pub fn new(gen: usize, theta: ExponentPair) -> Self {
        Self { gen, theta }
    }

    pub fn block_ord(&self, partition: &Partition, j: usize) -> u32 {
        self.theta.block_ord(partition, j)
    }

    pub fn block_ords(&self, partition: &Partition) -> Vec<u32> {
        self.theta.block_ords(partition)
    }

    /// The term `theta * self` whose monomial is the exponent sum; this is
    /// the leading term of the product under every `<_i`.
    pub fn times(&self, theta: &ExponentPair) -> Self {
        Self { gen: self.gen, theta: self.theta.shifted(theta) }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.theta.is_one() {
            write!(f, "e{}", self.gen + 1)
        } else {
            write!(f, "{}*e{}", self.theta, self.gen + 1)
        }
    }
}

/// Selects one of the orders `<_1 .. <_p`; stored 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderId(pub usize);

impl OrderId {
    /// Builds the order with the 1-based index `i`, checked against `p`.
    pub fn one_based(i: usize, p: usize) -> Result<Self> {
        if i == 0 || i > p {
            return Err(Error::InvalidInput(format!("order index {} outside 1..{}", i, p)));
        }
        Ok(Self(i - 1))
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for OrderId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<_{}", self.0 + 1)
    }
}

/// Comparison vector of `theta` under `<_i`: the i-th order, the remaining
/// block orders by ascending block index, the exponents of block `i`
/// (alpha then beta), then those of every other block in ascending order.
pub fn order_key(theta: &ExponentPair, partition: &Partition, order: OrderId) -> Vec<u32> {
    let i = order.0;
    let p = partition.p();
    let mut key = Vec::with_capacity(p + 2 * theta.n());
    key.push(theta.block_ord(partition, i));
    key.extend((0..p).filter(|&j| j != i).map(|j| theta.block_ord(partition, j)));
    let mut push_block = |j: usize| {
        let r = partition.block_range(j);
        key.extend_from_slice(&theta.alpha()[r.clone()]);
        key.extend_from_slice(&theta.beta()[r]);
    };
    push_block(i);
    for j in (0..p).filter(|&j| j != i) {
        push_block(j);
    }
    key
}

pub fn monomial_compare(order: OrderId, a: &ExponentPair, b: &ExponentPair, partition: &Partition) -> Ordering {
    order_key(a, partition, order).cmp(&order_key(b, partition, order))
}

/// `u` versus `v` under `<_i`; equal monomials are ordered by generator index.
pub fn term_compare(order: OrderId, u: &Term, v: &Term, partition: &Partition) -> Ordering {
    monomial_compare(order, &u.theta, &v.theta, partition).then(u.gen.cmp(&v.gen))
}

/// Checked variant of [`term_compare`].
pub fn try_term_compare(order: OrderId, u: &Term, v: &Term, partition: &Partition, m: usize) -> Result<Ordering> {
    if order.0 >= partition.p() {
        return Err(Error::InvalidInput(format!("{} with only {} orders", order, partition.p())));
    }
    for t in [u, v] {
        t.theta.check_n(partition.n())?;
        if t.gen >= m {
            return Err(Error::DimensionMismatch(format!("{} outside a module of rank {}", t, m)));
        }
    }
    Ok(term_compare(order, u, v, partition))
}

/// The monomial `u / v` when `v` divides `u`.
pub fn term_divides(v: &Term, u: &Term) -> Option<ExponentPair> {
    if v.gen != u.gen {
        return None;
    }
    v.theta.quotient_of(&u.theta)
}

/// Least common multiple of two terms; `None` stands for the zero result
/// when the generators differ.
pub fn term_lcm(u: &Term, v: &Term) -> Option<Term> {
    if u.gen != v.gen {
        return None;
    }
    Some(Term::new(u.gen, u.theta.lcm(&v.theta)))
}

/// An element of `E = A_n^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    n: usize,
    m: usize,
    terms: BTreeMap<Term, BigRational>,
}

impl ModuleElement {
    pub fn zero(n: usize, m: usize) -> Self {
        Self { n, m, terms: BTreeMap::new() }
    }

    pub fn term(n: usize, m: usize, term: Term, c: BigRational) -> Result<Self> {
        Self::from_terms(n, m, [(term, c)])
    }

    /// The free generator `e_gen` (0-based).
    pub fn unit(n: usize, m: usize, gen: usize) -> Result<Self> {
        Self::term(n, m, Term::new(gen, ExponentPair::one(n)), BigRational::one())
    }

    /// Collects (term, coefficient) pairs, summing duplicates.
    pub fn from_terms<I>(n: usize, m: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Term, BigRational)>,
    {
        let mut out = Self::zero(n, m);
        for (t, c) in terms {
            t.theta.check_n(n)?;
            if t.gen >= m {
                return Err(Error::DimensionMismatch(format!(
                    "generator e{} outside a module of rank {}",
                    t.gen + 1,
                    m
                )));
            }
            out.add_term(t, c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &Term) -> BigRational {
        self.terms.get(t).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains_key(t)
    }

    pub(crate) fn add_term(&mut self, t: Term, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::DimensionMismatch(format!(
                "elements of A_{}^{} and A_{}^{}",
                self.n, self.m, other.n, other.m
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.m);
        }
        Self { n: self.n, m: self.m, terms: self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect() }
    }

    /// `self - c * theta * g`, the basic rewriting step.
    pub(crate) fn sub_scaled_multiple(&mut self, c: &BigRational, theta: &ExponentPair, g: &ModuleElement) {
        for (t, a) in &g.terms {
            let ca = c * a;
            for (mono, k) in monomial_product(theta, &t.theta) {
                self.add_term(Term::new(t.gen, mono), -(&ca * BigRational::from_integer(k)));
            }
        }
    }

    /// `theta * self` for a single monomial.
    pub fn mul_monomial(&self, theta: &ExponentPair) -> Self {
        let mut out = Self::zero(self.n, self.m);
        out.sub_scaled_multiple(&-BigRational::one(), theta, self);
        out
    }

    /// Largest j-th order over the support.
    pub fn max_block_ord(&self, partition: &Partition, j: usize) -> Option<u32> {
        self.terms.keys().map(|t| t.block_ord(partition, j)).max()
    }

    pub fn block_ords(&self, partition: &Partition) -> Option<Vec<u32>> {
        if self.is_zero() {
            return None;
        }
        Some((0..partition.p()).map(|j| self.max_block_ord(partition, j).unwrap_or(0)).collect())
    }

    /// The `<_i`-greatest term and its coefficient.
    pub fn leader(&self, order: OrderId, partition: &Partition) -> Result<(Term, BigRational)> {
        let mut best: Option<(&Term, &BigRational)> = None;
        for (t, c) in &self.terms {
            best = match best {
                Some((b, _)) if term_compare(order, t, b, partition) != Ordering::Greater => best,
                _ => Some((t, c)),
            };
        }
        best.map(|(t, c)| (t.clone(), c.clone())).ok_or(Error::ZeroElement("leader"))
    }

    pub fn max_term(&self, order: OrderId, partition: &Partition) -> Option<&Term> {
        self.terms.keys().max_by(|a, b| term_compare(order, a, b, partition))
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, self.terms.iter().rev())
    }
}

/// Left action of a Weyl element on a module element.
pub fn act(d: &WeylElement, f: &ModuleElement) -> Result<ModuleElement> {
    if d.n() != f.n {
        return Err(Error::DimensionMismatch(format!("operator over {} variables acting on A_{}^{}", d.n(), f.n, f.m)));
    }
    let mut out = ModuleElement::zero(f.n, f.m);
    for (theta, c) in d.terms() {
        out.sub_scaled_multiple(&-c.clone(), theta, f);
    }
    Ok(out)
}

/// Image of an element in `Gamma e`: its head leader together with the
/// order gaps `d_i = ord_i u^(i) - ord_i u^(head)` of the auxiliary orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaTerm {
    pub d: Vec<u32>,
    pub head: Term,
}

impl fmt::Display for GammaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.d.iter().enumerate() {
            if *d > 0 {
                write!(f, "z{}^{}*", k + 1, d)?;
            }
        }
        write!(f, "{}", self.head)
    }
}

/// rho-image with respect to the order sequence `head, tail..`.
pub fn rho_for(f: &ModuleElement, partition: &Partition, head: OrderId, tail: &[OrderId]) -> Result<GammaTerm> {
    let (lead, _) = f.leader(head, partition)?;
    let mut d = Vec::with_capacity(tail.len());
    for &i in tail {
        let (ui, _) = f.leader(i, partition)?;
        let gap = ui.block_ord(partition, i.0) - lead.block_ord(partition, i.0);
        d.push(gap);
    }
    Ok(GammaTerm { d, head: lead })
}

/// `rho(f) = z_1^{d_2(f)} .. z_{p-1}^{d_p(f)} u_f^(1)`.
pub fn rho(f: &ModuleElement, partition: &Partition) -> Result<GammaTerm> {
    let tail: Vec<OrderId> = (1..partition.p()).map(OrderId).collect();
    rho_for(f, partition, OrderId(0), &tail)
}

pub fn gamma_divides(g: &GammaTerm, f: &GammaTerm) -> bool {
    g.d.len() == f.d.len() && term_divides(&g.head, &f.head).is_some() && g.d.iter().zip(&f.d).all(|(a, b)| a <= b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{me, q, running_example, t};

    fn p11() -> Partition {
        Partition::new(vec![1, 1]).unwrap()
    }

    #[test]
    fn compare_example_leaders() {
        let p = p11();
        let a = t(0, &[1, 1], &[1, 1]);
        let b = t(1, &[0, 2], &[1, 1]);
        assert_eq!(term_compare(OrderId(0), &a, &b, &p), Ordering::Greater);
        assert_eq!(term_compare(OrderId(1), &b, &a, &p), Ordering::Greater);
        assert_eq!(term_compare(OrderId(1), &a, &a, &p), Ordering::Equal);
        // same monomial: generator index breaks the tie
        let c = t(1, &[1, 1], &[1, 1]);
        assert_eq!(term_compare(OrderId(0), &a, &c, &p), Ordering::Less);
    }

    #[test]
    fn checked_compare_rejects_bad_terms() {
        let p = p11();
        let a = t(0, &[1, 1], &[1, 1]);
        let b = t(2, &[1, 1], &[1, 1]);
        assert!(try_term_compare(OrderId(0), &a, &b, &p, 2).is_err());
        assert!(try_term_compare(OrderId(2), &a, &a, &p, 2).is_err());
        assert!(OrderId::one_based(0, 2).is_err());
        assert_eq!(OrderId::one_based(2, 2).unwrap(), OrderId(1));
    }

    #[test]
    fn key_layout_for_middle_block() {
        let p = Partition::new(vec![1, 2, 1]).unwrap();
        let theta = ExponentPair::new(vec![1, 2, 3, 4], vec![5, 6, 7, 8]).unwrap();
        let key = order_key(&theta, &p, OrderId(1));
        // ord_2, ord_1, ord_3, block-2 alphas, block-2 betas, block 1, block 3
        assert_eq!(key, vec![18, 6, 12, 2, 3, 6, 7, 1, 5, 4, 8]);
    }

    #[test]
    fn leaders_of_example_elements() {
        let p = p11();
        let (_, h2, h3) = running_example();
        assert_eq!(h2.leader(OrderId(0), &p).unwrap(), (t(0, &[1, 0], &[2, 0]), q(1)));
        assert_eq!(h3.leader(OrderId(0), &p).unwrap(), (t(1, &[0, 1], &[2, 0]), q(-1)));
        let single = me(2, &[(3, 1, &[1, 0], &[0, 2])]);
        for i in 0..2 {
            assert_eq!(single.leader(OrderId(i), &p).unwrap(), (t(1, &[1, 0], &[0, 2]), q(3)));
        }
        assert_eq!(ModuleElement::zero(2, 2).leader(OrderId(0), &p), Err(Error::ZeroElement("leader")));
    }

    #[test]
    fn divisibility_and_lcm() {
        let v = t(0, &[1, 1], &[0, 1]);
        let u = t(0, &[2, 1], &[1, 2]);
        assert_eq!(term_divides(&v, &u), Some(ExponentPair::new(vec![1, 0], vec![1, 1]).unwrap()));
        assert_eq!(term_divides(&v, &t(1, &[2, 1], &[1, 2])), None);
        assert_eq!(term_divides(&u, &u), Some(ExponentPair::one(2)));
        assert_eq!(term_lcm(&t(0, &[1, 1], &[1, 1]), &t(1, &[0, 1], &[2, 0])), None);
        assert_eq!(term_lcm(&t(0, &[1, 0], &[1, 0]), &t(0, &[0, 1], &[0, 1])), Some(t(0, &[1, 1], &[1, 1])));
        assert_eq!(term_lcm(&u, &u), Some(u.clone()));
    }

    #[test]
    fn rho_images() {
        let p = p11();
        let (_, h2, h3) = running_example();
        let r2 = rho(&h2, &p).unwrap();
        assert_eq!(r2, GammaTerm { d: vec![1], head: t(0, &[1, 0], &[2, 0]) });
        let r3 = rho(&h3, &p).unwrap();
        assert_eq!(r3, GammaTerm { d: vec![1], head: t(1, &[0, 1], &[2, 0]) });
        let single = me(2, &[(1, 0, &[2, 1], &[0, 3])]);
        assert_eq!(rho(&single, &p).unwrap().d, vec![0]);
        assert!(rho(&ModuleElement::zero(2, 2), &p).is_err());
    }

    #[test]
    fn gamma_divisibility() {
        let p = p11();
        let (_, h2, h3) = running_example();
        let r2 = rho(&h2, &p).unwrap();
        assert!(gamma_divides(&r2, &r2));
        assert!(!gamma_divides(&r2, &rho(&h3, &p).unwrap()));
        let g = GammaTerm { d: vec![1], head: t(0, &[1, 0], &[2, 0]) };
        let f = GammaTerm { d: vec![2], head: t(0, &[2, 0], &[2, 0]) };
        assert!(gamma_divides(&g, &f));
        assert!(!gamma_divides(&f, &g));
    }

    #[test]
    fn action_on_example_element() {
        let (h1, _, _) = running_example();
        let got = act(&WeylElement::d(2, 0), &h1).unwrap();
        let expected = me(2, &[(1, 1, &[0, 2], &[2, 1]), (1, 0, &[1, 1], &[2, 1]), (1, 0, &[0, 1], &[1, 1])]);
        assert_eq!(got, expected);
        assert_eq!(act(&WeylElement::one(2), &h1).unwrap(), h1);
        assert!(act(&WeylElement::zero(2), &h1).unwrap().is_zero());
        assert!(act(&WeylElement::one(3), &h1).is_err());
    }

    #[test]
    fn from_terms_rejects_out_of_range_generator() {
        assert!(ModuleElement::from_terms(2, 1, [(t(1, &[0, 0], &[0, 0]), q(1))]).is_err());
        assert!(ModuleElement::from_terms(2, 1, [(t(0, &[0], &[0]), q(1))]).is_err());
    }
}
