//! Weyl algebra elements in `x^alpha d^beta` normal form over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Split of the variables `x_1..x_n` (and the matching derivations) into
/// `p` consecutive blocks of sizes `n_1, .., n_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    block: Vec<usize>,
}

impl Partition {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidPartition("at least one block is required".into()));
        }
        if let Some(j) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidPartition(format!("block {} is empty", j + 1)));
        }
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut block = Vec::new();
        offsets.push(0);
        for (j, &s) in sizes.iter().enumerate() {
            offsets.push(offsets[j] + s);
            block.extend(std::iter::repeat_n(j, s));
        }
        Ok(Self { sizes, offsets, block })
    }

    /// Like [`Partition::new`] but also checks that the sizes add up to `n`.
    pub fn with_n(n: usize, sizes: Vec<usize>) -> Result<Self> {
        let total: usize = sizes.iter().sum();
        if total != n {
            return Err(Error::InvalidPartition(format!("block sizes {:?} sum to {} but n = {}", sizes, total, n)));
        }
        Self::new(sizes)
    }

    /// The single-block partition, used for the classical Bernstein filtration.
    pub fn trivial(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn n(&self) -> usize {
        self.block.len()
    }

    pub fn p(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Block index (0-based) of the 0-based variable `k`.
    pub fn block_of(&self, k: usize) -> usize {
        self.block[k]
    }

    /// 0-based variable indices of block `j`.
    pub fn block_range(&self, j: usize) -> Range<usize> {
        self.offsets[j]..self.offsets[j + 1]
    }
}

/// Exponents of a normal-form monomial `x^alpha d^beta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentPair {
    alpha: Vec<u32>,
    beta: Vec<u32>,
}

impl ExponentPair {
    pub fn new(alpha: Vec<u32>, beta: Vec<u32>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::DimensionMismatch(format!(
                "alpha has {} entries, beta has {}",
                alpha.len(),
                beta.len()
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn one(n: usize) -> Self {
        Self { alpha: vec![0; n], beta: vec![0; n] }
    }

    pub fn x(n: usize, k: usize) -> Self {
        let mut e = Self::one(n);
        e.alpha[k] = 1;
        e
    }

    pub fn d(n: usize, k: usize) -> Self {
        let mut e = Self::one(n);
        e.beta[k] = 1;
        e
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn beta(&self) -> &[u32] {
        &self.beta
    }

    pub fn is_one(&self) -> bool {
        self.alpha.iter().chain(&self.beta).all(|&e| e == 0)
    }

    pub fn ord(&self) -> u32 {
        self.alpha.iter().chain(&self.beta).sum()
    }

    /// Sum of the x- and d-exponents of the variables in block `j`.
    pub fn block_ord(&self, partition: &Partition, j: usize) -> u32 {
        partition.block_range(j).map(|k| self.alpha[k] + self.beta[k]).sum()
    }

    pub fn block_ords(&self, partition: &Partition) -> Vec<u32> {
        (0..partition.p()).map(|j| self.block_ord(partition, j)).collect()
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.n() == other.n()
            && self.alpha.iter().zip(&other.alpha).all(|(a, b)| a <= b)
            && self.beta.iter().zip(&other.beta).all(|(a, b)| a <= b)
    }

    /// The monomial `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(Self {
            alpha: other.alpha.iter().zip(&self.alpha).map(|(a, b)| a - b).collect(),
            beta: other.beta.iter().zip(&self.beta).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self {
            alpha: self.alpha.iter().zip(&other.alpha).map(|(a, b)| *a.max(b)).collect(),
            beta: self.beta.iter().zip(&other.beta).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    /// Componentwise sum of exponents (the leading monomial of a product).
    pub fn shifted(&self, other: &Self) -> Self {
        Self {
            alpha: self.alpha.iter().zip(&other.alpha).map(|(a, b)| a + b).collect(),
            beta: self.beta.iter().zip(&other.beta).map(|(a, b)| a + b).collect(),
        }
    }

    pub(crate) fn check_n(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::DimensionMismatch(format!("monomial over {} variables, expected {}", self.n(), n)));
        }
        Ok(())
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (k, &e) in self.alpha.iter().enumerate() {
            push_power(&mut factors, "x", k, e);
        }
        for (k, &e) in self.beta.iter().enumerate() {
            push_power(&mut factors, "d", k, e);
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

fn push_power(out: &mut Vec<String>, sym: &str, k: usize, e: u32) {
    match e {
        0 => {}
        1 => out.push(format!("{}{}", sym, k + 1)),
        _ => out.push(format!("{}{}^{}", sym, k + 1, e)),
    }
}

/// Total order and block orders of a monomial.
pub fn monomial_orders(theta: &ExponentPair, partition: &Partition) -> Result<(u32, Vec<u32>)> {
    theta.check_n(partition.n())?;
    Ok((theta.ord(), theta.block_ords(partition)))
}

/// An element of the Weyl algebra `A_n(Q)`, stored as a sparse map from
/// normal-form monomials to nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<ExponentPair, BigRational>,
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(ExponentPair::one(n), BigRational::one())
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        Self::monomial(ExponentPair::one(n), c)
    }

    pub fn monomial(theta: ExponentPair, c: BigRational) -> Self {
        let n = theta.n();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(theta, c);
        }
        Self { n, terms }
    }

    pub fn x(n: usize, k: usize) -> Self {
        Self::monomial(ExponentPair::x(n, k), BigRational::one())
    }

    pub fn d(n: usize, k: usize) -> Self {
        Self::monomial(ExponentPair::d(n, k), BigRational::one())
    }

    /// Builds an element from (monomial, coefficient) pairs; repeated
    /// monomials are summed and zero sums dropped.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentPair, BigRational)>,
    {
        let mut out = Self::zero(n);
        for (theta, c) in terms {
            theta.check_n(n)?;
            out.add_term(theta, c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
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

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentPair, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, theta: &ExponentPair) -> BigRational {
        self.terms.get(theta).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, theta: ExponentPair, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(theta) {
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
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("operands over {} and {} variables", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (theta, c) in &other.terms {
            out.add_term(theta.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self { n: self.n, terms: self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect() }
    }

    /// Noncommutative product `self * other` in normal form.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.n);
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                let c = c1 * c2;
                for (theta, k) in monomial_product(t1, t2) {
                    out.add_term(theta, &c * BigRational::from_integer(k));
                }
            }
        }
        Ok(out)
    }

    /// Total order and block orders; the zero element has none.
    pub fn orders(&self, partition: &Partition) -> Result<(u32, Vec<u32>)> {
        if self.n != partition.n() {
            return Err(Error::DimensionMismatch(format!(
                "element over {} variables, partition over {}",
                self.n,
                partition.n()
            )));
        }
        if self.is_zero() {
            return Err(Error::ZeroElement("order"));
        }
        let ord = self.terms.keys().map(|t| t.ord()).max().unwrap_or(0);
        let block = (0..partition.p())
            .map(|j| self.terms.keys().map(|t| t.block_ord(partition, j)).max().unwrap_or(0))
            .collect();
        Ok((ord, block))
    }
}

/// Weyl sum of two elements.
pub fn weyl_add(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    a.add(b)
}

pub fn weyl_scale(c: &BigRational, a: &WeylElement) -> WeylElement {
    a.scale(c)
}

pub fn weyl_mul(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    a.mul(b)
}

pub fn element_orders(d: &WeylElement, partition: &Partition) -> Result<(u32, Vec<u32>)> {
    d.orders(partition)
}

/// Normal-ordered expansion of `(x^a d^b)(x^c d^e)`.
///
/// Per variable, `d^b x^c = sum_k C(b,k) C(c,k) k! x^(c-k) d^(b-k)`; the
/// variables are independent, so the full product is the Cartesian product
/// of the per-variable expansions.
pub(crate) fn monomial_product(left: &ExponentPair, right: &ExponentPair) -> Vec<(ExponentPair, BigInt)> {
    let n = left.n();
    let mut acc: Vec<(Vec<u32>, Vec<u32>, BigInt)> =
        vec![(Vec::with_capacity(n), Vec::with_capacity(n), BigInt::one())];
    for i in 0..n {
        let b = left.beta[i];
        let c = right.alpha[i];
        let kmax = b.min(c);
        let mut next = Vec::with_capacity(acc.len() * (kmax as usize + 1));
        for (al, be, coef) in &acc {
            for k in 0..=kmax {
                let w = binomial_u(b, k) * binomial_u(c, k) * factorial_u(k);
                let mut al2 = al.clone();
                al2.push(left.alpha[i] + c - k);
                let mut be2 = be.clone();
                be2.push(b - k + right.beta[i]);
                next.push((al2, be2, coef * w));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(alpha, beta, c)| (ExponentPair { alpha, beta }, c)).collect()
}

pub(crate) fn binomial_u(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    for i in 0..k {
        num = num * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    num
}

pub(crate) fn factorial_u(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Formats a rational as `num/den`, or just `num` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn write_linear_combination<'a, T, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    T: fmt::Display + 'a,
    I: Iterator<Item = (T, &'a BigRational)>,
{
    let mut first = true;
    for (t, c) in terms {
        let label = t.to_string();
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        if abs.is_one() {
            write!(f, "{}", label)?;
        } else if label == "1" {
            write!(f, "{}", format_rational(&abs))?;
        } else {
            write!(f, "{}*{}", format_rational(&abs), label)?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, self.terms.iter().rev())
    }
}
