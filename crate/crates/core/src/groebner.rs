//! Reduction with respect to a sequence of term orders, S-polynomials, and
//! the staged completion that yields Groebner bases for `<_1, .., <_p`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::module::{rho_for, term_compare, term_divides, term_lcm, GammaTerm, ModuleElement, OrderId, Term};
use crate::weyl::{ExponentPair, Partition, WeylElement};

/// A sequence of distinct orders `(<_k, <_{i_1}, .., <_{i_l})`: reduction
/// eliminates multiples of `<_k`-leaders while the tail orders bound growth.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderSequence {
    head: OrderId,
    tail: Vec<OrderId>,
}

impl OrderSequence {
    pub fn new(head: OrderId, tail: Vec<OrderId>, p: usize) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for o in std::iter::once(head).chain(tail.iter().copied()) {
            if o.0 >= p {
                return Err(Error::InvalidInput(format!("{} with only {} orders", o, p)));
            }
            if !seen.insert(o) {
                return Err(Error::InvalidInput(format!("{} repeated in order sequence", o)));
            }
        }
        Ok(Self { head, tail })
    }

    /// `(<_r, <_{r+1}, .., <_p)` for the 0-based stage `r`.
    pub fn suffix(r: usize, p: usize) -> Self {
        Self { head: OrderId(r), tail: (r + 1..p).map(OrderId).collect() }
    }

    /// `(<_1, .., <_p)`.
    pub fn full(p: usize) -> Self {
        Self::suffix(0, p)
    }

    pub fn head(&self) -> OrderId {
        self.head
    }

    pub fn tail(&self) -> &[OrderId] {
        &self.tail
    }
}

impl fmt::Display for OrderSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.head)?;
        for o in &self.tail {
            write!(f, ", {}", o)?;
        }
        write!(f, ")")
    }
}

/// What reduction needs to know about a divisor.
struct Reducer<'a> {
    elem: &'a ModuleElement,
    head: Term,
    lc: BigRational,
    /// `ord_i u_g^(i)` for every order `i`.
    max_ords: Vec<u32>,
}

impl<'a> Reducer<'a> {
    fn new(elem: &'a ModuleElement, seq: &OrderSequence, partition: &Partition) -> Result<Self> {
        let (head, lc) = elem
            .leader(seq.head, partition)
            .map_err(|_| Error::InvalidInput("zero element among the divisors".into()))?;
        let max_ords = elem.block_ords(partition).unwrap_or_default();
        Ok(Self { elem, head, lc, max_ords })
    }

    /// Quotient `w / u_g^(k)` when `w` may be rewritten by this divisor,
    /// given the tail-order bounds `f_ords` of the element being reduced.
    fn eligible(&self, w: &Term, f_ords: &[u32], seq: &OrderSequence, partition: &Partition) -> Option<ExponentPair> {
        let theta = term_divides(&self.head, w)?;
        let ok = seq.tail.iter().all(|&i| theta.block_ord(partition, i.0) + self.max_ords[i.0] <= f_ords[i.0]);
        ok.then_some(theta)
    }
}

fn check_compatible(f: &ModuleElement, g: &ModuleElement) -> Result<()> {
    if f.n() != g.n() || f.m() != g.m() {
        return Err(Error::DimensionMismatch(format!("elements of A_{}^{} and A_{}^{}", f.n(), f.m(), g.n(), g.m())));
    }
    Ok(())
}

/// Whether `f` contains no multiple of the head leader of `g` that the
/// sequence allows to be eliminated.
pub fn is_reduced(f: &ModuleElement, g: &ModuleElement, seq: &OrderSequence, partition: &Partition) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::ZeroElement("leader"));
    }
    check_compatible(f, g)?;
    let Some(f_ords) = f.block_ords(partition) else {
        return Ok(true);
    };
    let r = Reducer::new(g, seq, partition)?;
    Ok(f.terms().all(|(w, _)| r.eligible(w, &f_ords, seq, partition).is_none()))
}

/// Result of [`multi_reduce`]: `f - remainder = sum quotients[i] * G[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub remainder: ModuleElement,
    pub quotients: Vec<WeylElement>,
    pub steps: usize,
}

/// Reduces `f` modulo `divisors` with respect to `seq`.
///
/// Each step rewrites the greatest (under the head order) term that some
/// divisor may eliminate, using the divisor with the greatest head leader
/// and, among equal leaders, the smallest index.
pub fn multi_reduce(
    f: &ModuleElement,
    divisors: &[ModuleElement],
    seq: &OrderSequence,
    partition: &Partition,
) -> Result<Reduction> {
    for g in divisors {
        check_compatible(f, g)?;
        if g.is_zero() {
            return Err(Error::InvalidInput("zero element among the divisors".into()));
        }
    }
    let reducers = divisors.iter().map(|g| Reducer::new(g, seq, partition)).collect::<Result<Vec<_>>>()?;
    let mut quotients = vec![WeylElement::zero(f.n()); divisors.len()];
    let mut g = f.clone();
    let mut steps = 0;
    while let Some(f_ords) = g.block_ords(partition) {
        let mut terms: Vec<&Term> = g.terms().map(|(t, _)| t).collect();
        terms.sort_by(|a, b| term_compare(seq.head, b, a, partition));
        let mut choice: Option<(Term, usize, ExponentPair)> = None;
        for w in terms {
            for (idx, r) in reducers.iter().enumerate() {
                if let Some(theta) = r.eligible(w, &f_ords, seq, partition) {
                    let better = match &choice {
                        None => true,
                        Some((_, best, _)) => {
                            term_compare(seq.head, &r.head, &reducers[*best].head, partition) == Ordering::Greater
                        }
                    };
                    if better {
                        choice = Some((w.clone(), idx, theta));
                    }
                }
            }
            if choice.is_some() {
                break;
            }
        }
        let Some((z, idx, theta)) = choice else { break };
        let c = g.coeff(&z) / &reducers[idx].lc;
        g.sub_scaled_multiple(&c, &theta, reducers[idx].elem);
        debug_assert!(!g.contains(&z));
        quotients[idx].add_term(theta, c);
        steps += 1;
    }
    Ok(Reduction { remainder: g, quotients, steps })
}

/// The r-th S-polynomial; zero when the r-leaders sit on different generators.
pub fn s_poly(f: &ModuleElement, g: &ModuleElement, r: OrderId, partition: &Partition) -> Result<ModuleElement> {
    check_compatible(f, g)?;
    let (uf, cf) = f.leader(r, partition)?;
    let (ug, cg) = g.leader(r, partition)?;
    let Some(l) = term_lcm(&uf, &ug) else {
        return Ok(ModuleElement::zero(f.n(), f.m()));
    };
    let tf = term_divides(&uf, &l).expect("lcm is a multiple");
    let tg = term_divides(&ug, &l).expect("lcm is a multiple");
    let mut out = ModuleElement::zero(f.n(), f.m());
    out.sub_scaled_multiple(&-(BigRational::one() / cf), &tf, f);
    out.sub_scaled_multiple(&(BigRational::one() / cg), &tg, g);
    Ok(out)
}

/// A finite generating set together with its cached leaders and the stages
/// `r` for which it has been certified as a Groebner basis with respect to
/// `(<_r, .., <_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    partition: Partition,
    n: usize,
    m: usize,
    elements: Vec<ModuleElement>,
    leaders: Vec<Vec<(Term, BigRational)>>,
    certified: Vec<bool>,
}

impl GroebnerBasis {
    /// Wraps elements without certifying anything.
    pub fn from_elements(elements: Vec<ModuleElement>, n: usize, m: usize, partition: &Partition) -> Result<Self> {
        if partition.n() != n {
            return Err(Error::DimensionMismatch(format!("partition over {} variables for A_{}", partition.n(), n)));
        }
        let mut out = Self {
            partition: partition.clone(),
            n,
            m,
            elements: Vec::new(),
            leaders: Vec::new(),
            certified: vec![false; partition.p()],
        };
        for e in elements {
            if e.n() != n || e.m() != m {
                return Err(Error::DimensionMismatch(format!(
                    "element of A_{}^{} in a basis of A_{}^{}",
                    e.n(),
                    e.m(),
                    n,
                    m
                )));
            }
            if e.is_zero() {
                return Err(Error::InvalidInput("zero element in a basis".into()));
            }
            out.push(e);
        }
        Ok(out)
    }

    fn push(&mut self, e: ModuleElement) {
        let leaders =
            (0..self.partition.p()).map(|i| e.leader(OrderId(i), &self.partition).expect("nonzero")).collect();
        self.leaders.push(leaders);
        self.elements.push(e);
        self.certified.iter_mut().for_each(|c| *c = false);
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    /// `u_{g_j}^{(i)}` and its coefficient.
    pub fn leader(&self, j: usize, order: OrderId) -> &(Term, BigRational) {
        &self.leaders[j][order.0]
    }

    pub fn rho(&self, j: usize) -> GammaTerm {
        let p = self.partition.p();
        let head = &self.leaders[j][0].0;
        let d = (1..p)
            .map(|i| self.leaders[j][i].0.block_ord(&self.partition, i) - head.block_ord(&self.partition, i))
            .collect();
        GammaTerm { d, head: head.clone() }
    }

    /// Whether the basis is certified for `(<_r, .., <_p)` (0-based `r`).
    pub fn is_certified(&self, r: usize) -> bool {
        self.certified.get(r).copied().unwrap_or(false)
    }

    pub fn certified_stages(&self) -> Vec<usize> {
        (0..self.certified.len()).filter(|&r| self.certified[r]).collect()
    }

    /// Recomputes every stage certificate from scratch.
    pub fn certify(&mut self) -> Result<()> {
        for r in (0..self.partition.p()).rev() {
            self.certified[r] = pairs_reduce_to_zero(&self.elements, r, &self.partition)?;
        }
        Ok(())
    }
}

fn pairs_reduce_to_zero(elements: &[ModuleElement], r: usize, partition: &Partition) -> Result<bool> {
    let seq = OrderSequence::suffix(r, partition.p());
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            let s = s_poly(&elements[i], &elements[j], OrderId(r), partition)?;
            if s.is_zero() {
                continue;
            }
            if !multi_reduce(&s, elements, &seq, partition)?.remainder.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether every `S_r(g_i, g_j)` reduces to zero under `(<_r, .., <_p)`.
pub fn is_groebner(basis: &GroebnerBasis, r: OrderId) -> Result<bool> {
    if r.0 >= basis.partition.p() {
        return Err(Error::InvalidInput(format!("{} with only {} orders", r, basis.partition.p())));
    }
    pairs_reduce_to_zero(&basis.elements, r.0, &basis.partition)
}

/// Completes `generators` to a Groebner basis certified for every suffix
/// `(<_r, .., <_p)`.
///
/// Stages run from `<_p` down to `<_1`. Pairs are always taken from the
/// highest stage that still has work; a nonzero remainder found at stage `r`
/// is appended and its pairs are queued for every stage.
pub fn complete_basis(generators: &[ModuleElement], partition: &Partition) -> Result<GroebnerBasis> {
    complete_basis_with_limits(generators, partition, Limits::default())
}

pub fn complete_basis_with_limits(
    generators: &[ModuleElement],
    partition: &Partition,
    limits: Limits,
) -> Result<GroebnerBasis> {
    let first = generators.first().ok_or_else(|| {
        Error::InvalidInput("no generators; use GroebnerBasis::from_elements for the empty basis".into())
    })?;
    let (n, m) = (first.n(), first.m());
    let nonzero: Vec<ModuleElement> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut basis = GroebnerBasis::from_elements(nonzero, n, m, partition)?;
    for g in generators {
        check_compatible(first, g)?;
    }
    complete_in_place_with_limits(&mut basis, limits)?;
    Ok(basis)
}

/// Default cap on the number of basis elements created by completion.
pub const DEFAULT_MAX_ELEMENTS: usize = 400;

/// Default cap on the bit length of a coefficient numerator or denominator
/// produced by completion.
pub const DEFAULT_MAX_COEFF_BITS: u64 = 4096;

/// Resource caps for completion. Exceeding either one fails with
/// [`Error::BudgetExceeded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_elements: usize,
    pub max_coeff_bits: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_elements: DEFAULT_MAX_ELEMENTS, max_coeff_bits: DEFAULT_MAX_COEFF_BITS }
    }
}

/// Completion of an already wrapped (possibly empty) set of elements.
pub fn complete_in_place(basis: &mut GroebnerBasis) -> Result<()> {
    complete_in_place_with_limits(basis, Limits::default())
}

/// As [`complete_in_place`], failing once `limits` are exceeded.
pub fn complete_in_place_with_limits(basis: &mut GroebnerBasis, limits: Limits) -> Result<()> {
    complete_core(basis, limits, None)
}

/// How an element arose during completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// The given (nonzero) generator.
    Generator(usize),
    /// `scale * (left * G[i] + right * G[j] - sum_l quotients[l] * G[l])`,
    /// all indices referring to earlier elements.
    Step { i: usize, j: usize, left: WeylElement, right: WeylElement, quotients: Vec<WeylElement>, scale: BigRational },
}

/// Every element produced by a completion with the derivation of each.
/// `derivations[k]` explains `elements[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub elements: Vec<ModuleElement>,
    pub derivations: Vec<Derivation>,
}

/// As [`complete_basis_with_limits`], also recording how every element was
/// obtained from `generators` and earlier elements.
pub fn complete_with_derivations(
    generators: &[ModuleElement],
    partition: &Partition,
    limits: Limits,
) -> Result<(GroebnerBasis, Trace)> {
    let first = generators.first().ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let (n, m) = (first.n(), first.m());
    for g in generators {
        check_compatible(first, g)?;
    }
    let mut derivations = Vec::new();
    let mut nonzero = Vec::new();
    for (j, g) in generators.iter().enumerate() {
        if !g.is_zero() {
            derivations.push(Derivation::Generator(j));
            nonzero.push(g.clone());
        }
    }
    let mut basis = GroebnerBasis::from_elements(nonzero, n, m, partition)?;
    complete_core(&mut basis, limits, Some(&mut derivations))?;
    let elements = basis.elements.clone();
    Ok((basis, Trace { elements, derivations }))
}

/// Normal strategy: the pair whose leader lcm is smallest under `order`.
fn select_pair(
    leaders: &[Vec<(Term, BigRational)>],
    pending: &mut BTreeSet<(usize, usize)>,
    order: OrderId,
    partition: &Partition,
) -> (usize, usize) {
    let lcm_of = |&(i, j): &(usize, usize)| term_lcm(&leaders[i][order.0].0, &leaders[j][order.0].0);
    let mut best: Option<((usize, usize), Term)> = None;
    for pair in pending.iter() {
        let Some(l) = lcm_of(pair) else { return pending.take(&pair.clone()).expect("present") };
        if best.as_ref().is_none_or(|(_, b)| term_compare(order, &l, b, partition) == Ordering::Less) {
            best = Some((*pair, l));
        }
    }
    let (pair, _) = best.expect("nonempty");
    pending.remove(&pair);
    pair
}

/// Largest bit length of a numerator or denominator in `f`.
fn coeff_bits(f: &ModuleElement) -> u64 {
    f.terms().map(|(_, c)| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0)
}

/// Staged completion: pairs of every new element are queued for every
/// stage and processed highest stage first. The result is re-checked
/// against the pair criterion before it replaces `basis`.
fn complete_core(basis: &mut GroebnerBasis, limits: Limits, mut trace: Option<&mut Vec<Derivation>>) -> Result<()> {
    let partition = basis.partition.clone();
    let p = partition.p();
    let mut all = GroebnerBasis::from_elements(Vec::new(), basis.n, basis.m, &partition)?;
    let mut pending = vec![BTreeSet::new(); p];
    let insert = |all: &mut GroebnerBasis, pending: &mut Vec<BTreeSet<(usize, usize)>>, h: ModuleElement| {
        let new = all.len();
        for stage in pending.iter_mut() {
            stage.extend((0..new).map(|k| (k, new)));
        }
        all.push(h);
    };
    for e in &basis.elements {
        insert(&mut all, &mut pending, e.clone());
    }
    while let Some(r) = (0..p).rev().find(|&r| !pending[r].is_empty()) {
        let (i, j) = select_pair(&all.leaders, &mut pending[r], OrderId(r), &partition);
        let s = s_poly(&all.elements[i], &all.elements[j], OrderId(r), &partition)?;
        if s.is_zero() {
            continue;
        }
        let red = multi_reduce(&s, &all.elements, &OrderSequence::suffix(r, p), &partition)?;
        if red.remainder.is_zero() {
            continue;
        }
        if all.len() >= limits.max_elements {
            let max = limits.max_elements;
            return Err(Error::BudgetExceeded(format!("completion needs more than {max} elements")));
        }
        let (_, lc) = red.remainder.leader(OrderId(r), &partition)?;
        let scale = BigRational::one() / &lc;
        let h = red.remainder.scale(&scale);
        if coeff_bits(&h) > limits.max_coeff_bits {
            let max = limits.max_coeff_bits;
            return Err(Error::BudgetExceeded(format!("completion coefficients exceed {max} bits")));
        }
        if let Some(trace) = trace.as_deref_mut() {
            let (uf, cf) = &all.leaders[i][r];
            let (ug, cg) = &all.leaders[j][r];
            let l = term_lcm(uf, ug).expect("nonzero S-polynomial");
            let tf = term_divides(uf, &l).expect("lcm is a multiple");
            let tg = term_divides(ug, &l).expect("lcm is a multiple");
            trace.push(Derivation::Step {
                i,
                j,
                left: WeylElement::monomial(tf, BigRational::one() / cf),
                right: WeylElement::monomial(tg, -(BigRational::one() / cg)),
                quotients: red.quotients,
                scale,
            });
        }
        insert(&mut all, &mut pending, h);
    }
    all.certify()?;
    if let Some(r) = (0..p).find(|&r| !all.certified[r]) {
        return Err(Error::Verification(format!("completed basis fails the pair criterion at stage {}", r + 1)));
    }
    *basis = all;
    Ok(())
}

/// Membership test in the module generated by a certified basis.
pub fn membership(f: &ModuleElement, basis: &GroebnerBasis) -> Result<bool> {
    if !basis.is_certified(0) {
        return Err(Error::Uncertified("membership needs a basis for (<_1, .., <_p)".into()));
    }
    if f.is_zero() {
        return Ok(true);
    }
    check_dims(f, basis)?;
    let seq = OrderSequence::full(basis.partition.p());
    Ok(multi_reduce(f, &basis.elements, &seq, &basis.partition)?.remainder.is_zero())
}

fn check_dims(f: &ModuleElement, basis: &GroebnerBasis) -> Result<()> {
    if f.n() != basis.n || f.m() != basis.m {
        return Err(Error::DimensionMismatch(format!(
            "element of A_{}^{} tested against a basis in A_{}^{}",
            f.n(),
            f.m(),
            basis.n,
            basis.m
        )));
    }
    Ok(())
}

/// rho-image of `f` for the full sequence; re-exported for convenience.
pub fn rho_full(f: &ModuleElement, partition: &Partition) -> Result<GammaTerm> {
    let tail: Vec<OrderId> = (1..partition.p()).map(OrderId).collect();
    rho_for(f, partition, OrderId(0), &tail)
}

/// Whether `f - remainder - sum Q_i g_i` vanishes, recomputed through the
/// module action.
pub fn check_reduction_identity(f: &ModuleElement, divisors: &[ModuleElement], red: &Reduction) -> Result<bool> {
    let mut acc = f.sub(&red.remainder)?;
    for (q, g) in red.quotients.iter().zip(divisors) {
        acc = acc.sub(&crate::module::act(q, g)?)?;
    }
    Ok(acc.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{gamma_divides, rho};
    use crate::testutil::{me, running_example};

    fn p11() -> Partition {
        Partition::new(vec![1, 1]).unwrap()
    }

    #[test]
    fn reducedness_in_running_example() {
        let p = p11();
        let (_, h2, h3) = running_example();
        let both = OrderSequence::full(2);
        let first = OrderSequence::new(OrderId(0), vec![], 2).unwrap();
        assert!(is_reduced(&h2, &h3, &both, &p).unwrap());
        assert!(!is_reduced(&h2, &h3, &first, &p).unwrap());
        assert!(is_reduced(&ModuleElement::zero(2, 2), &h3, &both, &p).unwrap());
        assert!(is_reduced(&h2, &ModuleElement::zero(2, 2), &both, &p).is_err());
    }

    #[test]
    fn order_sequence_validation() {
        assert!(OrderSequence::new(OrderId(0), vec![OrderId(0)], 2).is_err());
        assert!(OrderSequence::new(OrderId(0), vec![OrderId(2)], 2).is_err());
        assert_eq!(OrderSequence::suffix(1, 3).to_string(), "(<_2, <_3)");
    }

    #[test]
    fn s_polynomials_of_running_example() {
        let p = p11();
        let (h1, h2, h3) = running_example();
        assert_eq!(s_poly(&h1, &h2, OrderId(1), &p).unwrap(), h3);
        assert!(s_poly(&h1, &h3, OrderId(0), &p).unwrap().is_zero());
        assert!(s_poly(&h2, &h3, OrderId(0), &p).unwrap().is_zero());
        assert!(s_poly(&h1, &h1, OrderId(0), &p).unwrap().is_zero());
        assert!(s_poly(&h1, &h1, OrderId(1), &p).unwrap().is_zero());
        assert_eq!(s_poly(&h1, &h2, OrderId(0), &p).unwrap(), h3);
    }

    #[test]
    fn single_step_reductions() {
        let p = p11();
        let (h1, h2, h3) = running_example();
        let s = s_poly(&h1, &h2, OrderId(1), &p).unwrap();
        let only2 = OrderSequence::new(OrderId(1), vec![], 2).unwrap();
        let red = multi_reduce(&s, &[h1.clone(), h2.clone()], &only2, &p).unwrap();
        let expected = me(2, &[(1, 0, &[0, 1], &[1, 1]), (1, 0, &[1, 0], &[2, 0])]);
        assert_eq!(red.remainder, expected);
        assert_eq!(red.steps, 1);
        assert!(red.quotients[0].is_zero());
        assert_eq!(red.quotients[1], WeylElement::constant(2, BigRational::from_integer((-1).into())));
        assert!(check_reduction_identity(&s, &[h1.clone(), h2.clone()], &red).unwrap());

        let red = multi_reduce(&expected, std::slice::from_ref(&h2), &OrderSequence::full(2), &p).unwrap();
        assert_eq!(red.remainder, h3);

        let red = multi_reduce(&h3, &[h1.clone(), h2.clone()], &OrderSequence::full(2), &p).unwrap();
        assert_eq!(red.remainder, h3);
        assert!(red.quotients.iter().all(|q| q.is_zero()));
        assert!(multi_reduce(&h3, &[ModuleElement::zero(2, 2)], &only2, &p).is_err());
    }

    #[test]
    fn completion_of_running_example() {
        let p = p11();
        let (h1, h2, h3) = running_example();
        let gb = complete_basis(&[h1.clone(), h2.clone()], &p).unwrap();
        assert!(gb.is_certified(0) && gb.is_certified(1));
        let ours: Vec<GammaTerm> = (0..gb.len()).map(|j| gb.rho(j)).collect();
        let listed: Vec<GammaTerm> = [&h1, &h2, &h3].iter().map(|h| rho(h, &p).unwrap()).collect();
        for a in &ours {
            assert!(listed.iter().any(|b| gamma_divides(b, a)), "{} not covered", a);
        }
        for b in &listed {
            assert!(ours.iter().any(|a| gamma_divides(a, b)), "{} not covered", b);
        }
        assert!(membership(&h3, &gb).unwrap());
        assert!(membership(&ModuleElement::zero(2, 2), &gb).unwrap());
        assert!(!membership(&ModuleElement::unit(2, 2, 0).unwrap(), &gb).unwrap());
        assert!(is_groebner(&gb, OrderId(0)).unwrap());

        let pair = GroebnerBasis::from_elements(vec![h1, h2], 2, 2, &p).unwrap();
        assert!(!is_groebner(&pair, OrderId(1)).unwrap());
        assert!(membership(&h3, &pair).is_err());
    }

    #[test]
    fn derivations_replay() {
        use crate::module::act;
        let p = p11();
        let (h1, h2, _) = running_example();
        let gens = [h1, ModuleElement::zero(2, 2), h2];
        let (gb, trace) = complete_with_derivations(&gens, &p, Limits::default()).unwrap();
        assert_eq!(gb, complete_basis(&gens, &p).unwrap());
        let g = &trace.elements;
        assert_eq!(trace.derivations.len(), g.len());
        assert!(gb.elements().iter().all(|e| g.contains(e)));
        assert_eq!(trace.derivations[..2], [Derivation::Generator(0), Derivation::Generator(2)]);
        for (k, d) in trace.derivations.iter().enumerate().skip(2) {
            let acc = match d {
                Derivation::Step { i, j, left, right, quotients, scale } => {
                    let mut acc = act(left, &g[*i]).unwrap().add(&act(right, &g[*j]).unwrap()).unwrap();
                    for (q, e) in quotients.iter().zip(g) {
                        acc = acc.sub(&act(q, e).unwrap()).unwrap();
                    }
                    acc.scale(scale)
                }
                Derivation::Generator(_) => panic!("{:?}", d),
            };
            assert_eq!(acc, g[k]);
        }
    }

    #[test]
    fn singleton_and_disjoint_leaders() {
        let p = p11();
        let g = me(1, &[(1, 0, &[1, 0], &[0, 1]), (1, 0, &[0, 2], &[1, 0])]);
        let gb = complete_basis(std::slice::from_ref(&g), &p).unwrap();
        assert_eq!(gb.elements(), std::slice::from_ref(&g));
        for r in 0..2 {
            assert!(is_groebner(&gb, OrderId(r)).unwrap());
        }
        let d1 = me(1, &[(1, 0, &[0, 0], &[1, 0])]);
        let d2 = me(1, &[(1, 0, &[0, 0], &[0, 1])]);
        let gb = complete_basis(&[d1.clone(), d2.clone()], &p).unwrap();
        assert_eq!(gb.elements(), &[d1, d2]);
    }
}
