//! Brute-force oracles used to cross-check the engine: word rewriting for
//! Weyl products, direct enumeration of `V_A`, and a rank computation of
//! `dim_K M_r` that does not use Groebner bases.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dimension::Presentation;
use crate::error::{Error, Result};
use crate::groebner::{Derivation, Trace};
use crate::module::{act, ModuleElement, Term};
use crate::numerical::IndexSet;
use crate::weyl::{ExponentPair, Partition, WeylElement};

/// Default cap on `ord(a) + ord(b)` for [`naive_weyl_mul`].
pub const NAIVE_MAX_DEGREE: u32 = 8;
const NAIVE_STEP_BUDGET: usize = 5_000_000;

/// A letter of a word in the free algebra: `x_k` sorts before every `d_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Letter {
    X(usize),
    D(usize),
}

fn word_of(theta: &ExponentPair) -> Vec<Letter> {
    let mut w = Vec::new();
    for (k, &a) in theta.alpha().iter().enumerate() {
        w.extend(std::iter::repeat_n(Letter::X(k), a as usize));
    }
    for (k, &b) in theta.beta().iter().enumerate() {
        w.extend(std::iter::repeat_n(Letter::D(k), b as usize));
    }
    w
}

fn normal_word_to_pair(n: usize, w: &[Letter]) -> ExponentPair {
    let mut alpha = vec![0u32; n];
    let mut beta = vec![0u32; n];
    for l in w {
        match *l {
            Letter::X(k) => alpha[k] += 1,
            Letter::D(k) => beta[k] += 1,
        }
    }
    ExponentPair::new(alpha, beta).expect("same n")
}

/// Product by rewriting words one adjacent pair at a time until every word
/// is normally ordered.
pub fn naive_weyl_mul(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    naive_weyl_mul_with_limit(a, b, NAIVE_MAX_DEGREE)
}

pub fn naive_weyl_mul_with_limit(a: &WeylElement, b: &WeylElement, max_degree: u32) -> Result<WeylElement> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!("A_{} times A_{}", a.n(), b.n())));
    }
    let n = a.n();
    let deg = |w: &WeylElement| w.terms().map(|(t, _)| t.ord()).max().unwrap_or(0);
    if deg(a) + deg(b) > max_degree {
        return Err(Error::BudgetExceeded(format!(
            "total degree {} exceeds the limit {}",
            deg(a) + deg(b),
            max_degree
        )));
    }
    let mut pending: BTreeMap<Vec<Letter>, BigRational> = BTreeMap::new();
    for (s, c) in a.terms() {
        for (t, d) in b.terms() {
            let mut w = word_of(s);
            w.extend(word_of(t));
            *pending.entry(w).or_insert_with(BigRational::zero) += c * d;
        }
    }
    let mut out = WeylElement::zero(n);
    let mut steps = 0usize;
    while let Some((w, c)) = pending.pop_first() {
        steps += 1;
        if steps > NAIVE_STEP_BUDGET {
            return Err(Error::BudgetExceeded(format!("more than {} rewriting steps", NAIVE_STEP_BUDGET)));
        }
        if c.is_zero() {
            continue;
        }
        let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
            out.add_term(normal_word_to_pair(n, &w), c);
            continue;
        };
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        if let (Letter::D(k), Letter::X(l)) = (w[i], w[i + 1]) {
            if k == l {
                let mut dropped = w.clone();
                dropped.drain(i..i + 2);
                *pending.entry(dropped).or_insert_with(BigRational::zero) += &c;
            }
        }
        *pending.entry(swapped).or_insert_with(BigRational::zero) += c;
    }
    Ok(out)
}

/// `Card V_A(r)`: points of `N^q` with block sums at most `r` that lie above
/// no element of `A`.
pub fn enum_v_a(set: &IndexSet, r: &[i64]) -> Result<u64> {
    let blocks = set.blocks();
    if r.len() != blocks.p() {
        return Err(Error::DimensionMismatch(format!("{} radii for {} blocks", r.len(), blocks.p())));
    }
    if r.iter().any(|&x| x < 0) {
        return Ok(0);
    }
    let q = set.q();
    let block_of: Vec<usize> = (0..q).map(|h| blocks.block_of(h)).collect();
    let mut budget: Vec<i64> = r.to_vec();
    let mut v = vec![0u32; q];
    let mut count = 0u64;
    fn rec(
        h: usize,
        v: &mut Vec<u32>,
        budget: &mut Vec<i64>,
        block_of: &[usize],
        points: &[Vec<u32>],
        count: &mut u64,
    ) {
        if h == v.len() {
            if !points.iter().any(|a| a.iter().zip(v.iter()).all(|(x, y)| x <= y)) {
                *count += 1;
            }
            return;
        }
        let j = block_of[h];
        let left = budget[j];
        for x in 0..=left {
            v[h] = x as u32;
            budget[j] = left - x;
            rec(h + 1, v, budget, block_of, points, count);
        }
        budget[j] = left;
        v[h] = 0;
    }
    rec(0, &mut v, &mut budget, &block_of, set.points(), &mut count);
    Ok(count)
}

/// All monomials `theta` with `ord_i theta <= bounds[i]` for every block.
pub fn monomials_within(partition: &Partition, bounds: &[i64]) -> Vec<ExponentPair> {
    let n = partition.n();
    if bounds.iter().any(|&b| b < 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut alpha = vec![0u32; n];
    let mut beta = vec![0u32; n];
    let mut budget = bounds.to_vec();
    fn rec(
        k: usize,
        partition: &Partition,
        alpha: &mut Vec<u32>,
        beta: &mut Vec<u32>,
        budget: &mut Vec<i64>,
        out: &mut Vec<ExponentPair>,
    ) {
        if k == alpha.len() {
            out.push(ExponentPair::new(alpha.clone(), beta.clone()).expect("same n"));
            return;
        }
        let j = partition.block_of(k);
        let left = budget[j];
        for a in 0..=left {
            for b in 0..=left - a {
                alpha[k] = a as u32;
                beta[k] = b as u32;
                budget[j] = left - a - b;
                rec(k + 1, partition, alpha, beta, budget, out);
            }
        }
        budget[j] = left;
        alpha[k] = 0;
        beta[k] = 0;
    }
    rec(0, partition, &mut alpha, &mut beta, &mut budget, &mut out);
    out
}

/// Input of [`rank_dimension`].
#[derive(Clone, Debug)]
pub struct RankQuery {
    pub pres: Presentation,
    pub r: Vec<i64>,
    /// Largest slack tried before giving up.
    pub max_slack: u32,
    /// Further elements known to lie in `N`, used as extra row generators.
    pub known: Vec<ModuleElement>,
}

impl RankQuery {
    pub fn new(pres: Presentation, r: Vec<i64>) -> Self {
        Self { pres, r, max_slack: 12, known: Vec::new() }
    }

    pub fn with_known(mut self, known: Vec<ModuleElement>) -> Self {
        self.known = known;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub dim: u64,
    /// Value of `dim_K (N cap span Theta(r) e)` found at slack 0, 1, ...
    pub history: Vec<u64>,
}

type SparseRow = Vec<(u32, BigInt)>;

/// Incremental echelon form over the integers; rows are kept primitive.
struct Echelon {
    pivots: HashMap<u32, SparseRow>,
    inside_pivots: u64,
}

const INSIDE_BASE: u32 = 1 << 31;

impl Echelon {
    fn new() -> Self {
        Self { pivots: HashMap::new(), inside_pivots: 0 }
    }

    fn insert(&mut self, mut row: SparseRow) {
        while let Some((col, lead)) = row.first().cloned() {
            let Some(piv) = self.pivots.get(&col) else {
                make_primitive(&mut row);
                if col >= INSIDE_BASE {
                    self.inside_pivots += 1;
                }
                self.pivots.insert(col, row);
                return;
            };
            // lead_p * row - lead * piv cancels the first column
            let lead_p = piv[0].1.clone();
            row = combine(&row, &lead_p, piv, &lead);
            make_primitive(&mut row);
        }
    }
}

impl Echelon {
    fn reduces_to_zero(&self, mut row: SparseRow) -> bool {
        while let Some((col, lead)) = row.first().cloned() {
            let Some(piv) = self.pivots.get(&col) else {
                return false;
            };
            let lead_p = piv[0].1.clone();
            row = combine(&row, &lead_p, piv, &lead);
            make_primitive(&mut row);
        }
        true
    }
}

fn combine(a: &SparseRow, ca: &BigInt, b: &SparseRow, cb: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, &a[i].1 * ca));
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(&b[j].1 * cb)));
            j += 1;
        } else {
            let v = &a[i].1 * ca - &b[j].1 * cb;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `dim_K M_r` as `Card Theta(r) e - dim (N cap span Theta(r) e)`.
///
/// `N cap span Theta(r) e` is approximated from below by the span of all
/// `theta g` lying in `span Theta(r + s) e` (`g` a relation, `s` the slack),
/// intersected with `span Theta(r) e`. Columns outside `Theta(r) e` come
/// first in the elimination order, so the echelon rows whose pivot is inside
/// span the intersection. The slack grows until four consecutive values
/// agree.
pub fn rank_dimension(query: &RankQuery) -> Result<RankResult> {
    let pres = &query.pres;
    let partition = pres.partition();
    let p = partition.p();
    let r = &query.r;
    if r.len() != p {
        return Err(Error::DimensionMismatch(format!("{} radii for {} blocks", r.len(), p)));
    }
    if r.iter().any(|&x| x < 0) {
        return Ok(RankResult { dim: 0, history: vec![0] });
    }
    let total = monomials_within(partition, r).len() as u64 * pres.m() as u64;
    let inside = |t: &Term| t.block_ords(partition).iter().zip(r).all(|(&o, &ri)| o as i64 <= ri);
    let mut ids: HashMap<Term, u32> = HashMap::new();
    let (mut next_out, mut next_in) = (0u32, INSIDE_BASE);
    let mut id_of = |t: &Term| -> u32 {
        if let Some(&id) = ids.get(t) {
            return id;
        }
        let id = if inside(t) {
            next_in += 1;
            next_in - 1
        } else {
            next_out += 1;
            next_out - 1
        };
        ids.insert(t.clone(), id);
        id
    };
    let generators: Vec<&ModuleElement> = pres.relations().iter().chain(&query.known).collect();
    for g in &query.known {
        if g.n() != pres.n() || g.m() != pres.m() {
            return Err(Error::DimensionMismatch("known element outside the free module".into()));
        }
    }
    let generators: Vec<&ModuleElement> = generators.into_iter().filter(|g| !g.is_zero()).collect();
    let orders: Vec<Vec<i64>> = generators
        .iter()
        .map(|g| g.block_ords(partition).expect("nonzero").iter().map(|&o| o as i64).collect())
        .collect();
    let mut ech = Echelon::new();
    let mut history = Vec::new();
    for s in 0..=query.max_slack as i64 {
        for (g, ord) in generators.iter().zip(&orders) {
            let bounds: Vec<i64> = (0..p).map(|i| r[i] + s - ord[i]).collect();
            for theta in monomials_within(partition, &bounds) {
                let fresh = s == 0 || theta.block_ords(partition).iter().zip(&bounds).any(|(&o, &b)| o as i64 == b);
                if !fresh {
                    continue;
                }
                let row = integer_row(&g.mul_monomial(&theta), &mut id_of);
                ech.insert(row);
            }
        }
        history.push(ech.inside_pivots);
        let h = history.len();
        if h >= 4 && history[h - 4..].iter().all(|&d| d == history[h - 1]) {
            return Ok(RankResult { dim: total - history[h - 1], history });
        }
    }
    Err(Error::NotConverged(format!("slack sequence {:?} for r = {:?} did not stabilize", history, r)))
}

/// Smallest slack `s` for which `f` lies in the `K`-span of the products
/// `theta g` (`g` a relation) with block orders at most `ord(f) + s`.
///
/// A successful return is an exact certificate that `f` belongs to `N`.
pub fn membership_slack(pres: &Presentation, f: &ModuleElement, max_slack: u32) -> Result<u32> {
    if f.n() != pres.n() || f.m() != pres.m() {
        return Err(Error::DimensionMismatch("element outside the free module".into()));
    }
    if f.is_zero() {
        return Ok(0);
    }
    let partition = pres.partition();
    let p = partition.p();
    let target: Vec<i64> = f.block_ords(partition).expect("nonzero").iter().map(|&o| o as i64).collect();
    let mut ids: HashMap<Term, u32> = HashMap::new();
    let mut id_of = |t: &Term| -> u32 {
        let next = ids.len() as u32;
        *ids.entry(t.clone()).or_insert(next)
    };
    let relations: Vec<(&ModuleElement, Vec<i64>)> = pres
        .relations()
        .iter()
        .map(|g| (g, g.block_ords(partition).expect("nonzero").iter().map(|&o| o as i64).collect()))
        .collect();
    let mut ech = Echelon::new();
    for s in 0..=max_slack as i64 {
        for (g, ord) in &relations {
            let bounds: Vec<i64> = (0..p).map(|i| target[i] + s - ord[i]).collect();
            for theta in monomials_within(partition, &bounds) {
                let fresh = s == 0 || theta.block_ords(partition).iter().zip(&bounds).any(|(&o, &b)| o as i64 == b);
                if fresh {
                    ech.insert(integer_row(&g.mul_monomial(&theta), &mut id_of));
                }
            }
        }
        if ech.reduces_to_zero(integer_row(f, &mut id_of)) {
            return Ok(s as u32);
        }
    }
    Err(Error::NotConverged(format!("no membership certificate within slack {}", max_slack)))
}

/// Replays a completion trace: element `k` must equal its relation or the
/// combination of earlier elements recorded for it. A `true` answer shows by
/// induction that every element lies in `N`.
pub fn check_derivations(pres: &Presentation, trace: &Trace) -> Result<bool> {
    let (elements, derivations) = (&trace.elements, &trace.derivations);
    if elements.len() != derivations.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} derivations for {} elements",
            derivations.len(),
            elements.len()
        )));
    }
    let minus_quotients = |mut acc: ModuleElement, quotients: &[WeylElement]| -> Result<ModuleElement> {
        for (q, g) in quotients.iter().zip(elements) {
            if !q.is_zero() {
                acc = acc.sub(&act(q, g)?)?;
            }
        }
        Ok(acc)
    };
    for (k, (e, d)) in elements.iter().zip(derivations).enumerate() {
        let ok = match d {
            Derivation::Generator(j) => pres.relations().get(*j) == Some(e),
            Derivation::Step { i, j, left, right, quotients, scale } => {
                if *i >= k || *j >= k || quotients.len() > k {
                    return Ok(false);
                }
                let acc = act(left, &elements[*i])?.add(&act(right, &elements[*j])?)?;
                minus_quotients(acc, quotients)?.scale(scale) == *e
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rows scaled to integers and sorted by column id.
fn integer_row(f: &ModuleElement, id_of: &mut impl FnMut(&Term) -> u32) -> SparseRow {
    let den = f.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut row: SparseRow =
        f.terms().map(|(t, c)| (id_of(t), (c * BigRational::from_integer(den.clone())).to_integer())).collect();
    row.sort_by_key(|e| e.0);
    row
}
