//! Dimension polynomials of finitely presented modules `E / N`, where `E` is
//! free on `e_1, .., e_m` and the filtration is the one generated by the
//! images of the `e_k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::{complete_basis_with_limits, complete_in_place_with_limits, GroebnerBasis, Limits};
use crate::module::{act, ModuleElement, OrderId, Term};
use crate::numerical::{degree_caps, invariant_set, omega, product_le, IndexSet, InvariantSet, NumericalPolynomial};
use crate::weyl::{ExponentPair, Partition, WeylElement};

/// Generators `e_1..e_m` and relations spanning the kernel `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    partition: Partition,
    m: usize,
    relations: Vec<ModuleElement>,
}

impl Presentation {
    pub fn new(partition: Partition, m: usize, relations: Vec<ModuleElement>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("a presentation needs at least one generator".into()));
        }
        for (i, f) in relations.iter().enumerate() {
            if f.n() != partition.n() || f.m() != m {
                return Err(Error::DimensionMismatch(format!(
                    "relation {} lives in A_{}^{}, expected A_{}^{}",
                    i + 1,
                    f.n(),
                    f.m(),
                    partition.n(),
                    m
                )));
            }
            if f.is_zero() {
                return Err(Error::InvalidInput(format!("relation {} is zero", i + 1)));
            }
        }
        Ok(Self { partition, m, relations })
    }

    /// The free module of rank `m`.
    pub fn free(partition: Partition, m: usize) -> Result<Self> {
        Self::new(partition, m, Vec::new())
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn n(&self) -> usize {
        self.partition.n()
    }

    pub fn p(&self) -> usize {
        self.partition.p()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn relations(&self) -> &[ModuleElement] {
        &self.relations
    }

    /// Same relations with a different split of the variables.
    pub fn with_partition(&self, partition: Partition) -> Result<Self> {
        if partition.n() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "partition of {} variables for A_{}",
                partition.n(),
                self.n()
            )));
        }
        Self::new(partition, self.m, self.relations.clone())
    }

    /// Same relations with all variables in one block.
    pub fn collapsed(&self) -> Self {
        let trivial = Partition::trivial(self.n()).expect("n > 0");
        Self { partition: trivial, m: self.m, relations: self.relations.clone() }
    }

    /// The same module generated by the images of `e_1..e_m` together with
    /// `D * e_source`: adds `e_{m+1}` and the relation `e_{m+1} - D e_source`.
    pub fn with_extra_generator(&self, d: &WeylElement, source: usize) -> Result<Self> {
        if source >= self.m {
            return Err(Error::InvalidInput(format!("generator {} out of range 1..{}", source + 1, self.m)));
        }
        if d.n() != self.n() {
            return Err(Error::DimensionMismatch(format!("operator in A_{} for a module over A_{}", d.n(), self.n())));
        }
        let (n, m) = (self.n(), self.m + 1);
        let lift = |f: &ModuleElement| ModuleElement::from_terms(n, m, f.terms().map(|(t, c)| (t.clone(), c.clone())));
        let mut relations = self.relations.iter().map(lift).collect::<Result<Vec<_>>>()?;
        let image = act(d, &ModuleElement::unit(n, m, source)?)?;
        let link = ModuleElement::unit(n, m, m - 1)?.sub(&image)?;
        relations.push(link);
        Self::new(self.partition.clone(), m, relations)
    }

    /// Groebner basis of `N` certified for every stage.
    pub fn basis(&self) -> Result<GroebnerBasis> {
        self.basis_with_limits(Limits::default())
    }

    pub fn basis_with_limits(&self, limits: Limits) -> Result<GroebnerBasis> {
        if self.relations.is_empty() {
            let mut b = GroebnerBasis::from_elements(Vec::new(), self.n(), self.m, &self.partition)?;
            complete_in_place_with_limits(&mut b, limits)?;
            return Ok(b);
        }
        complete_basis_with_limits(&self.relations, &self.partition, limits)
    }
}

/// Order data of one basis element: `b_i = ord_i u^{(1)}`, `c_i = ord_i u^{(i)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeaderData {
    pub gen: usize,
    pub head: ExponentPair,
    pub b: Vec<u32>,
    pub c: Vec<u32>,
}

pub fn leader_data(basis: &GroebnerBasis) -> Vec<LeaderData> {
    let partition = basis.partition();
    (0..basis.len())
        .map(|j| {
            let head: &Term = &basis.leader(j, OrderId(0)).0;
            let b = head.block_ords(partition);
            let c = (0..partition.p()).map(|i| basis.leader(j, OrderId(i)).0.block_ord(partition, i)).collect();
            LeaderData { gen: head.gen, head: head.theta.clone(), b, c }
        })
        .collect()
}

/// Exponents of `theta` laid out block by block, each block as its
/// `alpha` entries followed by its `beta` entries.
pub fn pack_blockwise(theta: &ExponentPair, partition: &Partition) -> Vec<u32> {
    let mut out = Vec::with_capacity(2 * partition.n());
    for j in 0..partition.p() {
        let range = partition.block_range(j);
        out.extend_from_slice(&theta.alpha()[range.clone()]);
        out.extend_from_slice(&theta.beta()[range]);
    }
    out
}

/// The partition of `N^{2n}` matching [`pack_blockwise`].
pub fn doubled_partition(partition: &Partition) -> Partition {
    Partition::new(partition.sizes().iter().map(|s| 2 * s).collect()).expect("nonempty blocks")
}

/// `prod_i C(t_i + 2 n_i, 2 n_i)`.
pub fn weyl_dim_poly(partition: &Partition) -> NumericalPolynomial {
    let factors: Vec<Vec<BigInt>> = partition
        .sizes()
        .iter()
        .map(|&s| NumericalPolynomial::shifted_binomial_coeffs(2 * s as i64, 2 * s as u32))
        .collect();
    NumericalPolynomial::product_of_univariate(&factors)
}

/// Number of monomials with `ord_i <= r_i` for every block; 0 if some `r_i < 0`.
pub fn weyl_dim(partition: &Partition, r: &[i64]) -> BigInt {
    if r.iter().any(|&x| x < 0) {
        return BigInt::zero();
    }
    weyl_dim_poly(partition).eval(r)
}

/// Cardinalities of `V`, `V'` and `U = V + V'` inside `Theta(r) e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UvwCount {
    pub v: u64,
    pub v_prime: u64,
}

impl UvwCount {
    pub fn u(&self) -> u64 {
        self.v + self.v_prime
    }
}

struct PackedLeader {
    gen: usize,
    lead: Vec<u32>,
    b: Vec<i64>,
    c: Vec<i64>,
}

fn packed_leaders(basis: &GroebnerBasis) -> Vec<PackedLeader> {
    leader_data(basis)
        .into_iter()
        .map(|l| PackedLeader {
            gen: l.gen,
            lead: pack_blockwise(&l.head, basis.partition()),
            b: l.b.iter().map(|&x| x as i64).collect(),
            c: l.c.iter().map(|&x| x as i64).collect(),
        })
        .collect()
}

/// All vectors of length `len` with entry sum at most `bound`.
fn bounded_vectors(len: usize, bound: i64) -> Vec<Vec<u32>> {
    if bound < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; len];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, bound as u32, &mut cur, &mut out);
    out
}

/// Calls `visit` with every packed monomial whose block-`i` total is at most
/// `bounds[i]`.
fn for_each_packed(partition: &Partition, bounds: &[i64], mut visit: impl FnMut(&[u32])) {
    let lists: Vec<Vec<Vec<u32>>> =
        partition.sizes().iter().zip(bounds).map(|(&s, &b)| bounded_vectors(2 * s, b)).collect();
    if lists.iter().any(|l| l.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; lists.len()];
    let mut buf = Vec::with_capacity(2 * partition.n());
    loop {
        buf.clear();
        for (l, &i) in lists.iter().zip(&idx) {
            buf.extend_from_slice(&l[i]);
        }
        visit(&buf);
        let mut a = lists.len();
        loop {
            if a == 0 {
                return;
            }
            a -= 1;
            idx[a] += 1;
            if idx[a] < lists[a].len() {
                break;
            }
            idx[a] = 0;
        }
    }
}

fn block_sums(packed: &[u32], partition: &Partition, out: &mut Vec<i64>) {
    out.clear();
    let mut start = 0;
    for &s in partition.sizes() {
        out.push(packed[start..start + 2 * s].iter().map(|&x| x as i64).sum());
        start += 2 * s;
    }
}

/// Counts `V` (terms of `Theta(r) e` divisible by no 1-leader) and `V'`
/// (1-leader multiples `u` such that every leader `u_g^{(1)} | u` has some
/// `i >= 2` with `ord_i (u / u_g^{(1)}) u_g^{(i)} > r_i`).
pub fn count_uvw(basis: &GroebnerBasis, r: &[i64]) -> Result<UvwCount> {
    let partition = basis.partition();
    let p = partition.p();
    if r.len() != p {
        return Err(Error::DimensionMismatch(format!("{} radii for {} blocks", r.len(), p)));
    }
    if !basis.is_certified(0) {
        return Err(Error::Uncertified("counting needs a basis for (<_1, .., <_p)".into()));
    }
    let total = weyl_dim(partition, r) * BigInt::from(basis.m());
    let total = total.to_u64().ok_or_else(|| Error::InvalidInput("radius too large to enumerate".into()))?;
    let leaders = packed_leaders(basis);
    let mut multiples = 0u64;
    let mut v_prime = 0u64;
    let mut u = Vec::with_capacity(2 * partition.n());
    let mut ords = Vec::with_capacity(p);
    for (j, l) in leaders.iter().enumerate() {
        let bounds: Vec<i64> = r.iter().zip(&l.b).map(|(ri, bi)| ri - bi).collect();
        for_each_packed(partition, &bounds, |theta| {
            u.clear();
            u.extend(theta.iter().zip(&l.lead).map(|(a, b)| a + b));
            if leaders[..j].iter().any(|k| k.gen == l.gen && product_le(&k.lead, &u)) {
                return;
            }
            multiples += 1;
            block_sums(&u, partition, &mut ords);
            let escapes = leaders[j..]
                .iter()
                .filter(|k| k.gen == l.gen && product_le(&k.lead, &u))
                .all(|k| (1..p).any(|i| ords[i] - k.b[i] + k.c[i] > r[i]));
            if escapes {
                v_prime += 1;
            }
        });
    }
    Ok(UvwCount { v: total - multiples, v_prime })
}

/// How the `V'` part was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsiPath {
    /// One leader per generator; closed-form binomial products.
    Symbolic,
    /// Interpolated from counts on the box `origin + [0, 2 n_i]`.
    Interpolated { origin: Vec<i64> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiStrategy {
    /// Closed form when the leaders allow it, interpolation otherwise.
    Auto,
    Interpolate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionOptions {
    pub strategy: PsiStrategy,
    /// How many times the sampling origin may be moved outwards.
    pub max_enlargements: usize,
    /// Caps on Groebner basis completion.
    pub limits: Limits,
}

impl Default for DimensionOptions {
    fn default() -> Self {
        Self { strategy: PsiStrategy::Auto, max_enlargements: 4, limits: Limits::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub phi: NumericalPolynomial,
    pub omega_part: NumericalPolynomial,
    pub psi_part: NumericalPolynomial,
    pub path: PsiPath,
    pub holonomic: bool,
    pub invariants: InvariantSet,
    pub basis: GroebnerBasis,
    pub leaders: Vec<LeaderData>,
    /// Points where `phi` was checked against direct counting, with the count.
    pub verified: Vec<(Vec<i64>, BigInt)>,
}

impl DimensionReport {
    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn partition(&self) -> &Partition {
        self.basis.partition()
    }
}

/// Sum over generators of `omega` of the packed 1-leaders on that generator.
pub fn omega_part(basis: &GroebnerBasis) -> NumericalPolynomial {
    let partition = basis.partition();
    let blocks = doubled_partition(partition);
    let leaders = leader_data(basis);
    let mut out = NumericalPolynomial::zero(partition.p());
    for k in 0..basis.m() {
        let points = leaders.iter().filter(|l| l.gen == k).map(|l| pack_blockwise(&l.head, partition)).collect();
        let set = IndexSet::new(points, blocks.clone()).expect("packed to 2n");
        out = out.add(&omega(&set)).expect("same arity");
    }
    out
}

/// Whether no term is a multiple of two distinct 1-leaders.
fn leaders_disjoint(leaders: &[LeaderData]) -> bool {
    leaders.iter().enumerate().all(|(i, a)| leaders[i + 1..].iter().all(|b| a.gen != b.gen))
}

/// Closed form of the `V'` count when every generator carries at most one
/// 1-leader: multiples inside `Theta(r)` minus those whose `i`-leader orders
/// stay within `r_i` for all `i >= 2`.
fn psi_symbolic(partition: &Partition, leaders: &[LeaderData]) -> NumericalPolynomial {
    let p = partition.p();
    let sizes = partition.sizes();
    let factor = |i: usize, shift: u32| {
        let q = 2 * sizes[i] as i64;
        NumericalPolynomial::shifted_binomial_coeffs(q - shift as i64, q as u32)
    };
    let mut out = NumericalPolynomial::zero(p);
    if p == 1 {
        return out;
    }
    for l in leaders {
        let all: Vec<_> = (0..p).map(|i| factor(i, l.b[i])).collect();
        let bounded: Vec<_> = (0..p).map(|i| factor(i, if i == 0 { l.b[0] } else { l.c[i] })).collect();
        let term = NumericalPolynomial::product_of_univariate(&all)
            .sub(&NumericalPolynomial::product_of_univariate(&bounded))
            .expect("same arity");
        out = out.add(&term).expect("same arity");
    }
    out
}

fn grid_points(origin: &[i64], degrees: &[u32]) -> Vec<Vec<i64>> {
    let mut pts = vec![Vec::new()];
    for (o, &d) in origin.iter().zip(degrees) {
        pts = pts
            .into_iter()
            .flat_map(|pt| {
                (0..=d as i64).map(move |s| {
                    let mut q = pt.clone();
                    q.push(o + s);
                    q
                })
            })
            .collect();
    }
    pts
}

/// Points outside the sampling box: two beyond it along each axis, plus
/// the origin and one diagonal point.
fn check_points(origin: &[i64], degrees: &[u32]) -> Vec<Vec<i64>> {
    let mut pts = vec![origin.to_vec()];
    for a in 0..origin.len() {
        for extra in 1..=2 {
            let mut q = origin.to_vec();
            q[a] += degrees[a] as i64 + extra;
            pts.push(q);
        }
    }
    pts.push(origin.iter().zip(degrees).map(|(o, &d)| o + d as i64 + 1).collect());
    pts
}

fn initial_origin(partition: &Partition, leaders: &[LeaderData]) -> Vec<i64> {
    let max_c = leaders.iter().flat_map(|l| l.c.iter().copied()).max().unwrap_or(0) as i64;
    let packed: Vec<(usize, Vec<u32>)> = leaders.iter().map(|l| (l.gen, pack_blockwise(&l.head, partition))).collect();
    let mut sums = Vec::new();
    let mut origin = vec![1 + max_c; partition.p()];
    // omega is exact once r_i - 2 n_i clears the lcm of all leaders on a generator
    for gen in packed.iter().map(|(g, _)| *g) {
        let mut lcm = vec![0u32; 2 * partition.n()];
        for (_, v) in packed.iter().filter(|(g, _)| *g == gen) {
            lcm.iter_mut().zip(v).for_each(|(a, b)| *a = (*a).max(*b));
        }
        block_sums(&lcm, partition, &mut sums);
        for (i, o) in origin.iter_mut().enumerate() {
            *o = (*o).max(sums[i] - 2 * partition.sizes()[i] as i64);
        }
    }
    origin
}

fn degree_bounds_hold(phi: &NumericalPolynomial, partition: &Partition) -> std::result::Result<(), String> {
    let n = partition.n() as u32;
    let total = phi.total_degree().unwrap_or(0);
    if total < n || total > 2 * n {
        return Err(format!("total degree {} outside [{}, {}]", total, n, 2 * n));
    }
    for (i, d) in phi.degrees().into_iter().enumerate() {
        let d = d.unwrap_or(0);
        let ni = partition.sizes()[i] as u32;
        if d < ni || d > 2 * ni {
            return Err(format!("degree {} in t{} outside [{}, {}]", d, i + 1, ni, 2 * ni));
        }
    }
    Ok(())
}

pub fn dimension_polynomial(pres: &Presentation) -> Result<DimensionReport> {
    dimension_polynomial_with(pres, DimensionOptions::default())
}

/// Computes `phi_M = omega + psi` and checks it against direct counting.
pub fn dimension_polynomial_with(pres: &Presentation, options: DimensionOptions) -> Result<DimensionReport> {
    let basis = pres.basis_with_limits(options.limits)?;
    let partition = pres.partition().clone();
    let p = partition.p();
    let leaders = leader_data(&basis);
    let omega_part = omega_part(&basis);
    let symbolic = p == 1 || (options.strategy == PsiStrategy::Auto && leaders_disjoint(&leaders));
    let degrees: Vec<u32> = partition.sizes().iter().map(|&s| 2 * s as u32).collect();
    let mut origin = initial_origin(&partition, &leaders);

    for _ in 0..=options.max_enlargements {
        let psi_part = if symbolic {
            psi_symbolic(&partition, &leaders)
        } else {
            let values = grid_points(&origin, &degrees)
                .iter()
                .map(|r| count_uvw(&basis, r).map(|c| BigInt::from(c.v_prime)))
                .collect::<Result<Vec<_>>>()?;
            NumericalPolynomial::from_grid(&origin, &degrees, &values)?
        };
        let phi = omega_part.add(&psi_part)?;
        let mut verified = Vec::new();
        let mut ok = true;
        for r in check_points(&origin, &degrees) {
            let count = BigInt::from(count_uvw(&basis, &r)?.u());
            if phi.eval(&r) != count {
                ok = false;
                break;
            }
            verified.push((r, count));
        }
        if !ok {
            origin.iter_mut().for_each(|o| *o = 2 * *o + 1);
            continue;
        }
        if !phi.is_zero() {
            degree_bounds_hold(&phi, &partition).map_err(Error::Verification)?;
        }
        let holonomic = phi.total_degree() == Some(pres.n() as u32);
        let invariants = invariant_set(&phi, &degree_caps(&phi))?;
        let path = if symbolic { PsiPath::Symbolic } else { PsiPath::Interpolated { origin: origin.clone() } };
        return Ok(DimensionReport {
            phi,
            omega_part,
            psi_part,
            path,
            holonomic,
            invariants,
            basis,
            leaders,
            verified,
        });
    }
    Err(Error::ThresholdNotFound(options.max_enlargements))
}

/// Univariate data `(psi_M, d(M), e(M))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernsteinData {
    pub psi: NumericalPolynomial,
    /// `None` for the zero module.
    pub dimension: Option<u32>,
    pub multiplicity: BigInt,
    pub report: DimensionReport,
}

/// Runs the engine with all variables in one block.
pub fn bernstein_polynomial(pres: &Presentation) -> Result<BernsteinData> {
    bernstein_polynomial_with(pres, DimensionOptions::default())
}

pub fn bernstein_polynomial_with(pres: &Presentation, options: DimensionOptions) -> Result<BernsteinData> {
    let report = dimension_polynomial_with(&pres.collapsed(), options)?;
    let psi = report.phi.clone();
    let dimension = psi.total_degree();
    let multiplicity = match dimension {
        None => BigInt::zero(),
        Some(d) => {
            let lc = psi.monomial_view().coeff(&[d]);
            let fact: BigInt = (1..=d).map(BigInt::from).product();
            let e = lc * BigRational::from_integer(fact);
            if !e.is_integer() {
                return Err(Error::Verification(format!("multiplicity {} is not an integer", e)));
            }
            e.to_integer()
        }
    };
    Ok(BernsteinData { psi, dimension, multiplicity, report })
}

pub fn is_holonomic(report: &DimensionReport) -> bool {
    report.phi.total_degree() == Some(report.n() as u32)
}

/// `dim W_r <= phi(r) * phi(2r)`.
pub fn bernstein_inequality_check(report: &DimensionReport, r: &[i64]) -> bool {
    let doubled: Vec<i64> = r.iter().map(|x| 2 * x).collect();
    weyl_dim(report.partition(), r) <= report.phi.eval(r) * report.phi.eval(&doubled)
}
