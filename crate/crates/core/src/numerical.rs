//! Numerical (integer-valued) polynomials in the binomial basis
//! `prod_j C(t_j + i_j, i_j)`, and dimension polynomials of subsets of `N^q`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::weyl::{format_rational, Partition};

/// `C(x, k)` for any integer `x`, extended polynomially (`x(x-1)..(x-k+1)/k!`).
pub fn binomial(x: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= x - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub fn binomial_i(x: i64, k: u32) -> BigInt {
    binomial(&BigInt::from(x), k)
}

/// Dense tensor over a box `[0, dims_0) x .. x [0, dims_{p-1})`, used to
/// apply one linear map per axis.
#[derive(Clone, Debug)]
struct Tensor<T> {
    dims: Vec<usize>,
    data: Vec<T>,
}

impl<T: Clone + Zero + std::ops::Mul<Output = T>> Tensor<T> {
    fn from_fn(dims: Vec<usize>, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let size: usize = dims.iter().product();
        let mut data = Vec::with_capacity(size);
        let mut idx = vec![0usize; dims.len()];
        for _ in 0..size {
            data.push(f(&idx));
            advance(&mut idx, &dims);
        }
        Self { dims, data }
    }

    fn stride(&self, axis: usize) -> usize {
        self.dims[axis + 1..].iter().product()
    }

    /// `new[.., i, ..] = sum_k map[i][k] * old[.., k, ..]` along `axis`.
    fn apply_axis(&mut self, axis: usize, map: &[Vec<T>]) {
        let len = self.dims[axis];
        let out_len = map.len();
        let stride = self.stride(axis);
        let outer: usize = self.dims[..axis].iter().product();
        let mut dims = self.dims.clone();
        dims[axis] = out_len;
        let mut data = vec![T::zero(); outer * out_len * stride];
        for o in 0..outer {
            for s in 0..stride {
                for (i, row) in map.iter().enumerate() {
                    let mut acc = T::zero();
                    for (k, c) in row.iter().enumerate().take(len) {
                        if c.is_zero() {
                            continue;
                        }
                        acc = acc + c.clone() * self.data[(o * len + k) * stride + s].clone();
                    }
                    data[(o * out_len + i) * stride + s] = acc;
                }
            }
        }
        self.dims = dims;
        self.data = data;
    }

    fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &T)> {
        let mut idx = vec![0usize; self.dims.len()];
        let dims = self.dims.clone();
        self.data.iter().map(move |v| {
            let cur = idx.clone();
            advance(&mut idx, &dims);
            (cur, v)
        })
    }
}

fn advance(idx: &mut [usize], dims: &[usize]) {
    for a in (0..idx.len()).rev() {
        idx[a] += 1;
        if idx[a] < dims[a] {
            return;
        }
        idx[a] = 0;
    }
}

/// Per-axis map sending values at `t = -1, -2, .., -1-d` to binomial-basis
/// coefficients: `a_k = sum_s (-1)^s C(k, s) g(-1-s)`.
fn backward_difference_map(d: usize) -> Vec<Vec<BigInt>> {
    (0..=d)
        .map(|k| {
            (0..=d)
                .map(|s| {
                    if s > k {
                        BigInt::zero()
                    } else {
                        let c = binomial_i(k as i64, s as u32);
                        if s % 2 == 0 {
                            c
                        } else {
                            -c
                        }
                    }
                })
                .collect()
        })
        .collect()
}

/// Per-axis map from values at `origin, origin+1, .., origin+d` to
/// binomial-basis coefficients (forward differences give the Newton form
/// `sum_k D_k C(t - origin, k)`, then each `C(t - origin, k)` is rewritten).
fn grid_to_canonical_map(origin: i64, d: usize) -> Vec<Vec<BigInt>> {
    // Newton: D_k = sum_s (-1)^(k-s) C(k,s) f(origin + s)
    let newton: Vec<Vec<BigInt>> = (0..=d)
        .map(|k| {
            (0..=d)
                .map(|s| {
                    if s > k {
                        BigInt::zero()
                    } else {
                        let c = binomial_i(k as i64, s as u32);
                        if (k - s) % 2 == 0 {
                            c
                        } else {
                            -c
                        }
                    }
                })
                .collect()
        })
        .collect();
    // conv[i][k] = canonical coefficient i of C(t - origin, k)
    let back = backward_difference_map(d);
    let conv: Vec<Vec<BigInt>> = (0..=d)
        .map(|i| {
            (0..=d).map(|k| (0..=d).map(|s| &back[i][s] * binomial_i(-1 - s as i64 - origin, k as u32)).sum()).collect()
        })
        .collect();
    (0..=d).map(|i| (0..=d).map(|s| (0..=d).map(|k| &conv[i][k] * &newton[k][s]).sum()).collect()).collect()
}

/// Polynomial with rational coefficients in the monomial basis
/// `t_1^{d_1} .. t_p^{d_p}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    p: usize,
    coeffs: BTreeMap<Vec<u32>, BigRational>,
}

impl RatPoly {
    pub fn zero(p: usize) -> Self {
        Self { p, coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs<I>(p: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut out = Self::zero(p);
        for (e, c) in coeffs {
            if e.len() != p {
                return Err(Error::DimensionMismatch(format!("exponent {:?} in {} variables", e, p)));
            }
            let entry = out.coeffs.entry(e).or_insert_with(BigRational::zero);
            *entry += c;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.coeffs.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.coeffs.keys().map(|e| e[var]).max()
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        self.coeffs
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    for _ in 0..k {
                        v *= x;
                    }
                }
                v
            })
            .sum()
    }

    pub fn eval_int(&self, point: &[i64]) -> BigRational {
        let pt: Vec<BigRational> = point.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        self.eval(&pt)
    }

    /// The homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut entries: Vec<_> = self.coeffs.iter().collect();
        entries.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (e, c) in entries {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { format!("t{}", j + 1) } else { format!("t{}^{}", j + 1, k) })
                .collect();
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
            if mono.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `f(t) = sum a_{i_1..i_p} prod_j C(t_j + i_j, i_j)` with integer
/// coefficients; the representation is unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalPolynomial {
    p: usize,
    coeffs: BTreeMap<Vec<u32>, BigInt>,
}

impl NumericalPolynomial {
    pub fn zero(p: usize) -> Self {
        Self { p, coeffs: BTreeMap::new() }
    }

    pub fn constant(p: usize, c: BigInt) -> Self {
        Self::from_coeffs(p, [(vec![0; p], c)]).expect("well-formed")
    }

    pub fn from_coeffs<I>(p: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut out = Self::zero(p);
        for (idx, c) in coeffs {
            if idx.len() != p {
                return Err(Error::DimensionMismatch(format!("index {:?} in {} variables", idx, p)));
            }
            *out.coeffs.entry(idx).or_insert_with(BigInt::zero) += c;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// `prod_j f_j(t_j)` where `factors[j]` lists the canonical coefficients
    /// of a univariate numerical polynomial in `t_j`.
    pub fn product_of_univariate(factors: &[Vec<BigInt>]) -> Self {
        let p = factors.len();
        let mut coeffs: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        coeffs.insert(Vec::with_capacity(p), BigInt::one());
        for f in factors {
            let mut next = BTreeMap::new();
            for (idx, c) in &coeffs {
                for (i, a) in f.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let mut k = idx.clone();
                    k.push(i as u32);
                    next.insert(k, c * a);
                }
            }
            coeffs = next;
        }
        Self { p, coeffs }
    }

    /// Canonical coefficients of `C(t + shift, k)` as a univariate polynomial.
    pub fn shifted_binomial_coeffs(shift: i64, k: u32) -> Vec<BigInt> {
        let map = backward_difference_map(k as usize);
        (0..=k as usize)
            .map(|i| (0..=k as usize).map(|s| &map[i][s] * binomial_i(-1 - s as i64 + shift, k)).sum())
            .collect()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.coeffs
    }

    pub fn coeff(&self, idx: &[u32]) -> BigInt {
        self.coeffs.get(idx).cloned().unwrap_or_else(BigInt::zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::DimensionMismatch(format!("polynomials in {} and {} variables", self.p, other.p)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Self::from_coeffs(self.p, self.coeffs.iter().chain(&other.coeffs).map(|(k, v)| (k.clone(), v.clone())))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.p);
        }
        Self { p: self.p, coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Exact value at an integer point (any sign).
    pub fn eval(&self, r: &[i64]) -> BigInt {
        assert_eq!(r.len(), self.p, "evaluation point has the wrong arity");
        self.coeffs
            .iter()
            .map(|(idx, a)| idx.iter().zip(r).fold(a.clone(), |acc, (&i, &x)| acc * binomial_i(x + i as i64, i)))
            .sum()
    }

    /// Largest index per variable (the per-variable degree), `None` for zero.
    pub fn degrees(&self) -> Vec<Option<u32>> {
        (0..self.p).map(|j| self.coeffs.keys().map(|k| k[j]).max()).collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.iter().sum()).max()
    }

    /// Expansion in the monomial basis.
    pub fn monomial_view(&self) -> RatPoly {
        if self.coeffs.is_empty() {
            return RatPoly::zero(self.p);
        }
        let dims: Vec<usize> = self.degrees().iter().map(|d| d.unwrap_or(0) as usize + 1).collect();
        let mut t = Tensor::from_fn(dims.clone(), |idx| {
            let key: Vec<u32> = idx.iter().map(|&i| i as u32).collect();
            BigRational::from_integer(self.coeff(&key))
        });
        for (axis, &len) in dims.iter().enumerate() {
            // map[d][i] = coefficient of t^d in C(t + i, i)
            let polys: Vec<Vec<BigRational>> = (0..len).map(|i| binomial_monomial_coeffs(i as u32)).collect();
            let map: Vec<Vec<BigRational>> = (0..len)
                .map(|d| (0..len).map(|i| polys[i].get(d).cloned().unwrap_or_else(BigRational::zero)).collect())
                .collect();
            t.apply_axis(axis, &map);
        }
        RatPoly::from_coeffs(self.p, t.entries().map(|(idx, v)| (idx.iter().map(|&i| i as u32).collect(), v.clone())))
            .expect("well-formed")
    }

    /// Rewrites a monomial-basis polynomial in the binomial basis, failing
    /// when some coefficient is not an integer.
    pub fn canonicalize(poly: &RatPoly) -> Result<Self> {
        let p = poly.p();
        if poly.is_zero() {
            return Ok(Self::zero(p));
        }
        let dims: Vec<usize> = (0..p).map(|j| poly.degree_in(j).unwrap_or(0) as usize + 1).collect();
        let mut t = Tensor::from_fn(dims.clone(), |idx| {
            let pt: Vec<i64> = idx.iter().map(|&s| -1 - s as i64).collect();
            poly.eval_int(&pt)
        });
        for (axis, &len) in dims.iter().enumerate() {
            let map: Vec<Vec<BigRational>> = backward_difference_map(len - 1)
                .into_iter()
                .map(|row| row.into_iter().map(BigRational::from_integer).collect())
                .collect();
            t.apply_axis(axis, &map);
        }
        let mut coeffs = Vec::new();
        for (idx, v) in t.entries() {
            if !v.is_integer() {
                return Err(Error::NotNumerical(format!(
                    "binomial coefficient {} at index {:?} is not an integer",
                    format_rational(v),
                    idx
                )));
            }
            coeffs.push((idx.iter().map(|&i| i as u32).collect(), v.to_integer()));
        }
        Self::from_coeffs(p, coeffs)
    }

    /// Interpolates from values on the box `origin + [0, degrees]`; `values`
    /// is indexed row-major over that box.
    pub fn from_grid(origin: &[i64], degrees: &[u32], values: &[BigInt]) -> Result<Self> {
        let p = origin.len();
        if degrees.len() != p {
            return Err(Error::DimensionMismatch("origin and degree vectors differ in length".into()));
        }
        let dims: Vec<usize> = degrees.iter().map(|&d| d as usize + 1).collect();
        if values.len() != dims.iter().product::<usize>() {
            return Err(Error::DimensionMismatch(format!(
                "{} grid values for a box of shape {:?}",
                values.len(),
                dims
            )));
        }
        let mut t = Tensor { dims: dims.clone(), data: values.to_vec() };
        for axis in 0..p {
            t.apply_axis(axis, &grid_to_canonical_map(origin[axis], degrees[axis] as usize));
        }
        Self::from_coeffs(p, t.entries().map(|(idx, v)| (idx.iter().map(|&i| i as u32).collect(), v.clone())))
    }
}

/// Monomial coefficients of `C(t + i, i) = (t+1)(t+2)..(t+i)/i!`.
fn binomial_monomial_coeffs(i: u32) -> Vec<BigRational> {
    let mut poly = vec![BigInt::one()];
    for l in 1..=i {
        // multiply by (t + l)
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] += c;
            next[d] += c * BigInt::from(l);
        }
        poly = next;
    }
    let fact: BigInt = (1..=i).fold(BigInt::one(), |a, l| a * BigInt::from(l));
    poly.into_iter().map(|c| BigRational::new(c, fact.clone())).collect()
}

impl fmt::Display for NumericalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, a) in self.coeffs.iter().rev() {
            let factors: Vec<String> = idx
                .iter()
                .enumerate()
                .filter(|(_, &i)| i > 0)
                .map(|(j, &i)| format!("C(t{}+{},{})", j + 1, i, i))
                .collect();
            let neg = a.is_negative();
            let abs = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if factors.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Canonical form of a monomial-basis polynomial (free-function form).
pub fn canonicalize(poly: &RatPoly) -> Result<NumericalPolynomial> {
    NumericalPolynomial::canonicalize(poly)
}

pub fn monomial_view(poly: &NumericalPolynomial) -> RatPoly {
    poly.monomial_view()
}

pub fn eval(poly: &NumericalPolynomial, r: &[i64]) -> BigInt {
    poly.eval(r)
}

/// A finite subset of `N^q` together with a split of the coordinates into
/// consecutive blocks of sizes `q_1, .., q_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet {
    points: Vec<Vec<u32>>,
    blocks: Partition,
}

impl IndexSet {
    pub fn new(points: Vec<Vec<u32>>, blocks: Partition) -> Result<Self> {
        let q = blocks.n();
        if let Some(bad) = points.iter().find(|a| a.len() != q) {
            return Err(Error::DimensionMismatch(format!("point {:?} in N^{}", bad, q)));
        }
        Ok(Self { points, blocks })
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn blocks(&self) -> &Partition {
        &self.blocks
    }

    pub fn q(&self) -> usize {
        self.blocks.n()
    }

    /// Sums of the coordinates of `v` over each block.
    pub fn block_sums(&self, v: &[u32]) -> Vec<u32> {
        (0..self.blocks.p()).map(|j| self.blocks.block_range(j).map(|h| v[h]).sum()).collect()
    }
}

pub fn product_le(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// The minimal elements of `A` under the product order, sorted.
pub fn minimize(set: &IndexSet) -> IndexSet {
    let unique: BTreeSet<&Vec<u32>> = set.points.iter().collect();
    let minimal: Vec<Vec<u32>> =
        unique.iter().filter(|a| !unique.iter().any(|b| b != *a && product_le(b, a))).map(|a| (*a).clone()).collect();
    IndexSet { points: minimal, blocks: set.blocks.clone() }
}

/// Dimension polynomial `omega_A` of a finite `A` under its block split.
///
/// Inclusion-exclusion over subsets `sigma` of the minimized set: each
/// subset contributes `(-1)^|sigma| prod_j C(t_j + q_j - b_{sigma j}, q_j)`
/// with `b_{sigma j}` the block-`j` coordinate sum of the componentwise
/// maximum of `sigma`. Subsets with the same maximum are merged before the
/// polynomials are built.
pub fn omega(set: &IndexSet) -> NumericalPolynomial {
    let minimal = minimize(set);
    let q = set.q();
    let sizes = set.blocks.sizes();
    let mut lcms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    lcms.insert(vec![0; q], BigInt::one());
    for a in &minimal.points {
        let snapshot: Vec<(Vec<u32>, BigInt)> = lcms.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        for (v, c) in snapshot {
            let l: Vec<u32> = v.iter().zip(a).map(|(x, y)| *x.max(y)).collect();
            *lcms.entry(l).or_insert_with(BigInt::zero) -= c;
        }
        lcms.retain(|_, c| !c.is_zero());
    }
    let mut out = NumericalPolynomial::zero(set.blocks.p());
    for (v, c) in &lcms {
        let b = minimal.block_sums(v);
        let factors: Vec<Vec<BigInt>> = sizes
            .iter()
            .zip(&b)
            .map(|(&qj, &bj)| NumericalPolynomial::shifted_binomial_coeffs(qj as i64 - bj as i64, qj as u32))
            .collect();
        let term = NumericalPolynomial::product_of_univariate(&factors).scale(c);
        out = out.add(&term).expect("same arity");
    }
    out
}

/// Degree information of a numerical polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub total: Option<u32>,
    pub per_variable: Vec<Option<u32>>,
    /// Homogeneous top-degree part in the monomial basis.
    pub top: RatPoly,
}

pub fn degree_data(poly: &NumericalPolynomial) -> DegreeData {
    let view = poly.monomial_view();
    let total = view.total_degree();
    let per_variable = (0..poly.p()).map(|j| view.degree_in(j)).collect();
    let top = match total {
        Some(d) => view.homogeneous_part(d),
        None => RatPoly::zero(poly.p()),
    };
    DegreeData { total, per_variable, top }
}

/// Elements of `S` that are the maximum of `S` under at least one of the
/// `p!` lexicographic orders obtained by permuting the coordinates.
pub fn lex_extremal(points: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let Some(first) = points.first() else { return Vec::new() };
    let p = first.len();
    let mut out = BTreeSet::new();
    for perm in permutations(p) {
        let best = points
            .iter()
            .max_by(|a, b| {
                perm.iter().map(|&j| a[j].cmp(&b[j])).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty");
        out.insert(best.clone());
    }
    out.into_iter().collect()
}

fn permutations(p: usize) -> Vec<Vec<usize>> {
    if p == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(p - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, p - 1);
            out.push(v);
        }
    }
    out
}

/// Generator-independent data carried by a dimension polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSet {
    pub total_degree: Option<u32>,
    /// The index `(n_1, .., n_p)` whose coefficient is reported.
    pub caps: Vec<u32>,
    pub cap_coeff: BigInt,
    /// Support of the canonical coefficients within the cap box.
    pub support: Vec<Vec<u32>>,
    /// Lexicographically extremal support points with their coefficients.
    pub extremal: Vec<(Vec<u32>, BigInt)>,
    /// Monomial-basis coefficients of total degree `total_degree`.
    pub top_coeffs: Vec<(Vec<u32>, BigRational)>,
}

/// Collects the invariants of `poly`, restricting the support to the box
/// `0 <= i_k <= caps[k]`.
pub fn invariant_set(poly: &NumericalPolynomial, caps: &[u32]) -> Result<InvariantSet> {
    if caps.len() != poly.p() {
        return Err(Error::DimensionMismatch(format!("{} caps for {} variables", caps.len(), poly.p())));
    }
    let support: Vec<Vec<u32>> = poly.coeffs().keys().filter(|idx| product_le(idx, caps)).cloned().collect();
    let extremal = lex_extremal(&support)
        .into_iter()
        .map(|idx| {
            let c = poly.coeff(&idx);
            (idx, c)
        })
        .collect();
    let dd = degree_data(poly);
    Ok(InvariantSet {
        total_degree: dd.total,
        caps: caps.to_vec(),
        cap_coeff: poly.coeff(caps),
        support,
        extremal,
        top_coeffs: dd.top.coeffs().iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
    })
}

/// The per-variable degrees of `poly`, with 0 for the zero polynomial.
pub fn degree_caps(poly: &NumericalPolynomial) -> Vec<u32> {
    poly.degrees().into_iter().map(|d| d.unwrap_or(0)).collect()
}
