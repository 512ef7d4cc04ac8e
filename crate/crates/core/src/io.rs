//! JSON documents for presentations and results.
//!
//! A presentation document looks like
//!
//! ```json
//! {
//!   "n": 2,
//!   "partition": [1, 1],
//!   "m": 1,
//!   "relations": [
//!     [
//!       { "coeff": "1", "alpha": [1, 0], "beta": [0, 1], "gen": 1 },
//!       { "coeff": "1", "alpha": [0, 2], "beta": [1, 0], "gen": 1 }
//!     ]
//!   ]
//! }
//! ```
//!
//! Coefficients are strings holding an integer or `num/den`; generators are
//! numbered from 1. Output documents are produced by `serde_json` with keys
//! in declaration order, so equal inputs give byte-identical output.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dimension::{BernsteinData, DimensionReport, LeaderData, Presentation, PsiPath};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::module::{ModuleElement, OrderId, Term};
use crate::numerical::{InvariantSet, NumericalPolynomial};
use crate::weyl::{format_rational, ExponentPair, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub coeff: String,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub gen: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDocument {
    pub n: usize,
    pub partition: Vec<usize>,
    pub m: usize,
    pub relations: Vec<Vec<TermRecord>>,
}

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { location: location.into(), message: message.into() }
}

pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    match t.split_once('/') {
        Some((a, b)) => {
            let num = BigInt::from_str(a.trim()).ok()?;
            let den = BigInt::from_str(b.trim()).ok()?;
            (!den.is_zero()).then(|| BigRational::new(num, den))
        }
        None => BigInt::from_str(t).ok().map(BigRational::from_integer),
    }
}

impl PresentationDocument {
    /// Validates the document and builds the presentation; duplicate terms
    /// within a relation are summed.
    pub fn to_presentation(&self) -> Result<Presentation> {
        if self.n == 0 {
            return Err(parse_error("n", "must be positive"));
        }
        if self.m == 0 {
            return Err(parse_error("m", "must be positive"));
        }
        let partition =
            Partition::with_n(self.n, self.partition.clone()).map_err(|e| parse_error("partition", e.to_string()))?;
        let mut relations = Vec::with_capacity(self.relations.len());
        for (i, rel) in self.relations.iter().enumerate() {
            let mut terms = Vec::with_capacity(rel.len());
            for (k, rec) in rel.iter().enumerate() {
                let at = |field: &str| format!("relations[{}][{}].{}", i, k, field);
                let coeff = parse_rational(&rec.coeff)
                    .ok_or_else(|| parse_error(at("coeff"), format!("'{}' is not an integer or num/den", rec.coeff)))?;
                if coeff.is_zero() {
                    return Err(parse_error(at("coeff"), "coefficient is zero"));
                }
                if rec.alpha.len() != self.n {
                    return Err(parse_error(
                        at("alpha"),
                        format!("expected {} exponents, found {}", self.n, rec.alpha.len()),
                    ));
                }
                if rec.beta.len() != self.n {
                    return Err(parse_error(
                        at("beta"),
                        format!("expected {} exponents, found {}", self.n, rec.beta.len()),
                    ));
                }
                if rec.gen == 0 || rec.gen > self.m {
                    return Err(parse_error(at("gen"), format!("generator {} outside 1..{}", rec.gen, self.m)));
                }
                let theta = ExponentPair::new(rec.alpha.clone(), rec.beta.clone()).expect("lengths checked");
                terms.push((Term::new(rec.gen - 1, theta), coeff));
            }
            let f = ModuleElement::from_terms(self.n, self.m, terms)?;
            if f.is_zero() {
                return Err(parse_error(format!("relations[{}]", i), "relation is zero"));
            }
            relations.push(f);
        }
        Presentation::new(partition, self.m, relations)
    }

    pub fn from_presentation(pres: &Presentation) -> Self {
        Self {
            n: pres.n(),
            partition: pres.partition().sizes().to_vec(),
            m: pres.m(),
            relations: pres.relations().iter().map(element_records).collect(),
        }
    }
}

fn element_records(f: &ModuleElement) -> Vec<TermRecord> {
    f.terms()
        .map(|(t, c)| TermRecord {
            coeff: format_rational(c),
            alpha: t.theta.alpha().to_vec(),
            beta: t.theta.beta().to_vec(),
            gen: t.gen + 1,
        })
        .collect()
}

/// Parses a presentation document; syntax and schema errors carry a line
/// and column, semantic errors a path into the document.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let doc: PresentationDocument = serde_json::from_str(text)
        .map_err(|e| parse_error(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    doc.to_presentation()
}

pub fn render_presentation(pres: &Presentation) -> String {
    to_json(&PresentationDocument::from_presentation(pres))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalEntry {
    pub index: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialEntry {
    pub monomial: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialDocument {
    pub text: String,
    pub canonical: Vec<CanonicalEntry>,
    pub monomial: Vec<MonomialEntry>,
}

impl PolynomialDocument {
    pub fn new(f: &NumericalPolynomial) -> Self {
        Self {
            text: f.to_string(),
            canonical: f
                .coeffs()
                .iter()
                .map(|(i, c)| CanonicalEntry { index: i.clone(), coeff: c.to_string() })
                .collect(),
            monomial: f
                .monomial_view()
                .coeffs()
                .iter()
                .map(|(d, c)| MonomialEntry { monomial: d.clone(), coeff: format_rational(c) })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeaderRecord {
    pub order: usize,
    pub term: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoRecord {
    pub head: String,
    pub gaps: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElementRecord {
    pub text: String,
    pub terms: Vec<TermRecord>,
    pub leaders: Vec<LeaderRecord>,
    pub rho: RhoRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisDocument {
    pub n: usize,
    pub partition: Vec<usize>,
    pub m: usize,
    pub elements: Vec<BasisElementRecord>,
    /// 1-based stages `r` certified for `(<_r, .., <_p)`.
    pub certified_stages: Vec<usize>,
}

impl BasisDocument {
    pub fn new(basis: &GroebnerBasis) -> Self {
        let p = basis.partition().p();
        let elements = (0..basis.len())
            .map(|j| {
                let f = &basis.elements()[j];
                let rho = basis.rho(j);
                BasisElementRecord {
                    text: f.to_string(),
                    terms: element_records(f),
                    leaders: (0..p)
                        .map(|i| {
                            let (t, c) = basis.leader(j, OrderId(i));
                            LeaderRecord { order: i + 1, term: t.to_string(), coeff: format_rational(c) }
                        })
                        .collect(),
                    rho: RhoRecord { head: rho.head.to_string(), gaps: rho.d },
                }
            })
            .collect();
        Self {
            n: basis.n(),
            partition: basis.partition().sizes().to_vec(),
            m: basis.m(),
            elements,
            certified_stages: basis.certified_stages().into_iter().map(|r| r + 1).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeaderDataRecord {
    pub gen: usize,
    pub head: String,
    pub b: Vec<u32>,
    pub c: Vec<u32>,
}

impl From<&LeaderData> for LeaderDataRecord {
    fn from(l: &LeaderData) -> Self {
        Self { gen: l.gen + 1, head: l.head.to_string(), b: l.b.clone(), c: l.c.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRecord {
    pub r: Vec<i64>,
    pub count: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionDocument {
    pub phi: PolynomialDocument,
    pub omega_part: PolynomialDocument,
    pub psi_part: PolynomialDocument,
    pub total_degree: Option<u32>,
    pub degrees: Vec<Option<u32>>,
    pub holonomic: bool,
    pub psi_path: String,
    pub leaders: Vec<LeaderDataRecord>,
    pub verified: Vec<CountRecord>,
}

impl DimensionDocument {
    pub fn new(report: &DimensionReport) -> Self {
        let psi_path = match &report.path {
            PsiPath::Symbolic => "symbolic".to_string(),
            PsiPath::Interpolated { origin } => format!("interpolated from {:?}", origin),
        };
        Self {
            phi: PolynomialDocument::new(&report.phi),
            omega_part: PolynomialDocument::new(&report.omega_part),
            psi_part: PolynomialDocument::new(&report.psi_part),
            total_degree: report.phi.total_degree(),
            degrees: report.phi.degrees(),
            holonomic: report.holonomic,
            psi_path,
            leaders: report.leaders.iter().map(LeaderDataRecord::from).collect(),
            verified: report.verified.iter().map(|(r, c)| CountRecord { r: r.clone(), count: c.to_string() }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BernsteinDocument {
    pub psi: PolynomialDocument,
    pub dimension: Option<u32>,
    pub multiplicity: String,
}

impl BernsteinDocument {
    pub fn new(data: &BernsteinData) -> Self {
        Self {
            psi: PolynomialDocument::new(&data.psi),
            dimension: data.dimension,
            multiplicity: data.multiplicity.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexedCoeff {
    pub index: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantsDocument {
    pub total_degree: Option<u32>,
    pub caps: Vec<u32>,
    pub cap_coeff: String,
    pub support: Vec<Vec<u32>>,
    pub extremal: Vec<IndexedCoeff>,
    pub top_coeffs: Vec<MonomialEntry>,
}

impl InvariantsDocument {
    pub fn new(inv: &InvariantSet) -> Self {
        Self {
            total_degree: inv.total_degree,
            caps: inv.caps.clone(),
            cap_coeff: inv.cap_coeff.to_string(),
            support: inv.support.clone(),
            extremal: inv
                .extremal
                .iter()
                .map(|(i, c)| IndexedCoeff { index: i.clone(), coeff: c.to_string() })
                .collect(),
            top_coeffs: inv
                .top_coeffs
                .iter()
                .map(|(d, c)| MonomialEntry { monomial: d.clone(), coeff: format_rational(c) })
                .collect(),
        }
    }
}
