//! Python module `dmodpoly`.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use dmodpoly_core::dimension::{self, DimensionReport};
use dmodpoly_core::io::{self, BasisDocument, BernsteinDocument, DimensionDocument, InvariantsDocument};
use dmodpoly_core::numerical::{self, IndexSet};
use dmodpoly_core::oracle::{self, RankQuery};
use dmodpoly_core::weyl::format_rational;
use dmodpoly_core::{Error, ExponentPair, Partition};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Verification(_) | Error::NotConverged(_) | Error::ThresholdNotFound(_) | Error::BudgetExceeded(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A presentation `E / N` read from or written to the JSON document format.
#[pyclass(frozen)]
struct Presentation {
    inner: dimension::Presentation,
}

#[pymethods]
impl Presentation {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: io::parse_presentation(text).map_err(py_err)? })
    }

    fn to_json(&self) -> String {
        io::render_presentation(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn partition(&self) -> Vec<usize> {
        self.inner.partition().sizes().to_vec()
    }

    /// The Groebner basis document as JSON.
    fn groebner_basis(&self) -> PyResult<String> {
        let basis = self.inner.basis().map_err(py_err)?;
        Ok(io::to_json(&BasisDocument::new(&basis)))
    }

    fn dimension_polynomial(&self) -> PyResult<Report> {
        Ok(Report { inner: dimension::dimension_polynomial(&self.inner).map_err(py_err)? })
    }

    /// `(psi, d, e)` with `psi` rendered as text.
    fn bernstein(&self) -> PyResult<(String, Option<u32>, BigInt)> {
        let b = dimension::bernstein_polynomial(&self.inner).map_err(py_err)?;
        Ok((b.psi.to_string(), b.dimension, b.multiplicity))
    }

    fn bernstein_json(&self) -> PyResult<String> {
        let b = dimension::bernstein_polynomial(&self.inner).map_err(py_err)?;
        Ok(io::to_json(&BernsteinDocument::new(&b)))
    }

    /// `dim_K M_r` by direct counting over the Groebner basis.
    fn count(&self, r: Vec<i64>) -> PyResult<u64> {
        let basis = self.inner.basis().map_err(py_err)?;
        Ok(dimension::count_uvw(&basis, &r).map_err(py_err)?.u())
    }

    /// `dim_K M_r` by the rank oracle.
    fn rank_dimension(&self, r: Vec<i64>) -> PyResult<u64> {
        Ok(oracle::rank_dimension(&RankQuery::new(self.inner.clone(), r)).map_err(py_err)?.dim)
    }

    fn __repr__(&self) -> String {
        format!(
            "Presentation(n={}, partition={:?}, m={}, relations={})",
            self.inner.n(),
            self.inner.partition().sizes(),
            self.inner.m(),
            self.inner.relations().len()
        )
    }
}

/// Result of the dimension polynomial computation.
#[pyclass(frozen)]
struct Report {
    inner: DimensionReport,
}

#[pymethods]
impl Report {
    #[getter]
    fn phi(&self) -> String {
        self.inner.phi.to_string()
    }

    /// Canonical coefficients as `(index, coeff)` pairs.
    #[getter]
    fn coefficients(&self) -> Vec<(Vec<u32>, BigInt)> {
        self.inner.phi.coeffs().iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    /// Monomial-basis coefficients as `(exponents, "num/den")` pairs.
    #[getter]
    fn monomial_coefficients(&self) -> Vec<(Vec<u32>, String)> {
        self.inner.phi.monomial_view().coeffs().iter().map(|(k, v)| (k.clone(), format_rational(v))).collect()
    }

    #[getter]
    fn total_degree(&self) -> Option<u32> {
        self.inner.phi.total_degree()
    }

    #[getter]
    fn holonomic(&self) -> bool {
        self.inner.holonomic
    }

    fn eval(&self, r: Vec<i64>) -> PyResult<BigInt> {
        if r.len() != self.inner.phi.p() {
            return Err(PyValueError::new_err(format!("expected {} values", self.inner.phi.p())));
        }
        Ok(self.inner.phi.eval(&r))
    }

    fn invariants_json(&self) -> String {
        io::to_json(&InvariantsDocument::new(&self.inner.invariants))
    }

    fn to_json(&self) -> String {
        io::to_json(&DimensionDocument::new(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("Report(phi={})", self.inner.phi)
    }
}

/// `omega_A` for points of `N^q` split into blocks of the given sizes.
#[pyfunction]
fn omega(points: Vec<Vec<u32>>, blocks: Vec<usize>) -> PyResult<Vec<(Vec<u32>, BigInt)>> {
    let set = IndexSet::new(points, Partition::new(blocks).map_err(py_err)?).map_err(py_err)?;
    Ok(numerical::omega(&set).coeffs().iter().map(|(k, v)| (k.clone(), v.clone())).collect())
}

type PyTerms = Vec<(String, Vec<u32>, Vec<u32>)>;

fn weyl_from(n: usize, terms: PyTerms) -> PyResult<dmodpoly_core::WeylElement> {
    let parsed = terms
        .into_iter()
        .map(|(c, a, b)| {
            let c = io::parse_rational(&c).ok_or_else(|| PyValueError::new_err(format!("bad coefficient '{}'", c)))?;
            Ok((ExponentPair::new(a, b).map_err(py_err)?, c))
        })
        .collect::<PyResult<Vec<_>>>()?;
    dmodpoly_core::WeylElement::from_terms(n, parsed).map_err(py_err)
}

/// Product of two Weyl algebra elements given as `(coeff, alpha, beta)` lists.
#[pyfunction]
fn weyl_mul(n: usize, a: PyTerms, b: PyTerms) -> PyResult<PyTerms> {
    let prod = weyl_from(n, a)?.mul(&weyl_from(n, b)?).map_err(py_err)?;
    Ok(prod.terms().map(|(t, c)| (format_rational(c), t.alpha().to_vec(), t.beta().to_vec())).collect())
}

#[pymodule]
fn dmodpoly(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Presentation>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(omega, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_mul, m)?)?;
    Ok(())
}
