//! Python bindings for the fuzzy-lattice toolkit: frames, certified
//! lattices, t-norms, and direct products, with JSON report strings for the
//! structured verdicts.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use fuzlat::gen::{self, GenConfig};
use fuzlat::io::{self, Format, MatrixDocument};
use fuzlat::morphism;
use fuzlat::order::BoundedFuzzyLattice;
use fuzlat::product::{self, ProductOptions};
use fuzlat::verify::{self, VerifyConfig};
use fuzlat::{laws, tnorm, FuzzyRelationFrame, Grade};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string_pretty(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// A labeled carrier with a fuzzy relation matrix.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Frame {
    inner: FuzzyRelationFrame,
}

#[pymethods]
impl Frame {
    #[new]
    fn new(elements: Vec<String>, mu: Vec<Vec<f64>>) -> PyResult<Self> {
        Ok(Frame {
            inner: FuzzyRelationFrame::new(elements, mu).map_err(value_error)?,
        })
    }

    /// Load a matrix document (JSON or CSV by extension).
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let format = Format::from_path(std::path::Path::new(path));
        Ok(Frame {
            inner: io::load(path, format).map_err(value_error)?,
        })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        let format = Format::from_path(std::path::Path::new(path));
        let doc = MatrixDocument::from_frame(&self.inner);
        io::save(&doc, path, format).map_err(value_error)
    }

    fn elements(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn mu(&self) -> Vec<Vec<f64>> {
        self.inner.rows()
    }

    fn grade(&self, a: &str, b: &str) -> PyResult<f64> {
        let i = self.index(a)?;
        let j = self.index(b)?;
        Ok(self.inner.grade(i, j).value())
    }

    fn is_fuzzy_poset(&self) -> bool {
        self.inner.is_fuzzy_poset().pass
    }

    /// Full axiom report as a JSON string.
    fn poset_report(&self) -> PyResult<String> {
        to_json(&self.inner.is_fuzzy_poset())
    }

    /// First transitivity counterexample as labels, or None.
    fn witness_intransitivity(&self) -> Option<(String, String, String)> {
        self.inner.witness_intransitivity().map(|[a, b, c]| {
            (
                self.inner.label(a).to_string(),
                self.inner.label(b).to_string(),
                self.inner.label(c).to_string(),
            )
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Frame({} elements)", self.inner.len())
    }
}

impl Frame {
    fn index(&self, label: &str) -> PyResult<usize> {
        self.inner
            .index_of(label)
            .ok_or_else(|| value_error(format!("no element labeled {label:?}")))
    }
}

/// A certified bounded fuzzy lattice.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Lattice {
    inner: BoundedFuzzyLattice,
}

#[pymethods]
impl Lattice {
    /// Certify a frame; raises ValueError with the failure when it is not a
    /// bounded fuzzy lattice.
    #[staticmethod]
    fn certify(frame: &Frame) -> PyResult<Self> {
        BoundedFuzzyLattice::certify(frame.inner.clone())
            .map(|inner| Lattice { inner })
            .map_err(value_error)
    }

    #[staticmethod]
    fn one_element(label: &str) -> Self {
        Lattice {
            inner: BoundedFuzzyLattice::one_element(label),
        }
    }

    fn frame(&self) -> Frame {
        Frame {
            inner: self.inner.frame().clone(),
        }
    }

    fn elements(&self) -> Vec<String> {
        self.inner.frame().labels().to_vec()
    }

    fn bottom(&self) -> String {
        self.inner.label(self.inner.bottom()).to_string()
    }

    fn top(&self) -> String {
        self.inner.label(self.inner.top()).to_string()
    }

    fn meet(&self, a: &str, b: &str) -> PyResult<String> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        Ok(self.inner.label(self.inner.meet(i, j)).to_string())
    }

    fn join(&self, a: &str, b: &str) -> PyResult<String> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        Ok(self.inner.label(self.inner.join(i, j)).to_string())
    }

    fn is_distributive(&self) -> bool {
        laws::check_distributive(&self.inner).holds()
    }

    fn is_modular(&self) -> bool {
        laws::check_modular(&self.inner).holds
    }

    /// Search for an isomorphism; returns a label-to-label dict or None.
    fn find_isomorphism(&self, other: &Lattice) -> PyResult<Option<BTreeMap<String, String>>> {
        let found = morphism::find_isomorphism(&self.inner, &other.inner).map_err(value_error)?;
        Ok(found.map(|map| {
            map.assignment()
                .iter()
                .enumerate()
                .map(|(i, &j)| {
                    (
                        self.inner.label(i).to_string(),
                        other.inner.label(j).to_string(),
                    )
                })
                .collect()
        }))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Lattice({} elements, bottom={}, top={})",
            self.inner.len(),
            self.bottom(),
            self.top()
        )
    }
}

impl Lattice {
    fn index(&self, label: &str) -> PyResult<usize> {
        self.inner
            .frame()
            .index_of(label)
            .ok_or_else(|| value_error(format!("no element labeled {label:?}")))
    }
}

/// A triangular norm operator.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct TNorm {
    inner: tnorm::TNorm,
}

#[pymethods]
impl TNorm {
    /// One of: minimum, algebraic, lukasiewicz, hamacher,
    /// hamacher-paper-nary.
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(TNorm {
            inner: tnorm::TNorm::builtin(name).map_err(value_error)?,
        })
    }

    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    fn apply(&self, a: f64, b: f64) -> PyResult<f64> {
        let a = Grade::new(a).map_err(value_error)?;
        let b = Grade::new(b).map_err(value_error)?;
        Ok(self.inner.apply(a, b).value())
    }

    /// Left-fold n-ary extension (closed form for hamacher-paper-nary).
    fn extend(&self, grades: Vec<f64>) -> PyResult<f64> {
        let grades: Vec<Grade> = grades
            .into_iter()
            .map(|v| Grade::new(v).map_err(value_error))
            .collect::<PyResult<_>>()?;
        Ok(self.inner.extend(&grades).map_err(value_error)?.value())
    }

    /// "has", "none", or "unknown".
    fn zero_divisors(&self) -> &'static str {
        match self.inner.zero_divisor_status() {
            tnorm::ZeroDivisorStatus::HasZeroDivisors => "has",
            tnorm::ZeroDivisorStatus::NoZeroDivisors => "none",
            tnorm::ZeroDivisorStatus::Unknown => "unknown",
        }
    }

    fn __repr__(&self) -> String {
        format!("TNorm({})", self.inner.name())
    }
}

/// The direct product of certified lattices under a t-norm.
#[pyclass(frozen)]
struct Product {
    inner: product::ProductFrame,
}

#[pymethods]
impl Product {
    fn frame(&self) -> Frame {
        Frame {
            inner: self.inner.frame().clone(),
        }
    }

    /// Certify the product relation, cross-checking the coordinatewise
    /// tables; raises ValueError on failure.
    fn certify(&self) -> PyResult<Lattice> {
        self.inner
            .certify()
            .map(|inner| Lattice { inner })
            .map_err(value_error)
    }

    fn witness_intransitivity(&self) -> Option<(String, String, String)> {
        let f = self.inner.frame();
        self.inner.witness_intransitivity().map(|[a, b, c]| {
            (
                f.label(a).to_string(),
                f.label(b).to_string(),
                f.label(c).to_string(),
            )
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Product({} elements under {})",
            self.inner.len(),
            self.inner.tnorm().name()
        )
    }
}

/// Build the direct product of one or more certified lattices.
#[pyfunction]
#[pyo3(signature = (factors, tnorm, sep = ""))]
fn direct_product(factors: Vec<Lattice>, tnorm: &TNorm, sep: &str) -> PyResult<Product> {
    let factors: Vec<BoundedFuzzyLattice> = factors.into_iter().map(|l| l.inner).collect();
    let options = ProductOptions {
        separator: sep.to_string(),
        ..ProductOptions::default()
    };
    product::direct_product(factors, tnorm.inner.clone(), &options)
        .map(|inner| Product { inner })
        .map_err(value_error)
}

/// Generate a random bounded fuzzy lattice (sizes 2..=6 by default).
#[pyfunction]
#[pyo3(signature = (seed, min_size = 2, max_size = 6))]
fn gen_lattice(seed: u64, min_size: usize, max_size: usize) -> PyResult<Lattice> {
    let cfg = GenConfig {
        size_range: (min_size, max_size),
        ..GenConfig::lattices(seed)
    };
    gen::gen_bounded_fuzzy_lattice(&cfg)
        .map(|inner| Lattice { inner })
        .map_err(value_error)
}

/// Run a verification target; returns (passed, report_json).
#[pyfunction]
#[pyo3(signature = (theorem, trials = 100, seed = 0))]
fn verify_theorem(theorem: &str, trials: u64, seed: u64) -> PyResult<(bool, String)> {
    let theorem = verify::Theorem::parse(theorem).map_err(value_error)?;
    let run =
        verify::verify_theorem(theorem, &VerifyConfig::new(trials, seed)).map_err(value_error)?;
    Ok((run.passed(), to_json(&run)?))
}

/// Compare two frames entrywise within a tolerance; returns (equal,
/// report_json).
#[pyfunction]
#[pyo3(signature = (a, b, tol = 0.0))]
fn compare(a: &Frame, b: &Frame, tol: f64) -> PyResult<(bool, String)> {
    let report = io::compare(&a.inner, &b.inner, tol).map_err(value_error)?;
    Ok((report.pass, to_json(&report)?))
}

#[pymodule]
fn fuzlat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Frame>()?;
    m.add_class::<Lattice>()?;
    m.add_class::<TNorm>()?;
    m.add_class::<Product>()?;
    m.add_function(wrap_pyfunction!(direct_product, m)?)?;
    m.add_function(wrap_pyfunction!(gen_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    Ok(())
}
