//! Python bindings: `Monomial`, `Series` and the main operations.
//! Coefficients cross the boundary as `fractions.Fraction`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use planar_core::{self as core, Label, Rational, Report, Style};
use pyo3::basic::CompareOp;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn labels(spec: &str) -> PyResult<Vec<Label>> {
    spec.chars()
        .map(|c| match c {
            'x' => Ok(Label::X),
            'y' => Ok(Label::Y),
            other => Err(err(format!("unknown label '{other}'"))),
        })
        .collect()
}

fn report_dict(py: Python<'_>, r: &Report) -> PyResult<Py<PyAny>> {
    let text = r.to_json().to_string();
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A planar reduced rooted tree with x/y leaves, or the unit.
#[pyclass(frozen, from_py_object, module = "planar_series")]
#[derive(Clone)]
struct Monomial(core::Monomial);

#[pymethods]
impl Monomial {
    /// Parses the canonical encoding, e.g. `"(x,(x,y))"`.
    #[new]
    fn new(encoding: &str) -> PyResult<Self> {
        encoding.parse().map(Monomial).map_err(err)
    }

    #[staticmethod]
    fn unit() -> Self {
        Monomial(core::Monomial::unit())
    }

    #[staticmethod]
    fn x() -> Self {
        Monomial(core::Monomial::x())
    }

    #[staticmethod]
    fn y() -> Self {
        Monomial(core::Monomial::y())
    }

    #[staticmethod]
    fn graft(parts: Vec<Monomial>) -> PyResult<Self> {
        let parts: Vec<_> = parts.into_iter().map(|m| m.0).collect();
        core::graft(&parts).map(Monomial).map_err(err)
    }

    #[getter]
    fn deg_x(&self) -> usize {
        self.0.deg_x()
    }

    #[getter]
    fn deg_y(&self) -> usize {
        self.0.deg_y()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn encoding(&self) -> String {
        self.0.encoding().to_string()
    }

    fn pretty(&self) -> String {
        core::pretty_monomial(&self.0)
    }

    fn orbit(&self) -> Vec<Monomial> {
        core::orbit_sum(&self.0).into_iter().map(Monomial).collect()
    }

    fn decompositions(&self, m: usize) -> PyResult<Vec<Vec<Monomial>>> {
        let parts = core::decompositions(&self.0, m).map_err(err)?;
        Ok(parts
            .into_iter()
            .map(|t| t.into_iter().map(Monomial).collect())
            .collect())
    }

    /// 1-based leaf index.
    fn delete_leaf(&self, index: usize) -> PyResult<Self> {
        core::delete_leaf_and_reduce(&self.0, index)
            .map(Monomial)
            .map_err(err)
    }

    fn relabel_leaf(&self, index: usize, label: &str) -> PyResult<Self> {
        let label = match labels(label)?.as_slice() {
            [l] => *l,
            _ => return Err(err("label must be 'x' or 'y'")),
        };
        core::relabel_leaf(&self.0, index, label)
            .map(Monomial)
            .map_err(err)
    }

    fn __str__(&self) -> String {
        self.pretty()
    }

    fn __repr__(&self) -> String {
        format!("Monomial('{}')", self.0.encoding())
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __richcmp__(&self, other: &Self, op: CompareOp) -> bool {
        op.matches(self.0.cmp(&other.0))
    }
}

/// A truncated series with exact rational coefficients.
#[pyclass(frozen, skip_from_py_object, module = "planar_series")]
#[derive(Clone)]
struct Series(core::Series);

fn rational(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(n) = value.extract::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    value.extract::<Rational>()
}

fn monomial_arg(value: &Bound<'_, PyAny>) -> PyResult<core::Monomial> {
    if let Ok(m) = value.cast::<Monomial>() {
        return Ok(m.get().0.clone());
    }
    let text: String = value.extract()?;
    text.parse().map_err(err)
}

#[pymethods]
impl Series {
    /// Parses an expression such as `"x - 1/2*x^2 + {x*x^2}"`. The
    /// precision defaults to the largest x-degree present.
    #[new]
    #[pyo3(signature = (text, precision=None))]
    fn new(text: &str, precision: Option<usize>) -> PyResult<Self> {
        let f = core::parse(text).map_err(err)?;
        Ok(Series(match precision {
            Some(p) if p >= f.precision() => f.as_polynomial(p),
            Some(p) => f.truncate(p),
            None => f,
        }))
    }

    #[staticmethod]
    fn zero(precision: usize) -> Self {
        Series(core::Series::zero(precision))
    }

    #[staticmethod]
    fn one(precision: usize) -> Self {
        Series(core::Series::one(precision))
    }

    #[staticmethod]
    fn x(precision: usize) -> Self {
        Series(core::Series::x(precision))
    }

    #[staticmethod]
    fn y(precision: usize) -> Self {
        Series(core::Series::y(precision))
    }

    #[getter]
    fn precision(&self) -> usize {
        self.0.precision()
    }

    fn coefficient(&self, monomial: &Bound<'_, PyAny>) -> PyResult<Rational> {
        self.0.coefficient(&monomial_arg(monomial)?).map_err(err)
    }

    fn terms(&self) -> Vec<(Monomial, Rational)> {
        self.0
            .terms()
            .map(|(m, c)| (Monomial(m.clone()), c.clone()))
            .collect()
    }

    fn truncate(&self, precision: usize) -> Self {
        Series(self.0.truncate(precision))
    }

    fn homogeneous_component(&self, n: usize) -> PyResult<Self> {
        self.0.homogeneous_component(n).map(Series).map_err(err)
    }

    /// `"canonical"`, `"pretty"` or `"json"`.
    #[pyo3(signature = (style="pretty"))]
    fn format(&self, style: &str) -> PyResult<String> {
        let style: Style = style.parse().map_err(err)?;
        Ok(core::format(&self.0, style))
    }

    fn __add__(&self, other: &Self) -> Self {
        Series(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Series(&self.0 - &other.0)
    }

    fn __neg__(&self) -> Self {
        Series(-&self.0)
    }

    /// Binary product with another series, or scaling by a number.
    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(s) = other.cast::<Series>() {
            return Ok(Series(&self.0 * &s.get().0));
        }
        Ok(Series(self.0.scale(&rational(other)?)))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Series(self.0.scale(&rational(other)?)))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        core::format_pretty(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "Series('{}', precision={})",
            core::format_pretty(&self.0),
            self.0.precision()
        )
    }
}

fn unwrap_all(list: &Bound<'_, PyList>) -> PyResult<Vec<core::Series>> {
    list.iter()
        .map(|item| Ok(item.cast::<Series>()?.get().0.clone()))
        .collect()
}

/// m-ary product of a list of series.
#[pyfunction]
fn product(args: &Bound<'_, PyList>) -> PyResult<Series> {
    let owned = unwrap_all(args)?;
    let refs: Vec<&core::Series> = owned.iter().collect();
    core::product(&refs).map(Series).map_err(err)
}

/// `f(x ↦ g, y ↦ h)`; `h` defaults to `y`.
#[pyfunction]
#[pyo3(signature = (f, g, h=None))]
fn substitute(f: &Series, g: &Series, h: Option<&Series>) -> PyResult<Series> {
    match h {
        Some(h) => core::substitute(&f.0, &g.0, &h.0),
        None => core::substitute_x(&f.0, &g.0),
    }
    .map(Series)
    .map_err(err)
}

#[pyfunction]
fn eval_y_one(f: &Series) -> Series {
    Series(core::eval_y_one(&f.0))
}

#[pyfunction]
fn differential(f: &Series) -> PyResult<Series> {
    core::differential(&f.0).map(Series).map_err(err)
}

#[pyfunction]
fn derivative(f: &Series) -> PyResult<Series> {
    core::derivative(&f.0).map(Series).map_err(err)
}

/// The derivation `h·d/dx` applied to `f`.
#[pyfunction]
fn derivation_apply(h: &Series, f: &Series) -> PyResult<Series> {
    core::derivation_apply(&h.0, &f.0).map(Series).map_err(err)
}

#[pyfunction]
fn exp_k(k: u32, precision: usize) -> PyResult<Series> {
    core::exp_k(k, precision).map(Series).map_err(err)
}

#[pyfunction]
fn log_k(k: u32, precision: usize) -> PyResult<Series> {
    core::log_k(k, precision).map(Series).map_err(err)
}

#[pyfunction]
fn reversion(g: &Series, precision: usize) -> PyResult<Series> {
    core::reversion(&g.0, precision).map(Series).map_err(err)
}

#[pyfunction]
fn h_closed_form(k: u32, n: usize) -> PyResult<Series> {
    core::h_closed_form(k, n).map(Series).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, labels="x"))]
fn enumerate_monomials(n: usize, labels: &str) -> PyResult<Vec<Monomial>> {
    let labels = self::labels(labels)?;
    Ok(core::enumerate_monomials(n, &labels)
        .into_iter()
        .map(Monomial)
        .collect())
}

#[pyfunction]
fn parse(text: &str) -> PyResult<Series> {
    core::parse(text).map(Series).map_err(err)
}

#[pyfunction]
fn verify_chain_rule(py: Python<'_>, f: &Series, g: &Series) -> PyResult<Py<PyAny>> {
    report_dict(py, &core::verify_chain_rule(&f.0, &g.0))
}

#[pyfunction]
fn verify_special_chain_rule(py: Python<'_>, f: &Series, g: &Series) -> PyResult<Py<PyAny>> {
    report_dict(py, &core::verify_special_chain_rule(&f.0, &g.0))
}

/// Runs a named special-series check (`exp-functional`, `exp-derivative`,
/// `omega`, `log-ode`, `h-recurrence`, `h4-report`) and returns its report.
#[pyfunction]
#[pyo3(signature = (check, k, precision=6))]
fn verify(py: Python<'_>, check: &str, k: u32, precision: usize) -> PyResult<Py<PyAny>> {
    let report = match check {
        "exp-functional" => core::verify_exp_functional_equation(k, precision),
        "exp-derivative" => core::verify_exp_derivative(k, precision),
        "omega" => core::verify_omega_equation(k, precision),
        "log-ode" => core::verify_log_ode(k, precision),
        "h-recurrence" => core::verify_h_recurrence(k, precision),
        "h4-report" => core::h4_discrepancy_report(k),
        other => return Err(err(format!("unknown check '{other}'"))),
    }
    .map_err(err)?;
    report_dict(py, &report)
}

#[pymodule]
fn planar_series(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Monomial>()?;
    m.add_class::<Series>()?;
    m.add_function(wrap_pyfunction!(product, m)?)?;
    m.add_function(wrap_pyfunction!(substitute, m)?)?;
    m.add_function(wrap_pyfunction!(eval_y_one, m)?)?;
    m.add_function(wrap_pyfunction!(differential, m)?)?;
    m.add_function(wrap_pyfunction!(derivative, m)?)?;
    m.add_function(wrap_pyfunction!(derivation_apply, m)?)?;
    m.add_function(wrap_pyfunction!(exp_k, m)?)?;
    m.add_function(wrap_pyfunction!(log_k, m)?)?;
    m.add_function(wrap_pyfunction!(reversion, m)?)?;
    m.add_function(wrap_pyfunction!(h_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_monomials, m)?)?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(verify_chain_rule, m)?)?;
    m.add_function(wrap_pyfunction!(verify_special_chain_rule, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
