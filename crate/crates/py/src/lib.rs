//! Python bindings: `import pytdpair`.
//!
//! Field elements cross the boundary as strings ("3", "-7/2", residues as
//! integers in text form); reports come back as plain dicts and lists
//! mirroring the JSON the command-line tool prints.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde::Serialize;
use serde_json::Value;

use tdpair::mu::{
    check_phi, monomials as core_monomials, mu_verification, natural_inverse, natural_map,
    phi_matrix,
};
use tdpair::params::{
    check_feasible, geometric_sequence, qracah_construct, qracah_witness, recurrence_sequence,
    validate_parameter_array, ParameterArray, QRacahParams, SequenceJson,
};
use tdpair::relators::{directness_check, in_r, verify_psi_identities};
use tdpair::scan::conjecture_scan;
use tdpair::words::{enumerate_words, enumerate_zigzag, is_zigzag, kappa_of, word_mul};
use tdpair::{
    FieldCtx, FieldElement, Monomial, ParameterSequence, SparseMatrix, TElement, WordType,
};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(xs) => {
            let list = PyList::empty(py);
            for x in xs {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(m) => {
            let dict = PyDict::new(py);
            for (k, x) in m {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

fn report<'py>(py: Python<'py>, x: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &serde_json::to_value(x).map_err(err)?)
}

fn parse_field(field: &str) -> PyResult<FieldCtx> {
    field.parse().map_err(err)
}

/// Accepts ints and strings such as "3/4".
fn element(ctx: FieldCtx, x: &Bound<'_, PyAny>) -> PyResult<FieldElement> {
    ctx.parse_element(&x.str()?.to_string()).map_err(err)
}

fn elements(ctx: FieldCtx, xs: &[Bound<'_, PyAny>]) -> PyResult<Vec<FieldElement>> {
    xs.iter().map(|x| element(ctx, x)).collect()
}

fn strings(xs: &[FieldElement]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn word_type(n: Option<usize>, lam: Option<&str>) -> PyResult<WordType> {
    match (n, lam) {
        (Some(n), None) => Ok(WordType::bracket(n)),
        (None, Some(s)) => s.parse().map_err(err),
        _ => Err(PyValueError::new_err("give exactly one of n or lam")),
    }
}

/// A feasible-or-not pair of eigenvalue and dual eigenvalue sequences.
#[pyclass(name = "Sequence", module = "pytdpair", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySequence {
    inner: ParameterSequence,
}

#[pymethods]
impl PySequence {
    #[new]
    #[pyo3(signature = (theta, theta_star, field = "rational"))]
    fn new(
        theta: Vec<Bound<'_, PyAny>>,
        theta_star: Vec<Bound<'_, PyAny>>,
        field: &str,
    ) -> PyResult<Self> {
        let ctx = parse_field(field)?;
        let inner =
            ParameterSequence::new(ctx, elements(ctx, &theta)?, elements(ctx, &theta_star)?)
                .map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let json: SequenceJson = serde_json::from_str(text).map_err(err)?;
        Ok(Self {
            inner: ParameterSequence::from_json(&json).map_err(err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (vartheta, d, field = "rational"))]
    fn geometric(vartheta: Bound<'_, PyAny>, d: usize, field: &str) -> PyResult<Self> {
        let ctx = parse_field(field)?;
        Ok(Self {
            inner: geometric_sequence(&element(ctx, &vartheta)?, d).map_err(err)?,
        })
    }

    /// Both halves from the recurrence with a shared beta.
    #[staticmethod]
    #[pyo3(signature = (beta, start, start_star, d, field = "rational"))]
    fn recurrence(
        beta: Bound<'_, PyAny>,
        start: Vec<Bound<'_, PyAny>>,
        start_star: Vec<Bound<'_, PyAny>>,
        d: usize,
        field: &str,
    ) -> PyResult<Self> {
        let ctx = parse_field(field)?;
        let beta = element(ctx, &beta)?;
        let (t, s) = (elements(ctx, &start)?, elements(ctx, &start_star)?);
        if t.len() != 3 || s.len() != 3 {
            return Err(PyValueError::new_err(
                "need three starting values per sequence",
            ));
        }
        let theta = recurrence_sequence(&beta, &t[0], &t[1], &t[2], d).map_err(err)?;
        let theta_star = recurrence_sequence(&beta, &s[0], &s[1], &s[2], d).map_err(err)?;
        Ok(Self {
            inner: ParameterSequence::new(ctx, theta, theta_star).map_err(err)?,
        })
    }

    /// `alpha + b q^(2i-d) + c q^(d-2i)` and its starred analogue.
    #[staticmethod]
    #[pyo3(signature = (q, alpha, b, c, alpha_star, b_star, c_star, d, field = "rational"))]
    #[allow(clippy::too_many_arguments)]
    fn qracah(
        q: Bound<'_, PyAny>,
        alpha: Bound<'_, PyAny>,
        b: Bound<'_, PyAny>,
        c: Bound<'_, PyAny>,
        alpha_star: Bound<'_, PyAny>,
        b_star: Bound<'_, PyAny>,
        c_star: Bound<'_, PyAny>,
        d: usize,
        field: &str,
    ) -> PyResult<Self> {
        let ctx = parse_field(field)?;
        let args = QRacahParams {
            q: element(ctx, &q)?,
            alpha: element(ctx, &alpha)?,
            b: element(ctx, &b)?,
            c: element(ctx, &c)?,
            alpha_star: element(ctx, &alpha_star)?,
            b_star: element(ctx, &b_star)?,
            c_star: element(ctx, &c_star)?,
        };
        Ok(Self {
            inner: qracah_construct(&args, d).map_err(err)?,
        })
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.ctx().label()
    }

    #[getter]
    fn theta(&self) -> Vec<String> {
        strings(self.inner.theta())
    }

    #[getter]
    fn theta_star(&self) -> Vec<String> {
        strings(self.inner.theta_star())
    }

    fn digest(&self) -> String {
        self.inner.digest()
    }

    fn is_feasible(&self) -> bool {
        self.inner.is_feasible()
    }

    fn feasibility<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &check_feasible(&self.inner))
    }

    fn qracah_witness<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &qracah_witness(&self.inner).map_err(err)?)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_json()).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Sequence(theta={:?}, theta_star={:?}, field={:?})",
            self.theta(),
            self.theta_star(),
            self.field()
        )
    }
}

/// A word in the generators `E0..Ed` and `e0..ed`.
#[pyclass(
    name = "Word",
    module = "pytdpair",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyWord {
    inner: tdpair::Word,
}

#[pymethods]
impl PyWord {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: text.parse().map_err(err)?,
        })
    }

    #[getter]
    fn indices(&self) -> Vec<usize> {
        self.inner.indices().iter().map(|&i| i as usize).collect()
    }

    #[getter]
    fn word_type(&self) -> String {
        self.inner.word_type().to_string()
    }

    fn is_zigzag(&self) -> bool {
        is_zigzag(&self.inner)
    }

    /// `None` for constant or non-zigzag words.
    fn kappa(&self) -> Option<usize> {
        kappa_of(&self.inner).ok()
    }

    /// The monomial of a zigzag word of type `[n]`.
    fn monomial(&self) -> PyResult<Vec<usize>> {
        Ok(natural_inverse(&self.inner)
            .map_err(err)?
            .indices()
            .iter()
            .map(|&i| i as usize)
            .collect())
    }

    /// Product in the free algebra; `None` when it vanishes.
    fn __mul__(&self, other: &PyWord) -> Option<PyWord> {
        word_mul(&self.inner, &other.inner).map(|inner| PyWord { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word({:?})", self.inner.to_string())
    }
}

fn word_strings(words: Vec<tdpair::Word>) -> Vec<String> {
    words.iter().map(ToString::to_string).collect()
}

/// Words of a type, given as `n` (for `[n]`) or as text like
/// `"length=4,begin=E0,end=e1"`.
#[pyfunction]
#[pyo3(signature = (d, n = None, lam = None))]
fn words(d: usize, n: Option<usize>, lam: Option<&str>) -> PyResult<Vec<String>> {
    Ok(word_strings(
        enumerate_words(&word_type(n, lam)?, d).map_err(err)?,
    ))
}

#[pyfunction]
#[pyo3(signature = (d, n = None, lam = None))]
fn zigzag_words(d: usize, n: Option<usize>, lam: Option<&str>) -> PyResult<Vec<String>> {
    Ok(word_strings(
        enumerate_zigzag(&word_type(n, lam)?, d).map_err(err)?,
    ))
}

/// Degree-`n` monomials in `x_0..x_d` as nonincreasing index lists.
#[pyfunction]
fn monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
    core_monomials(n, d)
        .iter()
        .map(|m| m.indices().iter().map(|&i| i as usize).collect())
        .collect()
}

#[pyfunction]
fn monomial_to_word(indices: Vec<usize>) -> PyResult<PyWord> {
    let idx = indices
        .into_iter()
        .map(|i| u8::try_from(i).map_err(err))
        .collect::<PyResult<Vec<u8>>>()?;
    Ok(PyWord {
        inner: natural_map(&Monomial::new(idx)),
    })
}

#[pyfunction]
#[pyo3(signature = (seq, n = None, lam = None))]
fn directness<'py>(
    py: Python<'py>,
    seq: &PySequence,
    n: Option<usize>,
    lam: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let lambda = word_type(n, lam)?;
    let cert = py
        .detach(|| directness_check(&lambda, &seq.inner))
        .map_err(err)?;
    report(py, &cert)
}

#[pyfunction]
#[pyo3(signature = (seq, n_max = 3))]
fn mu_verify<'py>(py: Python<'py>, seq: &PySequence, n_max: usize) -> PyResult<Bound<'py, PyAny>> {
    let rep = py
        .detach(|| mu_verification(&seq.inner, n_max))
        .map_err(err)?;
    report(py, &rep)
}

#[pyfunction]
#[pyo3(signature = (seq, allow_large = false))]
fn psi_check<'py>(
    py: Python<'py>,
    seq: &PySequence,
    allow_large: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let rep = py
        .detach(|| verify_psi_identities(&seq.inner, allow_large))
        .map_err(err)?;
    report(py, &rep)
}

/// Ideal membership for `sum coeff * word`, given as `[(word, coeff), ...]`.
#[pyfunction]
fn in_relator_ideal(seq: &PySequence, terms: Vec<(String, Bound<'_, PyAny>)>) -> PyResult<bool> {
    let ctx = seq.inner.ctx();
    let terms = terms
        .iter()
        .map(|(w, c)| Ok((w.parse().map_err(err)?, element(ctx, c)?)))
        .collect::<PyResult<Vec<_>>>()?;
    let x = TElement::from_terms(ctx, seq.inner.d(), terms).map_err(err)?;
    in_r(&x, &seq.inner).map_err(err)
}

/// Rows of the `phi` matrix together with its triangularity check.
#[pyfunction]
fn phi<'py>(py: Python<'py>, seq: &PySequence) -> PyResult<Bound<'py, PyAny>> {
    let m = phi_matrix(&seq.inner).map_err(err)?;
    let rows: Vec<Vec<String>> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m.get(i, j).to_string()).collect())
        .collect();
    report(
        py,
        &serde_json::json!({ "rows": rows, "check": check_phi(&m) }),
    )
}

#[pyfunction]
fn validate_array<'py>(
    py: Python<'py>,
    seq: &PySequence,
    zeta: Vec<Bound<'_, PyAny>>,
) -> PyResult<Bound<'py, PyAny>> {
    let zeta = elements(seq.inner.ctx(), &zeta)?;
    let arr = ParameterArray::new(seq.inner.clone(), zeta).map_err(err)?;
    report(py, &validate_parameter_array(&arr).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (d, max_length = 5, samples = 10, seed = 0, field = "rational"))]
fn scan<'py>(
    py: Python<'py>,
    d: usize,
    max_length: usize,
    samples: usize,
    seed: u64,
    field: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let ctx = parse_field(field)?;
    let rep = py
        .detach(|| conjecture_scan(d, max_length, samples, seed, ctx))
        .map_err(err)?;
    report(py, &rep)
}

/// Exact rank of a dense matrix of ints or rational strings.
#[pyfunction]
#[pyo3(signature = (rows, field = "rational"))]
fn rank(rows: Vec<Vec<Bound<'_, PyAny>>>, field: &str) -> PyResult<usize> {
    let ctx = parse_field(field)?;
    let rows = rows
        .iter()
        .map(|r| elements(ctx, r))
        .collect::<PyResult<Vec<_>>>()?;
    let m = SparseMatrix::from_dense(ctx, &rows).map_err(err)?;
    Ok(tdpair::linalg::rank(&m))
}

/// Adds the classes and functions to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySequence>()?;
    m.add_class::<PyWord>()?;
    m.add_function(wrap_pyfunction!(words, m)?)?;
    m.add_function(wrap_pyfunction!(zigzag_words, m)?)?;
    m.add_function(wrap_pyfunction!(monomials, m)?)?;
    m.add_function(wrap_pyfunction!(monomial_to_word, m)?)?;
    m.add_function(wrap_pyfunction!(directness, m)?)?;
    m.add_function(wrap_pyfunction!(mu_verify, m)?)?;
    m.add_function(wrap_pyfunction!(psi_check, m)?)?;
    m.add_function(wrap_pyfunction!(in_relator_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(validate_array, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    Ok(())
}

#[pymodule]
fn pytdpair(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
