//! Python bindings: thin wrappers over the core types and operations.
//!
//! Exposes `Cycle` and `Digraph` classes plus module-level functions for
//! polynomials, successors, cascades, forcing, and the logistic map.
//! Domain errors surface as `ValueError`.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use combdyn::forcing::{self, ForcingCaps};
use combdyn::logistic::{self, LogisticParams};
use combdyn::markov::{self, SignedDigraph};
use combdyn::perm::Cycle;
use combdyn::poly;
use combdyn::successors::{self, SuccessorCaps};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A cyclic permutation of {1..n}, stored as its 1-indexed image table.
#[pyclass(name = "Cycle", frozen, from_py_object)]
#[derive(Clone)]
struct PyCycle {
    inner: Cycle,
}

#[pymethods]
impl PyCycle {
    /// Accepts cycle notation like "(1324)" or an image list like [3,4,2,1].
    #[new]
    fn new(value: Bound<'_, PyAny>) -> PyResult<Self> {
        let inner = if let Ok(text) = value.extract::<String>() {
            Cycle::parse(&text).map_err(value_err)?
        } else {
            let images: Vec<usize> = value.extract()?;
            Cycle::from_images(images).map_err(value_err)?
        };
        Ok(PyCycle { inner })
    }

    fn images(&self) -> Vec<usize> {
        self.inner.images().to_vec()
    }

    fn apply(&self, x: usize) -> PyResult<usize> {
        if x < 1 || x > self.inner.len() {
            return Err(value_err(format!("point {x} outside 1..={}", self.inner.len())));
        }
        Ok(self.inner.apply(x))
    }

    /// (sign, extrema_count), e.g. ("+", 1); undefined below length 3.
    fn modality(&self) -> PyResult<(String, usize)> {
        let m = self.inner.modality().map_err(value_err)?;
        Ok((m.leading_sign.to_string(), m.extrema_count))
    }

    fn is_unimodal(&self) -> bool {
        self.inner.is_unimodal()
    }

    fn sign(&self) -> i8 {
        self.inner.as_permutation().sign()
    }

    /// The doubled permutation θ* as an image table on 2n points.
    fn star(&self) -> Vec<usize> {
        self.inner.star().images().to_vec()
    }

    /// θ* ∘ ρ_S as an image table; a cycle exactly when |S| is odd.
    fn successor_candidate(&self, swaps: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self
            .inner
            .successor_candidate(&swaps)
            .map_err(value_err)?
            .images()
            .to_vec())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cycle(\"{}\")", self.inner)
    }

    fn __eq__(&self, other: &PyCycle) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }
}

/// The signed Markov digraph of a cycle.
#[pyclass(name = "Digraph", frozen, from_py_object)]
#[derive(Clone)]
struct PyDigraph {
    inner: SignedDigraph,
}

#[pymethods]
impl PyDigraph {
    #[getter]
    fn n_vertices(&self) -> usize {
        self.inner.n_vertices()
    }

    fn signs(&self) -> Vec<String> {
        self.inner.signs().iter().map(|s| s.to_string()).collect()
    }

    /// 1-indexed edges in row-major order.
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn adjacency(&self) -> Vec<Vec<u8>> {
        self.inner.adjacency().to_vec()
    }

    fn to_dot(&self) -> String {
        markov::to_dot(&self.inner)
    }

    /// The unique cycle whose digraph this is.
    fn recover(&self) -> PyResult<PyCycle> {
        Ok(PyCycle {
            inner: markov::recover_cycle(&self.inner).map_err(value_err)?,
        })
    }

    /// Doubled digraph along an odd swap set.
    fn double(&self, swaps: Vec<usize>) -> PyResult<PyDigraph> {
        Ok(PyDigraph {
            inner: markov::double_graph(&self.inner, &swaps).map_err(value_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Digraph(n_vertices={}, edges={})",
            self.inner.n_vertices(),
            self.inner.edges().len()
        )
    }
}

/// Builds G(θ).
#[pyfunction]
fn digraph(theta: &PyCycle) -> PyDigraph {
    PyDigraph {
        inner: markov::build_digraph(&theta.inner),
    }
}

/// Exact characteristic polynomial of G(θ), ascending coefficients.
#[pyfunction]
fn charpoly(theta: &PyCycle) -> PyResult<Vec<BigInt>> {
    let p = poly::charpoly(markov::build_digraph(&theta.inner).adjacency()).map_err(value_err)?;
    Ok(p.coeffs().to_vec())
}

/// All doubling candidates: (cyclic, non_cyclic), each a list of
/// (swap_set, image_table) pairs.
#[pyfunction]
#[pyo3(name = "successors", signature = (theta, cap = 20))]
fn successor_set(
    theta: &PyCycle,
    cap: usize,
) -> PyResult<(Vec<(Vec<usize>, PyCycle)>, Vec<(Vec<usize>, Vec<usize>)>)> {
    let caps = SuccessorCaps {
        enumerate_max_base: cap,
        ..SuccessorCaps::default()
    };
    let set = successors::enumerate_successors(&theta.inner, &caps).map_err(value_err)?;
    let cyclic = set
        .cyclic
        .into_iter()
        .map(|(s, c)| (s, PyCycle { inner: c }))
        .collect();
    let non_cyclic = set
        .non_cyclic
        .into_iter()
        .map(|(s, p)| (s, p.images().to_vec()))
        .collect();
    Ok((cyclic, non_cyclic))
}

/// The unique cyclic successor with modality +1.
#[pyfunction]
fn unimodal_double(theta: &PyCycle) -> PyResult<PyCycle> {
    Ok(PyCycle {
        inner: successors::unimodal_double(&theta.inner, &SuccessorCaps::default())
            .map_err(value_err)?,
    })
}

/// Period-doubling cascade: list of (cycle, ascending charpoly coefficients)
/// from the seed (level 0) upward. The polynomial product identity is
/// certified internally at every level.
#[pyfunction]
#[pyo3(signature = (seed, levels, period_cap = 64))]
fn cascade(
    seed: &PyCycle,
    levels: usize,
    period_cap: usize,
) -> PyResult<Vec<(PyCycle, Vec<BigInt>)>> {
    let caps = SuccessorCaps {
        cascade_max_period: period_cap,
        ..SuccessorCaps::default()
    };
    let chain = successors::cascade(&seed.inner, levels, &caps).map_err(value_err)?;
    Ok((0..=chain.depth())
        .map(|i| {
            (
                PyCycle {
                    inner: chain.level(i).clone(),
                },
                chain.polynomials[i].coeffs().to_vec(),
            )
        })
        .collect())
}

/// Checks P_η = P_θ·(λ^n − 1) for the successor picked by the swap set.
#[pyfunction]
fn verify_factorization(theta: &PyCycle, swaps: Vec<usize>) -> PyResult<bool> {
    successors::verify_factorization(&theta.inner, &swaps).map_err(value_err)
}

/// True iff β forces α.
#[pyfunction]
#[pyo3(signature = (beta, alpha, max_loop_len = 16))]
fn forces(beta: &PyCycle, alpha: &PyCycle, max_loop_len: usize) -> PyResult<bool> {
    let caps = ForcingCaps {
        max_loop_len,
        ..ForcingCaps::default()
    };
    forcing::forces(&beta.inner, &alpha.inner, &caps).map_err(value_err)
}

/// Forcing witness: (loop, orbit points as "num/den" strings, orbit type),
/// or None when β does not force α or the forcing is reflexive.
#[pyfunction]
#[pyo3(signature = (beta, alpha, max_loop_len = 16))]
fn forcing_witness(
    beta: &PyCycle,
    alpha: &PyCycle,
    max_loop_len: usize,
) -> PyResult<Option<(Vec<usize>, Vec<String>, PyCycle)>> {
    let caps = ForcingCaps {
        max_loop_len,
        ..ForcingCaps::default()
    };
    let (_, witness) =
        forcing::forces_with_witness(&beta.inner, &alpha.inner, &caps).map_err(value_err)?;
    Ok(witness.map(|w| {
        (
            w.found_loop.vertices().to_vec(),
            w.orbit.points.iter().map(forcing::rational_string).collect(),
            PyCycle {
                inner: w.orbit.orbit_type,
            },
        )
    }))
}

/// All orbit types realized up to a period, plus β itself.
#[pyfunction]
#[pyo3(signature = (beta, max_period, max_loop_len = 16))]
fn forced_types(beta: &PyCycle, max_period: usize, max_loop_len: usize) -> PyResult<Vec<PyCycle>> {
    let caps = ForcingCaps {
        max_loop_len,
        ..ForcingCaps::default()
    };
    Ok(forcing::forced_types(&beta.inner, max_period, &caps)
        .map_err(value_err)?
        .into_iter()
        .map(|c| PyCycle { inner: c })
        .collect())
}

/// Logistic-map attractor at one parameter: (period, sorted points, type).
#[pyfunction]
#[pyo3(signature = (a, burn_in = 100_000, max_period = 64, tol = 1e-9, x0 = 0.5))]
fn logistic_attractor(
    a: f64,
    burn_in: usize,
    max_period: usize,
    tol: f64,
    x0: f64,
) -> PyResult<(usize, Vec<f64>, PyCycle)> {
    let params = LogisticParams {
        a,
        burn_in,
        max_period,
        tol,
        x0,
    };
    let r = logistic::iterate(&params).map_err(value_err)?;
    Ok((
        r.period,
        r.points,
        PyCycle {
            inner: r.orbit_type,
        },
    ))
}

/// Parameter sweep: (samples, transitions) where samples are
/// (a, period-or-None) and transitions are (a, from_period, to_period).
#[pyfunction]
#[pyo3(signature = (a_from, a_to, step, burn_in = 100_000, max_period = 64, tol = 1e-9))]
fn logistic_scan(
    a_from: f64,
    a_to: f64,
    step: f64,
    burn_in: usize,
    max_period: usize,
    tol: f64,
) -> PyResult<(Vec<(f64, Option<usize>)>, Vec<(f64, usize, usize)>)> {
    let template = LogisticParams {
        a: a_from,
        burn_in,
        max_period,
        tol,
        x0: 0.5,
    };
    let report =
        logistic::scan_bifurcations(a_from, a_to, step, &template).map_err(value_err)?;
    Ok((
        report.samples.iter().map(|s| (s.a, s.period)).collect(),
        report
            .transitions
            .iter()
            .map(|t| (t.a, t.from_period, t.to_period))
            .collect(),
    ))
}

/// Matches numeric orbit types against the symbolic cascade of the seed.
/// Returns (all_matched, entries) with entries (a, period-or-None, matched).
#[pyfunction]
#[pyo3(signature = (a_values, seed, burn_in = 100_000, tol = 1e-9))]
fn certify_cascade(
    a_values: Vec<f64>,
    seed: &PyCycle,
    burn_in: usize,
    tol: f64,
) -> PyResult<(bool, Vec<(f64, Option<usize>, bool)>)> {
    let template = LogisticParams {
        a: a_values.first().copied().unwrap_or(3.0),
        burn_in,
        max_period: 64,
        tol,
        x0: 0.5,
    };
    let report = logistic::certify_cascade(
        &a_values,
        &seed.inner,
        &template,
        &SuccessorCaps::default(),
    )
    .map_err(value_err)?;
    Ok((
        report.all_matched,
        report
            .entries
            .iter()
            .map(|e| (e.a, e.period, e.matched))
            .collect(),
    ))
}

#[pymodule]
fn combdyn_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCycle>()?;
    m.add_class::<PyDigraph>()?;
    m.add_function(wrap_pyfunction!(digraph, m)?)?;
    m.add_function(wrap_pyfunction!(charpoly, m)?)?;
    m.add_function(wrap_pyfunction!(successor_set, m)?)?;
    m.add_function(wrap_pyfunction!(unimodal_double, m)?)?;
    m.add_function(wrap_pyfunction!(cascade, m)?)?;
    m.add_function(wrap_pyfunction!(verify_factorization, m)?)?;
    m.add_function(wrap_pyfunction!(forces, m)?)?;
    m.add_function(wrap_pyfunction!(forcing_witness, m)?)?;
    m.add_function(wrap_pyfunction!(forced_types, m)?)?;
    m.add_function(wrap_pyfunction!(logistic_attractor, m)?)?;
    m.add_function(wrap_pyfunction!(logistic_scan, m)?)?;
    m.add_function(wrap_pyfunction!(certify_cascade, m)?)?;
    Ok(())
}
