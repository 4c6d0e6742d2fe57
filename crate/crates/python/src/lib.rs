use std::collections::BTreeMap;

use posit_core::gadgets::certify;
use posit_core::games::{self, ArenaParams, Game};
use posit_core::positionality::check_positional;
use posit_core::reduction::reduce_to_positional;
use posit_core::selftest::{selftest as run_selftest, SelftestOptions};
use posit_core::{compare_lassos, Alphabet, Arena, Dpa, LassoWord, Witness};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: posit_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A deterministic parity automaton (min-even, priorities on transitions).
#[pyclass(name = "Dpa", module = "posit", frozen)]
struct PyDpa {
    inner: Dpa,
}

#[pymethods]
impl PyDpa {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Dpa::parse(text).map(|inner| PyDpa { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        Dpa::from_file(path).map(|inner| PyDpa { inner }).map_err(err)
    }

    #[getter]
    fn num_states(&self) -> usize {
        self.inner.num_states()
    }

    #[getter]
    fn alphabet(&self) -> Vec<char> {
        self.inner.alphabet().letters().to_vec()
    }

    fn member(&self, lasso: &str) -> PyResult<bool> {
        let w = LassoWord::parse(lasso, self.inner.alphabet()).map_err(err)?;
        self.inner.member(&w).map_err(err)
    }

    fn complement(&self) -> Self {
        PyDpa {
            inner: self.inner.complement_shift(),
        }
    }

    /// `None` when L(p) ⊆ L(q), otherwise a separating lasso.
    fn included(&self, p: &str, q: &str) -> PyResult<Option<String>> {
        let p = self.inner.state_by_name(p).map_err(err)?;
        let q = self.inner.state_by_name(q).map_err(err)?;
        Ok(self.inner.residual_included(p, q).map(|w| w.to_string()))
    }

    /// `left_leq`, `right_leq`, `equivalent` or `incomparable u=.. u'=..`.
    fn compare(&self, left: &str, right: &str) -> PyResult<String> {
        let alphabet = self.inner.alphabet();
        let w = LassoWord::parse(left, alphabet).map_err(err)?;
        let w2 = LassoWord::parse(right, alphabet).map_err(err)?;
        Ok(compare_lassos(&self.inner, &w, &w2).map_err(err)?.to_string())
    }

    /// `(positional, failed_property, witness_json)`.
    fn check(&self) -> PyResult<(bool, Option<u8>, Option<String>)> {
        let v = check_positional(&self.inner).map_err(err)?;
        Ok((v.positional, v.failed_property, v.witness.map(|w| w.to_json())))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// A sinkless arena with Eve (`E`) and Adam (`A`) vertices.
#[pyclass(name = "Arena", module = "posit", frozen)]
struct PyArena {
    inner: Arena,
}

#[pymethods]
impl PyArena {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Arena::parse(text).map(|inner| PyArena { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        Arena::from_file(path).map(|inner| PyArena { inner }).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (vertices, out_degree, eve_fraction, alphabet, seed))]
    fn random(vertices: usize, out_degree: usize, eve_fraction: f64, alphabet: &str, seed: u64) -> PyResult<Self> {
        let alphabet = Alphabet::new(alphabet.chars()).map_err(err)?;
        let params = ArenaParams {
            vertices,
            out_degree,
            eve_fraction,
        };
        games::random_arena(params, &alphabet, seed)
            .map(|inner| PyArena { inner })
            .map_err(err)
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        (0..self.inner.len()).map(|v| self.inner.name(v).to_string()).collect()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

fn game(dpa: &PyDpa, arena: &PyArena) -> PyResult<Game> {
    Game::new(arena.inner.clone(), dpa.inner.clone()).map_err(err)
}

/// `(winning_region, memory, verified)`.
#[pyfunction]
fn solve(dpa: &PyDpa, arena: &PyArena) -> PyResult<(Vec<String>, usize, bool)> {
    let g = game(dpa, arena)?;
    let sol = games::solve_game(&g).map_err(err)?;
    let ok = games::verify_strategy(&g, &sol.strategy, &sol.initial).map_err(err)?;
    let names = sol.region.iter().map(|&v| g.arena().name(v).to_string()).collect();
    Ok((names, sol.strategy.memory(), ok))
}

/// Positional choice `vertex -> (letter, target)` on an Eve-only arena.
#[pyfunction]
fn reduce(dpa: &PyDpa, arena: &PyArena) -> PyResult<BTreeMap<String, (char, String)>> {
    let g = game(dpa, arena)?;
    let sol = games::solve_game(&g).map_err(err)?;
    let r = reduce_to_positional(&g, &sol.strategy, &sol.initial).map_err(err)?;
    let a = g.arena();
    Ok(r.initial
        .iter()
        .map(|&m| {
            let (c, t) = r.strategy.edges(m)[0];
            let v = r.strategy.sigma(m);
            (a.name(v).to_string(), (c, a.name(r.strategy.sigma(t)).to_string()))
        })
        .collect())
}

/// `(passed, report)`.
#[pyfunction]
#[pyo3(signature = (dpa, trials = 50, seed = 0, max_vertices = 5))]
fn selftest(dpa: &PyDpa, trials: usize, seed: u64, max_vertices: usize) -> PyResult<(bool, String)> {
    let opts = SelftestOptions {
        trials,
        seed,
        max_vertices,
        ..SelftestOptions::default()
    };
    let r = run_selftest(&dpa.inner, &opts).map_err(err)?;
    Ok((r.passed, r.render()))
}

/// `(arena_text, start_vertex, certified)` for a witness in JSON form.
#[pyfunction]
fn gadget(dpa: &PyDpa, witness: &str) -> PyResult<(String, String, bool)> {
    let w = Witness::from_json(witness, dpa.inner.alphabet()).map_err(err)?;
    let cert = certify(&dpa.inner, &w).map_err(err)?;
    let start = cert.gadget.arena.name(cert.gadget.start).to_string();
    Ok((cert.gadget.to_string(), start, cert.holds()))
}

#[pymodule]
fn posit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDpa>()?;
    m.add_class::<PyArena>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add_function(wrap_pyfunction!(gadget, m)?)?;
    Ok(())
}
