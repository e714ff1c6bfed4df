//! Python bindings: braid words, Burau matrices, linking vectors, group
//! closures, and the verification commands (returned as JSON strings).

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use braidcg::burau::{burau_int, burau_mod, is_congruence_member, CongruenceLevel};
use braidcg::closure::{close, structure_invariants};
use braidcg::error::BraidError;
use braidcg::linking::{linking_vector, phi_mod2, pairs};
use braidcg::symplectic::{invariant_forms, is_alternating_nondegenerate};
use braidcg::verify::{
    verify_abquot, verify_arnold, verify_crt, verify_fivelem, verify_nonsplit, verify_symplectic,
    verify_symquot, VerifyOptions,
};
use braidcg::word::{random_word, BraidWord};

fn err(e: BraidError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A braid word on `strands` strands; letter `+k` is the k-th generator,
/// `-k` its inverse.
#[pyclass(name = "BraidWord", from_py_object)]
#[derive(Clone)]
struct PyBraidWord {
    inner: BraidWord,
}

#[pymethods]
impl PyBraidWord {
    #[new]
    fn new(strands: usize, letters: Vec<i32>) -> PyResult<Self> {
        Ok(Self { inner: BraidWord::new(strands, letters).map_err(err)? })
    }

    #[staticmethod]
    fn identity(strands: usize) -> Self {
        Self { inner: BraidWord::identity(strands) }
    }

    #[staticmethod]
    fn generator(strands: usize, i: usize) -> PyResult<Self> {
        Ok(Self { inner: BraidWord::generator(strands, i).map_err(err)? })
    }

    #[staticmethod]
    fn pure_generator(strands: usize, i: usize, j: usize) -> PyResult<Self> {
        Ok(Self { inner: BraidWord::pure_generator(strands, i, j).map_err(err)? })
    }

    #[staticmethod]
    fn parse(strands: usize, text: &str) -> PyResult<Self> {
        Ok(Self { inner: BraidWord::parse(strands, text).map_err(err)? })
    }

    #[getter]
    fn strands(&self) -> usize {
        self.inner.strands()
    }

    #[getter]
    fn letters(&self) -> Vec<i32> {
        self.inner.letters().to_vec()
    }

    fn compose(&self, other: &PyBraidWord) -> PyResult<Self> {
        Ok(Self { inner: self.inner.compose(&other.inner).map_err(err)? })
    }

    fn inverse(&self) -> Self {
        Self { inner: self.inner.inverse() }
    }

    fn free_reduce(&self) -> Self {
        Self { inner: self.inner.free_reduce() }
    }

    fn power(&self, k: i64) -> Self {
        Self { inner: self.inner.power(k) }
    }

    /// 1-based image list of the strand permutation.
    fn permutation(&self) -> Vec<usize> {
        self.inner.permutation().images()
    }

    fn is_pure(&self) -> bool {
        self.inner.is_pure()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("BraidWord({}, {:?})", self.inner.strands(), self.inner.letters())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &PyBraidWord) -> bool {
        self.inner == other.inner
    }
}

/// Exact integer Burau matrix of a word, as nested Python ints.
#[pyfunction(name = "burau_int")]
fn py_burau_int(word: &PyBraidWord) -> Vec<Vec<BigInt>> {
    let m = burau_int(&word.inner);
    (0..m.dim())
        .map(|r| (0..m.dim()).map(|c| m.get(r, c).clone()).collect())
        .collect()
}

/// Burau matrix of a word reduced mod m.
#[pyfunction(name = "burau_mod")]
fn py_burau_mod(word: &PyBraidWord, modulus: u64) -> PyResult<Vec<Vec<u64>>> {
    let m = burau_mod(&word.inner, modulus).map_err(err)?;
    Ok((0..m.dim())
        .map(|r| (0..m.dim()).map(|c| m.get(r, c)).collect())
        .collect())
}

/// Whether the word lies in the congruence subgroup of the given level.
#[pyfunction(name = "is_congruence_member")]
fn py_is_congruence_member(word: &PyBraidWord, level: u64) -> PyResult<bool> {
    let level = CongruenceLevel::new(level).map_err(err)?;
    Ok(is_congruence_member(&word.inner, level))
}

/// Linking numbers of a pure braid as a dict {(i, j): value}.
#[pyfunction(name = "linking_vector")]
fn py_linking_vector(word: &PyBraidWord) -> PyResult<Vec<(usize, usize, i64)>> {
    let v = linking_vector(&word.inner).map_err(err)?;
    Ok(pairs(word.inner.strands())
        .into_iter()
        .map(|(i, j)| (i, j, v.component(i, j)))
        .collect())
}

/// Mod-2 abelianization of a pure braid as a list of (i, j, bit).
#[pyfunction(name = "phi_mod2")]
fn py_phi_mod2(word: &PyBraidWord) -> PyResult<Vec<(usize, usize, u8)>> {
    let v = phi_mod2(&word.inner).map_err(err)?;
    Ok(pairs(word.inner.strands())
        .into_iter()
        .map(|(i, j)| (i, j, v.bit(i, j)))
        .collect())
}

/// Order, abelianness and exponent of the group generated by the mod-m
/// images of the given words.
#[pyfunction]
#[pyo3(signature = (words, modulus, cap=10_000_000))]
fn closure_invariants(
    words: Vec<PyBraidWord>,
    modulus: u64,
    cap: usize,
) -> PyResult<(usize, bool, usize)> {
    let gens: Vec<_> = words
        .iter()
        .map(|w| burau_mod(&w.inner, modulus))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let group = close(&gens, cap).map_err(err)?;
    let inv = structure_invariants(&group);
    Ok((inv.order, inv.abelian, inv.exponent))
}

/// Integral basis of invariant bilinear forms for the generator images,
/// with a flag per basis element marking nondegenerate alternating ones.
#[pyfunction(name = "invariant_forms")]
fn py_invariant_forms(n: usize) -> PyResult<Vec<(Vec<Vec<BigInt>>, bool)>> {
    let space = invariant_forms(n).map_err(err)?;
    Ok(space
        .basis()
        .iter()
        .map(|j| {
            let rows = (0..j.dim())
                .map(|r| (0..j.dim()).map(|c| j.get(r, c).clone()).collect())
                .collect();
            (rows, is_alternating_nondegenerate(j))
        })
        .collect())
}

/// Deterministic sampling of a word over an alphabet and its inverses.
#[pyfunction(name = "random_word")]
fn py_random_word(
    strands: usize,
    length: usize,
    alphabet: Vec<PyBraidWord>,
    seed: u64,
) -> PyResult<PyBraidWord> {
    let words: Vec<BraidWord> = alphabet.into_iter().map(|w| w.inner).collect();
    Ok(PyBraidWord { inner: random_word(strands, length, &words, seed).map_err(err)? })
}

/// Runs a verification command and returns the JSON report as a string.
/// Commands: arnold, symquot, abquot, fivelem, nonsplit, crt, symplectic.
#[pyfunction]
#[pyo3(signature = (command, n, ell=None, a=None, b=None, samples=500, word_length=40, seed=0))]
#[allow(clippy::too_many_arguments)]
fn verify(
    command: &str,
    n: usize,
    ell: Option<u64>,
    a: Option<u64>,
    b: Option<u64>,
    samples: usize,
    word_length: usize,
    seed: u64,
) -> PyResult<String> {
    let opts = VerifyOptions { samples, word_length, seed, ..Default::default() };
    let need_ell =
        || ell.ok_or_else(|| PyValueError::new_err(format!("{command} requires ell")));
    let report = match command {
        "arnold" => verify_arnold(n, &opts),
        "symquot" => verify_symquot(n, need_ell()?, &opts),
        "abquot" => verify_abquot(n, need_ell()?, &opts),
        "fivelem" => verify_fivelem(n, need_ell()?, &opts),
        "nonsplit" => verify_nonsplit(n, &opts),
        "crt" => {
            let a = a.ok_or_else(|| PyValueError::new_err("crt requires a"))?;
            let b = b.ok_or_else(|| PyValueError::new_err("crt requires b"))?;
            verify_crt(n, a, b, &opts)
        }
        "symplectic" => verify_symplectic(n, &opts),
        other => return Err(PyValueError::new_err(format!("unknown command {other:?}"))),
    }
    .map_err(err)?;
    Ok(serde_json::to_string_pretty(&report.to_json()).expect("report serializes"))
}

#[pymodule]
fn braidcg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBraidWord>()?;
    m.add_function(wrap_pyfunction!(py_burau_int, m)?)?;
    m.add_function(wrap_pyfunction!(py_burau_mod, m)?)?;
    m.add_function(wrap_pyfunction!(py_is_congruence_member, m)?)?;
    m.add_function(wrap_pyfunction!(py_linking_vector, m)?)?;
    m.add_function(wrap_pyfunction!(py_phi_mod2, m)?)?;
    m.add_function(wrap_pyfunction!(closure_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(py_invariant_forms, m)?)?;
    m.add_function(wrap_pyfunction!(py_random_word, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
