//! Python bindings: thin wrappers over the core library. Scalar data moves
//! as native Python values; structured objects (splittings, cycles,
//! certificates) move as JSON strings so the Rust validators stay in charge
//! of every invariant.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use torelli::casson::{
    find_independence_certificate, reference_witness_pair, verify_certificate, CycleDescriptor,
    IndependenceCertificate,
};
use torelli::euclid::{reduce_full_detailed, reduce_refined_detailed, Generator, Sl2Matrix};
use torelli::forms::{birman_craggs_involution_value, enumerate_forms, SpQuadraticForm};
use torelli::linalg::IntMatrix;
use torelli::mod2;
use torelli::splittings::{
    canonical_form, is_symmetric_splitting, OrthogonalSplitting,
};
use torelli::symplectic::{self, HVector, Sublattice};
use torelli::torus::{realize_nu0_pair, realize_nu1, realize_symmetric};

fn err(e: torelli::Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.kind()))
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(format!("invalid-input: {e}"))
}

fn hvector(coords: Vec<i64>) -> PyResult<HVector> {
    HVector::new(coords).map_err(err)
}

/// Intersection number of two lattice vectors.
#[pyfunction]
fn intersection(x: Vec<i64>, y: Vec<i64>) -> PyResult<i64> {
    symplectic::intersection(&hvector(x)?, &hvector(y)?).map_err(err)
}

/// The transvection along `v`, as integer matrix rows.
#[pyfunction]
fn transvection(v: Vec<i64>) -> PyResult<Vec<Vec<i64>>> {
    Ok(symplectic::transvection(&hvector(v)?).map_err(err)?.matrix().to_rows())
}

/// Whether integer matrix rows preserve the intersection pairing.
#[pyfunction]
fn is_symplectic(rows: Vec<Vec<i64>>) -> PyResult<bool> {
    let m = IntMatrix::from_rows(&rows).map_err(err)?;
    symplectic::is_symplectic(&m).map_err(err)
}

/// A seeded product of random transvections, as matrix rows.
#[pyfunction]
fn random_sp_element(genus: usize, seed: u64, word_length: usize) -> PyResult<Vec<Vec<i64>>> {
    Ok(symplectic::random_sp_element(genus, seed, word_length)
        .map_err(err)?
        .matrix()
        .to_rows())
}

/// Arf invariant of the form with the given basis values.
#[pyfunction]
fn arf(genus: usize, basis_values: Vec<u8>) -> PyResult<u8> {
    Ok(SpQuadraticForm::new(genus, basis_values).map_err(err)?.arf())
}

/// Number of genus-`g` forms with the given Arf invariant.
#[pyfunction]
fn form_count(genus: usize, arf: u8) -> PyResult<usize> {
    Ok(enumerate_forms(genus, arf).map_err(err)?.len())
}

/// Involution value of a genus-3 Arf-0 form.
#[pyfunction]
fn involution_value(basis_values: Vec<u8>) -> PyResult<u8> {
    let form = SpQuadraticForm::new(3, basis_values).map_err(err)?;
    birman_craggs_involution_value(&form).map_err(err)
}

/// Reduce a determinant-1 matrix to a generator word; returns
/// `(word, iterations)` with the word as `(generator, exponent)` pairs.
#[pyfunction]
fn reduce(matrix: Vec<Vec<i64>>, refined: bool) -> PyResult<(Vec<(String, i64)>, usize)> {
    if matrix.len() != 2 || matrix.iter().any(|r| r.len() != 2) {
        return Err(PyValueError::new_err("invalid-input: expected a 2x2 matrix"));
    }
    let x = Sl2Matrix::new([
        [matrix[0][0], matrix[0][1]],
        [matrix[1][0], matrix[1][1]],
    ])
    .map_err(err)?;
    let reduction = if refined {
        reduce_refined_detailed(&x).map_err(err)?
    } else {
        reduce_full_detailed(&x).map_err(err)?
    };
    let word = reduction
        .word
        .letters()
        .iter()
        .map(|l| {
            let name = match l.generator {
                Generator::R1 => "R1",
                Generator::R2 => "R2",
            };
            (name.to_string(), l.exponent)
        })
        .collect();
    Ok((word, reduction.iterations))
}

/// Order of the mod-2 symplectic group, as a decimal string.
#[pyfunction]
fn sp_order(genus: usize) -> PyResult<String> {
    Ok(mod2::sp_order_mod2(genus).map_err(err)?.to_string())
}

/// Group order divided by `(2g+2)!`, as a decimal string.
#[pyfunction]
fn orbit_count(genus: usize) -> PyResult<String> {
    Ok(mod2::hyperelliptic_orbit_count(genus).map_err(err)?.to_string())
}

/// Orbit sizes of all quadratic forms, keyed by Arf invariant.
#[pyfunction]
fn form_orbit_census(genus: usize) -> PyResult<std::collections::BTreeMap<u8, u64>> {
    mod2::form_orbit_census(genus).map_err(err)
}

/// Size of the fully enumerated mod-2 group (genus at most 3).
#[pyfunction]
fn enumerate_sp_count(genus: usize) -> PyResult<usize> {
    Ok(mod2::enumerate_sp_mod2(genus, None).map_err(err)?.len())
}

fn splitting_from_rows(
    v1: Vec<Vec<i64>>,
    v2: Vec<Vec<i64>>,
    v3: Vec<Vec<i64>>,
) -> PyResult<OrthogonalSplitting> {
    let build = |rows: Vec<Vec<i64>>| -> torelli::Result<Sublattice> {
        Sublattice::new(rows.into_iter().map(HVector::new).collect::<torelli::Result<Vec<_>>>()?)
    };
    OrthogonalSplitting::new(
        build(v1).map_err(err)?,
        build(v2).map_err(err)?,
        build(v3).map_err(err)?,
    )
    .map_err(err)
}

/// Whether three summands (rows each) form a splitting whose restriction
/// pattern marks it symmetric.
#[pyfunction]
fn splitting_is_symmetric(
    v1: Vec<Vec<i64>>,
    v2: Vec<Vec<i64>>,
    v3: Vec<Vec<i64>>,
) -> PyResult<bool> {
    is_symmetric_splitting(&splitting_from_rows(v1, v2, v3)?).map_err(err)
}

/// Canonical sign of a symmetric splitting (+1 or -1).
#[pyfunction]
fn splitting_canonical_sign(
    v1: Vec<Vec<i64>>,
    v2: Vec<Vec<i64>>,
    v3: Vec<Vec<i64>>,
) -> PyResult<i8> {
    Ok(canonical_form(&splitting_from_rows(v1, v2, v3)?).map_err(err)?.1)
}

/// Realize a class by lines on the doubled torus; `mode` is `"t1"`,
/// `"t21"`, or `"t22"`. Returns `(a, b, c2)` triples.
#[pyfunction]
fn realize_class(class: (i64, i64), mode: &str) -> PyResult<Vec<(i64, i64, u8)>> {
    let w = [class.0, class.1];
    let lines = match mode {
        "t1" => vec![realize_symmetric(w).map_err(err)?],
        "t21" => vec![realize_nu1(w).map_err(err)?],
        "t22" => {
            let (l1, l2) = realize_nu0_pair(w).map_err(err)?;
            vec![l1, l2]
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "invalid-input: unknown mode '{other}' (expected t1, t21, or t22)"
            )))
        }
    };
    Ok(lines.into_iter().map(|l| (l.a(), l.b(), l.c2())).collect())
}

/// Search for an independence certificate. `cycles_json` is an array of
/// cycle descriptors or of splittings (`V1`/`V2`/`V3` objects); returns the
/// certificate as JSON.
#[pyfunction]
#[pyo3(signature = (cycles_json, seed = 0, budget = 100_000, hints = false))]
fn find_certificate(cycles_json: &str, seed: u64, budget: u64, hints: bool) -> PyResult<String> {
    let value: serde_json::Value = serde_json::from_str(cycles_json).map_err(json_err)?;
    let cycles: Vec<CycleDescriptor> = match value.as_array().and_then(|a| a.first()) {
        Some(first) if first.get("V1").is_some() => {
            let splittings: Vec<OrthogonalSplitting> =
                serde_json::from_value(value).map_err(json_err)?;
            splittings
                .into_iter()
                .map(CycleDescriptor::new)
                .collect::<torelli::Result<Vec<_>>>()
                .map_err(err)?
        }
        _ => serde_json::from_value(value).map_err(json_err)?,
    };
    let hint_pairs = if hints { vec![reference_witness_pair()] } else { vec![] };
    let cert = find_independence_certificate(&cycles, seed, budget, &hint_pairs).map_err(err)?;
    serde_json::to_string(&cert).map_err(json_err)
}

/// Re-check a certificate from its JSON alone; returns
/// `(valid, recomputed_rank)`.
#[pyfunction]
fn verify_certificate_json(cert_json: &str) -> PyResult<(bool, usize)> {
    let cert: IndependenceCertificate = serde_json::from_str(cert_json).map_err(json_err)?;
    let v = verify_certificate(&cert).map_err(err)?;
    Ok((v.is_valid(), v.recomputed_rank))
}

/// The frozen reference computation: twist-value matrix of the two built-in
/// witnesses on the standard cycle, and their cycle pairing.
#[pyfunction]
fn reference_pairing() -> PyResult<(Vec<Vec<i64>>, i64)> {
    use torelli::casson::{cycle_pairing, morita_twist_value, pushforward, standard_linking_form};
    use torelli::splittings::standard_splitting;
    let l0 = standard_linking_form(3).map_err(err)?;
    let (m1, m2) = reference_witness_pair();
    let l1 = pushforward(&l0, &m1).map_err(err)?;
    let l2 = pushforward(&l0, &m2).map_err(err)?;
    let cycle = CycleDescriptor::new(standard_splitting()).map_err(err)?;
    let a1 = HVector::a(3, 1).map_err(err)?;
    let b1 = HVector::b(3, 1).map_err(err)?;
    let a3 = HVector::a(3, 3).map_err(err)?;
    let b3 = HVector::b(3, 3).map_err(err)?;
    let table = vec![
        vec![
            morita_twist_value(&l1, (&a1, &b1)).map_err(err)?,
            morita_twist_value(&l1, (&a3, &b3)).map_err(err)?,
        ],
        vec![
            morita_twist_value(&l2, (&a1, &b1)).map_err(err)?,
            morita_twist_value(&l2, (&a3, &b3)).map_err(err)?,
        ],
    ];
    let pairing = cycle_pairing(&l1, &l2, &cycle).map_err(err)?;
    Ok((table, pairing))
}

#[pymodule]
fn torelli_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(intersection, m)?)?;
    m.add_function(wrap_pyfunction!(transvection, m)?)?;
    m.add_function(wrap_pyfunction!(is_symplectic, m)?)?;
    m.add_function(wrap_pyfunction!(random_sp_element, m)?)?;
    m.add_function(wrap_pyfunction!(arf, m)?)?;
    m.add_function(wrap_pyfunction!(form_count, m)?)?;
    m.add_function(wrap_pyfunction!(involution_value, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(sp_order, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_count, m)?)?;
    m.add_function(wrap_pyfunction!(form_orbit_census, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_sp_count, m)?)?;
    m.add_function(wrap_pyfunction!(splitting_is_symmetric, m)?)?;
    m.add_function(wrap_pyfunction!(splitting_canonical_sign, m)?)?;
    m.add_function(wrap_pyfunction!(realize_class, m)?)?;
    m.add_function(wrap_pyfunction!(find_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate_json, m)?)?;
    m.add_function(wrap_pyfunction!(reference_pairing, m)?)?;
    Ok(())
}
