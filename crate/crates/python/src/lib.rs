//! Python bindings. Records, verdicts and tables cross the boundary as JSON
//! strings in the same schema the CLI emits.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qgrs_core::analytic::{construct as build, Family, FamilyParams};
use qgrs_core::fqlinalg::DEFAULT_BUDGET;
use qgrs_core::galois::{Elem, FieldCtx, TowerCtx};
use qgrs_core::puncture::{self, BoundCheck, SearchOptions};
use qgrs_core::quantum::{singleton_status, DistanceOptions, SingletonStatus};
use qgrs_core::record::{self, CodeRecord};

fn err(e: qgrs_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// GF(p^m) with elements as integer indices.
#[pyclass(frozen, name = "Field")]
struct PyField(Arc<FieldCtx>);

#[pymethods]
impl PyField {
    #[new]
    fn new(p: u32, m: u32) -> PyResult<Self> {
        Ok(PyField(Arc::new(FieldCtx::new(p, m).map_err(err)?)))
    }

    #[getter]
    fn size(&self) -> u32 {
        self.0.size()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.0.modulus().to_vec()
    }

    #[getter]
    fn primitive(&self) -> u32 {
        self.0.primitive().0
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.0.add(self.elem(a)?, self.elem(b)?).0)
    }

    fn sub(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.0.sub(self.elem(a)?, self.elem(b)?).0)
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.0.mul(self.elem(a)?, self.elem(b)?).0)
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        let a = self.elem(a)?;
        if a.is_zero() {
            return Err(PyValueError::new_err("zero has no inverse"));
        }
        Ok(self.0.inv(a).0)
    }

    fn pow(&self, a: u32, e: u64) -> PyResult<u32> {
        Ok(self.0.pow(self.elem(a)?, e).0)
    }

    fn __repr__(&self) -> String {
        format!("Field(p={}, m={})", self.0.characteristic(), self.0.degree())
    }
}

impl PyField {
    fn elem(&self, a: u32) -> PyResult<Elem> {
        self.0.check(Elem(a)).map_err(err)
    }
}

/// GF(q) ⊂ GF(q²).
#[pyclass(frozen, name = "Tower")]
struct PyTower(TowerCtx);

#[pymethods]
impl PyTower {
    #[new]
    fn new(q: u32) -> PyResult<Self> {
        Ok(PyTower(TowerCtx::for_q(q).map_err(err)?))
    }

    #[getter]
    fn q(&self) -> u32 {
        self.0.q()
    }

    #[getter]
    fn gamma(&self) -> u32 {
        self.0.gamma().0
    }

    #[getter]
    fn zeta(&self) -> u32 {
        self.0.zeta().0
    }

    fn base(&self) -> PyField {
        PyField(self.0.base().clone())
    }

    fn ext(&self) -> PyField {
        PyField(self.0.ext().clone())
    }

    fn embed(&self, a: u32) -> PyResult<u32> {
        let a = self.0.base().check(Elem(a)).map_err(err)?;
        Ok(self.0.embed(a).0)
    }

    fn norm(&self, x: u32) -> PyResult<u32> {
        let x = self.0.ext().check(Elem(x)).map_err(err)?;
        Ok(self.0.norm(x).0)
    }

    fn norm_root(&self, lam: u32) -> PyResult<u32> {
        Ok(self.0.norm_root(Elem(lam)).map_err(err)?.0)
    }

    fn enumerate_elements(&self) -> Vec<u32> {
        self.0.enumerate_elements().iter().map(|x| x.0).collect()
    }
}

/// Builds and verifies a family member; returns the record as JSON.
#[pyfunction]
#[pyo3(signature = (q, family, k=None, l=None, m=None, n=None, budget=DEFAULT_BUDGET, seed=0))]
#[allow(clippy::too_many_arguments)]
fn construct(
    q: u32,
    family: &str,
    k: Option<usize>,
    l: Option<usize>,
    m: Option<usize>,
    n: Option<usize>,
    budget: u64,
    seed: u64,
) -> PyResult<String> {
    let missing = |name: &str| PyValueError::new_err(format!("{name} is required for this family"));
    let fp = match family.parse::<Family>().map_err(err)? {
        Family::Q2Plus1 => Ok(FamilyParams::q2plus1(q)),
        Family::Q2MinusL => FamilyParams::q2minus_l(q, l.unwrap_or(0), k.ok_or_else(|| missing("k"))?),
        Family::MqMinusL => FamilyParams::mq_minus_l(q, m.ok_or_else(|| missing("m"))?, l.unwrap_or(0), k.ok_or_else(|| missing("k"))?),
        Family::AtMostQ => FamilyParams::at_most_q(q, n.ok_or_else(|| missing("n"))?, k.ok_or_else(|| missing("k"))?),
    }
    .map_err(err)?;
    let tower = TowerCtx::for_q(q).map_err(err)?;
    let c = build(&tower, &fp).map_err(err)?;
    let rec = record::record_from_construction(&tower, &c, DistanceOptions::with_budget(budget), seed).map_err(err)?;
    Ok(to_json(&rec))
}

/// Existence verdicts for dimension `k` (all lengths, or only `r`) and the
/// records of every witness, as JSON `{"verdicts": [...], "records": [...]}`.
#[pyfunction]
#[pyo3(signature = (q, k, r=None, budget=DEFAULT_BUDGET, seed=0))]
fn search(q: u32, k: usize, r: Option<usize>, budget: u64, seed: u64) -> PyResult<String> {
    let tower = TowerCtx::for_q(q).map_err(err)?;
    let opts = SearchOptions { budget, seed, ..SearchOptions::default() };
    let verdicts = match r {
        Some(r) => {
            let p = puncture::puncture_code(&puncture::parent_spec(&tower, k).map_err(err)?, &tower).map_err(err)?;
            vec![puncture::exists_weight(&p, &tower, r, opts).map_err(err)?]
        }
        None => puncture::existence_scan(&tower, k, opts).map_err(err)?.verdicts,
    };
    let mut records = Vec::new();
    for v in &verdicts {
        if let Some(rec) = record::record_from_verdict(&tower, v, DistanceOptions::with_budget(budget), seed).map_err(err)? {
            records.push(rec);
        }
    }
    Ok(to_json(&serde_json::json!({ "verdicts": verdicts, "records": records })))
}

/// Re-verifies a record; returns `(passed, [(check, passed, detail), ...])`.
#[pyfunction]
#[pyo3(signature = (record_json, budget=DEFAULT_BUDGET))]
fn verify(record_json: &str, budget: u64) -> PyResult<(bool, Vec<(String, bool, String)>)> {
    let rec: CodeRecord = serde_json::from_str(record_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let out = record::verify_record(&rec, DistanceOptions::with_budget(budget)).map_err(err)?;
    Ok((out.passed(), out.checks.into_iter().map(|c| (c.name, c.passed, c.detail)).collect()))
}

/// The unification table as JSON.
#[pyfunction]
#[pyo3(signature = (qmax, budget=DEFAULT_BUDGET, seed=0))]
fn table(qmax: u32, budget: u64, seed: u64) -> PyResult<String> {
    Ok(to_json(&record::unification_table(qmax, budget, seed).map_err(err)?))
}

/// `None` when allowed, otherwise the violated clause.
#[pyfunction]
fn check_bounds(q: u32, n: usize, k: usize) -> Option<String> {
    match puncture::check_bounds(q, n, k) {
        BoundCheck::Allowed => None,
        BoundCheck::Forbidden(clause) => Some(clause.to_string()),
    }
}

/// "mds", "below" or "violates".
#[pyfunction]
fn singleton(n: usize, kappa: usize, d: usize) -> &'static str {
    match singleton_status(n, kappa, d) {
        SingletonStatus::Mds => "mds",
        SingletonStatus::BelowBound => "below",
        SingletonStatus::ViolatesBound => "violates",
    }
}

#[pymodule]
fn pyqgrs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyTower>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(check_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(singleton, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
