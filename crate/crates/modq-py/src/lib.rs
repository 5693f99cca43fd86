//! Python bindings for modq: representations, presentations, structure
//! verdicts, Hilbert bases, and point-count geometry.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use modq::error::Error;
use modq::field::Field;
use modq::geometry::{
    count_points, fit_motive_class as fit_counts, mckay_report, singular_locus,
    AffineVarietyPresentation,
};
use modq::invariants::{
    default_degree_bound, diagonal_relations, hilbert_basis_diagonal, hilbert_series_check,
    invariant_dims, minimal_generators, norm, presentation, AlgebraPresentation,
};
use modq::rep::{build_representation, parse_summands, Regime, Representation as CoreRep};
use modq::structure::{
    classify_cm, cm_defect, regular_sequence_probe, structure_report, ClassifyOptions,
};

const DEFAULT_BUDGET: u64 = 1 << 20;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } | Error::EnumerationCapExceeded { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A representation of the cyclic group of order 2p over the regime field.
#[pyclass(name = "Representation")]
struct PyRepresentation {
    inner: CoreRep,
}

fn build(p: u64, characteristic: u64, summands: &str) -> PyResult<CoreRep> {
    let regime = Regime::of(p, characteristic).map_err(to_py)?;
    let tags = parse_summands(summands, regime, p).map_err(to_py)?;
    build_representation(p, characteristic, &tags).map_err(to_py)
}

#[pymethods]
impl PyRepresentation {
    #[new]
    fn new(p: u64, characteristic: u64, summands: &str) -> PyResult<Self> {
        Ok(PyRepresentation { inner: build(p, characteristic, summands)? })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.inner.characteristic()
    }

    #[getter]
    fn regime(&self) -> String {
        self.inner.regime().as_str().to_string()
    }

    #[getter]
    fn summands(&self) -> String {
        self.inner
            .summands()
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn group_order(&self) -> u64 {
        self.inner.group_order()
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.ring().var_names().to_vec()
    }

    fn invariant_dims(&self, max_degree: u32) -> Vec<u64> {
        invariant_dims(&self.inner, max_degree)
    }

    /// Minimal generators up to the bound, as (degree, polynomial) pairs.
    #[pyo3(signature = (degree_bound=None))]
    fn minimal_generators(&self, degree_bound: Option<u32>) -> Vec<(u32, String)> {
        let bound = degree_bound.unwrap_or_else(|| default_degree_bound(&self.inner));
        let gens = minimal_generators(&self.inner, bound);
        gens.degrees
            .iter()
            .zip(&gens.generators)
            .map(|(d, g)| (*d, g.to_string()))
            .collect()
    }

    /// The product of the distinct images of a variable under the subgroup
    /// generated by sigma^subgroup_exponent.
    fn norm(&self, subgroup_exponent: u64, variable: &str) -> PyResult<String> {
        Ok(norm(&self.inner, subgroup_exponent, variable).map_err(to_py)?.to_string())
    }

    fn cm_defect(&self) -> u32 {
        cm_defect(&self.inner)
    }

    #[pyo3(signature = (degree_bound=None, budget=None))]
    fn presentation(
        &self,
        degree_bound: Option<u32>,
        budget: Option<u64>,
    ) -> PyResult<PyPresentation> {
        let bound = degree_bound.unwrap_or_else(|| default_degree_bound(&self.inner));
        let pres = presentation(&self.inner, bound, budget.unwrap_or(DEFAULT_BUDGET))
            .map_err(to_py)?;
        Ok(PyPresentation { inner: pres, rep: self.inner.clone() })
    }

    /// Depth and duality verdicts, via a presentation at the same bound.
    #[pyo3(signature = (degree_bound=None, budget=None))]
    fn structure(
        &self,
        degree_bound: Option<u32>,
        budget: Option<u64>,
    ) -> PyResult<StructureSummary> {
        let bound = degree_bound.unwrap_or_else(|| default_degree_bound(&self.inner));
        let pres = presentation(&self.inner, bound, budget.unwrap_or(DEFAULT_BUDGET))
            .map_err(to_py)?;
        let report = structure_report(&self.inner, Some(&pres));
        Ok(StructureSummary {
            cm_defect: report.cm_defect,
            is_cm: report.is_cm,
            presentation_class: report.presentation_class.map(|c| c.as_str().to_string()),
            gorenstein_verdict: report.gorenstein.verdict.as_str().to_string(),
            gorenstein_rule: report.gorenstein.rule,
            gorenstein_witness: report.gorenstein.witness,
            bireflection_ok: report.bireflection_ok,
        })
    }

    /// Tests whether the listed invariants form a regular sequence.
    #[pyo3(signature = (elements, window=None, degree_bound=None, budget=None))]
    fn probe(
        &self,
        elements: Vec<String>,
        window: Option<u32>,
        degree_bound: Option<u32>,
        budget: Option<u64>,
    ) -> PyResult<ProbeSummary> {
        let parsed = elements
            .iter()
            .map(|t| self.inner.ring().parse(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(to_py)?;
        // Generators beyond the probe window cannot participate in any
        // graded piece it inspects, so default the search there.
        let degs: Vec<u32> = parsed.iter().map(|e| e.total_degree()).collect();
        let needed = window
            .unwrap_or_else(|| degs.iter().sum())
            .max(degs.iter().copied().max().unwrap_or(0));
        let bound = degree_bound.unwrap_or(needed);
        let gens = minimal_generators(&self.inner, bound);
        let report =
            regular_sequence_probe(&parsed, &gens, window, budget.unwrap_or(DEFAULT_BUDGET))
                .map_err(to_py)?;
        Ok(ProbeSummary {
            verdict: report.verdict.as_str().to_string(),
            window: report.window,
            multiplier: report.multiplier.map(|m| m.to_string()),
            identity_nf_zero: report.identity_nf_zero,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Representation(p={}, characteristic={}, summands=\"{}\")",
            self.inner.p(),
            self.inner.characteristic(),
            self.summands()
        )
    }
}

/// Generators and relations of one invariant ring.
#[pyclass(name = "Presentation")]
struct PyPresentation {
    inner: AlgebraPresentation,
    rep: CoreRep,
}

#[pymethods]
impl PyPresentation {
    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators.generators.iter().map(|g| g.to_string()).collect()
    }

    #[getter]
    fn generator_degrees(&self) -> Vec<u32> {
        self.inner.generator_degrees().to_vec()
    }

    #[getter]
    fn relations(&self) -> Vec<String> {
        self.inner.relations.iter().map(|r| r.to_string()).collect()
    }

    #[getter]
    fn relation_degrees(&self) -> Vec<u64> {
        self.inner.relation_degrees()
    }

    #[getter]
    fn class_name(&self) -> String {
        self.inner.class.as_str().to_string()
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim
    }

    /// Whether the graded dimensions match the presentation's Hilbert
    /// function up to the given degree.
    fn hilbert_match(&self, max_degree: u32) -> bool {
        hilbert_series_check(&self.inner, &self.rep, max_degree).matches
    }

    /// Jacobian singular locus over F_q: (ideal, points).
    #[pyo3(signature = (q, cap=None))]
    fn singular_locus(&self, q: u64, cap: Option<u64>) -> PyResult<(Vec<String>, Vec<Vec<String>>)> {
        let variety = AffineVarietyPresentation::from_presentation(&self.inner).map_err(to_py)?;
        let locus = singular_locus(&variety, q, cap).map_err(to_py)?;
        let ideal = locus.jacobian_ideal.iter().map(|f| f.to_string()).collect();
        let points = locus
            .points
            .iter()
            .map(|pt| pt.iter().map(|c| c.to_string()).collect())
            .collect();
        Ok((ideal, points))
    }

    /// Exact point counts of the quotient model over the listed sizes.
    #[pyo3(signature = (sizes, cap=None))]
    fn count_points(&self, sizes: Vec<u64>, cap: Option<u64>) -> PyResult<Vec<(u64, u64)>> {
        let variety = AffineVarietyPresentation::from_presentation(&self.inner).map_err(to_py)?;
        sizes
            .iter()
            .map(|&q| Ok((q, count_points(&variety, q, cap).map_err(to_py)?)))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Presentation(class=\"{}\", generators={}, relations={})",
            self.inner.class.as_str(),
            self.inner.generators.generators.len(),
            self.inner.relations.len()
        )
    }
}

/// Depth and duality verdicts for one representation.
#[pyclass]
struct StructureSummary {
    #[pyo3(get)]
    cm_defect: u32,
    #[pyo3(get)]
    is_cm: bool,
    #[pyo3(get)]
    presentation_class: Option<String>,
    #[pyo3(get)]
    gorenstein_verdict: String,
    #[pyo3(get)]
    gorenstein_rule: u8,
    #[pyo3(get)]
    gorenstein_witness: String,
    #[pyo3(get)]
    bireflection_ok: bool,
}

#[pymethods]
impl StructureSummary {
    fn __repr__(&self) -> String {
        format!(
            "StructureSummary(cm_defect={}, gorenstein=\"{}\")",
            self.cm_defect, self.gorenstein_verdict
        )
    }
}

/// Outcome of a regular-sequence probe.
#[pyclass]
struct ProbeSummary {
    #[pyo3(get)]
    verdict: String,
    #[pyo3(get)]
    window: u32,
    #[pyo3(get)]
    multiplier: Option<String>,
    #[pyo3(get)]
    identity_nf_zero: Option<bool>,
}

#[pymethods]
impl ProbeSummary {
    fn __repr__(&self) -> String {
        format!("ProbeSummary(verdict=\"{}\")", self.verdict)
    }
}

/// Point-count comparison for the two-dimensional W quotient.
#[pyclass]
struct McKaySummary {
    #[pyo3(get)]
    p: u64,
    #[pyo3(get)]
    class_of_x: String,
    #[pyo3(get)]
    class_of_y: String,
    #[pyo3(get)]
    chi_y: i64,
    #[pyo3(get)]
    conj_classes: u64,
    #[pyo3(get)]
    matches: bool,
}

#[pymethods]
impl McKaySummary {
    fn __repr__(&self) -> String {
        format!("McKaySummary(chi_y={}, conj_classes={})", self.chi_y, self.conj_classes)
    }
}

/// Cohen-Macaulay classification for a regime: (regime, family labels).
#[pyfunction]
#[pyo3(signature = (p, characteristic, faithful=None, dimension=None))]
fn classify(
    p: u64,
    characteristic: u64,
    faithful: Option<bool>,
    dimension: Option<u32>,
) -> PyResult<(String, Vec<String>)> {
    let result = classify_cm(p, characteristic, ClassifyOptions { faithful, dimension })
        .map_err(to_py)?;
    Ok((result.regime.as_str().to_string(), result.labels()))
}

/// Monomial Hilbert basis of the diagonal action with weights (i, j)
/// modulo p: (pairs, relation polynomials).
#[pyfunction]
#[pyo3(signature = (p, i, j, characteristic=2))]
fn hilbert_basis(
    p: u64,
    i: u64,
    j: u64,
    characteristic: u64,
) -> PyResult<(Vec<(u32, u32)>, Vec<String>)> {
    let basis = hilbert_basis_diagonal(p, i, j).map_err(to_py)?;
    let field = Field::new(characteristic, 1).map_err(to_py)?;
    let relations = diagonal_relations(&basis, &field).map_err(to_py)?;
    Ok((basis.pairs.clone(), relations.iter().map(|r| r.to_string()).collect()))
}

/// Interpolates (q, count) data as an integer polynomial in the class L.
#[pyfunction]
fn fit_motive_class(counts: Vec<(u64, u64)>) -> PyResult<String> {
    Ok(fit_counts(&counts).map_err(to_py)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (p, budget=None))]
fn mckay(p: u64, budget: Option<u64>) -> PyResult<McKaySummary> {
    let report = mckay_report(p, budget.unwrap_or(DEFAULT_BUDGET)).map_err(to_py)?;
    Ok(McKaySummary {
        p: report.p,
        class_of_x: report.class_of_x.to_string(),
        class_of_y: report.class_of_y.to_string(),
        chi_y: report.euler_y,
        conj_classes: report.conj_classes,
        matches: report.matches,
    })
}

#[pymodule]
fn modq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyRepresentation>()?;
    m.add_class::<PyPresentation>()?;
    m.add_class::<StructureSummary>()?;
    m.add_class::<ProbeSummary>()?;
    m.add_class::<McKaySummary>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_basis, m)?)?;
    m.add_function(wrap_pyfunction!(fit_motive_class, m)?)?;
    m.add_function(wrap_pyfunction!(mckay, m)?)?;
    Ok(())
}
