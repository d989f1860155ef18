//! Python bindings. Structured results come back as plain dicts and lists.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;
use serde_json::json;

use sphere_rigidity::complex::search::{search_embedding, search_isomorphism};
use sphere_rigidity::complex::ComplexDocument;
use sphere_rigidity::genus_zero::{build_caterpillar_window, build_genus_zero_complex, catalog, GenusZeroComplex};
use sphere_rigidity::homology::betti_numbers;
use sphere_rigidity::pants::{
    classify_link as classify, dual_of_pants, enumerate_pants, pants_flip_graph, DualDocument, PantsDecomposition,
    SphereSystem,
};
use sphere_rigidity::rigidity::{
    automorphism_group, caterpillar_witness as witness, good_pair_census as census, label_action,
    link_equivalence_classes, verify_rigidity, CutLabeling, RigidityMode,
};
use sphere_rigidity::whitney::{lift_edge_isomorphism, EdgeMapDocument, LiftResult};
use sphere_rigidity::FlagComplex;

fn err(e: sphere_rigidity::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, value: &impl Serialize) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn genus_zero(s: usize) -> PyResult<GenusZeroComplex> {
    build_genus_zero_complex(s).map_err(err)
}

fn sphere_vertices(gz: &GenusZeroComplex, sides: &[Vec<usize>]) -> PyResult<Vec<usize>> {
    sides.iter().map(|side| gz.vertex(side).map_err(err)).collect()
}

/// A flag complex with string vertex ids.
#[pyclass(name = "Complex", frozen)]
struct PyComplex {
    inner: FlagComplex,
    genus_zero: Option<GenusZeroComplex>,
}

impl PyComplex {
    fn plain(inner: FlagComplex) -> Self {
        PyComplex { inner, genus_zero: None }
    }
}

#[pymethods]
impl PyComplex {
    /// Sphere complex of the s-holed 3-sphere.
    #[staticmethod]
    fn genus_zero(s: usize) -> PyResult<Self> {
        let gz = genus_zero(s)?;
        Ok(PyComplex { inner: gz.complex().clone(), genus_zero: Some(gz) })
    }

    #[staticmethod]
    fn caterpillar(m: usize) -> Self {
        Self::plain(build_caterpillar_window(m))
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        Ok(Self::plain(catalog(name).map_err(err)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = ComplexDocument::from_json(text).map_err(err)?;
        Ok(Self::plain(doc.into_complex().map_err(err)?))
    }

    #[staticmethod]
    fn from_edges(vertices: Vec<String>, edges: Vec<(String, String)>) -> PyResult<Self> {
        Ok(Self::plain(FlagComplex::from_adjacency(vertices, edges).map_err(err)?))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Complex(vertices={}, edges={})", self.inner.len(), self.inner.edge_count())
    }

    #[getter]
    fn ids(&self) -> Vec<String> {
        self.inner.ids().to_vec()
    }

    #[getter]
    fn dimension(&self) -> isize {
        self.inner.dimension()
    }

    fn edges(&self) -> Vec<(String, String)> {
        let c = &self.inner;
        c.edges().into_iter().map(|(a, b)| (c.id(a).to_string(), c.id(b).to_string())).collect()
    }

    fn adjacent(&self, a: &str, b: &str) -> PyResult<bool> {
        let c = &self.inner;
        Ok(c.adjacent(c.require_index(a).map_err(err)?, c.require_index(b).map_err(err)?))
    }

    fn f_vector(&self) -> Vec<u64> {
        self.inner.f_vector(self.inner.dimension().max(0) as usize).counts
    }

    fn maximal_simplices(&self) -> Vec<Vec<String>> {
        let c = &self.inner;
        c.maximal_cliques().iter().map(|s| s.vertices().iter().map(|&v| c.id(v).to_string()).collect()).collect()
    }

    /// Betti numbers and torsion up to `max_dim` (default: the dimension).
    #[pyo3(signature = (max_dim=None))]
    fn homology(&self, py: Python<'_>, max_dim: Option<usize>) -> PyResult<Py<PyAny>> {
        let top = max_dim.unwrap_or(self.inner.dimension().max(0) as usize);
        to_py(py, &betti_numbers(&self.inner, top))
    }

    fn induced(&self, ids: Vec<String>) -> PyResult<Self> {
        Ok(Self::plain(self.inner.induced_by_ids(&ids).map_err(err)?))
    }

    fn to_json(&self) -> String {
        ComplexDocument::from(&self.inner).to_json()
    }

    #[pyo3(signature = (name="complex"))]
    fn to_dot(&self, name: &str) -> String {
        self.inner.to_dot(name)
    }

    /// An injective simplicial map into `target` as an id dict, or None.
    fn embedding_into(&self, target: &PyComplex) -> Option<BTreeMap<String, String>> {
        search_embedding(&self.inner, &target.inner).map(|m| m.to_named(&self.inner, &target.inner))
    }

    fn isomorphism_to(&self, other: &PyComplex) -> Option<BTreeMap<String, String>> {
        search_isomorphism(&self.inner, &other.inner).map(|m| m.to_named(&self.inner, &other.inner))
    }

    fn automorphism_group(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let c = &self.inner;
        let g = automorphism_group(c);
        let order = u64::try_from(g.order).map_or_else(|_| json!(g.order.to_string()), |o| json!(o));
        let generators: Vec<_> = g.generators.iter().map(|m| m.to_named(c, c)).collect();
        let base: Vec<&str> = g.base.iter().map(|&v| c.id(v)).collect();
        to_py(py, &json!({ "order": order, "base": base, "orbit_sizes": g.orbit_sizes, "generators": generators }))
    }

    /// Certificate that every locally injective map of this complex into
    /// `ambient` extends to a unique automorphism of `ambient`.
    #[pyo3(signature = (ambient, over_maximal_maps=false))]
    fn verify_rigidity(&self, py: Python<'_>, ambient: &PyComplex, over_maximal_maps: bool) -> PyResult<Py<PyAny>> {
        let mode = if over_maximal_maps { RigidityMode::OverMaximalMaps } else { RigidityMode::Plain };
        let cert = verify_rigidity(&self.inner, "subcomplex", &ambient.inner, "ambient", mode).map_err(err)?;
        to_py(py, &cert)
    }

    /// How boundary-label permutations act; genus-zero complexes only.
    fn label_action(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let gz = self.genus_zero.as_ref().ok_or_else(|| PyValueError::new_err("not a genus-zero complex"))?;
        to_py(py, &label_action(gz).map_err(err)?)
    }
}

/// Every pants decomposition of the s-holed sphere, as lists of sphere ids.
#[pyfunction]
fn pants_decompositions(s: usize) -> PyResult<Vec<Vec<String>>> {
    let gz = genus_zero(s)?;
    Ok(enumerate_pants(&gz).map_err(err)?.iter().map(|p| p.ids(gz.complex())).collect())
}

#[pyfunction]
fn flip_graph(py: Python<'_>, s: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &pants_flip_graph(&genus_zero(s)?).map_err(err)?)
}

/// Dual multigraph JSON of the pants decomposition with the given sides.
#[pyfunction]
fn pants_dual(s: usize, sides: Vec<Vec<usize>>) -> PyResult<String> {
    let gz = genus_zero(s)?;
    let p = PantsDecomposition::new(gz.complex(), sphere_vertices(&gz, &sides)?).map_err(err)?;
    Ok(DualDocument::from(&dual_of_pants(&gz, &p)).to_json())
}

#[pyfunction]
fn classify_link(py: Python<'_>, dual_json: &str, edges: Vec<usize>) -> PyResult<Py<PyAny>> {
    let d = DualDocument::from_json(dual_json).and_then(DualDocument::into_dual).map_err(err)?;
    let join = classify(&d, &edges).map_err(err)?;
    let out = json!({ "display": join.to_string(), "factors": join.factors, "sphere_count": join.sphere_count() });
    to_py(py, &out)
}

/// Lift an edge map (edge-map JSON) to a vertex map.
#[pyfunction]
fn lift_edge_map(py: Python<'_>, edge_map_json: &str) -> PyResult<Py<PyAny>> {
    let psi = EdgeMapDocument::from_json(edge_map_json).and_then(EdgeMapDocument::into_bijection).map_err(err)?;
    let lift = lift_edge_isomorphism(&psi).map_err(err)?;
    let (src, dst) = (psi.source(), psi.target());
    let out = match &lift {
        LiftResult::Lifted { vertex_map } => {
            let named: BTreeMap<&str, &str> = vertex_map
                .iter()
                .enumerate()
                .map(|(v, &t)| (src.vertices()[v].as_str(), dst.vertices()[t].as_str()))
                .collect();
            json!({ "verdict": lift.verdict(), "vertex_map": named })
        }
        LiftResult::Obstructed { obstruction } => {
            let named: Vec<&str> = obstruction.iter().map(|&e| src.edge_ids()[e].as_str()).collect();
            json!({ "verdict": lift.verdict(), "obstruction": named })
        }
        LiftResult::AmbiguousOrder2 => json!({ "verdict": lift.verdict() }),
    };
    to_py(py, &out)
}

#[pyfunction]
#[pyo3(signature = (n, s, pair=1))]
fn good_pair_census(py: Python<'_>, n: usize, s: usize, pair: usize) -> PyResult<Py<PyAny>> {
    let cut = CutLabeling::new(n, s).map_err(err)?;
    to_py(py, &census(&cut, pair).map_err(err)?)
}

/// A locally injective map of the induced subcomplex on `ids` that does not
/// extend to the caterpillar window of half-width `window`.
#[pyfunction]
fn caterpillar_witness(py: Python<'_>, window: usize, ids: Vec<String>) -> PyResult<Py<PyAny>> {
    let w = build_caterpillar_window(window);
    let x = w.induced_by_ids(&ids).map_err(err)?;
    to_py(py, &witness(&x, &w).map_err(err)?)
}

#[pyfunction]
fn link_classes(py: Python<'_>, s: usize, sides: Vec<Vec<usize>>) -> PyResult<Py<PyAny>> {
    let gz = genus_zero(s)?;
    let sigma = SphereSystem::new(gz.complex(), sphere_vertices(&gz, &sides)?).map_err(err)?;
    to_py(py, &link_equivalence_classes(&gz, &sigma).map_err(err)?)
}

#[pymodule]
fn sphere_rigidity_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_function(wrap_pyfunction!(pants_decompositions, m)?)?;
    m.add_function(wrap_pyfunction!(flip_graph, m)?)?;
    m.add_function(wrap_pyfunction!(pants_dual, m)?)?;
    m.add_function(wrap_pyfunction!(classify_link, m)?)?;
    m.add_function(wrap_pyfunction!(lift_edge_map, m)?)?;
    m.add_function(wrap_pyfunction!(good_pair_census, m)?)?;
    m.add_function(wrap_pyfunction!(caterpillar_witness, m)?)?;
    m.add_function(wrap_pyfunction!(link_classes, m)?)?;
    Ok(())
}
