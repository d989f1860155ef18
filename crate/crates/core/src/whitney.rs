//! Edge isomorphisms of finite multigraphs and their lifts to vertex
//! isomorphisms.
//!
//! An edge bijection is an edge isomorphism when every subgraph spanned by
//! two edges (or one edge) is carried isomorphically onto the subgraph
//! spanned by their images. On a connected multigraph such a bijection is
//! induced by a vertex isomorphism exactly when no three edges forming a
//! triangle are sent to a three-edge star or the other way round; the
//! inducing isomorphism is unique unless the graph has only two vertices
//! and no loops.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pants::DualMultigraph;

/// A finite multigraph with named vertices and edges. Loops and parallel
/// edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<String>,
    edge_ids: Vec<String>,
    ends: Vec<(usize, usize)>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl Multigraph {
    /// `edges` lists `(edge id, endpoint id, endpoint id)`.
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String, String)>) -> Result<Self> {
        let vertex_index: HashMap<String, usize> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        if vertex_index.len() != vertices.len() {
            return Err(Error::MalformedGraph("duplicate vertex id".into()));
        }
        let mut edge_ids = Vec::with_capacity(edges.len());
        let mut ends = Vec::with_capacity(edges.len());
        for (id, a, b) in edges {
            let look = |x: &str| {
                vertex_index
                    .get(x)
                    .copied()
                    .ok_or_else(|| Error::MalformedGraph(format!("edge `{id}` uses unknown vertex `{x}`")))
            };
            let (i, j) = (look(&a)?, look(&b)?);
            ends.push((i.min(j), i.max(j)));
            edge_ids.push(id);
        }
        let edge_index: HashMap<String, usize> = edge_ids.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        if edge_index.len() != edge_ids.len() {
            return Err(Error::MalformedGraph("duplicate edge id".into()));
        }
        Ok(Multigraph { vertices, edge_ids, ends, vertex_index, edge_index })
    }

    /// Vertices `v0..`, edges `e0..` in the given order.
    pub fn from_pairs(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let vertices: Vec<String> = (0..vertex_count).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::with_capacity(pairs.len());
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::MalformedGraph(format!("edge {k} uses a vertex out of range")));
            }
            edges.push((format!("e{k}"), vertices[a].clone(), vertices[b].clone()));
        }
        Self::new(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge_ids(&self) -> &[String] {
        &self.edge_ids
    }

    /// Endpoints of an edge, smaller index first.
    pub fn ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (a, b) = self.ends[e];
        a == b
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    /// Connected, counting isolated vertices as separate components.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.ends {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn shared(&self, e: usize, f: usize) -> usize {
        let (a, b) = self.ends[e];
        let (c, d) = self.ends[f];
        let mut x = vec![a, b];
        x.dedup();
        x.iter().filter(|&&v| v == c || v == d).count()
    }

    /// Isomorphism type of the subgraph spanned by edges `e` and `f`,
    /// relative to the labels `e`, `f`.
    fn pair_type(&self, e: usize, f: usize) -> (bool, bool, usize) {
        (self.is_loop(e), self.is_loop(f), self.shared(e, f))
    }

    fn is_triangle(&self, t: [usize; 3]) -> bool {
        if t.iter().any(|&e| self.is_loop(e)) {
            return false;
        }
        let mut vs: Vec<usize> = t.iter().flat_map(|&e| [self.ends[e].0, self.ends[e].1]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs.len() == 3 && self.shared(t[0], t[1]) == 1 && self.shared(t[1], t[2]) == 1 && self.shared(t[0], t[2]) == 1
    }

    fn is_star(&self, t: [usize; 3]) -> bool {
        if t.iter().any(|&e| self.is_loop(e)) {
            return false;
        }
        let mut vs: Vec<usize> = t.iter().flat_map(|&e| [self.ends[e].0, self.ends[e].1]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs.len() == 4 && vs.iter().any(|&c| t.iter().all(|&e| self.ends[e].0 == c || self.ends[e].1 == c))
    }
}

impl From<&DualMultigraph> for Multigraph {
    /// The underlying multigraph of a dual: pants vertices and bonds; legs are dropped.
    fn from(d: &DualMultigraph) -> Self {
        let pairs: Vec<(usize, usize)> = (0..d.bonds().len()).map(|b| d.endpoints(b)).collect();
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| {
                let id = d.bonds()[k].label.clone().unwrap_or_else(|| format!("e{k}"));
                (id, d.pants()[a].clone(), d.pants()[b].clone())
            })
            .collect();
        Multigraph::new(d.pants().to_vec(), edges).expect("dual ids are distinct")
    }
}

/// JSON form: `{"vertices": [..], "edges": [{"id": .., "ends": [a, b]}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultigraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDocument>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeDocument {
    pub id: String,
    pub ends: [String; 2],
}

impl MultigraphDocument {
    pub fn into_graph(self) -> Result<Multigraph> {
        Multigraph::new(
            self.vertices,
            self.edges
                .into_iter()
                .map(|e| {
                    let [a, b] = e.ends;
                    (e.id, a, b)
                })
                .collect(),
        )
    }
}

impl From<&Multigraph> for MultigraphDocument {
    fn from(g: &Multigraph) -> Self {
        MultigraphDocument {
            vertices: g.vertices.clone(),
            edges: (0..g.edge_count())
                .map(|e| {
                    let (a, b) = g.ends[e];
                    EdgeDocument { id: g.edge_ids[e].clone(), ends: [g.vertices[a].clone(), g.vertices[b].clone()] }
                })
                .collect(),
        }
    }
}

/// A bijection between the edge sets of two multigraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeBijection {
    source: Multigraph,
    target: Multigraph,
    map: Vec<usize>,
}

impl EdgeBijection {
    pub fn new(source: Multigraph, target: Multigraph, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.edge_count() || source.edge_count() != target.edge_count() {
            return Err(Error::NotABijection("edge counts differ".into()));
        }
        let mut hit = vec![false; target.edge_count()];
        for &t in &map {
            if t >= hit.len() || hit[t] {
                return Err(Error::NotABijection(format!("target edge {t} is hit twice or does not exist")));
            }
            hit[t] = true;
        }
        Ok(EdgeBijection { source, target, map })
    }

    /// The edge map induced by a vertex bijection `phi` between isomorphic
    /// graphs; each source edge goes to the first unused target edge with
    /// the image endpoints.
    pub fn induced_by(source: Multigraph, target: Multigraph, phi: &[usize]) -> Result<Self> {
        let mut used = vec![false; target.edge_count()];
        let mut map = Vec::with_capacity(source.edge_count());
        for e in 0..source.edge_count() {
            let (a, b) = source.ends[e];
            let want = (phi[a].min(phi[b]), phi[a].max(phi[b]));
            let t = (0..target.edge_count())
                .find(|&t| !used[t] && target.ends[t] == want)
                .ok_or_else(|| Error::NotABijection(format!("no image for edge `{}`", source.edge_ids[e])))?;
            used[t] = true;
            map.push(t);
        }
        Self::new(source, target, map)
    }

    pub fn source(&self) -> &Multigraph {
        &self.source
    }

    pub fn target(&self) -> &Multigraph {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, e: usize) -> usize {
        self.map[e]
    }
}

/// JSON form: `{"source": .., "target": .., "map": {edgeId: edgeId}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeMapDocument {
    pub source: MultigraphDocument,
    pub target: MultigraphDocument,
    pub map: BTreeMap<String, String>,
}

impl EdgeMapDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("edge maps always serialize")
    }

    pub fn into_bijection(self) -> Result<EdgeBijection> {
        let source = self.source.into_graph()?;
        let target = self.target.into_graph()?;
        let mut map = vec![usize::MAX; source.edge_count()];
        for (a, b) in &self.map {
            let e = source.edge_index(a).ok_or_else(|| Error::NotABijection(format!("unknown source edge `{a}`")))?;
            let t = target.edge_index(b).ok_or_else(|| Error::NotABijection(format!("unknown target edge `{b}`")))?;
            map[e] = t;
        }
        if map.contains(&usize::MAX) {
            return Err(Error::NotABijection("map is not total".into()));
        }
        EdgeBijection::new(source, target, map)
    }
}

impl From<&EdgeBijection> for EdgeMapDocument {
    fn from(psi: &EdgeBijection) -> Self {
        EdgeMapDocument {
            source: (&psi.source).into(),
            target: (&psi.target).into(),
            map: psi
                .map
                .iter()
                .enumerate()
                .map(|(e, &t)| (psi.source.edge_ids[e].clone(), psi.target.edge_ids[t].clone()))
                .collect(),
        }
    }
}

/// Every one- and two-edge subgraph keeps its shape under `psi`.
pub fn is_edge_isomorphism(psi: &EdgeBijection) -> bool {
    let (g, h) = (&psi.source, &psi.target);
    (0..g.edge_count()).all(|e| (e..g.edge_count()).all(|f| g.pair_type(e, f) == h.pair_type(psi.map[e], psi.map[f])))
}

/// First edge triple (lexicographically) that spans a triangle on one
/// side and a three-edge star on the other.
pub fn find_k3_k13_pair(psi: &EdgeBijection) -> Result<Option<[usize; 3]>> {
    if !is_edge_isomorphism(psi) {
        return Err(Error::NotEdgeIsomorphism);
    }
    let (g, h) = (&psi.source, &psi.target);
    let m = g.edge_count();
    for a in 0..m {
        for b in a + 1..m {
            if g.shared(a, b) != 1 || g.is_loop(a) || g.is_loop(b) {
                continue;
            }
            for c in b + 1..m {
                let t = [a, b, c];
                let image = [psi.map[a], psi.map[b], psi.map[c]];
                if (g.is_triangle(t) && h.is_star(image)) || (g.is_star(t) && h.is_triangle(image)) {
                    return Ok(Some(t));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum LiftResult {
    /// `vertex_map[v]` is the image of source vertex `v`.
    Lifted { vertex_map: Vec<usize> },
    /// A triangle/star edge triple of the source.
    Obstructed { obstruction: [usize; 3] },
    /// Two vertices joined only by parallel edges: both vertex maps induce the bijection.
    AmbiguousOrder2,
}

impl LiftResult {
    pub fn vertex_map(&self) -> Option<&[usize]> {
        match self {
            LiftResult::Lifted { vertex_map } => Some(vertex_map),
            _ => None,
        }
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            LiftResult::Lifted { .. } => "lifted",
            LiftResult::Obstructed { .. } => "obstructed",
            LiftResult::AmbiguousOrder2 => "ambiguous-order-2",
        }
    }
}

fn check_lift_input(psi: &EdgeBijection) -> Result<()> {
    if !psi.source.is_connected() {
        return Err(Error::DisconnectedSource);
    }
    if !is_edge_isomorphism(psi) {
        return Err(Error::NotEdgeIsomorphism);
    }
    Ok(())
}

fn is_order_two(g: &Multigraph) -> bool {
    g.vertex_count() == 2 && (0..g.edge_count()).all(|e| !g.is_loop(e))
}

/// Lifts an edge isomorphism of a connected multigraph to the vertex
/// isomorphism inducing it.
pub fn lift_edge_isomorphism(psi: &EdgeBijection) -> Result<LiftResult> {
    check_lift_input(psi)?;
    if let Some(t) = find_k3_k13_pair(psi)? {
        return Ok(LiftResult::Obstructed { obstruction: t });
    }
    if is_order_two(&psi.source) {
        return Ok(LiftResult::AmbiguousOrder2);
    }
    let assignment = resolve(psi, vec![None; psi.source.vertex_count()])?;
    Ok(LiftResult::Lifted { vertex_map: assignment })
}

/// Extends a lift along an inclusion of graphs: `psi` acts on a graph
/// containing the previous source (matched by vertex and edge ids) and
/// must agree with the previous bijection there.
pub fn extend_lift(prev: &LiftResult, prev_psi: &EdgeBijection, psi: &EdgeBijection) -> Result<LiftResult> {
    let prev_map = prev.vertex_map().ok_or(Error::PreviousNotLifted)?;
    let (old, new) = (&prev_psi.source, &psi.source);
    if old.vertex_count() == 2 {
        return Err(Error::Precondition("previous graph has two vertices".into()));
    }
    let mismatch = |what: String| Error::RestrictionMismatch(what);
    for e in 0..old.edge_count() {
        let id = &old.edge_ids[e];
        let f = new.edge_index(id).ok_or_else(|| mismatch(format!("edge `{id}` missing")))?;
        let (a, b) = old.ends[e];
        let (c, d) = new.ends[f];
        let same_ends = {
            let mut x = [old.vertices[a].as_str(), old.vertices[b].as_str()];
            let mut y = [new.vertices[c].as_str(), new.vertices[d].as_str()];
            x.sort_unstable();
            y.sort_unstable();
            x == y
        };
        if !same_ends {
            return Err(mismatch(format!("edge `{id}` changed endpoints")));
        }
        if prev_psi.target.edge_ids[prev_psi.map[e]] != psi.target.edge_ids[psi.map[f]] {
            return Err(mismatch(format!("edge `{id}` has a different image")));
        }
    }
    check_lift_input(psi)?;
    if let Some(t) = find_k3_k13_pair(psi)? {
        return Ok(LiftResult::Obstructed { obstruction: t });
    }
    let mut seed = vec![None; new.vertex_count()];
    for (v, &t) in prev_map.iter().enumerate() {
        let nv = new
            .vertex_index(&old.vertices[v])
            .ok_or_else(|| mismatch(format!("vertex `{}` missing", old.vertices[v])))?;
        let tid = &prev_psi.target.vertices[t];
        let nt = psi.target.vertex_index(tid).ok_or_else(|| mismatch(format!("target vertex `{tid}` missing")))?;
        seed[nv] = Some(nt);
    }
    Ok(LiftResult::Lifted { vertex_map: resolve(psi, seed)? })
}

/// Determines the vertex map from the edge map, then checks that it is a
/// bijection inducing `psi`.
fn resolve(psi: &EdgeBijection, mut f: Vec<Option<usize>>) -> Result<Vec<usize>> {
    let (g, h) = (&psi.source, &psi.target);
    let n = g.vertex_count();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in 0..g.edge_count() {
        let (a, b) = g.ends[e];
        incident[a].push(e);
        if a != b {
            incident[b].push(e);
        }
    }
    let other = |e: usize, v: usize| {
        let (a, b) = g.ends[e];
        if a == v {
            b
        } else {
            a
        }
    };
    // a loop's vertex goes to the image loop's vertex
    for e in 0..g.edge_count() {
        if g.is_loop(e) {
            let v = g.ends[e].0;
            f[v].get_or_insert(h.ends[psi.map[e]].0);
        }
    }
    // two incident edges towards different neighbors meet exactly at the image vertex
    for v in 0..n {
        if f[v].is_some() {
            continue;
        }
        let links: Vec<usize> = incident[v].iter().copied().filter(|&e| !g.is_loop(e)).collect();
        let pair = links
            .iter()
            .enumerate()
            .find_map(|(i, &e)| links[i + 1..].iter().find(|&&e2| other(e, v) != other(e2, v)).map(|&e2| (e, e2)));
        if let Some((e, e2)) = pair {
            let (x, y) = h.ends[psi.map[e]];
            let (z, w) = h.ends[psi.map[e2]];
            f[v] = [x, y].into_iter().find(|&t| t == z || t == w);
        }
    }
    // the rest hang off a single neighbor
    loop {
        let mut progress = false;
        for v in 0..n {
            if f[v].is_some() {
                continue;
            }
            let known =
                incident[v].iter().copied().filter(|&e| !g.is_loop(e)).find_map(|e| f[other(e, v)].map(|fw| (e, fw)));
            if let Some((e, fw)) = known {
                let (x, y) = h.ends[psi.map[e]];
                f[v] = Some(if x == fw { y } else { x });
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    if n == 1 && f[0].is_none() && h.vertex_count() == 1 {
        f[0] = Some(0);
    }
    let map: Vec<usize> = f
        .iter()
        .enumerate()
        .map(|(v, t)| t.ok_or_else(|| Error::Underdetermined(format!("no image for vertex `{}`", g.vertices[v]))))
        .collect::<Result<_>>()?;
    if h.vertex_count() != n {
        return Err(Error::Underdetermined("vertex counts differ".into()));
    }
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != n {
        return Err(Error::Underdetermined("vertex map is not injective".into()));
    }
    for e in 0..g.edge_count() {
        let (a, b) = g.ends[e];
        let want = (map[a].min(map[b]), map[a].max(map[b]));
        if h.ends[psi.map[e]] != want {
            return Err(Error::Underdetermined(format!("edge `{}` is not induced", g.edge_ids[e])));
        }
    }
    Ok(map)
}
