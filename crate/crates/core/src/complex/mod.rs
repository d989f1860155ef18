//! Finite flag (clique) complexes.
//!
//! A flag complex is stored as its 1-skeleton: a set of vertex ids and a
//! symmetric, irreflexive adjacency relation. Every clique of the graph is a
//! simplex, so higher cells are enumerated on demand and never stored.
//!
//! Vertices are kept in lexicographic order of their ids and addressed by
//! their position in that order. Every enumeration in this crate emits
//! results in this canonical order.

mod io;
pub mod search;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use io::ComplexDocument;
pub use search::{
    enumerate_locally_injective_maps, isomorphisms, search_embedding, search_embedding_exhaustive, search_isomorphism,
};

/// A finite simplicial complex determined by its 1-skeleton.
#[derive(Clone, PartialEq, Eq)]
pub struct FlagComplex {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    neighbors: Vec<Vec<usize>>,
    adjacency: Vec<FixedBitSet>,
    tags: BTreeMap<String, BTreeSet<String>>,
}

impl fmt::Debug for FlagComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlagComplex").field("vertices", &self.ids.len()).field("edges", &self.edge_count()).finish()
    }
}

impl Default for FlagComplex {
    fn default() -> Self {
        Self::empty()
    }
}

impl FlagComplex {
    pub fn empty() -> Self {
        FlagComplex {
            ids: Vec::new(),
            index: HashMap::new(),
            neighbors: Vec::new(),
            adjacency: Vec::new(),
            tags: BTreeMap::new(),
        }
    }

    /// Builds the flag complex with the given vertices and 1-simplices.
    ///
    /// Pairs may be listed in either orientation and more than once.
    pub fn from_adjacency<V, A, B, P>(vertices: V, pairs: P) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        P: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut ids: Vec<String> = vertices.into_iter().map(Into::into).collect();
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0].clone()));
        }
        let index: HashMap<String, usize> = ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        let mut edges = Vec::new();
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = *index.get(a).ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
            let j = *index.get(b).ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
            if i == j {
                return Err(Error::SelfLoop(a.to_string()));
            }
            edges.push((i, j));
        }
        Ok(Self::from_parts(ids, index, edges))
    }

    /// Builds a complex from already-sorted ids and index pairs.
    fn from_parts(ids: Vec<String>, index: HashMap<String, usize>, edges: Vec<(usize, usize)>) -> Self {
        let n = ids.len();
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        for (i, j) in edges {
            adjacency[i].insert(j);
            adjacency[j].insert(i);
        }
        let neighbors = adjacency.iter().map(|row| row.ones().collect()).collect();
        FlagComplex { ids, index, neighbors, adjacency, tags: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require_index(&self, id: &str) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub(crate) fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// All 1-simplices as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, ns) in self.neighbors.iter().enumerate() {
            out.extend(ns.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn tags(&self, id: &str) -> impl Iterator<Item = &str> {
        self.tags.get(id).into_iter().flat_map(|t| t.iter().map(String::as_str))
    }

    pub fn has_tag(&self, v: usize, tag: &str) -> bool {
        self.tags.get(&self.ids[v]).is_some_and(|t| t.contains(tag))
    }

    pub fn add_tag(&mut self, id: &str, tag: impl Into<String>) -> Result<()> {
        self.require_index(id)?;
        self.tags.entry(id.to_string()).or_default().insert(tag.into());
        Ok(())
    }

    pub(crate) fn all_tags(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.tags
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(k, &u)| u < self.len() && vertices[k + 1..].iter().all(|&v| u != v && self.adjacent(u, v)))
    }

    /// Looks up a simplex by vertex ids, checking the clique condition.
    pub fn simplex<S: AsRef<str>>(&self, ids: &[S]) -> Result<Simplex> {
        let idx = ids.iter().map(|id| self.require_index(id.as_ref())).collect::<Result<Vec<_>>>()?;
        let s = Simplex::new(idx);
        self.check_clique(&s)?;
        Ok(s)
    }

    pub(crate) fn check_clique(&self, s: &Simplex) -> Result<()> {
        if let Some(&bad) = s.vertices().iter().find(|&&v| v >= self.len()) {
            return Err(Error::IndexOutOfRange(bad));
        }
        if self.is_clique(s.vertices()) {
            Ok(())
        } else {
            Err(Error::NotAClique(s.vertices().iter().map(|&v| self.ids[v].clone()).collect()))
        }
    }

    /// The induced subcomplex on `vertices`, keeping ids and tags.
    pub fn induced(&self, vertices: &[usize]) -> FlagComplex {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        // ids are already sorted, so the order of `keep` is the new canonical order
        let ids: Vec<String> = keep.iter().map(|&v| self.ids[v].clone()).collect();
        let index: HashMap<String, usize> = ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        let mut edges = Vec::new();
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate().skip(a + 1) {
                if self.adjacent(u, v) {
                    edges.push((a, b));
                }
            }
        }
        let mut out = Self::from_parts(ids, index, edges);
        out.tags = self
            .tags
            .iter()
            .filter(|(id, _)| out.index.contains_key(*id))
            .map(|(id, t)| (id.clone(), t.clone()))
            .collect();
        out
    }

    pub fn induced_by_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<FlagComplex> {
        let idx = ids.iter().map(|id| self.require_index(id.as_ref())).collect::<Result<Vec<_>>>()?;
        Ok(self.induced(&idx))
    }

    /// Vertices outside `s` adjacent to every vertex of `s`.
    pub fn link_vertices(&self, s: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|v| !s.contains(v) && s.iter().all(|&u| self.adjacent(u, *v))).collect()
    }

    pub fn link_of(&self, s: &Simplex) -> Result<FlagComplex> {
        self.check_clique(s)?;
        Ok(self.induced(&self.link_vertices(s.vertices())))
    }

    /// Simplicial join. Vertex ids of the two factors must be disjoint.
    pub fn join(&self, other: &FlagComplex) -> Result<FlagComplex> {
        if let Some(id) = other.ids.iter().find(|id| self.index.contains_key(*id)) {
            return Err(Error::IdCollision(id.clone()));
        }
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        for c in [self, other] {
            pairs.extend(c.edges().into_iter().map(|(i, j)| (c.id(i), c.id(j))));
        }
        for a in &self.ids {
            for b in &other.ids {
                pairs.push((a, b));
            }
        }
        let mut out = FlagComplex::from_adjacency(self.ids.iter().chain(other.ids.iter()).cloned(), pairs)?;
        for (id, t) in self.tags.iter().chain(other.tags.iter()) {
            out.tags.insert(id.clone(), t.clone());
        }
        Ok(out)
    }

    /// A copy with every vertex id rewritten by `f`.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<FlagComplex> {
        let pairs: Vec<(String, String)> =
            self.edges().into_iter().map(|(i, j)| (f(&self.ids[i]), f(&self.ids[j]))).collect();
        let mut out = FlagComplex::from_adjacency(self.ids.iter().map(|id| f(id)), pairs)?;
        for (id, t) in &self.tags {
            out.tags.insert(f(id), t.clone());
        }
        Ok(out)
    }

    /// Inclusion-maximal cliques in canonical (lexicographic) order.
    pub fn maximal_cliques(&self) -> Vec<Simplex> {
        let n = self.len();
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let mut p = FixedBitSet::with_capacity(n);
        p.insert_range(..);
        let x = FixedBitSet::with_capacity(n);
        let mut r = Vec::new();
        self.bron_kerbosch(&mut r, p, x, &mut out);
        for s in &mut out {
            s.0.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet, out: &mut Vec<Simplex>) {
        if p.is_clear() {
            if x.is_clear() {
                out.push(Simplex(r.clone()));
            }
            return;
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| p.intersection(&self.adjacency[u]).count())
            .expect("p is nonempty");
        let candidates: Vec<usize> = p.difference(&self.adjacency[pivot]).collect();
        for v in candidates {
            let nv = &self.adjacency[v];
            let mut p2 = p.clone();
            p2.intersect_with(nv);
            let mut x2 = x.clone();
            x2.intersect_with(nv);
            r.push(v);
            self.bron_kerbosch(r, p2, x2, out);
            r.pop();
            p.remove(v);
            x.insert(v);
        }
    }

    /// All simplices of dimension at most `max_dim`, grouped by dimension,
    /// each group in lexicographic order.
    pub fn simplices(&self, max_dim: usize) -> Vec<Vec<Simplex>> {
        let mut out = vec![Vec::new(); max_dim + 1];
        let mut current = Vec::new();
        for v in 0..self.len() {
            current.push(v);
            let mut cand = self.adjacency[v].clone();
            cand.remove_range(..v + 1);
            self.extend_cliques(&mut current, &cand, max_dim, &mut out);
            current.pop();
        }
        for group in &mut out {
            group.sort();
        }
        out
    }

    fn extend_cliques(&self, current: &mut Vec<usize>, cand: &FixedBitSet, max_dim: usize, out: &mut [Vec<Simplex>]) {
        out[current.len() - 1].push(Simplex(current.clone()));
        if current.len() > max_dim {
            return;
        }
        for w in cand.ones() {
            let mut next = cand.clone();
            next.intersect_with(&self.adjacency[w]);
            next.remove_range(..w + 1);
            current.push(w);
            self.extend_cliques(current, &next, max_dim, out);
            current.pop();
        }
    }

    /// Number of cliques of each size up to `max_dim + 1`, without materializing them.
    pub fn f_vector(&self, max_dim: usize) -> FVector {
        let mut counts = vec![0u64; max_dim + 1];
        fn walk(c: &FlagComplex, size: usize, cand: &FixedBitSet, max_dim: usize, counts: &mut [u64]) {
            counts[size - 1] += 1;
            if size > max_dim {
                return;
            }
            for w in cand.ones() {
                let mut next = cand.clone();
                next.intersect_with(&c.adjacency[w]);
                next.remove_range(..w + 1);
                walk(c, size + 1, &next, max_dim, counts);
            }
        }
        for v in 0..self.len() {
            let mut cand = self.adjacency[v].clone();
            cand.remove_range(..v + 1);
            walk(self, 1, &cand, max_dim, &mut counts);
        }
        FVector::new(counts)
    }

    /// Dimension of the largest simplex; `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.maximal_cliques().iter().map(|s| s.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut count = 0;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.neighbors[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Whether the 1-skeleton contains a cycle.
    pub fn has_cycle(&self) -> bool {
        self.edge_count() + self.component_count() > self.len()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{}\" {{\n", escape(name));
        for id in &self.ids {
            let tags: Vec<&str> = self.tags(id).collect();
            if tags.is_empty() {
                out.push_str(&format!("  \"{}\";\n", escape(id)));
            } else {
                out.push_str(&format!("  \"{}\" [class=\"{}\"];\n", escape(id), tags.join(" ")));
            }
        }
        for (i, j) in self.edges() {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", escape(&self.ids[i]), escape(&self.ids[j])));
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A simplex: a sorted, duplicate-free set of vertex indices of some complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

/// Simplex counts by dimension and their alternating sum.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FVector {
    pub counts: Vec<u64>,
    pub euler_characteristic: i64,
}

impl FVector {
    fn new(counts: Vec<u64>) -> Self {
        let euler_characteristic =
            counts.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        FVector { counts, euler_characteristic }
    }
}

/// A vertex assignment between two complexes, `assignment[v]` being the
/// image of source vertex `v`. Simpliciality and local injectivity are
/// properties to be checked against a concrete source and target.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexMap {
    assignment: Vec<usize>,
}

impl VertexMap {
    pub fn new(assignment: Vec<usize>) -> Self {
        VertexMap { assignment }
    }

    pub fn identity(n: usize) -> Self {
        VertexMap { assignment: (0..n).collect() }
    }

    /// Builds a map from `(source id, target id)` pairs; must be total.
    pub fn from_ids<A: AsRef<str>, B: AsRef<str>>(
        source: &FlagComplex,
        target: &FlagComplex,
        pairs: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Self> {
        let mut assignment = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            let i = source.require_index(a.as_ref())?;
            assignment[i] = target.require_index(b.as_ref())?;
        }
        if let Some(v) = assignment.iter().position(|&t| t == usize::MAX) {
            return Err(Error::Precondition(format!("map is undefined on `{}`", source.id(v))));
        }
        Ok(VertexMap { assignment })
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    fn fits(&self, source: &FlagComplex, target: &FlagComplex) -> bool {
        self.assignment.len() == source.len() && self.assignment.iter().all(|&t| t < target.len())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen: Vec<usize> = self.assignment.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Adjacent vertices go to adjacent or equal vertices.
    pub fn is_simplicial(&self, source: &FlagComplex, target: &FlagComplex) -> bool {
        self.fits(source, target)
            && source.edges().into_iter().all(|(u, v)| {
                let (a, b) = (self.assignment[u], self.assignment[v]);
                a == b || target.adjacent(a, b)
            })
    }

    /// Injective on every closed vertex star of the source.
    pub fn is_locally_injective(&self, source: &FlagComplex, target: &FlagComplex) -> bool {
        self.fits(source, target)
            && (0..source.len()).all(|v| {
                let mut star: Vec<usize> =
                    std::iter::once(v).chain(source.neighbors(v).iter().copied()).map(|u| self.assignment[u]).collect();
                let n = star.len();
                star.sort_unstable();
                star.dedup();
                star.len() == n
            })
    }

    /// Adjacency preserved in both directions and bijective.
    pub fn is_isomorphism(&self, source: &FlagComplex, target: &FlagComplex) -> bool {
        source.len() == target.len()
            && self.fits(source, target)
            && self.is_injective()
            && source.edge_count() == target.edge_count()
            && self.is_simplicial(source, target)
    }

    pub fn compose(&self, then: &VertexMap) -> VertexMap {
        VertexMap { assignment: self.assignment.iter().map(|&t| then.assignment[t]).collect() }
    }

    pub fn to_named(&self, source: &FlagComplex, target: &FlagComplex) -> BTreeMap<String, String> {
        self.assignment.iter().enumerate().map(|(v, &t)| (source.id(v).to_string(), target.id(t).to_string())).collect()
    }
}
