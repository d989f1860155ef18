//! Backtracking searches for maps between flag complexes.
//!
//! All searches are sequential and visit candidates in canonical vertex
//! order, so results are reproducible run to run.

use fixedbitset::FixedBitSet;

use super::{FlagComplex, Simplex, VertexMap};

/// Order in which source vertices are assigned: each vertex after the first
/// of its component has at least one earlier neighbor.
struct Plan {
    order: Vec<usize>,
    /// For each position, the earlier-assigned neighbors of that vertex.
    earlier_neighbors: Vec<Vec<usize>>,
    /// For each position, the earlier-assigned vertices at distance 1 or 2.
    earlier_near: Vec<Vec<usize>>,
    /// For each position, all earlier-assigned vertices.
    earlier: Vec<Vec<usize>>,
}

impl Plan {
    fn new(src: &FlagComplex, seeds: &[usize]) -> Plan {
        let n = src.len();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut attached = vec![0usize; n];
        let place = |v: usize, order: &mut Vec<usize>, placed: &mut Vec<bool>, attached: &mut Vec<usize>| {
            placed[v] = true;
            order.push(v);
            for &w in src.neighbors(v) {
                attached[w] += 1;
            }
        };
        for &s in seeds {
            if !placed[s] {
                place(s, &mut order, &mut placed, &mut attached);
            }
        }
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by(|&a, &b| {
                    (attached[a], src.degree(a), std::cmp::Reverse(a)).cmp(&(
                        attached[b],
                        src.degree(b),
                        std::cmp::Reverse(b),
                    ))
                })
                .expect("unplaced vertex exists");
            place(next, &mut order, &mut placed, &mut attached);
        }
        let mut position = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        let mut earlier_neighbors = Vec::with_capacity(n);
        let mut earlier_near = Vec::with_capacity(n);
        let mut earlier = Vec::with_capacity(n);
        for (k, &v) in order.iter().enumerate() {
            earlier_neighbors.push(src.neighbors(v).iter().copied().filter(|&u| position[u] < k).collect());
            let mut near = FixedBitSet::with_capacity(n);
            for &u in src.neighbors(v) {
                near.insert(u);
                for &w in src.neighbors(u) {
                    near.insert(w);
                }
            }
            near.set(v, false);
            earlier_near.push(near.ones().filter(|&u| position[u] < k).collect());
            earlier.push(order[..k].to_vec());
        }
        Plan { order, earlier_neighbors, earlier_near, earlier }
    }
}

fn sorted_neighbor_degrees(c: &FlagComplex, v: usize) -> Vec<usize> {
    let mut d: Vec<usize> = c.neighbors(v).iter().map(|&u| c.degree(u)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// `compat[v]` holds the target vertices that pass the degree and
/// neighbor-degree filters for source vertex `v`.
fn compatibility(src: &FlagComplex, dst: &FlagComplex, exact: bool) -> Vec<FixedBitSet> {
    let src_nd: Vec<Vec<usize>> = (0..src.len()).map(|v| sorted_neighbor_degrees(src, v)).collect();
    let dst_nd: Vec<Vec<usize>> = (0..dst.len()).map(|v| sorted_neighbor_degrees(dst, v)).collect();
    src_nd
        .iter()
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(dst.len());
            for (t, b) in dst_nd.iter().enumerate() {
                let ok = if exact { a == b } else { a.len() <= b.len() && a.iter().zip(b).all(|(x, y)| x <= y) };
                row.set(t, ok);
            }
            row
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    /// Injective, adjacency preserving.
    Embedding,
    /// Bijective, adjacency preserving and reflecting.
    Isomorphism,
    /// Adjacency preserving, injective on closed stars.
    LocallyInjective,
}

struct Search<'a, F: FnMut(&[usize]) -> bool> {
    src: &'a FlagComplex,
    dst: &'a FlagComplex,
    plan: Plan,
    kind: Kind,
    compat: Vec<FixedBitSet>,
    assignment: Vec<usize>,
    used: FixedBitSet,
    visit: F,
    stopped: bool,
}

impl<F: FnMut(&[usize]) -> bool> Search<'_, F> {
    fn candidates(&self, k: usize) -> Vec<usize> {
        let v = self.plan.order[k];
        let mut cand = self.compat[v].clone();
        for &u in &self.plan.earlier_neighbors[k] {
            cand.intersect_with(self.dst.neighbor_set(self.assignment[u]));
        }
        match self.kind {
            Kind::Embedding | Kind::Isomorphism => cand.difference_with(&self.used),
            Kind::LocallyInjective => {
                for &w in &self.plan.earlier_near[k] {
                    cand.set(self.assignment[w], false);
                }
            }
        }
        if self.kind == Kind::Isomorphism {
            // non-neighbors must go to non-neighbors
            for &u in &self.plan.earlier[k] {
                if !self.src.adjacent(u, v) {
                    cand.difference_with(self.dst.neighbor_set(self.assignment[u]));
                }
            }
        }
        cand.ones().collect()
    }

    fn run(&mut self, k: usize) {
        if self.stopped {
            return;
        }
        if k == self.plan.order.len() {
            if !(self.visit)(&self.assignment) {
                self.stopped = true;
            }
            return;
        }
        let v = self.plan.order[k];
        for t in self.candidates(k) {
            self.assignment[v] = t;
            self.used.insert(t);
            self.run(k + 1);
            self.used.set(t, false);
            if self.stopped {
                return;
            }
        }
        self.assignment[v] = usize::MAX;
    }
}

fn search<F: FnMut(&[usize]) -> bool>(
    src: &FlagComplex,
    dst: &FlagComplex,
    kind: Kind,
    fixed: &[(usize, usize)],
    visit: F,
) {
    let seeds: Vec<usize> = fixed.iter().map(|&(v, _)| v).collect();
    let plan = Plan::new(src, &seeds);
    let mut compat = compatibility(src, dst, kind == Kind::Isomorphism);
    for &(v, t) in fixed {
        let ok = compat[v].contains(t);
        compat[v].clear();
        compat[v].set(t, ok);
    }
    let mut s = Search {
        src,
        dst,
        plan,
        kind,
        compat,
        assignment: vec![usize::MAX; src.len()],
        used: FixedBitSet::with_capacity(dst.len()),
        visit,
        stopped: false,
    };
    s.run(0);
}

/// Finds an injective simplicial map `src -> dst` (adjacent vertices go to
/// adjacent vertices), or certifies that none exists.
///
/// A source with more vertices or edges than the target is rejected
/// outright, as is a source with a cycle when the target is a forest.
pub fn search_embedding(src: &FlagComplex, dst: &FlagComplex) -> Option<VertexMap> {
    if src.len() > dst.len() || src.edge_count() > dst.edge_count() {
        return None;
    }
    if src.has_cycle() && !dst.has_cycle() {
        return None;
    }
    search_embedding_exhaustive(src, dst)
}

/// Same as [`search_embedding`] but always walks the search tree.
pub fn search_embedding_exhaustive(src: &FlagComplex, dst: &FlagComplex) -> Option<VertexMap> {
    let mut found = None;
    search(src, dst, Kind::Embedding, &[], |a| {
        found = Some(VertexMap::new(a.to_vec()));
        false
    });
    found
}

fn same_shape(c1: &FlagComplex, c2: &FlagComplex) -> bool {
    if c1.len() != c2.len() || c1.edge_count() != c2.edge_count() {
        return false;
    }
    let degrees = |c: &FlagComplex| {
        let mut d: Vec<usize> = (0..c.len()).map(|v| c.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degrees(c1) != degrees(c2) {
        return false;
    }
    let dim = c1.dimension().max(c2.dimension()).max(0) as usize;
    c1.f_vector(dim + 1) == c2.f_vector(dim + 1)
}

pub fn search_isomorphism(c1: &FlagComplex, c2: &FlagComplex) -> Option<VertexMap> {
    let mut found = None;
    isomorphisms(c1, c2, &[], |m| {
        found = Some(m.clone());
        false
    });
    found
}

/// Visits every isomorphism `c1 -> c2` extending the partial assignment
/// `fixed`, until `visit` returns `false`.
pub fn isomorphisms(
    c1: &FlagComplex,
    c2: &FlagComplex,
    fixed: &[(usize, usize)],
    mut visit: impl FnMut(&VertexMap) -> bool,
) {
    if !same_shape(c1, c2) {
        return;
    }
    search(c1, c2, Kind::Isomorphism, fixed, |a| visit(&VertexMap::new(a.to_vec())));
}

/// All simplicial maps `x -> target` that are injective on closed vertex
/// stars, in lexicographic order of their assignments.
///
/// With `maximal` set, only maps sending each listed simplex of `x` (the
/// ambient's maximal simplices lying in `x`) onto a maximal simplex of
/// `target` are kept.
pub fn enumerate_locally_injective_maps(
    x: &FlagComplex,
    target: &FlagComplex,
    maximal: Option<&[Simplex]>,
) -> Vec<VertexMap> {
    let mut out = Vec::new();
    search(x, target, Kind::LocallyInjective, &[], |a| {
        let keep = maximal.is_none_or(|cliques| {
            cliques.iter().all(|s| {
                let image: Vec<usize> = s.vertices().iter().map(|&v| a[v]).collect();
                target.link_vertices(&image).is_empty()
            })
        });
        if keep {
            out.push(VertexMap::new(a.to_vec()));
        }
        true
    });
    out.sort();
    out
}
