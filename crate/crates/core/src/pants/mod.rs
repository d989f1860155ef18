//! Sphere systems, pants decompositions and flip moves in the genus-zero
//! model, and dual multigraphs with their link classification.

mod dual;
mod laminar;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::complex::FlagComplex;
use crate::error::{Error, Result};
use crate::genus_zero::GenusZeroComplex;

pub use dual::{
    classify_link, ih_flip, signature_of_dual, Bond, DualDocument, DualMultigraph, JoinDecomposition, Leg, LegDocument,
    Slot,
};
pub use laminar::{laminar_regions, region_of, LaminarRegion};

/// A finite set of pairwise disjoint spheres: a clique of the ambient complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SphereSystem {
    members: Vec<usize>,
}

impl SphereSystem {
    pub fn new(ambient: &FlagComplex, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let s = crate::complex::Simplex::new(members);
        ambient.check_clique(&s)?;
        Ok(SphereSystem { members: s.vertices().to_vec() })
    }

    pub fn empty() -> Self {
        SphereSystem { members: Vec::new() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn without(&self, v: usize) -> Vec<usize> {
        self.members.iter().copied().filter(|&u| u != v).collect()
    }
}

/// A maximal sphere system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PantsDecomposition {
    system: SphereSystem,
}

impl PantsDecomposition {
    pub fn new(ambient: &FlagComplex, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let system = SphereSystem::new(ambient, members)?;
        if !is_maximal_system(ambient, &system) {
            return Err(Error::NotMaximal);
        }
        Ok(PantsDecomposition { system })
    }

    pub fn system(&self) -> &SphereSystem {
        &self.system
    }

    pub fn members(&self) -> &[usize] {
        self.system.members()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.system.contains(v)
    }

    pub fn ids(&self, ambient: &FlagComplex) -> Vec<String> {
        self.members().iter().map(|&v| ambient.id(v).to_string()).collect()
    }
}

pub fn is_maximal_system(ambient: &FlagComplex, sys: &SphereSystem) -> bool {
    ambient.link_vertices(sys.members()).is_empty()
}

/// All pants decompositions of the `s`-holed sphere, in canonical order.
pub fn enumerate_pants(gz: &GenusZeroComplex) -> Result<Vec<PantsDecomposition>> {
    if gz.s() < 4 {
        return Err(Error::InvalidBoundaryCount(gz.s()));
    }
    Ok(gz
        .complex()
        .maximal_cliques()
        .into_iter()
        .map(|s| PantsDecomposition { system: SphereSystem { members: s.vertices().to_vec() } })
        .collect())
}

/// The two spheres that can replace `a` in `p`.
pub fn flip_partners(gz: &GenusZeroComplex, p: &PantsDecomposition, a: usize) -> Result<Vec<usize>> {
    let c = gz.complex();
    if !p.contains(a) {
        return Err(Error::NotAMember(c.id(a).to_string()));
    }
    let dual = dual_of_pants(gz, p);
    let bond = p.members().iter().position(|&v| v == a).expect("member");
    if dual.is_loop(bond) {
        return Err(Error::SelfAdjacent(c.id(a).to_string()));
    }
    Ok(c.link_vertices(&p.system.without(a)).into_iter().filter(|&b| b != a).collect())
}

/// The graph of pants decompositions joined by flip moves.
#[derive(Clone, Debug, Serialize)]
pub struct FlipGraph {
    #[serde(skip)]
    pub nodes: Vec<PantsDecomposition>,
    pub edges: Vec<(usize, usize)>,
    pub connected: bool,
    /// Longest shortest path; `None` when disconnected or empty.
    pub diameter: Option<usize>,
}

impl FlipGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == node || b == node).count()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

fn bfs_distances(adj: &[Vec<usize>], start: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].expect("visited");
        for &w in &adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn pants_flip_graph(gz: &GenusZeroComplex) -> Result<FlipGraph> {
    let nodes = enumerate_pants(gz)?;
    let lookup: HashMap<&[usize], usize> = nodes.iter().enumerate().map(|(i, p)| (p.members(), i)).collect();
    let mut edges = Vec::new();
    for (i, p) in nodes.iter().enumerate() {
        for &a in p.members() {
            for b in flip_partners(gz, p, a)? {
                let mut q = p.system.without(a);
                q.push(b);
                q.sort_unstable();
                let j = lookup[q.as_slice()];
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    edges.sort_unstable();
    let mut graph = FlipGraph { nodes, edges, connected: false, diameter: None };
    let adj = graph.adjacency();
    if !adj.is_empty() {
        let first = bfs_distances(&adj, 0);
        graph.connected = first.iter().all(Option::is_some);
        if graph.connected {
            let diameter =
                (0..adj.len()).map(|v| bfs_distances(&adj, v).into_iter().flatten().max().unwrap_or(0)).max();
            graph.diameter = diameter;
        }
    }
    Ok(graph)
}

/// The dual tree of a genus-zero pants decomposition: one trivalent vertex
/// per complementary pair of pants, one bond per sphere, one leg per
/// boundary label.
///
/// Vertex `v0` is the region containing label 1; the others follow the
/// canonical order of the sphere cutting them off from the root side. Each
/// vertex lists its slots as parent bond, child bonds, then legs.
pub fn dual_of_pants(gz: &GenusZeroComplex, p: &PantsDecomposition) -> DualMultigraph {
    let spheres: Vec<_> = p.members().iter().map(|&v| *gz.partition(v)).collect();
    let regions = laminar_regions(gz.s(), &spheres);
    let pants: Vec<String> = (0..regions.len()).map(|i| format!("v{i}")).collect();
    let mut slot_of_child = vec![None; spheres.len()];
    let mut parent_slot = vec![None; spheres.len()];
    let mut legs = Vec::new();
    for (r, region) in regions.iter().enumerate() {
        let mut next = 0u8;
        let mut take = || {
            let s = Slot { pants: r, index: next };
            next += 1;
            s
        };
        if let Some(sphere) = region.sphere {
            parent_slot[sphere] = Some(take());
        }
        for &child in &region.children {
            let sphere = regions[child].sphere.expect("non-root regions carry a sphere");
            slot_of_child[sphere] = Some(take());
        }
        for &label in &region.labels {
            legs.push(Leg { slot: take(), label: label.to_string() });
        }
    }
    let bonds = p
        .members()
        .iter()
        .enumerate()
        .map(|(k, &v)| Bond {
            ends: [slot_of_child[k].expect("slot on the outer side"), parent_slot[k].expect("slot on the inner side")],
            label: Some(gz.complex().id(v).to_string()),
        })
        .collect();
    DualMultigraph::new(pants, bonds, legs).expect("laminar dual is trivalent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus_zero::build_genus_zero_complex;

    fn pants(gz: &GenusZeroComplex, sides: &[&[usize]]) -> PantsDecomposition {
        PantsDecomposition::new(gz.complex(), gz.vertices(sides).unwrap()).unwrap()
    }

    #[test]
    fn pants_counts() {
        for (s, count, size) in [(4, 3, 1), (5, 15, 2), (6, 105, 3)] {
            let gz = build_genus_zero_complex(s).unwrap();
            let all = enumerate_pants(&gz).unwrap();
            assert_eq!(all.len(), count);
            assert!(all.iter().all(|p| p.members().len() == size));
        }
        let gz3 = build_genus_zero_complex(3).unwrap();
        assert_eq!(enumerate_pants(&gz3).unwrap_err(), Error::InvalidBoundaryCount(3));
    }

    #[test]
    fn maximality() {
        let gz = build_genus_zero_complex(6).unwrap();
        let c = gz.complex();
        let one = SphereSystem::new(c, gz.vertices(&[&[1, 2]]).unwrap()).unwrap();
        assert!(!is_maximal_system(c, &one));
        let three = SphereSystem::new(c, gz.vertices(&[&[1, 2], &[1, 2, 3], &[5, 6]]).unwrap()).unwrap();
        assert!(is_maximal_system(c, &three));
        let gz4 = build_genus_zero_complex(4).unwrap();
        assert!(!is_maximal_system(gz4.complex(), &SphereSystem::empty()));
        assert_eq!(PantsDecomposition::new(c, one.members().to_vec()).unwrap_err(), Error::NotMaximal);
    }

    #[test]
    fn flip_partner_examples() {
        let gz = build_genus_zero_complex(5).unwrap();
        let p = pants(&gz, &[&[1, 2], &[3, 4]]);
        let a = gz.vertex(&[1, 2]).unwrap();
        let mut expected = gz.vertices(&[&[1, 5], &[2, 5]]).unwrap();
        expected.sort_unstable();
        assert_eq!(flip_partners(&gz, &p, a).unwrap(), expected);
        let outside = gz.vertex(&[2, 3]).unwrap();
        assert!(matches!(flip_partners(&gz, &p, outside), Err(Error::NotAMember(_))));

        let gz4 = build_genus_zero_complex(4).unwrap();
        for a in 0..3 {
            let p = PantsDecomposition::new(gz4.complex(), [a]).unwrap();
            let others: Vec<usize> = (0..3).filter(|&b| b != a).collect();
            assert_eq!(flip_partners(&gz4, &p, a).unwrap(), others);
        }
    }

    #[test]
    fn flip_graph_for_four_holes_is_a_triangle() {
        let gz = build_genus_zero_complex(4).unwrap();
        let g = pants_flip_graph(&gz).unwrap();
        assert_eq!(g.edges, vec![(0, 1), (0, 2), (1, 2)]);
        assert!(g.connected);
        assert_eq!(g.diameter, Some(1));
    }

    #[test]
    fn dual_of_a_path_decomposition() {
        let gz = build_genus_zero_complex(6).unwrap();
        let p = pants(&gz, &[&[1, 2], &[1, 2, 3], &[5, 6]]);
        let d = dual_of_pants(&gz, &p);
        assert_eq!(d.pants().len(), 4);
        assert_eq!(d.bonds().len(), 3);
        assert_eq!(d.legs().len(), 6);
        let degrees: Vec<usize> = (0..4).map(|v| d.bond_degree(v)).collect();
        let mut sorted = degrees.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 1, 2, 2]);
        // the two end vertices carry legs {1,2} and {5,6}
        let mut end_legs: Vec<Vec<String>> = (0..4)
            .filter(|&v| degrees[v] == 1)
            .map(|v| d.legs().iter().filter(|l| l.slot.pants == v).map(|l| l.label.clone()).collect())
            .collect();
        end_legs.sort();
        assert_eq!(end_legs, vec![vec!["1", "2"], vec!["5", "6"]]);
        assert_eq!(signature_of_dual(&d).unwrap(), crate::ManifoldSignature::new(0, 6));
    }

    #[test]
    fn dual_of_a_single_sphere() {
        let gz = build_genus_zero_complex(4).unwrap();
        let p = PantsDecomposition::new(gz.complex(), [0]).unwrap();
        let d = dual_of_pants(&gz, &p);
        assert_eq!((d.pants().len(), d.bonds().len(), d.legs().len()), (2, 1, 4));
    }
}
