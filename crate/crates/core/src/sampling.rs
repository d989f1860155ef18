//! Seeded random instances for property checks.

use std::ops::RangeInclusive;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::genus_zero::GenusZeroComplex;
use crate::pants::SphereSystem;
use crate::whitney::{EdgeBijection, Multigraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A connected multigraph: a random spanning tree plus up to as many extra
/// edges again, any of which may be a loop or parallel to another edge.
pub fn random_connected_multigraph(rng: &mut impl Rng, vertices: RangeInclusive<usize>) -> Multigraph {
    let n = rng.random_range(vertices);
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    let extra = rng.random_range(0..=n);
    for _ in 0..extra {
        let a = rng.random_range(0..n);
        let b = if rng.random_bool(0.2) { a } else { rng.random_range(0..n) };
        pairs.push((a, b));
    }
    if rng.random_bool(0.5) {
        let &(a, b) = pairs.choose(rng).expect("a tree on two or more vertices has edges");
        pairs.push((a, b));
    }
    Multigraph::from_pairs(n, &pairs).expect("endpoints are in range")
}

/// Relabels vertices by a random permutation and lists edges in random
/// order. Returns the induced edge bijection and the vertex permutation.
pub fn scramble(g: &Multigraph, rng: &mut impl Rng) -> (EdgeBijection, Vec<usize>) {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(rng);
    let pairs: Vec<(usize, usize)> = order
        .iter()
        .map(|&e| {
            let (a, b) = g.ends(e);
            (perm[a], perm[b])
        })
        .collect();
    let target = Multigraph::from_pairs(n, &pairs).expect("endpoints are in range");
    let mut map = vec![0; g.edge_count()];
    for (j, &e) in order.iter().enumerate() {
        map[e] = j;
    }
    let psi = EdgeBijection::new(g.clone(), target, map).expect("map is a bijection");
    (psi, perm)
}

/// A sphere system grown greedily from a shuffled vertex order up to a
/// random size between 0 and the size of a pants decomposition.
pub fn random_sphere_system(gz: &GenusZeroComplex, rng: &mut impl Rng) -> SphereSystem {
    let c = gz.complex();
    let target = rng.random_range(0..=gz.s().saturating_sub(3));
    let mut order: Vec<usize> = (0..c.len()).collect();
    order.shuffle(rng);
    let mut members: Vec<usize> = Vec::new();
    for v in order {
        if members.len() == target {
            break;
        }
        if members.iter().all(|&u| c.adjacent(u, v)) {
            members.push(v);
        }
    }
    SphereSystem::new(c, members).expect("members are pairwise disjoint")
}
