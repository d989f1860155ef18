//! Automorphism groups and rigidity checks: certification by exhaustive
//! enumeration of locally injective maps, split spheres and pairs,
//! flip-detectable intersections, link equivalence classes, the
//! caterpillar non-rigidity witness and the good-pair census.

mod caterpillar;
mod census;
mod split;

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::complex::search::{enumerate_locally_injective_maps, isomorphisms};
use crate::complex::{FlagComplex, Simplex, VertexMap};
use crate::error::{Error, Result};
use crate::genus_zero::{GenusZeroComplex, SpherePartition};

pub use caterpillar::{caterpillar_witness, check_caterpillar_witness, CaterpillarWitness};
pub use census::{good_pair_census, CutLabeling, GoodPairCensus, GoodSphere};
pub use split::{
    build_x_sigma, detect_x_detectable, dual_split_sphere_count, find_split_pairs, find_split_spheres,
    link_equivalence_classes, LinkClass, LinkClasses,
};

/// Groups up to this order also come with their full element list.
pub const FULL_LIST_LIMIT: u128 = 10_000;

/// An automorphism group described by a stabilizer chain.
///
/// `base[i]` has an orbit of size `orbit_sizes[i]` under the pointwise
/// stabilizer of all earlier vertices; `generators` holds one coset
/// representative per non-trivial orbit point, which together generate
/// the group.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub order: u128,
    pub base: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
    pub generators: Vec<VertexMap>,
    /// Every element in lexicographic order, when `order <= FULL_LIST_LIMIT`.
    pub elements: Option<Vec<VertexMap>>,
}

pub fn automorphism_group(c: &FlagComplex) -> AutomorphismGroup {
    let n = c.len();
    let mut fixed: Vec<(usize, usize)> = Vec::with_capacity(n);
    let (mut base, mut orbit_sizes, mut generators) = (Vec::new(), Vec::new(), Vec::new());
    let mut order: u128 = 1;
    for v in 0..n {
        let mut orbit = 0;
        for w in (0..n).filter(|&w| c.degree(w) == c.degree(v)) {
            let mut pins = fixed.clone();
            pins.push((v, w));
            let mut rep = None;
            isomorphisms(c, c, &pins, |m| {
                rep = Some(m.clone());
                false
            });
            if let Some(m) = rep {
                orbit += 1;
                if w != v {
                    generators.push(m);
                }
            }
        }
        if orbit > 1 {
            base.push(v);
            orbit_sizes.push(orbit);
            order *= orbit as u128;
        }
        fixed.push((v, v));
    }
    let elements = (order <= FULL_LIST_LIMIT).then(|| {
        let mut all = Vec::new();
        isomorphisms(c, c, &[], |m| {
            all.push(m.clone());
            true
        });
        all.sort();
        all
    });
    AutomorphismGroup { order, base, orbit_sizes, generators, elements }
}

/// The vertex map induced by relabeling boundary components:
/// `perm[i]` is the new label of label `i + 1`.
pub fn permute_labels(gz: &GenusZeroComplex, perm: &[usize]) -> Result<VertexMap> {
    let s = gz.s();
    if perm.len() != s || !perm.iter().copied().sorted().eq(1..=s) {
        return Err(Error::Precondition(format!("not a permutation of 1..={s}")));
    }
    let assignment = gz
        .partitions()
        .iter()
        .map(|p| {
            let q = SpherePartition::new(s, p.block().iter().map(|&l| perm[l - 1]))?;
            Ok(gz.index_of(&q).expect("relabeled partition is a vertex"))
        })
        .collect::<Result<_>>()?;
    Ok(VertexMap::new(assignment))
}

/// How the symmetric group on the boundary labels acts on the complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelAction {
    pub s: usize,
    pub permutations: usize,
    pub distinct_images: usize,
    pub kernel_size: usize,
    pub group_order: u128,
    /// Every image is an automorphism.
    pub by_automorphisms: bool,
    pub faithful: bool,
    pub surjective: bool,
}

pub fn label_action(gz: &GenusZeroComplex) -> Result<LabelAction> {
    let s = gz.s();
    let c = gz.complex();
    let group = automorphism_group(c);
    let identity = VertexMap::identity(c.len());
    let mut images = std::collections::BTreeSet::new();
    let (mut permutations, mut kernel_size, mut by_automorphisms) = (0, 0, true);
    for perm in (1..=s).permutations(s) {
        let m = permute_labels(gz, &perm)?;
        by_automorphisms &= m.is_isomorphism(c, c);
        kernel_size += usize::from(m == identity);
        images.insert(m);
        permutations += 1;
    }
    Ok(LabelAction {
        s,
        permutations,
        distinct_images: images.len(),
        kernel_size,
        group_order: group.order,
        by_automorphisms,
        faithful: kernel_size == 1,
        surjective: by_automorphisms && images.len() as u128 == group.order,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RigidityMode {
    Plain,
    /// Only maps sending the ambient's maximal simplices inside the
    /// subcomplex to maximal simplices.
    OverMaximalMaps,
}

/// One enumerated map and the automorphisms restricting to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapCheck {
    pub map: BTreeMap<String, String>,
    pub extensions: usize,
    /// Index into the sorted automorphism list when the extension is unique.
    pub automorphism: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityCertificate {
    pub subcomplex: String,
    pub ambient: String,
    pub mode: RigidityMode,
    pub total_maps: usize,
    pub automorphism_count: usize,
    pub all_extend: bool,
    pub maps: Vec<MapCheck>,
    /// The first map without a unique extension.
    pub counterexample: Option<BTreeMap<String, String>>,
}

/// Positions in `ambient` of the vertices of `x`, after checking that `x`
/// is the subcomplex induced on them.
pub fn inclusion(x: &FlagComplex, ambient: &FlagComplex) -> Result<Vec<usize>> {
    let incl: Vec<usize> = x.ids().iter().map(|id| ambient.require_index(id)).collect::<Result<_>>()?;
    for (u, v) in (0..x.len()).tuple_combinations() {
        if x.adjacent(u, v) != ambient.adjacent(incl[u], incl[v]) {
            return Err(Error::NotInduced(format!("{} -- {}", x.id(u), x.id(v))));
        }
    }
    Ok(incl)
}

/// Checks that every locally injective simplicial map `x -> ambient`
/// (restricted by `mode`) is the restriction of exactly one automorphism.
pub fn verify_rigidity(
    x: &FlagComplex,
    x_name: &str,
    ambient: &FlagComplex,
    ambient_name: &str,
    mode: RigidityMode,
) -> Result<RigidityCertificate> {
    let incl = inclusion(x, ambient)?;
    let group = automorphism_group(ambient);
    let autos = group.elements.ok_or(Error::GroupTooLarge(group.order))?;
    let maximal: Option<Vec<Simplex>> = (mode == RigidityMode::OverMaximalMaps).then(|| {
        let position: HashMap<usize, usize> = incl.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        ambient
            .maximal_cliques()
            .into_iter()
            .filter_map(|s| s.vertices().iter().map(|v| position.get(v).copied()).collect::<Option<Vec<_>>>())
            .map(Simplex::new)
            .collect()
    });
    let maps = enumerate_locally_injective_maps(x, ambient, maximal.as_deref());
    let mut by_restriction: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (k, a) in autos.iter().enumerate() {
        by_restriction.entry(incl.iter().map(|&v| a.image(v)).collect()).or_default().push(k);
    }
    let checks: Vec<MapCheck> = maps
        .iter()
        .map(|m| {
            let matches = by_restriction.get(m.assignment()).map_or(&[][..], Vec::as_slice);
            MapCheck {
                map: m.to_named(x, ambient),
                extensions: matches.len(),
                automorphism: (matches.len() == 1).then(|| matches[0]),
            }
        })
        .collect();
    let counterexample = checks.iter().find(|c| c.extensions != 1).map(|c| c.map.clone());
    Ok(RigidityCertificate {
        subcomplex: x_name.to_string(),
        ambient: ambient_name.to_string(),
        mode,
        total_maps: checks.len(),
        automorphism_count: autos.len(),
        all_extend: counterexample.is_none(),
        maps: checks,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus_zero::{build_genus_zero_complex, catalog};

    #[test]
    fn small_groups() {
        let edgeless = FlagComplex::from_adjacency(["a", "b", "c"], Vec::<(&str, &str)>::new()).unwrap();
        let g = automorphism_group(&edgeless);
        assert_eq!(g.order, 6);
        assert_eq!(g.elements.unwrap().len(), 6);
        assert_eq!(automorphism_group(&catalog("petersen").unwrap()).order, 120);
        assert_eq!(automorphism_group(&catalog("k13").unwrap()).order, 6);
        let path = FlagComplex::from_adjacency(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        let g = automorphism_group(&path);
        assert_eq!(g.order, 2);
        assert_eq!(g.generators.len(), 1);
    }

    #[test]
    fn label_action_on_five_and_four() {
        let five = label_action(&build_genus_zero_complex(5).unwrap()).unwrap();
        assert_eq!(five.group_order, 120);
        assert!(five.faithful && five.surjective);
        // the Klein four-group fixes all three spheres of the 4-holed sphere
        let four = label_action(&build_genus_zero_complex(4).unwrap()).unwrap();
        assert_eq!(four.group_order, 6);
        assert_eq!(four.kernel_size, 4);
        assert!(four.surjective && !four.faithful);
    }

    #[test]
    fn permute_labels_rejects_non_permutations() {
        let gz = build_genus_zero_complex(5).unwrap();
        assert!(permute_labels(&gz, &[1, 1, 2, 3, 4]).is_err());
        assert!(permute_labels(&gz, &[1, 2, 3, 4]).is_err());
    }

    #[test]
    fn petersen_is_rigid_but_a_vertex_is_not() {
        let c = build_genus_zero_complex(5).unwrap().into_complex();
        let cert = verify_rigidity(&c, "m05", &c, "m05", RigidityMode::Plain).unwrap();
        assert_eq!(cert.total_maps, 120);
        assert!(cert.all_extend);
        let single = c.induced(&[0]);
        let cert = verify_rigidity(&single, "v", &c, "m05", RigidityMode::Plain).unwrap();
        assert_eq!(cert.total_maps, 10);
        assert!(!cert.all_extend);
        assert_eq!(cert.maps[0].extensions, 12);
    }

    #[test]
    fn non_induced_subcomplex_is_rejected() {
        let c = catalog("k3").unwrap();
        let path = FlagComplex::from_adjacency(["t0", "t1", "t2"], [("t0", "t1"), ("t1", "t2")]).unwrap();
        assert!(matches!(verify_rigidity(&path, "p", &c, "k3", RigidityMode::Plain), Err(Error::NotInduced(_))));
    }
}
