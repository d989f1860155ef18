use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::complex::FlagComplex;
use crate::error::{Error, Result};
use crate::genus_zero::{GenusZeroComplex, ManifoldSignature};
use crate::pants::{classify_link, laminar_regions, region_of, DualMultigraph, PantsDecomposition, SphereSystem};

/// Vertices meeting `a` and missing every other member of `p`.
pub fn find_split_spheres(ambient: &FlagComplex, p: &PantsDecomposition, a: usize) -> Result<Vec<usize>> {
    if !p.contains(a) {
        return Err(Error::NotAMember(ambient.id(a).to_string()));
    }
    let rest = p.system().without(a);
    Ok((0..ambient.len())
        .filter(|&b| !p.contains(b) && !ambient.adjacent(a, b) && rest.iter().all(|&c| ambient.adjacent(b, c)))
        .collect())
}

/// Number of split spheres for the sphere of `bond`, read off the dual
/// graph: the complement of the other spheres has a component carrying
/// `bond`, and the split spheres are its spheres other than `bond` itself.
pub fn dual_split_sphere_count(d: &DualMultigraph, bond: usize) -> Result<usize> {
    let join = classify_link(d, &[bond])?;
    match join.factors.as_slice() {
        [f] if *f == ManifoldSignature::new(1, 1) => Ok(0),
        [f] if *f == ManifoldSignature::new(0, 4) => Ok(2),
        _ => Err(Error::MalformedDual(format!("unexpected component {join} around bond {bond}"))),
    }
}

/// Pants decompositions of `ambient` lying in `x` and containing `a`.
fn pants_in(ambient: &FlagComplex, x: &[usize], a: usize) -> Vec<PantsDecomposition> {
    let inside: BTreeSet<usize> = x.iter().copied().collect();
    if !inside.contains(&a) {
        return Vec::new();
    }
    ambient
        .maximal_cliques()
        .into_iter()
        .filter(|s| s.contains(a) && s.vertices().iter().all(|v| inside.contains(v)))
        .map(|s| PantsDecomposition::new(ambient, s.vertices().iter().copied()).expect("maximal clique"))
        .collect()
}

/// Unordered pairs `b1 < b2` of disjoint spheres, each a split sphere for
/// `a` relative to some pants decomposition inside `x`.
pub fn find_split_pairs(ambient: &FlagComplex, x: &[usize], a: usize) -> Result<Vec<(usize, usize)>> {
    let mut splits = BTreeSet::new();
    for p in pants_in(ambient, x, a) {
        splits.extend(find_split_spheres(ambient, &p, a)?);
    }
    Ok(splits.iter().copied().tuple_combinations().filter(|&(b1, b2)| ambient.adjacent(b1, b2)).collect())
}

/// Two pants decompositions inside `x` related by the flip `a -> a2`, if any.
pub fn detect_x_detectable(
    ambient: &FlagComplex,
    x: &[usize],
    a: usize,
    a2: usize,
) -> Result<Option<(PantsDecomposition, PantsDecomposition)>> {
    if a == a2 {
        return Err(Error::SameSphere);
    }
    let inside: BTreeSet<usize> = x.iter().copied().collect();
    if !inside.contains(&a2) {
        return Ok(None);
    }
    for p in pants_in(ambient, x, a) {
        if p.contains(a2) {
            continue;
        }
        let mut q = p.system().without(a);
        if !q.iter().all(|&c| ambient.adjacent(c, a2)) {
            continue;
        }
        q.push(a2);
        if let Ok(q) = PantsDecomposition::new(ambient, q) {
            assert!(!ambient.adjacent(a, a2), "flip partners must intersect");
            return Ok(Some((p, q)));
        }
    }
    Ok(None)
}

/// The subcomplex induced on `sigma` and the links of all its
/// codimension-one faces.
pub fn build_x_sigma(ambient: &FlagComplex, sigma: &[usize]) -> Result<(Vec<usize>, FlagComplex)> {
    let p = PantsDecomposition::new(ambient, sigma.iter().copied())?;
    let mut vertices: BTreeSet<usize> = p.members().iter().copied().collect();
    for &a in p.members() {
        vertices.extend(ambient.link_vertices(&p.system().without(a)));
    }
    let vertices: Vec<usize> = vertices.into_iter().collect();
    let sub = ambient.induced(&vertices);
    Ok((vertices, sub))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkClass {
    pub members: Vec<usize>,
    /// Complementary region of the system holding the class (0 is the root).
    pub region: usize,
    pub signature: ManifoldSignature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkClasses {
    pub link: Vec<usize>,
    pub classes: Vec<LinkClass>,
    pub non_pants_regions: Vec<usize>,
    /// Classes and non-pants regions correspond one to one.
    pub bijective: bool,
}

/// Classes of `a ~ b` (some link vertex meets both) on the link of `sigma`.
///
/// The relation is reflexive and symmetric by construction; transitivity
/// is checked and its failure is an error.
pub fn link_equivalence_classes(gz: &GenusZeroComplex, sigma: &SphereSystem) -> Result<LinkClasses> {
    let c = gz.complex();
    let link = c.link_vertices(sigma.members());
    let n = link.len();
    let related: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| link.iter().any(|&w| !c.adjacent(w, link[i]) && !c.adjacent(w, link[j]))).collect())
        .collect();
    for (i, j, k) in (0..n).tuple_combinations::<(_, _, _)>().flat_map(|(i, j, k)| [(i, j, k), (j, i, k), (i, k, j)]) {
        if related[i][j] && related[j][k] && !related[i][k] {
            return Err(Error::NotTransitive(format!("{} ~ {} ~ {}", c.id(link[i]), c.id(link[j]), c.id(link[k]))));
        }
    }
    let spheres: Vec<_> = sigma.members().iter().map(|&v| *gz.partition(v)).collect();
    let regions = laminar_regions(gz.s(), &spheres);
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    let mut uniform = true;
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&j| related[i][j]).collect();
        let found: BTreeSet<Option<usize>> =
            members.iter().map(|&j| region_of(&regions, gz.partition(link[j]))).collect();
        uniform &= found.len() == 1;
        let region = found.into_iter().next().flatten().expect("link spheres lie in a region");
        for &j in &members {
            seen[j] = true;
        }
        classes.push(LinkClass {
            members: members.iter().map(|&j| link[j]).collect(),
            region,
            signature: regions[region].signature(),
        });
    }
    let non_pants_regions: Vec<usize> = (0..regions.len()).filter(|&r| !regions[r].is_pants()).collect();
    let class_regions: Vec<usize> = classes.iter().map(|k| k.region).sorted().collect();
    let bijective = uniform && class_regions == non_pants_regions;
    Ok(LinkClasses { link, classes, non_pants_regions, bijective })
}
