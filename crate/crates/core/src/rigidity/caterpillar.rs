use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::search::enumerate_locally_injective_maps;
use crate::complex::{FlagComplex, VertexMap};
use crate::error::{Error, Result};
use crate::genus_zero::{caterpillar_position, BOUNDARY_EFFECT, SEPARATING};

use super::inclusion;

/// A locally injective map of a caterpillar subcomplex into the window
/// that changes the type of one vertex. Automorphisms of the caterpillar
/// preserve valence (pendant separating spheres have valence one, spine
/// spheres valence three), so no automorphism restricts to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaterpillarWitness {
    #[serde(skip)]
    pub map: VertexMap,
    pub named: BTreeMap<String, String>,
    /// Vertex of the subcomplex whose type changes.
    pub vertex: String,
    pub reason: String,
}

fn separating(window: &FlagComplex, v: usize) -> bool {
    window.has_tag(v, SEPARATING)
}

fn kind(sep: bool) -> &'static str {
    if sep {
        "separating"
    } else {
        "non-separating"
    }
}

fn position(window: &FlagComplex, v: usize) -> i64 {
    caterpillar_position(window.id(v)).map_or(0, |(_, k)| k)
}

fn type_change(incl: &[usize], window: &FlagComplex, m: &VertexMap) -> Option<usize> {
    (0..incl.len()).find(|&v| separating(window, incl[v]) != separating(window, m.image(v)))
}

fn validate(x: &FlagComplex, window: &FlagComplex) -> Result<Vec<usize>> {
    if x.len() < 2 {
        return Err(Error::Precondition("the subcomplex needs at least two vertices".into()));
    }
    if !x.is_connected() {
        return Err(Error::Precondition("the subcomplex must be connected".into()));
    }
    let incl = inclusion(x, window)?;
    if let Some(&v) = incl.iter().find(|&&v| window.has_tag(v, BOUNDARY_EFFECT)) {
        return Err(Error::Precondition(format!("`{}` is a boundary-effect vertex", window.id(v))));
    }
    Ok(incl)
}

/// Builds a type-changing locally injective map `x -> window`.
///
/// A leaf of `x` hanging off a spine vertex `v` is redirected to a free
/// neighbor of `v` of the other type (the higher position first); failing
/// that, it trades places with an occupied such neighbor that is also a
/// leaf. A search over all locally injective maps is the last resort.
pub fn caterpillar_witness(x: &FlagComplex, window: &FlagComplex) -> Result<CaterpillarWitness> {
    let incl = validate(x, window)?;
    let accept = |m: VertexMap| -> Option<CaterpillarWitness> {
        if !(m.is_simplicial(x, window) && m.is_locally_injective(x, window)) {
            return None;
        }
        let v = type_change(&incl, window, &m)?;
        let (a, b) = (incl[v], m.image(v));
        Some(CaterpillarWitness {
            named: m.to_named(x, window),
            vertex: x.id(v).to_string(),
            reason: format!(
                "`{}` is {} but its image `{}` is {}; caterpillar automorphisms preserve valence classes",
                window.id(a),
                kind(separating(window, a)),
                window.id(b),
                kind(separating(window, b)),
            ),
            map: m,
        })
    };
    let mut leaves: Vec<usize> = (0..x.len()).filter(|&l| x.degree(l) == 1).collect();
    leaves.sort_by_key(|&l| (!separating(window, incl[l]), position(window, incl[l])));
    for &l in &leaves {
        let v = x.neighbors(l)[0];
        let want = !separating(window, incl[l]);
        let mut targets: Vec<usize> =
            window.neighbors(incl[v]).iter().copied().filter(|&t| separating(window, t) == want).collect();
        targets.sort_by_key(|&t| std::cmp::Reverse(position(window, t)));
        for &t in &targets {
            let mut a = incl.clone();
            match incl.iter().position(|&u| u == t) {
                None => a[l] = t,
                Some(u) if x.degree(u) == 1 => a.swap(l, u),
                Some(_) => continue,
            }
            if let Some(w) = accept(VertexMap::new(a)) {
                return Ok(w);
            }
        }
    }
    enumerate_locally_injective_maps(x, window, None)
        .into_iter()
        .find_map(accept)
        .ok_or_else(|| Error::Precondition("no type-changing locally injective map".into()))
}

/// Re-checks a witness: locally injective, simplicial, and some vertex
/// lands on a vertex of the other type.
pub fn check_caterpillar_witness(x: &FlagComplex, window: &FlagComplex, w: &CaterpillarWitness) -> bool {
    let Ok(incl) = inclusion(x, window) else { return false };
    let m = &w.map;
    m.len() == x.len()
        && m.assignment().iter().all(|&t| t < window.len())
        && m.is_simplicial(x, window)
        && m.is_locally_injective(x, window)
        && type_change(&incl, window, m).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus_zero::build_caterpillar_window;

    fn named(w: &CaterpillarWitness) -> Vec<(&str, &str)> {
        w.named.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect()
    }

    #[test]
    fn edge_witness() {
        let window = build_caterpillar_window(3);
        let x = window.induced_by_ids(&["z:0", "w:0"]).unwrap();
        let w = caterpillar_witness(&x, &window).unwrap();
        assert_eq!(named(&w), vec![("w:0", "z:1"), ("z:0", "z:0")]);
        assert!(check_caterpillar_witness(&x, &window, &w));
    }

    #[test]
    fn frontier_leaf_moves_along_the_spine() {
        let window = build_caterpillar_window(3);
        let x = window.induced_by_ids(&["z:0", "z:1", "w:1"]).unwrap();
        let w = caterpillar_witness(&x, &window).unwrap();
        assert_eq!(named(&w), vec![("w:1", "z:2"), ("z:0", "z:0"), ("z:1", "z:1")]);
        assert!(check_caterpillar_witness(&x, &window, &w));
    }

    #[test]
    fn whole_window_inside_a_larger_one() {
        let small = build_caterpillar_window(2);
        let big = build_caterpillar_window(3);
        let x = big.induced_by_ids(small.ids()).unwrap();
        let w = caterpillar_witness(&x, &big).unwrap();
        assert!(check_caterpillar_witness(&x, &big, &w));
    }

    #[test]
    fn preconditions() {
        let window = build_caterpillar_window(2);
        let one = window.induced_by_ids(&["z:0"]).unwrap();
        assert!(caterpillar_witness(&one, &window).is_err());
        let apart = window.induced_by_ids(&["w:0", "w:1"]).unwrap();
        assert!(caterpillar_witness(&apart, &window).is_err());
        let edge = window.induced_by_ids(&["z:2", "w:2"]).unwrap();
        assert!(caterpillar_witness(&edge, &window).is_err());
    }
}
