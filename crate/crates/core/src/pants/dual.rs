use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::escape;
use crate::error::{Error, Result};
use crate::genus_zero::ManifoldSignature;

/// A half-edge position: slot `index` (0, 1 or 2) of pants vertex `pants`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub pants: usize,
    pub index: u8,
}

/// A sphere of the decomposition, joining two slots (possibly at one vertex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bond {
    pub ends: [Slot; 2],
    /// The sphere this bond came from, when known.
    pub label: Option<String>,
}

/// A boundary sphere, hanging from a single slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub slot: Slot,
    pub label: String,
}

/// Trivalent multigraph dual to a sphere system: a vertex per pair of
/// pants, a bond per sphere and a leg per boundary sphere. Loops and
/// parallel bonds are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMultigraph {
    pants: Vec<String>,
    bonds: Vec<Bond>,
    legs: Vec<Leg>,
}

impl DualMultigraph {
    /// Checks that every one of the three slots of every vertex is used by
    /// exactly one bond end or leg.
    pub fn new(pants: Vec<String>, bonds: Vec<Bond>, legs: Vec<Leg>) -> Result<Self> {
        let distinct: BTreeSet<&String> = pants.iter().collect();
        if distinct.len() != pants.len() {
            return Err(Error::MalformedDual("duplicate pants id".into()));
        }
        let mut used = vec![[false; 3]; pants.len()];
        let slots = bonds.iter().flat_map(|b| b.ends).chain(legs.iter().map(|l| l.slot));
        for s in slots {
            if s.pants >= pants.len() || s.index > 2 {
                return Err(Error::MalformedDual(format!("slot {}.{} does not exist", s.pants, s.index)));
            }
            let cell = &mut used[s.pants][s.index as usize];
            if *cell {
                return Err(Error::MalformedDual(format!("slot {}.{} is used twice", pants[s.pants], s.index)));
            }
            *cell = true;
        }
        if let Some(v) = used.iter().position(|u| !u.iter().all(|&x| x)) {
            return Err(Error::MalformedDual(format!("pants `{}` does not have three occupied slots", pants[v])));
        }
        Ok(DualMultigraph { pants, bonds, legs })
    }

    /// Builds a dual from vertex pairs and `(vertex, label)` legs, assigning
    /// slots in the order given. Vertices are named `v0, v1, ...`.
    pub fn from_edges(pants_count: usize, bonds: &[(usize, usize)], legs: &[(usize, &str)]) -> Result<Self> {
        let mut next = vec![0u8; pants_count];
        let mut take = |v: usize| -> Result<Slot> {
            if v >= pants_count {
                return Err(Error::MalformedDual(format!("vertex {v} out of range")));
            }
            let s = Slot { pants: v, index: next[v] };
            next[v] += 1;
            Ok(s)
        };
        let mut bond_list = Vec::new();
        for &(a, b) in bonds {
            bond_list.push(Bond { ends: [take(a)?, take(b)?], label: None });
        }
        let mut leg_list = Vec::new();
        for &(v, label) in legs {
            leg_list.push(Leg { slot: take(v)?, label: label.to_string() });
        }
        Self::new((0..pants_count).map(|i| format!("v{i}")).collect(), bond_list, leg_list)
    }

    pub fn pants(&self) -> &[String] {
        &self.pants
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn endpoints(&self, bond: usize) -> (usize, usize) {
        let [a, b] = self.bonds[bond].ends;
        (a.pants, b.pants)
    }

    pub fn is_loop(&self, bond: usize) -> bool {
        let (a, b) = self.endpoints(bond);
        a == b
    }

    /// Bond ends at `v`; a loop counts twice.
    pub fn bond_degree(&self, v: usize) -> usize {
        self.bonds.iter().flat_map(|b| b.ends).filter(|s| s.pants == v).count()
    }

    /// Component index of every vertex in the graph formed by the given bonds.
    pub(crate) fn components(&self, bonds: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.pants.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &b in bonds {
            let (u, v) = self.endpoints(b);
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
        let roots: Vec<usize> = (0..self.pants.len()).map(|v| find(&mut parent, v)).collect();
        let mut ids: Vec<usize> = roots.clone();
        ids.sort_unstable();
        ids.dedup();
        roots.iter().map(|r| ids.binary_search(r).expect("root present")).collect()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{}\" {{\n", escape(name));
        for p in &self.pants {
            out.push_str(&format!("  \"{}\";\n", escape(p)));
        }
        for (k, b) in self.bonds.iter().enumerate() {
            let label = b.label.clone().unwrap_or_else(|| format!("e{k}"));
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                escape(&self.pants[b.ends[0].pants]),
                escape(&self.pants[b.ends[1].pants]),
                escape(&label)
            ));
        }
        for (k, l) in self.legs.iter().enumerate() {
            out.push_str(&format!("  \"leg{k}\" [shape=point, label=\"\"];\n"));
            out.push_str(&format!(
                "  \"{}\" -- \"leg{k}\" [label=\"{}\"];\n",
                escape(&self.pants[l.slot.pants]),
                escape(&l.label)
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// JSON form of a dual multigraph. Slots are written `"<pantsId>.<index>"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualDocument {
    pub pants: Vec<String>,
    pub bonds: Vec<[String; 2]>,
    pub legs: Vec<LegDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bond_labels: Option<Vec<Option<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LegDocument {
    pub slot: String,
    pub label: String,
}

impl DualDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dual documents always serialize")
    }

    pub fn into_dual(self) -> Result<DualMultigraph> {
        let parse = |text: &str| -> Result<Slot> {
            let bad = || Error::MalformedDual(format!("bad slot `{text}`"));
            let (id, index) = text.rsplit_once('.').ok_or_else(bad)?;
            let pants = self.pants.iter().position(|p| p == id).ok_or_else(bad)?;
            let index: u8 = index.parse().map_err(|_| bad())?;
            Ok(Slot { pants, index })
        };
        let labels = self.bond_labels.clone().unwrap_or_default();
        if !labels.is_empty() && labels.len() != self.bonds.len() {
            return Err(Error::MalformedDual("bond_labels length differs from bonds".into()));
        }
        let bonds = self
            .bonds
            .iter()
            .enumerate()
            .map(|(k, [a, b])| Ok(Bond { ends: [parse(a)?, parse(b)?], label: labels.get(k).cloned().flatten() }))
            .collect::<Result<Vec<_>>>()?;
        let legs = self
            .legs
            .iter()
            .map(|l| Ok(Leg { slot: parse(&l.slot)?, label: l.label.clone() }))
            .collect::<Result<Vec<_>>>()?;
        DualMultigraph::new(self.pants.clone(), bonds, legs)
    }
}

impl From<&DualMultigraph> for DualDocument {
    fn from(d: &DualMultigraph) -> Self {
        let slot = |s: Slot| format!("{}.{}", d.pants[s.pants], s.index);
        let labelled = d.bonds.iter().any(|b| b.label.is_some());
        DualDocument {
            pants: d.pants.clone(),
            bonds: d.bonds.iter().map(|b| [slot(b.ends[0]), slot(b.ends[1])]).collect(),
            legs: d.legs.iter().map(|l| LegDocument { slot: slot(l.slot), label: l.label.clone() }).collect(),
            bond_labels: labelled.then(|| d.bonds.iter().map(|b| b.label.clone()).collect()),
        }
    }
}

/// The I-H move on a non-loop bond.
///
/// With `u`, `v` the endpoints of `bond`, the other two slots at each end
/// are taken in slot order as `u1, u2` and `v1, v2`. Choice 0 exchanges
/// whatever hangs from `u2` and `v1`; choice 1 exchanges `u2` and `v2`.
/// Each choice is its own inverse.
pub fn ih_flip(d: &DualMultigraph, bond: usize, pairing_choice: u8) -> Result<DualMultigraph> {
    if bond >= d.bonds.len() {
        return Err(Error::UnknownBond(bond));
    }
    if d.is_loop(bond) {
        return Err(Error::LoopBond(bond));
    }
    if pairing_choice > 1 {
        return Err(Error::InvalidPairingChoice(pairing_choice));
    }
    let [eu, ev] = d.bonds[bond].ends;
    let others = |e: Slot| -> Vec<Slot> {
        (0..3u8).filter(|&i| i != e.index).map(|index| Slot { pants: e.pants, index }).collect()
    };
    let (u_side, v_side) = (others(eu), others(ev));
    let (x, y) = (u_side[1], v_side[pairing_choice as usize]);
    let swap = |s: Slot| {
        if s == x {
            y
        } else if s == y {
            x
        } else {
            s
        }
    };
    let bonds =
        d.bonds.iter().map(|b| Bond { ends: [swap(b.ends[0]), swap(b.ends[1])], label: b.label.clone() }).collect();
    let legs = d.legs.iter().map(|l| Leg { slot: swap(l.slot), label: l.label.clone() }).collect();
    DualMultigraph::new(d.pants.clone(), bonds, legs)
}

/// Signatures of the complementary pieces that carry spheres, canonically
/// ordered (rank descending, then boundary count ascending).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct JoinDecomposition {
    pub factors: Vec<ManifoldSignature>,
}

impl JoinDecomposition {
    pub fn new(mut factors: Vec<ManifoldSignature>) -> Self {
        factors.retain(|f| !f.is_pants());
        factors.sort_by_key(|f| (std::cmp::Reverse(f.n), f.s));
        JoinDecomposition { factors }
    }

    /// Total number of spheres in a pants decomposition of all factors.
    pub fn sphere_count(&self) -> usize {
        self.factors.iter().map(|f| f.complexity() - 3).sum()
    }
}

impl fmt::Display for JoinDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Type of the link of the spheres outside `eta`: cutting along every bond
/// not in `eta` leaves one piece per component of the `eta`-subgraph, of
/// rank equal to its cycle rank and with one boundary sphere per leg and
/// per cut bond end.
pub fn classify_link(d: &DualMultigraph, eta: &[usize]) -> Result<JoinDecomposition> {
    if let Some(&b) = eta.iter().find(|&&b| b >= d.bonds.len()) {
        return Err(Error::UnknownBond(b));
    }
    let eta: BTreeSet<usize> = eta.iter().copied().collect();
    let kept: Vec<usize> = eta.iter().copied().collect();
    let comp = d.components(&kept);
    let count = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut vertices = vec![0usize; count];
    let mut edges = vec![0usize; count];
    let mut boundary = vec![0usize; count];
    for &c in &comp {
        vertices[c] += 1;
    }
    for (k, b) in d.bonds.iter().enumerate() {
        if eta.contains(&k) {
            edges[comp[b.ends[0].pants]] += 1;
        } else {
            for end in b.ends {
                boundary[comp[end.pants]] += 1;
            }
        }
    }
    for l in &d.legs {
        boundary[comp[l.slot.pants]] += 1;
    }
    let factors = (0..count).map(|c| ManifoldSignature::new(edges[c] + 1 - vertices[c], boundary[c])).collect();
    Ok(JoinDecomposition::new(factors))
}

/// `(first Betti number, number of legs)` of a connected dual.
pub fn signature_of_dual(d: &DualMultigraph) -> Result<ManifoldSignature> {
    let all: Vec<usize> = (0..d.bonds.len()).collect();
    let comp = d.components(&all);
    if comp.iter().any(|&c| c != 0) {
        return Err(Error::DisconnectedDual);
    }
    Ok(ManifoldSignature::new(d.bonds.len() + 1 - d.pants.len(), d.legs.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: usize, s: usize) -> ManifoldSignature {
        ManifoldSignature::new(n, s)
    }

    fn leg_pairs(d: &DualMultigraph) -> BTreeSet<Vec<String>> {
        (0..d.pants().len())
            .map(|v| {
                let mut l: Vec<String> =
                    d.legs().iter().filter(|l| l.slot.pants == v).map(|l| l.label.clone()).collect();
                l.sort();
                l
            })
            .collect()
    }

    #[test]
    fn malformed_duals_are_rejected() {
        assert!(DualMultigraph::from_edges(2, &[(0, 1)], &[(0, "1"), (0, "2"), (1, "3")]).is_err());
        assert!(DualMultigraph::from_edges(1, &[(0, 0), (0, 0)], &[]).is_err());
        let ok = DualMultigraph::from_edges(1, &[(0, 0)], &[(0, "1")]).unwrap();
        assert!(ok.is_loop(0));
    }

    #[test]
    fn path_flip_gives_the_other_pairings() {
        let d = DualMultigraph::from_edges(2, &[(0, 1)], &[(0, "1"), (0, "2"), (1, "3"), (1, "4")]).unwrap();
        let a = ih_flip(&d, 0, 0).unwrap();
        let b = ih_flip(&d, 0, 1).unwrap();
        let pairs = |ls: &[&str]| ls.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(leg_pairs(&a), BTreeSet::from([pairs(&["1", "3"]), pairs(&["2", "4"])]));
        assert_eq!(leg_pairs(&b), BTreeSet::from([pairs(&["1", "4"]), pairs(&["2", "3"])]));
        assert_eq!(ih_flip(&a, 0, 0).unwrap(), d);
    }

    #[test]
    fn bigon_flip_can_produce_a_loop() {
        let d = DualMultigraph::from_edges(2, &[(0, 1), (0, 1)], &[(0, "1"), (1, "2")]).unwrap();
        assert_eq!(signature_of_dual(&d).unwrap(), sig(1, 2));
        let f = ih_flip(&d, 0, 0).unwrap();
        assert!(f.is_loop(1));
        assert!(!f.is_loop(0));
        assert_eq!(signature_of_dual(&f).unwrap(), sig(1, 2));
        let g = ih_flip(&d, 0, 1).unwrap();
        assert!(!g.is_loop(1));
    }

    #[test]
    fn flip_errors() {
        let d = DualMultigraph::from_edges(1, &[(0, 0)], &[(0, "1")]).unwrap();
        assert_eq!(ih_flip(&d, 0, 0).unwrap_err(), Error::LoopBond(0));
        assert_eq!(ih_flip(&d, 3, 0).unwrap_err(), Error::UnknownBond(3));
        let p = DualMultigraph::from_edges(2, &[(0, 1)], &[(0, "1"), (0, "2"), (1, "3"), (1, "4")]).unwrap();
        assert_eq!(ih_flip(&p, 0, 2).unwrap_err(), Error::InvalidPairingChoice(2));
    }

    #[test]
    fn classification_rejects_foreign_bonds() {
        let d = DualMultigraph::from_edges(1, &[(0, 0)], &[(0, "1")]).unwrap();
        assert_eq!(classify_link(&d, &[1]).unwrap_err(), Error::UnknownBond(1));
        assert_eq!(classify_link(&d, &[]).unwrap(), JoinDecomposition::new(vec![sig(0, 3)]));
    }

    #[test]
    fn disconnected_duals_have_no_signature() {
        let d =
            DualMultigraph::from_edges(2, &[], &[(0, "1"), (0, "2"), (0, "3"), (1, "4"), (1, "5"), (1, "6")]).unwrap();
        assert_eq!(signature_of_dual(&d).unwrap_err(), Error::DisconnectedDual);
    }

    #[test]
    fn document_roundtrip() {
        let d = DualMultigraph::from_edges(2, &[(0, 1), (0, 1)], &[(0, "1"), (1, "2")]).unwrap();
        let text = DualDocument::from(&d).to_json();
        assert!(text.contains("\"v0.0\""));
        assert_eq!(DualDocument::from_json(&text).unwrap().into_dual().unwrap(), d);
        let dot = d.to_dot("bigon");
        assert_eq!(dot.matches("\"v0\" -- \"v1\"").count(), 2);
    }
}
