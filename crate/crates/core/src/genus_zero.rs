//! Spheres in the `s`-holed 3-sphere as boundary partitions, the sphere
//! complexes built from them, the caterpillar model of the twice-punctured
//! genus-one complex, and a small catalog of reference complexes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::FlagComplex;
use crate::error::{Error, Result};

/// Largest boundary count for which complexes are built; the vertex count
/// grows like `2^(s-1)`.
pub const MAX_BOUNDARY: usize = 12;

/// Signature `(n, s)` of a doubled handlebody: rank `n`, `s` boundary spheres.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ManifoldSignature {
    pub n: usize,
    pub s: usize,
}

impl ManifoldSignature {
    pub const fn new(n: usize, s: usize) -> Self {
        ManifoldSignature { n, s }
    }

    /// `3n + s`.
    pub fn complexity(&self) -> usize {
        3 * self.n + self.s
    }

    /// Number of spheres in a pants decomposition, when essential spheres
    /// exist in a nondegenerate way (`3n + s >= 4`).
    pub fn pants_size(&self) -> Option<usize> {
        (self.complexity() >= 4).then(|| self.complexity() - 3)
    }

    /// A pair of pants: no essential spheres.
    pub fn is_pants(&self) -> bool {
        self.n == 0 && self.s == 3
    }
}

impl fmt::Display for ManifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.s)
    }
}

/// A sphere in the `s`-holed 3-sphere, recorded as the partition of the
/// boundary labels `1..=s` it induces. The stored block is the side
/// containing label 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpherePartition {
    s: usize,
    block: u64,
}

impl SpherePartition {
    /// Accepts either side of the partition.
    pub fn new(s: usize, side: impl IntoIterator<Item = usize>) -> Result<Self> {
        if s > 63 {
            return Err(Error::InvalidBoundaryCount(s));
        }
        let mut mask = 0u64;
        for label in side {
            if label == 0 || label > s {
                return Err(Error::InvalidPartition(format!("label {label} outside 1..={s}")));
            }
            mask |= 1 << (label - 1);
        }
        Self::from_mask(s, mask)
    }

    fn from_mask(s: usize, mask: u64) -> Result<Self> {
        let full = full_mask(s);
        let block = if mask & 1 == 1 { mask } else { full & !mask };
        let size = block.count_ones() as usize;
        if size < 2 || size + 2 > s {
            return Err(Error::InvalidPartition(format!(
                "both sides need at least two labels (s = {s}, side {:?})",
                labels_of(mask)
            )));
        }
        Ok(SpherePartition { s, block })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// The side containing label 1, ascending.
    pub fn block(&self) -> Vec<usize> {
        labels_of(self.block)
    }

    pub fn complement(&self) -> Vec<usize> {
        labels_of(self.complement_mask())
    }

    /// The side not containing label 1.
    pub(crate) fn complement_mask(&self) -> u64 {
        full_mask(self.s) & !self.block
    }

    /// Vertex id, e.g. `p:1,2|s=6`.
    pub fn id(&self) -> String {
        let labels: Vec<String> = self.block().iter().map(usize::to_string).collect();
        format!("p:{}|s={}", labels.join(","), self.s)
    }

    pub fn parse_id(id: &str) -> Result<Self> {
        let bad = || Error::InvalidPartition(format!("malformed partition id `{id}`"));
        let rest = id.strip_prefix("p:").ok_or_else(bad)?;
        let (labels, s) = rest.split_once("|s=").ok_or_else(bad)?;
        let s: usize = s.parse().map_err(|_| bad())?;
        let labels = labels.split(',').map(|l| l.parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
        let p = Self::new(s, labels.iter().copied())?;
        if p.id() != id {
            return Err(bad());
        }
        Ok(p)
    }
}

impl fmt::Display for SpherePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

fn full_mask(s: usize) -> u64 {
    if s >= 64 {
        u64::MAX
    } else {
        (1u64 << s) - 1
    }
}

fn labels_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Two distinct spheres can be made disjoint iff their partitions are
/// nested: some side of one lies inside some side of the other.
pub fn spheres_disjoint(p: &SpherePartition, q: &SpherePartition) -> Result<bool> {
    if p.s != q.s {
        return Err(Error::MismatchedBoundary(p.s, q.s));
    }
    if p == q {
        return Err(Error::SameSphere);
    }
    Ok(nested(p, q))
}

fn nested(p: &SpherePartition, q: &SpherePartition) -> bool {
    let (a, b) = (p.block, q.block);
    // both blocks contain label 1, so the remaining cases reduce to these three
    a & b == a || a & b == b || a | b == full_mask(p.s)
}

/// The sphere complex of the `s`-holed 3-sphere together with the partition
/// behind each vertex.
#[derive(Clone, Debug)]
pub struct GenusZeroComplex {
    s: usize,
    complex: FlagComplex,
    partitions: Vec<SpherePartition>,
}

impl GenusZeroComplex {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn complex(&self) -> &FlagComplex {
        &self.complex
    }

    pub fn into_complex(self) -> FlagComplex {
        self.complex
    }

    pub fn partition(&self, v: usize) -> &SpherePartition {
        &self.partitions[v]
    }

    pub fn partitions(&self) -> &[SpherePartition] {
        &self.partitions
    }

    pub fn index_of(&self, p: &SpherePartition) -> Option<usize> {
        self.complex.index_of(&p.id())
    }

    /// Index of the sphere with the given side (either side accepted).
    pub fn vertex(&self, side: &[usize]) -> Result<usize> {
        let p = SpherePartition::new(self.s, side.iter().copied())?;
        self.index_of(&p).ok_or_else(|| Error::UnknownVertex(p.id()))
    }

    pub fn vertices(&self, sides: &[&[usize]]) -> Result<Vec<usize>> {
        sides.iter().map(|s| self.vertex(s)).collect()
    }
}

/// Builds the sphere complex of the `s`-holed 3-sphere. For `s = 3` the
/// complex is empty.
pub fn build_genus_zero_complex(s: usize) -> Result<GenusZeroComplex> {
    if !(3..=MAX_BOUNDARY).contains(&s) {
        return Err(Error::InvalidBoundaryCount(s));
    }
    let mut parts: Vec<SpherePartition> = (0..1u64 << (s - 1))
        .map(|rest| rest << 1 | 1)
        .filter_map(|mask| SpherePartition::from_mask(s, mask).ok())
        .collect();
    parts.sort_by_key(SpherePartition::id);
    parts.dedup();
    let ids: Vec<String> = parts.iter().map(SpherePartition::id).collect();
    let mut pairs = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        for (j, q) in parts.iter().enumerate().skip(i + 1) {
            if nested(p, q) {
                pairs.push((ids[i].as_str(), ids[j].as_str()));
            }
        }
    }
    let complex = FlagComplex::from_adjacency(ids.iter().cloned(), pairs)?;
    Ok(GenusZeroComplex { s, complex, partitions: parts })
}

pub const NONSEPARATING: &str = "nonseparating";
pub const SEPARATING: &str = "separating";
pub const BOUNDARY_EFFECT: &str = "boundary-effect";

/// The window `z:-m ..= z:m` of the caterpillar: a spine path of
/// non-separating spheres, each carrying one pendant separating sphere
/// `w:k`. The two end spine vertices are tagged `boundary-effect` since
/// their degree is truncated.
pub fn build_caterpillar_window(m: usize) -> FlagComplex {
    let m = m as i64;
    let z = |k: i64| format!("z:{k}");
    let w = |k: i64| format!("w:{k}");
    let mut ids = Vec::new();
    let mut pairs = Vec::new();
    for k in -m..=m {
        ids.push(z(k));
        ids.push(w(k));
        pairs.push((z(k), w(k)));
        if k < m {
            pairs.push((z(k), z(k + 1)));
        }
    }
    let mut c = FlagComplex::from_adjacency(ids, pairs).expect("caterpillar ids are distinct");
    for k in -m..=m {
        c.add_tag(&z(k), NONSEPARATING).expect("vertex exists");
        c.add_tag(&w(k), SEPARATING).expect("vertex exists");
    }
    c.add_tag(&z(-m), BOUNDARY_EFFECT).expect("vertex exists");
    c.add_tag(&z(m), BOUNDARY_EFFECT).expect("vertex exists");
    c
}

/// Parses a caterpillar id into `(is_spine, position)`.
pub fn caterpillar_position(id: &str) -> Option<(bool, i64)> {
    let (kind, k) = id.split_once(':')?;
    let k = k.parse().ok()?;
    match kind {
        "z" => Some((true, k)),
        "w" => Some((false, k)),
        _ => None,
    }
}

pub const CATALOG_NAMES: [&str; 6] = ["petersen", "k33", "k3", "k13", "m11", "m04"];

/// Reference complexes.
///
/// * `petersen`: outer cycle `o0..o4`, inner pentagram `i0..i4`, spokes `ok -- ik`.
/// * `k33`: join of `{a0,a1,a2}` and `{b0,b1,b2}`.
/// * `k3`: triangle on `t0,t1,t2` (a filled 2-simplex as a flag complex).
/// * `k13`: star with center `c` and leaves `l0,l1,l2`.
/// * `m11`: the single vertex `m11:0`.
/// * `m04`: the genus-zero complex for `s = 4`.
pub fn catalog(name: &str) -> Result<FlagComplex> {
    let edgeless = |ids: &[&str]| {
        FlagComplex::from_adjacency(ids.iter().copied(), Vec::<(&str, &str)>::new()).expect("distinct ids")
    };
    Ok(match name {
        "petersen" => {
            let mut ids = Vec::new();
            let mut pairs = Vec::new();
            for k in 0..5 {
                ids.push(format!("o{k}"));
                ids.push(format!("i{k}"));
                pairs.push((format!("o{k}"), format!("o{}", (k + 1) % 5)));
                pairs.push((format!("o{k}"), format!("i{k}")));
                pairs.push((format!("i{k}"), format!("i{}", (k + 2) % 5)));
            }
            FlagComplex::from_adjacency(ids, pairs)?
        }
        "k33" => edgeless(&["a0", "a1", "a2"]).join(&edgeless(&["b0", "b1", "b2"]))?,
        "k3" => FlagComplex::from_adjacency(["t0", "t1", "t2"], [("t0", "t1"), ("t1", "t2"), ("t0", "t2")])?,
        "k13" => FlagComplex::from_adjacency(["c", "l0", "l1", "l2"], [("c", "l0"), ("c", "l1"), ("c", "l2")])?,
        "m11" => edgeless(&["m11:0"]),
        "m04" => build_genus_zero_complex(4)?.into_complex(),
        other => return Err(Error::UnknownCatalog(other.to_string())),
    })
}
