use crate::genus_zero::{ManifoldSignature, SpherePartition};

/// A complementary component of a genus-zero sphere system.
///
/// Each sphere cuts off the side of its partition avoiding label 1; these
/// sides form a laminar family. A region is what remains of such a side
/// (or of the whole label set, for the root) after removing the sides
/// nested directly inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaminarRegion {
    /// Index of the sphere bounding the region from the root side; `None` for the root.
    pub sphere: Option<usize>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Boundary labels lying directly in this region.
    pub labels: Vec<usize>,
    mask: u64,
}

impl LaminarRegion {
    /// Number of boundary spheres of the region (labels, child spheres and
    /// the parent sphere).
    pub fn boundary_count(&self) -> usize {
        self.labels.len() + self.children.len() + usize::from(self.parent.is_some())
    }

    pub fn signature(&self) -> ManifoldSignature {
        ManifoldSignature::new(0, self.boundary_count())
    }

    pub fn is_pants(&self) -> bool {
        self.boundary_count() == 3
    }
}

/// Regions of a pairwise-disjoint family of spheres: the root first, then
/// one region per sphere in input order.
pub fn laminar_regions(s: usize, spheres: &[SpherePartition]) -> Vec<LaminarRegion> {
    let full = if s >= 64 { u64::MAX } else { (1u64 << s) - 1 };
    let sides: Vec<u64> = spheres.iter().map(SpherePartition::complement_mask).collect();
    let mut regions: Vec<LaminarRegion> = std::iter::once(full)
        .chain(sides.iter().copied())
        .enumerate()
        .map(|(r, mask)| LaminarRegion {
            sphere: r.checked_sub(1),
            parent: None,
            children: Vec::new(),
            labels: Vec::new(),
            mask,
        })
        .collect();
    for i in 0..sides.len() {
        let parent = (0..sides.len())
            .filter(|&j| j != i && sides[j] & sides[i] == sides[i] && sides[j] != sides[i])
            .min_by_key(|&j| (sides[j].count_ones(), j))
            .map_or(0, |j| j + 1);
        regions[i + 1].parent = Some(parent);
        regions[parent].children.push(i + 1);
    }
    for r in 0..regions.len() {
        let covered = regions[r].children.iter().fold(0u64, |acc, &c| acc | regions[c].mask);
        let direct = regions[r].mask & !covered;
        regions[r].labels = (0..64).filter(|b| direct >> b & 1 == 1).map(|b| b + 1).collect();
    }
    regions
}

/// The region containing a sphere compatible with (and not in) the family:
/// the smallest region whose side strictly contains the sphere's side.
pub fn region_of(regions: &[LaminarRegion], sphere: &SpherePartition) -> Option<usize> {
    let side = sphere.complement_mask();
    regions
        .iter()
        .enumerate()
        .filter(|(_, r)| r.mask & side == side && r.mask != side)
        .min_by_key(|(r, reg)| (reg.mask.count_ones(), *r))
        .map(|(r, _)| r)
}
