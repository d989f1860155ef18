use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genus_zero::ManifoldSignature;

/// Boundary labels of the genus-zero piece left after cutting a doubled
/// handlebody of signature `(n, s)` along `n` disjoint non-separating
/// spheres `Y1..Yn`: each `Yi` leaves two copies `Ai+`, `Ai-`, and the
/// original boundary components are `B1..Bs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutLabeling {
    pub signature: ManifoldSignature,
    pub labels: Vec<String>,
    /// Where each label comes from: `Yi` for a cut copy, itself otherwise.
    pub delta: BTreeMap<String, String>,
}

impl CutLabeling {
    pub fn new(n: usize, s: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("cutting needs n >= 1".into()));
        }
        let mut labels = Vec::new();
        let mut delta = BTreeMap::new();
        for i in 1..=n {
            for sign in ["+", "-"] {
                let l = format!("A{i}{sign}");
                delta.insert(l.clone(), format!("Y{i}"));
                labels.push(l);
            }
        }
        for j in 1..=s {
            let l = format!("B{j}");
            delta.insert(l.clone(), l.clone());
            labels.push(l);
        }
        Ok(CutLabeling { signature: ManifoldSignature::new(n, s), labels, delta })
    }

    /// The genus-zero piece: `2n + s` boundary components.
    pub fn cut_signature(&self) -> ManifoldSignature {
        ManifoldSignature::new(0, self.labels.len())
    }
}

/// A good sphere for a cut pair: `p` is grouped with `A-` and `q` with
/// `A+`, each pair of labels then bounding a peripheral pants.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GoodSphere {
    pub p: String,
    pub q: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodPairCensus {
    pub pair: usize,
    pub spare: Vec<String>,
    pub pairs: Vec<(GoodSphere, GoodSphere)>,
    pub count: usize,
}

/// All unordered pairs of good spheres for the cut pair `A{pair}` that use
/// disjoint labels.
pub fn good_pair_census(cut: &CutLabeling, pair: usize) -> Result<GoodPairCensus> {
    if pair == 0 || pair > cut.signature.n {
        return Err(Error::Precondition(format!("no cut pair A{pair}")));
    }
    let own = [format!("A{pair}+"), format!("A{pair}-")];
    let spare: Vec<String> = cut.labels.iter().filter(|l| !own.contains(l)).cloned().collect();
    let spheres: Vec<GoodSphere> =
        spare.iter().permutations(2).map(|v| GoodSphere { p: v[0].clone(), q: v[1].clone() }).collect();
    let pairs: Vec<(GoodSphere, GoodSphere)> = spheres
        .iter()
        .tuple_combinations()
        .filter(|(x, y)| x.p != y.p && x.p != y.q && x.q != y.p && x.q != y.q)
        .map(|(x, y)| (x.clone(), y.clone()))
        .collect();
    Ok(GoodPairCensus { pair, spare, count: pairs.len(), pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_and_delta() {
        let cut = CutLabeling::new(2, 1).unwrap();
        assert_eq!(cut.labels, vec!["A1+", "A1-", "A2+", "A2-", "B1"]);
        assert_eq!(cut.delta["A2-"], "Y2");
        assert_eq!(cut.cut_signature(), ManifoldSignature::new(0, 5));
        assert!(CutLabeling::new(0, 5).is_err());
    }

    #[test]
    fn threshold_examples() {
        let census = |n, s| good_pair_census(&CutLabeling::new(n, s).unwrap(), 1).unwrap().count;
        assert_eq!(census(1, 4), 12);
        assert_eq!(census(1, 3), 0);
        assert!(census(2, 2) > 0);
        assert!(good_pair_census(&CutLabeling::new(1, 4).unwrap(), 2).is_err());
    }

    #[test]
    fn count_formula() {
        for n in 1..=3 {
            for s in 0..=8 {
                let k = 2 * n + s - 2;
                let got = good_pair_census(&CutLabeling::new(n, s).unwrap(), n).unwrap().count;
                assert_eq!(got, k * k.saturating_sub(1) * k.saturating_sub(2) * k.saturating_sub(3) / 2);
            }
        }
    }
}
