use std::collections::HashSet;
use std::sync::Arc;

use super::FiniteLattice;
use crate::algebra::LatticeOps;
use crate::error::{Error, Result};

/// A total map between two explicit lattices.
#[derive(Clone, Debug)]
pub struct LatticeMap {
    pub source: Arc<FiniteLattice>,
    pub target: Arc<FiniteLattice>,
    pub images: Vec<usize>,
}

impl LatticeMap {
    pub fn new(
        source: Arc<FiniteLattice>,
        target: Arc<FiniteLattice>,
        images: Vec<usize>,
    ) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::BadParams(format!(
                "{} images for a source of size {}",
                images.len(),
                source.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= target.len()) {
            return Err(Error::OutOfRange(bad, target.len()));
        }
        Ok(LatticeMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(l: Arc<FiniteLattice>) -> Self {
        let images = l.elements().collect();
        LatticeMap {
            source: l.clone(),
            target: l,
            images,
        }
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.images
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &y in &self.images {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn preserves_meets(&self) -> bool {
        let (s, t, f) = (&self.source, &self.target, &self.images);
        s.elements()
            .all(|x| (x..s.len()).all(|y| f[s.meet(x, y)] == t.meet(f[x], f[y])))
    }

    pub fn preserves_joins(&self) -> bool {
        let (s, t, f) = (&self.source, &self.target, &self.images);
        s.elements()
            .all(|x| (x..s.len()).all(|y| f[s.join(x, y)] == t.join(f[x], f[y])))
    }

    pub fn is_lattice_hom(&self) -> bool {
        self.preserves_meets() && self.preserves_joins()
    }

    /// Injective and preserving both operations.
    pub fn verify_embedding(&self) -> bool {
        self.is_injective() && self.is_lattice_hom()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.len() == self.target.len() && self.verify_embedding()
    }

    /// Bijective and order-reversing in both directions.
    ///
    /// A bijection sending every cover `x ⋖ y` to a cover `f(y) ⋖ f(x)`, with
    /// equally many covers on both sides, reverses the order generated by them.
    pub fn is_dual_isomorphism(&self) -> bool {
        let (s, t, f) = (&self.source, &self.target, &self.images);
        let covers = s.cover_pairs();
        s.len() == t.len()
            && self.is_injective()
            && covers.len() == t.cover_pairs().len()
            && covers
                .iter()
                .all(|&(x, y)| t.lower_covers(f[x]).contains(&f[y]))
    }

    /// `then ∘ self`.
    pub fn compose(&self, then: &LatticeMap) -> Result<LatticeMap> {
        if !Arc::ptr_eq(&self.target, &then.source) && self.target.len() != then.source.len() {
            return Err(Error::BadParams("maps are not composable".into()));
        }
        let images = self.images.iter().map(|&y| then.images[y]).collect();
        LatticeMap::new(self.source.clone(), then.target.clone(), images)
    }
}

/// The sublattice generated by `seeds`, in discovery order (seeds first).
pub fn sublattice_closure<L: LatticeOps>(l: &L, seeds: &[L::Elem]) -> Vec<L::Elem> {
    let mut seen: HashSet<L::Elem> = HashSet::new();
    let mut elems: Vec<L::Elem> = Vec::new();
    for s in seeds {
        if seen.insert(s.clone()) {
            elems.push(s.clone());
        }
    }
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i].clone();
        for j in 0..=i {
            let y = elems[j].clone();
            for z in [l.meet(&x, &y), l.join(&x, &y)] {
                if seen.insert(z.clone()) {
                    elems.push(z);
                }
            }
        }
        i += 1;
    }
    elems
}

type Signature = (usize, usize, usize, usize, usize, usize);

fn signatures(l: &FiniteLattice) -> Vec<Signature> {
    let height = l.heights();
    let mut depth = vec![0usize; l.len()];
    for x in l.linear_extension().into_iter().rev() {
        for &y in l.upper_covers(x) {
            depth[x] = depth[x].max(depth[y] + 1);
        }
    }
    l.elements()
        .map(|x| {
            let down = l.elements().filter(|&y| l.leq(y, x)).count();
            let up = l.elements().filter(|&y| l.leq(x, y)).count();
            (
                height[x],
                depth[x],
                l.lower_covers(x).len(),
                l.upper_covers(x).len(),
                down,
                up,
            )
        })
        .collect()
}

/// An order isomorphism `a → b`, if one exists, as an image vector.
pub fn find_isomorphism(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.cover_pairs().len() != b.cover_pairs().len() {
        return None;
    }
    let (sa, sb) = (signatures(a), signatures(b));
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort_unstable();
    kb.sort_unstable();
    if ka != kb {
        return None;
    }
    let order = a.linear_extension();
    let cands: Vec<Vec<usize>> = order
        .iter()
        .map(|&x| b.elements().filter(|&y| sb[y] == sa[x]).collect())
        .collect();
    let mut image = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    iso_search(a, b, &order, &cands, 0, &mut image, &mut used).then_some(image)
}

fn iso_search(
    a: &FiniteLattice,
    b: &FiniteLattice,
    order: &[usize],
    cands: &[Vec<usize>],
    k: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if k == order.len() {
        return true;
    }
    let x = order[k];
    for &y in &cands[k] {
        if used[y] {
            continue;
        }
        let consistent = order[..k].iter().all(|&z| {
            let fz = image[z];
            a.leq(x, z) == b.leq(y, fz) && a.leq(z, x) == b.leq(fz, y)
        });
        if !consistent {
            continue;
        }
        image[x] = y;
        used[y] = true;
        if iso_search(a, b, order, cands, k + 1, image, used) {
            return true;
        }
        used[y] = false;
        image[x] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{boolean, chain, n5};

    #[test]
    fn closure_of_extremes_and_atoms() {
        let b = boolean(3);
        assert_eq!(sublattice_closure(&b, &[0, 7]).len(), 2);
        let mut all = sublattice_closure(&b, &[1, 2, 4]);
        all.sort_unstable();
        assert_eq!(all, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn identity_and_composition_are_embeddings() {
        let l = n5().into_arc();
        let id = LatticeMap::identity(l.clone());
        assert!(id.verify_embedding());
        assert!(id.compose(&id).unwrap().verify_embedding());
        // every chain is a sublattice
        let c = chain(3).into_arc();
        let f = LatticeMap::new(c, l.clone(), vec![0, 1, 4]).unwrap();
        assert!(f.verify_embedding());
        let g = LatticeMap::new(chain(3).into_arc(), l, vec![0, 1, 1]).unwrap();
        assert!(!g.verify_embedding());
    }

    #[test]
    fn isomorphism_search_finds_relabelings() {
        // N5 with shuffled ids: 0 < x < 1, 0 < y < z < 1
        let shuffled =
            FiniteLattice::from_order(5, [(4, 2), (2, 0), (4, 3), (3, 1), (1, 0)]).unwrap();
        let f = find_isomorphism(&n5(), &shuffled).unwrap();
        let m = LatticeMap::new(n5().into_arc(), shuffled.into_arc(), f).unwrap();
        assert!(m.is_isomorphism());
        assert!(find_isomorphism(&chain(4), &boolean(2)).is_none());
    }
}
