//! Arrow relations, join-dependency, join-covers and the structural
//! predicates built on them.

use super::FiniteLattice;
use crate::error::{Error, Result};

/// The arrow relations of a finite lattice.
///
/// `up` holds `(x, y)` with `x ↗ y` (`y` meet-irreducible); `down` holds
/// `(y, x)` with `y ↘ x` (`x` join-irreducible). Both are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrows {
    pub up: Vec<(usize, usize)>,
    pub down: Vec<(usize, usize)>,
}

/// A minimal nontrivial join-cover, as sorted element ids.
pub type JoinCover = Vec<usize>;

/// Which characterization of `D` to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DependencyMode {
    /// `a D q` iff some `x` has `a <= q ∨ x` and `a </= q_* ∨ x`.
    Definition,
    /// `p D q` iff `p ↗ u ↘ q` for some meet-irreducible `u`.
    Arrows,
}

impl FiniteLattice {
    /// `x ↗ y`: `y` meet-irreducible, `x </= y`, `x <= y^*`.
    pub fn up_arrow(&self, x: usize, y: usize) -> bool {
        match self.upper_cover(y) {
            Some(ys) => !self.leq(x, y) && self.leq(x, ys),
            None => false,
        }
    }

    /// `y ↘ x`: `x` join-irreducible, `x </= y`, `x_* <= y`.
    pub fn down_arrow(&self, y: usize, x: usize) -> bool {
        match self.lower_cover(x) {
            Some(xs) => !self.leq(x, y) && self.leq(xs, y),
            None => false,
        }
    }

    pub fn arrows(&self) -> Arrows {
        let mut up = Vec::new();
        let mut down = Vec::new();
        for x in self.elements() {
            for &y in self.meet_irreducibles() {
                if self.up_arrow(x, y) {
                    up.push((x, y));
                }
            }
            for &p in self.join_irreducibles() {
                if self.down_arrow(x, p) {
                    down.push((x, p));
                }
            }
        }
        Arrows { up, down }
    }

    /// `κ(p)`, the largest `u` with `u ↘ p`; `None` when no largest one exists.
    pub fn kappa(&self, p: usize) -> Result<Option<usize>> {
        self.check(p)?;
        let ps = self.lower_cover(p).ok_or(Error::NotJoinIrreducible(p))?;
        // u ↘ p iff u >= p_* and u </= p; any maximum is the join of them all
        let cands: Vec<usize> = self
            .elements()
            .filter(|&u| self.leq(ps, u) && !self.leq(p, u))
            .collect();
        let top = self.join_all(cands.iter().copied());
        Ok((!self.leq(p, top)).then_some(top))
    }

    fn check(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::OutOfRange(x, self.len()))
        }
    }

    /// Whether `a D q` holds by the defining quantifier over `x`.
    pub fn join_depends(&self, a: usize, q: usize) -> bool {
        let Some(qs) = self.lower_cover(q) else {
            return false;
        };
        a != q
            && self
                .elements()
                .any(|x| self.leq(a, self.join(q, x)) && !self.leq(a, self.join(qs, x)))
    }

    /// `D` restricted to `Ji(L) × Ji(L)`, sorted.
    pub fn join_dependency(&self, mode: DependencyMode) -> Vec<(usize, usize)> {
        let ji = self.join_irreducibles();
        match mode {
            DependencyMode::Definition => ji
                .iter()
                .flat_map(|&p| ji.iter().map(move |&q| (p, q)))
                .filter(|&(p, q)| self.join_depends(p, q))
                .collect(),
            DependencyMode::Arrows => {
                let mi = self.meet_irreducibles();
                let mut out = Vec::new();
                for &p in ji {
                    let ups: Vec<usize> = mi
                        .iter()
                        .copied()
                        .filter(|&u| self.up_arrow(p, u))
                        .collect();
                    for &q in ji {
                        if p != q && ups.iter().any(|&u| self.down_arrow(u, q)) {
                            out.push((p, q));
                        }
                    }
                }
                out
            }
        }
    }

    /// Join-dependency of the dual lattice, on `Mi(L) × Mi(L)`.
    ///
    /// `u D^op v` iff `u ↘ p ↗ v` for some join-irreducible `p`.
    pub fn dual_join_dependency(&self) -> Vec<(usize, usize)> {
        let mi = self.meet_irreducibles();
        let ji = self.join_irreducibles();
        let mut out = Vec::new();
        for &u in mi {
            let downs: Vec<usize> = ji
                .iter()
                .copied()
                .filter(|&p| self.down_arrow(u, p))
                .collect();
            for &v in mi {
                if u != v && downs.iter().any(|&p| self.up_arrow(p, v)) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// All minimal nontrivial join-covers of `a`, each sorted, in
    /// lexicographic order. The bottom element has none.
    pub fn minimal_join_covers(&self, a: usize) -> Vec<JoinCover> {
        if a == self.bottom() {
            return Vec::new();
        }
        // members of a minimal cover are join-irreducible and not above a
        let cands: Vec<usize> = self
            .join_irreducibles()
            .iter()
            .copied()
            .filter(|&c| !self.leq(a, c))
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.covers_dfs(a, &cands, 0, &mut cur, self.bottom(), &mut out);
        out.sort();
        out
    }

    fn covers_dfs(
        &self,
        a: usize,
        cands: &[usize],
        start: usize,
        cur: &mut Vec<usize>,
        joined: usize,
        out: &mut Vec<JoinCover>,
    ) {
        for k in start..cands.len() {
            let c = cands[k];
            if cur.iter().any(|&d| self.leq(c, d) || self.leq(d, c)) {
                continue;
            }
            cur.push(c);
            let j = self.join(joined, c);
            if self.leq(a, j) {
                // a cover that already covers cannot be extended minimally
                if self.is_minimal_cover(a, cur) {
                    out.push(cur.clone());
                }
            } else {
                self.covers_dfs(a, cands, k + 1, cur, j, out);
            }
            cur.pop();
        }
    }

    /// For an antichain `C` of join-irreducibles covering `a`: each `c` is
    /// needed, even after being lowered to `c_*`.
    fn is_minimal_cover(&self, a: usize, cover: &[usize]) -> bool {
        cover.iter().enumerate().all(|(k, &c)| {
            let rest = cover.iter().enumerate().filter(|&(l, _)| l != k).fold(
                self.lower_cover(c).expect("join-irreducible"),
                |acc, (_, &d)| self.join(acc, d),
            );
            !self.leq(a, rest)
        })
    }

    /// Bounded iff `D` is acyclic on `Ji(L)` and on `Ji(L^op)`.
    pub fn is_bounded(&self) -> bool {
        let ji = self.join_irreducibles().to_vec();
        let mi = self.meet_irreducibles().to_vec();
        acyclic(&ji, &self.join_dependency(DependencyMode::Arrows))
            && acyclic(&mi, &self.dual_join_dependency())
    }

    /// `x ∨ y = x ∨ z` implies `x ∨ y = x ∨ (y ∧ z)`.
    pub fn is_join_semidistributive(&self) -> bool {
        self.sd_witness(false).is_none()
    }

    /// `x ∧ y = x ∧ z` implies `x ∧ y = x ∧ (y ∨ z)`.
    pub fn is_meet_semidistributive(&self) -> bool {
        self.sd_witness(true).is_none()
    }

    pub fn is_semidistributive(&self) -> bool {
        self.is_join_semidistributive() && self.is_meet_semidistributive()
    }

    /// First triple `(x, y, z)` violating the (dual when `meet`) law.
    pub fn sd_witness(&self, meet: bool) -> Option<(usize, usize, usize)> {
        let (op, co) = if meet {
            (
                Self::meet as fn(&Self, usize, usize) -> usize,
                Self::join as fn(&Self, usize, usize) -> usize,
            )
        } else {
            (
                Self::join as fn(&Self, usize, usize) -> usize,
                Self::meet as fn(&Self, usize, usize) -> usize,
            )
        };
        for x in self.elements() {
            for y in self.elements() {
                let xy = op(self, x, y);
                for z in y + 1..self.len() {
                    if op(self, x, z) == xy && op(self, x, co(self, y, z)) != xy {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

/// Whether the relation has no directed cycle on `nodes`.
pub(crate) fn acyclic(nodes: &[usize], edges: &[(usize, usize)]) -> bool {
    let pos = |x: usize| nodes.binary_search(&x).expect("edge endpoint is a node");
    let mut succ = vec![Vec::new(); nodes.len()];
    let mut indeg = vec![0usize; nodes.len()];
    for &(a, b) in edges {
        succ[pos(a)].push(pos(b));
        indeg[pos(b)] += 1;
    }
    let mut ready: Vec<usize> = (0..nodes.len()).filter(|&k| indeg[k] == 0).collect();
    let mut seen = 0;
    while let Some(k) = ready.pop() {
        seen += 1;
        for &l in &succ[k] {
            indeg[l] -= 1;
            if indeg[l] == 0 {
                ready.push(l);
            }
        }
    }
    seen == nodes.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{boolean, chain, m3, n5};

    /// Minimality straight from the definition: no cover refining `c`
    /// (drawn from all subsets of `L`) avoids one of its members.
    fn is_minimal_by_definition(l: &FiniteLattice, a: usize, c: &[usize]) -> bool {
        let n = l.len();
        assert!(n <= 16);
        for mask in 0u32..1 << n {
            let d: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
            let refines = d.iter().all(|&x| c.iter().any(|&y| l.leq(x, y)));
            if refines
                && l.leq(a, l.join_all(d.iter().copied()))
                && !c.iter().all(|y| d.contains(y))
            {
                return false;
            }
        }
        true
    }

    #[test]
    fn chain_arrows() {
        let c = chain(2);
        let arrows = c.arrows();
        // 0 is the only meet-irreducible and 1 the only join-irreducible
        assert_eq!(arrows.up, vec![(1, 0)]);
        assert_eq!(arrows.down, vec![(0, 1)]);
        assert_eq!(c.kappa(1).unwrap(), Some(0));
        assert!(matches!(c.kappa(0), Err(Error::NotJoinIrreducible(0))));
    }

    #[test]
    fn n5_arrows_and_dependency() {
        let l = n5();
        let (a, b, c) = (1, 2, 3);
        assert!(l.down_arrow(c, a));
        // b <= c ∨ a but b </= a: the long side depends on both atoms
        assert_eq!(
            l.join_dependency(DependencyMode::Definition),
            vec![(b, a), (b, c)]
        );
        assert!(!l.join_depends(a, c));
        assert_eq!(
            l.join_dependency(DependencyMode::Definition),
            l.join_dependency(DependencyMode::Arrows)
        );
    }

    #[test]
    fn m3_kappa_undefined_and_unbounded() {
        let l = m3();
        assert_eq!(l.kappa(1).unwrap(), None);
        assert!(!l.is_bounded());
        assert!(!l.is_meet_semidistributive());
        assert!(!l.is_join_semidistributive());
        assert!(n5().is_bounded());
        assert!(n5().is_semidistributive());
    }

    #[test]
    fn boolean_has_no_dependency() {
        let b = boolean(3);
        assert!(b.join_dependency(DependencyMode::Definition).is_empty());
        assert!(b.join_dependency(DependencyMode::Arrows).is_empty());
        for &p in b.join_irreducibles() {
            assert!(b.minimal_join_covers(p).is_empty());
        }
        assert_eq!(b.minimal_join_covers(7), vec![vec![1, 2, 4]]);
        assert!(b.is_bounded());
    }

    #[test]
    fn covers_match_definition_on_small_lattices() {
        for l in [n5(), m3(), boolean(3), chain(4)] {
            for a in l.elements() {
                let covers = l.minimal_join_covers(a);
                for c in &covers {
                    assert!(is_minimal_by_definition(&l, a, c), "{c:?} for {a}");
                }
                // (2.1) agrees with membership in some minimal cover
                for &q in l.join_irreducibles() {
                    let in_cover = covers.iter().any(|c| c.contains(&q));
                    assert_eq!(l.join_depends(a, q), in_cover, "a={a} q={q}");
                }
            }
        }
        // M3: each atom is covered by the other two
        assert_eq!(m3().minimal_join_covers(1), vec![vec![2, 3]]);
    }
}
