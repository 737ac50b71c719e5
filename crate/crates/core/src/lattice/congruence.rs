use super::FiniteLattice;
use crate::error::{Error, Result};

/// A lattice congruence, stored as the least element id of each class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    rep: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` when already merged; the smaller root wins.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }
}

impl Congruence {
    pub fn identity(size: usize) -> Self {
        Congruence {
            rep: (0..size).collect(),
        }
    }

    /// Checks a partition (given as class labels) for compatibility.
    pub fn from_labels(l: &FiniteLattice, labels: &[usize]) -> Result<Self> {
        if labels.len() != l.len() {
            return Err(Error::NotACongruence(format!(
                "{} labels for {} elements",
                labels.len(),
                l.len()
            )));
        }
        let mut first = std::collections::HashMap::new();
        let rep: Vec<usize> = labels
            .iter()
            .enumerate()
            .map(|(x, &lab)| *first.entry(lab).or_insert(x))
            .collect();
        let theta = Congruence { rep };
        theta.validate(l)?;
        Ok(theta)
    }

    fn validate(&self, l: &FiniteLattice) -> Result<()> {
        for x in l.elements() {
            let y = self.rep[x];
            if x == y {
                continue;
            }
            for z in l.elements() {
                if !self.same(l.join(x, z), l.join(y, z)) || !self.same(l.meet(x, z), l.meet(y, z))
                {
                    return Err(Error::NotACongruence(format!(
                        "{x} ≡ {y} but the class is not preserved with {z}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.rep[x] == self.rep[y]
    }

    /// Least element id of the class of `x`.
    pub fn rep(&self, x: usize) -> usize {
        self.rep[x]
    }

    pub fn num_classes(&self) -> usize {
        self.rep
            .iter()
            .enumerate()
            .filter(|&(x, &r)| x == r)
            .count()
    }

    /// Classes sorted by least element; members ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut index = vec![usize::MAX; self.rep.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (x, &r) in self.rep.iter().enumerate() {
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(x);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rep.iter().enumerate().all(|(x, &r)| x == r)
    }

    pub fn is_total(&self) -> bool {
        self.rep.iter().all(|&r| r == 0)
    }

    /// `self ⊆ other` as relations.
    pub fn leq(&self, other: &Congruence) -> bool {
        self.rep.iter().enumerate().all(|(x, &r)| other.same(x, r))
    }
}

impl FiniteLattice {
    /// Least congruence identifying every given pair.
    pub fn congruence_generated(&self, pairs: &[(usize, usize)]) -> Result<Congruence> {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        let mut work = Vec::new();
        for &(x, y) in pairs {
            for v in [x, y] {
                if v >= n {
                    return Err(Error::OutOfRange(v, n));
                }
            }
            if uf.union(x, y) {
                work.push((x, y));
            }
        }
        // every merged pair stands for an edge of the equivalence; closing
        // the edges under translations closes the whole relation
        while let Some((x, y)) = work.pop() {
            for z in self.elements() {
                for (u, v) in [
                    (self.join(x, z), self.join(y, z)),
                    (self.meet(x, z), self.meet(y, z)),
                ] {
                    if uf.union(u, v) {
                        work.push((u, v));
                    }
                }
            }
        }
        let rep = (0..n).map(|x| uf.find(x)).collect();
        Ok(Congruence { rep })
    }

    fn lower_cover_checked(&self, p: usize) -> Result<usize> {
        if p >= self.len() {
            return Err(Error::OutOfRange(p, self.len()));
        }
        self.lower_cover(p).ok_or(Error::NotJoinIrreducible(p))
    }

    /// `Θ(p)`: the least congruence identifying `p` and `p_*`.
    pub fn theta(&self, p: usize) -> Result<Congruence> {
        let ps = self.lower_cover_checked(p)?;
        self.congruence_generated(&[(p, ps)])
    }

    /// `Ψ(p)`: the largest congruence not identifying `p` and `p_*`.
    pub fn psi(&self, p: usize) -> Result<Congruence> {
        let ps = self.lower_cover_checked(p)?;
        let mut gens = Vec::new();
        for &q in self.join_irreducibles() {
            if !self.theta(q)?.same(p, ps) {
                gens.push((q, self.lower_cover(q).expect("join-irreducible")));
            }
        }
        let psi = self.congruence_generated(&gens)?;
        // join-irreducible congruences are join-prime in the distributive
        // congruence lattice, so the join cannot collapse (p, p_*)
        assert!(!psi.same(p, ps), "Ψ({p}) collapses its own prime quotient");
        Ok(psi)
    }

    /// True iff the congruence lattice has a least nonzero element.
    pub fn is_subdirectly_irreducible(&self) -> Result<bool> {
        if self.len() == 1 {
            return Err(Error::TrivialLattice);
        }
        let ji = self.join_irreducibles();
        let thetas: Vec<Congruence> = ji.iter().map(|&q| self.theta(q)).collect::<Result<_>>()?;
        // every nonzero congruence contains some Θ(q)
        Ok(ji.iter().any(|&q0| {
            let q0s = self.lower_cover(q0).expect("join-irreducible");
            thetas.iter().all(|t| t.same(q0, q0s))
        }))
    }

    /// The quotient lattice and the projection onto it.
    ///
    /// Classes are numbered by least element; `A <= B` iff `a ∨ b ∈ B` for
    /// representatives `a`, `b`.
    pub fn quotient(&self, theta: &Congruence) -> Result<(FiniteLattice, Vec<usize>)> {
        if theta.len() != self.len() {
            return Err(Error::NotACongruence(format!(
                "partition of {} elements for a lattice of {}",
                theta.len(),
                self.len()
            )));
        }
        theta.validate(self)?;
        let classes = theta.classes();
        let mut proj = vec![0; self.len()];
        for (k, class) in classes.iter().enumerate() {
            for &x in class {
                proj[x] = k;
            }
        }
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let leq = |a: usize, b: usize| proj[self.join(reps[a], reps[b])] == b;
        let names = reps.iter().map(|&r| self.name(r).to_string()).collect();
        let q = FiniteLattice::from_leq_fn(classes.len(), leq)?.with_names(names);
        Ok((q, proj))
    }
}
