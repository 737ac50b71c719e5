//! The permutohedron `P(n)` as the lattice of clopen subsets of `J_n`, and
//! closed forms for its join-irreducibles.
//!
//! Index sets `U ⊆ [n]` are bitmasks with bit `k - 1` standing for `k`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, SetMeet};
use crate::pairset::PairSet;

/// Largest `n` for which `P(n)` is materialized.
pub const MAX_PERMUTOHEDRON: usize = 8;

pub type IndexSet = u64;

pub fn index_set(indices: &[usize]) -> IndexSet {
    indices.iter().fold(0, |acc, &k| {
        assert!((1..=64).contains(&k), "index {k} out of range");
        acc | 1 << (k - 1)
    })
}

pub fn indices(set: IndexSet) -> Vec<usize> {
    (1..=64).filter(|&k| set >> (k - 1) & 1 == 1).collect()
}

fn contains(set: IndexSet, k: usize) -> bool {
    (1..=64).contains(&k) && set >> (k - 1) & 1 == 1
}

/// `[i, j]` as an index set.
pub fn interval(i: usize, j: usize) -> IndexSet {
    if i > j {
        return 0;
    }
    let hi = if j >= 64 { !0 } else { (1u64 << j) - 1 };
    hi & !((1u64 << (i - 1)) - 1)
}

/// `U ↾ [i, j] = (U ∩ [i, j]) ∪ {j}`.
pub fn restrict(u: IndexSet, i: usize, j: usize) -> IndexSet {
    (u & interval(i, j)) | 1 << (j - 1)
}

/// Set of inversions of a permutation in one-line notation (values `1..=n`).
pub fn inversions(sigma: &[usize]) -> Result<PairSet> {
    let n = sigma.len();
    let mut pos = vec![usize::MAX; n + 1];
    for (k, &v) in sigma.iter().enumerate() {
        if !(1..=n).contains(&v) || pos[v] != usize::MAX {
            return Err(Error::BadParams(format!("{sigma:?} is not a permutation")));
        }
        pos[v] = k;
    }
    let mut x = PairSet::empty(n);
    for i in 1..=n {
        for j in i + 1..=n {
            if pos[i] > pos[j] {
                x.insert(i, j);
            }
        }
    }
    Ok(x)
}

/// Inverse of [`inversions`] on clopen sets.
pub fn permutation_of(x: &PairSet) -> Result<Vec<usize>> {
    if !x.is_clopen() {
        return Err(Error::NotClopen);
    }
    let n = x.n();
    let mut sigma = vec![0; n];
    for v in 1..=n {
        // values placed before v: smaller ones not inverted with it, larger inverted ones
        let before = (1..v).filter(|&u| !x.contains(u, v)).count()
            + (v + 1..=n).filter(|&u| x.contains(v, u)).count();
        sigma[before] = v;
    }
    Ok(sigma)
}

/// `J_n \ x` for a clopen `x`.
pub fn complement(x: &PairSet) -> Result<PairSet> {
    if !x.is_clopen() {
        return Err(Error::NotClopen);
    }
    Ok(x.complement())
}

/// Element ids are sorted by (number of inversions, bit words); names are
/// permutations in one-line notation.
pub fn build_permutohedron(n: usize) -> Result<FiniteLattice> {
    if n == 0 || n > MAX_PERMUTOHEDRON {
        return Err(Error::SizeLimit {
            what: "permutohedron index",
            value: n,
            limit: MAX_PERMUTOHEDRON,
        });
    }
    let mut elems: Vec<(PairSet, Vec<usize>)> = (1..=n)
        .permutations(n)
        .map(|sigma| (inversions(&sigma).expect("permutation"), sigma))
        .collect();
    elems.sort_by(|a, b| (a.0.len(), a.0.words()).cmp(&(b.0.len(), b.0.words())));
    let names = elems.iter().map(|(_, s)| s.iter().join("")).collect();
    let sets = elems.into_iter().map(|(x, _)| x).collect();
    let gens: Vec<PairSet> = enumerate_f(n).iter().map(JiTriple::set).collect();
    Ok(FiniteLattice::from_sets(sets, SetMeet::Interior, &gens).with_names(names))
}

/// A triple `(a, b, U)` of `F_n`: `a < b`, `U ⊆ [a, b]`, `a ∉ U`, `b ∈ U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JiTriple {
    pub a: usize,
    pub b: usize,
    pub u: IndexSet,
    pub n: usize,
}

impl JiTriple {
    pub fn new(n: usize, a: usize, b: usize, u: IndexSet) -> Result<Self> {
        let ok = 1 <= a
            && a < b
            && b <= n
            && n <= 64
            && u & !interval(a, b) == 0
            && !contains(u, a)
            && contains(u, b);
        if ok {
            Ok(JiTriple { a, b, u, n })
        } else {
            Err(Error::NotInFn(a, b, indices(u)))
        }
    }

    /// `⟨a, b; U⟩ = J_n ∩ (([a, b] \ U) × U)`.
    pub fn set(&self) -> PairSet {
        triple_set_raw(self.n, self.a, self.b, self.u)
    }

    /// `⟨a, b; U⟩_*` by removing `(a, b)`.
    pub fn lower_cover_formula(&self) -> PairSet {
        let mut x = self.set();
        x.remove(self.a, self.b);
        x
    }

    /// `Ũ = (]a, b[ \ U) ∪ {b}`.
    pub fn u_tilde(&self) -> IndexSet {
        (interval(self.a + 1, self.b - 1) & !self.u) | 1 << (self.b - 1)
    }

    /// `κ(⟨a, b; U⟩) = ⟨a, b; Ũ⟩ᶜ`.
    pub fn kappa_formula(&self) -> PairSet {
        triple_set_raw(self.n, self.a, self.b, self.u_tilde()).complement()
    }

    /// The same formula with `Ũ = ([a, b] \ U) ∪ {b}`, which contains `a`.
    pub fn kappa_formula_literal(&self) -> PairSet {
        let u = (interval(self.a, self.b) & !self.u) | 1 << (self.b - 1);
        triple_set_raw(self.n, self.a, self.b, u).complement()
    }

    /// The triple `(c, d, U ↾ [c, d])` with `c` removed from the index set so
    /// that it lies in `F_n`.
    pub fn restricted(&self, c: usize, d: usize) -> JiTriple {
        let v = restrict(self.u, c, d) & !(1 << (c - 1));
        JiTriple {
            a: c,
            b: d,
            u: v,
            n: self.n,
        }
    }

    /// Closed-form join-dependency `self D other`: `[c, d] ⊊ [a, b]` and
    /// `V = U ↾ [c, d]`.
    pub fn depends_formula(&self, other: &JiTriple) -> bool {
        self.depends_formula_with(other, Containment::Strict)
    }

    pub fn depends_formula_with(&self, other: &JiTriple, mode: Containment) -> bool {
        let (a, b, c, d) = (self.a, self.b, other.a, other.b);
        let inside = c >= a && d <= b;
        let interval_ok = match mode {
            Containment::Strict => inside && (c, d) != (a, b),
            Containment::NotContained => !inside,
        };
        interval_ok && other.u == self.restricted(c, d).u
    }

    /// Closed-form minimal nontrivial join-covers: one per subdivision
    /// `a = z_0 < ... < z_k = b` with `k >= 2`, in lexicographic order of
    /// the subdivision.
    pub fn min_covers_formula(&self) -> Vec<Vec<JiTriple>> {
        let inner: Vec<usize> = (self.a + 1..self.b).collect();
        let mut out = Vec::new();
        for k in 1..=inner.len() {
            for mids in inner.iter().copied().combinations(k) {
                let z: Vec<usize> = std::iter::once(self.a)
                    .chain(mids)
                    .chain(std::iter::once(self.b))
                    .collect();
                out.push(z.windows(2).map(|w| self.restricted(w[0], w[1])).collect());
            }
        }
        out.sort();
        out
    }
}

/// Which interval condition the closed-form `D` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    /// `[c, d] ⊊ [a, b]`.
    Strict,
    /// `[c, d] ⊄ [a, b]`, as the statement is typeset.
    NotContained,
}

fn triple_set_raw(n: usize, a: usize, b: usize, u: IndexSet) -> PairSet {
    let mut x = PairSet::empty(n);
    for i in a..=b {
        if contains(u, i) {
            continue;
        }
        for j in i + 1..=b {
            if contains(u, j) {
                x.insert(i, j);
            }
        }
    }
    x
}

/// `⟨a, b; U⟩` after validating membership in `F_n`.
pub fn triple_set(n: usize, a: usize, b: usize, u: &[usize]) -> Result<PairSet> {
    let u = u.iter().try_fold(0u64, |acc, &k| {
        if (1..=64).contains(&k) {
            Ok(acc | 1 << (k - 1))
        } else {
            Err(Error::NotInFn(a, b, u.to_vec()))
        }
    })?;
    Ok(JiTriple::new(n, a, b, u)?.set())
}

/// All of `F_n`, ordered by `(a, b, U)`.
pub fn enumerate_f(n: usize) -> Vec<JiTriple> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let inner = b - a - 1;
            for mask in 0u64..1 << inner {
                let u = (mask << a) | 1 << (b - 1);
                out.push(JiTriple { a, b, u, n });
            }
        }
    }
    out.sort();
    out
}

/// `|F_n| = Σ_{d=1}^{n-1} (n - d) 2^{d-1}`.
pub fn f_count(n: usize) -> usize {
    (1..n).map(|d| (n - d) << (d - 1)).sum()
}

impl fmt::Display for JiTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{},{};{{{}}}>",
            self.a,
            self.b,
            indices(self.u).iter().join(",")
        )
    }
}
