//! Polarized measures on finite chains and their dual `(∧, 1)`-homomorphisms
//! into Cambrian lattices.
//!
//! Chain points are the positions `1..=n`; `labels` only affect display.

use std::sync::Arc;

use serde::Serialize;

use crate::bmn::build_bmn;
use crate::cambrian::{build_cambrian, CambrianSpec};
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, LatticeMap};
use crate::pairset::PairSet;
use crate::weak_order::{indices, interval, IndexSet};

#[derive(Clone, Debug)]
pub struct PolarizedMeasure {
    n: usize,
    u: IndexSet,
    labels: Vec<String>,
    target: Arc<FiniteLattice>,
    /// `values[(x - 1) * n + (y - 1)]` for `x < y`; bottom elsewhere.
    values: Vec<usize>,
}

impl PolarizedMeasure {
    /// Tabulates `f(x, y)` for `1 ≤ x < y ≤ n`. Only `U ∩ ]1, n[` is kept;
    /// polarity is not checked here.
    pub fn new(
        n: usize,
        u: IndexSet,
        target: Arc<FiniteLattice>,
        mut f: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::BadParams(format!("chain length {n} out of range")));
        }
        let mut values = vec![target.bottom(); n * n];
        for x in 1..=n {
            for y in x + 1..=n {
                let v = f(x, y);
                if v >= target.len() {
                    return Err(Error::OutOfRange(v, target.len()));
                }
                values[(x - 1) * n + (y - 1)] = v;
            }
        }
        let labels = (1..=n).map(|k| k.to_string()).collect();
        let u = CambrianSpec::from_mask(n, u).u;
        Ok(PolarizedMeasure {
            n,
            u,
            labels,
            target,
            values,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::BadParams(format!(
                "{} labels for a chain of {}",
                labels.len(),
                self.n
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u(&self) -> IndexSet {
        self.u
    }

    pub fn u_indices(&self) -> Vec<usize> {
        indices(self.u)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn target(&self) -> &Arc<FiniteLattice> {
        &self.target
    }

    /// The Cambrian lattice this measure maps into.
    pub fn spec(&self) -> CambrianSpec {
        CambrianSpec::from_mask(self.n, self.u)
    }

    fn in_u(&self, k: usize) -> bool {
        self.u >> (k - 1) & 1 == 1
    }

    /// `μ(x, y)` for `x ≤ y`, with `μ(x, x) = 0`.
    pub fn value(&self, x: usize, y: usize) -> usize {
        assert!(
            1 <= x && x <= y && y <= self.n,
            "({x}, {y}) is not an ordered pair of [{}]",
            self.n
        );
        self.values[(x - 1) * self.n + (y - 1)]
    }

    /// `(x, y, μ(x, y))` for all `x < y`, row by row.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (1..=self.n).flat_map(move |x| (x + 1..=self.n).map(move |y| (x, y, self.value(x, y))))
    }

    /// The first triple `x < y < z` violating the triangle or polarity law.
    pub fn polarity_violation(&self) -> Option<(usize, usize, usize)> {
        let l = &self.target;
        for x in 1..=self.n {
            for y in x + 1..=self.n {
                for z in y + 1..=self.n {
                    let (xy, yz, xz) = (self.value(x, y), self.value(y, z), self.value(x, z));
                    let polar = if self.in_u(y) {
                        l.leq(xy, xz)
                    } else {
                        l.leq(yz, xz)
                    };
                    if !l.leq(xz, l.join(xy, yz)) || !polar {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_polarized(&self) -> bool {
        self.polarity_violation().is_none()
    }

    /// A pair `(x, y)` and elements `a ≤ b` (by id) with `μ(x, y) ≤ a ∨ b`
    /// admitting no subdivision whose steps each lie under `a` or under `b`.
    pub fn v_violation(&self) -> Option<((usize, usize), (usize, usize))> {
        let l = &self.target;
        let n = self.n;
        let mut reach = vec![0u64; n + 1];
        for a in l.elements() {
            for b in a..l.len() {
                let ab = l.join(a, b);
                // reach[x] has bit y - 1 when x = z_0 < ... < z_k = y exists
                for x in (1..=n).rev() {
                    let mut r = 0u64;
                    for y in x + 1..=n {
                        let v = self.value(x, y);
                        if l.leq(v, a) || l.leq(v, b) {
                            r |= 1 << (y - 1) | reach[y];
                        }
                    }
                    reach[x] = r;
                }
                for x in 1..=n {
                    for y in x + 1..=n {
                        if l.leq(self.value(x, y), ab) && reach[x] >> (y - 1) & 1 == 0 {
                            return Some(((x, y), (a, b)));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn satisfies_v(&self) -> bool {
        self.v_violation().is_none()
    }

    pub fn zero_in_range(&self) -> bool {
        self.entries().any(|(_, _, v)| v == self.target.bottom())
    }

    /// Whether the range of `μ` generates the target as a `(∨, 0)`-semilattice.
    pub fn range_generates(&self) -> bool {
        let l = &self.target;
        let mut seen = vec![false; l.len()];
        let mut found = vec![l.bottom()];
        seen[l.bottom()] = true;
        for (_, _, v) in self.entries() {
            if !std::mem::replace(&mut seen[v], true) {
                found.push(v);
            }
        }
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let z = l.join(found[i], found[j]);
                if !std::mem::replace(&mut seen[z], true) {
                    found.push(z);
                }
            }
            i += 1;
        }
        found.len() == l.len()
    }

    /// Lowers `values` until the triangle and polarity laws hold. Every
    /// repair step replaces one value by a meet with a smaller bound, so this
    /// terminates; the constant-bottom measure is a fixed point.
    pub fn polarize(mut self) -> Self {
        let l = self.target.clone();
        let n = self.n;
        let idx = |x: usize, y: usize| (x - 1) * n + (y - 1);
        loop {
            let Some((x, y, z)) = self.polarity_violation() else {
                return self;
            };
            let (xy, yz, xz) = (self.value(x, y), self.value(y, z), self.value(x, z));
            let bound = l.join(xy, yz);
            if !l.leq(xz, bound) {
                self.values[idx(x, z)] = l.meet(xz, bound);
            } else if self.in_u(y) {
                self.values[idx(x, y)] = l.meet(xy, xz);
            } else {
                self.values[idx(y, z)] = l.meet(yz, xz);
            }
        }
    }
}

/// Measures compare equal only over the same shared target.
impl PartialEq for PolarizedMeasure {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.u == other.u
            && Arc::ptr_eq(&self.target, &other.target)
            && self.values == other.values
    }
}

/// `φ(a) = {(x, y) : μ(x, y) ≤ a}`, into a prebuilt `A_U(n)`.
pub fn measure_to_hom_into(mu: &PolarizedMeasure, a_u: Arc<FiniteLattice>) -> Result<LatticeMap> {
    if let Some((x, y, z)) = mu.polarity_violation() {
        return Err(Error::NotPolarized((x as i64, y as i64, z as i64)));
    }
    let l = &mu.target;
    let images = l
        .elements()
        .map(|a| {
            let s = PairSet::from_pairs(
                mu.n,
                mu.entries()
                    .filter(|&(_, _, v)| l.leq(v, a))
                    .map(|(x, y, _)| (x, y)),
            );
            a_u.id_of_set(&s)
                .ok_or(Error::DualityViolated("image outside A_U(n)"))
        })
        .collect::<Result<Vec<_>>>()?;
    LatticeMap::new(mu.target.clone(), a_u, images)
}

pub fn measure_to_hom(mu: &PolarizedMeasure) -> Result<LatticeMap> {
    let a_u = build_cambrian(&mu.spec())?;
    measure_to_hom_into(mu, Arc::new(a_u))
}

/// `μ(x, y)` = least `a` with `(x, y) ∈ φ(a)`, for a `(∧, 1)`-homomorphism
/// `φ` into the set lattice `A_U(n)` with `U` given by `spec`.
pub fn hom_to_measure(phi: &LatticeMap, spec: &CambrianSpec) -> Result<PolarizedMeasure> {
    let (l, t) = (&phi.source, &phi.target);
    let sets = t
        .sets()
        .ok_or_else(|| Error::BadParams("target is not a pair-set lattice".into()))?;
    if sets[t.top()].n() != spec.n || !sets.iter().all(|s| spec.in_au(s)) {
        return Err(Error::BadParams(format!("target is not {spec}")));
    }
    if phi.image(l.top()) != t.top() || !phi.preserves_meets() {
        return Err(Error::NotMeetHom);
    }
    let mu = PolarizedMeasure::new(spec.n, spec.u, l.clone(), |x, y| {
        l.meet_all(l.elements().filter(|&a| sets[phi.image(a)].contains(x, y)))
    })?;
    Ok(mu)
}

/// `(x, y) ∈ φ(a)` iff `μ(x, y) ≤ a`, for all `a` and `x < y`.
pub fn are_dual(mu: &PolarizedMeasure, phi: &LatticeMap) -> bool {
    let l = &mu.target;
    let Some(sets) = phi.target.sets() else {
        return false;
    };
    phi.source.len() == l.len()
        && l.elements().all(|a| {
            let s = &sets[phi.image(a)];
            mu.entries()
                .all(|(x, y, v)| s.contains(x, y) == l.leq(v, a))
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomProperties {
    /// `φ(0) = ∅`, equivalently `0 ∉ range(μ)`.
    pub zero_empty: bool,
    pub injective: bool,
    pub lattice_hom: bool,
}

/// Evaluates each property once from `μ` and once from `φ`.
pub fn hom_properties(mu: &PolarizedMeasure, phi: &LatticeMap) -> Result<HomProperties> {
    if !are_dual(mu, phi) {
        return Err(Error::DualityViolated("the pair"));
    }
    let from_mu = HomProperties {
        zero_empty: !mu.zero_in_range(),
        injective: mu.range_generates(),
        lattice_hom: mu.satisfies_v(),
    };
    let from_phi = HomProperties {
        zero_empty: phi
            .target
            .set(phi.image(phi.source.bottom()))
            .is_some_and(PairSet::is_empty),
        injective: phi.is_injective(),
        lattice_hom: phi.preserves_joins(),
    };
    if from_mu.zero_empty != from_phi.zero_empty {
        return Err(Error::DualityViolated("zero_empty"));
    }
    if from_mu.injective != from_phi.injective {
        return Err(Error::DualityViolated("injective"));
    }
    if from_mu.lattice_hom != from_phi.lattice_hom {
        return Err(Error::DualityViolated("lattice_hom"));
    }
    Ok(from_mu)
}

/// `μ(x, y) = ⟨x, y⟩_U` inside `target`, which must contain those sets
/// (`A_U(n)` itself, or `P(n)`).
pub fn canonical_measure(
    spec: &CambrianSpec,
    target: Arc<FiniteLattice>,
) -> Result<PolarizedMeasure> {
    let mut missing = None;
    let mu = PolarizedMeasure::new(spec.n, spec.u, target.clone(), |x, y| {
        target.id_of_set(&spec.ji_element(x, y)).unwrap_or_else(|| {
            missing.get_or_insert((x, y));
            target.bottom()
        })
    })?;
    match missing {
        Some((x, y)) => Err(Error::BadParams(format!(
            "⟨{x},{y}⟩ is not an element of the target"
        ))),
        None => Ok(mu),
    }
}

/// The measure on `[m + 2]` into `B(m, 1)`: `μ(k, l) = a_[k, l-1]` below
/// `m + 2`, `μ(k, m+2) = a_[k, m] ∨ b` for `k ≥ 2`, and `μ(1, m+2) = p`.
pub fn bm1_measure(m: usize) -> Result<PolarizedMeasure> {
    if m == 0 {
        return Err(Error::BadParams("m must be positive".into()));
    }
    let b = build_bmn(m, 1)?;
    let a_range = |k: usize, l: usize| {
        if k > l {
            0
        } else {
            (interval(k, l) & b.a_join() as u64) as usize
        }
    };
    PolarizedMeasure::new(
        m + 2,
        interval(1, m + 2),
        b.lattice.clone(),
        |k, l| match (k, l) {
            (1, l) if l == m + 2 => b.p(),
            (k, l) if l == m + 2 => a_range(k, m) | b.b(1),
            (k, l) => a_range(k, l - 1),
        },
    )
}

/// The measure on `Λ = [-m-1, m+1] \ {0}` into `B(m, 2)`, relabeled onto
/// `[2m + 2]` so that `U = [1, m]` becomes `[m + 2, 2m + 1]`.
pub fn bm2_measure(m: usize) -> Result<PolarizedMeasure> {
    if m == 0 {
        return Err(Error::BadParams("m must be positive".into()));
    }
    let b = build_bmn(m, 2)?;
    let a_range = |k: usize, l: usize| {
        if k > l {
            0
        } else {
            (interval(k, l) & b.a_join() as u64) as usize
        }
    };
    // the `B(m, 1)` measure shifted to [0, m+1], with `b_j` as its b
    let mu = |j: usize, i: i64, k: i64| -> usize {
        let (i, k) = (i as usize, k as usize);
        match (i, k) {
            (0, k) if k == m + 1 => b.p(),
            (i, k) if k == m + 1 => a_range(i + 1, m) | b.b(j),
            (i, k) => a_range(i + 1, k),
        }
    };
    let point = |x: usize| -> i64 {
        let x = x as i64 - (m as i64 + 2);
        if x < 0 {
            x
        } else {
            x + 1
        }
    };
    let nu = |x: usize, y: usize| {
        let (i, j) = (point(x), point(y));
        if i > 0 {
            mu(1, i, j)
        } else if j < 0 {
            mu(2, -j, -i)
        } else {
            mu(1, 0, (-i).min(j))
        }
    };
    let labels = (1..=2 * m + 2).map(|x| point(x).to_string()).collect();
    PolarizedMeasure::new(2 * m + 2, interval(m + 2, 2 * m + 1), b.lattice.clone(), nu)?
        .with_labels(labels)
}

/// `B(m, 0)` as the sublattice of `B(m, 1)` avoiding `b`.
pub fn bm0_into_bm1(m: usize) -> Result<LatticeMap> {
    let src = build_bmn(m, 0)?;
    let dst = build_bmn(m, 1)?;
    let images = src
        .lattice
        .elements()
        .map(|z| if z == src.p() { dst.p() } else { z })
        .collect();
    LatticeMap::new(src.lattice.clone(), dst.lattice.clone(), images)
}
