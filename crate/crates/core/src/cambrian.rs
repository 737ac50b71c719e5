//! Cambrian lattices `A_U(n)` as sublattices and retracts of `P(n)`, Tamari
//! lattices `A(n) = A_[n](n)`, and their bracket-function description.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    find_isomorphism, Congruence, DependencyMode, FiniteLattice, LatticeMap, SetMeet,
};
use crate::pairset::PairSet;
use crate::weak_order::{
    build_permutohedron, index_set, indices, interval, restrict, IndexSet, JiTriple,
};

/// Largest `n` for which `A_U(n)` is materialized (`C_14 = 2674440`).
pub const MAX_CAMBRIAN: usize = 14;
/// Largest `n` for the congruence-level checks on `P(n)`.
pub const MAX_SUBDIRECT: usize = 6;
/// Largest `n` accepted by [`cambrian_duality`].
pub const MAX_DUALITY: usize = 10;
/// Largest `m + n` accepted by [`tamari_product_embed`].
pub const MAX_PRODUCT: usize = 8;

/// `n` together with `U ∩ ]1, n[`, the only part of `U` that matters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CambrianSpec {
    pub n: usize,
    pub u: IndexSet,
}

impl CambrianSpec {
    pub fn new(n: usize, u: &[usize]) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::BadParams(format!("ground size {n} out of range")));
        }
        if let Some(&k) = u.iter().find(|&&k| k == 0 || k > n) {
            return Err(Error::BadParams(format!("{k} is not in [{n}]")));
        }
        Ok(Self::from_mask(n, index_set(u)))
    }

    pub fn from_mask(n: usize, u: IndexSet) -> Self {
        CambrianSpec {
            n,
            u: u & interval(2, n.saturating_sub(1)),
        }
    }

    /// `A(n)`, i.e. `U = [n]`.
    pub fn tamari(n: usize) -> Self {
        Self::from_mask(n, !0)
    }

    /// `[n] \ U`, normalized.
    pub fn complement(&self) -> Self {
        Self::from_mask(self.n, !self.u)
    }

    pub fn interior(&self) -> Vec<usize> {
        indices(self.u)
    }

    /// Every normalized `U` for ground size `n`, in mask order.
    pub fn all(n: usize) -> Vec<Self> {
        let inner = n.saturating_sub(2);
        (0u64..1 << inner)
            .map(|m| Self::from_mask(n, m << 1))
            .collect()
    }

    fn in_u(&self, k: usize) -> bool {
        self.u >> (k - 1) & 1 == 1
    }

    /// Membership in `D_U(n)`.
    pub fn in_du(&self, x: &PairSet) -> bool {
        if x.n() != self.n {
            return false;
        }
        let rows = x.to_rows();
        for i in 1..=self.n {
            let mut ks = rows[i - 1];
            while ks != 0 {
                let k = ks.trailing_zeros() as usize + 1;
                ks &= ks - 1;
                for j in i + 1..k {
                    let ok = if self.in_u(j) {
                        x.contains(i, j)
                    } else {
                        x.contains(j, k)
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Membership in `A_U(n)`: transitive members of `D_U(n)`.
    pub fn in_au(&self, x: &PairSet) -> bool {
        self.in_du(x) && x.is_closed()
    }

    /// `⟨i, j⟩_U`, the least element of `A_U(n)` containing `(i, j)`.
    pub fn ji_element(&self, i: usize, j: usize) -> PairSet {
        self.ji_triple(i, j).set()
    }

    pub fn ji_triple(&self, i: usize, j: usize) -> JiTriple {
        let v = restrict(self.u, i, j) & !(1 << (i - 1));
        JiTriple::new(self.n, i, j, v).expect("restricted triple lies in F_n")
    }

    pub fn join_irreducibles(&self) -> Vec<PairSet> {
        (1..=self.n)
            .flat_map(|i| (i + 1..=self.n).map(move |j| (i, j)))
            .map(|(i, j)| self.ji_element(i, j))
            .collect()
    }

    /// `π_U(x)`: the largest element of `A_U(n)` contained in `x`.
    pub fn pi(&self, x: &PairSet) -> PairSet {
        let mut acc = PairSet::empty(self.n);
        for p in self.join_irreducibles() {
            if p.is_subset(x) {
                acc = acc.union(&p);
            }
        }
        acc.closure()
    }

    /// The pairs generating the Cambrian congruence on `P(n)`.
    pub fn congruence_generators(&self) -> Vec<(PairSet, PairSet)> {
        let n = self.n;
        (1..=n.saturating_sub(2))
            .map(|i| {
                if self.in_u(i + 1) {
                    (
                        PairSet::from_pairs(n, [(i + 1, i + 2)]),
                        PairSet::from_pairs(n, [(i + 1, i + 2), (i, i + 2)]),
                    )
                } else {
                    (
                        PairSet::from_pairs(n, [(i, i + 1)]),
                        PairSet::from_pairs(n, [(i, i + 1), (i, i + 2)]),
                    )
                }
            })
            .collect()
    }
}

impl fmt::Display for CambrianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A_{{{}}}({})", self.interior().iter().join(","), self.n)
    }
}

/// All elements of `A_U(n)` as joins of its join-irreducibles.
pub fn build_cambrian(spec: &CambrianSpec) -> Result<FiniteLattice> {
    if spec.n > MAX_CAMBRIAN {
        return Err(Error::SizeLimit {
            what: "Cambrian lattice index",
            value: spec.n,
            limit: MAX_CAMBRIAN,
        });
    }
    let gens = spec.join_irreducibles();
    let bottom = PairSet::empty(spec.n);
    let mut seen: HashSet<PairSet> = HashSet::from([bottom.clone()]);
    let mut queue = vec![bottom];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k].clone();
        for g in &gens {
            if !g.is_subset(&x) {
                let y = x.union(g).closure();
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        k += 1;
    }
    queue.sort_by(|a, b| (a.len(), a.words()).cmp(&(b.len(), b.words())));
    let names = queue.iter().map(|x| x.to_string()).collect();
    Ok(FiniteLattice::from_sets(queue, SetMeet::Intersection, &gens).with_names(names))
}

/// Join-fitness of `K` (element ids of a `(∨, 0, 1)`-subsemilattice) in `L`.
pub fn join_fits(l: &FiniteLattice, k: &[usize]) -> Result<bool> {
    let members: HashSet<usize> = k.iter().copied().collect();
    if !members.contains(&l.bottom()) || !members.contains(&l.top()) {
        return Err(Error::NotSubsemilattice);
    }
    for &x in k {
        for &y in k {
            if !members.contains(&l.join(x, y)) {
                return Err(Error::NotSubsemilattice);
            }
        }
    }
    // p ∈ Ji(K) iff p is not the join of the members of K strictly below it
    let ji_k = k
        .iter()
        .copied()
        .filter(|&p| p != l.bottom() && l.join_all(k.iter().copied().filter(|&x| l.lt(x, p))) != p);
    let ji_l = l.join_irreducibles();
    for p in ji_k {
        for &q in ji_l {
            if l.join_depends(p, q) && !members.contains(&q) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One factor of the subdirect decomposition of `P(n)`.
#[derive(Clone, Debug)]
pub struct SubdirectFactor {
    pub spec: CambrianSpec,
    /// `π_U` from `P(n)` onto `A_U(n)`.
    pub projection: LatticeMap,
}

fn check_subdirect(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SUBDIRECT {
        return Err(Error::SizeLimit {
            what: "subdirect decomposition index",
            value: n,
            limit: MAX_SUBDIRECT,
        });
    }
    Ok(())
}

/// `π_U` as a map between the explicit lattices.
pub fn projection(p: Arc<FiniteLattice>, spec: &CambrianSpec) -> Result<LatticeMap> {
    let a = Arc::new(build_cambrian(spec)?);
    let images = p
        .elements()
        .map(|x| {
            let y = spec.pi(p.set(x).expect("P(n) is a set lattice"));
            a.id_of_set(&y).expect("π_U lands in A_U(n)")
        })
        .collect();
    LatticeMap::new(p, a, images)
}

/// The factors `A_U(n)`, one per normalized `U`.
pub fn subdirect_decomposition(n: usize) -> Result<Vec<SubdirectFactor>> {
    check_subdirect(n)?;
    let p = Arc::new(build_permutohedron(n)?);
    CambrianSpec::all(n)
        .into_iter()
        .map(|spec| {
            Ok(SubdirectFactor {
                spec,
                projection: projection(p.clone(), &spec)?,
            })
        })
        .collect()
}

/// Whether the diagonal map into the product of the factors is injective.
pub fn diagonal_is_injective(factors: &[SubdirectFactor]) -> bool {
    let Some(first) = factors.first() else {
        return true;
    };
    let mut seen = HashSet::new();
    first.projection.source.elements().all(|x| {
        seen.insert(
            factors
                .iter()
                .map(|f| f.projection.image(x))
                .collect::<Vec<_>>(),
        )
    })
}

/// `Ker π_U` as a congruence of `p = P(n)`.
pub fn kernel_pi_u(spec: &CambrianSpec, p: &FiniteLattice) -> Result<Congruence> {
    check_subdirect(spec.n)?;
    let mut label: HashMap<PairSet, usize> = HashMap::new();
    let labels: Vec<usize> = p
        .elements()
        .map(|x| {
            let y = spec.pi(p.set(x).expect("P(n) is a set lattice"));
            let next = label.len();
            *label.entry(y).or_insert(next)
        })
        .collect();
    Congruence::from_labels(p, &labels)
}

/// `⟨1, n; U⟩` with `U` normalized and `n` added.
pub fn top_triple(spec: &CambrianSpec) -> Result<JiTriple> {
    JiTriple::new(spec.n, 1, spec.n, spec.u | 1 << (spec.n - 1))
}

/// The congruence of `p = P(n)` generated by the Cambrian generator pairs.
pub fn cambrian_congruence(spec: &CambrianSpec, p: &FiniteLattice) -> Result<Congruence> {
    let pairs: Vec<(usize, usize)> = spec
        .congruence_generators()
        .iter()
        .map(|(x, y)| {
            (
                p.id_of_set(x).expect("clopen"),
                p.id_of_set(y).expect("clopen"),
            )
        })
        .collect();
    p.congruence_generated(&pairs)
}

/// The anti-isomorphism `A_U(n) → A_{[n]\U}(n)`, `x ↦ π_{[n]\U}(J_n \ x)`.
///
/// The returned map targets `A_{[n]\U}(n)` itself; it is verified to be
/// order-reversing, so it is an isomorphism onto the dual.
pub fn cambrian_duality(spec: &CambrianSpec) -> Result<LatticeMap> {
    if spec.n > MAX_DUALITY {
        return Err(Error::SizeLimit {
            what: "duality index",
            value: spec.n,
            limit: MAX_DUALITY,
        });
    }
    let co = spec.complement();
    let a = Arc::new(build_cambrian(spec)?);
    let b = Arc::new(build_cambrian(&co)?);
    let images = a
        .elements()
        .map(|x| {
            let y = co.pi(&a.set(x).expect("set lattice").complement());
            b.id_of_set(&y).expect("π lands in the lattice")
        })
        .collect();
    let map = LatticeMap::new(a, b, images)?;
    assert!(
        map.is_dual_isomorphism(),
        "duality map for {spec} is not order-reversing"
    );
    Ok(map)
}

/// Dual isomorphism by search, for cross-checking [`cambrian_duality`].
pub fn cambrian_duality_by_search(spec: &CambrianSpec) -> Result<Option<Vec<usize>>> {
    let a = build_cambrian(spec)?;
    let b = build_cambrian(&spec.complement())?.dual()?;
    Ok(find_isomorphism(&a, &b))
}

/// An element of `A'(n)`: `f(i)` is stored at index `i - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BracketFunction(pub Vec<usize>);

impl BracketFunction {
    pub fn new(f: Vec<usize>) -> Result<Self> {
        let n = f.len();
        let at = |i: usize| f[i - 1];
        let ok = (1..=n).all(|i| i <= at(i) && at(i) <= n && (i..=at(i)).all(|j| at(j) <= at(i)));
        if ok {
            Ok(BracketFunction(f))
        } else {
            Err(Error::NotABracketFunction(f))
        }
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// Componentwise order.
    pub fn leq(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `f̃(i)` = least `j ∈ [i, n]` with `n - i < f(n - j)`, where `f(0) = n`.
    pub fn dual(&self) -> BracketFunction {
        let n = self.n();
        let ext = |k: usize| if k == 0 { n } else { self.at(k) };
        let g = (1..=n)
            .map(|i| {
                (i..=n)
                    .find(|&j| n - i < ext(n - j))
                    .expect("j = n always qualifies")
            })
            .collect();
        BracketFunction(g)
    }

    /// `ψ(f) = {(i, j) : j <= f(i)}`.
    pub fn to_pairset(&self) -> PairSet {
        let n = self.n();
        PairSet::from_pairs(
            n,
            (1..=n).flat_map(|i| (i + 1..=self.at(i)).map(move |j| (i, j))),
        )
    }

    /// `φ(x)(i)` = largest `j` with `{i} × ]i, j] ⊆ x`.
    pub fn from_pairset(x: &PairSet) -> Result<Self> {
        if !CambrianSpec::tamari(x.n()).in_au(x) {
            return Err(Error::NotInTamari);
        }
        let n = x.n();
        let f = (1..=n)
            .map(|i| {
                (i + 1..=n)
                    .take_while(|&j| x.contains(i, j))
                    .last()
                    .unwrap_or(i)
            })
            .collect();
        BracketFunction::new(f)
    }

    /// All of `A'(n)`, in lexicographic order.
    pub fn all(n: usize) -> Vec<BracketFunction> {
        (1..=n)
            .map(|i| i..=n)
            .multi_cartesian_product()
            .filter_map(|f| BracketFunction::new(f).ok())
            .collect()
    }
}

/// `a_n = ⟨1, n⟩`, `b_n` = union of `⟨i, i+1⟩` for even `i`, `c_n` for odd `i`.
pub fn three_generators(n: usize) -> Result<(PairSet, PairSet, PairSet)> {
    if n < 2 {
        return Err(Error::BadParams("three generators need n >= 2".into()));
    }
    let spec = CambrianSpec::tamari(n);
    let a = spec.ji_element(1, n);
    let b = PairSet::from_pairs(n, (1..n).filter(|i| i % 2 == 0).map(|i| (i, i + 1)));
    let c = PairSet::from_pairs(n, (1..n).filter(|i| i % 2 == 1).map(|i| (i, i + 1)));
    Ok((a, b, c))
}

/// `A(m) × A(n) → A(m + n)`, `(x, y) ↦ x ∪ y'` with `y'` shifted by `m`.
pub fn tamari_product_embed(m: usize, n: usize) -> Result<LatticeMap> {
    if m == 0 || n == 0 || m + n > MAX_PRODUCT {
        return Err(Error::SizeLimit {
            what: "product index m + n",
            value: m + n,
            limit: MAX_PRODUCT,
        });
    }
    let am = build_cambrian(&CambrianSpec::tamari(m))?;
    let an = build_cambrian(&CambrianSpec::tamari(n))?;
    let target = Arc::new(build_cambrian(&CambrianSpec::tamari(m + n))?);
    let source = Arc::new(am.product(&an)?);
    let images = (0..am.len())
        .flat_map(|x| (0..an.len()).map(move |y| (x, y)))
        .map(|(x, y)| {
            let z = am
                .set(x)
                .unwrap()
                .shifted(0, m + n)
                .union(&an.set(y).unwrap().shifted(m, m + n));
            target.id_of_set(&z).expect("x ∪ y' is in A(m+n)")
        })
        .collect();
    LatticeMap::new(source, target, images)
}

/// `P(3) ↪ A(3) × A(3) ↪ A(6)` through the two factors of `P(3)`.
pub fn p3_into_a6() -> Result<LatticeMap> {
    let factors = subdirect_decomposition(3)?;
    let product = tamari_product_embed(3, 3)?;
    let a3 = build_cambrian(&CambrianSpec::tamari(3))?;
    let width = a3.len();
    // both factors are isomorphic to A(3); align them with its ids
    let aligned: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| find_isomorphism(&f.projection.target, &a3).ok_or(Error::GeneratorsDontGenerate))
        .collect::<Result<_>>()?;
    let p = factors[0].projection.source.clone();
    let images = p
        .elements()
        .map(|x| {
            let i = aligned[0][factors[0].projection.image(x)];
            let j = aligned[1][factors[1].projection.image(x)];
            product.image(i * width + j)
        })
        .collect();
    LatticeMap::new(p, product.target.clone(), images)
}

/// `⟨1, n⟩_U` is below every join-irreducible in the reflexive-transitive
/// closure of `D` on `A_U(n)`.
pub fn least_in_dependency_order(spec: &CambrianSpec, a: &FiniteLattice) -> bool {
    let start = a
        .id_of_set(&spec.ji_element(1, spec.n))
        .expect("join-irreducible");
    let edges = a.join_dependency(DependencyMode::Arrows);
    let mut reached = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &(p, q) in &edges {
            if p == x && reached.insert(q) {
                stack.push(q);
            }
        }
    }
    a.join_irreducibles().iter().all(|q| reached.contains(q))
}
