//! Explicit finite lattices.
//!
//! Abstract lattices keep a dense order matrix (one up-set and one down-set
//! bit row per element). Lattices whose elements are pair sets ordered by
//! inclusion (permutohedra, Cambrian lattices) compare their elements directly
//! and compute meets and joins with the set operations of the family.

mod analysis;
mod congruence;
mod constructions;
mod maps;

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::pairset::PairSet;

pub use analysis::{Arrows, DependencyMode, JoinCover};
pub use congruence::Congruence;
pub use constructions::{boolean, chain, m3, n5};
pub use maps::{find_isomorphism, sublattice_closure, LatticeMap};

/// Lattices up to this size get a dense order matrix (`2^12 + 1`, the
/// largest `B(m, n)` the builders accept).
pub const DENSE_LIMIT: usize = 4097;
/// Lattices up to this size get meet/join tables.
pub const TABLE_LIMIT: usize = 512;

/// How meets are computed for a lattice of pair sets. Joins are always
/// `cl(x ∪ y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetMeet {
    /// `int(x ∩ y)`, as in the permutohedron.
    Interior,
    /// `x ∩ y`, as in Cambrian lattices.
    Intersection,
}

#[derive(Clone, Debug)]
enum Order {
    Dense {
        up: Vec<FixedBitSet>,
        down: Vec<FixedBitSet>,
        down_count: Vec<u32>,
    },
    Sets {
        sets: Vec<PairSet>,
        index: HashMap<PairSet, usize>,
        meet: SetMeet,
    },
}

#[derive(Clone, Debug)]
struct Tables {
    meet: Vec<u16>,
    join: Vec<u16>,
}

#[derive(Clone, Debug)]
pub struct FiniteLattice {
    size: usize,
    names: Vec<String>,
    order: Order,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    ji: Vec<usize>,
    mi: Vec<usize>,
    tables: Option<Tables>,
}

impl FiniteLattice {
    /// Builds a lattice from generating pairs `x <= y` of its order.
    ///
    /// The relation is closed reflexively and transitively, then checked for
    /// antisymmetry and for the existence of all meets and joins. Failures
    /// report the lowest-id witness pair.
    pub fn from_order<I>(size: usize, leq: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if size == 0 {
            return Err(Error::BadParams(
                "a lattice needs at least one element".into(),
            ));
        }
        if size > DENSE_LIMIT {
            return Err(Error::SizeLimit {
                what: "dense lattice",
                value: size,
                limit: DENSE_LIMIT,
            });
        }
        let mut up: Vec<FixedBitSet> = (0..size)
            .map(|x| {
                let mut row = FixedBitSet::with_capacity(size);
                row.insert(x);
                row
            })
            .collect();
        for (x, y) in leq {
            if x >= size {
                return Err(Error::OutOfRange(x, size));
            }
            if y >= size {
                return Err(Error::OutOfRange(y, size));
            }
            up[x].insert(y);
        }
        // Warshall on bit rows
        for k in 0..size {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_up_sets(size, up)
    }

    /// Builds a lattice from a predicate `leq(x, y)` that is already a partial order.
    pub fn from_leq_fn(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (0..size)
            .flat_map(|x| (0..size).map(move |y| (x, y)))
            .filter(|&(x, y)| leq(x, y))
            .collect();
        Self::from_order(size, pairs)
    }

    fn from_up_sets(size: usize, up: Vec<FixedBitSet>) -> Result<Self> {
        for x in 0..size {
            for y in up[x].ones() {
                if y > x && up[y].contains(x) {
                    return Err(Error::NotAPoset(x, y));
                }
            }
        }
        let mut down: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(size); size];
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        let down_count: Vec<u32> = down.iter().map(|d| d.count_ones(..) as u32).collect();
        let up_count: Vec<u32> = up.iter().map(|u| u.count_ones(..) as u32).collect();

        // bounds of a pair: the common lower (upper) bound with the largest
        // down-set (up-set) is the only candidate for the meet (join)
        let bound = |rows: &[FixedBitSet], counts: &[u32], x: usize, y: usize| -> Option<usize> {
            let mut best = None;
            let mut best_count = 0;
            let mut common = 0u32;
            for z in rows[x].intersection(&rows[y]) {
                common += 1;
                if best.is_none() || counts[z] > best_count {
                    best = Some(z);
                    best_count = counts[z];
                }
            }
            best.filter(|_| best_count == common)
        };

        let with_tables = size <= TABLE_LIMIT;
        let mut tables = with_tables.then(|| Tables {
            meet: vec![0; size * size],
            join: vec![0; size * size],
        });
        for x in 0..size {
            for y in x..size {
                let m = bound(&down, &down_count, x, y).ok_or(Error::NotALattice(x, y, "meet"))?;
                let j = bound(&up, &up_count, x, y).ok_or(Error::NotALattice(x, y, "join"))?;
                if let Some(t) = tables.as_mut() {
                    t.meet[x * size + y] = m as u16;
                    t.meet[y * size + x] = m as u16;
                    t.join[x * size + y] = j as u16;
                    t.join[y * size + x] = j as u16;
                }
            }
        }
        let order = Order::Dense {
            up,
            down,
            down_count,
        };
        Ok(Self::finish(size, order, None, tables))
    }

    /// Lattice of pair sets under inclusion, checking closure under the
    /// family's meet and join. Ids follow the order of `sets`.
    pub fn from_pair_sets(sets: Vec<PairSet>, meet: SetMeet) -> Result<Self> {
        let Some(first) = sets.first() else {
            return Err(Error::BadParams(
                "a lattice needs at least one element".into(),
            ));
        };
        let n = first.n();
        let index: HashMap<&PairSet, usize> =
            sets.iter().enumerate().map(|(k, s)| (s, k)).collect();
        if let Some(bad) = sets.iter().position(|s| s.n() != n) {
            return Err(Error::BadParams(format!(
                "set {bad} has a different ground size"
            )));
        }
        if index.len() != sets.len() {
            return Err(Error::BadParams("repeated set".into()));
        }
        for (x, sx) in sets.iter().enumerate() {
            for (y, sy) in sets.iter().enumerate().skip(x) {
                let m = match meet {
                    SetMeet::Interior => sx.intersection(sy).interior(),
                    SetMeet::Intersection => sx.intersection(sy),
                };
                if !index.contains_key(&m) {
                    return Err(Error::NotALattice(x, y, "meet"));
                }
                if !index.contains_key(&sx.union(sy).closure()) {
                    return Err(Error::NotALattice(x, y, "join"));
                }
            }
        }
        let gens = sets.clone();
        Ok(Self::from_sets(sets, meet, &gens))
    }

    /// Lattice of pair sets ordered by inclusion.
    ///
    /// `sets` must already be closed under the family's meet and join, and
    /// `generators` must join-generate it (every element is a join of
    /// generators). Neither condition is re-verified here.
    pub(crate) fn from_sets(sets: Vec<PairSet>, meet: SetMeet, generators: &[PairSet]) -> Self {
        let size = sets.len();
        let index: HashMap<PairSet, usize> = sets
            .iter()
            .enumerate()
            .map(|(k, s)| (s.clone(), k))
            .collect();
        let gen_ids: Vec<usize> = generators.iter().map(|g| index[g]).collect();
        // upper covers of x are the minimal elements among the x ∨ g
        let mut upper = vec![Vec::new(); size];
        for (x, sx) in sets.iter().enumerate() {
            let mut cands: Vec<usize> = gen_ids
                .iter()
                .filter(|&&g| !sets[g].is_subset(sx))
                .map(|&g| index[&sx.union(&sets[g]).closure()])
                .collect();
            cands.sort_unstable_by_key(|&c| (sets[c].len(), c));
            cands.dedup();
            let mut covers: Vec<usize> = Vec::new();
            for c in cands {
                if !covers.iter().any(|&k| sets[k].is_subset(&sets[c])) {
                    covers.push(c);
                }
            }
            covers.sort_unstable();
            upper[x] = covers;
        }
        let order = Order::Sets { sets, index, meet };
        let mut lattice = Self::finish(size, order, Some(upper), None);
        if size <= TABLE_LIMIT {
            let mut t = Tables {
                meet: vec![0; size * size],
                join: vec![0; size * size],
            };
            for x in 0..size {
                for y in 0..size {
                    t.meet[x * size + y] = lattice.meet(x, y) as u16;
                    t.join[x * size + y] = lattice.join(x, y) as u16;
                }
            }
            lattice.tables = Some(t);
        }
        lattice
    }

    fn finish(
        size: usize,
        order: Order,
        upper: Option<Vec<Vec<usize>>>,
        tables: Option<Tables>,
    ) -> Self {
        let mut lattice = FiniteLattice {
            size,
            names: (0..size).map(|k| k.to_string()).collect(),
            order,
            lower: Vec::new(),
            upper: Vec::new(),
            bottom: 0,
            top: 0,
            ji: Vec::new(),
            mi: Vec::new(),
            tables,
        };
        let upper = upper.unwrap_or_else(|| lattice.compute_upper_covers());
        let mut lower = vec![Vec::new(); size];
        for (x, ups) in upper.iter().enumerate() {
            for &y in ups {
                lower[y].push(x);
            }
        }
        lattice.bottom = (0..size).find(|&x| lower[x].is_empty()).unwrap_or(0);
        lattice.top = (0..size).find(|&x| upper[x].is_empty()).unwrap_or(0);
        lattice.ji = (0..size).filter(|&x| lower[x].len() == 1).collect();
        lattice.mi = (0..size).filter(|&x| upper[x].len() == 1).collect();
        lattice.lower = lower;
        lattice.upper = upper;
        lattice
    }

    fn compute_upper_covers(&self) -> Vec<Vec<usize>> {
        let Order::Dense { up, down_count, .. } = &self.order else {
            unreachable!("set lattices supply their covers")
        };
        (0..self.size)
            .map(|x| {
                // y covers x iff x < y and the only element of [x, y] besides y is x
                let mut strictly_above: Vec<usize> = up[x].ones().filter(|&y| y != x).collect();
                strictly_above.sort_unstable_by_key(|&y| (down_count[y], y));
                let mut covers: Vec<usize> = Vec::new();
                for y in strictly_above {
                    if !covers.iter().any(|&c| up[c].contains(y)) {
                        covers.push(y);
                    }
                }
                covers.sort_unstable();
                covers
            })
            .collect()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.size);
        self.names = names;
        self
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn id_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        match &self.order {
            Order::Dense { up, .. } => up[x].contains(y),
            Order::Sets { sets, .. } => sets[x].is_subset(&sets[y]),
        }
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        if let Some(t) = &self.tables {
            return t.meet[x * self.size + y] as usize;
        }
        match &self.order {
            Order::Dense {
                down, down_count, ..
            } => down[x]
                .intersection(&down[y])
                .max_by_key(|&z| down_count[z])
                .expect("lattice invariant: meets exist"),
            Order::Sets { sets, index, meet } => {
                let m = sets[x].intersection(&sets[y]);
                let m = match meet {
                    SetMeet::Interior => m.interior(),
                    SetMeet::Intersection => m,
                };
                index[&m]
            }
        }
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        if let Some(t) = &self.tables {
            return t.join[x * self.size + y] as usize;
        }
        match &self.order {
            Order::Dense { up, down_count, .. } => up[x]
                .intersection(&up[y])
                .min_by_key(|&z| down_count[z])
                .expect("lattice invariant: joins exist"),
            Order::Sets { sets, index, .. } => index[&sets[x].union(&sets[y]).closure()],
        }
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    /// `p_*` when `p` has a unique lower cover.
    pub fn lower_cover(&self, p: usize) -> Option<usize> {
        match self.lower[p].as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    /// `p^*` when `p` has a unique upper cover.
    pub fn upper_cover(&self, p: usize) -> Option<usize> {
        match self.upper[p].as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    pub fn join_irreducibles(&self) -> &[usize] {
        &self.ji
    }

    pub fn meet_irreducibles(&self) -> &[usize] {
        &self.mi
    }

    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.lower[x].len() == 1
    }

    pub fn is_meet_irreducible(&self, x: usize) -> bool {
        self.upper[x].len() == 1
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// The pair set behind element `x`, for set lattices.
    pub fn set(&self, x: usize) -> Option<&PairSet> {
        match &self.order {
            Order::Sets { sets, .. } => Some(&sets[x]),
            Order::Dense { .. } => None,
        }
    }

    pub fn sets(&self) -> Option<&[PairSet]> {
        match &self.order {
            Order::Sets { sets, .. } => Some(sets),
            Order::Dense { .. } => None,
        }
    }

    pub fn id_of_set(&self, s: &PairSet) -> Option<usize> {
        match &self.order {
            Order::Sets { index, .. } => index.get(s).copied(),
            Order::Dense { .. } => None,
        }
    }

    /// The meet rule of a set lattice.
    pub fn set_meet(&self) -> Option<SetMeet> {
        match &self.order {
            Order::Sets { meet, .. } => Some(*meet),
            Order::Dense { .. } => None,
        }
    }

    pub fn is_set_lattice(&self) -> bool {
        matches!(self.order, Order::Sets { .. })
    }

    /// All cover pairs `(lower, upper)` sorted by lower id.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.upper
            .iter()
            .enumerate()
            .flat_map(|(x, ups)| ups.iter().map(move |&y| (x, y)))
            .collect()
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.size];
        for x in self.linear_extension() {
            for &y in &self.upper[x] {
                h[y] = h[y].max(h[x] + 1);
            }
        }
        h
    }

    /// Element ids sorted so that `x < y` implies `x` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut indeg: Vec<usize> = self.lower.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..self.size).filter(|&x| indeg[x] == 0).collect();
        ready.reverse();
        let mut out = Vec::with_capacity(self.size);
        while let Some(x) = ready.pop() {
            out.push(x);
            for &y in self.upper[x].iter().rev() {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.push(y);
                }
            }
        }
        out
    }

    /// Copy with a dense order matrix, dropping any set labels.
    pub fn to_dense(&self) -> Result<FiniteLattice> {
        let pairs = self.cover_pairs();
        Ok(FiniteLattice::from_order(self.size, pairs)?.with_names(self.names.clone()))
    }

    pub fn into_arc(self) -> Arc<FiniteLattice> {
        Arc::new(self)
    }
}
