//! Subsets of `J_n = {(i, j) : 1 <= i < j <= n}` stored as bit vectors.
//!
//! Pairs are indexed lexicographically: `(1,2), (1,3), ..., (1,n), (2,3), ...`.
//! That layout is also the order used when a set is serialized.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};

pub const MAX_N: usize = 64;

type Words = SmallVec<[u64; 2]>;

/// Adjacency rows: bit `j - 1` of `rows[i - 1]` is set iff `(i, j)` is present.
pub type Rows = [u64; MAX_N];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairSet {
    n: u8,
    bits: Words,
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn row_offset(n: usize, i: usize) -> usize {
    (i - 1) * n - (i - 1) * i / 2
}

impl PairSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_N, "PairSet supports n <= {MAX_N}");
        let words = pair_count(n).div_ceil(64);
        PairSet {
            n: n as u8,
            bits: smallvec![0; words],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        let total = pair_count(n);
        for (w, word) in s.bits.iter_mut().enumerate() {
            let remaining = total - w * 64;
            *word = if remaining >= 64 {
                !0
            } else {
                (1u64 << remaining) - 1
            };
        }
        s
    }

    /// Builds a set from 1-based pairs. Panics on a pair outside `J_n`.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut s = Self::empty(n);
        for (i, j) in pairs {
            s.insert(i, j);
        }
        s
    }

    pub fn try_from_pairs<I: IntoIterator<Item = (usize, usize)>>(
        n: usize,
        pairs: I,
    ) -> Option<Self> {
        if n > MAX_N {
            return None;
        }
        let mut s = Self::empty(n);
        for (i, j) in pairs {
            if !(1 <= i && i < j && j <= n) {
                return None;
            }
            s.insert(i, j);
        }
        Some(s)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    fn index(&self, i: usize, j: usize) -> usize {
        let n = self.n();
        assert!(1 <= i && i < j && j <= n, "({i}, {j}) is not in J_{n}");
        row_offset(n, i) + (j - i - 1)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        if !(1 <= i && i < j && j <= self.n()) {
            return false;
        }
        let k = self.index(i, j);
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        let k = self.index(i, j);
        self.bits[k / 64] |= 1 << (k % 64);
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        let k = self.index(i, j);
        self.bits[k / 64] &= !(1 << (k % 64));
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Raw words in canonical pair order; used as a deterministic sort key.
    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.n, other.n, "pair sets over different ground sets");
        PairSet {
            n: self.n,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    /// `J_n \ self`.
    pub fn complement(&self) -> Self {
        Self::full(self.n()).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.n == other.n
            && self
                .bits
                .iter()
                .zip(&other.bits)
                .all(|(&a, &b)| a & !b == 0)
    }

    fn get_segment(&self, start: usize, len: usize) -> u64 {
        if len == 0 {
            return 0;
        }
        let (w, off) = (start / 64, start % 64);
        let mut v = self.bits[w] >> off;
        if off + len > 64 {
            v |= self.bits[w + 1] << (64 - off);
        }
        if len < 64 {
            v &= (1u64 << len) - 1;
        }
        v
    }

    fn set_segment(&mut self, start: usize, len: usize, value: u64) {
        if len == 0 {
            return;
        }
        let (w, off) = (start / 64, start % 64);
        let mask = if len < 64 { (1u64 << len) - 1 } else { !0 };
        let value = value & mask;
        self.bits[w] = (self.bits[w] & !(mask << off)) | (value << off);
        if off + len > 64 {
            let spill = 64 - off;
            let hi_mask = mask >> spill;
            self.bits[w + 1] = (self.bits[w + 1] & !hi_mask) | (value >> spill);
        }
    }

    pub fn to_rows(&self) -> Rows {
        let n = self.n();
        let mut rows = [0u64; MAX_N];
        for i in 1..n {
            // bits i..n-1 of the row hold j = i+1..n
            rows[i - 1] = self.get_segment(row_offset(n, i), n - i) << i;
        }
        rows
    }

    pub fn from_rows(n: usize, rows: &Rows) -> Self {
        let mut s = Self::empty(n);
        for i in 1..n {
            s.set_segment(row_offset(n, i), n - i, rows[i - 1] >> i);
        }
        s
    }

    /// Transitive closure.
    pub fn closure(&self) -> Self {
        let n = self.n();
        let mut rows = self.to_rows();
        close_rows(n, &mut rows);
        Self::from_rows(n, &rows)
    }

    /// Largest open subset: the complement of the closure of the complement.
    pub fn interior(&self) -> Self {
        self.complement().closure().complement()
    }

    pub fn is_closed(&self) -> bool {
        let n = self.n();
        let rows = self.to_rows();
        (0..n).all(|i| {
            let mut succ = rows[i];
            while succ != 0 {
                let j = succ.trailing_zeros() as usize;
                succ &= succ - 1;
                if rows[j] & !rows[i] != 0 {
                    return false;
                }
            }
            true
        })
    }

    pub fn is_open(&self) -> bool {
        self.complement().is_closed()
    }

    pub fn is_clopen(&self) -> bool {
        self.is_closed() && self.is_open()
    }

    /// Pairs in canonical (lexicographic) order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let rows = self.to_rows();
        let mut out = Vec::with_capacity(self.len());
        for (i, &row) in rows.iter().enumerate().take(self.n()) {
            let mut r = row;
            while r != 0 {
                let j = r.trailing_zeros() as usize;
                r &= r - 1;
                out.push((i + 1, j + 1));
            }
        }
        out
    }

    /// Relabels every index by `+ offset` into a ground set of size `new_n`.
    pub fn shifted(&self, offset: usize, new_n: usize) -> Self {
        assert!(self.n() + offset <= new_n);
        Self::from_pairs(
            new_n,
            self.pairs()
                .into_iter()
                .map(|(i, j)| (i + offset, j + offset)),
        )
    }
}

/// In-place transitive closure of a relation with `i < j` only.
pub(crate) fn close_rows(n: usize, rows: &mut Rows) {
    for i in (0..n).rev() {
        let mut succ = rows[i];
        let mut acc = rows[i];
        while succ != 0 {
            let j = succ.trailing_zeros() as usize;
            succ &= succ - 1;
            acc |= rows[j];
        }
        rows[i] = acc;
    }
}

/// A deterministic total order (by ground set, then bit words); not inclusion.
impl Ord for PairSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.bits[..]).cmp(&(other.n, &other.bits[..]))
    }
}

impl PartialOrd for PairSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, j)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({i},{j})")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for PairSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = self.pairs().into_iter().map(|(i, j)| [i, j]).collect();
        pairs.serialize(s)
    }
}

/// Serialized form carries no `n`; callers attach it via [`PairSet::try_from_pairs`].
#[derive(Serialize, Deserialize)]
#[serde(transparent)]
pub struct RawPairs(pub Vec<[usize; 2]>);

impl RawPairs {
    pub fn into_pairset(self, n: usize) -> Option<PairSet> {
        PairSet::try_from_pairs(n, self.0.into_iter().map(|[i, j]| (i, j)))
    }
}
