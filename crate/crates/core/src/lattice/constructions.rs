use super::FiniteLattice;
use crate::error::{Error, Result};

/// The chain `0 < 1 < ... < k-1`.
pub fn chain(k: usize) -> FiniteLattice {
    FiniteLattice::from_order(k, (1..k).map(|x| (x - 1, x))).expect("chains are lattices")
}

/// Boolean lattice on `atoms` atoms; element ids are the subset bitmasks.
pub fn boolean(atoms: usize) -> FiniteLattice {
    let size = 1usize << atoms;
    let covers = (0..size).flat_map(|x| {
        (0..atoms)
            .filter(move |b| x >> b & 1 == 0)
            .map(move |b| (x, x | 1 << b))
    });
    FiniteLattice::from_order(size, covers.collect::<Vec<_>>())
        .expect("boolean lattices are lattices")
}

/// `N5` with `0 < a < b < 1` and `0 < c < 1`.
pub fn n5() -> FiniteLattice {
    FiniteLattice::from_order(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
        .expect("N5 is a lattice")
        .with_names(["0", "a", "b", "c", "1"].map(String::from).to_vec())
}

/// `M3` with atoms `x, y, z`.
pub fn m3() -> FiniteLattice {
    FiniteLattice::from_order(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
        .expect("M3 is a lattice")
        .with_names(["0", "x", "y", "z", "1"].map(String::from).to_vec())
}

impl FiniteLattice {
    /// The order-reversed lattice on the same element ids.
    pub fn dual(&self) -> Result<FiniteLattice> {
        let pairs: Vec<(usize, usize)> = self
            .cover_pairs()
            .into_iter()
            .map(|(x, y)| (y, x))
            .collect();
        Ok(FiniteLattice::from_order(self.len(), pairs)?.with_names(self.names().to_vec()))
    }

    /// Componentwise product; `(x, y)` gets id `x * other.len() + y`.
    pub fn product(&self, other: &FiniteLattice) -> Result<FiniteLattice> {
        let (n1, n2) = (self.len(), other.len());
        let mut pairs = Vec::new();
        for x in 0..n1 {
            for y in 0..n2 {
                for &x2 in self.upper_covers(x) {
                    pairs.push((x * n2 + y, x2 * n2 + y));
                }
                for &y2 in other.upper_covers(y) {
                    pairs.push((x * n2 + y, x * n2 + y2));
                }
            }
        }
        let names = (0..n1)
            .flat_map(|x| (0..n2).map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", self.name(x), other.name(y)))
            .collect();
        Ok(FiniteLattice::from_order(n1 * n2, pairs)?.with_names(names))
    }

    /// Doubles the interval `[a, b]`: each `x` in it becomes `x.0 < x.1`.
    ///
    /// Returns the new lattice together with, for each old element, its new
    /// id (the lower copy for doubled elements).
    pub fn double_interval(&self, a: usize, b: usize) -> Result<(FiniteLattice, Vec<usize>)> {
        for x in [a, b] {
            if x >= self.len() {
                return Err(Error::OutOfRange(x, self.len()));
            }
        }
        if !self.leq(a, b) {
            return Err(Error::BadInterval(a, b));
        }
        let inside = |x: usize| self.leq(a, x) && self.leq(x, b);
        // (old element, copy) in id order
        let mut elems: Vec<(usize, u8)> = Vec::new();
        let mut new_id = vec![0; self.len()];
        for x in self.elements() {
            new_id[x] = elems.len();
            elems.push((x, 0));
            if inside(x) {
                elems.push((x, 1));
            }
        }
        let leq = |u: usize, v: usize| {
            let (x, i) = elems[u];
            let (y, j) = elems[v];
            self.leq(x, y) && (!inside(x) || !inside(y) || i <= j)
        };
        let names = elems
            .iter()
            .map(|&(x, i)| {
                if inside(x) {
                    format!("{}.{}", self.name(x), i)
                } else {
                    self.name(x).to_string()
                }
            })
            .collect();
        let doubled = FiniteLattice::from_leq_fn(elems.len(), leq)?.with_names(names);
        Ok((doubled, new_id))
    }
}
