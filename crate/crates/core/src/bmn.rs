//! `B(m, n)`: the `(m + n)`-atom Boolean lattice with the join of the first
//! `m` atoms doubled.
//!
//! Ids `0 .. 2^(m+n)` are atom bitmasks (`a_i` is bit `i - 1`, `b_j` is bit
//! `m + j - 1`); the extra element `p` has id `2^(m+n)`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{boolean, FiniteLattice, LatticeMap};

/// Largest `m + n` accepted by [`build_bmn`].
pub const MAX_ATOMS: usize = 12;
/// Largest `m + n` for which [`build_bmn`] re-derives the lattice by doubling.
pub const VALIDATE_ATOMS: usize = 8;

#[derive(Clone, Debug)]
pub struct BmnLattice {
    pub m: usize,
    pub n: usize,
    pub lattice: Arc<FiniteLattice>,
}

impl BmnLattice {
    pub fn atoms(&self) -> usize {
        self.m + self.n
    }

    pub fn a(&self, i: usize) -> usize {
        assert!((1..=self.m).contains(&i));
        1 << (i - 1)
    }

    pub fn b(&self, j: usize) -> usize {
        assert!((1..=self.n).contains(&j));
        1 << (self.m + j - 1)
    }

    pub fn p(&self) -> usize {
        1 << self.atoms()
    }

    /// `a = a_1 ∨ ... ∨ a_m`, the doubled element.
    pub fn a_join(&self) -> usize {
        (1 << self.m) - 1
    }

    pub fn b_join(&self) -> usize {
        ((1 << self.n) - 1) << self.m
    }

    /// `a_1, ..., a_m, b_1, ..., b_n`.
    pub fn atom_ids(&self) -> Vec<usize> {
        (0..self.atoms()).map(|k| 1 << k).collect()
    }

    /// Compares against `boolean(m + n).double_interval(a, a)` through the
    /// id correspondence, without search.
    pub fn validate_against_doubling(&self) -> Result<bool> {
        let base = boolean(self.atoms());
        let a = self.a_join();
        let (doubled, new_id) = base.double_interval(a, a)?;
        let images = self
            .lattice
            .elements()
            .map(|x| {
                if x == self.p() {
                    new_id[a] + 1
                } else {
                    new_id[x]
                }
            })
            .collect();
        let map = LatticeMap::new(self.lattice.clone(), Arc::new(doubled), images)?;
        Ok(map.is_isomorphism())
    }
}

fn label(m: usize, n: usize, z: usize) -> String {
    if z == 1 << (m + n) {
        return "p".into();
    }
    if z == 0 {
        return "0".into();
    }
    let parts: Vec<String> = (0..m + n)
        .filter(|&k| z >> k & 1 == 1)
        .map(|k| {
            if k < m {
                format!("a{}", k + 1)
            } else {
                format!("b{}", k - m + 1)
            }
        })
        .collect();
    parts.join("+")
}

pub fn build_bmn(m: usize, n: usize) -> Result<BmnLattice> {
    let atoms = m + n;
    if atoms > MAX_ATOMS {
        return Err(Error::SizeLimit {
            what: "B(m,n) atom count",
            value: atoms,
            limit: MAX_ATOMS,
        });
    }
    let p = 1usize << atoms;
    let a = (1usize << m) - 1;
    let leq = |x: usize, y: usize| match (x == p, y == p) {
        (true, true) => true,
        (false, true) => x & !a == 0,
        (true, false) => y & a == a && y != a,
        (false, false) => x & !y == 0,
    };
    let names = (0..=p).map(|z| label(m, n, z)).collect();
    let lattice = FiniteLattice::from_leq_fn(p + 1, leq)?.with_names(names);
    let b = BmnLattice {
        m,
        n,
        lattice: Arc::new(lattice),
    };
    if atoms <= VALIDATE_ATOMS {
        assert!(
            b.validate_against_doubling()?,
            "B({m},{n}) differs from the doubling construction"
        );
    }
    Ok(b)
}

/// The dual isomorphism `B(m, n) → B(n, m)`: `a ↦ q`, `p ↦ b`-set of `B(m,n)`
/// seen in `B(n, m)`, and complement elsewhere. The map targets `B(n, m)`
/// and is verified to be order-reversing.
pub fn bmn_dual_iso(m: usize, n: usize) -> Result<LatticeMap> {
    let src = build_bmn(m, n)?;
    let dst = build_bmn(n, m)?;
    let full = (1usize << (m + n)) - 1;
    // B(m,n) lists its a-atoms first; B(n,m) lists the same atoms last
    let rotate = |z: usize| (z >> m) | ((z & src.a_join()) << n);
    let images = src
        .lattice
        .elements()
        .map(|z| {
            if z == src.a_join() {
                dst.p()
            } else if z == src.p() {
                rotate(src.b_join())
            } else {
                full & !rotate(z)
            }
        })
        .collect();
    let map = LatticeMap::new(src.lattice.clone(), dst.lattice.clone(), images)?;
    if !map.is_dual_isomorphism() {
        return Err(Error::DualityViolated("B(m,n) to B(n,m)"));
    }
    Ok(map)
}

#[derive(Clone, Debug, Serialize)]
pub struct BmnReport {
    pub m: usize,
    pub n: usize,
    pub size: usize,
    pub join_irreducibles: usize,
    pub bounded: bool,
    pub semidistributive: bool,
    pub subdirectly_irreducible: bool,
    /// Minimal join-covers of `p`, by element name.
    pub p_covers: Vec<Vec<String>>,
}

pub fn bmn_structure_report(m: usize, n: usize) -> Result<BmnReport> {
    let b = build_bmn(m, n)?;
    let l = &b.lattice;
    let p_covers = l
        .minimal_join_covers(b.p())
        .into_iter()
        .map(|c| c.into_iter().map(|x| l.name(x).to_string()).collect())
        .collect();
    Ok(BmnReport {
        m,
        n,
        size: l.len(),
        join_irreducibles: l.join_irreducibles().len(),
        bounded: l.is_bounded(),
        semidistributive: l.is_semidistributive(),
        subdirectly_irreducible: l.len() > 1 && l.is_subdirectly_irreducible()?,
        p_covers,
    })
}
