//! Lattice operations over arbitrary element types, so that term evaluation
//! and sublattice generation can run on pair sets without materializing the
//! ambient lattice.

use std::fmt::Debug;
use std::hash::Hash;

use crate::lattice::{FiniteLattice, SetMeet};
use crate::pairset::PairSet;

pub trait LatticeOps: Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
}

impl LatticeOps for FiniteLattice {
    type Elem = usize;

    fn meet(&self, x: &usize, y: &usize) -> usize {
        FiniteLattice::meet(self, *x, *y)
    }

    fn join(&self, x: &usize, y: &usize) -> usize {
        FiniteLattice::join(self, *x, *y)
    }

    fn leq(&self, x: &usize, y: &usize) -> bool {
        FiniteLattice::leq(self, *x, *y)
    }
}

/// `P(n)` (interior meets) or any `A_U(n)` (plain intersections) as pure
/// set algebra. Inputs are assumed to be elements of the intended lattice.
#[derive(Clone, Copy, Debug)]
pub struct PairSetAlgebra {
    pub n: usize,
    pub meet: SetMeet,
}

impl PairSetAlgebra {
    pub fn permutohedron(n: usize) -> Self {
        PairSetAlgebra {
            n,
            meet: SetMeet::Interior,
        }
    }

    pub fn cambrian(n: usize) -> Self {
        PairSetAlgebra {
            n,
            meet: SetMeet::Intersection,
        }
    }

    pub fn bottom(&self) -> PairSet {
        PairSet::empty(self.n)
    }

    pub fn top(&self) -> PairSet {
        PairSet::full(self.n)
    }
}

impl LatticeOps for PairSetAlgebra {
    type Elem = PairSet;

    fn meet(&self, x: &PairSet, y: &PairSet) -> PairSet {
        let m = x.intersection(y);
        match self.meet {
            SetMeet::Interior => m.interior(),
            SetMeet::Intersection => m,
        }
    }

    fn join(&self, x: &PairSet, y: &PairSet) -> PairSet {
        x.union(y).closure()
    }

    fn leq(&self, x: &PairSet, y: &PairSet) -> bool {
        x.is_subset(y)
    }
}
