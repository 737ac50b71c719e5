//! Shared fixtures for the criterion benches.

use std::sync::Arc;

use latticeforge_core::bmn::build_bmn;
use latticeforge_core::cambrian::{build_cambrian, CambrianSpec};
use latticeforge_core::FiniteLattice;

pub fn tamari(n: usize) -> FiniteLattice {
    build_cambrian(&CambrianSpec::tamari(n)).expect("tamari builds")
}

pub fn cambrian(n: usize, u: &[usize]) -> FiniteLattice {
    build_cambrian(&CambrianSpec::new(n, u).expect("valid U")).expect("cambrian builds")
}

pub fn bmn(m: usize, n: usize) -> Arc<FiniteLattice> {
    build_bmn(m, n).expect("B(m,n) builds").lattice
}
