//! Lattice terms and identities, exhaustive checking, the Gazpacho family and
//! the named identities used against Tamari and Cambrian lattices.

mod check;
mod gazpacho;
mod named;
mod term;
mod witness;

use serde::Serialize;

pub use check::{holds, holds_with_budget, scan_cost, Counterexample, Verdict, DEFAULT_BUDGET};
pub use gazpacho::{gazpacho, gazpacho_with_budget, GazpachoIndex, DEFAULT_BRANCH_BUDGET};
pub use named::{by_name, splitting_b33, veg1, veg2};
pub use term::{Identity, Relation, Term};
pub use witness::{eval_witness_12, eval_witness_12_for, Witness12, WITNESS_NAMES};

use crate::cambrian::{build_cambrian, CambrianSpec};
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct FamilyEntry {
    pub index: String,
    pub n: usize,
    pub verdict: Verdict,
}

/// `Gzp(1,1)` and `Gzp(2,1)` on `A(n)` for `n <= n_max` (capped at 5), plus
/// `Gzp(2,2)` and `Gzp(1,1,1)` on `A(4)` when `n_max >= 4`.
pub fn check_gazpacho_family(
    n_max: usize,
    budget: u128,
    parallel: bool,
) -> Result<Vec<FamilyEntry>> {
    let mut jobs: Vec<(Vec<usize>, usize)> = Vec::new();
    for m in [vec![1, 1], vec![2, 1]] {
        for n in 1..=n_max.min(5) {
            jobs.push((m.clone(), n));
        }
    }
    if n_max >= 4 {
        jobs.push((vec![2, 2], 4));
        jobs.push((vec![1, 1, 1], 4));
    }
    jobs.into_iter()
        .map(|(m, n)| {
            let index = GazpachoIndex::new(m)?;
            let id = gazpacho(&index)?;
            let a = build_cambrian(&CambrianSpec::tamari(n))?;
            let verdict = holds_with_budget(&a, &id, parallel, budget)?;
            Ok(FamilyEntry {
                index: index.to_string(),
                n,
                verdict,
            })
        })
        .collect()
}
