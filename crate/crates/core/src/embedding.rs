//! Exhaustive search for lattice embeddings `K ↪ L` over generator images.
//!
//! Every element of `K` gets a fixed term over the generators (the first way
//! the sublattice closure reaches it), so a choice of generator images
//! determines the whole candidate map. Candidates are pruned on the partial
//! map defined on generators and their pairwise meets and joins, which must
//! already be a well-defined order embedding.

use std::sync::Arc;

use rayon::prelude::*;

use crate::bmn::BmnLattice;
use crate::cambrian::{build_cambrian, CambrianSpec};
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, LatticeMap};

pub const DEFAULT_SEARCH_BUDGET: u128 = 10_000_000_000;

#[derive(Clone, Copy, Debug)]
enum Step {
    Gen(usize),
    Meet(usize, usize),
    Join(usize, usize),
}

/// Elements of `K` in discovery order, each with the step producing it from
/// earlier entries.
struct Plan {
    order: Vec<usize>,
    steps: Vec<Step>,
}

fn plan(k: &FiniteLattice, gens: &[usize]) -> Result<Plan> {
    let mut pos = vec![usize::MAX; k.len()];
    let mut order = Vec::new();
    let mut steps = Vec::new();
    for (g, &x) in gens.iter().enumerate() {
        if x >= k.len() {
            return Err(Error::OutOfRange(x, k.len()));
        }
        if pos[x] != usize::MAX {
            return Err(Error::BadParams(format!("generator {x} listed twice")));
        }
        pos[x] = order.len();
        order.push(x);
        steps.push(Step::Gen(g));
    }
    let mut i = 0;
    while i < order.len() {
        for j in 0..=i {
            let (x, y) = (order[i], order[j]);
            for (z, step) in [
                (k.meet(x, y), Step::Meet(j, i)),
                (k.join(x, y), Step::Join(j, i)),
            ] {
                if pos[z] == usize::MAX {
                    pos[z] = order.len();
                    order.push(z);
                    steps.push(step);
                }
            }
        }
        i += 1;
    }
    if order.len() != k.len() {
        return Err(Error::GeneratorsDontGenerate);
    }
    Ok(Plan { order, steps })
}

/// `Ji(K)`, plus the bottom when no meet of join-irreducibles reaches it.
pub fn default_generators(k: &FiniteLattice) -> Vec<usize> {
    let mut gens = k.join_irreducibles().to_vec();
    if plan(k, &gens).is_err() {
        gens.insert(0, k.bottom());
    }
    gens
}

/// [`default_generators`] with redundant members dropped greedily, last
/// first. Fewer generators shrink the search space from `|L|^g`.
pub fn irredundant_generators(k: &FiniteLattice) -> Vec<usize> {
    let mut gens = default_generators(k);
    for i in (0..gens.len()).rev() {
        let mut fewer = gens.clone();
        fewer.remove(i);
        if !fewer.is_empty() && plan(k, &fewer).is_ok() {
            gens = fewer;
        }
    }
    gens
}

/// The atoms of `B(m, n)`, with `p` added when `n ≤ 1`: for `n ≥ 2`,
/// `p = ⋀_j (a_1 ∨ ... ∨ a_m ∨ b_j)`.
pub fn bmn_generators(b: &BmnLattice) -> Vec<usize> {
    let mut gens = b.atom_ids();
    if b.n <= 1 {
        gens.push(b.p());
    }
    gens
}

struct Search<'a> {
    k: &'a FiniteLattice,
    l: &'a FiniteLattice,
    gens: &'a [usize],
    plan: &'a Plan,
}

impl Search<'_> {
    /// Adds `(kx, lx)` to the partial map unless it breaks well-definedness,
    /// injectivity, or order reflection.
    fn push(&self, known: &mut Vec<(usize, usize)>, kx: usize, lx: usize) -> bool {
        let (k, l) = (self.k, self.l);
        for &(ky, ly) in known.iter() {
            if (kx == ky) != (lx == ly)
                || k.leq(kx, ky) != l.leq(lx, ly)
                || k.leq(ky, kx) != l.leq(ly, lx)
            {
                return false;
            }
        }
        known.push((kx, lx));
        true
    }

    fn extend(
        &self,
        images: &mut Vec<usize>,
        known: &mut Vec<(usize, usize)>,
    ) -> Option<Vec<usize>> {
        let t = images.len();
        if t == self.gens.len() {
            return self.complete(images);
        }
        let (k, l) = (self.k, self.l);
        let g = self.gens[t];
        for h in l.elements() {
            let mark = known.len();
            let mut ok = self.push(known, g, h);
            for i in 0..t {
                if !ok {
                    break;
                }
                let (gi, hi) = (self.gens[i], images[i]);
                ok = self.push(known, k.meet(g, gi), l.meet(h, hi))
                    && self.push(known, k.join(g, gi), l.join(h, hi));
            }
            if ok {
                images.push(h);
                let found = self.extend(images, known);
                images.pop();
                if found.is_some() {
                    return found;
                }
            }
            known.truncate(mark);
        }
        None
    }

    fn complete(&self, gen_images: &[usize]) -> Option<Vec<usize>> {
        let l = self.l;
        let mut by_pos = Vec::with_capacity(self.plan.order.len());
        for step in &self.plan.steps {
            by_pos.push(match *step {
                Step::Gen(g) => gen_images[g],
                Step::Meet(i, j) => l.meet(by_pos[i], by_pos[j]),
                Step::Join(i, j) => l.join(by_pos[i], by_pos[j]),
            });
        }
        let mut images = vec![0; self.k.len()];
        for (p, &x) in self.plan.order.iter().enumerate() {
            images[x] = by_pos[p];
        }
        let (k, f) = (self.k, &images);
        let hom = k.elements().all(|x| {
            (x + 1..k.len()).all(|y| {
                f[k.meet(x, y)] == l.meet(f[x], f[y]) && f[k.join(x, y)] == l.join(f[x], f[y])
            })
        });
        let mut seen = vec![false; l.len()];
        let injective = images
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true));
        (hom && injective).then_some(images)
    }
}

/// The lexicographically least embedding `K ↪ L` by generator images, if any.
pub fn generator_embedding_search(
    k: &Arc<FiniteLattice>,
    l: &Arc<FiniteLattice>,
    gens: &[usize],
) -> Result<Option<LatticeMap>> {
    generator_embedding_search_with_budget(k, l, gens, DEFAULT_SEARCH_BUDGET)
}

pub fn generator_embedding_search_with_budget(
    k: &Arc<FiniteLattice>,
    l: &Arc<FiniteLattice>,
    gens: &[usize],
    budget: u128,
) -> Result<Option<LatticeMap>> {
    let plan = plan(k, gens)?;
    let needed = (l.len() as u128)
        .checked_pow(gens.len() as u32)
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    if k.len() > l.len() {
        return Ok(None);
    }
    let search = Search {
        k,
        l,
        gens,
        plan: &plan,
    };
    let found = if gens.is_empty() {
        search.complete(&[])
    } else {
        // one shard per image of the first generator; the first shard with a
        // hit holds the lexicographically least tuple
        l.elements().into_par_iter().find_map_first(|h| {
            let mut known = Vec::new();
            if !search.push(&mut known, gens[0], h) {
                return None;
            }
            search.extend(&mut vec![h], &mut known)
        })
    };
    found
        .map(|images| LatticeMap::new(k.clone(), l.clone(), images))
        .transpose()
}

/// Searches every `A_U(n)` in mask order. `K` must be subdirectly
/// irreducible, so that `None` rules out embeddings into `P(n)`.
pub fn si_embedding_scan(
    k: &Arc<FiniteLattice>,
    gens: &[usize],
    n: usize,
) -> Result<Option<(CambrianSpec, LatticeMap)>> {
    if k.len() < 2 || !k.is_subdirectly_irreducible()? {
        return Err(Error::BadParams(
            "source is not subdirectly irreducible".into(),
        ));
    }
    for spec in CambrianSpec::all(n) {
        let l = Arc::new(build_cambrian(&spec)?);
        if let Some(map) = generator_embedding_search(k, &l, gens)? {
            return Ok(Some((spec, map)));
        }
    }
    Ok(None)
}
