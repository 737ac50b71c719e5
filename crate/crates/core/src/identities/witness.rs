use serde::Serialize;

use super::named::splitting_b33;
use super::term::Identity;
use crate::algebra::{LatticeOps, PairSetAlgebra};
use crate::cambrian::CambrianSpec;
use crate::pairset::PairSet;

const N: usize = 12;
const U: [usize; 5] = [5, 6, 9, 10, 11];

/// Generator names in assignment order.
pub const WITNESS_NAMES: [&str; 6] = ["a1", "a2", "a3", "b1", "b2", "b3"];

/// The join-irreducibles `⟨i, j⟩_U` whose joins form the six elements.
const PIECES: [&[(usize, usize)]; 6] = [
    &[(1, 5), (2, 3), (8, 12), (10, 11)],
    &[(3, 4), (5, 9)],
    &[(4, 8), (9, 10)],
    &[(1, 2)],
    &[(6, 7)],
    &[(11, 12)],
];

/// Chains `z_0 < ... < z_k` with the generator index for each step.
const SUBDIVISIONS: [(&[usize], &[usize]); 3] = [
    (&[1, 2, 3, 4, 8, 12], &[3, 0, 1, 2, 0]),
    (&[1, 5, 6, 7, 8, 12], &[0, 1, 4, 2, 0]),
    (&[1, 5, 9, 10, 11, 12], &[0, 1, 2, 0, 5]),
];

#[derive(Clone, Debug, Serialize)]
pub struct Witness12 {
    pub spec: CambrianSpec,
    pub elements: Vec<PairSet>,
    pub all_in_lattice: bool,
    pub lhs: PairSet,
    pub rhs: PairSet,
    pub pair_in_lhs: bool,
    pub pair_in_rhs: bool,
    /// Every step of each chain lies in its stated generator, and the chain
    /// therefore puts `(1, 12)` in `a1 ∨ a2 ∨ a3 ∨ b_j`.
    pub subdivisions_valid: [bool; 3],
}

impl Witness12 {
    pub fn refutes(&self) -> bool {
        self.all_in_lattice
            && self.pair_in_lhs
            && !self.pair_in_rhs
            && self.subdivisions_valid.iter().all(|&b| b)
    }
}

/// Evaluates the splitting identity at the fixed six elements of
/// `A_{5,6,9,10,11}(12)` using set algebra only.
pub fn eval_witness_12() -> Witness12 {
    eval_witness_12_for(&splitting_b33())
}

/// Same evaluation for any six-variable identity; used as a negative control.
pub fn eval_witness_12_for(id: &Identity) -> Witness12 {
    let spec = CambrianSpec::new(N, &U).expect("valid parameters");
    let alg = PairSetAlgebra::cambrian(N);
    let elements: Vec<PairSet> = PIECES
        .iter()
        .map(|ps| {
            ps.iter()
                .map(|&(i, j)| spec.ji_element(i, j))
                .fold(alg.bottom(), |acc, p| alg.join(&acc, &p))
        })
        .collect();
    let (lhs, rhs) = id.eval_sides(&alg, &elements).expect("six variables");
    let a_join = elements[..3]
        .iter()
        .fold(alg.bottom(), |acc, x| alg.join(&acc, x));
    let subdivisions_valid = SUBDIVISIONS.map(|(chain, gens)| {
        let steps_ok = chain
            .windows(2)
            .zip(gens)
            .all(|(w, &g)| elements[g].contains(w[0], w[1]));
        // the one b used, joined with all three a's
        let b = gens.iter().copied().find(|&g| g >= 3).expect("one b step");
        steps_ok && alg.join(&a_join, &elements[b]).contains(1, N)
    });
    Witness12 {
        spec,
        all_in_lattice: elements.iter().all(|x| spec.in_au(x)),
        pair_in_lhs: lhs.contains(1, N),
        pair_in_rhs: rhs.contains(1, N),
        elements,
        lhs,
        rhs,
        subdivisions_valid,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_refutes() {
        let w = eval_witness_12();
        assert!(w.all_in_lattice);
        assert!(w.pair_in_lhs);
        assert!(!w.pair_in_rhs);
        assert_eq!(w.subdivisions_valid, [true; 3]);
        assert!(w.refutes());
    }

    #[test]
    fn subdivisions_use_each_b_once() {
        let bs: Vec<usize> = SUBDIVISIONS
            .iter()
            .map(|(_, g)| *g.iter().find(|&&k| k >= 3).unwrap())
            .collect();
        assert_eq!(bs, vec![3, 4, 5]);
    }
}
