use std::sync::Arc;

use latticeforge_core::bmn::{bmn_dual_iso, bmn_structure_report, build_bmn, BmnLattice};
use latticeforge_core::cambrian::join_fits;
use latticeforge_core::lattice::{boolean, find_isomorphism};
use latticeforge_core::{FiniteLattice, LatticeMap};

fn is_distributive(l: &FiniteLattice) -> bool {
    l.elements().all(|x| {
        l.elements().all(|y| {
            l.elements()
                .all(|z| l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z)))
        })
    })
}

/// `a1 ↦ a1`, `a2 ↦ a2 ∨ ... ∨ am`, `b1 ↦ b1`, `b2 ↦ b2 ∨ ... ∨ bn`, `p ↦ p`.
fn b22_into(target: &BmnLattice) -> LatticeMap {
    let src = build_bmn(2, 2).unwrap();
    let (m, n) = (target.m, target.n);
    let parts = [
        target.a(1),
        (2..=m).map(|i| target.a(i)).fold(0, |acc, x| acc | x),
        target.b(1),
        (2..=n).map(|j| target.b(j)).fold(0, |acc, x| acc | x),
    ];
    let images = src
        .lattice
        .elements()
        .map(|z| {
            if z == src.p() {
                target.p()
            } else {
                (0..4)
                    .filter(|&k| z >> k & 1 == 1)
                    .fold(0, |acc, k| acc | parts[k])
            }
        })
        .collect();
    LatticeMap::new(src.lattice.clone(), target.lattice.clone(), images).unwrap()
}

#[test]
fn sizes() {
    for atoms in 0..=8 {
        for m in 0..=atoms {
            assert_eq!(
                build_bmn(m, atoms - m).unwrap().lattice.len(),
                (1 << atoms) + 1
            );
        }
    }
    assert_eq!(build_bmn(2, 2).unwrap().lattice.len(), 17);
    assert_eq!(build_bmn(3, 3).unwrap().lattice.len(), 65);
}

#[test]
fn largest_instance_builds() {
    let b = build_bmn(6, 6).unwrap();
    assert_eq!(b.lattice.len(), 4097);
    assert_eq!(b.lattice.lower_covers(b.p()), &[b.a_join()]);
}

#[test]
fn matches_doubling_up_to_isomorphism() {
    for atoms in 0..=6 {
        for m in 0..=atoms {
            let b = build_bmn(m, atoms - m).unwrap();
            let a = b.a_join();
            let (d, _) = boolean(atoms).double_interval(a, a).unwrap();
            assert!(
                find_isomorphism(&b.lattice, &d).is_some(),
                "B({m},{})",
                atoms - m
            );
            assert!(b.validate_against_doubling().unwrap());
        }
    }
}

#[test]
fn join_irreducibles_are_atoms_and_p() {
    for m in 1..=3 {
        for n in 0..=3 {
            let b = build_bmn(m, n).unwrap();
            let mut expected = b.atom_ids();
            expected.push(b.p());
            expected.sort_unstable();
            assert_eq!(
                b.lattice.join_irreducibles(),
                expected.as_slice(),
                "B({m},{n})"
            );
        }
    }
}

#[test]
fn figure_shapes() {
    // 32 covers of 2^4, plus a ⋖ p; the covers leaving a now leave p
    let b13 = build_bmn(1, 3).unwrap();
    let b22 = build_bmn(2, 2).unwrap();
    assert_eq!(b13.lattice.join_irreducibles().len(), 5);
    assert_eq!(b22.lattice.join_irreducibles().len(), 5);
    assert_eq!(b13.lattice.cover_pairs().len(), 33);
    assert_eq!(b22.lattice.cover_pairs().len(), 33);
    assert_eq!(b13.lattice.meet_irreducibles().len(), 5);
    assert_eq!(b22.lattice.meet_irreducibles().len(), 5);
}

#[test]
fn b_m0_is_distributive() {
    for m in 0..=4 {
        let b = build_bmn(m, 0).unwrap();
        assert!(is_distributive(&b.lattice), "B({m},0)");
        assert_eq!(b.lattice.join_irreducibles().len(), m + 1);
    }
    assert!(!is_distributive(&build_bmn(1, 1).unwrap().lattice));
}

#[test]
fn dual_isomorphisms() {
    for m in 0..=3 {
        for n in 0..=3 {
            let map = bmn_dual_iso(m, n).unwrap();
            assert!(map.is_dual_isomorphism());
            let dual = map.target.dual().unwrap();
            assert!(find_isomorphism(&map.source, &dual).is_some());
        }
    }
    // the proof map on B(2,2) is an involution
    let map = bmn_dual_iso(2, 2).unwrap();
    for x in map.source.elements() {
        assert_eq!(map.image(map.image(x)), x);
    }
}

#[test]
fn structure_reports() {
    let r = bmn_structure_report(2, 2).unwrap();
    assert!(r.bounded && r.semidistributive && r.subdirectly_irreducible);
    let r = bmn_structure_report(1, 1).unwrap();
    assert!(r.bounded);
    assert_eq!(r.size, 5);
    let r = bmn_structure_report(3, 3).unwrap();
    assert!(r.bounded && r.subdirectly_irreducible);
    let expected: Vec<Vec<String>> = (1..=3)
        .map(|j| vec!["a1".to_string(), "a2".into(), "a3".into(), format!("b{j}")])
        .collect();
    assert_eq!(r.p_covers, expected);
}

#[test]
fn b22_embeds_in_larger_instances() {
    for m in 2..=3 {
        for n in 2..=3 {
            let target = build_bmn(m, n).unwrap();
            assert!(b22_into(&target).verify_embedding(), "B({m},{n})");
        }
    }
}

#[test]
fn two_element_subsemilattice_does_not_fit() {
    let b = build_bmn(2, 2).unwrap();
    let l: Arc<FiniteLattice> = b.lattice.clone();
    assert!(!join_fits(&l, &[l.bottom(), l.top()]).unwrap());
    let all: Vec<usize> = l.elements().collect();
    assert!(join_fits(&l, &all).unwrap());
}
