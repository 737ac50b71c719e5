use latticeforge_core::bmn::build_bmn;
use latticeforge_core::cambrian::{build_cambrian, CambrianSpec};
use latticeforge_core::json::{
    lattice_from_json, lattice_to_json, measure_from_json, measure_to_json,
};
use latticeforge_core::lattice::{boolean, chain, m3, n5};
use latticeforge_core::measures::{bm1_measure, bm2_measure};
use latticeforge_core::weak_order::build_permutohedron;
use latticeforge_core::FiniteLattice;
use proptest::prelude::*;

fn same_ids(a: &FiniteLattice, b: &FiniteLattice) {
    assert_eq!(a.len(), b.len());
    assert_eq!(a.names(), b.names());
    assert_eq!(a.cover_pairs(), b.cover_pairs());
    assert_eq!(a.sets(), b.sets());
    for x in a.elements() {
        for y in a.elements() {
            assert_eq!(a.meet(x, y), b.meet(x, y));
            assert_eq!(a.join(x, y), b.join(x, y));
        }
    }
}

fn built(kind: usize, k: usize) -> FiniteLattice {
    match kind {
        0 => build_permutohedron(k.min(4)).unwrap(),
        1 => build_cambrian(&CambrianSpec::all(5)[k % 8]).unwrap(),
        2 => {
            let b = build_bmn(k % 3, k / 3 % 3).unwrap();
            (*b.lattice).clone()
        }
        3 => boolean(k % 4),
        4 => chain(k + 1),
        _ => [n5(), m3()][k % 2].clone(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_round_trip(kind in 0usize..6, k in 1usize..9) {
        let l = built(kind, k);
        let back = lattice_from_json(&lattice_to_json(&l)).unwrap();
        same_ids(&l, &back);
        prop_assert_eq!(back.is_set_lattice(), l.is_set_lattice());
    }
}

#[test]
fn measure_round_trip() {
    for mu in [bm1_measure(2).unwrap(), bm2_measure(2).unwrap()] {
        let back = measure_from_json(&measure_to_json(&mu)).unwrap();
        assert_eq!(back.labels(), mu.labels());
        assert_eq!(back.u(), mu.u());
        assert_eq!(
            back.entries().collect::<Vec<_>>(),
            mu.entries().collect::<Vec<_>>()
        );
        same_ids(back.target(), mu.target());
        assert!(back.is_polarized());
    }
}

#[test]
fn tampered_sets_are_rejected() {
    let l = build_permutohedron(3).unwrap();
    let json = lattice_to_json(&l);
    let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
    // drop (1,2) from the top element: the family loses its top join
    let top = l.top();
    v["sets"][top] = serde_json::json!([[1, 3], [2, 3]]);
    assert!(lattice_from_json(&v.to_string()).is_err());
}
