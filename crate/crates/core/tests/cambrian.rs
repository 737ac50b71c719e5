use std::collections::HashSet;
use std::sync::Arc;

use latticeforge_core::cambrian::{
    build_cambrian, cambrian_congruence, cambrian_duality, cambrian_duality_by_search,
    diagonal_is_injective, join_fits, kernel_pi_u, least_in_dependency_order, p3_into_a6,
    projection, subdirect_decomposition, tamari_product_embed, three_generators, top_triple,
    BracketFunction, CambrianSpec,
};
use latticeforge_core::lattice::{find_isomorphism, sublattice_closure, DependencyMode};
use latticeforge_core::weak_order::build_permutohedron;
use latticeforge_core::{FiniteLattice, PairSet, PairSetAlgebra};

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect()
}

/// Every transitive member of `D_U(n)`, by scanning all subsets of `J_n`.
fn subset_oracle(spec: &CambrianSpec) -> HashSet<PairSet> {
    let pairs = all_pairs(spec.n);
    (0u32..1 << pairs.len())
        .map(|m| {
            PairSet::from_pairs(
                spec.n,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| m >> k & 1 == 1)
                    .map(|(_, &p)| p),
            )
        })
        .filter(|x| spec.in_au(x))
        .collect()
}

#[test]
fn bfs_matches_subset_scan() {
    for n in 1..=5 {
        for spec in CambrianSpec::all(n) {
            let a = build_cambrian(&spec).unwrap();
            let got: HashSet<PairSet> = a.sets().unwrap().iter().cloned().collect();
            assert_eq!(got, subset_oracle(&spec), "{spec}");
        }
    }
}

#[test]
fn closed_under_intersection_and_closure_of_union() {
    for n in 2..=5 {
        for spec in CambrianSpec::all(n) {
            let a = build_cambrian(&spec).unwrap();
            let sets = a.sets().unwrap();
            for x in sets {
                for y in sets {
                    assert!(spec.in_au(&x.intersection(y)));
                    assert!(spec.in_au(&x.union(y).closure()));
                }
            }
        }
    }
}

#[test]
fn sublattice_of_the_permutohedron() {
    for n in 2..=5 {
        let p = build_permutohedron(n).unwrap();
        for spec in CambrianSpec::all(n) {
            let a = build_cambrian(&spec).unwrap();
            let ids: Vec<usize> = a
                .sets()
                .unwrap()
                .iter()
                .map(|s| p.id_of_set(s).unwrap())
                .collect();
            for x in a.elements() {
                for y in a.elements() {
                    assert_eq!(ids[a.meet(x, y)], p.meet(ids[x], ids[y]), "{spec}");
                    assert_eq!(ids[a.join(x, y)], p.join(ids[x], ids[y]), "{spec}");
                }
            }
        }
    }
}

#[test]
fn join_irreducibles_are_the_ji_elements() {
    for n in 2..=5 {
        let p = build_permutohedron(n).unwrap();
        for spec in CambrianSpec::all(n) {
            let a = build_cambrian(&spec).unwrap();
            let ji: HashSet<PairSet> = a
                .join_irreducibles()
                .iter()
                .map(|&x| a.set(x).unwrap().clone())
                .collect();
            let formula: HashSet<PairSet> = spec.join_irreducibles().into_iter().collect();
            assert_eq!(ji.len(), n * (n - 1) / 2);
            assert_eq!(ji, formula, "{spec}");
            // least element containing (i, j)
            for (i, j) in all_pairs(n) {
                let least = a
                    .sets()
                    .unwrap()
                    .iter()
                    .filter(|s| s.contains(i, j))
                    .fold(PairSet::full(n), |acc, s| acc.intersection(s));
                assert_eq!(spec.ji_element(i, j), least);
            }
            // Ji(A_U) = A_U ∩ Ji(P(n))
            let from_p: HashSet<PairSet> = p
                .join_irreducibles()
                .iter()
                .map(|&x| p.set(x).unwrap().clone())
                .filter(|s| spec.in_au(s))
                .collect();
            assert_eq!(ji, from_p, "{spec}");
        }
    }
}

#[test]
fn dependency_restricts_from_the_permutohedron() {
    for n in 2..=5 {
        let p = build_permutohedron(n).unwrap();
        let dp: HashSet<(PairSet, PairSet)> = p
            .join_dependency(DependencyMode::Arrows)
            .into_iter()
            .map(|(x, y)| (p.set(x).unwrap().clone(), p.set(y).unwrap().clone()))
            .collect();
        for spec in CambrianSpec::all(n) {
            let a = build_cambrian(&spec).unwrap();
            let da: HashSet<(PairSet, PairSet)> = a
                .join_dependency(DependencyMode::Definition)
                .into_iter()
                .map(|(x, y)| (a.set(x).unwrap().clone(), a.set(y).unwrap().clone()))
                .collect();
            let restricted: HashSet<(PairSet, PairSet)> = dp
                .iter()
                .filter(|(x, y)| spec.in_au(x) && spec.in_au(y))
                .cloned()
                .collect();
            assert_eq!(da, restricted, "{spec}");
            assert!(least_in_dependency_order(&spec, &a), "{spec}");
        }
    }
}

#[test]
fn projection_is_a_retraction_and_a_homomorphism() {
    for n in 2..=5 {
        let p = Arc::new(build_permutohedron(n).unwrap());
        for spec in CambrianSpec::all(n) {
            let pi = projection(p.clone(), &spec).unwrap();
            assert!(pi.is_lattice_hom(), "{spec}");
            assert!(pi.is_surjective(), "{spec}");
            for y in pi.target.elements() {
                let s = pi.target.set(y).unwrap();
                assert_eq!(pi.image(p.id_of_set(s).unwrap()), y);
                assert_eq!(&spec.pi(s), s);
            }
            // largest element of A_U below x
            for x in p.elements() {
                let sx = p.set(x).unwrap();
                let best = pi
                    .target
                    .sets()
                    .unwrap()
                    .iter()
                    .filter(|s| s.is_subset(sx))
                    .max_by_key(|s| s.len())
                    .unwrap();
                assert_eq!(&spec.pi(sx), best);
            }
            assert!(join_fits(
                &p,
                &pi.target
                    .sets()
                    .unwrap()
                    .iter()
                    .map(|s| p.id_of_set(s).unwrap())
                    .collect::<Vec<_>>()
            )
            .unwrap());
        }
    }
}

#[test]
fn subdirect_decomposition_has_irreducible_factors() {
    assert_eq!(subdirect_decomposition(2).unwrap().len(), 1);
    for n in 2..=5 {
        let factors = subdirect_decomposition(n).unwrap();
        assert_eq!(factors.len(), 1 << (n - 2));
        assert!(diagonal_is_injective(&factors));
        for f in &factors {
            assert!(f.projection.is_surjective());
            assert!(
                f.projection.target.is_subdirectly_irreducible().unwrap(),
                "{}",
                f.spec
            );
        }
    }
}

#[test]
fn kernel_is_psi_and_the_cambrian_congruence() {
    for n in 2..=5 {
        let p = build_permutohedron(n).unwrap();
        for spec in CambrianSpec::all(n) {
            let kernel = kernel_pi_u(&spec, &p).unwrap();
            let top = p.id_of_set(&top_triple(&spec).unwrap().set()).unwrap();
            assert_eq!(kernel, p.psi(top).unwrap(), "{spec}");
            assert_eq!(kernel, cambrian_congruence(&spec, &p).unwrap(), "{spec}");
            let (q, _) = p.quotient(&kernel).unwrap();
            assert!(
                find_isomorphism(&q, &build_cambrian(&spec).unwrap()).is_some(),
                "{spec}"
            );
        }
    }
    let p2 = build_permutohedron(2).unwrap();
    assert!(kernel_pi_u(&CambrianSpec::tamari(2), &p2)
        .unwrap()
        .is_identity());
}

#[test]
fn duality_map_and_search_agree() {
    for n in 1..=6 {
        for spec in CambrianSpec::all(n) {
            let map = cambrian_duality(&spec).unwrap();
            assert!(map.is_dual_isomorphism());
            if n <= 5 {
                assert!(
                    cambrian_duality_by_search(&spec).unwrap().is_some(),
                    "{spec}"
                );
            }
        }
    }
    let a3 = CambrianSpec::new(4, &[3]).unwrap();
    assert_eq!(a3.complement(), CambrianSpec::new(4, &[2]).unwrap());
    let a = build_cambrian(&CambrianSpec::tamari(4)).unwrap();
    assert!(find_isomorphism(&a.dual().unwrap().dual().unwrap(), &a).is_some());
}

#[test]
fn bracket_functions_round_trip() {
    for n in 1..=5 {
        let a = build_cambrian(&CambrianSpec::tamari(n)).unwrap();
        let fs: Vec<BracketFunction> = a
            .sets()
            .unwrap()
            .iter()
            .map(|x| BracketFunction::from_pairset(x).unwrap())
            .collect();
        assert_eq!(fs.iter().collect::<HashSet<_>>().len(), a.len());
        assert_eq!(fs.len(), BracketFunction::all(n).len());
        for x in a.elements() {
            assert_eq!(&fs[x].to_pairset(), a.set(x).unwrap());
            for y in a.elements() {
                assert_eq!(a.leq(x, y), fs[x].leq(&fs[y]));
            }
        }
        let all = BracketFunction::all(n);
        for f in &all {
            assert_eq!(&f.dual().dual(), f);
            for g in &all {
                assert_eq!(f.leq(g), g.dual().leq(&f.dual()));
            }
        }
    }
}

#[test]
fn generators_are_tamari_elements() {
    for n in 2..=9 {
        let spec = CambrianSpec::tamari(n);
        let (a, b, c) = three_generators(n).unwrap();
        assert!(spec.in_au(&a) && spec.in_au(&b) && spec.in_au(&c));
    }
}

/// Sizes of the sublattice of `A(n)` generated by the three elements, for
/// `n = 4..=12`, computed by closing over pair sets and, up to `n = 10`,
/// over element ids of the explicit lattice.
const THREE_GENERATED: [usize; 9] = [10, 12, 14, 16, 18, 20, 22, 24, 26];

#[test]
fn three_generated_sublattices_grow() {
    for (n, &size) in (4..=12).zip(THREE_GENERATED.iter()) {
        let (a, b, c) = three_generators(n).unwrap();
        let gens = [a, b, c];
        let by_sets = sublattice_closure(&PairSetAlgebra::cambrian(n), &gens);
        assert_eq!(by_sets.len(), size, "n={n}");
        if n <= 10 {
            let l = build_cambrian(&CambrianSpec::tamari(n)).unwrap();
            let ids: Vec<usize> = gens.iter().map(|g| l.id_of_set(g).unwrap()).collect();
            assert_eq!(sublattice_closure(&l, &ids).len(), size, "n={n}");
        }
    }
    assert!(THREE_GENERATED.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn product_embeddings() {
    let e = tamari_product_embed(2, 2).unwrap();
    assert_eq!(e.source.len(), 4);
    assert_eq!(e.target.len(), 14);
    assert!(e.verify_embedding());
    for (m, n) in [(1, 3), (2, 3), (3, 3), (4, 4)] {
        assert!(
            tamari_product_embed(m, n).unwrap().verify_embedding(),
            "{m},{n}"
        );
    }
    assert!(tamari_product_embed(5, 4).is_err());
    let e = p3_into_a6().unwrap();
    assert_eq!(e.source.len(), 6);
    assert!(e.verify_embedding());
}

#[test]
fn join_fits_edge_cases() {
    let l = latticeforge_core::lattice::boolean(2);
    let all: Vec<usize> = l.elements().collect();
    assert!(join_fits(&l, &all).unwrap());
    // 3 D 1 through x = 2, so {0, 1} does not fit; its lower projection
    // sends 1 and 2 to 0 but 1 ∨ 2 to 3
    assert!(!join_fits(&l, &[0, 3]).unwrap());
    assert!(join_fits(&l, &[0, 1]).is_err());
    let n5: FiniteLattice = latticeforge_core::lattice::n5();
    // {0, b, 1}: b depends on c, which is missing
    let b = n5.id_of_name("b").unwrap();
    assert!(!join_fits(&n5, &[n5.bottom(), b, n5.top()]).unwrap());
}
