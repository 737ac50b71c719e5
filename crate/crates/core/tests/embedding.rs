use std::sync::Arc;

use latticeforge_core::bmn::build_bmn;
use latticeforge_core::cambrian::{build_cambrian, CambrianSpec};
use latticeforge_core::embedding::{
    bmn_generators, default_generators, generator_embedding_search, si_embedding_scan,
};
use latticeforge_core::lattice::{boolean, chain, m3, n5};
use latticeforge_core::weak_order::build_permutohedron;
use latticeforge_core::{Error, FiniteLattice, LatticeMap};

fn a_u(spec: &CambrianSpec) -> Arc<FiniteLattice> {
    Arc::new(build_cambrian(spec).unwrap())
}

/// Any injective lattice homomorphism, by trying every injection.
fn embeds_oracle(k: &FiniteLattice, l: &FiniteLattice) -> bool {
    fn go(k: &FiniteLattice, l: &FiniteLattice, f: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let x = f.len();
        if x == k.len() {
            return k.elements().all(|a| {
                k.elements().all(|b| {
                    f[k.meet(a, b)] == l.meet(f[a], f[b]) && f[k.join(a, b)] == l.join(f[a], f[b])
                })
            });
        }
        for y in l.elements() {
            // order must be preserved and reflected against earlier choices
            if used[y]
                || !(0..x).all(|z| k.leq(z, x) == l.leq(f[z], y) && k.leq(x, z) == l.leq(y, f[z]))
            {
                continue;
            }
            used[y] = true;
            f.push(y);
            let hit = go(k, l, f, used);
            f.pop();
            used[y] = false;
            if hit {
                return true;
            }
        }
        false
    }
    go(k, l, &mut Vec::new(), &mut vec![false; l.len()])
}

#[test]
fn search_agrees_with_brute_force() {
    let sources = [
        chain(3),
        boolean(2),
        n5(),
        m3(),
        Arc::unwrap_or_clone(build_bmn(1, 1).unwrap().lattice),
    ];
    let mut targets: Vec<FiniteLattice> = CambrianSpec::all(4)
        .iter()
        .map(|s| build_cambrian(s).unwrap())
        .collect();
    targets.push(build_permutohedron(3).unwrap());
    targets.push(boolean(3));
    targets.push(m3());
    for k in sources {
        let k = Arc::new(k);
        let gens = default_generators(&k);
        for l in &targets {
            let l = Arc::new(l.clone());
            let found = generator_embedding_search(&k, &l, &gens).unwrap();
            if let Some(map) = &found {
                assert!(map.verify_embedding());
            }
            assert_eq!(found.is_some(), embeds_oracle(&k, &l));
        }
    }
}

#[test]
fn b22_does_not_embed_in_small_permutohedra() {
    let b = build_bmn(2, 2).unwrap();
    let gens = bmn_generators(&b);
    assert_eq!(gens.len(), 4);
    for n in 1..=5 {
        assert!(
            si_embedding_scan(&b.lattice, &gens, n).unwrap().is_none(),
            "n={n}"
        );
    }
}

#[test]
fn b22_embeds_in_a45_6() {
    let b = build_bmn(2, 2).unwrap();
    let l = a_u(&CambrianSpec::new(6, &[4, 5]).unwrap());
    let map = generator_embedding_search(&b.lattice, &l, &bmn_generators(&b))
        .unwrap()
        .unwrap();
    assert!(map.verify_embedding());
}

#[test]
fn m3_and_n5_against_a_u_3() {
    let m = Arc::new(m3());
    let gens = default_generators(&m);
    for spec in CambrianSpec::all(3) {
        assert!(generator_embedding_search(&m, &a_u(&spec), &gens)
            .unwrap()
            .is_none());
    }
    assert!(si_embedding_scan(&m, &gens, 4).unwrap().is_none());
    let n = Arc::new(n5());
    let (spec, map) = si_embedding_scan(&n, &default_generators(&n), 3)
        .unwrap()
        .unwrap();
    // every A_U(3) has five elements, so the first U in mask order already works
    assert_eq!(spec, CambrianSpec::new(3, &[]).unwrap());
    assert!(map.is_isomorphism());
}

#[test]
fn bm1_is_found_by_search() {
    for m in 1..=3 {
        let b = build_bmn(m, 1).unwrap();
        let gens = bmn_generators(&b);
        assert_eq!(gens.len(), m + 2);
        let l = a_u(&CambrianSpec::tamari(m + 2));
        assert!(
            generator_embedding_search(&b.lattice, &l, &gens)
                .unwrap()
                .is_some(),
            "m={m}"
        );
    }
}

#[test]
fn scan_requires_subdirect_irreducibility() {
    let k = Arc::new(boolean(2));
    let gens = default_generators(&k);
    assert!(matches!(
        si_embedding_scan(&k, &gens, 3),
        Err(Error::BadParams(_))
    ));
}

#[test]
fn search_is_deterministic_across_thread_counts() {
    let b = build_bmn(2, 2).unwrap();
    let gens = bmn_generators(&b);
    let l = a_u(&CambrianSpec::new(6, &[4, 5]).unwrap());
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                generator_embedding_search(&b.lattice, &l, &gens)
                    .unwrap()
                    .unwrap()
                    .images
            })
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn b22_direct_search_in_permutohedra() {
    // the same verdicts without the reduction to Cambrian factors
    let b = build_bmn(2, 2).unwrap();
    let gens = bmn_generators(&b);
    for n in 4..=5 {
        let p = Arc::new(build_permutohedron(n).unwrap());
        assert!(
            generator_embedding_search(&b.lattice, &p, &gens)
                .unwrap()
                .is_none(),
            "n={n}"
        );
    }
    // P(6) by direct search takes half a minute; go through A_{4,5}(6) ⊆ P(6)
    let a = a_u(&CambrianSpec::new(6, &[4, 5]).unwrap());
    let p6 = Arc::new(build_permutohedron(6).unwrap());
    let images = a
        .elements()
        .map(|x| p6.id_of_set(a.set(x).unwrap()).unwrap())
        .collect();
    let inclusion = LatticeMap::new(a.clone(), p6, images).unwrap();
    let e = generator_embedding_search(&b.lattice, &a, &gens)
        .unwrap()
        .unwrap();
    assert!(e.compose(&inclusion).unwrap().verify_embedding());
}
