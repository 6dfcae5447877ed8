mod common;

use std::sync::Arc;

use finhtop::homology::poset_homology;
use finhtop::io::{from_json, to_json};
use finhtop::poset::is_isomorphic;
use finhtop::reduction::{collapse_search, core, core_with_scan_order, replay_removal_sequence, triviality_oracle};
use finhtop::simplicial::{barycentric, face_poset, order_complex};
use finhtop::verify::{random_complex, random_diagram, random_poset};
use finhtop::{Budget, Diagram, FinitePoset, PosetDiagram};
use proptest::prelude::*;

use common::{betti_mod_p, trimmed};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homology_matches_prime_field_oracle(n in 1usize..9, density in 0.0f64..1.0, seed in any::<u64>()) {
        let p = random_poset(n, density, seed);
        let profile = poset_homology(&p).unwrap();
        prop_assert_eq!(trimmed(&profile.betti), betti_mod_p(&p));
    }

    #[test]
    fn core_is_independent_of_scan_order(n in 1usize..11, density in 0.1f64..0.7, seed in any::<u64>(), shift in 0usize..11) {
        let p = random_poset(n, density, seed);
        let (c1, _) = core(&p).unwrap();
        let order: Vec<usize> = (0..n).map(|i| (i + shift) % n).rev().collect();
        let (c2, _) = core_with_scan_order(&p, &order).unwrap();
        prop_assert!(is_isomorphic(&c1, &c2).unwrap());
    }

    #[test]
    fn removal_sequences_replay_and_keep_homology(n in 1usize..11, density in 0.1f64..0.7, seed in any::<u64>()) {
        let p = random_poset(n, density, seed);
        let target = betti_mod_p(&p);
        let (c, seq) = core(&p).unwrap();
        let replayed = replay_removal_sequence(&p, &seq).unwrap().unwrap();
        prop_assert!(replayed.same_order(&c));
        prop_assert_eq!(betti_mod_p(&c), target.clone());
        if let Some(seq) = collapse_search(&p, &Budget::default()).unwrap() {
            prop_assert_eq!(replay_removal_sequence(&p, &seq).unwrap().unwrap().len(), 1);
            prop_assert_eq!(target, vec![1]);
        }
    }

    #[test]
    fn oracle_verdicts_agree_with_homology(n in 1usize..10, density in 0.1f64..0.7, seed in any::<u64>()) {
        let p = random_poset(n, density, seed);
        let verdict = triviality_oracle(&p, &Budget::default());
        let acyclic = betti_mod_p(&p) == vec![1];
        if verdict.is_trivial() {
            prop_assert!(acyclic);
        }
        if !acyclic {
            prop_assert!(!verdict.is_trivial());
        }
    }

    #[test]
    fn constant_hocolim_is_the_product(n in 1usize..4, m in 1usize..4, s1 in any::<u64>(), s2 in any::<u64>()) {
        let index = Arc::new(random_poset(n, 0.5, s1));
        let fiber = Arc::new(random_poset(m, 0.5, s2));
        let d = PosetDiagram::constant(index.clone(), fiber.clone()).unwrap();
        prop_assert!(is_isomorphic(&d.hocolim(), &index.product(&fiber)).unwrap());
    }

    #[test]
    fn diagram_json_round_trips(seed in any::<u64>()) {
        let d = random_diagram(4, 4, seed);
        let back: PosetDiagram = from_json(&to_json(&d)).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn face_poset_and_subdivision_keep_homology(v in 1usize..6, seed in any::<u64>()) {
        let k = random_complex(v, seed);
        let x = face_poset(&k).unwrap();
        let sd = barycentric(&k).unwrap();
        prop_assert_eq!(sd.euler_characteristic(), k.euler_characteristic());
        let kx = order_complex(&x).unwrap();
        prop_assert_eq!(kx.vertices().len(), x.len());
        let direct = finhtop::homology::homology_profile(&k).unwrap();
        prop_assert_eq!(trimmed(&direct.betti), betti_mod_p(&x));
    }

    #[test]
    fn opposite_keeps_homology(n in 1usize..9, seed in any::<u64>()) {
        let p = random_poset(n, 0.4, seed);
        prop_assert_eq!(betti_mod_p(&p.opposite()), betti_mod_p(&p));
    }
}

#[test]
fn hocolim_element_order_is_index_then_fiber() {
    let d = random_diagram(4, 3, 5);
    let h = d.hocolim();
    let mut k = 0;
    for p in 0..d.index().len() {
        for x in 0..d.fiber(p).len() {
            assert_eq!(h.name(k), d.element_name(p, x));
            k += 1;
        }
    }
    let single = Diagram::constant(Arc::new(FinitePoset::chain(1)), d.fiber(0).clone()).unwrap();
    assert_eq!(single.hocolim().len(), d.fiber(0).len());
}
