mod common;

use proptest::prelude::*;

use iagraph::analysis::{diameter, girth, is_connected};
use iagraph::graph::{build_ia, build_ia_oracle, build_ia_zn_symbolic, compress_classes};
use iagraph::ring::{
    annihilator_key, annihilator_set, check_subring_closure, nilpotent_set, nilpotent_set_brute,
    subring_generated, zero_divisor_set,
};
use iagraph::{
    is_complete_bipartite, is_isomorphic, Caps, Element, ElementSet, Extent, Factorization,
    FiniteRing, Graph, RingSpec,
};

fn product() -> impl Strategy<Value = FiniteRing> {
    prop::collection::vec(2u64..=24, 1..=3)
        .prop_filter("order at most 600", |fs| fs.iter().product::<u64>() <= 600)
        .prop_map(|fs| RingSpec::new(fs).unwrap().into())
}

fn ring_and_element() -> impl Strategy<Value = (FiniteRing, Element)> {
    product().prop_flat_map(|r| {
        let order = r.order();
        (Just(r), 0..order)
    })
    .prop_map(|(r, i)| {
        let x = r.spec().element_at(i);
        (r, x)
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let len = pairs.len();
        prop::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(&e, _)| e)
                .collect();
            Graph::unlabeled(n, &edges).unwrap()
        })
    })
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let perm = Just((0..g.len()).collect::<Vec<usize>>()).prop_shuffle();
        (Just(g), perm)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn key_expansion_matches_scan((r, x) in ring_and_element()) {
        let caps = Caps::default();
        let key = annihilator_key(&r, &x).unwrap();
        prop_assert_eq!(key.expand(r.spec()), annihilator_set(&r, &x, &caps).unwrap());
    }

    #[test]
    fn zn_annihilator_matches_integers(n in 2u64..400, x in 0u64..400) {
        let x = x % n;
        let r: FiniteRing = RingSpec::new(vec![n]).unwrap().into();
        let got: Vec<u64> = annihilator_set(&r, &Element::new(vec![x]), &Caps::default())
            .unwrap()
            .iter()
            .map(|e| e.residues()[0])
            .collect();
        prop_assert_eq!(got, common::zn_ann(n, x));
    }

    #[test]
    fn key_and_oracle_graphs_agree(r in product()) {
        let caps = Caps::default();
        prop_assert_eq!(build_ia(&r, &caps).unwrap(), build_ia_oracle(&r, &caps).unwrap());
    }

    #[test]
    fn classes_partition_nonzero_zero_divisors(r in product()) {
        let caps = Caps::default();
        let z = zero_divisor_set(&r, &caps).unwrap();
        let total: u64 = compress_classes(&r, &caps).unwrap().iter().map(|c| c.size).sum();
        prop_assert_eq!(total, z.len() as u64 - 1);
    }

    #[test]
    fn nilradical_rule_matches_powers(r in product()) {
        let caps = Caps::default();
        prop_assert_eq!(nilpotent_set(&r, &caps).unwrap(), nilpotent_set_brute(&r, &caps).unwrap());
    }

    #[test]
    fn symbolic_zn_matches_brute(n in 2u64..1500) {
        let caps = Caps::default();
        let r: FiniteRing = RingSpec::new(vec![n]).unwrap().into();
        prop_assert_eq!(
            build_ia(&r, &caps).unwrap(),
            build_ia_zn_symbolic(&Factorization::of(n), &caps).unwrap()
        );
    }

    #[test]
    fn generated_subrings_are_closed((r, x) in ring_and_element(), one in any::<bool>()) {
        let caps = Caps::default();
        let gens: ElementSet = [x].into_iter().collect();
        let s = subring_generated(&r, &gens, one, &caps).unwrap();
        let FiniteRing::Subring(sub) = &s else { panic!("expected a subring") };
        prop_assert!(check_subring_closure(sub).is_ok());
        // additive subgroup of a finite group
        prop_assert_eq!(r.order() % s.order(), 0);
    }

    #[test]
    fn element_text_round_trips((r, x) in ring_and_element()) {
        let text = x.to_string();
        let back: Element = text.parse().unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert!(r.contains(&back));
    }

    #[test]
    fn diameter_matches_floyd_warshall(g in graph(12)) {
        let want = match common::floyd_warshall_diameter(&g) {
            Some(d) => Extent::Finite(d),
            None => Extent::Infinite,
        };
        prop_assert_eq!(diameter(&g), want);
        prop_assert_eq!(is_connected(&g), !want.is_infinite());
    }

    #[test]
    fn girth_matches_cycle_enumeration(g in graph(10)) {
        let want = match common::brute_girth(&g) {
            Some(d) => Extent::Finite(d),
            None => Extent::Infinite,
        };
        prop_assert_eq!(girth(&g), want);
    }

    #[test]
    fn complete_bipartite_is_triangle_free_and_connected(g in graph(9)) {
        if is_complete_bipartite(&g).is_some() {
            prop_assert!(is_connected(&g));
            prop_assert_ne!(girth(&g), Extent::Finite(3));
        }
    }

    #[test]
    fn isomorphism_survives_relabeling((g, perm) in graph_and_perm(10)) {
        let caps = Caps::default();
        let h = g.permuted(&perm).unwrap();
        let m = is_isomorphic(&g, &h, &caps).unwrap();
        prop_assert!(m.is_some());
        let m = m.unwrap();
        for (i, j) in g.edges() {
            prop_assert!(h.has_edge(m[i], m[j]));
        }
        let back = is_isomorphic(&h, &g, &caps).unwrap();
        prop_assert!(back.is_some());
        prop_assert!(is_isomorphic(&g, &g, &caps).unwrap().is_some());
    }

    #[test]
    fn isomorphism_is_symmetric(a in graph(7), b in graph(7)) {
        let caps = Caps::default();
        prop_assert_eq!(
            is_isomorphic(&a, &b, &caps).unwrap().is_some(),
            is_isomorphic(&b, &a, &caps).unwrap().is_some()
        );
    }
}
