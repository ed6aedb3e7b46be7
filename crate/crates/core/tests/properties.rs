//! Cross-module invariants on randomly generated structures.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tirs_core::functors::{
    alpha, beta, frame_iso, gr, graph_iso, rho, rho_mor, validate_graph_morphism, GraphMorphism,
};
use tirs_core::galois::{canext_both, check_r_upset_lemma, closed_sets, frame_of_perfect};
use tirs_core::generators::{gen_lattice, random_monotone_map, random_poset, GenSpec, Kind};
use tirs_core::lattice::{check_dense, lattice_iso};
use tirs_core::ploscica::dual_graph;
use tirs_core::pti::{check_pti, check_pti_frame_form};
use tirs_core::structures::{check_frame, check_graph};
use tirs_core::{Graph, Relation, WitnessMode};

fn lattice(size: usize, seed: u64) -> tirs_core::FiniteLattice {
    gen_lattice(&GenSpec {
        kind: Kind::Lattice,
        size,
        seed,
        count: 1,
        exhaustive: false,
    })
    .unwrap()
    .remove(0)
}

fn poset_graph(order: Relation) -> Graph {
    let names = (0..order.n_left()).map(|i| format!("v{i}")).collect();
    Graph::from_relation(names, order).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_graphs_round_trip(size in 2usize..9, seed in any::<u64>()) {
        let l = lattice(size, seed);
        let g = dual_graph(&l).unwrap().graph;
        prop_assert!(check_graph(&g, WitnessMode::First).is_tirs());
        let r = rho(&g);
        prop_assert!(check_frame(&r.frame, WitnessMode::First).is_tirs());
        prop_assert!(graph_iso(&g, &gr(&r.frame).graph).is_some());
        prop_assert!(alpha(&g).is_ok());
        prop_assert!(beta(&r.frame).is_ok());
    }

    #[test]
    fn canonical_extension_is_the_lattice(size in 2usize..9, seed in any::<u64>()) {
        let l = lattice(size, seed);
        let c = canext_both(&l).unwrap();
        prop_assert!(lattice_iso(&c.tandem.1.lattice, &l).is_some());
        prop_assert!(check_dense(&c.polarity.0, WitnessMode::First).passed());
    }

    #[test]
    fn pti_forms_agree(size in 2usize..9, seed in any::<u64>()) {
        let l = lattice(size, seed);
        prop_assert!(check_pti(&l, WitnessMode::First).unwrap().passed());
        let f = frame_of_perfect(&l).unwrap();
        prop_assert!(check_frame(&f, WitnessMode::First).is_tirs());
        prop_assert!(check_pti_frame_form(&f, WitnessMode::First).passed());
        prop_assert!(check_r_upset_lemma(&f, WitnessMode::First).passed());
        prop_assert!(lattice_iso(&closed_sets(&f).lattice, &l).is_some());
        prop_assert!(frame_iso(&f, &frame_of_perfect(&closed_sets(&f).lattice).unwrap()).is_some());
    }

    #[test]
    fn monotone_maps_induce_frame_morphisms(n in 1usize..7, m in 1usize..7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_poset(&mut rng, n);
        let t = random_poset(&mut rng, m);
        let map = random_monotone_map(&mut rng, &s, &t);
        let phi = GraphMorphism::new(poset_graph(s), poset_graph(t), map).unwrap();
        prop_assert!(validate_graph_morphism(&phi, WitnessMode::First).passed());
        prop_assert!(rho_mor(&phi).is_ok());
    }
}
