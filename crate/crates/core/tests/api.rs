use outerspace_core::automorphisms::random_automorphism;
use outerspace_core::graph::random_marked_graph;
use outerspace_core::lipschitz::{extremal_stretch, lambda_distortion};
use outerspace_core::rational::{q, qi};
use outerspace_core::stretch::{generic_stretch, generic_stretch_graph};
use outerspace_core::{Endomorphism, MarkedGraph, Word};
use proptest::prelude::*;

fn aut(rank: usize, images: &[&[i32]]) -> outerspace_core::Automorphism {
    let images = images.iter().map(|w| Word::reduce(w, rank).unwrap()).collect();
    Endomorphism::new(rank, images).unwrap().certify().unwrap()
}

#[test]
fn nielsen_example_end_to_end() {
    let phi = aut(2, &[&[1, 2], &[2]]);
    assert_eq!(generic_stretch(&phi).unwrap().value, q(7, 6));
    assert_eq!(generic_stretch(&phi.inverse()).unwrap().value, q(7, 6));
    assert_eq!(extremal_stretch(&phi).unwrap(), qi(2));
    let t = MarkedGraph::unit_rose(2).unwrap();
    assert_eq!(generic_stretch_graph(&t).unwrap().value, qi(1));
    assert_eq!(generic_stretch_graph(&t.act(&phi).unwrap()).unwrap().value, q(7, 6));
}

#[test]
fn distortion_between_scaled_roses() {
    let t = MarkedGraph::rose(2, &[qi(1), qi(1)]).unwrap();
    let s = t.scale(&q(5, 3)).unwrap();
    assert_eq!(lambda_distortion(&t, &s).unwrap().lambda, q(5, 3));
    assert_eq!(lambda_distortion(&s, &t).unwrap().lambda, q(3, 5));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generic_stretch_below_extremal(rank in 2usize..4, seed in any::<u64>()) {
        let phi = random_automorphism(rank, 6, seed).unwrap();
        let g = generic_stretch(&phi).unwrap().value;
        prop_assert!(g >= qi(1));
        prop_assert!(g <= extremal_stretch(&phi).unwrap());
    }

    #[test]
    fn distortion_is_multiplicative_along_a_path(seed in any::<u64>()) {
        let t = random_marked_graph(2, seed).unwrap();
        let s = random_marked_graph(2, seed ^ 1).unwrap();
        let u = random_marked_graph(2, seed ^ 2).unwrap();
        let ts = lambda_distortion(&t, &s).unwrap().lambda;
        let su = lambda_distortion(&s, &u).unwrap().lambda;
        let tu = lambda_distortion(&t, &u).unwrap().lambda;
        prop_assert!(tu <= ts * su);
        prop_assert_eq!(lambda_distortion(&t, &t).unwrap().lambda, qi(1));
    }
}
