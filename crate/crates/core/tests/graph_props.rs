//! Properties of the graph substrate, the projection and the coloring.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isr_kernel::coloring::{color_graph, extract_independent};
use isr_kernel::embedding::validate_rotation_system;
use isr_kernel::format::{parse_instance, write_instance};
use isr_kernel::harness::gadget::{gen_two_class_gadget, GadgetParams, TargetStyle, Wiring};
use isr_kernel::harness::gen::{gen_planar_instance, Generated, PlanarGenParams};
use isr_kernel::projection::{compute_projection, two_class_structure};
use isr_kernel::{is_independent, Graph, GraphClass, Instance, RotationSystem};

fn planar(n: usize, k: usize, keep: f64, seed: u64) -> Option<Generated> {
    gen_planar_instance(PlanarGenParams { n, k, edge_keep_prob: keep, seed }, GraphClass::Planar).ok()
}

fn wiring() -> impl Strategy<Value = Wiring> {
    prop_oneof![Just(Wiring::Independent), Just(Wiring::Path), Just(Wiring::Cycle), Just(Wiring::SharedKey)]
}

fn targets() -> impl Strategy<Value = TargetStyle> {
    prop_oneof![Just(TargetStyle::Pendant), Just(TargetStyle::Member), Just(TargetStyle::Mixed)]
}

fn complete(n: usize) -> Graph {
    let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &e).unwrap()
}

fn k33() -> Graph {
    let e: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
    Graph::from_edges(6, &e).unwrap()
}

fn random_rotation(g: &Graph, rng: &mut ChaCha8Rng) -> RotationSystem {
    RotationSystem::new(
        (0..g.n())
            .map(|v| {
                let mut ns = g.neighbors(v).to_vec();
                ns.shuffle(rng);
                ns
            })
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_format_round_trips(n in 5usize..30, k in 1usize..4, keep in 0.0f64..=1.0, seed: u64, cut in 0usize..5) {
        let Some(gen) = planar(n, k, keep, seed) else { return Ok(()) };
        let inst = gen.instance;
        prop_assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst.clone());
        // with non-trivial original ids too
        let x = inst.key_vertices();
        let doomed: Vec<usize> = (0..inst.n()).filter(|v| !x.contains(v)).take(cut).collect();
        let sub = inst.delete_vertices(&doomed).unwrap();
        prop_assert_eq!(parse_instance(&write_instance(&sub)).unwrap(), sub);
    }

    #[test]
    fn deletion_is_the_induced_subgraph(n in 5usize..30, k in 1usize..4, keep in 0.0f64..=1.0, seed: u64) {
        let Some(gen) = planar(n, k, keep, seed) else { return Ok(()) };
        let inst = gen.instance;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = inst.key_vertices();
        let doomed: Vec<usize> = (0..inst.n()).filter(|v| !x.contains(v) && rng.gen_bool(0.4)).collect();
        let sub = inst.delete_vertices(&doomed).unwrap();
        prop_assert_eq!(sub.k(), inst.k());
        let ids = sub.original_ids();
        prop_assert_eq!(ids.len(), inst.n() - doomed.len());
        for (a, &u) in ids.iter().enumerate() {
            for (b, &v) in ids.iter().enumerate() {
                prop_assert_eq!(sub.graph().has_edge(a, b), inst.graph().has_edge(u, v));
            }
        }
        let back = |vs: &[usize]| vs.iter().map(|&v| ids[v]).collect::<Vec<_>>();
        prop_assert_eq!(back(sub.source()), inst.source().to_vec());
        prop_assert_eq!(back(sub.target()), inst.target().to_vec());
        if let Some(&t) = inst.source().first() {
            prop_assert!(inst.delete_vertices(&[t]).is_err());
        }
    }

    #[test]
    fn generated_rotations_validate(n in 4usize..60, keep in 0.0f64..=1.0, seed: u64) {
        let Some(gen) = planar(n, 1, keep, seed) else { return Ok(()) };
        let inst = gen.instance;
        prop_assert!(validate_rotation_system(inst.graph(), inst.embedding().unwrap()).is_ok());
    }

    #[test]
    fn gadget_rotations_validate(sizes in prop::collection::vec(1usize..12, 1..4), w in wiring(), t in targets(),
                                 pad in 0usize..3, context: bool, seed: u64) {
        let p = GadgetParams { class: GraphClass::Planar, sizes, wiring: w, k_pad: pad, targets: t, context, seed };
        let inst = gen_two_class_gadget(&p).unwrap().instance;
        prop_assert!(validate_rotation_system(inst.graph(), inst.embedding().unwrap()).is_ok());
    }

    #[test]
    fn k5_and_k33_have_no_planar_rotation(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in [complete(5), k33()] {
            let rot = random_rotation(&g, &mut rng);
            prop_assert!(validate_rotation_system(&g, &rot).is_err());
        }
    }

    #[test]
    fn projection_partitions_vertices(n in 5usize..40, k in 1usize..5, keep in 0.0f64..=1.0, seed: u64) {
        let Some(gen) = planar(n, k, keep, seed) else { return Ok(()) };
        let inst = gen.instance;
        let dec = compute_projection(&inst);
        prop_assert_eq!(dec.c1.len() + dec.c2.len() + dec.c3.len() + dec.x.len(), inst.n());
        let g = inst.graph();
        for (y, members) in &dec.classes {
            for &v in members {
                let seen: Vec<usize> = dec.x.iter().copied().filter(|&x| g.has_edge(v, x)).collect();
                prop_assert_eq!(&seen, y);
            }
        }
        prop_assert!(dec.n2 <= 3 * dec.x.len());
        prop_assert!(dec.n3 <= 2 * dec.x.len());
    }

    #[test]
    fn class_structure_is_a_maximum_independent_set(size in 1usize..=12, w in wiring(), t in targets(), seed: u64) {
        let p = GadgetParams { class: GraphClass::Planar, sizes: vec![size], wiring: w, k_pad: 0, targets: t, context: false, seed };
        let inst = gen_two_class_gadget(&p).unwrap().instance;
        let g = inst.graph();
        let dec = compute_projection(&inst);
        for cls in dec.two_classes() {
            let s = two_class_structure(g, &cls).unwrap();
            prop_assert!(is_independent(g, &s.max_independent).unwrap());
            prop_assert!(s.max_independent.iter().all(|v| cls.members.contains(v)));
            let m = cls.members.len();
            let best = (0u32..1 << m)
                .filter(|mask| {
                    let pick: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| cls.members[i]).collect();
                    is_independent(g, &pick).unwrap()
                })
                .map(|mask| mask.count_ones() as usize)
                .max()
                .unwrap();
            prop_assert_eq!(s.max_independent.len(), best);
        }
    }

    #[test]
    fn coloring_is_proper_and_within_degeneracy(n in 1usize..40, keep in 0.0f64..=1.0, seed: u64) {
        let Some(gen) = planar(n.max(4), 1, keep, seed) else { return Ok(()) };
        let g = gen.instance.graph().clone();
        let col = color_graph(&g);
        for (u, v) in g.edges() {
            prop_assert_ne!(col.color_of[u], col.color_of[v]);
        }
        prop_assert!(col.color_count <= col.degeneracy + 1);
        prop_assert!(col.degeneracy <= 5);
    }

    #[test]
    fn pigeonhole_extraction_succeeds(n in 4usize..40, keep in 0.0f64..=1.0, seed: u64, frac in 0.2f64..=1.0) {
        let Some(gen) = planar(n, 1, keep, seed) else { return Ok(()) };
        let g = gen.instance.graph();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let pool: Vec<usize> = (0..g.n()).filter(|_| rng.gen_bool(frac)).collect();
        let (sub, _) = g.induced(&pool);
        let c = color_graph(&sub).color_count.max(1);
        let target = pool.len() / c;
        let got = extract_independent(g, &pool, target);
        prop_assert!(got.is_some());
        let got = got.unwrap();
        prop_assert_eq!(got.len(), target);
        prop_assert!(is_independent(g, &got).unwrap());
        prop_assert!(got.iter().all(|v| pool.contains(v)));
    }

    #[test]
    fn generators_are_deterministic(n in 4usize..40, k in 1usize..4, keep in 0.0f64..=1.0, seed: u64) {
        let a = planar(n, k, keep, seed).map(|g| write_instance(&g.instance));
        let b = planar(n, k, keep, seed).map(|g| write_instance(&g.instance));
        prop_assert_eq!(a, b);
    }
}

#[test]
fn instance_rejects_dependent_tokens() {
    let g = complete(3);
    assert!(Instance::new(g, &[0, 1], &[2, 0], GraphClass::Planar, None).is_err());
}
