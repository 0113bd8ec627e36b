//! Properties of both kernels and the planar building blocks.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isr_kernel::coloring::color_graph;
use isr_kernel::harness::gadget::{gen_two_class_gadget, GadgetParams, TargetStyle, Wiring};
use isr_kernel::harness::gen::{gen_planar_instance, PlanarGenParams};
use isr_kernel::kernel_general::{build_kernel_general, KernelVerdict};
use isr_kernel::planar::anticomplete::{anticompleteify, pairwise_anticomplete};
use isr_kernel::planar::greedy::{check_greedy, GreedyOutcome};
use isr_kernel::planar::rules::{
    apply_reduction_rules, color_removal, important_vertices, uncolor_fixpoint, ClassColor, BLUE_KEEP, RED_KEEP,
};
use isr_kernel::planar::{build_kernel_planar, build_kernel_planar_with, PlanarOptions};
use isr_kernel::projection::{compute_projection, TwoClassRef};
use isr_kernel::solver::{greedy_oracle, solve_bfs, SolveLimits, Verdict};
use isr_kernel::{Graph, GraphClass, Instance};

fn targets() -> impl Strategy<Value = TargetStyle> {
    prop_oneof![Just(TargetStyle::Pendant), Just(TargetStyle::Member), Just(TargetStyle::Mixed)]
}

fn gadget(class: GraphClass, sizes: Vec<usize>, wiring: Wiring, pad: usize, t: TargetStyle, context: bool, seed: u64) -> Instance {
    let p = GadgetParams { class, sizes, wiring, k_pad: pad, targets: t, context, seed };
    gen_two_class_gadget(&p).unwrap().instance
}

/// Any gadget shape, with sizes drawn to straddle the kernel thresholds.
fn planar_gadget(max: usize) -> impl Strategy<Value = Instance> {
    (
        prop_oneof![Just(Wiring::Independent), Just(Wiring::Path), Just(Wiring::Cycle), Just(Wiring::SharedKey), Just(Wiring::Triangle)],
        prop::collection::vec(1..max, 3),
        0usize..2,
        targets(),
        any::<bool>(),
        any::<u64>(),
    )
        .prop_map(|(w, mut sizes, pad, t, context, seed)| {
            let (sizes, pad) = match w {
                Wiring::Triangle => (sizes, 0),
                Wiring::SharedKey => (sizes.split_off(1), pad),
                _ => (sizes.split_off(2), pad),
            };
            gadget(GraphClass::Planar, sizes, w, pad, t, context, seed)
        })
}

fn same_answer(a: &Instance, b: &Instance) -> Option<bool> {
    let lim = SolveLimits::default();
    match (solve_bfs(a, lim).verdict, solve_bfs(b, lim).verdict) {
        (Verdict::ResourceLimit, _) | (_, Verdict::ResourceLimit) => None,
        (x, y) => Some(x.is_yes() == y.is_yes()),
    }
}

fn kept_keys(inst: &Instance, out: &Instance) -> bool {
    inst.key_vertices().iter().all(|x| out.original_ids().contains(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn general_kernel_contains_keys_and_bounds_c2(size in 1usize..40, wiring in prop_oneof![Just(Wiring::Independent), Just(Wiring::Path), Just(Wiring::Cycle)],
                                                 pad in 0usize..3, t in targets(), seed: u64) {
        let inst = gadget(GraphClass::K3rMinorFree(3), vec![size], wiring, pad, t, false, seed);
        let dec = compute_projection(&inst);
        let res = build_kernel_general(&inst, 3).unwrap();
        if let KernelVerdict::Reduced { instance } = &res.verdict {
            prop_assert!(kept_keys(&inst, instance));
            let gone: Vec<usize> = (0..inst.n()).filter(|v| !instance.original_ids().contains(v)).collect();
            prop_assert!(gone.iter().all(|v| dec.c2.contains(v)));
            let c = res.report.c;
            prop_assert!(res.report.final_c2 <= c * (dec.n2 * 11 + inst.k()));
            prop_assert_eq!(compute_projection(instance).c2.len(), res.report.final_c2);
        }
    }

    #[test]
    fn general_kernel_preserves_the_answer(n in 6usize..=24, k in 2usize..=4, keep in 0.3f64..=1.0, seed: u64) {
        let Ok(gen) = gen_planar_instance(PlanarGenParams { n, k, edge_keep_prob: keep, seed }, GraphClass::K3rMinorFree(3)) else {
            return Ok(());
        };
        let inst = gen.instance;
        match build_kernel_general(&inst, 3).unwrap().verdict {
            KernelVerdict::Reduced { instance } => prop_assert_ne!(same_answer(&inst, &instance), Some(false)),
            KernelVerdict::TrivialYes { .. } => prop_assert!(solve_bfs(&inst, SolveLimits::default()).verdict.is_yes()),
        }
    }

    #[test]
    fn big_fans_preserve_the_answer(size in 15usize..=21, t in targets(), seed: u64) {
        let inst = gadget(GraphClass::K3rMinorFree(3), vec![size], Wiring::Independent, 0, t, false, seed);
        if let KernelVerdict::Reduced { instance } = build_kernel_general(&inst, 3).unwrap().verdict {
            prop_assert_ne!(same_answer(&inst, &instance), Some(false));
        }
    }

    #[test]
    fn planar_kernel_is_safe_and_small(inst in planar_gadget(45)) {
        let res = build_kernel_planar(&inst).unwrap();
        match &res.verdict {
            KernelVerdict::Reduced { instance } => {
                prop_assert!(kept_keys(&inst, instance));
                if !res.report.non_tight {
                    prop_assert!(instance.n() <= (38 + res.report.c) * inst.k());
                }
                prop_assert_ne!(same_answer(&inst, instance), Some(false));
            }
            KernelVerdict::TrivialYes { .. } => prop_assert!(solve_bfs(&inst, SolveLimits::default()).verdict.is_yes()),
        }
    }

    #[test]
    fn supplied_four_coloring_gives_42k(sizes in prop::collection::vec(1usize..60, 3), t in targets(), context: bool, seed: u64) {
        let p = GadgetParams { class: GraphClass::Planar, sizes, wiring: Wiring::Triangle, k_pad: 0, targets: t, context, seed };
        let gen = gen_two_class_gadget(&p).unwrap();
        let col = isr_kernel::coloring::external_coloring(gen.instance.graph(), &gen.coloring).unwrap();
        prop_assert!(col.color_count <= 4);
        let res = build_kernel_planar_with(&gen.instance, &PlanarOptions { strict: true, coloring: Some(col) }).unwrap();
        if let KernelVerdict::Reduced { instance } = &res.verdict {
            prop_assert!(instance.n() <= 42 * gen.instance.k());
        }
    }

    #[test]
    fn anticompleteify_trims_at_most_two(inst in planar_gadget(30)) {
        let g = inst.graph();
        let classes = compute_projection(&inst).two_classes();
        let res = anticompleteify(g, &classes, inst.embedding().unwrap(), false).unwrap();
        for ((cls, kept), gone) in classes.iter().zip(&res.trimmed).zip(&res.removed) {
            prop_assert!(gone.len() <= 2);
            let mut all: Vec<usize> = kept.iter().chain(gone).copied().collect();
            all.sort_unstable();
            prop_assert_eq!(&all, &cls.members);
        }
        prop_assert!(pairwise_anticomplete(g, &res.trimmed));
    }

    #[test]
    fn greedy_checker_matches_oracle(n in 2usize..=12, p in 0.1f64..0.8, size in 1usize..=5, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let draw = |rng: &mut ChaCha8Rng| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            let mut s: Vec<usize> = Vec::new();
            for v in order {
                if s.len() < size && s.iter().all(|&u| !g.has_edge(u, v)) {
                    s.push(v);
                }
            }
            s
        };
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        prop_assume!(a.len() == b.len());
        let fast = match check_greedy(&g, &a, &b) {
            GreedyOutcome::Greedy { i_order, j_order } => {
                // the orders replay as independent swaps
                let mut cur = a.clone();
                for (i, j) in i_order.iter().zip(&j_order) {
                    let pos = cur.iter().position(|v| v == i).unwrap();
                    cur[pos] = *j;
                    prop_assert!(cur.iter().all(|&u| cur.iter().all(|&w| !g.has_edge(u, w))));
                }
                true
            }
            GreedyOutcome::NotGreedy => false,
            GreedyOutcome::Undecided => unreachable!("sizes stay below the limit"),
        };
        prop_assert_eq!(fast, greedy_oracle(&g, &a, &b).unwrap());
    }
}

fn random_classes(rng: &mut ChaCha8Rng) -> (Vec<TwoClassRef>, Vec<usize>) {
    let tokens: Vec<usize> = (0..rng.gen_range(2..=6)).collect();
    let mut pairs: Vec<(usize, usize)> = tokens.iter().flat_map(|&a| tokens.iter().filter(move |&&b| b > a).map(move |&b| (a, b))).collect();
    pairs.shuffle(rng);
    pairs.truncate(rng.gen_range(1..=pairs.len()));
    pairs.sort_unstable();
    let mut next = 100;
    let classes = pairs
        .into_iter()
        .map(|keys| {
            let size = rng.gen_range(1..=12);
            let members: Vec<usize> = (next..next + size).collect();
            next += size;
            TwoClassRef { keys, members }
        })
        .collect();
    (classes, tokens)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn color_removal_is_a_fixpoint(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (classes, tokens) = random_classes(&mut rng);
        let imp = important_vertices(&classes, &tokens);
        let col = color_removal(&classes, &imp).unwrap();
        prop_assert_eq!(uncolor_fixpoint(&classes, &imp, col.colors.clone()).unwrap(), col.clone());
        // red classes hang on a key with exactly two reds and no blue
        for (c, color) in classes.iter().zip(&col.colors) {
            if *color != ClassColor::Red {
                continue;
            }
            let pinned = [c.keys.0, c.keys.1].into_iter().any(|x| {
                let count = |want| classes.iter().zip(&col.colors).filter(|(d, k)| d.has_key(x) && **k == want).count();
                imp.contains(&x) && count(ClassColor::Red) == 2 && count(ClassColor::Blue) == 0
            });
            prop_assert!(pinned);
        }
    }

    #[test]
    fn rules_spare_tokens_set_and_protected(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (classes, tokens) = random_classes(&mut rng);
        let imp = important_vertices(&classes, &tokens);
        let col = color_removal(&classes, &imp).unwrap();
        let members: Vec<usize> = classes.iter().flat_map(|c| c.members.iter().copied()).collect();
        let set: Vec<usize> = members.iter().copied().filter(|_| rng.gen_bool(0.15)).collect();
        let protected: Vec<usize> = members.iter().copied().filter(|_| rng.gen_bool(0.1)).collect();
        let (doomed, counts) = apply_reduction_rules(&classes, &col, &set, &protected);
        prop_assert_eq!(doomed.len(), counts.total());
        prop_assert!(doomed.iter().all(|v| !set.contains(v) && !protected.contains(v) && !tokens.contains(v)));
        for (c, color) in classes.iter().zip(&col.colors) {
            let outside = c.members.iter().filter(|v| !set.contains(v)).count();
            let left = c.members.iter().filter(|v| !set.contains(v) && !doomed.contains(v)).count();
            let floor = match color {
                _ if c.len() <= 4 => outside,
                ClassColor::Blue => BLUE_KEEP.min(outside),
                ClassColor::Red => RED_KEEP.min(outside),
                ClassColor::Uncolored => 0,
            };
            prop_assert!(left >= floor);
        }
    }
}

#[test]
fn coloring_of_gadgets_is_small() {
    let inst = gadget(GraphClass::Planar, vec![30, 30, 30], Wiring::Triangle, 0, TargetStyle::Mixed, true, 1);
    assert!(color_graph(inst.graph()).color_count <= 4);
}
