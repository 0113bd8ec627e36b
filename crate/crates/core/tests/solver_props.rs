//! Properties of the BFS oracle, checked against an iterative-deepening
//! search written here.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isr_kernel::harness::gen::{gen_planar_instance, PlanarGenParams};
use isr_kernel::solver::{solve_bfs, verify_sequence, SolveLimits, Verdict};
use isr_kernel::{Graph, GraphClass, Instance};

fn small_instance(n: usize, k: usize, keep: f64, seed: u64) -> Option<Instance> {
    gen_planar_instance(PlanarGenParams { n, k, edge_keep_prob: keep, seed }, GraphClass::Planar).ok().map(|g| g.instance)
}

/// Depth-limited DFS over token sets; true if `target` is reachable in at
/// most `depth` jumps.
fn reachable_within(g: &Graph, cur: &mut Vec<usize>, target: &[usize], depth: usize) -> bool {
    let mut sorted = cur.clone();
    sorted.sort_unstable();
    if sorted == target {
        return true;
    }
    if depth == 0 {
        return false;
    }
    for i in 0..cur.len() {
        let from = cur[i];
        for to in 0..g.n() {
            if cur.contains(&to) || cur.iter().any(|&u| u != from && g.has_edge(u, to)) {
                continue;
            }
            cur[i] = to;
            let hit = reachable_within(g, cur, target, depth - 1);
            cur[i] = from;
            if hit {
                return true;
            }
        }
    }
    false
}

fn count_states(n: usize, k: usize) -> u64 {
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn yes_sequences_replay_and_are_shortest(n in 4usize..=10, k in 1usize..=3, keep in 0.0f64..=1.0, seed: u64) {
        let Some(inst) = small_instance(n, k, keep, seed) else { return Ok(()) };
        prop_assume!(count_states(n, k) <= 10_000);
        let out = solve_bfs(&inst, SolveLimits::default());
        let mut start = inst.source().to_vec();
        match &out.verdict {
            Verdict::Yes { sequence, length } => {
                prop_assert!(verify_sequence(&inst, sequence).is_ok());
                prop_assert_eq!(sequence.len(), *length);
                prop_assert!(reachable_within(inst.graph(), &mut start, inst.target(), *length));
                if *length > 0 {
                    prop_assert!(!reachable_within(inst.graph(), &mut start, inst.target(), length - 1));
                }
            }
            Verdict::No => {
                // n jumps more than covers any shortest route here
                prop_assert!(!reachable_within(inst.graph(), &mut start, inst.target(), n.min(6)));
            }
            Verdict::ResourceLimit => prop_assert!(false, "limit hit on a tiny instance"),
        }
    }

    #[test]
    fn jumps_are_symmetric(n in 4usize..=16, k in 1usize..=4, keep in 0.0f64..=1.0, seed: u64) {
        let Some(inst) = small_instance(n, k, keep, seed) else { return Ok(()) };
        let fwd = solve_bfs(&inst, SolveLimits::default()).verdict;
        let back = solve_bfs(&inst.swapped(), SolveLimits::default()).verdict;
        prop_assert_eq!(fwd.is_yes(), back.is_yes());
        if let (Verdict::Yes { length: a, .. }, Verdict::Yes { length: b, .. }) = (&fwd, &back) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn deleting_a_free_vertex_never_helps(n in 5usize..=16, k in 1usize..=4, keep in 0.0f64..=1.0, seed: u64) {
        let Some(inst) = small_instance(n, k, keep, seed) else { return Ok(()) };
        let x = inst.key_vertices();
        let free: Vec<usize> = (0..n).filter(|v| !x.contains(v)).collect();
        prop_assume!(!free.is_empty());
        let v = free[ChaCha8Rng::seed_from_u64(seed).gen_range(0..free.len())];
        let before = solve_bfs(&inst, SolveLimits::default()).verdict;
        let after = solve_bfs(&inst.delete_vertices(&[v]).unwrap(), SolveLimits::default()).verdict;
        prop_assert!(before.is_yes() || !after.is_yes());
    }

    #[test]
    fn bfs_is_deterministic(n in 4usize..=16, k in 1usize..=4, keep in 0.0f64..=1.0, seed: u64) {
        let Some(inst) = small_instance(n, k, keep, seed) else { return Ok(()) };
        prop_assert_eq!(solve_bfs(&inst, SolveLimits::default()), solve_bfs(&inst, SolveLimits::default()));
    }
}

#[test]
fn state_limit_is_reported() {
    let inst = Instance::new(Graph::empty(30), &[0, 1, 2, 3], &[4, 5, 6, 7], GraphClass::Planar, None).unwrap();
    let out = solve_bfs(&inst, SolveLimits { max_states: 10, max_millis: 60_000 });
    // four isolated tokens can reach the target in four jumps, but not
    // within ten states
    assert_eq!(out.verdict, Verdict::ResourceLimit);
}
