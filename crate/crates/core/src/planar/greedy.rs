//! Exact test for whether tokens on `A` can be swapped one at a time onto
//! vertices of `B`, every intermediate set staying independent.

use crate::graph::{Graph, Vertex};

/// Largest `|A \ B|` handled by the subset dynamic program.
pub const GREEDY_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreedyOutcome {
    /// Swap `i_order[t]` for `j_order[t]` in turn.
    Greedy { i_order: Vec<Vertex>, j_order: Vec<Vertex> },
    NotGreedy,
    Undecided,
}

impl GreedyOutcome {
    pub fn is_greedy(&self) -> bool {
        matches!(self, GreedyOutcome::Greedy { .. })
    }
}

/// Decides greediness of `A -> B` for independent `A`, `B` with
/// `|B| >= |A|`; success means some `|A|`-subset of `B` is reached.
///
/// Vertices in both sets never need to move. For the rest, a vertex
/// `b ∈ B` becomes placeable once every `A`-neighbor of `b` has left, and
/// usable vertices only accumulate as more of `A` leaves. So an elimination
/// order of `A` works iff after each prefix `S` at least `|S|` vertices of
/// `B` have all their `A`-neighbors inside `S`; this is a DP over subsets.
pub fn check_greedy(g: &Graph, a: &[Vertex], b: &[Vertex]) -> GreedyOutcome {
    if b.len() < a.len() {
        return GreedyOutcome::NotGreedy;
    }
    let common: Vec<Vertex> = a.iter().copied().filter(|v| b.contains(v)).collect();
    let movers: Vec<Vertex> = a.iter().copied().filter(|v| !common.contains(v)).collect();
    let spots: Vec<Vertex> = b.iter().copied().filter(|v| !common.contains(v)).collect();
    let m = movers.len();
    if m > GREEDY_LIMIT {
        return GreedyOutcome::Undecided;
    }
    let need: Vec<u32> = spots
        .iter()
        .map(|&w| {
            movers.iter().enumerate().filter(|&(_, &v)| g.has_edge(v, w)).fold(0u32, |acc, (i, _)| acc | (1 << i))
        })
        .collect();

    let full = (1usize << m) - 1;
    // count[S] = number of spots whose A-neighborhood lies inside S
    let mut count = vec![0u32; 1 << m];
    for &mask in &need {
        count[mask as usize] += 1;
    }
    for bit in 0..m {
        for s in 0..=full {
            if s & (1 << bit) != 0 {
                count[s] += count[s ^ (1 << bit)];
            }
        }
    }
    let mut ok = vec![false; 1 << m];
    ok[0] = true;
    for s in 1..=full {
        if (count[s] as usize) < (s as u32).count_ones() as usize {
            continue;
        }
        let mut rest = s;
        while rest != 0 {
            let i = rest.trailing_zeros();
            rest &= rest - 1;
            if ok[s ^ (1 << i)] {
                ok[s] = true;
                break;
            }
        }
    }
    if !ok[full] {
        return GreedyOutcome::NotGreedy;
    }

    // walk back from the full set to recover an elimination order
    let mut order = Vec::with_capacity(m);
    let mut s = full;
    while s != 0 {
        let i = (0..m).find(|&i| s & (1 << i) != 0 && ok[s ^ (1 << i)]).unwrap();
        order.push(i);
        s ^= 1 << i;
    }
    order.reverse();

    let mut i_order = common.clone();
    let mut j_order = common;
    let mut used = vec![false; spots.len()];
    let mut gone = 0u32;
    for i in order {
        gone |= 1 << i;
        let j = (0..spots.len()).find(|&j| !used[j] && need[j] & !gone == 0).expect("count guarantees a free spot");
        used[j] = true;
        i_order.push(movers[i]);
        j_order.push(spots[j]);
    }
    GreedyOutcome::Greedy { i_order, j_order }
}
