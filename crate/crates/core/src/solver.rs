//! Exact ISR-TJ oracle: breadth-first search over sorted token tuples.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{GraphError, SequenceError};
use crate::graph::{Graph, Instance, Jump, ReconfSequence, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolveLimits {
    pub max_states: usize,
    pub max_millis: u64,
}

impl Default for SolveLimits {
    fn default() -> Self {
        SolveLimits { max_states: 5_000_000, max_millis: 60_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes { sequence: ReconfSequence, length: usize },
    No,
    ResourceLimit,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes { .. } => "yes",
            Verdict::No => "no",
            Verdict::ResourceLimit => "limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub states_explored: usize,
}

/// Visited set: open addressing over 64-bit fingerprints, each slot pointing
/// into a flat arena of tuples of stride `k`.
struct StateTable {
    k: usize,
    arena: Vec<u32>,
    parent: Vec<(u32, Jump)>,
    slots: Vec<u32>,
    prints: Vec<u64>,
    mask: usize,
}

const EMPTY: u32 = u32::MAX;

fn fingerprint(state: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &v in state {
        h ^= v as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
        h ^= h >> 29;
    }
    h.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

impl StateTable {
    fn new(k: usize) -> Self {
        let cap = 1 << 12;
        StateTable {
            k,
            arena: Vec::new(),
            parent: Vec::new(),
            slots: vec![EMPTY; cap],
            prints: vec![0; cap],
            mask: cap - 1,
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn state(&self, idx: usize) -> &[u32] {
        &self.arena[idx * self.k..(idx + 1) * self.k]
    }

    /// Inserts `state` unless present; returns its index when fresh.
    fn insert(&mut self, state: &[u32], parent: (u32, Jump)) -> Option<usize> {
        if (self.len() + 1) * 2 > self.slots.len() {
            self.grow();
        }
        let fp = fingerprint(state);
        let mut i = fp as usize & self.mask;
        loop {
            let s = self.slots[i];
            if s == EMPTY {
                let idx = self.len();
                self.slots[i] = idx as u32;
                self.prints[i] = fp;
                self.arena.extend_from_slice(state);
                self.parent.push(parent);
                return Some(idx);
            }
            if self.prints[i] == fp && self.state(s as usize) == state {
                return None;
            }
            i = (i + 1) & self.mask;
        }
    }

    fn grow(&mut self) {
        let cap = self.slots.len() * 2;
        let mut slots = vec![EMPTY; cap];
        let mut prints = vec![0; cap];
        let mask = cap - 1;
        for (&s, &fp) in self.slots.iter().zip(&self.prints) {
            if s == EMPTY {
                continue;
            }
            let mut i = fp as usize & mask;
            while slots[i] != EMPTY {
                i = (i + 1) & mask;
            }
            slots[i] = s;
            prints[i] = fp;
        }
        self.slots = slots;
        self.prints = prints;
        self.mask = mask;
    }

    fn path_to(&self, mut idx: usize) -> ReconfSequence {
        let mut jumps = Vec::new();
        while self.parent[idx].0 != EMPTY {
            let (p, j) = self.parent[idx];
            jumps.push(j);
            idx = p as usize;
        }
        jumps.reverse();
        ReconfSequence::new(jumps)
    }
}

/// BFS from `start` until a state satisfies `is_target`. Tokens may only
/// be placed on vertices of `allowed` (all vertices when `None`). Tokens
/// are tried in ascending order and placements in ascending order, so the
/// returned shortest sequence is deterministic.
pub fn search(
    g: &Graph,
    start: &[Vertex],
    is_target: &dyn Fn(&[Vertex]) -> bool,
    allowed: Option<&BitSet>,
    limits: SolveLimits,
) -> SolveOutcome {
    let n = g.n();
    let k = start.len();
    let mut first: Vec<Vertex> = start.to_vec();
    first.sort_unstable();
    if is_target(&first) {
        return SolveOutcome {
            verdict: Verdict::Yes { sequence: ReconfSequence::default(), length: 0 },
            states_explored: 1,
        };
    }
    let deadline = Instant::now() + Duration::from_millis(limits.max_millis);
    let mask = allowed.cloned().unwrap_or_else(|| BitSet::full(n));
    let words = mask.words().len();
    let nb: Vec<&[u64]> = (0..n).map(|v| g.neighbor_bits(v).words()).collect();

    let mut table = StateTable::new(k);
    let s0: Vec<u32> = first.iter().map(|&v| v as u32).collect();
    table.insert(&s0, (EMPTY, Jump::new(0, 0)));

    let mut occ = vec![0u64; words];
    let mut once = vec![0u64; words];
    let mut twice = vec![0u64; words];
    let mut cur: Vec<u32> = vec![0; k];
    let mut next: Vec<u32> = Vec::with_capacity(k);
    let mut as_vertices: Vec<Vertex> = Vec::with_capacity(k);
    let mut head = 0;
    while head < table.len() {
        if head % 4096 == 0 && Instant::now() > deadline {
            return SolveOutcome { verdict: Verdict::ResourceLimit, states_explored: table.len() };
        }
        cur.copy_from_slice(table.state(head));
        occ.iter_mut().for_each(|w| *w = 0);
        once.iter_mut().for_each(|w| *w = 0);
        twice.iter_mut().for_each(|w| *w = 0);
        for &t in &cur {
            let t = t as usize;
            occ[t / 64] |= 1 << (t % 64);
            for (i, &w) in nb[t].iter().enumerate() {
                twice[i] |= once[i] & w;
                once[i] |= w;
            }
        }
        for (ti, &t) in cur.iter().enumerate() {
            let tv = t as usize;
            for i in 0..words {
                let mut free = !occ[i] & !twice[i] & (!once[i] | nb[tv][i]) & mask.words()[i];
                while free != 0 {
                    let b = free.trailing_zeros() as usize;
                    free &= free - 1;
                    let w = i * 64 + b;
                    next.clear();
                    next.extend(cur.iter().enumerate().filter(|&(j, _)| j != ti).map(|(_, &x)| x));
                    let at = next.partition_point(|&x| (x as usize) < w);
                    next.insert(at, w as u32);
                    let jump = Jump::new(tv, w);
                    if let Some(idx) = table.insert(&next, (head as u32, jump)) {
                        as_vertices.clear();
                        as_vertices.extend(next.iter().map(|&x| x as usize));
                        if is_target(&as_vertices) {
                            let sequence = table.path_to(idx);
                            let length = sequence.len();
                            return SolveOutcome {
                                verdict: Verdict::Yes { sequence, length },
                                states_explored: table.len(),
                            };
                        }
                        if table.len() >= limits.max_states {
                            return SolveOutcome { verdict: Verdict::ResourceLimit, states_explored: table.len() };
                        }
                    }
                }
            }
        }
        head += 1;
    }
    SolveOutcome { verdict: Verdict::No, states_explored: table.len() }
}

pub fn solve_bfs(inst: &Instance, limits: SolveLimits) -> SolveOutcome {
    let target = inst.target().to_vec();
    search(inst.graph(), inst.source(), &|s: &[Vertex]| s == target.as_slice(), None, limits)
}

/// Replays `seq` from `from` and checks that it ends on `to`.
pub fn replay(g: &Graph, from: &[Vertex], to: &[Vertex], seq: &ReconfSequence) -> Result<(), SequenceError> {
    let n = g.n();
    let mut tokens = BitSet::from_iter(n, from.iter().copied());
    for (i, j) in seq.jumps.iter().enumerate() {
        let step = i + 1;
        for v in [j.from, j.to] {
            if v >= n {
                return Err(SequenceError::OutOfRange { step, vertex: v });
            }
        }
        if !tokens.contains(j.from) {
            return Err(SequenceError::NoToken { step, vertex: j.from });
        }
        if tokens.contains(j.to) {
            return Err(SequenceError::Occupied { step, vertex: j.to });
        }
        tokens.remove(j.from);
        let mut nb = g.neighbor_bits(j.to).clone();
        nb.intersect_with(&tokens);
        if !nb.is_empty() {
            return Err(SequenceError::NotIndependent { step });
        }
        tokens.insert(j.to);
    }
    if tokens != BitSet::from_iter(n, to.iter().copied()) {
        return Err(SequenceError::WrongTarget);
    }
    Ok(())
}

pub fn verify_sequence(inst: &Instance, seq: &ReconfSequence) -> Result<(), SequenceError> {
    replay(inst.graph(), inst.source(), inst.target(), seq)
}

pub const GREEDY_ORACLE_LIMIT: usize = 6;

/// Brute force over interleaved orderings: true iff `A` can be swapped into
/// `B` one token at a time, each intermediate set of `|A|` distinct
/// vertices staying independent. Failed partial states are memoized.
pub fn greedy_oracle(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Result<bool, GraphError> {
    for &v in a.iter().chain(b) {
        g.check_vertex(v)?;
    }
    if a.len() != b.len() || a.len() > GREEDY_ORACLE_LIMIT {
        return Err(GraphError::SizeMismatch { source_len: a.len(), target_len: b.len() });
    }
    let k = a.len();
    let mut dead = vec![false; 1 << (2 * k)];
    Ok(oracle_dfs(g, a, b, 0, 0, &mut dead))
}

fn oracle_dfs(g: &Graph, a: &[Vertex], b: &[Vertex], moved: usize, used: usize, dead: &mut [bool]) -> bool {
    let k = a.len();
    if moved == (1 << k) - 1 {
        return true;
    }
    let key = moved | (used << k);
    if dead[key] {
        return false;
    }
    for i in 0..k {
        if moved & (1 << i) != 0 {
            continue;
        }
        for j in 0..k {
            if used & (1 << j) != 0 {
                continue;
            }
            // the mixed set after the swap: placed B vertices, b[j], and the
            // A vertices still waiting
            let mut set: Vec<Vertex> = (0..k).filter(|&x| used & (1 << x) != 0).map(|x| b[x]).collect();
            set.push(b[j]);
            set.extend((0..k).filter(|&x| x != i && moved & (1 << x) == 0).map(|x| a[x]));
            let mut sorted = set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != k {
                continue;
            }
            let independent = set.iter().all(|&u| set.iter().all(|&w| !g.has_edge(u, w)));
            if independent && oracle_dfs(g, a, b, moved | (1 << i), used | (1 << j), dead) {
                return true;
            }
        }
    }
    dead[key] = true;
    false
}
