//! Clean independent sets: classification against one side's tokens, the
//! construction from per-class independent sets, and route certificates.

use serde::Serialize;

use super::anticomplete::{anticompleteify, AnticompleteResult};
use super::greedy::{check_greedy, GreedyOutcome};
use crate::bitset::BitSet;
use crate::error::KernelError;
use crate::graph::{is_independent, Instance, Jump, ReconfSequence, RotationSystem, Vertex};
use crate::projection::{two_class_structure, ProjectionDecomposition, TwoClassRef};
use crate::solver::{search, SolveLimits, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Source,
    Target,
}

impl Side {
    pub fn tokens(self, inst: &Instance) -> &[Vertex] {
        match self {
            Side::Source => inst.source(),
            Side::Target => inst.target(),
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Source => Side::Target,
            Side::Target => Side::Source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CleanVerdict {
    Greedy,
    ThreeClean,
    TwoTwoClean,
    NotClean,
    Undecided,
}

impl CleanVerdict {
    pub fn is_clean(self) -> bool {
        matches!(self, CleanVerdict::Greedy | CleanVerdict::ThreeClean | CleanVerdict::TwoTwoClean)
    }
}

/// The opening two-token exchange of a weakly greedy set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Activation {
    /// Tokens that leave first.
    pub token_pair: (Vertex, Vertex),
    /// Vertices of the set they are exchanged for.
    pub set_pair: (Vertex, Vertex),
    /// Keys of the host class, then of the second class for (2,2).
    pub hosts: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanClassification {
    pub verdict: CleanVerdict,
    /// `i_order[t]` is replaced by `j_order[t]`; for weakly greedy sets the
    /// first two entries are the activation pairs.
    pub i_order: Vec<Vertex>,
    pub j_order: Vec<Vertex>,
    pub activation: Option<Activation>,
}

impl CleanClassification {
    fn bare(verdict: CleanVerdict) -> Self {
        CleanClassification { verdict, i_order: Vec::new(), j_order: Vec::new(), activation: None }
    }
}

/// Members of `set` in each 2-class.
fn hits(dec: &ProjectionDecomposition, set: &[Vertex]) -> Vec<(TwoClassRef, Vec<Vertex>)> {
    dec.two_classes()
        .into_iter()
        .map(|c| {
            let inside: Vec<Vertex> = c.members.iter().copied().filter(|m| set.contains(m)).collect();
            (c, inside)
        })
        .collect()
}

fn three_host(hits: &[(TwoClassRef, Vec<Vertex>)], j1: Vertex, j2: Vertex) -> Option<Vec<(Vertex, Vertex)>> {
    hits.iter()
        .find(|(_, h)| h.len() >= 3 && h.contains(&j1) && h.contains(&j2))
        .map(|(c, _)| vec![c.keys])
}

fn two_two_host(hits: &[(TwoClassRef, Vec<Vertex>)], j1: Vertex, j2: Vertex) -> Option<Vec<(Vertex, Vertex)>> {
    let (c, _) = hits.iter().find(|(_, h)| h.len() == 2 && h.contains(&j1) && h.contains(&j2))?;
    hits.iter()
        .find(|(d, h)| d.keys != c.keys && h.len() >= 2 && (d.has_key(c.keys.0) || d.has_key(c.keys.1)))
        .map(|(d, _)| vec![c.keys, d.keys])
}

/// Classifies `set` (independent, inside C2) against the tokens of `side`.
pub fn classify_clean(inst: &Instance, dec: &ProjectionDecomposition, set: &[Vertex], side: Side) -> CleanClassification {
    let g = inst.graph();
    let tokens = side.tokens(inst);
    match check_greedy(g, tokens, set) {
        GreedyOutcome::Greedy { i_order, j_order } => {
            return CleanClassification { verdict: CleanVerdict::Greedy, i_order, j_order, activation: None }
        }
        GreedyOutcome::Undecided => return CleanClassification::bare(CleanVerdict::Undecided),
        GreedyOutcome::NotGreedy => {}
    }
    let hits = hits(dec, set);
    let mut two_two: Option<CleanClassification> = None;
    let mut undecided = false;
    for a in 0..tokens.len() {
        for b in a + 1..tokens.len() {
            let (i1, i2) = (tokens[a], tokens[b]);
            for x in 0..set.len() {
                for y in x + 1..set.len() {
                    let (j1, j2) = (set[x], set[y]);
                    let host = match three_host(&hits, j1, j2) {
                        Some(h) => Some((CleanVerdict::ThreeClean, h)),
                        None if two_two.is_none() => two_two_host(&hits, j1, j2).map(|h| (CleanVerdict::TwoTwoClean, h)),
                        None => None,
                    };
                    let Some((verdict, hosts)) = host else { continue };
                    let mut mixed: Vec<Vertex> = tokens.iter().copied().filter(|&t| t != i1 && t != i2).collect();
                    if mixed.contains(&j1) || mixed.contains(&j2) {
                        continue;
                    }
                    mixed.push(j1);
                    mixed.push(j2);
                    if !is_independent(g, &mixed).unwrap_or(false) {
                        continue;
                    }
                    match check_greedy(g, &mixed, set) {
                        GreedyOutcome::Greedy { i_order, j_order } => {
                            // the two placed vertices are shared and head the witness
                            let rest = i_order.iter().zip(&j_order).filter(|(i, _)| **i != j1 && **i != j2);
                            let mut io = vec![i1, i2];
                            let mut jo = vec![j1, j2];
                            for (&i, &j) in rest {
                                io.push(i);
                                jo.push(j);
                            }
                            let found = CleanClassification {
                                verdict,
                                i_order: io,
                                j_order: jo,
                                activation: Some(Activation { token_pair: (i1, i2), set_pair: (j1, j2), hosts }),
                            };
                            if verdict == CleanVerdict::ThreeClean {
                                return found;
                            }
                            two_two = Some(found);
                        }
                        GreedyOutcome::Undecided => undecided = true,
                        GreedyOutcome::NotGreedy => {}
                    }
                }
            }
        }
    }
    two_two.unwrap_or_else(|| {
        CleanClassification::bare(if undecided { CleanVerdict::Undecided } else { CleanVerdict::NotClean })
    })
}

/// True when some `q >= 1` classes with a key outside `tokens` hold at
/// least `2q + 2k` vertices together. Only the full collection of such
/// classes is tested.
pub fn sufficient_greedy_by_volume(dec: &ProjectionDecomposition, tokens: &[Vertex]) -> bool {
    let k = tokens.len();
    let (q, total) = dec
        .two_classes()
        .iter()
        .filter(|c| !tokens.contains(&c.keys.0) || !tokens.contains(&c.keys.1))
        .fold((0, 0), |(q, t), c| (q + 1, t + c.len()));
    q > 0 && total >= 2 * q + 2 * k
}

/// One side's choice inside the clean set.
#[derive(Debug, Clone)]
pub struct SideChoice {
    pub side: Side,
    pub part: Vec<Vertex>,
    pub construction: &'static str,
    /// Classification of the whole set against this side.
    pub classification: CleanClassification,
}

#[derive(Debug, Clone)]
pub struct CleanSet {
    pub set: Vec<Vertex>,
    pub i0: Vec<Vertex>,
    pub trim: AnticompleteResult,
    pub sides: [SideChoice; 2],
}

/// Per-class slice of `I_0` with the class keys.
struct Portion {
    keys: (Vertex, Vertex),
    verts: Vec<Vertex>,
}

fn push_all(out: &mut Vec<Vertex>, vs: &[Vertex], cap: usize) {
    for &v in vs {
        if out.len() >= cap {
            return;
        }
        if !out.contains(&v) {
            out.push(v);
        }
    }
}

/// Candidate sets for one side, in the order the construction tries them.
fn candidates(portions: &[Portion], tokens: &[Vertex]) -> Vec<(&'static str, Vec<Vertex>)> {
    let k = tokens.len();
    let bad = |p: &Portion| tokens.contains(&p.keys.0) && tokens.contains(&p.keys.1);
    let good: Vec<Vertex> = {
        let mut vs: Vec<Vertex> = portions.iter().filter(|p| !bad(p)).flat_map(|p| p.verts.iter().copied()).collect();
        vs.sort_unstable();
        vs
    };
    let big_bad: Vec<&Portion> = portions.iter().filter(|p| bad(p) && p.verts.len() >= 2).collect();
    let small_bad: Vec<&Portion> = portions.iter().filter(|p| bad(p) && p.verts.len() == 1).collect();
    let mut out = Vec::new();

    if good.len() >= k {
        out.push(("good", good[..k].to_vec()));
    }
    // (2,2): two non-small bad classes sharing a key
    for (x, c) in big_bad.iter().enumerate() {
        for d in &big_bad[x + 1..] {
            let shared = d.keys.0 == c.keys.0 || d.keys.0 == c.keys.1 || d.keys.1 == c.keys.0 || d.keys.1 == c.keys.1;
            if !shared {
                continue;
            }
            for (first, second) in [(c, d), (d, c)] {
                let mut set = first.verts[..2].to_vec();
                set.extend_from_slice(&second.verts[..2]);
                let cap = k.max(4);
                push_all(&mut set, &second.verts, cap);
                for p in &big_bad {
                    if p.keys != c.keys && p.keys != d.keys {
                        push_all(&mut set, &p.verts, cap);
                    }
                }
                for p in &small_bad {
                    push_all(&mut set, &p.verts, cap);
                }
                push_all(&mut set, &good, cap);
                out.push(("two-two", set));
            }
        }
    }
    // 3-clean: a bad class holding at least three vertices of I_0
    for c in big_bad.iter().filter(|p| p.verts.len() >= 3) {
        let cap = k.max(3);
        let mut set = Vec::new();
        push_all(&mut set, &c.verts, cap);
        for p in big_bad.iter().filter(|p| p.keys != c.keys) {
            push_all(&mut set, &p.verts, cap);
        }
        for p in &small_bad {
            push_all(&mut set, &p.verts, cap);
        }
        push_all(&mut set, &good, cap);
        out.push(("three", set));
    }
    for (_, set) in out.iter_mut() {
        set.sort_unstable();
    }
    out
}

/// Builds an independent set that is clean for both sides out of the
/// trimmed classes' maximum independent subsets, keeping the smallest
/// passing union. `None` when every candidate fails classification (which
/// includes undecided checks).
pub fn find_clean_set(
    inst: &Instance,
    dec: &ProjectionDecomposition,
    rot: &RotationSystem,
) -> Result<Option<CleanSet>, KernelError> {
    let g = inst.graph();
    let classes = dec.two_classes();
    let trim = anticompleteify(g, &classes, rot, false)?;
    let mut portions = Vec::with_capacity(classes.len());
    let mut i0 = Vec::new();
    for (c, kept) in classes.iter().zip(&trim.trimmed) {
        let cls = TwoClassRef { keys: c.keys, members: kept.clone() };
        let verts = two_class_structure(g, &cls)?.max_independent;
        i0.extend_from_slice(&verts);
        portions.push(Portion { keys: c.keys, verts });
    }
    i0.sort_unstable();
    if !is_independent(g, &i0)? {
        return Err(KernelError::EmbeddingInconsistent("union of per-class independent sets is not independent".into()));
    }

    let first = Side::Source;
    let second = Side::Target;
    let cands_first = candidates(&portions, first.tokens(inst));
    let cands_second = candidates(&portions, second.tokens(inst));
    let mut best: Option<CleanSet> = None;
    for (name1, part1) in &cands_first {
        if !classify_clean(inst, dec, part1, first).verdict.is_clean() {
            continue;
        }
        let reuse = std::iter::once(("shared", part1.clone()));
        for (name2, part2) in reuse.chain(cands_second.iter().map(|(n, s)| (*n, s.clone()))) {
            let mut set = part1.clone();
            set.extend(part2.iter().copied().filter(|v| !part1.contains(v)));
            set.sort_unstable();
            if best.as_ref().is_some_and(|b| b.set.len() <= set.len()) {
                continue;
            }
            let c1 = classify_clean(inst, dec, &set, first);
            let c2 = classify_clean(inst, dec, &set, second);
            if c1.verdict.is_clean() && c2.verdict.is_clean() {
                best = Some(CleanSet {
                    set,
                    i0: i0.clone(),
                    trim: trim.clone(),
                    sides: [
                        SideChoice { side: first, part: part1.clone(), construction: name1, classification: c1 },
                        SideChoice { side: second, part: part2, construction: name2, classification: c2 },
                    ],
                });
            }
        }
    }
    Ok(best)
}

/// A verified route from one side's tokens onto a `k`-subset of the clean
/// set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideCertificate {
    pub route: ReconfSequence,
    pub end: Vec<Vertex>,
    pub via: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideCheck {
    pub certificate: Option<SideCertificate>,
    /// Number of vertices outside the closed neighborhood of the tokens.
    pub outside: usize,
    /// Clean and at least three vertices outside the closed neighborhood.
    pub hypothesis: bool,
    pub volume: bool,
}

/// Extra vertices tried as the single helper outside tokens and set.
const HELPER_TRIES: usize = 16;

fn apply_jumps(start: &[Vertex], seq: &ReconfSequence) -> Vec<Vertex> {
    let mut cur = start.to_vec();
    for j in &seq.jumps {
        let at = cur.iter().position(|&v| v == j.from).expect("jump leaves a token");
        cur[at] = j.to;
    }
    cur.sort_unstable();
    cur
}

/// Tries to certify that the tokens of `side` reach a subset of `set`:
/// directly from a greedy witness, or, for a clean set with at least three
/// vertices outside `N[tokens]`, by a search confined to the tokens, the
/// set and at most one further vertex.
pub fn certify_side(
    inst: &Instance,
    dec: &ProjectionDecomposition,
    set: &[Vertex],
    side: Side,
    class: &CleanClassification,
) -> SideCheck {
    let g = inst.graph();
    let tokens = side.tokens(inst);
    let closed = {
        let mut b = g.neighborhood(tokens.iter().copied());
        for &t in tokens {
            b.insert(t);
        }
        b
    };
    let outside = g.n() - closed.len();
    let volume = sufficient_greedy_by_volume(dec, tokens);
    let hypothesis = class.verdict.is_clean() && outside >= 3;
    let mut check = SideCheck { certificate: None, outside, hypothesis, volume };

    if class.verdict == CleanVerdict::Greedy {
        let jumps: Vec<Jump> = class
            .i_order
            .iter()
            .zip(&class.j_order)
            .filter(|(i, j)| i != j)
            .map(|(&i, &j)| Jump::new(i, j))
            .collect();
        let route = ReconfSequence::new(jumps);
        let end = apply_jumps(tokens, &route);
        check.certificate = Some(SideCertificate { route, end, via: "greedy" });
        return check;
    }
    if !hypothesis {
        return check;
    }
    let in_set = BitSet::from_iter(g.n(), set.iter().copied());
    let target = |s: &[Vertex]| s.iter().all(|&v| in_set.contains(v));
    let mut base = in_set.clone();
    for &t in tokens {
        base.insert(t);
    }
    let helpers = (0..g.n()).filter(|&v| !closed.contains(v) && !base.contains(v)).take(HELPER_TRIES);
    let limits = SolveLimits { max_states: 200_000, max_millis: 5_000 };
    for helper in std::iter::once(None).chain(helpers.map(Some)) {
        let mut allowed = base.clone();
        if let Some(h) = helper {
            allowed.insert(h);
        }
        if let Verdict::Yes { sequence, .. } = search(g, tokens, &target, Some(&allowed), limits).verdict {
            let end = apply_jumps(tokens, &sequence);
            check.certificate = Some(SideCertificate { route: sequence, end, via: "restricted-search" });
            return check;
        }
    }
    check
}

/// Joins two side certificates into a full route: the first side onto its
/// subset, jumps inside the set, then the second route reversed.
pub fn join_certificates(a: &SideCertificate, b: &SideCertificate) -> ReconfSequence {
    let mut seq = a.route.clone();
    let leave: Vec<Vertex> = a.end.iter().copied().filter(|v| !b.end.contains(v)).collect();
    let enter: Vec<Vertex> = b.end.iter().copied().filter(|v| !a.end.contains(v)).collect();
    seq.extend(&ReconfSequence::new(leave.into_iter().zip(enter).map(|(f, t)| Jump::new(f, t)).collect()));
    seq.extend(&b.route.reversed());
    seq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, GraphClass};
    use crate::projection::compute_projection;
    use crate::solver::replay;

    /// Tokens on keys 0,1 (source) and 2,3 (target); class {4..=8} keyed
    /// by the source pair, class {9, 10} keyed by 2 and 3.
    fn locked_fan(size: usize) -> Instance {
        let mut e = Vec::new();
        let members: Vec<Vertex> = (4..4 + size).collect();
        for &m in &members {
            e.push((0, m));
            e.push((1, m));
        }
        let n = 4 + size + 2;
        for m in [n - 2, n - 1] {
            e.push((2, m));
            e.push((3, m));
        }
        Instance::new(Graph::from_edges(n, &e).unwrap(), &[0, 1], &[2, 3], GraphClass::Planar, None).unwrap()
    }

    #[test]
    fn anticomplete_set_is_greedy() {
        let inst = locked_fan(3);
        let dec = compute_projection(&inst);
        let c = classify_clean(&inst, &dec, &[4, 5], Side::Target);
        assert_eq!(c.verdict, CleanVerdict::Greedy);
    }

    #[test]
    fn locked_class_with_three_members_is_three_clean() {
        let inst = locked_fan(3);
        let dec = compute_projection(&inst);
        // both tokens see every member, so nothing is greedy
        let c = classify_clean(&inst, &dec, &[4, 5, 6], Side::Source);
        assert_eq!(c.verdict, CleanVerdict::ThreeClean);
        let act = c.activation.unwrap();
        assert_eq!(act.token_pair, (0, 1));
        assert_eq!(act.hosts, vec![(0, 1)]);
    }

    #[test]
    fn two_members_alone_are_not_three_clean() {
        let inst = locked_fan(3);
        let dec = compute_projection(&inst);
        let c = classify_clean(&inst, &dec, &[4, 5], Side::Source);
        assert_eq!(c.verdict, CleanVerdict::NotClean);
    }

    #[test]
    fn shared_key_classes_give_two_two() {
        // source tokens 0,1,2; classes keyed (0,1) and (1,2), two members each
        let e = [(0, 3), (1, 3), (0, 4), (1, 4), (1, 5), (2, 5), (1, 6), (2, 6)];
        let mut g_edges = e.to_vec();
        g_edges.push((7, 8));
        let g = Graph::from_edges(10, &g_edges).unwrap();
        let inst = Instance::new(g, &[0, 1, 2], &[7, 9, 2], GraphClass::Planar, None).unwrap();
        let dec = compute_projection(&inst);
        let c = classify_clean(&inst, &dec, &[3, 4, 5, 6], Side::Source);
        assert_eq!(c.verdict, CleanVerdict::TwoTwoClean);
    }

    #[test]
    fn volume_examples() {
        // one class keyed (0, 2) with an outside key, size 2 + 2k = 6
        let mut e = Vec::new();
        for m in 4..10 {
            e.push((0, m));
            e.push((2, m));
        }
        let inst =
            Instance::new(Graph::from_edges(10, &e).unwrap(), &[0, 1], &[2, 3], GraphClass::Planar, None).unwrap();
        let dec = compute_projection(&inst);
        assert!(sufficient_greedy_by_volume(&dec, inst.source()));
        let smaller = inst.delete_vertices(&[9]).unwrap();
        assert!(!sufficient_greedy_by_volume(&compute_projection(&smaller), smaller.source()));
        // every class locked for the source: q = 0
        let locked = locked_fan(8);
        let only_locked = locked.delete_vertices(&[12, 13]).unwrap();
        assert!(!sufficient_greedy_by_volume(&compute_projection(&only_locked), only_locked.source()));
    }

    #[test]
    fn greedy_certificates_replay() {
        let inst = locked_fan(3);
        let dec = compute_projection(&inst);
        let set = [4, 5, 10, 11];
        let a = classify_clean(&inst, &dec, &set, Side::Target);
        let ca = certify_side(&inst, &dec, &set, Side::Target, &a).certificate.unwrap();
        assert!(replay(inst.graph(), inst.target(), &ca.end, &ca.route).is_ok());
    }

    #[test]
    fn three_clean_side_needs_room_outside() {
        let inst = locked_fan(5);
        let dec = compute_projection(&inst);
        let set = [4, 5, 6];
        let c = classify_clean(&inst, &dec, &set, Side::Source);
        let check = certify_side(&inst, &dec, &set, Side::Source, &c);
        // 2, 3 and the two target-class members lie outside N[{0, 1}]
        assert!(check.hypothesis);
        let cert = check.certificate.unwrap();
        assert!(replay(inst.graph(), inst.source(), &cert.end, &cert.route).is_ok());
    }
}
