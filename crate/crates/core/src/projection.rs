//! X-projection classes: every non-key vertex is grouped by its exact
//! neighborhood inside `X = I_s ∪ I_t`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::KernelError;
use crate::graph::{Graph, Instance, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionDecomposition {
    pub x: Vec<Vertex>,
    /// Class key (sorted) to members (sorted). Only nonempty classes.
    pub classes: BTreeMap<Vec<Vertex>, Vec<Vertex>>,
    pub c1: Vec<Vertex>,
    pub c2: Vec<Vertex>,
    pub c3: Vec<Vertex>,
    pub n2: usize,
    pub n3: usize,
}

/// A 2-class: its key pair (`x < x'`) and members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TwoClassRef {
    pub keys: (Vertex, Vertex),
    pub members: Vec<Vertex>,
}

impl TwoClassRef {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn has_key(&self, v: Vertex) -> bool {
        self.keys.0 == v || self.keys.1 == v
    }
}

impl ProjectionDecomposition {
    /// All 2-classes in ascending key order.
    pub fn two_classes(&self) -> Vec<TwoClassRef> {
        self.classes
            .iter()
            .filter(|(y, _)| y.len() == 2)
            .map(|(y, m)| TwoClassRef { keys: (y[0], y[1]), members: m.clone() })
            .collect()
    }

    pub fn contains_class(&self, cls: &TwoClassRef) -> bool {
        self.classes.get(&vec![cls.keys.0, cls.keys.1]) == Some(&cls.members)
    }

    /// Class sizes: size → number of classes with that many members.
    pub fn size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for m in self.classes.values() {
            *h.entry(m.len()).or_default() += 1;
        }
        h
    }
}

pub fn compute_projection(inst: &Instance) -> ProjectionDecomposition {
    let g = inst.graph();
    let x = inst.key_vertices();
    let xb = g.bitset_of(&x);
    let mut classes: BTreeMap<Vec<Vertex>, Vec<Vertex>> = BTreeMap::new();
    let (mut c1, mut c2, mut c3) = (Vec::new(), Vec::new(), Vec::new());
    for v in 0..g.n() {
        if xb.contains(v) {
            continue;
        }
        let mut y = g.neighbor_bits(v).clone();
        y.intersect_with(&xb);
        let y = y.to_vec();
        match y.len() {
            0 | 1 => c1.push(v),
            2 => c2.push(v),
            _ => c3.push(v),
        }
        classes.entry(y).or_default().push(v);
    }
    let n2 = classes.keys().filter(|y| y.len() == 2).count();
    let n3 = classes.keys().filter(|y| y.len() >= 3).count();
    ProjectionDecomposition { x, classes, c1, c2, c3, n2, n3 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LockStatus {
    Locked,
    Unlocked,
}

/// Locked iff both key vertices of `cls` carry tokens.
pub fn locked_status(
    dec: &ProjectionDecomposition,
    cls: &TwoClassRef,
    tokens: &[Vertex],
) -> Result<LockStatus, KernelError> {
    if !dec.contains_class(cls) {
        return Err(KernelError::UnknownClass(cls.keys));
    }
    let on = |v| tokens.contains(&v);
    Ok(if on(cls.keys.0) && on(cls.keys.1) { LockStatus::Locked } else { LockStatus::Unlocked })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassKind {
    Cycle,
    PathUnion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassStructure {
    pub kind: ClassKind,
    pub max_independent: Vec<Vertex>,
}

/// Shape of the subgraph induced by a 2-class's members, plus a maximum
/// independent subset. In a planar graph the members induce a cycle or a
/// disjoint union of paths; a member with three neighbors inside the class
/// together with the two keys would form a K3,3.
pub fn two_class_structure(g: &Graph, cls: &TwoClassRef) -> Result<ClassStructure, KernelError> {
    let members = BitSet::from_iter(g.n(), cls.members.iter().copied());
    let inner = |v: Vertex| -> Vec<Vertex> { g.neighbors(v).iter().copied().filter(|&w| members.contains(w)).collect() };
    if cls.members.iter().any(|&v| inner(v).len() >= 3) {
        return Err(KernelError::EmbeddingClassViolation(cls.keys));
    }
    let mut seen = BitSet::new(g.n());
    let mut kind = ClassKind::PathUnion;
    let mut chosen = Vec::new();
    // paths first, walked from their lower-id endpoint
    for &v in &cls.members {
        if seen.contains(v) || inner(v).len() == 2 {
            continue;
        }
        let walk = walk_from(v, &inner, &mut seen);
        chosen.extend(walk.iter().step_by(2));
    }
    // whatever is left consists of cycles
    for &v in &cls.members {
        if seen.contains(v) {
            continue;
        }
        kind = ClassKind::Cycle;
        let walk = walk_from(v, &inner, &mut seen);
        chosen.extend(walk.iter().take(walk.len() / 2 * 2).step_by(2));
    }
    chosen.sort_unstable();
    Ok(ClassStructure { kind, max_independent: chosen })
}

fn walk_from(start: Vertex, inner: &dyn Fn(Vertex) -> Vec<Vertex>, seen: &mut BitSet) -> Vec<Vertex> {
    let mut walk = vec![start];
    seen.insert(start);
    let mut cur = start;
    loop {
        let next = inner(cur).into_iter().filter(|&w| !seen.contains(w)).min();
        match next {
            Some(w) => {
                seen.insert(w);
                walk.push(w);
                cur = w;
            }
            None => return walk,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphClass;

    fn c5_instance() -> Instance {
        let e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let g = Graph::from_edges(5, &e).unwrap();
        Instance::new(g, &[0, 2], &[1, 3], GraphClass::Planar, None).unwrap()
    }

    #[test]
    fn c5_projection() {
        let dec = compute_projection(&c5_instance());
        assert_eq!(dec.x, vec![0, 1, 2, 3]);
        assert_eq!(dec.classes.len(), 1);
        assert_eq!(dec.classes[&vec![0, 3]], vec![4]);
        assert_eq!((dec.n2, dec.n3), (1, 0));
        assert!(dec.c1.is_empty());
    }

    #[test]
    fn edgeless_graph_is_all_c1() {
        let inst = Instance::new(Graph::empty(5), &[0], &[1], GraphClass::Planar, None).unwrap();
        let dec = compute_projection(&inst);
        assert_eq!(dec.c1, vec![2, 3, 4]);
        assert_eq!(dec.classes[&vec![]], vec![2, 3, 4]);
    }

    #[test]
    fn k23_middle_is_one_class() {
        // a=0, b=1, middle 2,3,4, extra key 5
        let g = Graph::from_edges(6, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let inst = Instance::new(g, &[0, 1], &[0, 5], GraphClass::Planar, None).unwrap();
        let dec = compute_projection(&inst);
        assert_eq!(dec.n2, 1);
        assert_eq!(dec.two_classes()[0], TwoClassRef { keys: (0, 1), members: vec![2, 3, 4] });
    }

    #[test]
    fn lock_status_examples() {
        let dec = compute_projection(&c5_instance());
        let cls = dec.two_classes()[0].clone();
        assert_eq!(locked_status(&dec, &cls, &[0, 2]).unwrap(), LockStatus::Unlocked);
        assert_eq!(locked_status(&dec, &cls, &[0, 3]).unwrap(), LockStatus::Locked);
        assert_eq!(locked_status(&dec, &cls, &[1]).unwrap(), LockStatus::Unlocked);
        let bogus = TwoClassRef { keys: (1, 2), members: vec![4] };
        assert!(locked_status(&dec, &bogus, &[1, 2]).is_err());
    }

    fn class_on(n: usize, extra: &[(usize, usize)]) -> (Graph, TwoClassRef) {
        // keys 0 and 1, members 2..n
        let mut e: Vec<_> = (2..n).flat_map(|m| [(0, m), (1, m)]).collect();
        e.extend_from_slice(extra);
        let g = Graph::from_edges(n, &e).unwrap();
        (g, TwoClassRef { keys: (0, 1), members: (2..n).collect() })
    }

    #[test]
    fn structure_examples() {
        let (g, cls) = class_on(5, &[(2, 3), (3, 4)]);
        let s = two_class_structure(&g, &cls).unwrap();
        assert_eq!(s.kind, ClassKind::PathUnion);
        assert_eq!(s.max_independent, vec![2, 4]);

        let (g, cls) = class_on(6, &[(2, 3), (3, 4), (4, 5), (5, 2)]);
        let s = two_class_structure(&g, &cls).unwrap();
        assert_eq!(s.kind, ClassKind::Cycle);
        assert_eq!(s.max_independent.len(), 2);

        let (g, cls) = class_on(6, &[(2, 3), (2, 4), (2, 5)]);
        assert_eq!(two_class_structure(&g, &cls), Err(KernelError::EmbeddingClassViolation((0, 1))));
    }

    #[test]
    fn path_walk_starts_at_endpoint() {
        // path 3-2-4 where the lowest id is in the middle
        let (g, cls) = class_on(5, &[(2, 3), (2, 4)]);
        let s = two_class_structure(&g, &cls).unwrap();
        assert_eq!(s.max_independent, vec![3, 4]);
    }
}
