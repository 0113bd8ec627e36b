//! Trimming 2-classes until they are pairwise anticomplete, guided by the
//! embedding.
//!
//! A class with its two keys spans a `K_{2,m}` (plus edges inside the
//! class). Fix a reference face `p` of the whole drawing. In the
//! sub-embedding of a class, `p` falls into one face, whose boundary holds
//! at most two members; those are the only members that can see another
//! class from the outside. Removing them (where they actually touch
//! another class) leaves the classes pairwise anticomplete.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::embedding::{trace_faces, Faces};
use crate::error::KernelError;
use crate::graph::{Graph, RotationSystem, Vertex};
use crate::projection::TwoClassRef;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrimMethod {
    Unchanged,
    Embedding,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnticompleteResult {
    pub trimmed: Vec<Vec<Vertex>>,
    pub removed: Vec<Vec<Vertex>>,
    pub method: TrimMethod,
}

/// Largest number of touching classes handed to the exhaustive fallback.
pub const EXHAUSTIVE_CLASS_LIMIT: usize = 6;

/// Sub-embedding induced by one class and its keys.
struct ClassEmbedding {
    inside: BitSet,
    faces: Faces,
}

fn class_embedding(g: &Graph, rot: &RotationSystem, cls: &TwoClassRef) -> Result<ClassEmbedding, KernelError> {
    let mut inside = BitSet::new(g.n());
    inside.insert(cls.keys.0);
    inside.insert(cls.keys.1);
    for &m in &cls.members {
        inside.insert(m);
    }
    let restricted: Vec<Vec<Vertex>> = (0..g.n())
        .map(|v| {
            if inside.contains(v) {
                rot.of(v).iter().copied().filter(|&w| inside.contains(w)).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let faces = trace_faces(&restricted)?;
    Ok(ClassEmbedding { inside, faces })
}

impl ClassEmbedding {
    /// Face of the sub-embedding containing the angle at `v` that starts
    /// at neighbor `from` (in the full rotation) and turns toward the
    /// next neighbor.
    fn face_at(&self, rot: &RotationSystem, v: Vertex, from: Vertex) -> Option<usize> {
        let r = rot.of(v);
        let at = r.iter().position(|&w| w == from)?;
        (0..r.len())
            .map(|back| r[(at + r.len() - back) % r.len()])
            .find(|&w| self.inside.contains(w))
            .and_then(|w| self.faces.face_of_dart(w, v))
    }

    /// Face of the sub-embedding containing the full-graph face `walk`.
    fn face_containing(&self, g: &Graph, rot: &RotationSystem, walk: &[(Vertex, Vertex)]) -> Option<usize> {
        for &(u, v) in walk {
            if self.inside.contains(v) {
                return self.face_at(rot, v, u);
            }
        }
        // the face avoids the class: walk outside it to an attachment edge
        let start = walk.first()?.0;
        self.face_from_outside(g, rot, &[start])
    }

    /// Face containing the connected set reached from `starts` in the
    /// graph minus this class.
    fn face_from_outside(&self, g: &Graph, rot: &RotationSystem, starts: &[Vertex]) -> Option<usize> {
        let mut seen = BitSet::new(g.n());
        let mut queue: Vec<Vertex> = Vec::new();
        for &s in starts {
            if !self.inside.contains(s) && seen.insert(s) {
                queue.push(s);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let w = queue[head];
            head += 1;
            for &v in g.neighbors(w) {
                if self.inside.contains(v) {
                    return self.face_at(rot, v, w);
                }
                if seen.insert(v) {
                    queue.push(v);
                }
            }
        }
        None
    }

    fn members_on(&self, face: usize, cls: &TwoClassRef) -> Vec<Vertex> {
        let on = self.faces.boundary(face);
        cls.members.iter().copied().filter(|m| on.binary_search(m).is_ok()).collect()
    }
}

/// Members of each class with a neighbor in another class.
fn touching_members(g: &Graph, classes: &[TwoClassRef]) -> Vec<Vec<Vertex>> {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, c) in classes.iter().enumerate() {
        for &m in &c.members {
            owner[m] = i;
        }
    }
    classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.members
                .iter()
                .copied()
                .filter(|&m| g.neighbors(m).iter().any(|&w| owner[w] != usize::MAX && owner[w] != i))
                .collect()
        })
        .collect()
}

/// True iff the member sets are pairwise anticomplete.
pub fn pairwise_anticomplete(g: &Graph, sets: &[Vec<Vertex>]) -> bool {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, s) in sets.iter().enumerate() {
        for &m in s {
            owner[m] = i;
        }
    }
    sets.iter()
        .enumerate()
        .all(|(i, s)| s.iter().all(|&m| g.neighbors(m).iter().all(|&w| owner[w] == usize::MAX || owner[w] == i)))
}

fn apply(classes: &[TwoClassRef], removed: &[Vec<Vertex>]) -> Vec<Vec<Vertex>> {
    classes
        .iter()
        .zip(removed)
        .map(|(c, r)| c.members.iter().copied().filter(|m| !r.contains(m)).collect())
        .collect()
}

/// Removes at most two members per class so that the classes become
/// pairwise anticomplete. With `protect_last`, the last class is kept
/// whole. Classes that touch no other class are left alone.
pub fn anticompleteify(
    g: &Graph,
    classes: &[TwoClassRef],
    rot: &RotationSystem,
    protect_last: bool,
) -> Result<AnticompleteResult, KernelError> {
    let touching = touching_members(g, classes);
    let none: Vec<Vec<Vertex>> = vec![Vec::new(); classes.len()];
    if touching.iter().all(|t| t.is_empty()) {
        return Ok(AnticompleteResult {
            trimmed: classes.iter().map(|c| c.members.clone()).collect(),
            removed: none,
            method: TrimMethod::Unchanged,
        });
    }
    let protected = |i: usize| protect_last && i + 1 == classes.len();

    let full_faces = trace_faces(rot.as_slice())?;
    let involved: Vec<usize> = (0..classes.len()).filter(|&i| !touching[i].is_empty()).collect();
    let mut embeds = Vec::with_capacity(involved.len());
    for &i in &involved {
        embeds.push(class_embedding(g, rot, &classes[i])?);
    }

    // one reference face per component of the classes that touch
    let comps = g.components();
    let mut comp_of = vec![0; g.n()];
    for (ci, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = ci;
        }
    }
    let mut removed = none.clone();
    let mut embedding_ok = true;
    let mut comp_ids: Vec<usize> = involved.iter().map(|&i| comp_of[classes[i].keys.0]).collect();
    comp_ids.sort_unstable();
    comp_ids.dedup();
    for comp in comp_ids {
        let local: Vec<usize> = (0..involved.len()).filter(|&x| comp_of[classes[involved[x]].keys.0] == comp).collect();
        let mut best: Option<(usize, Vec<Vec<Vertex>>)> = None;
        for walk in full_faces.walks.iter().filter(|w| !w.is_empty() && comp_of[w[0].0] == comp) {
            let mut trial = removed.clone();
            let mut valid = true;
            for &x in &local {
                let i = involved[x];
                if protected(i) {
                    continue;
                }
                let Some(face) = embeds[x].face_containing(g, rot, walk) else {
                    valid = false;
                    break;
                };
                let cut: Vec<Vertex> = embeds[x]
                    .members_on(face, &classes[i])
                    .into_iter()
                    .filter(|m| touching[i].contains(m))
                    .collect();
                if cut.len() > 2 {
                    valid = false;
                    break;
                }
                trial[i] = cut;
            }
            if !valid {
                continue;
            }
            let sets: Vec<Vec<Vertex>> = apply(classes, &trial);
            let local_sets: Vec<Vec<Vertex>> = local.iter().map(|&x| sets[involved[x]].clone()).collect();
            if !pairwise_anticomplete(g, &local_sets) {
                continue;
            }
            let cost: usize = local.iter().map(|&x| trial[involved[x]].len()).sum();
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                best = Some((cost, trial));
            }
        }
        match best {
            Some((_, trial)) => {
                for &x in &local {
                    let i = involved[x];
                    removed[i] = trial[i].clone();
                }
            }
            None => embedding_ok = false,
        }
    }
    if embedding_ok {
        let trimmed = apply(classes, &removed);
        if pairwise_anticomplete(g, &trimmed) {
            return Ok(AnticompleteResult { trimmed, removed, method: TrimMethod::Embedding });
        }
    }
    exhaustive(g, classes, &touching, protect_last)
}

/// Smallest deletion set with at most two members per class (none from a
/// protected last class) that hits every edge between classes.
fn exhaustive(
    g: &Graph,
    classes: &[TwoClassRef],
    touching: &[Vec<Vertex>],
    protect_last: bool,
) -> Result<AnticompleteResult, KernelError> {
    let involved = touching.iter().filter(|t| !t.is_empty()).count();
    if involved > EXHAUSTIVE_CLASS_LIMIT {
        return Err(KernelError::EmbeddingInconsistent(format!(
            "{involved} touching classes exceed the exhaustive limit"
        )));
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (i, c) in classes.iter().enumerate() {
        for &m in &c.members {
            owner[m] = i;
        }
    }
    let mut edges = Vec::new();
    for (i, t) in touching.iter().enumerate() {
        for &u in t {
            for &w in g.neighbors(u) {
                if u < w && owner[w] != usize::MAX && owner[w] != i {
                    edges.push((u, w));
                }
            }
        }
    }
    let cap: Vec<usize> = (0..classes.len()).map(|i| if protect_last && i + 1 == classes.len() { 0 } else { 2 }).collect();
    for budget in 0..=2 * involved {
        let mut chosen = Vec::new();
        let mut used = vec![0; classes.len()];
        if cover(&edges, &owner, &cap, budget, &mut chosen, &mut used) {
            let mut removed = vec![Vec::new(); classes.len()];
            for v in chosen {
                removed[owner[v]].push(v);
            }
            for r in removed.iter_mut() {
                r.sort_unstable();
            }
            let trimmed = apply(classes, &removed);
            debug_assert!(pairwise_anticomplete(g, &trimmed));
            return Ok(AnticompleteResult { trimmed, removed, method: TrimMethod::Exhaustive });
        }
    }
    Err(KernelError::EmbeddingInconsistent("no deletion of two members per class works".into()))
}

fn cover(
    edges: &[(Vertex, Vertex)],
    owner: &[usize],
    cap: &[usize],
    budget: usize,
    chosen: &mut Vec<Vertex>,
    used: &mut [usize],
) -> bool {
    let Some(&(u, w)) = edges.iter().find(|(u, w)| !chosen.contains(u) && !chosen.contains(w)) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for v in [u, w] {
        let c = owner[v];
        if used[c] < cap[c] {
            used[c] += 1;
            chosen.push(v);
            if cover(edges, owner, cap, budget - 1, chosen, used) {
                return true;
            }
            chosen.pop();
            used[c] -= 1;
        }
    }
    false
}

/// Trims two classes by at most two members each so that both become
/// anticomplete to the connected set `set`, which avoids both classes and
/// their keys.
pub fn trim_against_connected(
    g: &Graph,
    rot: &RotationSystem,
    pair: [&TwoClassRef; 2],
    set: &[Vertex],
) -> Result<[Vec<Vertex>; 2], KernelError> {
    let near = g.neighborhood(set.iter().copied());
    let mut out: [Vec<Vertex>; 2] = [Vec::new(), Vec::new()];
    for (slot, cls) in pair.iter().enumerate() {
        let emb = class_embedding(g, rot, cls)?;
        let cut: Vec<Vertex> = match emb.face_from_outside(g, rot, set) {
            Some(face) => emb.members_on(face, cls).into_iter().filter(|&m| near.contains(m)).collect(),
            None => Vec::new(),
        };
        let kept: Vec<Vertex> = cls.members.iter().copied().filter(|m| !cut.contains(m)).collect();
        if cut.len() > 2 || kept.iter().any(|&m| near.contains(m)) {
            return Err(KernelError::EmbeddingInconsistent(format!(
                "class {:?} stays adjacent to the connected set",
                cls.keys
            )));
        }
        out[slot] = kept;
    }
    Ok(out)
}

/// Drops from `set` the vertices adjacent to either of two anticomplete
/// classes; at most four may go.
pub fn trim_connected_against(g: &Graph, set: &[Vertex], pair: [&TwoClassRef; 2]) -> Result<Vec<Vertex>, KernelError> {
    let near = g.neighborhood(pair.iter().flat_map(|c| c.members.iter().copied()));
    let kept: Vec<Vertex> = set.iter().copied().filter(|&v| !near.contains(v)).collect();
    if set.len() - kept.len() > 4 {
        return Err(KernelError::EmbeddingInconsistent(format!(
            "{} vertices of the connected set touch the classes",
            set.len() - kept.len()
        )));
    }
    Ok(kept)
}
