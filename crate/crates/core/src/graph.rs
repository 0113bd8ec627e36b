//! Instance model: simple undirected graphs, token sets, rotation systems
//! and reconfiguration sequences.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::GraphError;

pub type Vertex = usize;

/// Simple undirected graph. Adjacency is kept both as sorted lists and as
/// bitsets; the bitsets serve the neighborhood intersection queries.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    bits: Vec<BitSet>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            bits: vec![BitSet::new(n); n],
            edge_count: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        g.finish();
        Ok(g)
    }

    fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.bits[u].contains(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.bits[u].insert(v);
        self.bits[v].insert(u);
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edge_count += 1;
        Ok(())
    }

    fn finish(&mut self) {
        for list in self.adj.iter_mut() {
            list.sort_unstable();
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn neighbor_bits(&self, v: Vertex) -> &BitSet {
        &self.bits[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.bits[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v >= self.n() {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        } else {
            Ok(())
        }
    }

    pub fn bitset_of(&self, vs: &[Vertex]) -> BitSet {
        BitSet::from_iter(self.n(), vs.iter().copied())
    }

    /// Union of the open neighborhoods of `vs`.
    pub fn neighborhood(&self, vs: impl IntoIterator<Item = Vertex>) -> BitSet {
        let mut out = BitSet::new(self.n());
        for v in vs {
            out.union_with(&self.bits[v]);
        }
        out
    }

    /// Induced subgraph on `keep` (ascending ids). Returns the subgraph and
    /// the map from new id to old id.
    pub fn induced(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = new_id[w];
                if j != usize::MAX && j > i {
                    g.add_edge(i, j).expect("induced subgraph of a simple graph");
                }
            }
        }
        g.finish();
        (g, keep)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// True iff no edge of `g` has both endpoints in `set`.
pub fn is_independent(g: &Graph, set: &[Vertex]) -> Result<bool, GraphError> {
    for &v in set {
        g.check_vertex(v)?;
    }
    let bits = g.bitset_of(set);
    Ok(set.iter().all(|&v| g.neighbor_bits(v).is_disjoint(&bits)))
}

/// Declared graph class; kernelization trusts the declaration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphClass {
    Planar,
    K3rMinorFree(u32),
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphClass::Planar => write!(f, "planar"),
            GraphClass::K3rMinorFree(r) => write!(f, "k3r {r}"),
        }
    }
}

/// Per-vertex cyclic order of neighbors (a combinatorial embedding).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rot: Vec<Vec<Vertex>>,
}

impl RotationSystem {
    pub fn new(rot: Vec<Vec<Vertex>>) -> Self {
        RotationSystem { rot }
    }

    pub fn len(&self) -> usize {
        self.rot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rot.is_empty()
    }

    pub fn of(&self, v: Vertex) -> &[Vertex] {
        &self.rot[v]
    }

    pub fn as_slice(&self) -> &[Vec<Vertex>] {
        &self.rot
    }

    /// Checks that every rotation is a permutation of the vertex's
    /// neighborhood in `g`.
    pub fn check_against(&self, g: &Graph) -> Result<(), GraphError> {
        if self.rot.len() != g.n() {
            return Err(GraphError::RotationLength { got: self.rot.len(), expected: g.n() });
        }
        for (v, r) in self.rot.iter().enumerate() {
            let mut sorted = r.clone();
            sorted.sort_unstable();
            if sorted.as_slice() != g.neighbors(v) {
                return Err(GraphError::RotationMismatch(v));
            }
        }
        Ok(())
    }

    /// Drops the vertices with `new_id[v] == None` and renumbers the rest.
    pub fn remap(&self, new_id: &[Option<Vertex>]) -> RotationSystem {
        let rot = self
            .rot
            .iter()
            .enumerate()
            .filter(|(v, _)| new_id[*v].is_some())
            .map(|(_, r)| r.iter().filter_map(|&w| new_id[w]).collect())
            .collect();
        RotationSystem { rot }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Jump {
    pub from: Vertex,
    pub to: Vertex,
}

impl Jump {
    pub fn new(from: Vertex, to: Vertex) -> Self {
        Jump { from, to }
    }

    pub fn reversed(self) -> Self {
        Jump { from: self.to, to: self.from }
    }
}

/// Ordered token jumps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconfSequence {
    pub jumps: Vec<Jump>,
}

impl ReconfSequence {
    pub fn new(jumps: Vec<Jump>) -> Self {
        ReconfSequence { jumps }
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    /// The sequence read backwards, each jump inverted.
    pub fn reversed(&self) -> Self {
        ReconfSequence { jumps: self.jumps.iter().rev().map(|j| j.reversed()).collect() }
    }

    pub fn extend(&mut self, other: &ReconfSequence) {
        self.jumps.extend_from_slice(&other.jumps);
    }
}

/// A token-jumping independent set reconfiguration instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    source: Vec<Vertex>,
    target: Vec<Vertex>,
    class: GraphClass,
    embedding: Option<RotationSystem>,
    original_ids: Vec<Vertex>,
}

fn normalize_tokens(g: &Graph, set: &[Vertex], which: &'static str) -> Result<Vec<Vertex>, GraphError> {
    let mut s = set.to_vec();
    s.sort_unstable();
    for w in s.windows(2) {
        if w[0] == w[1] {
            return Err(GraphError::DuplicateVertex(w[0]));
        }
    }
    if !is_independent(g, &s)? {
        return Err(GraphError::NotIndependent(which));
    }
    Ok(s)
}

impl Instance {
    pub fn new(
        graph: Graph,
        source: &[Vertex],
        target: &[Vertex],
        class: GraphClass,
        embedding: Option<RotationSystem>,
    ) -> Result<Self, GraphError> {
        if source.is_empty() || target.is_empty() {
            return Err(GraphError::EmptyTokenSet);
        }
        if source.len() != target.len() {
            return Err(GraphError::SizeMismatch { source_len: source.len(), target_len: target.len() });
        }
        let source = normalize_tokens(&graph, source, "source")?;
        let target = normalize_tokens(&graph, target, "target")?;
        if let Some(rot) = &embedding {
            rot.check_against(&graph)?;
        }
        let original_ids = (0..graph.n()).collect();
        Ok(Instance { graph, source, target, class, embedding, original_ids })
    }

    pub fn with_original_ids(mut self, ids: Vec<Vertex>) -> Result<Self, GraphError> {
        if ids.len() != self.graph.n() {
            return Err(GraphError::OriginalIdsLength { got: ids.len(), expected: self.graph.n() });
        }
        let distinct: HashSet<_> = ids.iter().collect();
        if distinct.len() != ids.len() {
            return Err(GraphError::OriginalIdsNotInjective);
        }
        self.original_ids = ids;
        Ok(self)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self) -> &[Vertex] {
        &self.source
    }

    pub fn target(&self) -> &[Vertex] {
        &self.target
    }

    pub fn class(&self) -> GraphClass {
        self.class
    }

    pub fn embedding(&self) -> Option<&RotationSystem> {
        self.embedding.as_ref()
    }

    pub fn original_ids(&self) -> &[Vertex] {
        &self.original_ids
    }

    /// The same instance with source and target exchanged.
    pub fn swapped(&self) -> Instance {
        let mut out = self.clone();
        std::mem::swap(&mut out.source, &mut out.target);
        out
    }

    /// Key vertices `X = I_s ∪ I_t`, sorted.
    pub fn key_vertices(&self) -> Vec<Vertex> {
        let mut x: Vec<Vertex> = self.source.iter().chain(&self.target).copied().collect();
        x.sort_unstable();
        x.dedup();
        x
    }

    /// Sub-instance on `V \ doomed` with compacted ids. Token vertices may
    /// not be deleted.
    pub fn delete_vertices(&self, doomed: &[Vertex]) -> Result<Instance, GraphError> {
        let n = self.n();
        let mut dead = BitSet::new(n);
        for &v in doomed {
            self.graph.check_vertex(v)?;
            dead.insert(v);
        }
        for &v in self.source.iter().chain(&self.target) {
            if dead.contains(v) {
                return Err(GraphError::TokenDeletion(v));
            }
        }
        let keep: Vec<Vertex> = (0..n).filter(|&v| !dead.contains(v)).collect();
        let mut new_id = vec![None; n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = Some(i);
        }
        let (graph, _) = self.graph.induced(&keep);
        let map = |vs: &[Vertex]| -> Vec<Vertex> { vs.iter().map(|&v| new_id[v].unwrap()).collect() };
        Ok(Instance {
            graph,
            source: map(&self.source),
            target: map(&self.target),
            class: self.class,
            embedding: self.embedding.as_ref().map(|r| r.remap(&new_id)),
            original_ids: keep.iter().map(|&v| self.original_ids[v]).collect(),
        })
    }
}
