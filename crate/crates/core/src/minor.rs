//! Exhaustive K3,r minor test for small graphs.

use crate::error::GraphError;
use crate::graph::Graph;

pub const DEFAULT_MINOR_LIMIT: usize = 12;

/// True iff `g` has a K3,r minor.
///
/// Each component is partitioned into exactly `3 + r` connected branch
/// sets. Restricting to full partitions loses nothing: in a connected
/// component, vertices outside a minor model can always be absorbed into an
/// adjacent branch set.
pub fn check_k3r_minor_small(g: &Graph, r: usize, n_limit: usize) -> Result<bool, GraphError> {
    if g.n() > n_limit || n_limit > 30 {
        return Err(GraphError::MinorCheckTooLarge { n: g.n(), limit: n_limit.min(30) });
    }
    let parts = 3 + r;
    for comp in g.components() {
        if comp.len() < parts {
            continue;
        }
        let (sub, _) = g.induced(&comp);
        if sub.edge_count() < 3 * r {
            continue;
        }
        if component_has_minor(&sub, r) {
            return Ok(true);
        }
    }
    Ok(false)
}

struct Search<'a> {
    adj: Vec<u32>,
    n: usize,
    parts: usize,
    r: usize,
    label: Vec<usize>,
    triples: &'a [u32],
}

fn component_has_minor(g: &Graph, r: usize) -> bool {
    let n = g.n();
    let parts = 3 + r;
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut triples = Vec::new();
    for a in 0..parts {
        for b in a + 1..parts {
            for c in b + 1..parts {
                triples.push((1u32 << a) | (1 << b) | (1 << c));
            }
        }
    }
    let mut s = Search { adj, n, parts, r, label: vec![0; n], triples: &triples };
    s.assign(0, 0)
}

impl Search<'_> {
    /// Restricted-growth labelling: vertex `v` gets a label at most `used`.
    fn assign(&mut self, v: usize, used: usize) -> bool {
        if v == self.n {
            return used == self.parts && self.check();
        }
        // not enough vertices left to open the missing blocks
        if self.parts - used > self.n - v {
            return false;
        }
        let top = if used < self.parts { used + 1 } else { used };
        for l in 0..top {
            self.label[v] = l;
            if self.assign(v + 1, used.max(l + 1)) {
                return true;
            }
        }
        false
    }

    fn check(&self) -> bool {
        let mut blocks = vec![0u32; self.parts];
        for (v, &l) in self.label.iter().enumerate() {
            blocks[l] |= 1 << v;
        }
        if !blocks.iter().all(|&b| self.connected(b)) {
            return false;
        }
        // quotient adjacency between blocks
        let mut nbr = vec![0u32; self.parts];
        for (i, &b) in blocks.iter().enumerate() {
            let mut reach = 0u32;
            let mut m = b;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                reach |= self.adj[v];
            }
            for (j, &c) in blocks.iter().enumerate() {
                if i != j && reach & c != 0 {
                    nbr[i] |= 1 << j;
                }
            }
        }
        let all = (1u32 << self.parts) - 1;
        self.triples.iter().any(|&t| {
            let others = all & !t;
            debug_assert_eq!(others.count_ones() as usize, self.r);
            let mut m = t;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                if nbr[i] & others != others {
                    return false;
                }
            }
            true
        })
    }

    fn connected(&self, set: u32) -> bool {
        let start = set & set.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & set & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == set
    }
}
