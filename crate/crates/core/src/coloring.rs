//! Degeneracy orderings and first-fit colorings. The color count of such a
//! coloring stands in for the chromatic number in every threshold.

use std::collections::BTreeSet;

use crate::error::GraphError;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringResult {
    /// Coloring order (reverse elimination order when produced by
    /// [`color_graph`]).
    pub order: Vec<Vertex>,
    /// Largest number of earlier neighbors any vertex has along `order`.
    pub degeneracy: usize,
    pub color_of: Vec<usize>,
    pub color_count: usize,
}

impl ColoringResult {
    /// Vertices grouped by color.
    pub fn classes(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.color_count];
        for (v, &c) in self.color_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Repeatedly removes a minimum-degree vertex (smallest id on ties).
/// Returns the removal order reversed and the degeneracy.
pub fn degeneracy_order(g: &Graph) -> (Vec<Vertex>, usize) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    while let Some((d, v)) = queue.pop_first() {
        degeneracy = degeneracy.max(d);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    order.reverse();
    (order, degeneracy)
}

/// First-fit coloring along `order`.
pub fn greedy_color(g: &Graph, order: &[Vertex]) -> Result<ColoringResult, GraphError> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    if order.len() != n {
        return Err(GraphError::NotAPermutation);
    }
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(GraphError::NotAPermutation);
        }
        pos[v] = i;
    }
    let mut color_of = vec![usize::MAX; n];
    let mut color_count = 0;
    let mut degeneracy = 0;
    let mut taken = Vec::new();
    for &v in order {
        taken.clear();
        taken.resize(color_count + 1, false);
        let mut back = 0;
        for &w in g.neighbors(v) {
            if pos[w] < pos[v] {
                back += 1;
                taken[color_of[w]] = true;
            }
        }
        degeneracy = degeneracy.max(back);
        let c = taken.iter().position(|&t| !t).unwrap();
        color_of[v] = c;
        color_count = color_count.max(c + 1);
    }
    Ok(ColoringResult { order: order.to_vec(), degeneracy, color_of, color_count })
}

/// First-fit along a reverse degeneracy order.
pub fn color_graph(g: &Graph) -> ColoringResult {
    let (order, _) = degeneracy_order(g);
    greedy_color(g, &order).expect("degeneracy order is a permutation")
}

/// Wraps an externally supplied coloring after checking it is proper.
/// Color values are compacted to `0..c`.
pub fn external_coloring(g: &Graph, colors: &[usize]) -> Result<ColoringResult, GraphError> {
    if colors.len() != g.n() {
        return Err(GraphError::ColoringLength { got: colors.len(), expected: g.n() });
    }
    for (u, v) in g.edges() {
        if colors[u] == colors[v] {
            return Err(GraphError::ImproperColoring(u, v));
        }
    }
    let distinct: Vec<usize> = colors.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let color_of: Vec<usize> = colors.iter().map(|c| distinct.binary_search(c).unwrap()).collect();
    let order: Vec<Vertex> = (0..g.n()).collect();
    let degeneracy = (0..g.n())
        .map(|v| g.neighbors(v).iter().filter(|&&w| w < v).count())
        .max()
        .unwrap_or(0);
    Ok(ColoringResult { order, degeneracy, color_of, color_count: distinct.len() })
}

/// Largest color class of `pool` under `color_of` (lowest color on ties),
/// truncated to `target`; `None` when that class is smaller than `target`.
pub fn extract_with_coloring(color_of: &[usize], pool: &[Vertex], target: usize) -> Option<Vec<Vertex>> {
    let mut groups: std::collections::BTreeMap<usize, Vec<Vertex>> = std::collections::BTreeMap::new();
    for &v in pool {
        groups.entry(color_of[v]).or_default().push(v);
    }
    let best = groups.into_values().fold(Vec::new(), |best, g| if g.len() > best.len() { g } else { best });
    if best.len() < target {
        return None;
    }
    let mut best = best;
    best.sort_unstable();
    best.truncate(target);
    Some(best)
}

/// Colors the subgraph induced by `pool` and returns `target` vertices of
/// its largest color class, or `None` if that class is too small. Succeeds
/// whenever `|pool| >= c' * target` with `c'` the colors used on the pool.
pub fn extract_independent(g: &Graph, pool: &[Vertex], target: usize) -> Option<Vec<Vertex>> {
    let (sub, map) = g.induced(pool);
    let col = color_graph(&sub);
    let local: Vec<Vertex> = (0..sub.n()).collect();
    extract_with_coloring(&col.color_of, &local, target).map(|vs| vs.into_iter().map(|v| map[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_independent;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn degeneracy_examples() {
        let tree = Graph::from_edges(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(degeneracy_order(&tree).1, 1);
        assert_eq!(degeneracy_order(&cycle(5)).1, 2);
        assert_eq!(degeneracy_order(&complete(4)).1, 3);
    }

    #[test]
    fn coloring_examples() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(color_graph(&p4).color_count, 2);
        assert_eq!(color_graph(&complete(4)).color_count, 4);
        let c = color_graph(&cycle(7));
        assert_eq!(c.color_count, 3);
        assert!(c.color_count <= c.degeneracy + 1);
    }

    #[test]
    fn order_must_be_permutation() {
        assert_eq!(greedy_color(&cycle(4), &[0, 1, 1, 2]), Err(GraphError::NotAPermutation));
        assert_eq!(greedy_color(&cycle(4), &[0, 1]), Err(GraphError::NotAPermutation));
    }

    #[test]
    fn extraction_examples() {
        let g = Graph::empty(7);
        let pool: Vec<_> = (0..7).collect();
        assert_eq!(extract_independent(&g, &pool, 7), Some(pool.clone()));

        let c6 = cycle(6);
        let got = extract_independent(&c6, &(0..6).collect::<Vec<_>>(), 3).unwrap();
        assert_eq!(got.len(), 3);
        assert!(is_independent(&c6, &got).unwrap());

        assert_eq!(extract_independent(&complete(3), &[0, 1, 2], 2), None);
    }

    #[test]
    fn external_coloring_is_checked() {
        let c4 = cycle(4);
        let col = external_coloring(&c4, &[5, 9, 5, 9]).unwrap();
        assert_eq!(col.color_count, 2);
        assert_eq!(col.color_of, vec![0, 1, 0, 1]);
        assert_eq!(external_coloring(&c4, &[0, 0, 1, 1]), Err(GraphError::ImproperColoring(0, 1)));
    }
}
