//! Random stacked triangulations with their rotation systems, thinned by
//! edge deletion, plus random token sets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::embedding::validate_rotation_system;
use crate::error::GenError;
use crate::graph::{Graph, GraphClass, Instance, RotationSystem, Vertex};

/// Attempts at drawing a token set before giving up.
pub const TOKEN_RETRY_CAP: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanarGenParams {
    pub n: usize,
    pub k: usize,
    pub edge_keep_prob: f64,
    pub seed: u64,
}

/// A generated instance with a proper 4-coloring of its graph.
#[derive(Debug, Clone)]
pub struct Generated {
    pub instance: Instance,
    pub coloring: Vec<usize>,
}

/// Builds a rotation system from oriented triangles: for a face walked
/// `a -> b -> c`, `c` follows `a` around `b`.
fn rotation_from_triangles(n: usize, faces: &[[Vertex; 3]]) -> Vec<Vec<Vertex>> {
    let mut succ: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); n];
    for &[a, b, c] in faces {
        succ[b].push((a, c));
        succ[c].push((b, a));
        succ[a].push((c, b));
    }
    succ.into_iter()
        .map(|pairs| {
            let Some(&(start, _)) = pairs.iter().min() else { return Vec::new() };
            let mut rot = vec![start];
            let mut cur = start;
            loop {
                let next = pairs.iter().find(|(from, _)| *from == cur).expect("closed rotation").1;
                if next == start {
                    break;
                }
                rot.push(next);
                cur = next;
            }
            rot
        })
        .collect()
}

/// Random maximal independent set (greedy over a shuffled order),
/// truncated to `k`. `None` when the maximal set is smaller than `k`.
pub(crate) fn random_independent(g: &Graph, pool: &[Vertex], k: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vertex>> {
    let mut order = pool.to_vec();
    order.shuffle(rng);
    let mut chosen: Vec<Vertex> = Vec::new();
    for v in order {
        if chosen.iter().all(|&u| u != v && !g.has_edge(u, v)) {
            chosen.push(v);
        }
    }
    if chosen.len() < k {
        return None;
    }
    chosen.truncate(k);
    Some(chosen)
}

pub(crate) fn draw_tokens(g: &Graph, pool: &[Vertex], k: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Vertex>, GenError> {
    (0..TOKEN_RETRY_CAP)
        .find_map(|_| random_independent(g, pool, k, rng))
        .ok_or(GenError::RetryCapExhausted { k, tries: TOKEN_RETRY_CAP })
}

/// Stacked triangulation on `n` vertices: start from `K4` and insert each
/// new vertex into a uniformly random face. Edges outside a BFS tree from
/// vertex 0 are then kept with probability `edge_keep_prob`.
pub fn gen_planar_instance(p: PlanarGenParams, class: GraphClass) -> Result<Generated, GenError> {
    if p.n < 4 || p.k < 1 || !(0.0..=1.0).contains(&p.edge_keep_prob) {
        return Err(GenError::InvalidParams(format!("n = {}, k = {}, keep = {}", p.n, p.k, p.edge_keep_prob)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 3, 1], [1, 3, 2], [0, 2, 3]];
    let mut color = vec![0, 1, 2, 3];
    for v in 4..p.n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[f];
        faces[f] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
        color.push(6 - color[a] - color[b] - color[c]);
    }
    let mut rot = rotation_from_triangles(p.n, &faces);

    // spanning tree edges are never deleted
    let mut tree = vec![Vec::new(); p.n];
    let mut seen = vec![false; p.n];
    seen[0] = true;
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        let mut ns = rot[v].clone();
        ns.sort_unstable();
        for w in ns {
            if !seen[w] {
                seen[w] = true;
                tree[v].push(w);
                tree[w].push(v);
                queue.push(w);
            }
        }
    }
    let mut edges = Vec::new();
    for u in 0..p.n {
        let mut ns = rot[u].clone();
        ns.sort_unstable();
        for w in ns.into_iter().filter(|&w| w > u) {
            if tree[u].contains(&w) || rng.gen_bool(p.edge_keep_prob) {
                edges.push((u, w));
            } else {
                rot[u].retain(|&x| x != w);
                rot[w].retain(|&x| x != u);
            }
        }
    }
    let g = Graph::from_edges(p.n, &edges)?;
    let rot = RotationSystem::new(rot);
    validate_rotation_system(&g, &rot)?;
    let all: Vec<Vertex> = (0..p.n).collect();
    let source = draw_tokens(&g, &all, p.k, &mut rng)?;
    let target = draw_tokens(&g, &all, p.k, &mut rng)?;
    let instance = Instance::new(g, &source, &target, class, Some(rot))?;
    Ok(Generated { instance, coloring: color })
}
