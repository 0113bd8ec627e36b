//! Hand-shaped instances built from `K_{2,m}` fans whose keys carry the
//! source tokens. Rotations are written down directly and validated.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::gen::Generated;
use crate::embedding::validate_rotation_system;
use crate::error::GenError;
use crate::graph::{Graph, GraphClass, Instance, RotationSystem, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Wiring {
    /// Members pairwise non-adjacent; each class has its own keys.
    Independent,
    /// Members of a class form a path.
    Path,
    /// Members of a class form a cycle (a path below three members).
    Cycle,
    /// All classes share one hub key; members independent.
    SharedKey,
    /// Three keys with one class on each pair; needs exactly three sizes.
    Triangle,
}

impl FromStr for Wiring {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "independent" => Ok(Wiring::Independent),
            "path" => Ok(Wiring::Path),
            "cycle" => Ok(Wiring::Cycle),
            "shared" => Ok(Wiring::SharedKey),
            "triangle" => Ok(Wiring::Triangle),
            _ => Err(GenError::InvalidParams(format!("unknown wiring {s:?}"))),
        }
    }
}

/// Where the target tokens go.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TargetStyle {
    /// New pendant vertices on random keys.
    Pendant,
    /// Random independent class members.
    Member,
    /// A coin flip per token.
    Mixed,
}

impl FromStr for TargetStyle {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pendant" => Ok(TargetStyle::Pendant),
            "member" => Ok(TargetStyle::Member),
            "mixed" => Ok(TargetStyle::Mixed),
            _ => Err(GenError::InvalidParams(format!("unknown target style {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GadgetParams {
    pub class: GraphClass,
    pub sizes: Vec<usize>,
    pub wiring: Wiring,
    /// Extra source/target token pairs joined by an edge, in their own
    /// components.
    pub k_pad: usize,
    pub targets: TargetStyle,
    /// Attach a triangle, fully joined to the first target token, whose
    /// vertices see no source token.
    pub context: bool,
    pub seed: u64,
}

#[derive(Default)]
struct Builder {
    rot: Vec<Vec<Vertex>>,
    color: Vec<usize>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Builder {
    fn vertex(&mut self, color: usize) -> Vertex {
        self.rot.push(Vec::new());
        self.color.push(color);
        self.rot.len() - 1
    }

    fn pendant(&mut self, at: Vertex) -> Vertex {
        let w = self.vertex(if self.color[at] == 1 { 2 } else { 1 });
        self.rot[at].push(w);
        self.rot[w].push(at);
        self.edges.push((at, w));
        w
    }

    /// Fan between `x` (drawn above) and `y` (below) with members laid out
    /// left to right, wired as a path or cycle when asked.
    fn fan(&mut self, x: Vertex, y: Vertex, size: usize, wiring: Wiring) -> Vec<Vertex> {
        let cycle = wiring == Wiring::Cycle && size >= 3;
        let linked = matches!(wiring, Wiring::Path | Wiring::Cycle);
        let members: Vec<Vertex> = (0..size)
            .map(|i| {
                let c = match (linked, i % 2) {
                    (false, _) => 1,
                    (true, 0) if cycle && i == size - 1 => 3,
                    (true, 0) => 1,
                    (true, _) => 2,
                };
                self.vertex(c)
            })
            .collect();
        for (i, &m) in members.iter().enumerate() {
            self.edges.push((x, m));
            self.edges.push((y, m));
            self.rot[x].push(m);
            let next = if i + 1 < size { Some(members[i + 1]) } else if cycle { Some(members[0]) } else { None };
            let prev = if i > 0 { Some(members[i - 1]) } else if cycle { Some(members[size - 1]) } else { None };
            let mut around = vec![y];
            if linked {
                around.extend(next);
            }
            around.push(x);
            if linked {
                around.extend(prev);
            }
            self.rot[m] = around;
            if linked {
                if let Some(w) = next {
                    self.edges.push((m, w));
                }
            }
        }
        self.rot[y].extend(members.iter().rev());
        members
    }
}

/// Builds the gadget: keys carry the source tokens; targets are placed per
/// `targets`; `k_pad` token edges pad both sets. Deterministic in `seed`.
pub fn gen_two_class_gadget(p: &GadgetParams) -> Result<Generated, GenError> {
    if p.sizes.is_empty() || p.sizes.contains(&0) {
        return Err(GenError::InvalidParams(format!("class sizes {:?}", p.sizes)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut b = Builder::default();
    let mut keys = Vec::new();
    let mut members = Vec::new();
    if p.wiring == Wiring::Triangle && p.sizes.len() != 3 {
        return Err(GenError::InvalidParams(format!("triangle wiring needs three sizes, got {:?}", p.sizes)));
    }
    if p.wiring == Wiring::Triangle {
        keys = vec![b.vertex(0), b.vertex(0), b.vertex(0)];
        for (i, &size) in p.sizes.iter().enumerate() {
            members.extend(b.fan(keys[i], keys[(i + 1) % 3], size, Wiring::Independent));
        }
    } else if p.wiring == Wiring::SharedKey {
        let hub = b.vertex(0);
        keys.push(hub);
        for &size in &p.sizes {
            let other = b.vertex(0);
            keys.push(other);
            members.extend(b.fan(hub, other, size, Wiring::Independent));
        }
    } else {
        for &size in &p.sizes {
            let (x, y) = (b.vertex(0), b.vertex(0));
            keys.extend([x, y]);
            members.extend(b.fan(x, y, size, p.wiring));
        }
    }

    let mut source = keys.clone();
    let mut target = Vec::new();
    for _ in 0..p.k_pad {
        let s = b.vertex(0);
        let t = b.pendant(s);
        source.push(s);
        target.push(t);
    }
    let adjacent = |b: &Builder, u: Vertex, v: Vertex| b.rot[u].contains(&v);
    for _ in 0..keys.len() {
        let want_member = match p.targets {
            TargetStyle::Pendant => false,
            TargetStyle::Member => true,
            TargetStyle::Mixed => rng.gen_bool(0.5),
        };
        let free: Vec<Vertex> = members
            .iter()
            .copied()
            .filter(|&m| !target.contains(&m) && target.iter().all(|&t| !adjacent(&b, m, t)))
            .collect();
        if want_member && !free.is_empty() {
            target.push(free[rng.gen_range(0..free.len())]);
        } else {
            let key = keys[rng.gen_range(0..keys.len())];
            target.push(b.pendant(key));
        }
    }

    if p.context {
        if let Some(&t) = target.first() {
            let spare: Vec<usize> = (0..4).filter(|&c| c != b.color[t]).collect();
            let (a, m, c) = (b.vertex(spare[0]), b.vertex(spare[1]), b.vertex(spare[2]));
            // t, a, c bound the outer face of the K4; m sits inside
            b.rot[t].splice(1..1, [c, m, a]);
            b.rot[a] = vec![t, m, c];
            b.rot[m] = vec![t, c, a];
            b.rot[c] = vec![a, m, t];
            b.edges.extend([(t, a), (t, m), (t, c), (a, m), (a, c), (m, c)]);
        }
    }

    let n = b.rot.len();
    let g = Graph::from_edges(n, &b.edges)?;
    let rot = RotationSystem::new(b.rot);
    validate_rotation_system(&g, &rot)?;
    let instance = Instance::new(g, &source, &target, p.class, Some(rot))?;
    Ok(Generated { instance, coloring: b.color })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minor::check_k3r_minor_small;
    use crate::projection::compute_projection;

    fn params(sizes: &[usize], wiring: Wiring, k_pad: usize, targets: TargetStyle, seed: u64) -> GadgetParams {
        GadgetParams { class: GraphClass::Planar, sizes: sizes.to_vec(), wiring, k_pad, targets, context: seed % 2 == 1, seed }
    }

    #[test]
    fn every_wiring_embeds() {
        for wiring in [Wiring::Independent, Wiring::Path, Wiring::Cycle, Wiring::SharedKey, Wiring::Triangle] {
            for seed in 0..5 {
                let gen = gen_two_class_gadget(&params(&[2, 3, 6], wiring, 1, TargetStyle::Mixed, seed)).unwrap();
                let g = gen.instance.graph();
                assert!(g.edges().all(|(u, v)| gen.coloring[u] != gen.coloring[v]), "{wiring:?}");
            }
        }
    }

    #[test]
    fn pendant_targets_keep_the_fan_whole() {
        let gen = gen_two_class_gadget(&params(&[7], Wiring::Path, 0, TargetStyle::Pendant, 3)).unwrap();
        let dec = compute_projection(&gen.instance);
        let classes = dec.two_classes();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].len(), 7);
    }

    #[test]
    fn shared_key_classes_share_the_hub() {
        let gen = gen_two_class_gadget(&params(&[5, 5], Wiring::SharedKey, 0, TargetStyle::Pendant, 0)).unwrap();
        let dec = compute_projection(&gen.instance);
        let classes = dec.two_classes();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.has_key(0) && c.len() == 5));
    }

    #[test]
    fn small_gadgets_are_k33_minor_free() {
        for wiring in [Wiring::Independent, Wiring::Path, Wiring::Cycle, Wiring::SharedKey] {
            let gen = gen_two_class_gadget(&params(&[4], wiring, 1, TargetStyle::Mixed, 2)).unwrap();
            assert!(gen.instance.n() <= 12);
            assert_eq!(check_k3r_minor_small(gen.instance.graph(), 3, 12), Ok(false));
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let p = params(&[5, 4], Wiring::Cycle, 1, TargetStyle::Mixed, 11);
        assert_eq!(gen_two_class_gadget(&p).unwrap().instance, gen_two_class_gadget(&p).unwrap().instance);
    }

    #[test]
    fn triangle_has_three_classes() {
        let gen = gen_two_class_gadget(&params(&[2, 3, 6], Wiring::Triangle, 0, TargetStyle::Pendant, 0)).unwrap();
        let dec = compute_projection(&gen.instance);
        let mut sizes: Vec<usize> = dec.two_classes().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3, 6]);
        assert!(gen_two_class_gadget(&params(&[2, 3], Wiring::Triangle, 0, TargetStyle::Pendant, 0)).is_err());
    }

    #[test]
    fn rejects_empty_classes() {
        assert!(gen_two_class_gadget(&params(&[3, 0], Wiring::Path, 0, TargetStyle::Pendant, 0)).is_err());
    }
}
