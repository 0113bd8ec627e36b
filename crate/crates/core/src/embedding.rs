//! Face tracing and genus-0 validation of rotation systems.
//!
//! Darts are directed edges. The successor of dart `u -> v` is
//! `v -> w` where `w` follows `u` in the rotation of `v`.

use std::collections::HashMap;

use crate::error::EmbeddingError;
use crate::graph::{Graph, RotationSystem, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
}

/// Faces of a rotation system given as raw per-vertex lists.
#[derive(Debug, Clone)]
pub struct Faces {
    /// Boundary walk of each face as a dart list.
    pub walks: Vec<Vec<(Vertex, Vertex)>>,
    face_of: HashMap<(Vertex, Vertex), usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    pub fn face_of_dart(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.face_of.get(&(u, v)).copied()
    }

    /// Distinct vertices on the boundary of face `f`, ascending.
    pub fn boundary(&self, f: usize) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.walks[f].iter().map(|&(u, _)| u).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// Position of each neighbor inside each rotation.
fn positions(rot: &[Vec<Vertex>]) -> HashMap<(Vertex, Vertex), usize> {
    let mut pos = HashMap::new();
    for (v, r) in rot.iter().enumerate() {
        for (i, &w) in r.iter().enumerate() {
            pos.insert((v, w), i);
        }
    }
    pos
}

/// Traces all faces. Rotations must be symmetric (`w` in `rot[v]` iff `v`
/// in `rot[w]`); vertices with empty rotations contribute no darts.
pub fn trace_faces(rot: &[Vec<Vertex>]) -> Result<Faces, EmbeddingError> {
    let pos = positions(rot);
    let dart_count = pos.len();
    let mut face_of: HashMap<(Vertex, Vertex), usize> = HashMap::with_capacity(dart_count);
    let mut walks = Vec::new();
    for (u, r) in rot.iter().enumerate() {
        for &v in r {
            if face_of.contains_key(&(u, v)) {
                continue;
            }
            let id = walks.len();
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            loop {
                face_of.insert((a, b), id);
                walk.push((a, b));
                let i = *pos.get(&(b, a)).ok_or(EmbeddingError::OpenFace(u, v))?;
                let rb = &rot[b];
                let c = rb[(i + 1) % rb.len()];
                (a, b) = (b, c);
                if (a, b) == (u, v) {
                    break;
                }
                if face_of.contains_key(&(a, b)) || walk.len() > dart_count {
                    return Err(EmbeddingError::OpenFace(u, v));
                }
            }
            walks.push(walk);
        }
    }
    Ok(Faces { walks, face_of })
}

/// Accepts `rot` iff it is a genus-0 embedding of `g`: every component
/// satisfies `V - E + F = 2`. The reported face count is that of the whole
/// plane drawing, so `V - E + F = 1 + components`.
pub fn validate_rotation_system(g: &Graph, rot: &RotationSystem) -> Result<EmbeddingReport, EmbeddingError> {
    rot.check_against(g)?;
    let faces = trace_faces(rot.as_slice())?;
    let comps = g.components();
    let mut comp_of = vec![0; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut f_per = vec![0i64; comps.len()];
    for walk in &faces.walks {
        f_per[comp_of[walk[0].0]] += 1;
    }
    let mut total_faces = 0i64;
    for (i, c) in comps.iter().enumerate() {
        let v = c.len() as i64;
        let e = c.iter().map(|&x| g.degree(x)).sum::<usize>() as i64 / 2;
        let f = if e == 0 { 1 } else { f_per[i] };
        if v - e + f != 2 {
            return Err(EmbeddingError::NotPlanar { got: v - e + f, expected: 2 });
        }
        total_faces += f;
    }
    let faces_total = total_faces - (comps.len() as i64 - 1);
    Ok(EmbeddingReport {
        vertices: g.n(),
        edges: g.edge_count(),
        faces: faces_total as usize,
        components: comps.len(),
    })
}
