//! Kernel for K3,r-minor-free graphs: the C1 trivial-yes check, reduction of
//! big 2-classes, and the closed-form size bound.

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coloring::{color_graph, extract_independent, extract_with_coloring, ColoringResult};
use crate::error::KernelError;
use crate::graph::{GraphClass, Instance, Jump, ReconfSequence, Vertex};
use crate::projection::{compute_projection, ProjectionDecomposition};
use crate::solver::replay;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelVerdict {
    TrivialYes { certificate: Option<ReconfSequence> },
    Reduced { instance: Instance },
}

impl KernelVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            KernelVerdict::TrivialYes { .. } => "trivial-yes",
            KernelVerdict::Reduced { .. } => "reduced",
        }
    }
}

/// Summary of a kernel run. Vertex ids in `events` are 1-indexed, matching
/// the text format.
#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub mode: &'static str,
    pub n: usize,
    pub k: usize,
    pub c: usize,
    pub c1: usize,
    pub c2: usize,
    pub c3: usize,
    pub n2: usize,
    pub n3: usize,
    pub final_size: usize,
    pub final_c2: usize,
    /// Size guarantee for this run, when one applies.
    pub bound: Option<usize>,
    pub non_tight: bool,
    #[serde(skip)]
    pub events: Vec<Value>,
}

impl KernelReport {
    pub(crate) fn new(mode: &'static str, inst: &Instance, dec: &ProjectionDecomposition, c: usize) -> Self {
        KernelReport {
            mode,
            n: inst.n(),
            k: inst.k(),
            c,
            c1: dec.c1.len(),
            c2: dec.c2.len(),
            c3: dec.c3.len(),
            n2: dec.n2,
            n3: dec.n3,
            final_size: inst.n(),
            final_c2: dec.c2.len(),
            bound: None,
            non_tight: false,
            events: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, event: Value) {
        self.events.push(event);
    }

    /// One JSON object per line: the summary followed by the events.
    pub fn json_lines(&self) -> Vec<String> {
        let mut summary = serde_json::to_value(self).expect("report serializes");
        summary["event"] = json!("summary");
        std::iter::once(summary.to_string()).chain(self.events.iter().map(|e| e.to_string())).collect()
    }
}

#[derive(Debug, Clone)]
pub struct KernelResult {
    pub verdict: KernelVerdict,
    pub report: KernelReport,
}

pub(crate) fn one_based(vs: &[Vertex]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

/// Moves `from` onto the independent set `mid ⊆ C1`: first every token with
/// a neighbor in `mid` jumps to such a neighbor, then the rest fill the
/// free vertices of `mid` in id order.
fn jumps_onto(inst: &Instance, from: &[Vertex], mid: &[Vertex]) -> Vec<Jump> {
    let g = inst.graph();
    let mut used = vec![false; mid.len()];
    let mut jumps = Vec::new();
    let mut later = Vec::new();
    for &v in from {
        match (0..mid.len()).find(|&i| !used[i] && g.has_edge(v, mid[i])) {
            Some(i) => {
                used[i] = true;
                jumps.push(Jump::new(v, mid[i]));
            }
            None => later.push(v),
        }
    }
    for v in later {
        let i = (0..mid.len()).find(|&i| !used[i]).expect("mid has k vertices");
        used[i] = true;
        jumps.push(Jump::new(v, mid[i]));
    }
    jumps
}

/// If C1 holds an independent set of size k, returns a verified sequence
/// from `I_s` through that set to `I_t`.
pub fn check_trivial_yes_c1(
    inst: &Instance,
    dec: &ProjectionDecomposition,
    col: &ColoringResult,
) -> Option<ReconfSequence> {
    let k = inst.k();
    let mid = extract_with_coloring(&col.color_of, &dec.c1, k)
        .or_else(|| extract_independent(inst.graph(), &dec.c1, k))?;
    let mut seq = ReconfSequence::new(jumps_onto(inst, inst.source(), &mid));
    let back = ReconfSequence::new(jumps_onto(inst, inst.target(), &mid));
    seq.extend(&back.reversed());
    // only a replayed certificate counts
    replay(inst.graph(), inst.source(), inst.target(), &seq).ok().map(|()| seq)
}

fn check_class(inst: &Instance, r: usize, mode: &'static str) -> Result<(), KernelError> {
    let ok = match inst.class() {
        GraphClass::Planar => r >= 3,
        GraphClass::K3rMinorFree(declared) => r >= declared as usize,
    };
    if ok {
        Ok(())
    } else {
        Err(KernelError::WrongClass { declared: inst.class().to_string(), mode })
    }
}

/// Runs the general construction with the first-fit coloring's color count
/// in place of the chromatic number.
pub fn build_kernel_general(inst: &Instance, r: usize) -> Result<KernelResult, KernelError> {
    let col = color_graph(inst.graph());
    build_kernel_general_with(inst, r, &col)
}

/// As [`build_kernel_general`], with a caller-supplied proper coloring.
pub fn build_kernel_general_with(inst: &Instance, r: usize, col: &ColoringResult) -> Result<KernelResult, KernelError> {
    check_class(inst, r, "general")?;
    let dec = compute_projection(inst);
    let c = col.color_count;
    let k = inst.k();
    let mut report = KernelReport::new("general", inst, &dec, c);

    if let Some(cert) = check_trivial_yes_c1(inst, &dec, col) {
        report.push(json!({"event": "trivial-yes", "route": "c1", "certificate_len": cert.len()}));
        return Ok(KernelResult { verdict: KernelVerdict::TrivialYes { certificate: Some(cert) }, report });
    }

    let n2 = dec.n2;
    let pool_size = n2 * (3 * r - 2) + k;
    let step1 = c * pool_size;
    let out_bound = c * (n2 * (4 * r - 1) + k);
    let big_at = c * (2 * r - 1) + 1;
    report.bound = Some(out_bound);
    report.push(json!({
        "event": "thresholds",
        "c2": dec.c2.len(),
        "untouched_up_to": step1,
        "untouched_up_to_4r": out_bound,
        "pool": pool_size,
        "big_from": big_at,
    }));
    if dec.c2.len() <= step1 {
        report.push(json!({"event": "unchanged", "reason": "c2 below threshold"}));
        return Ok(KernelResult { verdict: KernelVerdict::Reduced { instance: inst.clone() }, report });
    }

    let pool = extract_with_coloring(&col.color_of, &dec.c2, pool_size)
        .or_else(|| extract_independent(inst.graph(), &dec.c2, pool_size))
        .ok_or(KernelError::ExtractionFailed)?;
    let mut in_pool = vec![false; inst.n()];
    for &v in &pool {
        in_pool[v] = true;
    }

    let mut doomed = Vec::new();
    for cls in dec.two_classes() {
        let hits = cls.members.iter().filter(|&&v| in_pool[v]).count();
        let keys = [cls.keys.0 + 1, cls.keys.1 + 1];
        if cls.len() < big_at {
            report.push(json!({"event": "class", "keys": keys, "size": cls.len(), "in_pool": hits, "action": "Small"}));
            continue;
        }
        if hits >= 3 * r - 1 {
            doomed.extend(cls.members.iter().copied().filter(|&v| !in_pool[v]));
            report.push(json!({"event": "class", "keys": keys, "size": cls.len(), "in_pool": hits,
                "action": "KeepOnlyI", "kept": hits}));
        } else {
            let keep = extract_with_coloring(&col.color_of, &cls.members, 2 * r).ok_or(KernelError::ExtractionFailed)?;
            doomed.extend(cls.members.iter().copied().filter(|v| !keep.contains(v)));
            for &v in &cls.members {
                in_pool[v] = false;
            }
            report.push(json!({"event": "class", "keys": keys, "size": cls.len(), "in_pool": hits,
                "action": "KeepIndep2r", "kept": one_based(&keep)}));
        }
    }
    let reduced = inst.delete_vertices(&doomed)?;
    report.final_size = reduced.n();
    report.final_c2 = dec.c2.len() - doomed.len();
    report.push(json!({"event": "result", "deleted": doomed.len(), "final_size": reduced.n(),
        "final_c2": report.final_c2, "c2_bound": out_bound}));
    Ok(KernelResult { verdict: KernelVerdict::Reduced { instance: reduced }, report })
}

/// Closed-form kernel size guarantee. Planar: `42k`. Otherwise the sum of
/// `|X| <= 2k`, the C1 and C3 bounds, and the C2 bound with the
/// neighborhood-complexity estimate for the number of 2-classes and
/// `max(r, 6300) + 3` colors.
pub fn theoretical_size_bound(r: u32, k: u64, planar: bool) -> BigUint {
    let k = BigUint::from(k);
    if planar {
        return k * 42u32;
    }
    let colors = BigUint::from(r.max(6300) + 3);
    let rr = BigUint::from(r);
    let classes = (BigUint::from(1u32) << (5 * r + 13) as usize) * BigUint::from(r + 3).pow(2 * r + 5);
    let c1_c3 = &k * (&colors + (&rr - 1u32) * &classes);
    let c2 = &colors * (&classes * (4u32 * &rr - 1u32) * &k + &k);
    2u32 * &k + c1_c3 + c2
}

/// `|C1| + |C3| <= 12k` on planar graphs.
pub fn planar_c1_c3_bound(k: u64) -> u64 {
    12 * k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn c5() -> Instance {
        let e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        Instance::new(Graph::from_edges(5, &e).unwrap(), &[0, 2], &[1, 3], GraphClass::Planar, None).unwrap()
    }

    #[test]
    fn c1_check_on_c5_is_absent() {
        let inst = c5();
        let dec = compute_projection(&inst);
        assert!(check_trivial_yes_c1(&inst, &dec, &color_graph(inst.graph())).is_none());
    }

    #[test]
    fn single_token_with_isolated_vertices() {
        let inst = Instance::new(Graph::empty(9), &[0], &[1], GraphClass::Planar, None).unwrap();
        let dec = compute_projection(&inst);
        let cert = check_trivial_yes_c1(&inst, &dec, &color_graph(inst.graph())).unwrap();
        assert_eq!(cert.len(), 2);
    }

    #[test]
    fn star_center_token_moves_first() {
        // token 0 is the center of a star on 3..7; token 1 isolated; target 2
        let e: Vec<_> = (3..8).map(|v| (0, v)).collect();
        let inst = Instance::new(Graph::from_edges(8, &e).unwrap(), &[0, 1], &[2, 1], GraphClass::Planar, None).unwrap();
        let dec = compute_projection(&inst);
        let cert = check_trivial_yes_c1(&inst, &dec, &color_graph(inst.graph())).unwrap();
        assert_eq!(cert.jumps[0].from, 0);
        assert!(replay(inst.graph(), inst.source(), inst.target(), &cert).is_ok());
    }

    #[test]
    fn small_instance_is_unchanged() {
        let res = build_kernel_general(&c5(), 3).unwrap();
        assert_eq!(res.verdict, KernelVerdict::Reduced { instance: c5() });
    }

    #[test]
    fn wrong_class_rejected() {
        let e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let inst =
            Instance::new(Graph::from_edges(5, &e).unwrap(), &[0, 2], &[1, 3], GraphClass::K3rMinorFree(4), None).unwrap();
        assert!(matches!(build_kernel_general(&inst, 3), Err(KernelError::WrongClass { .. })));
        assert!(build_kernel_general(&inst, 4).is_ok());
    }

    #[test]
    fn planar_bounds() {
        assert_eq!(theoretical_size_bound(3, 3, true), BigUint::from(126u32));
        assert_eq!(planar_c1_c3_bound(5), 60);
    }
}
