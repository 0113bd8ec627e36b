//! Planar kernel: anticomplete trimming, clean sets, and the coloring-based
//! reduction rules for locked 2-classes.

pub mod anticomplete;
pub mod clean;
pub mod greedy;
pub mod rules;

use serde_json::json;

use crate::coloring::{color_graph, ColoringResult};
use crate::embedding::validate_rotation_system;
use crate::error::KernelError;
use crate::graph::{GraphClass, Instance, Vertex};
use crate::kernel_general::{check_trivial_yes_c1, one_based, KernelReport, KernelResult, KernelVerdict};
use crate::projection::compute_projection;
use crate::solver::replay;

use clean::{certify_side, find_clean_set, join_certificates, Side, SideCheck};
use rules::{apply_reduction_rules, color_removal, important_vertices, locked_classes};

/// Total 2-class volume below which the instance is returned as is.
pub const C2_THRESHOLD_PER_TOKEN: usize = 28;

#[derive(Debug, Clone, Default)]
pub struct PlanarOptions {
    /// Fail with [`KernelError::BoundViolated`] when the output exceeds
    /// `(38 + c) k` vertices.
    pub strict: bool,
    /// Proper coloring to use instead of the first-fit one.
    pub coloring: Option<ColoringResult>,
}

/// Output size guarantee with `c` colors.
pub fn planar_bound(c: usize, k: usize) -> usize {
    (38 + c) * k
}

pub fn build_kernel_planar(inst: &Instance) -> Result<KernelResult, KernelError> {
    build_kernel_planar_with(inst, &PlanarOptions::default())
}

pub fn build_kernel_planar_with(inst: &Instance, opts: &PlanarOptions) -> Result<KernelResult, KernelError> {
    if inst.class() != GraphClass::Planar {
        return Err(KernelError::WrongClass { declared: inst.class().to_string(), mode: "planar" });
    }
    let g = inst.graph();
    let rot = inst.embedding().ok_or(KernelError::MissingEmbedding)?;
    validate_rotation_system(g, rot)?;
    let col = opts.coloring.clone().unwrap_or_else(|| color_graph(g));
    let dec = compute_projection(inst);
    let (c, k) = (col.color_count, inst.k());
    let bound = planar_bound(c, k);
    let mut report = KernelReport::new("planar", inst, &dec, c);
    report.bound = Some(bound);
    report.push(json!({
        "event": "thresholds",
        "c1_yes_from": c * k,
        "c2": dec.c2.len(),
        "c2_reduce_from": C2_THRESHOLD_PER_TOKEN * k,
        "bound": bound,
    }));

    if let Some(cert) = check_trivial_yes_c1(inst, &dec, &col) {
        report.push(json!({"event": "trivial-yes", "route": "c1", "certificate_len": cert.len()}));
        return Ok(KernelResult { verdict: KernelVerdict::TrivialYes { certificate: Some(cert) }, report });
    }
    let unchanged = |mut report: KernelReport, reason: &str, non_tight: bool| -> Result<KernelResult, KernelError> {
        report.non_tight = non_tight;
        report.push(json!({"event": "unchanged", "reason": reason, "non_tight": non_tight}));
        if opts.strict && !non_tight && inst.n() > bound {
            return Err(KernelError::BoundViolated { size: inst.n(), bound });
        }
        Ok(KernelResult { verdict: KernelVerdict::Reduced { instance: inst.clone() }, report })
    };
    if dec.c2.len() < C2_THRESHOLD_PER_TOKEN * k {
        return unchanged(report, "c2 below threshold", false);
    }

    let clean = match find_clean_set(inst, &dec, rot) {
        Ok(Some(clean)) => clean,
        Ok(None) => return unchanged(report, "no clean set found", true),
        Err(KernelError::EmbeddingInconsistent(why)) => {
            report.push(json!({"event": "anticomplete-failed", "why": why}));
            return unchanged(report, "anticomplete trimming failed", true);
        }
        Err(e) => return Err(e),
    };
    report.push(json!({
        "event": "clean-set",
        "set": one_based(&clean.set),
        "size": clean.set.len(),
        "i0": clean.i0.len(),
        "trim": clean.trim.method,
        "trimmed": clean.trim.removed.iter().map(Vec::len).sum::<usize>(),
        "sides": clean.sides.iter().map(|s| json!({
            "side": s.side,
            "construction": s.construction,
            "verdict": s.classification.verdict,
        })).collect::<Vec<_>>(),
    }));

    let checks: Vec<SideCheck> =
        clean.sides.iter().map(|s| certify_side(inst, &dec, &clean.set, s.side, &s.classification)).collect();
    for (s, chk) in clean.sides.iter().zip(&checks) {
        report.push(json!({
            "event": "side",
            "side": s.side,
            "verdict": s.classification.verdict,
            "certified": chk.certificate.as_ref().map(|c| c.via),
            "outside_closed_nbhd": chk.outside,
            "room_hypothesis": chk.hypothesis,
            "volume_sufficient": chk.volume,
        }));
        if chk.hypothesis && chk.certificate.is_none() {
            report.push(json!({"event": "atmost8_failed", "side": s.side}));
        }
    }
    if let (Some(a), Some(b)) = (&checks[0].certificate, &checks[1].certificate) {
        let seq = join_certificates(a, b);
        match replay(g, inst.source(), inst.target(), &seq) {
            Ok(()) => {
                report.push(json!({"event": "trivial-yes", "route": "clean-set", "certificate_len": seq.len()}));
                return Ok(KernelResult { verdict: KernelVerdict::TrivialYes { certificate: Some(seq) }, report });
            }
            // should not happen; reduce instead of trusting it
            Err(e) => report.push(json!({"event": "certificate_rejected", "reason": e.to_string()})),
        }
    }

    // reduce with respect to a side that did not pass; keep the other
    // side's route intact
    let role_at = if checks[0].certificate.is_none() { 0 } else { 1 };
    let role: Side = clean.sides[role_at].side;
    let mut protected: Vec<Vertex> = Vec::new();
    if let Some(cert) = &checks[1 - role_at].certificate {
        protected.extend(cert.route.jumps.iter().flat_map(|j| [j.from, j.to]));
        protected.extend_from_slice(&cert.end);
    }
    let tokens = role.tokens(inst);
    let classes = locked_classes(&dec, tokens);
    let important = important_vertices(&classes, tokens);
    let coloring = color_removal(&classes, &important)?;
    let all = dec.two_classes();
    let trimmed_len = |keys: (Vertex, Vertex)| {
        all.iter().position(|c| c.keys == keys).map(|i| clean.trim.trimmed[i].len()).unwrap_or(0)
    };
    report.push(json!({
        "event": "coloring",
        "role": role,
        "important": one_based(&important),
        "classes": classes.iter().zip(&coloring.colors).map(|(c, col)| json!({
            "keys": [c.keys.0 + 1, c.keys.1 + 1],
            "size": c.len(),
            "trimmed_size": trimmed_len(c.keys),
            "color": col,
        })).collect::<Vec<_>>(),
    }));
    let (doomed, counts) = apply_reduction_rules(&classes, &coloring, &clean.set, &protected);
    let reduced = inst.delete_vertices(&doomed)?;
    report.final_size = reduced.n();
    report.final_c2 = dec.c2.len() - doomed.len();
    report.push(json!({
        "event": "rules",
        "rule1": counts.rule1,
        "rule2": counts.rule2,
        "rule3": counts.rule3,
        "final_size": reduced.n(),
        "bound": bound,
    }));
    if opts.strict && reduced.n() > bound {
        return Err(KernelError::BoundViolated { size: reduced.n(), bound });
    }
    Ok(KernelResult { verdict: KernelVerdict::Reduced { instance: reduced }, report })
}
