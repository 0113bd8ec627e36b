//! One kernel run checked against the BFS oracle on both instances.

use serde::Serialize;
use serde_json::Value;

use crate::coloring::ColoringResult;
use crate::graph::Instance;
use crate::kernel_general::{build_kernel_general_with, KernelVerdict};
use crate::planar::{build_kernel_planar_with, PlanarOptions};
use crate::projection::compute_projection;
use crate::solver::{replay, solve_bfs, SolveLimits, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KernelMode {
    General { r: usize },
    Planar,
}

impl KernelMode {
    pub fn label(self) -> &'static str {
        match self {
            KernelMode::General { .. } => "general",
            KernelMode::Planar => "planar",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialReport {
    pub label: String,
    pub mode: &'static str,
    pub n: usize,
    pub k: usize,
    pub c: usize,
    pub x_size: usize,
    pub n2: usize,
    pub n3: usize,
    /// Largest class with three or more keys.
    pub max_c3_class: usize,
    pub c2_before: usize,
    pub c2_after: usize,
    pub kernel_verdict: &'static str,
    pub original: &'static str,
    pub kernel_instance: Option<&'static str>,
    pub certificate_ok: Option<bool>,
    pub size_before: usize,
    pub size_after: usize,
    pub bound: Option<usize>,
    /// `bound - measured`, where the measured quantity is the output size in
    /// planar mode and the output C2 size in general mode.
    pub bound_margin: Option<i64>,
    pub non_tight: bool,
    /// Steps that did something: `5a`, `5b`, `rule1`..`rule3`, `clean-set`,
    /// `trivial-yes:<route>`.
    pub fired: Vec<String>,
    /// `None` when a solver hit its limits.
    pub agreement: Option<bool>,
    pub error: Option<String>,
}

/// Runs the kernel, solves the original and (for reduced outputs) the
/// kernel instance, and compares. Never panics on disagreement.
pub fn equivalence_trial(
    label: &str,
    inst: &Instance,
    mode: KernelMode,
    coloring: Option<&ColoringResult>,
    limits: SolveLimits,
) -> TrialReport {
    let dec = compute_projection(inst);
    let max_c3_class = dec.classes.iter().filter(|(y, _)| y.len() >= 3).map(|(_, m)| m.len()).max().unwrap_or(0);
    let mut rep = TrialReport {
        label: label.to_string(),
        mode: mode.label(),
        n: inst.n(),
        k: inst.k(),
        c: 0,
        x_size: dec.x.len(),
        n2: dec.n2,
        n3: dec.n3,
        max_c3_class,
        c2_before: dec.c2.len(),
        c2_after: dec.c2.len(),
        kernel_verdict: "error",
        original: "unsolved",
        kernel_instance: None,
        certificate_ok: None,
        size_before: inst.n(),
        size_after: inst.n(),
        bound: None,
        bound_margin: None,
        non_tight: false,
        fired: Vec::new(),
        agreement: Some(false),
        error: None,
    };
    let result = match mode {
        KernelMode::General { r } => {
            let col = coloring.cloned().unwrap_or_else(|| crate::coloring::color_graph(inst.graph()));
            build_kernel_general_with(inst, r, &col)
        }
        KernelMode::Planar => {
            build_kernel_planar_with(inst, &PlanarOptions { strict: false, coloring: coloring.cloned() })
        }
    };
    let original = solve_bfs(inst, limits).verdict;
    rep.original = original.label();
    let result = match result {
        Ok(r) => r,
        Err(e) => {
            rep.error = Some(e.to_string());
            return rep;
        }
    };
    let report = &result.report;
    rep.c = report.c;
    rep.kernel_verdict = result.verdict.label();
    rep.size_after = report.final_size;
    rep.c2_after = report.final_c2;
    rep.bound = report.bound;
    rep.non_tight = report.non_tight;
    rep.fired = fired_steps(&report.events);
    rep.bound_margin = report.bound.map(|b| {
        let measured = match mode {
            KernelMode::General { .. } => report.final_c2,
            KernelMode::Planar => report.final_size,
        };
        b as i64 - measured as i64
    });
    rep.agreement = match (&result.verdict, &original) {
        (_, Verdict::ResourceLimit) => None,
        (KernelVerdict::TrivialYes { certificate }, _) => {
            rep.certificate_ok =
                certificate.as_ref().map(|seq| replay(inst.graph(), inst.source(), inst.target(), seq).is_ok());
            Some(original.is_yes() && rep.certificate_ok != Some(false))
        }
        (KernelVerdict::Reduced { instance }, _) => {
            let reduced = solve_bfs(instance, limits).verdict;
            rep.kernel_instance = Some(reduced.label());
            match reduced {
                Verdict::ResourceLimit => None,
                _ => Some(reduced.is_yes() == original.is_yes()),
            }
        }
    };
    rep
}

fn fired_steps(events: &[Value]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut add = |tag: String| {
        if !out.contains(&tag) {
            out.push(tag);
        }
    };
    for e in events {
        match e["event"].as_str() {
            Some("class") => match e["action"].as_str() {
                Some("KeepOnlyI") => add("5a".into()),
                Some("KeepIndep2r") => add("5b".into()),
                _ => {}
            },
            Some("rules") => {
                for rule in ["rule1", "rule2", "rule3"] {
                    if e[rule].as_u64().is_some_and(|n| n > 0) {
                        add(rule.into());
                    }
                }
            }
            Some("clean-set") => add("clean-set".into()),
            Some("trivial-yes") => add(format!("trivial-yes:{}", e["route"].as_str().unwrap_or("?"))),
            _ => {}
        }
    }
    out
}
