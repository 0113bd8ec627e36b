//! Text manifests of generated trials, one per line:
//!
//! ```text
//! random n=20 k=3 keep=0.7 seed=5 mode=general r=3
//! gadget sizes=7,5 wiring=shared pad=1 targets=pendant seed=2 mode=planar coloring=supplied
//! ```
//!
//! `context=1` adds a triangle joined to the first target token.
//! `#` starts a comment. `mode` is `general` (declared K3,3-minor-free
//! unless `class=planar`) or `planar`. `coloring=supplied` hands the
//! generator's 4-coloring to the kernel.

use std::collections::HashMap;

use rayon::prelude::*;

use super::gadget::{gen_two_class_gadget, GadgetParams, TargetStyle, Wiring};
use super::gen::{gen_planar_instance, Generated, PlanarGenParams};
use super::trial::{equivalence_trial, KernelMode, TrialReport};
use crate::coloring::external_coloring;
use crate::error::{GenError, ManifestError};
use crate::graph::GraphClass;
use crate::solver::SolveLimits;

#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSpec {
    Random(PlanarGenParams),
    Gadget(GadgetParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    pub line: usize,
    pub label: String,
    pub spec: InstanceSpec,
    pub mode: KernelMode,
    pub supply_coloring: bool,
}

impl ManifestEntry {
    pub fn generate(&self) -> Result<Generated, GenError> {
        match &self.spec {
            InstanceSpec::Random(p) => {
                let class = match &self.mode {
                    KernelMode::Planar => GraphClass::Planar,
                    KernelMode::General { .. } => declared_general(),
                };
                gen_planar_instance(*p, class)
            }
            InstanceSpec::Gadget(p) => gen_two_class_gadget(p),
        }
    }
}

fn declared_general() -> GraphClass {
    GraphClass::K3rMinorFree(3)
}

fn parse_line(line: usize, text: &str) -> Result<ManifestEntry, ManifestError> {
    let err = |message: String| ManifestError { line, message };
    let mut words = text.split_whitespace();
    let kind = words.next().ok_or_else(|| err("empty entry".into()))?;
    let mut kv: HashMap<&str, &str> = HashMap::new();
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| err(format!("expected key=value, got {w:?}")))?;
        if kv.insert(k, v).is_some() {
            return Err(err(format!("repeated key {k:?}")));
        }
    }
    let mut take = |key: &str| kv.remove(key);
    fn num<T: std::str::FromStr>(v: Option<&str>, key: &str, line: usize) -> Result<T, ManifestError> {
        let v = v.ok_or_else(|| ManifestError { line, message: format!("missing {key}") })?;
        v.parse().map_err(|_| ManifestError { line, message: format!("bad {key} {v:?}") })
    }
    let mode = match take("mode").unwrap_or("general") {
        "general" => KernelMode::General { r: num(Some(take("r").unwrap_or("3")), "r", line)? },
        "planar" => KernelMode::Planar,
        m => return Err(err(format!("unknown mode {m:?}"))),
    };
    let class = match (take("class"), mode) {
        (Some("planar"), _) | (None, KernelMode::Planar) => GraphClass::Planar,
        (None, KernelMode::General { .. }) => declared_general(),
        (Some(c), _) => match c.strip_prefix("k3r:").and_then(|r| r.parse().ok()) {
            Some(r) => GraphClass::K3rMinorFree(r),
            None => return Err(err(format!("unknown class {c:?}"))),
        },
    };
    let supply_coloring = match take("coloring") {
        None | Some("computed") => false,
        Some("supplied") => true,
        Some(c) => return Err(err(format!("unknown coloring {c:?}"))),
    };
    let seed: u64 = num(take("seed"), "seed", line)?;
    let spec = match kind {
        "random" => InstanceSpec::Random(PlanarGenParams {
            n: num(take("n"), "n", line)?,
            k: num(take("k"), "k", line)?,
            edge_keep_prob: num(take("keep"), "keep", line)?,
            seed,
        }),
        "gadget" => {
            let sizes = take("sizes")
                .ok_or_else(|| err("missing sizes".into()))?
                .split(',')
                .map(|s| s.parse::<usize>().map_err(|_| err(format!("bad size {s:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let wiring: Wiring = take("wiring").unwrap_or("independent").parse().map_err(|e: GenError| err(e.to_string()))?;
            let targets: TargetStyle =
                take("targets").unwrap_or("mixed").parse().map_err(|e: GenError| err(e.to_string()))?;
            InstanceSpec::Gadget(GadgetParams {
                class,
                sizes,
                wiring,
                k_pad: num(Some(take("pad").unwrap_or("0")), "pad", line)?,
                targets,
                context: num::<u8>(Some(take("context").unwrap_or("0")), "context", line)? == 1,
                seed,
            })
        }
        other => return Err(err(format!("unknown generator {other:?}"))),
    };
    if let Some(k) = kv.keys().next() {
        return Err(err(format!("unknown key {k:?}")));
    }
    Ok(ManifestEntry { line, label: text.to_string(), spec, mode, supply_coloring })
}

pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>, ManifestError> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then(|| parse_line(i + 1, body))
        })
        .collect()
}

/// Runs one entry; generation failures become failed reports.
pub fn run_entry(entry: &ManifestEntry, limits: SolveLimits) -> TrialReport {
    match entry.generate() {
        Ok(gen) => {
            let col = if entry.supply_coloring {
                external_coloring(gen.instance.graph(), &gen.coloring).ok()
            } else {
                None
            };
            equivalence_trial(&entry.label, &gen.instance, entry.mode, col.as_ref(), limits)
        }
        Err(e) => TrialReport {
            label: entry.label.clone(),
            mode: entry.mode.label(),
            n: 0,
            k: 0,
            c: 0,
            x_size: 0,
            n2: 0,
            n3: 0,
            max_c3_class: 0,
            c2_before: 0,
            c2_after: 0,
            kernel_verdict: "error",
            original: "unsolved",
            kernel_instance: None,
            certificate_ok: None,
            size_before: 0,
            size_after: 0,
            bound: None,
            bound_margin: None,
            non_tight: false,
            fired: Vec::new(),
            agreement: Some(false),
            error: Some(format!("generation failed: {e}")),
        },
    }
}

/// Runs all entries on the rayon pool; reports come back in manifest
/// order.
pub fn run_manifest(entries: &[ManifestEntry], limits: SolveLimits) -> Vec<TrialReport> {
    entries.par_iter().map(|e| run_entry(e, limits)).collect()
}
