//! Important vertices, the blue/red color fixpoint, and the three
//! deletion rules on 2-classes locked by one side's tokens.

use serde::Serialize;

use crate::error::KernelError;
use crate::graph::Vertex;
use crate::projection::{ProjectionDecomposition, TwoClassRef};

/// Survivors outside the clean set for blue and red classes.
pub const BLUE_KEEP: usize = 7;
pub const RED_KEEP: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassColor {
    Blue,
    Red,
    Uncolored,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassColoring {
    /// One entry per class, in the order the classes were given.
    pub colors: Vec<ClassColor>,
    pub important: Vec<Vertex>,
}

/// 2-classes whose keys both carry a token of `tokens`, in key order.
pub fn locked_classes(dec: &ProjectionDecomposition, tokens: &[Vertex]) -> Vec<TwoClassRef> {
    dec.two_classes()
        .into_iter()
        .filter(|c| tokens.contains(&c.keys.0) && tokens.contains(&c.keys.1))
        .collect()
}

/// Tokens keying a class of size at least 7, or two of size at least 5.
pub fn important_vertices(classes: &[TwoClassRef], tokens: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = tokens
        .iter()
        .copied()
        .filter(|&x| {
            let mine = classes.iter().filter(|c| c.has_key(x));
            let (seven, five) = mine.fold((0, 0), |(s, f), c| (s + usize::from(c.len() >= 7), f + usize::from(c.len() >= 5)));
            seven >= 1 || five >= 2
        })
        .collect();
    out.sort_unstable();
    out
}

fn covered(classes: &[TwoClassRef], colors: &[ClassColor], x: Vertex) -> bool {
    let (blue, red) = classes.iter().zip(colors).filter(|(c, _)| c.has_key(x)).fold((0, 0), |(b, r), (_, col)| match col {
        ClassColor::Blue => (b + 1, r),
        ClassColor::Red => (b, r + 1),
        ClassColor::Uncolored => (b, r),
    });
    blue >= 1 || red >= 2
}

/// Colors classes of size at least 7 blue and of size 5 or 6 red, then
/// runs [`uncolor_fixpoint`].
pub fn color_removal(classes: &[TwoClassRef], important: &[Vertex]) -> Result<ClassColoring, KernelError> {
    let colors: Vec<ClassColor> = classes
        .iter()
        .map(|c| match c.len() {
            n if n >= 7 => ClassColor::Blue,
            5 | 6 => ClassColor::Red,
            _ => ClassColor::Uncolored,
        })
        .collect();
    uncolor_fixpoint(classes, important, colors)
}

/// Uncolors classes in order for as long as every important vertex keys a
/// blue class or two red ones, rescanning until nothing changes.
pub fn uncolor_fixpoint(
    classes: &[TwoClassRef],
    important: &[Vertex],
    mut colors: Vec<ClassColor>,
) -> Result<ClassColoring, KernelError> {
    if let Some(&x) = important.iter().find(|&&x| !covered(classes, &colors, x)) {
        return Err(KernelError::ColorCoverage(x));
    }
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..classes.len() {
            if colors[i] == ClassColor::Uncolored {
                continue;
            }
            let before = colors[i];
            colors[i] = ClassColor::Uncolored;
            let (a, b) = classes[i].keys;
            let still = [a, b].iter().filter(|x| important.contains(x)).all(|&x| covered(classes, &colors, x));
            if still {
                changed = true;
            } else {
                colors[i] = before;
            }
        }
    }
    // every red class survives only through a key with exactly two red
    // classes and no blue one
    for (i, c) in classes.iter().enumerate() {
        if colors[i] != ClassColor::Red {
            continue;
        }
        let pinned = [c.keys.0, c.keys.1].into_iter().any(|x| {
            let of = |want| classes.iter().zip(&colors).filter(|(d, col)| d.has_key(x) && **col == want).count();
            important.contains(&x) && of(ClassColor::Red) == 2 && of(ClassColor::Blue) == 0
        });
        if !pinned {
            return Err(KernelError::ColorCoverage(c.keys.0));
        }
    }
    Ok(ClassColoring { colors, important: important.to_vec() })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RuleCounts {
    pub rule1: usize,
    pub rule2: usize,
    pub rule3: usize,
}

impl RuleCounts {
    pub fn total(&self) -> usize {
        self.rule1 + self.rule2 + self.rule3
    }
}

/// Vertices the rules delete. Members of `set` and of `protected` always
/// stay; survivors outside `set` are taken lowest id first, protected
/// ones counted first. Classes of size at most 4 are untouched.
pub fn apply_reduction_rules(
    classes: &[TwoClassRef],
    coloring: &ClassColoring,
    set: &[Vertex],
    protected: &[Vertex],
) -> (Vec<Vertex>, RuleCounts) {
    let mut doomed = Vec::new();
    let mut counts = RuleCounts::default();
    let important = |x: Vertex| coloring.important.contains(&x);
    for (c, &color) in classes.iter().zip(&coloring.colors) {
        if c.len() <= 4 {
            continue;
        }
        let keep_outside = match color {
            ClassColor::Blue => BLUE_KEEP,
            ClassColor::Red => RED_KEEP,
            ClassColor::Uncolored if important(c.keys.0) && important(c.keys.1) => 0,
            ClassColor::Uncolored => continue,
        };
        let outside: Vec<Vertex> = c.members.iter().copied().filter(|v| !set.contains(v)).collect();
        let mut kept: Vec<Vertex> = outside.iter().copied().filter(|v| protected.contains(v)).collect();
        for &v in &outside {
            if kept.len() >= keep_outside {
                break;
            }
            if !kept.contains(&v) {
                kept.push(v);
            }
        }
        let gone: Vec<Vertex> = outside.into_iter().filter(|v| !kept.contains(v)).collect();
        match color {
            ClassColor::Blue => counts.rule2 += gone.len(),
            ClassColor::Red => counts.rule3 += gone.len(),
            ClassColor::Uncolored => counts.rule1 += gone.len(),
        }
        doomed.extend(gone);
    }
    doomed.sort_unstable();
    (doomed, counts)
}
