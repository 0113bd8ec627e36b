use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use isr_kernel::coloring::{color_graph, external_coloring};
use isr_kernel::embedding::validate_rotation_system;
use isr_kernel::format::{parse_coloring, parse_instance, parse_sequence, write_coloring, write_instance, write_sequence};
use isr_kernel::harness::gadget::{gen_two_class_gadget, GadgetParams, TargetStyle, Wiring};
use isr_kernel::harness::gen::{gen_planar_instance, PlanarGenParams};
use isr_kernel::harness::manifest::{parse_manifest, run_manifest};
use isr_kernel::kernel_general::{build_kernel_general_with, KernelVerdict};
use isr_kernel::planar::{build_kernel_planar_with, PlanarOptions};
use isr_kernel::projection::compute_projection;
use isr_kernel::solver::{solve_bfs, verify_sequence, SolveLimits, Verdict};
use isr_kernel::{GraphClass, Instance};

#[derive(Parser)]
#[command(name = "isrk", version, about = "Token-jumping reconfiguration kernels and solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Limits {
    /// Stop after this many distinct states.
    #[arg(long, default_value_t = 5_000_000)]
    max_states: usize,
    /// Stop after this many milliseconds.
    #[arg(long, default_value_t = 60_000)]
    max_millis: u64,
}

impl From<Limits> for SolveLimits {
    fn from(l: Limits) -> Self {
        SolveLimits { max_states: l.max_states, max_millis: l.max_millis }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    General,
    Planar,
}

#[derive(Clone, Copy, ValueEnum)]
enum WiringArg {
    Independent,
    Path,
    Cycle,
    Shared,
    Triangle,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetsArg {
    Pendant,
    Member,
    Mixed,
}

#[derive(Subcommand)]
enum GenKind {
    /// Random thinned stacked triangulation.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.7)]
        keep: f64,
    },
    /// Fans of 2-classes keyed by source tokens.
    Gadget {
        /// Comma-separated class sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value = "independent")]
        wiring: WiringArg,
        #[arg(long, default_value_t = 0)]
        pad: usize,
        #[arg(long, value_enum, default_value = "mixed")]
        targets: TargetsArg,
        /// Join a triangle to the first target token.
        #[arg(long)]
        context: bool,
    },
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance by breadth-first search.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        limits: Limits,
        /// Write the reconfiguration sequence here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a sequence file against an instance.
    Verify { instance: PathBuf, sequence: PathBuf },
    /// Run a kernel and write the reduced instance.
    Kernelize {
        instance: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Forbidden minor K3,r (general mode).
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// Fail when the planar output exceeds (38 + c) k vertices.
        #[arg(long)]
        strict: bool,
        /// Proper coloring to use instead of first-fit.
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Reduced instance (or certificate on a trivial yes).
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON-lines report; stdout when absent.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print size, projection and embedding statistics.
    Stats { instance: PathBuf },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        /// `planar` or `k3r:R`.
        #[arg(long, global = true, default_value = "planar")]
        class: String,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        /// Also write the generator's 4-coloring.
        #[arg(long, global = true)]
        coloring_out: Option<PathBuf>,
    },
    /// Run a manifest of equivalence trials.
    Trial {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_class(s: &str) -> Result<GraphClass> {
    if s == "planar" {
        return Ok(GraphClass::Planar);
    }
    match s.strip_prefix("k3r:").and_then(|r| r.parse().ok()) {
        Some(r) => Ok(GraphClass::K3rMinorFree(r)),
        None => bail!("unknown class {s:?}, expected planar or k3r:R"),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve { instance, limits, out } => {
            let inst = load(&instance)?;
            let outcome = solve_bfs(&inst, limits.into());
            match &outcome.verdict {
                Verdict::Yes { sequence, length } => {
                    println!("yes length={length} states={}", outcome.states_explored);
                    if let Some(p) = out {
                        fs::write(&p, write_sequence(sequence))?;
                    }
                }
                Verdict::No => println!("no states={}", outcome.states_explored),
                Verdict::ResourceLimit => {
                    println!("limit states={}", outcome.states_explored);
                    return Ok(ExitCode::from(2));
                }
            }
        }
        Command::Verify { instance, sequence } => {
            let inst = load(&instance)?;
            let seq = parse_sequence(&read(&sequence)?, inst.n())?;
            match verify_sequence(&inst, &seq) {
                Ok(()) => println!("valid ({} jumps)", seq.len()),
                Err(e) => {
                    println!("invalid: {e}");
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
        Command::Kernelize { instance, mode, r, strict, coloring, out, report } => {
            let inst = load(&instance)?;
            let col = match coloring {
                Some(p) => Some(external_coloring(inst.graph(), &parse_coloring(&read(&p)?, inst.graph())?)?),
                None => None,
            };
            let result = match mode {
                Mode::General => {
                    let col = col.unwrap_or_else(|| color_graph(inst.graph()));
                    build_kernel_general_with(&inst, r, &col)?
                }
                Mode::Planar => build_kernel_planar_with(&inst, &PlanarOptions { strict, coloring: col })?,
            };
            let lines = result.report.json_lines().join("\n") + "\n";
            match report {
                Some(p) => fs::write(&p, lines)?,
                None => print!("{lines}"),
            }
            let text = match &result.verdict {
                KernelVerdict::Reduced { instance } => write_instance(instance),
                KernelVerdict::TrivialYes { certificate } => {
                    let mut t = String::from("c trivial-yes\n");
                    if let Some(seq) = certificate {
                        t.push_str(&write_sequence(seq));
                    }
                    t
                }
            };
            if let Some(p) = out {
                fs::write(&p, text)?;
            }
        }
        Command::Stats { instance } => {
            let inst = load(&instance)?;
            let g = inst.graph();
            let dec = compute_projection(&inst);
            let col = color_graph(g);
            println!("n {} m {} k {} class {}", g.n(), g.edge_count(), inst.k(), inst.class());
            println!("x {} c1 {} c2 {} c3 {} n2 {} n3 {}", dec.x.len(), dec.c1.len(), dec.c2.len(), dec.c3.len(), dec.n2, dec.n3);
            println!("degeneracy {} colors {}", col.degeneracy, col.color_count);
            let hist: Vec<String> = dec.size_histogram().iter().map(|(s, c)| format!("{s}:{c}")).collect();
            println!("2-class sizes {}", hist.join(" "));
            match inst.embedding() {
                Some(rot) => match validate_rotation_system(g, rot) {
                    Ok(rep) => println!("embedding ok faces {} components {}", rep.faces, rep.components),
                    Err(e) => println!("embedding invalid: {e}"),
                },
                None => println!("embedding none"),
            }
        }
        Command::Gen { kind, seed, class, out, coloring_out } => {
            let class = parse_class(&class)?;
            let gen = match kind {
                GenKind::Random { n, k, keep } => {
                    gen_planar_instance(PlanarGenParams { n, k, edge_keep_prob: keep, seed }, class)?
                }
                GenKind::Gadget { sizes, wiring, pad, targets, context } => {
                    let wiring = match wiring {
                        WiringArg::Independent => Wiring::Independent,
                        WiringArg::Path => Wiring::Path,
                        WiringArg::Cycle => Wiring::Cycle,
                        WiringArg::Shared => Wiring::SharedKey,
                        WiringArg::Triangle => Wiring::Triangle,
                    };
                    let targets = match targets {
                        TargetsArg::Pendant => TargetStyle::Pendant,
                        TargetsArg::Member => TargetStyle::Member,
                        TargetsArg::Mixed => TargetStyle::Mixed,
                    };
                    gen_two_class_gadget(&GadgetParams { class, sizes, wiring, k_pad: pad, targets, context, seed })?
                }
            };
            emit(out.as_deref(), &write_instance(&gen.instance))?;
            if let Some(p) = coloring_out {
                fs::write(&p, write_coloring(&gen.coloring))?;
            }
        }
        Command::Trial { manifest, out, limits } => {
            let entries = parse_manifest(&read(&manifest)?)?;
            let reports = run_manifest(&entries, limits.into());
            let mut sink: Box<dyn Write> = match out {
                Some(p) => Box::new(fs::File::create(&p).with_context(|| format!("creating {}", p.display()))?),
                None => Box::new(std::io::stdout()),
            };
            let (mut agree, mut fail, mut open) = (0, 0, 0);
            for r in &reports {
                writeln!(sink, "{}", serde_json::to_string(r)?)?;
                match r.agreement {
                    Some(true) => agree += 1,
                    Some(false) => fail += 1,
                    None => open += 1,
                }
            }
            eprintln!("trials {} agree {agree} disagree {fail} inconclusive {open}", reports.len());
            if fail > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
