//! Command definitions and dispatch.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use niltower_core::hall::{hall_basis, witt_rank};
use niltower_core::kan::{layer_homotopy, loop_group, pi0, tower_stage};
use niltower_core::lie::cross_effect_kernel;
use niltower_core::linear::{moore_homology, reduced_linearization};
use niltower_core::nilpotent::{FreeNilpotentGroup, FreeWord};
use niltower_core::quotient::{nilpotent_quotient, PcWord};
use niltower_core::simplicial::SimplicialSet;
use niltower_core::{Caps, Error};
use serde_json::{json, Value};

use crate::fixtures;
use crate::input::{self, ParseError};
use crate::report::{big, int, invariants, InputDigest, Report};

#[derive(Parser, Debug)]
#[command(name = "niltower", version, about = "Lower central series towers of Kan loop groups, exactly")]
pub struct Cli {
    /// Add the elapsed wall time to the report (breaks byte-for-byte determinism).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a space file against the format and the simplicial identities.
    Validate { file: PathBuf },
    /// Reduced homology of a space.
    Homology {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Hall trees of one weight.
    HallBasis {
        #[arg(long)]
        generators: usize,
        #[arg(long)]
        class: usize,
    },
    /// Rank of one weight of the free Lie ring.
    Witt {
        #[arg(long)]
        generators: usize,
        #[arg(long)]
        class: usize,
    },
    /// Kernel of the first cross-effect map of `Lie_n`.
    CrossEffect {
        #[arg(long)]
        class: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<usize>,
    },
    /// Normal form of a word in the free nilpotent group.
    Collect {
        #[arg(long)]
        generators: usize,
        #[arg(long)]
        class: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Class-n quotient of a finitely presented group.
    Nilq {
        file: PathBuf,
        #[arg(long)]
        class: usize,
    },
    /// Generators and face words of the loop group in one degree.
    LoopGroup {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Stages of the lower central series tower.
    Tower {
        #[command(subcommand)]
        what: TowerCommand,
    },
    /// Homotopy of one layer of the tower.
    LayerHomotopy {
        file: PathBuf,
        #[arg(long)]
        class: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Recompute every bundled fixture and diff it byte for byte.
    FixtureCheck {
        /// Fixture directory (defaults to the one shipped with the crate).
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Rewrite the expected outputs instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum TowerCommand {
    /// Invariants of the layers of `π_0` of the class-n stage.
    Pi0 {
        file: PathBuf,
        #[arg(long)]
        class: usize,
    },
}

/// What a process would print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

pub enum Failure {
    Io(String),
    Parse(ParseError),
    Invalid(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Io(_) => 1,
            Failure::Parse(_) | Failure::Invalid(_) => 2,
            Failure::Core(Error::ResourceCap { .. } | Error::Overflow) => 3,
            Failure::Core(Error::InvariantBreach(_) | Error::GroupMismatch { .. }) => 4,
            Failure::Core(_) => 2,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Io(m) => json!({ "kind": "io", "message": m }),
            Failure::Parse(e) => json!({
                "kind": "parse",
                "code": e.code,
                "rule": e.rule,
                "line": e.line,
                "column": e.column,
                "message": e.message,
            }),
            Failure::Invalid(m) => json!({ "kind": "invalid_argument", "message": m }),
            Failure::Core(e @ Error::ResourceCap { what, needed, limit }) => json!({
                "kind": "resource_cap",
                "cap": what,
                "needed": needed,
                "limit": limit,
                "message": e.to_string(),
            }),
            Failure::Core(e @ Error::Overflow) => json!({ "kind": "resource_cap", "cap": "exponent", "message": e.to_string() }),
            Failure::Core(e @ (Error::InvariantBreach(_) | Error::GroupMismatch { .. })) => {
                json!({ "kind": "invariant_breach", "message": e.to_string() })
            }
            Failure::Core(e) => json!({ "kind": "invalid_argument", "message": e.to_string() }),
        }
    }
}

type Step = Result<(Value, i32), Failure>;

fn read(path: &Path, digest: &mut InputDigest) -> Result<Vec<u8>, Failure> {
    // only the file name, so reports do not depend on where inputs live
    let shown = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let bytes = std::fs::read(path).map_err(|e| Failure::Io(format!("cannot read {shown}: {e}")))?;
    digest.file(&bytes);
    Ok(bytes)
}

fn space(path: &Path, digest: &mut InputDigest) -> Result<SimplicialSet, Failure> {
    input::parse_space(&read(path, digest)?).map_err(Failure::Parse)
}

fn ok(v: Value) -> Step {
    Ok((v, 0))
}

fn pc_word(w: &PcWord) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let parts: Vec<String> =
        w.iter().map(|&(i, e)| if e == 1 { format!("p{}", i + 1) } else { format!("p{}^{e}", i + 1) }).collect();
    parts.join(" ")
}

fn free_word(w: &FreeWord, prefix: &str) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    let parts: Vec<String> = w
        .syllables()
        .iter()
        .map(|&(g, e)| if e == 1 { format!("{prefix}{}", g + 1) } else { format!("{prefix}{}^{e}", g + 1) })
        .collect();
    parts.join(" ")
}

fn validate(file: &Path, d: &mut InputDigest) -> Step {
    let (x, text) = input::read_space(&read(file, d)?).map_err(Failure::Parse)?;
    let found = input::violations(&x, &text);
    let list: Vec<Value> = found
        .iter()
        .map(|(v, e)| {
            json!({
                "code": e.code,
                "kind": v.kind.as_str(),
                "simplex": v.simplex,
                "rule": v.rule,
                "detail": v.detail,
                "line": e.line,
                "column": e.column,
            })
        })
        .collect();
    let counts: Vec<usize> = x.cells().iter().map(Vec::len).collect();
    let exit = if list.is_empty() { 0 } else { 2 };
    Ok((json!({ "ok": list.is_empty(), "name": x.name(), "cells": counts, "violations": list }), exit))
}

fn checked_rank(caps: &Caps, k: usize, n: usize) -> Result<(), Failure> {
    let total: num_bigint::BigInt = (1..=n).map(|w| witt_rank(k, w)).sum();
    let needed = usize::try_from(&total).unwrap_or(usize::MAX);
    caps.check_hall_rank(needed).map_err(Failure::Core)
}

fn dispatch(cmd: &Command, caps: &Caps, d: &mut InputDigest) -> Step {
    match cmd {
        Command::Validate { file } => validate(file, d),
        Command::Homology { file, degree } => {
            d.option("degree", &degree.to_string());
            let x = space(file, d)?;
            caps.check_degree(degree + 1)?;
            let a = reduced_linearization(&x, degree + 1)?;
            ok(invariants(&moore_homology(&a, *degree)?))
        }
        Command::HallBasis { generators, class } => {
            d.option("generators", &generators.to_string());
            d.option("class", &class.to_string());
            let rank = witt_rank(*generators, *class);
            caps.check_hall_rank(usize::try_from(&rank).unwrap_or(usize::MAX))?;
            let trees: Vec<String> = hall_basis(*generators, *class).iter().map(ToString::to_string).collect();
            ok(json!({ "rank": big(&rank), "trees": trees }))
        }
        Command::Witt { generators, class } => {
            d.option("generators", &generators.to_string());
            d.option("class", &class.to_string());
            ok(big(&witt_rank(*generators, *class)))
        }
        Command::CrossEffect { class, ranks } => {
            d.option("class", &class.to_string());
            d.option("ranks", &format!("{ranks:?}"));
            if *class == 0 {
                return Err(Failure::Invalid("class must be at least 1".into()));
            }
            let total: usize = ranks.iter().sum();
            let rank = witt_rank(total, *class);
            caps.check_hall_rank(usize::try_from(&rank).unwrap_or(usize::MAX))?;
            let kernel = cross_effect_kernel(*class, ranks)?;
            ok(json!({ "kernel": invariants(&kernel), "injective": kernel.is_trivial() }))
        }
        Command::Collect { generators, class, word } => {
            d.option("generators", &generators.to_string());
            d.option("class", &class.to_string());
            d.option("word", word);
            let w = input::parse_word(word, &[], *generators).map_err(Failure::Invalid)?;
            if *class == 0 {
                return Err(Failure::Invalid("class must be at least 1".into()));
            }
            checked_rank(caps, *generators, *class)?;
            let g = FreeNilpotentGroup::with_caps(*generators, *class, caps)?;
            let x = g.collect(&w)?;
            let terms: Vec<Value> =
                x.terms().iter().map(|(t, e)| json!({ "tree": t.to_string(), "exponent": int(*e) })).collect();
            ok(json!({
                "exponents": x.exponents().iter().map(|&e| int(e)).collect::<Vec<_>>(),
                "terms": terms,
            }))
        }
        Command::Nilq { file, class } => {
            d.option("class", &class.to_string());
            let p = input::parse_presentation(&read(file, d)?).map_err(Failure::Parse)?;
            if *class == 0 {
                return Err(Failure::Invalid("class must be at least 1".into()));
            }
            checked_rank(caps, p.generators.len(), *class)?;
            let q = nilpotent_quotient(&p, *class, caps)?;
            let gens: Vec<Value> = q
                .generators()
                .iter()
                .map(|g| {
                    json!({
                        "tree": g.tree.to_string(),
                        "weight": g.weight,
                        "relative_order": g.relative_order.map(int),
                    })
                })
                .collect();
            let powers: Vec<String> = q
                .power_relations()
                .iter()
                .map(|(i, w)| {
                    let r = q.generators()[*i].relative_order.unwrap_or(0);
                    format!("p{}^{r} = {}", i + 1, pc_word(w))
                })
                .collect();
            let conjugates: Vec<String> = q
                .conjugate_relations()
                .iter()
                .map(|(i, j, w)| format!("p{}^p{} = {}", j + 1, i + 1, pc_word(w)))
                .collect();
            if !q.is_consistent() {
                return Err(Failure::Core(Error::InvariantBreach("inconsistent polycyclic presentation".into())));
            }
            ok(json!({
                "generator_names": p.generators,
                "layers": q.layers().iter().map(invariants).collect::<Vec<_>>(),
                "pc_generators": gens,
                "power_relations": powers,
                "conjugate_relations": conjugates,
            }))
        }
        Command::LoopGroup { file, degree } => {
            d.option("degree", &degree.to_string());
            let x = space(file, d)?;
            let g = loop_group(&x, *degree, caps)?;
            g.check_identities().map_err(|e| Failure::Core(Error::InvariantBreach(e)))?;
            let refs: Vec<String> = g.generator_refs(*degree).iter().map(ToString::to_string).collect();
            let faces: Vec<Vec<String>> = if *degree == 0 {
                vec![Vec::new(); refs.len()]
            } else {
                let faces = &g.degree(*degree).faces;
                (0..refs.len()).map(|j| faces.iter().map(|f| free_word(&f[j], "g")).collect()).collect()
            };
            ok(json!({
                "degree": degree,
                "generator_count": refs.len(),
                "generators": refs,
                "faces": faces,
            }))
        }
        Command::Tower { what: TowerCommand::Pi0 { file, class } } => {
            d.option("class", &class.to_string());
            let x = space(file, d)?;
            let g = loop_group(&x, 1, caps)?;
            let q = pi0(&tower_stage(&g, *class, caps)?)?;
            ok(json!({
                "layers": q.layers().iter().map(invariants).collect::<Vec<_>>(),
                "trivial": q.is_trivial(),
            }))
        }
        Command::LayerHomotopy { file, class, degree } => {
            d.option("class", &class.to_string());
            d.option("degree", &degree.to_string());
            let x = space(file, d)?;
            caps.check_class(*class)?;
            ok(invariants(&layer_homotopy(&x, *class, *degree, caps)?))
        }
        Command::FixtureCheck { dir, bless } => {
            let dir = dir.clone().unwrap_or_else(fixtures::default_dir);
            fixtures::check(&dir, caps, *bless, d).map_err(Failure::Io)
        }
    }
}

fn verb(cmd: &Command) -> &'static str {
    match cmd {
        Command::Validate { .. } => "validate",
        Command::Homology { .. } => "homology",
        Command::HallBasis { .. } => "hall-basis",
        Command::Witt { .. } => "witt",
        Command::CrossEffect { .. } => "cross-effect",
        Command::Collect { .. } => "collect",
        Command::Nilq { .. } => "nilq",
        Command::LoopGroup { .. } => "loop-group",
        Command::Tower { .. } => "tower pi0",
        Command::LayerHomotopy { .. } => "layer-homotopy",
        Command::FixtureCheck { .. } => "fixture-check",
    }
}

pub fn run(cli: &Cli, caps: &Caps) -> Outcome {
    let start = Instant::now();
    let verb = verb(&cli.command);
    let mut digest = InputDigest::new(verb);
    let (outcome, exit) = match dispatch(&cli.command, caps, &mut digest) {
        Ok((v, exit)) => (Ok(v), exit),
        Err(f) => (Err(f.to_json()), f.exit_code()),
    };
    let report = Report {
        verb: verb.to_string(),
        inputs: digest.hex(),
        outcome,
        elapsed_ms: cli.timing.then(|| start.elapsed().as_millis()),
    };
    Outcome { stdout: report.render(), stderr: String::new(), exit }
}

/// Parses a full argument list (program name first) and runs it.
pub fn run_args<I, T>(args: I, caps: &Caps) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, caps),
        Err(e) => {
            let exit = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if exit == 0 {
                Outcome { stdout: text, stderr: String::new(), exit }
            } else {
                Outcome { stdout: String::new(), stderr: text, exit }
            }
        }
    }
}

/// Caps from `NILTOWER_MAX_HALL_RANK`, `NILTOWER_MAX_CLASS` and
/// `NILTOWER_MAX_DEGREE`, falling back to the defaults.
pub fn caps_from_env(get: impl Fn(&str) -> Option<String>) -> Result<Caps, String> {
    let mut caps = Caps::default();
    for (name, slot) in [
        ("NILTOWER_MAX_HALL_RANK", &mut caps.max_hall_rank),
        ("NILTOWER_MAX_CLASS", &mut caps.max_class),
        ("NILTOWER_MAX_DEGREE", &mut caps.max_degree),
    ] {
        if let Some(v) = get(name) {
            *slot = v.trim().parse().map_err(|_| format!("{name}={v:?} is not a nonnegative integer"))?;
        }
    }
    Ok(caps)
}
