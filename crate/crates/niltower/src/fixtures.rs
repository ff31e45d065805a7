//! The regression harness: every bundled fixture is rerun through the
//! command path and compared byte for byte with its committed output.

use std::path::{Path, PathBuf};

use niltower_core::Caps;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::cli::run_args;
use crate::report::InputDigest;

pub fn default_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub fixtures: Vec<Entry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub name: String,
    /// Arguments after the program name; `{dir}` is the fixture directory.
    pub args: Vec<String>,
    pub exit: i32,
    /// Cap overrides applied on top of the ambient caps.
    #[serde(default)]
    pub caps: CapOverrides,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapOverrides {
    max_hall_rank: Option<usize>,
    max_class: Option<usize>,
    max_degree: Option<usize>,
}

impl CapOverrides {
    fn apply(&self, mut caps: Caps) -> Caps {
        if let Some(v) = self.max_hall_rank {
            caps.max_hall_rank = v;
        }
        if let Some(v) = self.max_class {
            caps.max_class = v;
        }
        if let Some(v) = self.max_degree {
            caps.max_degree = v;
        }
        caps
    }
}

pub fn load(dir: &Path) -> Result<(Manifest, Vec<u8>), String> {
    let path = dir.join("manifest.json");
    let bytes = std::fs::read(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let m: Manifest = serde_json::from_slice(&bytes).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((m, bytes))
}

pub fn expected_path(dir: &Path, name: &str) -> PathBuf {
    dir.join("expected").join(format!("{name}.json"))
}

/// Runs one entry as the command line would.
pub fn run_entry(dir: &Path, e: &Entry, caps: &Caps) -> crate::cli::Outcome {
    let dir = dir.to_string_lossy();
    let args = std::iter::once("niltower".to_string()).chain(e.args.iter().map(|a| a.replace("{dir}", &dir)));
    run_args(args, &e.caps.apply(*caps))
}

pub fn check(dir: &Path, caps: &Caps, bless: bool, d: &mut InputDigest) -> Result<(Value, i32), String> {
    let (manifest, bytes) = load(dir)?;
    d.file(&bytes);
    let mut failures = Vec::new();
    let mut capped = false;
    for e in &manifest.fixtures {
        if e.args.first().is_some_and(|a| a == "fixture-check") {
            return Err(format!("fixture {} would recurse", e.name));
        }
        let out = run_entry(dir, e, caps);
        let path = expected_path(dir, &e.name);
        let mut reason = None;
        if out.exit != e.exit {
            capped |= out.exit == 3;
            reason = Some(format!("exit {} where {} expected", out.exit, e.exit));
        } else if bless {
            std::fs::write(&path, &out.stdout).map_err(|err| format!("cannot write {}: {err}", path.display()))?;
        } else {
            match std::fs::read(&path) {
                Ok(want) if want == out.stdout.as_bytes() => {}
                Ok(_) => reason = Some("output differs from the committed bytes".to_string()),
                Err(err) => reason = Some(format!("cannot read {}: {err}", path.display())),
            }
        }
        if let Some(r) = reason {
            failures.push(json!({ "name": e.name, "reason": r }));
        }
    }
    let exit = match (failures.is_empty(), capped) {
        (true, _) => 0,
        (false, true) => 3,
        (false, false) => 2,
    };
    let total = manifest.fixtures.len();
    Ok((json!({ "total": total, "passed": total - failures.len(), "failures": failures }), exit))
}
