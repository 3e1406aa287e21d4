use std::cell::RefCell;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use innerscope::io::{render_json, IoError, Resolver};

/// A parse or validation error; the process exits with status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl InputError {
    pub fn io(path: &Path, e: IoError) -> InputError {
        InputError(format!("{}: {e}", path.display()))
    }
}

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub type CmdResult = Result<Report, InputError>;

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

/// Reads input files and records their hashes, including files referenced from other files.
#[derive(Default)]
pub struct Inputs {
    seen: RefCell<Vec<Input>>,
}

impl Inputs {
    pub fn read(&self, path: &Path) -> Result<String, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|_| InputError(IoError::FileNotFound(path.display().to_string()).to_string()))?;
        self.record(path, &text);
        Ok(text)
    }

    fn record(&self, path: &Path, text: &str) {
        let path = path.display().to_string();
        let mut seen = self.seen.borrow_mut();
        if !seen.iter().any(|i| i.path == path) {
            seen.push(Input {
                path,
                sha256: sha256_hex(text.as_bytes()),
            });
        }
    }

    /// Resolver for paths written inside `file`.
    pub fn beside<'a>(&'a self, file: &Path) -> Beside<'a> {
        Beside {
            inputs: self,
            base: file.parent().map(Path::to_path_buf).unwrap_or_default(),
        }
    }

    pub fn into_vec(self) -> Vec<Input> {
        self.seen.into_inner()
    }
}

pub struct Beside<'a> {
    inputs: &'a Inputs,
    base: PathBuf,
}

impl Resolver for Beside<'_> {
    fn load(&self, path: &str) -> Result<String, IoError> {
        let full = self.base.join(path);
        let text = std::fs::read_to_string(&full).map_err(|_| IoError::FileNotFound(full.display().to_string()))?;
        self.inputs.record(&full, &text);
        Ok(text)
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub name: String,
    pub value: Value,
    /// `None` for purely informational values.
    pub pass: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<Input>,
    pub verdicts: Vec<Verdict>,
    pub citations: Vec<&'static str>,
    pub timing: Duration,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            verdicts: Vec::new(),
            citations: Vec::new(),
            timing: Duration::ZERO,
        }
    }

    pub fn check(&mut self, name: &str, pass: bool) -> &mut Self {
        self.verdicts.push(Verdict {
            name: name.into(),
            value: Value::Bool(pass),
            pass: Some(pass),
        });
        self
    }

    pub fn checked_value(&mut self, name: &str, value: impl Into<Value>, pass: bool) -> &mut Self {
        self.verdicts.push(Verdict {
            name: name.into(),
            value: value.into(),
            pass: Some(pass),
        });
        self
    }

    pub fn info(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.verdicts.push(Verdict {
            name: name.into(),
            value: value.into(),
            pass: None,
        });
        self
    }

    pub fn cite(&mut self, tag: &'static str) -> &mut Self {
        if !self.citations.contains(&tag) {
            self.citations.push(tag);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass != Some(false))
    }

    fn body(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs.iter().map(|i| json!({ "path": i.path, "sha256": i.sha256 })).collect::<Vec<_>>(),
            "verdicts": self.verdicts.iter().map(|v| json!({ "name": v.name, "value": v.value, "pass": v.pass })).collect::<Vec<_>>(),
            "citations": self.citations,
            "passed": self.passed(),
        })
    }

    /// The report as JSON. `determinism_hash` covers everything except `timing`.
    pub fn to_json(&self) -> Value {
        let mut v = self.body();
        let hash = sha256_hex(render_json(&v).as_bytes());
        let map = v.as_object_mut().expect("object");
        map.insert("determinism_hash".into(), Value::String(hash));
        map.insert("timing".into(), json!({ "seconds": self.timing.as_secs_f64() }));
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("innerscope {}\n", self.command);
        for i in &self.inputs {
            out.push_str(&format!("  input    {}  sha256:{}\n", i.path, &i.sha256[..16]));
        }
        let width = self.verdicts.iter().map(|v| v.name.chars().count()).max().unwrap_or(0);
        for v in &self.verdicts {
            let value = match &v.value {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let mark = match v.pass {
                Some(true) => "  [PASS]",
                Some(false) => "  [FAIL]",
                None => "",
            };
            let pad = width - v.name.chars().count();
            out.push_str(&format!("  {}{}  {value}{mark}\n", v.name, " ".repeat(pad)));
        }
        if !self.citations.is_empty() {
            out.push_str("  exercises:\n");
            for c in &self.citations {
                out.push_str(&format!("    - {c}\n"));
            }
        }
        out.push_str(&format!(
            "  result   {} in {:.3} s\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.timing.as_secs_f64()
        ));
        out
    }
}
