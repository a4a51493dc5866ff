//! Machine-readable verification reports.
//!
//! Every sweep produces a [`Report`]: one named statement, the window it
//! was checked on, per-cell evidence, and a closed status vocabulary. A
//! `MISMATCH` always carries a witness. The `mode` field records whether a
//! failure would refute the implementation (`proved-check`: the statement
//! is a theorem) or constitute a mathematical finding (`conjecture`).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "proved-check-pass")]
    ProvedCheckPass,
    #[serde(rename = "conjecture-consistent")]
    ConjectureConsistent,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

/// Whether the checked statement is a theorem (a mismatch means an
/// implementation bug) or a conjecture window (a mismatch is a finding).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckMode {
    #[serde(rename = "proved-check")]
    ProvedCheck,
    #[serde(rename = "conjecture")]
    Conjecture,
}

/// Inclusive window bounds; nothing is asserted outside them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub max_weight: u32,
    pub max_depth: u32,
}

impl Window {
    pub fn new(max_weight: u32, max_depth: u32) -> Self {
        Window { max_weight, max_depth }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub weight: u32,
    pub depth: u32,
    pub expected: i64,
    pub computed: i64,
    #[serde(rename = "match")]
    pub matched: bool,
}

/// Evidence attached to a mismatch: the offending cell plus explicit basis
/// vectors rendered over the cell's named basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub weight: u32,
    pub depth: u32,
    pub description: String,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub statement: String,
    pub provenance: String,
    pub window: Window,
    pub mode: CheckMode,
    pub status: Status,
    pub cells: Vec<Cell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub version: String,
    pub digests: BTreeMap<String, String>,
}

impl Report {
    pub fn new(statement: &str, provenance: &str, window: Window, mode: CheckMode) -> Self {
        Report {
            statement: statement.to_string(),
            provenance: provenance.to_string(),
            window,
            mode,
            status: match mode {
                CheckMode::ProvedCheck => Status::ProvedCheckPass,
                CheckMode::Conjecture => Status::ConjectureConsistent,
            },
            cells: Vec::new(),
            witness: None,
            version: ARTIFACT_VERSION.to_string(),
            digests: BTreeMap::new(),
        }
    }

    /// Records one cell of evidence; a disagreement flips the status to
    /// `MISMATCH`.
    pub fn push_cell(&mut self, weight: u32, depth: u32, expected: i64, computed: i64) {
        let matched = expected == computed;
        if !matched {
            self.status = Status::Mismatch;
        }
        self.cells.push(Cell {
            weight,
            depth,
            expected,
            computed,
            matched,
        });
    }

    /// Records a cell whose check is a structural equality rather than a
    /// dimension comparison; `expected`/`computed` still carry the dims.
    pub fn push_cell_checked(
        &mut self,
        weight: u32,
        depth: u32,
        expected: i64,
        computed: i64,
        ok: bool,
    ) {
        if !ok {
            self.status = Status::Mismatch;
        }
        self.cells.push(Cell {
            weight,
            depth,
            expected,
            computed,
            matched: ok,
        });
    }

    pub fn set_witness(&mut self, weight: u32, depth: u32, description: &str, basis: Vec<String>) {
        if self.witness.is_none() {
            self.witness = Some(Witness {
                weight,
                depth,
                description: description.to_string(),
                basis,
            });
        }
    }

    pub fn add_digest(&mut self, key: &str, value: String) {
        self.digests.insert(key.to_string(), value);
    }

    pub fn is_mismatch(&self) -> bool {
        self.status == Status::Mismatch
    }

    pub fn status_str(&self) -> &'static str {
        match self.status {
            Status::ProvedCheckPass => "proved-check-pass",
            Status::ConjectureConsistent => "conjecture-consistent",
            Status::Mismatch => "MISMATCH",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-header CSV rows, one cell per row.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                self.statement, c.weight, c.depth, c.expected, c.computed, c.matched
            );
        }
        out
    }

    pub fn csv_header() -> &'static str {
        "statement,weight,depth,expected,computed,match"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} [{}] window=(w<={}, d<={}) status={}",
            self.statement,
            self.provenance,
            self.window.max_weight,
            self.window.max_depth,
            self.status_str()
        );
        for c in &self.cells {
            let _ = writeln!(
                out,
                "  cell ({:>2},{}) expected {:>3} computed {:>3} {}",
                c.weight,
                c.depth,
                c.expected,
                c.computed,
                if c.matched { "ok" } else { "MISMATCH" }
            );
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "  witness at ({},{}): {}", w.weight, w.depth, w.description);
            for b in &w.basis {
                let _ = writeln!(out, "    {}", b);
            }
        }
        out
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        let _ = write!(out, "{b:02x}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatch_requires_witnessable_cell() {
        let mut r = Report::new("t", "p", Window::new(10, 2), CheckMode::ProvedCheck);
        r.push_cell(8, 2, 1, 1);
        assert_eq!(r.status, Status::ProvedCheckPass);
        r.push_cell(10, 2, 1, 0);
        assert!(r.is_mismatch());
    }

    #[test]
    fn json_round_trip_and_status_vocabulary() {
        let mut r = Report::new("t", "p", Window::new(12, 4), CheckMode::Conjecture);
        r.push_cell(12, 2, 3, 3);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("conjecture-consistent"));
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
