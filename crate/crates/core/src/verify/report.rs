//! Verification reports: deterministic, bounded, witness-producing.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Cap on stored witnesses per item; the violation count is always exact.
pub const MAX_WITNESSES: usize = 8;

/// One replayable counterexample: labelled rendered terms plus a message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Name of the check item this witness belongs to.
    pub item: String,
    pub message: String,
    /// `(label, rendered term)` pairs sufficient to replay the failure.
    pub terms: Vec<(String, String)>,
}

/// One sub-check of a verifier: how many instances were examined and how
/// many violated the property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub examined: u64,
    pub violations: u64,
    /// Advisory items record hypotheses (not axioms) and do not affect
    /// the verdict.
    pub advisory: bool,
}

impl CheckItem {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// Verifier name: `category`, `multireedy`, `ez`, ...
    pub check: String,
    pub oracle: String,
    pub max_degree: u32,
    pub valence: Option<u32>,
    pub items: Vec<CheckItem>,
    pub witnesses: Vec<Witness>,
    /// Informational lines (counts, cross-check values); deterministic.
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.advisory || i.passed())
    }

    /// Deterministic plain-text rendering, one line per item.
    pub fn render_text(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        let _ = write!(
            out,
            "check: {}\noracle: {}\nmax_degree: {}",
            self.check, self.oracle, self.max_degree
        );
        if let Some(u) = self.valence {
            let _ = write!(out, "\nvalence: {u}");
        }
        out.push('\n');
        for item in &self.items {
            let status = if item.passed() { "pass" } else { "FAIL" };
            let advisory = if item.advisory { " (advisory)" } else { "" };
            let _ = writeln!(
                out,
                "  {:<40} {}  examined={} violations={}{}",
                item.name, status, item.examined, item.violations, advisory
            );
        }
        for note in &self.notes {
            let _ = writeln!(out, "  note: {note}");
        }
        for w in &self.witnesses {
            let _ = write!(out, "  witness [{}]: {}", w.item, w.message);
            for (label, term) in &w.terms {
                let _ = write!(out, " {label}={term}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

/// Accumulator for one item while a verifier runs; mergeable across
/// deterministic work units.
#[derive(Clone, Debug)]
pub(crate) struct ItemAcc {
    pub name: &'static str,
    pub examined: u64,
    pub violations: u64,
    pub witnesses: Vec<Witness>,
    pub advisory: bool,
}

impl ItemAcc {
    pub fn new(name: &'static str) -> Self {
        ItemAcc {
            name,
            examined: 0,
            violations: 0,
            witnesses: Vec::new(),
            advisory: false,
        }
    }

    pub fn advisory(name: &'static str) -> Self {
        ItemAcc {
            advisory: true,
            ..Self::new(name)
        }
    }

    pub fn ok(&mut self) {
        self.examined += 1;
    }

    pub fn fail(&mut self, message: String, terms: Vec<(String, String)>) {
        self.examined += 1;
        self.violations += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness {
                item: String::from(self.name),
                message,
                terms,
            });
        }
    }

    pub fn check(
        &mut self,
        condition: bool,
        message: impl FnOnce() -> (String, Vec<(String, String)>),
    ) {
        if condition {
            self.ok();
        } else {
            let (m, t) = message();
            self.fail(m, t);
        }
    }

    pub fn merge(&mut self, other: ItemAcc) {
        debug_assert_eq!(self.name, other.name);
        self.examined += other.examined;
        self.violations += other.violations;
        for w in other.witnesses {
            if self.witnesses.len() >= MAX_WITNESSES {
                break;
            }
            self.witnesses.push(w);
        }
    }
}

/// Assemble a report from accumulators, keeping item order.
pub(crate) fn assemble(
    check: &str,
    oracle: String,
    max_degree: u32,
    valence: Option<u32>,
    accs: Vec<ItemAcc>,
    notes: Vec<String>,
) -> VerificationReport {
    let mut items = Vec::with_capacity(accs.len());
    let mut witnesses = Vec::new();
    for acc in accs {
        items.push(CheckItem {
            name: String::from(acc.name),
            examined: acc.examined,
            violations: acc.violations,
            advisory: acc.advisory,
        });
        witnesses.extend(acc.witnesses);
    }
    VerificationReport {
        check: String::from(check),
        oracle,
        max_degree,
        valence,
        items,
        witnesses,
        notes,
    }
}
