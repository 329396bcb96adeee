//! Pass/fail reports with replayable witnesses.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to this subject (e.g. no cleavage, no chosen terminals).
    Skip,
    /// Recorded property that is not a pass/fail criterion for this subject.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::Info => "info",
        })
    }
}

/// Named fields describing a counterexample; every value is the rendered
/// object, morphism, map or element involved.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Witness(pub BTreeMap<String, String>);

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                f.write_str("; ")?;
            }
            first = false;
            write!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub item: String,
    pub status: Status,
    pub checked: usize,
    pub failures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Entry {
    pub fn skip(item: &str, detail: impl Into<String>) -> Entry {
        Entry {
            item: item.to_string(),
            status: Status::Skip,
            checked: 0,
            failures: 0,
            witness: None,
            detail: Some(detail.into()),
        }
    }

    /// Whether the checked property held on every instance.
    pub fn holds(&self) -> bool {
        self.failures == 0 && self.status != Status::Skip
    }

    pub fn informational(mut self) -> Entry {
        self.status = Status::Info;
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Entry {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub suite: String,
    pub subject: String,
    pub entries: Vec<Entry>,
}

/// One line of the flattened report format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub suite: String,
    pub item: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default)]
    pub checked: usize,
    #[serde(default)]
    pub failures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} ({} checked", self.suite, self.item, self.status, self.checked)?;
        if self.failures > 0 {
            write!(f, ", {} failing", self.failures)?;
        }
        f.write_str(")")?;
        if let Some(d) = &self.detail {
            write!(f, " {d}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {w}")?;
        }
        Ok(())
    }
}

impl AxiomReport {
    pub fn new(suite: &str, subject: impl Into<String>) -> Self {
        AxiomReport { suite: suite.to_string(), subject: subject.into(), entries: Vec::new() }
    }

    pub fn push(&mut self, entry: Entry) {
        self.entries.push(entry);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn entry(&self, item: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.item == item)
    }

    /// Whether `item` was checked and held everywhere.
    pub fn holds(&self, item: &str) -> bool {
        self.entry(item).is_some_and(Entry::holds)
    }

    pub fn first_failure(&self) -> Option<&Entry> {
        self.entries.iter().find(|e| e.status == Status::Fail)
    }

    pub fn records(&self) -> Vec<Record> {
        self.entries
            .iter()
            .map(|e| Record {
                suite: format!("{}:{}", self.suite, self.subject),
                item: e.item.clone(),
                status: e.status,
                witness: e.witness.clone(),
                checked: e.checked,
                failures: e.failures,
                detail: e.detail.clone(),
            })
            .collect()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.records() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Accumulates one report entry; keeps the first failing witness in
/// enumeration order.
#[derive(Debug)]
pub struct Check {
    item: String,
    checked: usize,
    failures: usize,
    witness: Option<Witness>,
    rank: usize,
}

impl Check {
    pub fn new(item: &str) -> Self {
        Check { item: item.to_string(), checked: 0, failures: 0, witness: None, rank: usize::MAX }
    }

    /// Like [`Check::record`], but keeps the failing witness of smallest rank
    /// rather than the first one.
    pub fn record_ranked(&mut self, ok: bool, rank: impl FnOnce() -> usize, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if ok {
            return;
        }
        let rank = rank();
        if self.failures == 0 || rank < self.rank {
            self.witness = Some(witness());
            self.rank = rank;
        }
        self.failures += 1;
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.keep(witness());
        }
    }

    /// Records a failed instance without evaluating anything further.
    pub fn fail_with(&mut self, witness: Witness) {
        self.checked += 1;
        self.keep(witness);
    }

    fn keep(&mut self, witness: Witness) {
        if self.failures == 0 {
            self.witness = Some(witness);
        }
        self.failures += 1;
    }

    /// Records an instance whose evaluation produced an error.
    pub fn record_result<T>(&mut self, r: crate::Result<T>, witness: impl FnOnce() -> Witness) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail_with(witness().with("error", e));
                None
            }
        }
    }

    pub fn failures(&self) -> usize {
        self.failures
    }

    pub fn finish(self) -> Entry {
        Entry {
            item: self.item,
            status: if self.failures == 0 { Status::Pass } else { Status::Fail },
            checked: self.checked,
            failures: self.failures,
            witness: self.witness,
            detail: None,
        }
    }
}
