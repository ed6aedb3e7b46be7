//! Witnessed verdicts shared by every checker.

use serde::{Deserialize, Serialize};

/// How many counterexamples a checker collects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WitnessMode {
    /// Stop at the first violation in lexicographic scan order.
    #[default]
    First,
    /// Enumerate every violation.
    All,
}

/// A single violation: the condition that failed and the named elements
/// that make it fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub condition: String,
    pub elements: Vec<String>,
}

impl Witness {
    pub fn new<S: Into<String>>(condition: impl Into<String>, elements: Vec<S>) -> Self {
        Witness {
            condition: condition.into(),
            elements: elements.into_iter().map(Into::into).collect(),
        }
    }
}

/// Verdict plus counterexamples. The verdict is false exactly when at least
/// one witness was recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    verdict: bool,
    witnesses: Vec<Witness>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport {
            verdict: true,
            witnesses: Vec::new(),
        }
    }

    pub fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        CheckReport {
            verdict: witnesses.is_empty(),
            witnesses,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn first_witness(&self) -> Option<&Witness> {
        self.witnesses.first()
    }

    /// Conjunction of two reports; witnesses are concatenated in order.
    pub fn and(mut self, other: CheckReport) -> CheckReport {
        self.witnesses.extend(other.witnesses);
        self.verdict = self.witnesses.is_empty();
        self
    }
}

/// Accumulates witnesses while honouring a [`WitnessMode`].
#[derive(Debug)]
pub(crate) struct Collector {
    mode: WitnessMode,
    witnesses: Vec<Witness>,
}

impl Collector {
    pub(crate) fn new(mode: WitnessMode) -> Self {
        Collector {
            mode,
            witnesses: Vec::new(),
        }
    }

    /// Records a violation. Returns true when the scan should stop.
    pub(crate) fn push(&mut self, w: Witness) -> bool {
        self.witnesses.push(w);
        self.done()
    }

    pub(crate) fn done(&self) -> bool {
        self.mode == WitnessMode::First && !self.witnesses.is_empty()
    }

    pub(crate) fn finish(self) -> CheckReport {
        CheckReport::from_witnesses(self.witnesses)
    }
}
