//! Verified derivation traces: every class computed by a torus rule carries
//! the list of rule applications that produced it, each with its
//! side-condition outcomes and a justification that is either VERIFIED (the
//! engine checked it) or AXIOM (an imported geometric fact, carried with its
//! statement).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "quote")]
pub enum Justification {
    Verified,
    Axiom(String),
}

impl Justification {
    pub fn axiom(quote: impl Into<String>) -> Self {
        let quote = quote.into();
        assert!(!quote.is_empty(), "axiom steps must carry their statement");
        Justification::Axiom(quote)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCondition {
    pub check: String,
    pub verdict: String,
}

impl SideCondition {
    pub fn passed(check: impl Into<String>) -> Self {
        SideCondition {
            check: check.into(),
            verdict: "pass".into(),
        }
    }

    pub fn outcome(check: impl Into<String>, verdict: impl Into<String>) -> Self {
        SideCondition {
            check: check.into(),
            verdict: verdict.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationStep {
    pub rule: String,
    pub premises: Vec<String>,
    pub side_conditions: Vec<SideCondition>,
    pub output: String,
    pub justification: Justification,
}

impl DerivationStep {
    pub fn verified(rule: impl Into<String>, output: impl Into<String>) -> Self {
        DerivationStep {
            rule: rule.into(),
            premises: vec![],
            side_conditions: vec![],
            output: output.into(),
            justification: Justification::Verified,
        }
    }

    pub fn axiom(
        rule: impl Into<String>,
        output: impl Into<String>,
        quote: impl Into<String>,
    ) -> Self {
        DerivationStep {
            rule: rule.into(),
            premises: vec![],
            side_conditions: vec![],
            output: output.into(),
            justification: Justification::axiom(quote),
        }
    }

    pub fn with_premises(mut self, premises: Vec<String>) -> Self {
        self.premises = premises;
        self
    }

    pub fn with_conditions(mut self, conds: Vec<SideCondition>) -> Self {
        self.side_conditions = conds;
        self
    }
}

/// Stable-rationality bookkeeping. The flag is only ever propagated from
/// quoted facts and verified torsor/product closures, never established by
/// the engine from geometry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "flag", content = "provenance")]
pub enum RationalityFlag {
    Yes(String),
    Unknown(String),
}

impl RationalityFlag {
    pub fn is_yes(&self) -> bool {
        matches!(self, RationalityFlag::Yes(_))
    }
}

/// A computed class together with its rationality flag and derivation trace.
#[derive(Debug, Clone)]
pub struct ClassResult<T> {
    pub class: T,
    pub stably_rational: RationalityFlag,
    pub trace: Vec<DerivationStep>,
}

impl<T> ClassResult<T> {
    pub fn new(class: T, stably_rational: RationalityFlag, trace: Vec<DerivationStep>) -> Self {
        ClassResult {
            class,
            stably_rational,
            trace,
        }
    }

    /// Statements of the axiom nodes reachable in this trace, deduplicated
    /// and sorted.
    pub fn axioms(&self) -> Vec<String> {
        axioms_of(&self.trace)
    }
}

pub fn axioms_of(steps: &[DerivationStep]) -> Vec<String> {
    let mut out: Vec<String> = steps
        .iter()
        .filter_map(|s| match &s.justification {
            Justification::Axiom(q) => Some(q.clone()),
            Justification::Verified => None,
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
