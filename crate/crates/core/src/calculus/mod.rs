//! Sequent calculi for continuous logic: rule schemes, the eight rule sets,
//! proof trees, proof checking, bounded backward proof search, analyticity
//! and rule translation.

pub mod analytic;
pub mod canon;
pub mod collapse;
pub mod pattern;
pub mod proof;
pub mod rules;
pub mod search;

use thiserror::Error;

pub use analytic::{is_analytic, translate_rule, AnalyticReport};
pub use canon::CSeq;
pub use collapse::{collapse_involutive, CollapseDirection};
pub use proof::{check_proof, ProofError, ProofTree};
pub use rules::{rule_instance, rule_set, RuleKind, RuleParams, RuleScheme};
pub use search::{prove, NotFoundReason, SearchOutcome, SearchStats};

use crate::syntax::SystemId;

/// A system together with the switches that shape its rule set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemConfig {
    pub system: SystemId,
    pub allow_cut: bool,
    /// Largest `n` instantiated for the parameterised families.
    pub n_max: u32,
}

impl SystemConfig {
    pub fn new(system: SystemId) -> SystemConfig {
        SystemConfig {
            system,
            allow_cut: false,
            n_max: 2,
        }
    }

    pub fn with_cut(mut self, allow_cut: bool) -> SystemConfig {
        self.allow_cut = allow_cut;
        self
    }

    pub fn with_n_max(mut self, n_max: u32) -> SystemConfig {
        self.n_max = n_max;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("bad rule pattern: {0}")]
    Pattern(String),
    #[error("bad rule text: {0}")]
    RuleText(String),
    #[error("rule is not analytic: {0}")]
    NotAnalytic(String),
    #[error("proof does not check: {0}")]
    CheckFailed(String),
    #[error("bad proof text: {0}")]
    ProofSyntax(String),
}
