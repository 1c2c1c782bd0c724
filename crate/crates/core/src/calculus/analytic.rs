//! Analytic structural rules and their translation from the language of
//! full Lambek calculus into the continuous one.
//!
//! A rule `Γ[Υ₁] ⊢ A … Γ[Υₙ] ⊢ A / Γ[Υ₀] ⊢ A` translates by reading `,` as
//! `∔` and wrapping `Υ₀` in `k` copies of `o2`, where `k` is the largest
//! number of `,` in a premise.

use std::collections::BTreeSet;
use std::fmt;

use super::canon::SOp;
use super::pattern::{LeafKind, PBag, PItem, PSide, SeqPat};
use super::rules::{RuleKind, RuleScheme};
use super::CalculusError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Every sequent has the form `Γ[Υ] ⊢ A` with a shared context and
    /// succedent, and `Υ` built from structure variables only.
    Shape,
    Linearity,
    Separation,
    Inclusion,
    Positivity,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Shape => "shape",
            Condition::Linearity => "linearity",
            Condition::Separation => "separation",
            Condition::Inclusion => "inclusion",
            Condition::Positivity => "positivity",
        })
    }
}

/// The outcome of an analyticity check, one entry per failed condition.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnalyticReport {
    pub failures: Vec<(Condition, String)>,
}

impl AnalyticReport {
    pub fn is_analytic(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fails(&self, c: Condition) -> bool {
        self.failures.iter().any(|(f, _)| *f == c)
    }
}

impl fmt::Display for AnalyticReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return f.write_str("analytic");
        }
        let parts: Vec<String> = self
            .failures
            .iter()
            .map(|(c, m)| format!("{c}: {m}"))
            .collect();
        write!(f, "not analytic ({})", parts.join("; "))
    }
}

fn leaf_names(b: &PBag, out: &mut BTreeSet<String>) {
    for i in &b.0 {
        match i {
            PItem::Leaf(l) => match &l.kind {
                LeafKind::Form(f) => out.extend(f.atoms()),
                LeafKind::Const(v) | LeafKind::Expansion(v) => {
                    out.insert(v.clone());
                }
            },
            PItem::Node(_, inner) => leaf_names(inner, out),
            PItem::Var(_) => {}
        }
    }
}

fn has_negation(b: &PBag) -> bool {
    b.0.iter().any(|i| match i {
        PItem::Leaf(l) => l.negated,
        PItem::Node(_, inner) => has_negation(inner),
        PItem::Var(_) => false,
    })
}

/// Checks linearity, separation and inclusion, and positivity when
/// `involutive` is set.
pub fn is_analytic(r: &RuleScheme, involutive: bool) -> AnalyticReport {
    let mut report = AnalyticReport::default();
    let mut fail = |c: Condition, m: String| report.failures.push((c, m));
    let all: Vec<&SeqPat> = r
        .premises
        .iter()
        .chain(std::iter::once(&r.conclusion))
        .collect();
    if all.iter().any(|p| !matches!(p.left, PSide::Hole(_))) {
        fail(
            Condition::Shape,
            "every sequent needs the context Γ[...]".into(),
        );
    }
    if all.iter().any(|p| p.right != r.conclusion.right) {
        fail(
            Condition::Shape,
            "premises and conclusion need the same succedent".into(),
        );
    }
    let succedent_is_variable = match &r.conclusion.right {
        None => true,
        Some(l) => !l.negated && matches!(&l.kind, LeafKind::Form(crate::syntax::Formula::Atom(_))),
    };
    let upsilon0 = r.conclusion.left.bag();
    let vars0 = upsilon0.variables();
    let distinct: BTreeSet<&String> = vars0.iter().collect();
    if !succedent_is_variable {
        fail(
            Condition::Linearity,
            "the succedent is not a formula variable".into(),
        );
    }
    if distinct.len() != vars0.len() {
        fail(
            Condition::Linearity,
            format!("repeated variables in {}", r.conclusion),
        );
    }
    let mut leaves = BTreeSet::new();
    leaf_names(upsilon0, &mut leaves);
    if let Some(crate::syntax::Formula::Atom(a)) =
        r.conclusion.right.as_ref().and_then(|l| match &l.kind {
            LeafKind::Form(f) => Some(f),
            _ => None,
        })
    {
        if leaves.contains(a) {
            fail(
                Condition::Separation,
                format!("{a} occurs in the conclusion structure"),
            );
        }
    }
    let missing: BTreeSet<String> = r
        .premises
        .iter()
        .flat_map(|p| p.left.bag().variables())
        .filter(|v| !distinct.contains(v))
        .collect();
    if !missing.is_empty() {
        let names: Vec<String> = missing.into_iter().collect();
        fail(
            Condition::Inclusion,
            format!("{} not in the conclusion", names.join(", ")),
        );
    }
    if involutive && all.iter().any(|p| has_negation(p.left.bag())) {
        fail(
            Condition::Positivity,
            "a negation occurs in a structure".into(),
        );
    }
    report
}

/// The continuous counterpart of an analytic rule.
pub fn translate_rule(r: &RuleScheme) -> Result<RuleScheme, CalculusError> {
    let report = is_analytic(r, false);
    if !report.is_analytic() {
        return Err(CalculusError::NotAnalytic(report.to_string()));
    }
    let k = r
        .premises
        .iter()
        .map(|p| p.left.bag().commas())
        .max()
        .unwrap_or(0);
    let mut upsilon = r.conclusion.left.bag().clone();
    for _ in 0..k {
        upsilon = PBag(vec![PItem::Node(SOp::O2, upsilon)]);
    }
    let mut out = r.clone();
    out.name = format!("{}-continuous", r.name);
    out.conclusion = SeqPat {
        left: PSide::Hole(upsilon),
        right: r.conclusion.right.clone(),
    };
    Ok(out)
}

/// Rules of full Lambek calculus known by name.
pub const BUILTIN_GL_RULES: [(&str, &str); 3] = [
    ("contraction", "G[gamma, gamma] |- a => G[gamma] |- a"),
    ("weakening", "G[] |- a => G[gamma] |- a"),
    (
        "mingle",
        "G[gamma] |- a ; G[delta] |- a => G[gamma, delta] |- a",
    ),
];

/// A builtin rule by name, or a rule written as `P1 ; P2 => C`.
pub fn parse_rule(text: &str) -> Result<RuleScheme, CalculusError> {
    let text = text.trim();
    if let Some((name, body)) = BUILTIN_GL_RULES.iter().find(|(n, _)| *n == text) {
        return RuleScheme::parse(name, body, RuleKind::Structural);
    }
    RuleScheme::parse("user", text, RuleKind::Structural)
}
