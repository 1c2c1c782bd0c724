//! Structural rules of the continuous language checked in `USC(L)` by
//! sampling.
//!
//! Structures are read with `,` as `∔`, `ε` as `0̲`, `∘₂` as `2·`, `•₂` as
//! `j_*` and `∘α` as `α`. A rule `Γ[Υ₁] ⊢ A … Γ[Υₙ] ⊢ A / Γ[Υ₀] ⊢ A`
//! holds when `Υ₁ ∧ … ∧ Υₙ ≤ Υ₀` for every valuation of its structure
//! variables, with `1̲` on the left when there are no premises.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::calculus::canon::SOp;
use crate::calculus::pattern::{LeafKind, PBag, PItem};
use crate::calculus::RuleScheme;
use crate::dyadic::Dyadic;
use crate::lattice::FiniteResiduatedLattice;
use crate::usc::UnaryKind;

use super::term::{cst, meet, plus, un, var, Term};
use super::{first_failure, SamplerSpec, SemanticsError, Valuation};

/// The term a rule structure denotes.
pub fn structure_term(b: &PBag) -> Result<Term, SemanticsError> {
    let mut acc: Option<Term> = None;
    for item in &b.0 {
        let t = match item {
            PItem::Var(v) => var(v),
            PItem::Node(op, inner) => {
                let kind = match op {
                    SOp::O2 => UnaryKind::Double,
                    SOp::B2 => UnaryKind::Jstar,
                    SOp::OA => UnaryKind::Alpha,
                };
                un(kind, structure_term(inner)?)
            }
            PItem::Leaf(l) => match &l.kind {
                LeafKind::Form(f) if !l.negated => Term::from(f),
                _ => {
                    return Err(SemanticsError::NoReading(
                        "a parameter or negated leaf".into(),
                    ))
                }
            },
        };
        acc = Some(match acc {
            None => t,
            Some(a) => plus(a, t),
        });
    }
    Ok(acc.unwrap_or_else(|| cst(&Dyadic::zero())))
}

/// The first sampled valuation under which the rule fails, if any.
pub fn rule_counterexample(
    l: &Arc<FiniteResiduatedLattice>,
    r: &RuleScheme,
    spec: &SamplerSpec,
) -> Result<Option<Valuation>, SemanticsError> {
    let mut premises: Option<Term> = None;
    let mut names = BTreeSet::new();
    for p in &r.premises {
        let t = structure_term(p.left.bag())?;
        names.extend(t.vars());
        premises = Some(match premises {
            None => t,
            Some(a) => meet(a, t),
        });
    }
    let premises = premises.unwrap_or_else(|| cst(&Dyadic::one()));
    let conclusion = structure_term(r.conclusion.left.bag())?;
    names.extend(conclusion.vars());
    let names: Vec<String> = names.into_iter().collect();
    let hit = first_failure(l, &names, spec, |v| {
        Ok(premises.eval(v)?.leq(&conclusion.eval(v)?)?)
    })?;
    Ok(hit.map(|(_, v)| v))
}

/// Whether the rule holds on every sampled valuation.
pub fn rule_holds_sampled(
    l: &Arc<FiniteResiduatedLattice>,
    r: &RuleScheme,
    spec: &SamplerSpec,
) -> Result<bool, SemanticsError> {
    Ok(rule_counterexample(l, r, spec)?.is_none())
}
