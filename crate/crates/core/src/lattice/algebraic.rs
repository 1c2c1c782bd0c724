//! Structural rules read as first-order conditions on a finite lattice.
//!
//! A rule `Γ[Υ₁] ⊢ A … Γ[Υₙ] ⊢ A / Γ[Υ₀] ⊢ A` holds in `L` when every
//! assignment of its structure variables satisfies `Υ₁° ∨ … ∨ Υₙ° ≥ Υ₀°`,
//! where `Υ°` reads `,` as `⊗` and `ε` as `⊤`. With no premises the left
//! side is `⊥`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::calculus::canon::SOp;
use crate::calculus::pattern::{PBag, PItem};
use crate::calculus::RuleScheme;

use super::{Elem, FiniteResiduatedLattice};

/// The language a rule is written in, which fixes how `,` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleLanguage {
    /// `,` is `⊗` with unit `⊤`: checked here, element by element.
    Gl,
    /// `,` is `∔`: only meaningful in `USC(L)`, checked by sampling in the
    /// semantics module.
    Continuous,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraicRuleError {
    #[error("`{0}` has no reading in the lattice")]
    NoReading(String),
    #[error("continuous-language rules are checked over USC(L), not L")]
    ContinuousLanguage,
    #[error("rule has {0} structure variables, too many to enumerate")]
    TooManyVariables(usize),
}

const MAX_VARIABLES: usize = 6;

fn value(
    l: &FiniteResiduatedLattice,
    b: &PBag,
    names: &[String],
    assignment: &[Elem],
) -> Result<Elem, AlgebraicRuleError> {
    let mut acc = l.top();
    for item in &b.0 {
        let x = match item {
            PItem::Var(v) => {
                let i = names
                    .iter()
                    .position(|n| n == v)
                    .expect("collected variable");
                assignment[i]
            }
            PItem::Node(op, _) => {
                let name = match op {
                    SOp::O2 => "o2",
                    SOp::B2 => "b2",
                    SOp::OA => "oa",
                };
                return Err(AlgebraicRuleError::NoReading(name.into()));
            }
            PItem::Leaf(_) => return Err(AlgebraicRuleError::NoReading("a formula leaf".into())),
        };
        acc = l.otimes(acc, x);
    }
    Ok(acc)
}

/// Checks the rule against every assignment of elements of `l` to its
/// structure variables.
pub fn satisfies_rule_algebraically(
    l: &FiniteResiduatedLattice,
    r: &RuleScheme,
    language: RuleLanguage,
) -> Result<bool, AlgebraicRuleError> {
    if language == RuleLanguage::Continuous {
        return Err(AlgebraicRuleError::ContinuousLanguage);
    }
    let mut set = BTreeSet::new();
    for p in r.premises.iter().chain(std::iter::once(&r.conclusion)) {
        set.extend(p.left.bag().variables());
    }
    let names: Vec<String> = set.into_iter().collect();
    if names.len() > MAX_VARIABLES {
        return Err(AlgebraicRuleError::TooManyVariables(names.len()));
    }
    let n = l.size();
    let total = n.pow(names.len() as u32);
    for code in 0..total {
        let assignment: Vec<Elem> = (0..names.len())
            .map(|i| code / n.pow(i as u32) % n)
            .collect();
        let mut premises = l.bottom();
        for p in &r.premises {
            premises = l.join(premises, value(l, p.left.bag(), &names, &assignment)?);
        }
        let conclusion = value(l, r.conclusion.left.bag(), &names, &assignment)?;
        if !l.leq(conclusion, premises) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::analytic::parse_rule;
    use crate::lattice::lattice_from_spec;

    fn holds(spec: &str, rule: &str) -> bool {
        let l = lattice_from_spec(spec).unwrap();
        satisfies_rule_algebraically(&l, &parse_rule(rule).unwrap(), RuleLanguage::Gl).unwrap()
    }

    #[test]
    fn contraction_holds_exactly_over_locales() {
        assert!(holds("godel:3", "contraction"));
        assert!(holds("bool:2", "contraction"));
        assert!(!holds("luk:3", "contraction"));
    }

    #[test]
    fn weakening_and_mingle_hold_everywhere() {
        for spec in ["luk:2", "luk:3", "luk:4", "godel:3", "bool:2"] {
            assert!(holds(spec, "weakening"), "{spec}");
            assert!(holds(spec, "mingle"), "{spec}");
        }
    }

    #[test]
    fn modal_structures_and_the_continuous_language_are_refused() {
        let l = lattice_from_spec("luk:3").unwrap();
        let r = parse_rule("G[gamma] |- a => G[o2 gamma] |- a").unwrap();
        assert!(matches!(
            satisfies_rule_algebraically(&l, &r, RuleLanguage::Gl),
            Err(AlgebraicRuleError::NoReading(_))
        ));
        let c = parse_rule("contraction").unwrap();
        assert_eq!(
            satisfies_rule_algebraically(&l, &c, RuleLanguage::Continuous),
            Err(AlgebraicRuleError::ContinuousLanguage)
        );
    }
}
