//! Moving involutive proofs between the single-negation presentation
//! (`ba` read as `oa`, `~` as `!`) and the two-negation one.
//!
//! Canonical two-sided sequents already identify `ba` with `oa` and `~`
//! with `!`, so both directions keep every conclusion. Going to two
//! negations renames the `oa` display step to its `oa`/`ba` form; going
//! back rewrites the sequents and names.

use crate::syntax::{SUnOp, Sequent, Structure, Succedent};

use super::proof::{check_proof, ProofTree};
use super::{CalculusError, SystemConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollapseDirection {
    ToSingleNegation,
    ToTwoNegation,
}

/// The display step for `oa` in the two-negation presentation.
pub const TWO_NEGATION_DISPLAY: &str = "display-oa-ba";

fn single_structure(s: &Structure) -> Structure {
    match s {
        Structure::Comma(a, b) => Structure::comma(single_structure(a), single_structure(b)),
        Structure::Unary(op, inner) => {
            let op = match op {
                SUnOp::BA => SUnOp::OA,
                SUnOp::Tilde => SUnOp::Neg,
                other => *other,
            };
            Structure::un(op, single_structure(inner))
        }
        other => other.clone(),
    }
}

fn single_sequent(s: &Sequent) -> Sequent {
    let rhs = match &s.rhs {
        Succedent::Structure(r) => Succedent::Structure(single_structure(r)),
        other => other.clone(),
    };
    Sequent {
        lhs: single_structure(&s.lhs),
        rhs,
    }
}

fn rewrite(t: &ProofTree, dir: CollapseDirection) -> ProofTree {
    let (conclusion, rule) = match dir {
        CollapseDirection::ToSingleNegation => {
            let rule = if t.rule == TWO_NEGATION_DISPLAY {
                "display-oa".to_string()
            } else {
                t.rule.clone()
            };
            (single_sequent(&t.conclusion), rule)
        }
        CollapseDirection::ToTwoNegation => {
            let rule = if t.rule == "display-oa" {
                TWO_NEGATION_DISPLAY.to_string()
            } else {
                t.rule.clone()
            };
            (t.conclusion.clone(), rule)
        }
    };
    ProofTree {
        conclusion,
        rule,
        params: t.params.clone(),
        children: t.children.iter().map(|c| rewrite(c, dir)).collect(),
    }
}

/// Converts a checked two-sided proof between the presentations.
pub fn collapse_involutive(
    t: &ProofTree,
    dir: CollapseDirection,
    cfg: &SystemConfig,
) -> Result<ProofTree, CalculusError> {
    if !cfg.system.is_involutive() {
        return Err(CalculusError::CheckFailed(format!(
            "{} is not a two-sided system",
            cfg.system
        )));
    }
    check_proof(t, cfg).map_err(|e| CalculusError::CheckFailed(e.to_string()))?;
    let out = rewrite(t, dir);
    check_proof(&out, cfg).map_err(|e| CalculusError::CheckFailed(e.to_string()))?;
    Ok(out)
}
