//! Proof trees, their s-expression form, and the proof checker.
//!
//! A proof is written `(RULE@n=1@d=1/2 "sequent" child ...)`; parameters
//! appear only on family members.

use std::fmt;

use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::syntax::{parse_sequent, Sequent, SystemId};

use super::canon::CSeq;
use super::pattern::{instantiate_seq, match_seq, Binding, Context, MatchMode, SeqPat};
use super::rules::{rule_instance, RuleKind, RuleParams, RuleScheme};
use super::{CalculusError, SystemConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTree {
    pub conclusion: Sequent,
    pub rule: String,
    pub params: RuleParams,
    pub children: Vec<ProofTree>,
}

impl ProofTree {
    pub fn leaf(rule: &str, conclusion: Sequent) -> ProofTree {
        ProofTree {
            conclusion,
            rule: rule.to_string(),
            params: RuleParams::default(),
            children: Vec::new(),
        }
    }

    pub fn node(rule: &str, conclusion: Sequent, children: Vec<ProofTree>) -> ProofTree {
        ProofTree {
            conclusion,
            rule: rule.to_string(),
            params: RuleParams::default(),
            children,
        }
    }

    pub fn with_params(mut self, params: RuleParams) -> ProofTree {
        self.params = params;
        self
    }

    pub fn full_rule_name(&self) -> String {
        format!("{}{}", self.rule, self.params)
    }

    /// Nodes on the longest branch.
    pub fn height(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(ProofTree::height)
            .max()
            .unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(ProofTree::node_count)
            .sum::<usize>()
    }

    pub fn uses_rule(&self, name: &str) -> bool {
        self.rule == name || self.children.iter().any(|c| c.uses_rule(name))
    }

    /// Whether a truncated infinitary rule occurs.
    pub fn is_conditional(&self) -> bool {
        self.uses_rule("7.b")
    }

    /// Reads a proof written in the s-expression format.
    pub fn parse(text: &str, system: SystemId) -> Result<ProofTree, CalculusError> {
        let tokens = tokenize(text)?;
        let mut pos = 0;
        let tree = parse_node(&tokens, &mut pos, system)?;
        if pos != tokens.len() {
            return Err(CalculusError::ProofSyntax(
                "trailing input after proof".into(),
            ));
        }
        Ok(tree)
    }

    fn write_indented(&self, out: &mut String, indent: usize) {
        out.push_str(&" ".repeat(indent));
        out.push('(');
        out.push_str(&self.full_rule_name());
        out.push_str(" \"");
        out.push_str(
            &self
                .conclusion
                .to_string()
                .replace('\\', "\\\\")
                .replace('"', "\\\""),
        );
        out.push('"');
        for c in &self.children {
            out.push('\n');
            c.write_indented(out, indent + 2);
        }
        out.push(')');
    }
}

impl fmt::Display for ProofTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write_indented(&mut out, 0);
        f.write_str(&out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Str(String),
    Word(String),
}

fn tokenize(text: &str) -> Result<Vec<Token>, CalculusError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('\\') => match chars.next() {
                            Some(e) => s.push(e),
                            None => {
                                return Err(CalculusError::ProofSyntax(
                                    "unterminated string".into(),
                                ))
                            }
                        },
                        Some('"') => break,
                        Some(ch) => s.push(ch),
                        None => {
                            return Err(CalculusError::ProofSyntax("unterminated string".into()))
                        }
                    }
                }
                out.push(Token::Str(s));
            }
            _ => {
                let mut s = String::new();
                while let Some(&ch) = chars.peek() {
                    if ch.is_whitespace() || ch == '(' || ch == ')' || ch == '"' {
                        break;
                    }
                    s.push(ch);
                    chars.next();
                }
                out.push(Token::Word(s));
            }
        }
    }
    Ok(out)
}

fn parse_rule_name(word: &str) -> Result<(String, RuleParams), CalculusError> {
    let mut parts = word.split('@');
    let name = parts.next().unwrap_or_default().to_string();
    let mut params = RuleParams::default();
    for p in parts {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| CalculusError::ProofSyntax(format!("bad parameter {p}")))?;
        match k {
            "n" => {
                params.n = Some(
                    v.parse()
                        .map_err(|_| CalculusError::ProofSyntax(format!("bad n in {word}")))?,
                )
            }
            "d" => {
                params.d = Some(
                    v.parse::<Dyadic>()
                        .map_err(|_| CalculusError::ProofSyntax(format!("bad d in {word}")))?,
                )
            }
            _ => return Err(CalculusError::ProofSyntax(format!("unknown parameter {k}"))),
        }
    }
    Ok((name, params))
}

fn parse_node(
    tokens: &[Token],
    pos: &mut usize,
    system: SystemId,
) -> Result<ProofTree, CalculusError> {
    let expect = |pos: &mut usize, what: &str| -> Result<Token, CalculusError> {
        let t = tokens
            .get(*pos)
            .cloned()
            .ok_or_else(|| CalculusError::ProofSyntax(format!("expected {what}")))?;
        *pos += 1;
        Ok(t)
    };
    if expect(pos, "`(`")? != Token::Open {
        return Err(CalculusError::ProofSyntax("expected `(`".into()));
    }
    let Token::Word(word) = expect(pos, "rule name")? else {
        return Err(CalculusError::ProofSyntax("expected rule name".into()));
    };
    let (rule, params) = parse_rule_name(&word)?;
    let Token::Str(text) = expect(pos, "sequent string")? else {
        return Err(CalculusError::ProofSyntax(format!(
            "expected sequent string after {word}"
        )));
    };
    let conclusion = parse_sequent(&text, system)
        .map_err(|e| CalculusError::ProofSyntax(format!("{text}: {e}")))?;
    let mut children = Vec::new();
    loop {
        match tokens.get(*pos) {
            Some(Token::Close) => {
                *pos += 1;
                break;
            }
            Some(Token::Open) => children.push(parse_node(tokens, pos, system)?),
            _ => return Err(CalculusError::ProofSyntax("expected `(` or `)`".into())),
        }
    }
    Ok(ProofTree {
        conclusion,
        rule,
        params,
        children,
    })
}

/// Why a proof fails to check. `path` lists child indices from the root.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("at {path:?}: unknown rule {rule}")]
    UnknownRule { path: Vec<usize>, rule: String },
    #[error("at {path:?}: {rule} does not derive `{sequent}` from the given premises")]
    PatternMismatch {
        path: Vec<usize>,
        rule: String,
        sequent: String,
    },
    #[error("at {path:?}: {rule} takes {expected} premises, found {found}")]
    PremiseCountMismatch {
        path: Vec<usize>,
        rule: String,
        expected: usize,
        found: usize,
    },
    #[error("at {path:?}: cut is not allowed")]
    CutUsedButDisallowed { path: Vec<usize> },
}

impl ProofError {
    pub fn path(&self) -> &[usize] {
        match self {
            ProofError::UnknownRule { path, .. }
            | ProofError::PatternMismatch { path, .. }
            | ProofError::PremiseCountMismatch { path, .. }
            | ProofError::CutUsedButDisallowed { path } => path,
        }
    }
}

/// Whether `rule` derives `conclusion` from `premises`, for some
/// substitution and context.
pub fn rule_applies(rule: &RuleScheme, conclusion: &CSeq, premises: &[CSeq]) -> bool {
    if rule.premises.len() != premises.len() {
        return false;
    }
    match_seq(
        &rule.conclusion,
        conclusion,
        &Binding::default(),
        MatchMode::Check,
    )
    .into_iter()
    .any(|(b, ctx)| premises_fit(&rule.premises, premises, &b, ctx.as_ref()))
}

fn premises_fit(pats: &[SeqPat], seqs: &[CSeq], b: &Binding, ctx: Option<&Context>) -> bool {
    let (Some(p), Some(s)) = (pats.first(), seqs.first()) else {
        return true;
    };
    if let Some(inst) = instantiate_seq(p, b, ctx) {
        return inst == *s && premises_fit(&pats[1..], &seqs[1..], b, ctx);
    }
    match_seq(p, s, b, MatchMode::Check)
        .into_iter()
        .any(|(b2, c2)| {
            let same_context = c2.is_none() || c2.as_ref() == ctx;
            same_context && premises_fit(&pats[1..], &seqs[1..], &b2, ctx)
        })
}

/// Checks every node of a proof against the rules of the configured system.
pub fn check_proof(t: &ProofTree, cfg: &SystemConfig) -> Result<(), ProofError> {
    check_at(t, cfg, &mut Vec::new())
}

fn check_at(t: &ProofTree, cfg: &SystemConfig, path: &mut Vec<usize>) -> Result<(), ProofError> {
    let name = t.full_rule_name();
    let rule = rule_instance(cfg, &t.rule, &t.params).ok_or_else(|| ProofError::UnknownRule {
        path: path.clone(),
        rule: name.clone(),
    })?;
    if rule.kind == RuleKind::Cut && !cfg.allow_cut {
        return Err(ProofError::CutUsedButDisallowed { path: path.clone() });
    }
    if rule.premises.len() != t.children.len() {
        return Err(ProofError::PremiseCountMismatch {
            path: path.clone(),
            rule: name,
            expected: rule.premises.len(),
            found: t.children.len(),
        });
    }
    let conclusion = CSeq::from_sequent(&t.conclusion);
    let premises: Vec<CSeq> = t
        .children
        .iter()
        .map(|c| CSeq::from_sequent(&c.conclusion))
        .collect();
    if !rule_applies(&rule, &conclusion, &premises) {
        return Err(ProofError::PatternMismatch {
            path: path.clone(),
            rule: name,
            sequent: t.conclusion.to_string(),
        });
    }
    for (i, c) in t.children.iter().enumerate() {
        path.push(i);
        check_at(c, cfg, path)?;
        path.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> Sequent {
        parse_sequent(text, SystemId::Cflew).unwrap()
    }

    fn sum_to_double() -> ProofTree {
        let r2 = || {
            ProofTree::node(
                "R2",
                seq("o2 a |- 2 a"),
                vec![ProofTree::leaf("Id", seq("a |- a"))],
            )
        };
        ProofTree::node(
            "L+",
            seq("a + a |- 2 a"),
            vec![ProofTree::node(
                "4.a.1",
                seq("a, a |- 2 a"),
                vec![r2(), r2()],
            )],
        )
    }

    #[test]
    fn hand_built_proof_checks() {
        assert_eq!(
            check_proof(&sum_to_double(), &SystemConfig::new(SystemId::Cflew)),
            Ok(())
        );
    }

    #[test]
    fn relabelled_root_is_a_mismatch() {
        let mut t = sum_to_double();
        t.rule = "Id".into();
        let err = check_proof(&t, &SystemConfig::new(SystemId::Cflew)).unwrap_err();
        assert!(matches!(err, ProofError::PremiseCountMismatch { .. }));
        t.children.clear();
        let err = check_proof(&t, &SystemConfig::new(SystemId::Cflew)).unwrap_err();
        assert!(matches!(err, ProofError::PatternMismatch { ref path, .. } if path.is_empty()));
    }

    #[test]
    fn errors_point_at_the_failing_node() {
        let mut t = sum_to_double();
        t.children[0].children[1].children[0].conclusion = seq("b |- a");
        let err = check_proof(&t, &SystemConfig::new(SystemId::Cflew)).unwrap_err();
        assert_eq!(err.path(), &[0, 1]);
        t.children[0].children[1].children[0].conclusion = seq("a |- a");
        t.children[0].children[1].children[0].rule = "Nope".into();
        let err = check_proof(&t, &SystemConfig::new(SystemId::Cflew)).unwrap_err();
        assert!(matches!(err, ProofError::UnknownRule { .. }));
    }

    #[test]
    fn cut_needs_permission() {
        let t = ProofTree::node(
            "cut",
            seq("a |- a"),
            vec![
                ProofTree::leaf("Id", seq("a |- a")),
                ProofTree::leaf("Id", seq("a |- a")),
            ],
        );
        let cfg = SystemConfig::new(SystemId::Cflew);
        assert_eq!(
            check_proof(&t, &cfg),
            Err(ProofError::CutUsedButDisallowed { path: vec![] })
        );
        assert_eq!(check_proof(&t, &cfg.with_cut(true)), Ok(()));
    }

    #[test]
    fn text_form_roundtrips() {
        let t = sum_to_double();
        let text = t.to_string();
        assert_eq!(ProofTree::parse(&text, SystemId::Cflew).unwrap(), t);
        let fam = ProofTree::leaf("6.a", seq("a |- a")).with_params(RuleParams {
            n: Some(2),
            d: Some(Dyadic::frac(3, 2)),
        });
        assert!(fam.to_string().starts_with("(6.a@n=2@d=3/4 "));
        assert_eq!(
            ProofTree::parse(&fam.to_string(), SystemId::Cflew).unwrap(),
            fam
        );
        assert!(ProofTree::parse("(Id \"a |- a\"", SystemId::Cflew).is_err());
    }
}
