//! Rule schemes and the rule sets of the eight systems.
//!
//! One-sided systems use patterns `G[...] |- a`. Two-sided systems use the
//! single-multiset form of [`CSeq::Involutive`](super::canon::CSeq), where a
//! succedent formula `a` appears as the item `!a`.

use std::fmt;

use crate::dyadic::Dyadic;
use crate::syntax::SystemId;

use super::pattern::{LeafKind, LeafPat, PBag, PItem, PSide, SeqPat};
use super::{CalculusError, SystemConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    Axiom,
    Introduction,
    Structural,
    Cut,
}

/// Parameters of a family instance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleParams {
    pub n: Option<u32>,
    pub d: Option<Dyadic>,
}

impl fmt::Display for RuleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.n {
            write!(f, "@n={n}")?;
        }
        if let Some(d) = &self.d {
            write!(f, "@d={d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleScheme {
    pub name: String,
    pub params: RuleParams,
    pub premises: Vec<SeqPat>,
    pub conclusion: SeqPat,
    pub kind: RuleKind,
    /// Set on truncations of infinitary rules: a proof using one is only
    /// as good as the truncation.
    pub conditional: bool,
}

impl RuleScheme {
    /// Reads `P1 ; P2 => C` (premises may be empty).
    pub fn parse(name: &str, text: &str, kind: RuleKind) -> Result<RuleScheme, CalculusError> {
        let (prem, concl) = text
            .split_once("=>")
            .ok_or_else(|| CalculusError::RuleText(format!("missing `=>` in {text}")))?;
        let premises = prem
            .split(';')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(SeqPat::parse)
            .collect::<Result<Vec<_>, _>>()?;
        let conclusion = SeqPat::parse(concl)?;
        Ok(RuleScheme {
            name: name.to_string(),
            params: RuleParams::default(),
            premises,
            conclusion,
            kind,
            conditional: false,
        })
    }

    /// The name with its parameters, as written in proof files.
    pub fn full_name(&self) -> String {
        format!("{}{}", self.name, self.params)
    }

    pub fn is_two_sided(&self) -> bool {
        self.conclusion.is_two_sided()
    }
}

impl fmt::Display for RuleScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prem: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
        write!(
            f,
            "[{}] {} => {}",
            self.full_name(),
            prem.join(" ; "),
            self.conclusion
        )
    }
}

fn rule(name: &str, text: &str, kind: RuleKind) -> RuleScheme {
    RuleScheme::parse(name, text, kind).unwrap_or_else(|e| panic!("builtin rule {name}: {e}"))
}

/// A structural rule written without succedents; one-sided systems get
/// `|- a` appended to every sequent.
fn structural(name: &str, text: &str, two_sided: bool) -> RuleScheme {
    let text = if two_sided {
        text.to_string()
    } else {
        let (prem, concl) = text.split_once("=>").expect("structural rule text");
        let prem: Vec<String> = prem
            .split(';')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| format!("{p} |- a"))
            .collect();
        format!("{} => {} |- a", prem.join(" ; "), concl.trim())
    };
    rule(name, &text, RuleKind::Structural)
}

fn oa_power(n: u32) -> String {
    "oa ".repeat(n as usize)
}

// ---------------------------------------------------------------------------
// Connective rules

const ONE_SIDED_CONNECTIVES: &[(&str, &str)] = &[
    ("L+", "G[a, b] |- c => G[a + b] |- c"),
    ("R+", "gamma |- a ; delta |- b => gamma, delta |- a + b"),
    ("L-", "G[b] |- c ; gamma |- a => G[b - a, gamma] |- c"),
    ("R-", "gamma, a |- b => gamma |- b - a"),
    ("L0", "G[] |- c => G[0] |- c"),
    ("L/\\", "G[a] |- c ; G[b] |- c => G[a /\\ b] |- c"),
    ("R/\\1", "gamma |- a => gamma |- a /\\ b"),
    ("R/\\2", "gamma |- b => gamma |- a /\\ b"),
    ("L\\/1", "G[a] |- c => G[a \\/ b] |- c"),
    ("L\\/2", "G[b] |- c => G[a \\/ b] |- c"),
    ("R\\/", "gamma |- a ; gamma |- b => gamma |- a \\/ b"),
];

const ONE_SIDED_MODALITIES: &[(&str, &str)] = &[
    ("L2", "G[o2 a] |- b => G[2 a] |- b"),
    ("R2", "gamma |- b => o2 gamma |- 2 b"),
    ("Lh", "G[a] |- b => G[o2 h a] |- b"),
    ("Rh", "o2 gamma |- a => gamma |- h a"),
    ("Lj*", "G[b2 a] |- b => G[j* a] |- b"),
    ("Rj*", "gamma |- b => b2 gamma |- j* b"),
    ("Lj", "G[a] |- b => G[b2 j a] |- b"),
    ("Rj", "b2 gamma |- a => gamma |- j a"),
    ("Lal", "G[oa a] |- b => G[al a] |- b"),
    ("Ral", "gamma |- b => oa gamma |- al b"),
    ("Lbx", "G[a] |- b => G[oa bx a] |- b"),
    ("Rbx", "oa gamma |- a => gamma |- bx a"),
];

const TWO_SIDED_CONNECTIVES: &[(&str, &str)] = &[
    ("L+", "G[a, b] => G[a + b]"),
    ("R+", "gamma, !a ; delta, !b => gamma, delta, !(a + b)"),
    ("L-", "G[b] ; gamma, !a => G[b - a, gamma]"),
    ("R-", "G[a, !b] => G[!(b - a)]"),
    ("L0", "G[] => G[0]"),
    ("L/\\", "G[a] ; G[b] => G[a /\\ b]"),
    ("R/\\1", "G[!a] => G[!(a /\\ b)]"),
    ("R/\\2", "G[!b] => G[!(a /\\ b)]"),
    ("L\\/1", "G[a] => G[a \\/ b]"),
    ("L\\/2", "G[b] => G[a \\/ b]"),
    ("R\\/", "G[!a] ; G[!b] => G[!(a \\/ b)]"),
];

const TWO_SIDED_FUSION: &[(&str, &str)] = &[
    ("Lx", "gamma, a ; delta, b => gamma, delta, a x b"),
    ("Rx", "G[!a, !b] => G[!(a x b)]"),
];

const TWO_SIDED_MODALITIES: &[(&str, &str)] = &[
    ("L2", "G[o2 a] => G[2 a]"),
    ("R2", "gamma, !b => o2 gamma, !(2 b)"),
    ("Lh", "G[a] => G[o2 h a]"),
    ("Rh", "o2 gamma, !a => gamma, !(h a)"),
    ("Lj*", "G[b2 a] => G[j* a]"),
    ("Rj*", "gamma, !b => b2 gamma, !(j* b)"),
    ("Lj", "G[a] => G[b2 j a]"),
    ("Rj", "b2 gamma, !a => gamma, !(j a)"),
    ("Lal", "G[oa a] => G[al a]"),
    ("Ral", "gamma, !b => oa gamma, !(al b)"),
    ("Lbx", "G[a] => G[oa bx a]"),
    ("Rbx", "oa gamma, !a => gamma, !(bx a)"),
];

const DISPLAY: &[(&str, &str)] = &[
    ("display-o2", "o2 gamma, delta => gamma, b2 delta"),
    ("display-oa", "oa gamma, delta => gamma, oa delta"),
];

/// `[Ld]`/`[Rd]`: a dyadic constant against its sum expansion.
fn constant_rules(two_sided: bool) -> Vec<RuleScheme> {
    let leaf = |negated, kind| PItem::Leaf(LeafPat { negated, kind });
    let konst = || LeafKind::Const("d".into());
    let expansion = || LeafKind::Expansion("d".into());
    let c = Some(LeafPat::form(crate::syntax::Formula::atom("c")));
    let gamma = || PBag(vec![PItem::Var("gamma".into())]);
    let mk = |name: &str, premise: SeqPat, conclusion: SeqPat| RuleScheme {
        name: name.into(),
        params: RuleParams::default(),
        premises: vec![premise],
        conclusion,
        kind: RuleKind::Introduction,
        conditional: false,
    };
    if two_sided {
        vec![
            mk(
                "Ld",
                SeqPat {
                    left: PSide::Hole(PBag(vec![leaf(false, expansion())])),
                    right: None,
                },
                SeqPat {
                    left: PSide::Hole(PBag(vec![leaf(false, konst())])),
                    right: None,
                },
            ),
            mk(
                "Rd",
                SeqPat {
                    left: PSide::Hole(PBag(vec![leaf(true, expansion())])),
                    right: None,
                },
                SeqPat {
                    left: PSide::Hole(PBag(vec![leaf(true, konst())])),
                    right: None,
                },
            ),
        ]
    } else {
        vec![
            mk(
                "Ld",
                SeqPat {
                    left: PSide::Hole(PBag(vec![leaf(false, expansion())])),
                    right: c.clone(),
                },
                SeqPat {
                    left: PSide::Hole(PBag(vec![leaf(false, konst())])),
                    right: c,
                },
            ),
            mk(
                "Rd",
                SeqPat {
                    left: PSide::Exact(gamma()),
                    right: Some(LeafPat {
                        negated: false,
                        kind: expansion(),
                    }),
                },
                SeqPat {
                    left: PSide::Exact(gamma()),
                    right: Some(LeafPat {
                        negated: false,
                        kind: konst(),
                    }),
                },
            ),
        ]
    }
}

// ---------------------------------------------------------------------------
// Structural rules

/// Structural rules shared by the continuous systems, in search order.
/// `contraction` selects the locale variant of the `o2` distribution rule.
fn continuous_structural(two_sided: bool, contraction: bool) -> Vec<RuleScheme> {
    let mut texts: Vec<(&str, &str)> = vec![
        ("1.b.a", "G[gamma, delta] => G[delta, gamma]"),
        ("1.b.b", "G[gamma, (delta, pi)] => G[(gamma, delta), pi]"),
        ("1.b.c", "G[eps, gamma] => G[gamma]"),
        ("4.c.1", "G[gamma] => G[o2 gamma]"),
        ("4.c.2", "G[gamma] => G[b2 gamma]"),
        ("w", "G[] => G[gamma]"),
        ("4.a.1", "G[o2 gamma] ; G[o2 delta] => G[gamma, delta]"),
        ("4.b", "G[b2 o2 gamma] => G[gamma, eps(1/2)]"),
    ];
    if contraction {
        texts.push(("4.a.2'", "G[gamma, gamma] => G[o2 gamma]"));
    } else {
        texts.push(("4.a.2+5.a", "G[o2 (gamma, delta)] => G[o2 gamma, o2 delta]"));
    }
    texts.extend([
        ("5.b", "G[b2 (gamma, delta)] => G[b2 gamma, delta]"),
        ("5.c", "G[oa (gamma, delta)] => G[oa gamma, o2 delta]"),
        ("4.d.1a", "G[gamma] => G[oa o2 gamma]"),
        ("4.d.1b", "G[gamma] => G[oa b2 gamma]"),
        ("4.d.2", "G[oa o2 gamma] ; G[oa b2 gamma] => G[gamma]"),
        ("4.e.2a", "G[gamma] => G[o2 oa gamma]"),
        ("4.e.2b", "G[gamma] => G[b2 oa gamma]"),
        ("4.e.1", "G[o2 oa gamma] ; G[b2 oa gamma] => G[gamma]"),
    ]);
    let mut out: Vec<RuleScheme> = texts
        .iter()
        .map(|(n, t)| structural(n, t, two_sided))
        .collect();
    let top = if two_sided {
        "=> eps(1), gamma"
    } else {
        "=> eps(1) |- a"
    };
    out.insert(6, rule("top-ax", top, RuleKind::Axiom));
    out
}

/// Names of the parameterised families.
pub const FAMILIES: [&str; 4] = ["6.a", "4.g", "7.b", "6.b"];

/// `[(6.a)]` at `n`, `d`.
fn rule_6a(n: u32, d: &Dyadic, two_sided: bool) -> RuleScheme {
    let rest = Dyadic::one().sub(d);
    let text = format!(
        "G[gamma] => G[eps({d}), {}(gamma, eps({rest}))]",
        oa_power(n)
    );
    let mut r = structural("6.a", &text, two_sided);
    r.params = RuleParams {
        n: Some(n),
        d: Some(d.clone()),
    };
    r
}

/// `[(4.g)]` at `n ≥ 1`.
fn rule_4g(n: u32, two_sided: bool) -> RuleScheme {
    let small = Dyadic::pow2_inv(n);
    let big = Dyadic::pow2_inv(n - 1);
    let text = format!("G[eps({small}), eps({small})] => G[eps({big})]");
    let mut r = structural("4.g", &text, two_sided);
    r.params = RuleParams {
        n: Some(n),
        d: None,
    };
    r
}

/// `[(7.b)]` truncated to its first `n` premises.
fn rule_7b(n: u32, two_sided: bool) -> RuleScheme {
    let prem: Vec<String> = (1..=n)
        .map(|m| format!("G[eps({})]", Dyadic::pow2_inv(m)))
        .collect();
    let text = format!("{} => G[]", prem.join(" ; "));
    let mut r = structural("7.b", &text, two_sided);
    r.params = RuleParams {
        n: Some(n),
        d: None,
    };
    r.conditional = true;
    r
}

/// `[(6.b)]` at `n`, with premises `k = 1 .. 2^{n+1}-2`.
fn rule_6b(n: u32, two_sided: bool) -> RuleScheme {
    let top = 1i64 << (n + 1);
    let prem: Vec<String> = (1..top - 1)
        .map(|k| {
            let d = Dyadic::frac(k, n + 1);
            let rest = Dyadic::one().sub(&d);
            format!("G[eps({rest}), {}(gamma, eps({d}))]", oa_power(n + 1))
        })
        .collect();
    let text = format!(
        "{} => G[gamma, eps({})]",
        prem.join(" ; "),
        Dyadic::pow2_inv(n)
    );
    let mut r = structural("6.b", &text, two_sided);
    r.kind = if r.premises.is_empty() {
        RuleKind::Axiom
    } else {
        RuleKind::Structural
    };
    r.params = RuleParams {
        n: Some(n),
        d: None,
    };
    r
}

fn cut_rule(two_sided: bool) -> RuleScheme {
    if two_sided {
        rule("cut", "gamma, !c ; c, delta => gamma, delta", RuleKind::Cut)
    } else {
        rule(
            "cut",
            "gamma |- c ; G[c] |- a => G[gamma] |- a",
            RuleKind::Cut,
        )
    }
}

fn family_instances(n_max: u32, two_sided: bool) -> Vec<RuleScheme> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 1..(1i64 << n_max) {
            let d = Dyadic::frac(k, n_max);
            out.push(rule_6a(n, &d, two_sided));
        }
    }
    for n in 1..=n_max {
        out.push(rule_4g(n, two_sided));
    }
    out.push(rule_7b(n_max.max(1), two_sided));
    for n in 0..=n_max {
        out.push(rule_6b(n, two_sided));
    }
    out
}

fn from_table(table: &[(&str, &str)], kind: RuleKind) -> Vec<RuleScheme> {
    table.iter().map(|(n, t)| rule(n, t, kind)).collect()
}

/// The rules of a system, in search order within each kind.
pub fn rule_set(cfg: &SystemConfig) -> Vec<RuleScheme> {
    let sys = cfg.system;
    let two_sided = sys.is_involutive();
    let mut out = Vec::new();
    if two_sided {
        out.push(rule("Id", "=> a, !a", RuleKind::Axiom));
        out.push(rule("R0", "=> gamma, !0", RuleKind::Axiom));
        out.extend(from_table(TWO_SIDED_CONNECTIVES, RuleKind::Introduction));
        if sys == SystemId::Inljk {
            out.extend(from_table(TWO_SIDED_FUSION, RuleKind::Introduction));
        }
    } else {
        out.push(rule("Id", "=> a |- a", RuleKind::Axiom));
        out.push(rule("R0", "=> eps |- 0", RuleKind::Axiom));
        out.extend(from_table(ONE_SIDED_CONNECTIVES, RuleKind::Introduction));
    }
    out.extend(constant_rules(two_sided));
    if sys.has_modalities() {
        if two_sided {
            out.extend(from_table(TWO_SIDED_MODALITIES, RuleKind::Introduction));
            out.extend(from_table(DISPLAY, RuleKind::Structural));
        } else {
            out.extend(from_table(ONE_SIDED_MODALITIES, RuleKind::Introduction));
        }
    }
    if sys.is_continuous() {
        out.extend(continuous_structural(two_sided, sys.is_intuitionistic()));
        out.extend(family_instances(cfg.n_max, two_sided));
    }
    if cfg.allow_cut {
        out.push(cut_rule(two_sided));
    }
    out
}

/// The rule a proof node names, built on demand so that family members
/// beyond the configured cap can still be checked.
pub fn rule_instance(cfg: &SystemConfig, name: &str, params: &RuleParams) -> Option<RuleScheme> {
    let sys = cfg.system;
    let two_sided = sys.is_involutive();
    if FAMILIES.contains(&name) {
        if !sys.is_continuous() {
            return None;
        }
        return match (name, params.n, &params.d) {
            ("6.a", Some(n), Some(d)) if n >= 1 && d.in_unit() && !d.is_zero() && !d.is_one() => {
                Some(rule_6a(n, d, two_sided))
            }
            ("4.g", Some(n), None) if n >= 1 => Some(rule_4g(n, two_sided)),
            ("7.b", Some(n), None) if n >= 1 => Some(rule_7b(n, two_sided)),
            ("6.b", Some(n), None) => Some(rule_6b(n, two_sided)),
            _ => None,
        };
    }
    if *params != RuleParams::default() {
        return None;
    }
    if name == "cut" {
        return Some(cut_rule(two_sided));
    }
    if name == super::collapse::TWO_NEGATION_DISPLAY && two_sided && sys.has_modalities() {
        let mut r = rule_instance(cfg, "display-oa", params)?;
        r.name = name.to_string();
        return Some(r);
    }
    let full = SystemConfig {
        allow_cut: false,
        n_max: 0,
        ..*cfg
    };
    rule_set(&full).into_iter().find(|r| r.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(sys: SystemId, name: &str) -> RuleScheme {
        rule_set(&SystemConfig::new(sys))
            .into_iter()
            .find(|r| r.name == name)
            .unwrap()
    }

    #[test]
    fn four_a_one_has_two_premises() {
        let r = find(SystemId::Cflew, "4.a.1");
        assert_eq!(r.premises.len(), 2);
        assert_eq!(r.premises[0].to_string(), "G[o2 gamma] |- a");
        assert_eq!(r.premises[1].to_string(), "G[o2 delta] |- a");
        assert_eq!(r.conclusion.to_string(), "G[gamma, delta] |- a");
    }

    #[test]
    fn locale_system_has_contraction_into_double() {
        let r = find(SystemId::Ljk, "4.a.2'");
        assert_eq!(
            r.to_string(),
            "[4.a.2'] G[gamma, gamma] |- a => G[o2 gamma] |- a"
        );
        assert!(rule_set(&SystemConfig::new(SystemId::Cflew))
            .iter()
            .all(|r| r.name != "4.a.2'"));
    }

    #[test]
    fn identity_is_an_axiom_everywhere() {
        for sys in SystemId::ALL {
            let r = find(sys, "Id");
            assert!(r.premises.is_empty());
            assert_eq!(r.kind, RuleKind::Axiom);
        }
        assert_eq!(find(SystemId::Gl, "Id").to_string(), "[Id]  => a |- a");
    }

    #[test]
    fn families_have_the_stated_premise_counts() {
        let cfg = SystemConfig::new(SystemId::Cflew);
        for n in 0..4 {
            let r = rule_instance(
                &cfg,
                "6.b",
                &RuleParams {
                    n: Some(n),
                    d: None,
                },
            )
            .unwrap();
            assert_eq!(r.premises.len(), (1usize << (n + 1)) - 2);
        }
        let r = rule_instance(
            &cfg,
            "7.b",
            &RuleParams {
                n: Some(3),
                d: None,
            },
        )
        .unwrap();
        assert_eq!(r.premises.len(), 3);
        assert!(r.conditional);
        let six_a = rule_instance(
            &cfg,
            "6.a",
            &RuleParams {
                n: Some(1),
                d: Some(Dyadic::frac(1, 1)),
            },
        )
        .unwrap();
        assert_eq!(
            six_a.conclusion.to_string(),
            "G[b2 eps, oa (gamma, b2 eps)] |- a"
        );
        assert!(rule_instance(
            &cfg,
            "4.a.1",
            &RuleParams {
                n: Some(1),
                d: None
            }
        )
        .is_none());
        assert!(rule_instance(
            &SystemConfig::new(SystemId::Mgl),
            "6.b",
            &RuleParams {
                n: Some(1),
                d: None
            }
        )
        .is_none());
    }

    #[test]
    fn fusion_rules_only_in_the_boolean_system() {
        assert!(rule_set(&SystemConfig::new(SystemId::Inljk))
            .iter()
            .any(|r| r.name == "Rx"));
        assert!(rule_set(&SystemConfig::new(SystemId::Incflew))
            .iter()
            .all(|r| r.name != "Rx"));
    }

    #[test]
    fn cut_only_when_allowed() {
        let cfg = SystemConfig::new(SystemId::Cflew);
        assert!(rule_set(&cfg).iter().all(|r| r.kind != RuleKind::Cut));
        assert!(rule_set(&cfg.with_cut(true))
            .iter()
            .any(|r| r.kind == RuleKind::Cut));
    }
}
