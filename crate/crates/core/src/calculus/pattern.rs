//! Sequent patterns with structure variables, formula variables and a
//! context hole, and a matcher against canonical sequents.
//!
//! Pattern text reuses the sequent grammar. Inside structures the atoms
//! `gamma`, `delta`, `pi`, `sigma`, `theta` and `xi` (optionally followed by
//! digits) are structure variables; every other atom is a formula variable.
//! `G[...]` marks a context hole. Two-sided patterns are written as the
//! multiset `M` alone, without a turnstile.

use std::collections::BTreeMap;
use std::fmt;

use crate::dyadic::Dyadic;
use crate::syntax::{
    expand_dyadic_formula, parse_formula, parse_structure, Formula, Structure, SystemId, UnOp,
};

use super::canon::{canonical_leaf, eps_bag, negate_formula, Bag, CSeq, Item, SOp};
use super::CalculusError;

const STRUCTURE_VARIABLES: [&str; 6] = ["gamma", "delta", "pi", "sigma", "theta", "xi"];

pub fn is_structure_variable(name: &str) -> bool {
    STRUCTURE_VARIABLES.iter().any(|v| {
        name.strip_prefix(v)
            .is_some_and(|rest| rest.chars().all(|c| c.is_ascii_digit()))
    })
}

/// What a leaf pattern matches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeafKind {
    /// A formula whose atoms are formula variables.
    Form(Formula),
    /// Any dyadic constant other than `0`, bound to the named parameter.
    Const(String),
    /// The sum expansion of the constant bound to the named parameter.
    Expansion(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafPat {
    pub negated: bool,
    pub kind: LeafKind,
}

impl LeafPat {
    pub fn form(f: Formula) -> LeafPat {
        let mut negated = false;
        let mut cur = f;
        while let Formula::Unary(UnOp::Neg, g) = cur {
            negated = !negated;
            cur = *g;
        }
        LeafPat {
            negated,
            kind: LeafKind::Form(cur),
        }
    }

    fn negate(&self) -> LeafPat {
        LeafPat {
            negated: !self.negated,
            kind: self.kind.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PItem {
    Leaf(LeafPat),
    Node(SOp, PBag),
    Var(String),
}

/// A multiset pattern.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PBag(pub Vec<PItem>);

/// The antecedent of a sequent pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PSide {
    /// `Γ[...]`: the pattern matches a sub-multiset at any depth.
    Hole(PBag),
    /// The whole antecedent.
    Exact(PBag),
}

impl PSide {
    pub fn bag(&self) -> &PBag {
        match self {
            PSide::Hole(b) | PSide::Exact(b) => b,
        }
    }
}

/// A sequent pattern; `right` is `None` for the two-sided multiset form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqPat {
    pub left: PSide,
    pub right: Option<LeafPat>,
}

/// Values of pattern variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Binding {
    pub forms: BTreeMap<String, Formula>,
    pub structs: BTreeMap<String, Bag>,
    pub consts: BTreeMap<String, Dyadic>,
}

/// A one-hole context: the path of enclosing modalities with their
/// siblings, and the siblings of the hole itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    path: Vec<(SOp, Bag)>,
    rest: Bag,
}

impl Context {
    pub fn top(rest: Bag) -> Context {
        Context {
            path: Vec::new(),
            rest,
        }
    }

    pub fn depth(&self) -> usize {
        self.path.len()
    }

    pub fn plug(&self, content: &Bag) -> Bag {
        let mut b = self.rest.union(content);
        for (op, siblings) in self.path.iter().rev() {
            b = siblings.union(&Bag::new(vec![Item::Node(*op, b)]));
        }
        b
    }
}

/// How liberal matching is. Checking accepts every decomposition; search
/// requires variables under a context hole to be non-empty and only opens
/// an empty hole at the top level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    Check,
    Search,
}

// ---------------------------------------------------------------------------
// Parsing

impl SeqPat {
    /// Reads `G[S] |- F`, `S |- F`, `G[S]` or `S`.
    pub fn parse(text: &str) -> Result<SeqPat, CalculusError> {
        let text = text.trim();
        let (left, right) = match text.split_once("|-") {
            Some((l, r)) => (l.trim(), Some(r.trim())),
            None => (text, None),
        };
        let side = match left.strip_prefix("G[").and_then(|s| s.strip_suffix(']')) {
            Some(inner) => PSide::Hole(parse_pbag(inner)?),
            None => PSide::Exact(parse_pbag(left)?),
        };
        let right = match right {
            Some(r) => {
                let f = parse_formula(r, SystemId::Inmgl)
                    .map_err(|e| CalculusError::Pattern(format!("{r}: {e}")))?;
                Some(LeafPat::form(f))
            }
            None => None,
        };
        Ok(SeqPat { left: side, right })
    }

    pub fn is_two_sided(&self) -> bool {
        self.right.is_none()
    }
}

fn parse_pbag(text: &str) -> Result<PBag, CalculusError> {
    if text.trim().is_empty() {
        return Ok(PBag::default());
    }
    let s = parse_structure(text, SystemId::Inmgl)
        .map_err(|e| CalculusError::Pattern(format!("{text}: {e}")))?;
    let mut items = Vec::new();
    pbag_items(&s, false, &mut items)?;
    Ok(PBag(items))
}

fn pbag_items(s: &Structure, negated: bool, out: &mut Vec<PItem>) -> Result<(), CalculusError> {
    use crate::syntax::SUnOp;
    match s {
        Structure::Formula(Formula::Atom(name)) if is_structure_variable(name) => {
            if negated {
                return Err(CalculusError::Pattern(format!(
                    "negated structure variable {name}"
                )));
            }
            out.push(PItem::Var(name.clone()));
        }
        Structure::Formula(f) => {
            let p = LeafPat::form(f.clone());
            out.push(PItem::Leaf(if negated { p.negate() } else { p }));
        }
        Structure::Eps => {}
        Structure::EpsD(d) => out.extend(eps_bag(d).items().iter().map(literal_item)),
        Structure::Comma(a, b) => {
            pbag_items(a, negated, out)?;
            pbag_items(b, negated, out)?;
        }
        Structure::Unary(op, inner) => {
            let sop = match op {
                SUnOp::O2 => SOp::O2,
                SUnOp::B2 => SOp::B2,
                SUnOp::OA | SUnOp::BA => SOp::OA,
                SUnOp::Neg | SUnOp::Tilde => return pbag_items(inner, !negated, out),
            };
            let mut v = Vec::new();
            pbag_items(inner, negated, &mut v)?;
            out.push(PItem::Node(sop, PBag(v)));
        }
    }
    Ok(())
}

/// A pattern matching exactly `item`.
pub fn literal_item(item: &Item) -> PItem {
    match item {
        Item::Leaf(f) => PItem::Leaf(LeafPat::form(f.clone())),
        Item::Node(op, b) => PItem::Node(*op, PBag(b.items().iter().map(literal_item).collect())),
    }
}

// ---------------------------------------------------------------------------
// Printing

impl PBag {
    fn to_structure(&self) -> Structure {
        Structure::join_all(self.0.iter().map(PItem::to_structure).collect())
    }

    /// Number of nodes, leaves and variables, counted recursively.
    pub fn size(&self) -> usize {
        self.0
            .iter()
            .map(|i| match i {
                PItem::Node(_, b) => 1 + b.size(),
                _ => 1,
            })
            .sum()
    }

    /// Structure variables in order of first occurrence, with repeats.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in &self.0 {
            match i {
                PItem::Var(v) => out.push(v.clone()),
                PItem::Node(_, b) => out.extend(b.variables()),
                PItem::Leaf(_) => {}
            }
        }
        out
    }

    /// Number of `,` separators, counted recursively.
    pub fn commas(&self) -> usize {
        let here = self.0.len().saturating_sub(1);
        here + self
            .0
            .iter()
            .map(|i| match i {
                PItem::Node(_, b) => b.commas(),
                _ => 0,
            })
            .sum::<usize>()
    }

    pub fn has_leaves(&self) -> bool {
        self.0.iter().any(|i| match i {
            PItem::Leaf(_) => true,
            PItem::Node(_, b) => b.has_leaves(),
            PItem::Var(_) => false,
        })
    }

    pub fn modalities(&self) -> Vec<SOp> {
        let mut out = Vec::new();
        for i in &self.0 {
            if let PItem::Node(op, b) = i {
                out.push(*op);
                out.extend(b.modalities());
            }
        }
        out
    }
}

impl PItem {
    fn to_structure(&self) -> Structure {
        match self {
            PItem::Var(v) => Structure::Formula(Formula::atom(v)),
            PItem::Leaf(p) => Structure::Formula(p.to_formula()),
            PItem::Node(op, b) => {
                let sop = match op {
                    SOp::O2 => crate::syntax::SUnOp::O2,
                    SOp::B2 => crate::syntax::SUnOp::B2,
                    SOp::OA => crate::syntax::SUnOp::OA,
                };
                Structure::un(sop, b.to_structure())
            }
        }
    }
}

impl LeafPat {
    fn to_formula(&self) -> Formula {
        let base = match &self.kind {
            LeafKind::Form(f) => f.clone(),
            LeafKind::Const(v) => Formula::atom(&format!("const_{v}")),
            LeafKind::Expansion(v) => Formula::atom(&format!("expansion_{v}")),
        };
        if self.negated {
            Formula::un(UnOp::Neg, base)
        } else {
            base
        }
    }
}

impl fmt::Display for SeqPat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.left {
            PSide::Hole(b) if b.0.is_empty() => f.write_str("G[]")?,
            PSide::Hole(b) => write!(f, "G[{}]", b.to_structure())?,
            PSide::Exact(b) => write!(f, "{}", b.to_structure())?,
        }
        if let Some(r) = &self.right {
            write!(f, " |- {}", r.to_formula())?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Matching

pub fn match_formula(p: &Formula, f: &Formula, b: &mut Binding) -> bool {
    match (p, f) {
        (Formula::Atom(x), _) => match b.forms.get(x) {
            Some(bound) => bound == f,
            None => {
                b.forms.insert(x.clone(), f.clone());
                true
            }
        },
        (Formula::Unary(op, p1), Formula::Unary(op2, f1)) => op == op2 && match_formula(p1, f1, b),
        (Formula::Binary(op, p1, p2), Formula::Binary(op2, f1, f2)) => {
            op == op2 && match_formula(p1, f1, b) && match_formula(p2, f2, b)
        }
        _ => p == f,
    }
}

fn match_leaf(p: &LeafPat, f: &Formula, b: &Binding) -> Option<Binding> {
    let target = if p.negated {
        negate_formula(f)
    } else {
        f.clone()
    };
    let mut out = b.clone();
    let ok = match &p.kind {
        LeafKind::Form(pf) => match_formula(pf, &target, &mut out),
        LeafKind::Const(v) => {
            let d = match &target {
                Formula::Const(d) => d.clone(),
                Formula::One => Dyadic::one(),
                _ => return None,
            };
            match out.consts.get(v) {
                Some(e) => *e == d,
                None => {
                    out.consts.insert(v.clone(), d);
                    true
                }
            }
        }
        LeafKind::Expansion(v) => out
            .consts
            .get(v)
            .is_some_and(|d| expand_dyadic_formula(d) == target),
    };
    ok.then_some(out)
}

fn match_item(p: &PItem, it: &Item, b: &Binding, mode: MatchMode) -> Vec<Binding> {
    match (p, it) {
        (PItem::Leaf(lp), Item::Leaf(f)) => match_leaf(lp, f, b).into_iter().collect(),
        (PItem::Node(op, pb), Item::Node(op2, inner)) if op == op2 => {
            match_bag(pb, inner.items(), b, true, mode)
                .into_iter()
                .map(|(b, _)| b)
                .collect()
        }
        _ => Vec::new(),
    }
}

/// Matches `p` against a sub-multiset of `items` (all of them when `exact`).
/// Returns the bindings with the unmatched remainder.
pub fn match_bag(
    p: &PBag,
    items: &[Item],
    b: &Binding,
    exact: bool,
    mode: MatchMode,
) -> Vec<(Binding, Bag)> {
    let fixed: Vec<&PItem> = p.0.iter().filter(|i| !matches!(i, PItem::Var(_))).collect();
    let mut var_counts: Vec<(String, usize)> = Vec::new();
    for i in &p.0 {
        if let PItem::Var(v) = i {
            match var_counts.iter_mut().find(|(n, _)| n == v) {
                Some((_, c)) => *c += 1,
                None => var_counts.push((v.clone(), 1)),
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; items.len()];
    match_fixed(&fixed, items, &mut used, b, mode, &mut |b2, used| {
        let remaining: Vec<Item> = items
            .iter()
            .zip(used)
            .filter(|(_, u)| !**u)
            .map(|(i, _)| i.clone())
            .collect();
        assign_vars(
            &var_counts,
            0,
            Bag::new(remaining),
            b2.clone(),
            exact,
            mode,
            &mut out,
        );
    });
    out
}

fn match_fixed(
    fixed: &[&PItem],
    items: &[Item],
    used: &mut Vec<bool>,
    b: &Binding,
    mode: MatchMode,
    k: &mut dyn FnMut(&Binding, &[bool]),
) {
    let Some((first, rest)) = fixed.split_first() else {
        k(b, used);
        return;
    };
    for i in 0..items.len() {
        if used[i] || (i > 0 && !used[i - 1] && items[i] == items[i - 1]) {
            continue;
        }
        for b2 in match_item(first, &items[i], b, mode) {
            used[i] = true;
            match_fixed(rest, items, used, &b2, mode, k);
            used[i] = false;
        }
    }
}

fn assign_vars(
    vars: &[(String, usize)],
    idx: usize,
    remaining: Bag,
    b: Binding,
    exact: bool,
    mode: MatchMode,
    out: &mut Vec<(Binding, Bag)>,
) {
    if idx == vars.len() {
        if !exact || remaining.is_empty() {
            out.push((b, remaining));
        }
        return;
    }
    let (name, count) = &vars[idx];
    if let Some(bound) = b.structs.get(name) {
        let mut rem = Some(remaining);
        for _ in 0..*count {
            rem = rem.and_then(|r| r.minus(bound));
        }
        if let Some(r) = rem {
            assign_vars(vars, idx + 1, r, b, exact, mode, out);
        }
        return;
    }
    let allow_empty = mode == MatchMode::Check || exact;
    let last_exact = exact && idx + 1 == vars.len() && *count == 1;
    let choices = if last_exact {
        vec![remaining.clone()]
    } else {
        sub_multisets(&remaining)
    };
    for s in choices {
        if s.is_empty() && !allow_empty {
            continue;
        }
        let mut rem = Some(remaining.clone());
        for _ in 0..*count {
            rem = rem.and_then(|r| r.minus(&s));
        }
        let Some(r) = rem else { continue };
        let mut b2 = b.clone();
        b2.structs.insert(name.clone(), s);
        assign_vars(vars, idx + 1, r, b2, exact, mode, out);
    }
}

/// Distinct sub-multisets, smallest first.
pub fn sub_multisets(b: &Bag) -> Vec<Bag> {
    let mut groups: Vec<(Item, usize)> = Vec::new();
    for it in b.items() {
        match groups.last_mut() {
            Some((g, c)) if g == it => *c += 1,
            _ => groups.push((it.clone(), 1)),
        }
    }
    let mut out = vec![Vec::new()];
    for (it, c) in &groups {
        let mut next = Vec::new();
        for base in &out {
            for k in 0..=*c {
                let mut v: Vec<Item> = base.clone();
                v.extend(std::iter::repeat_n(it.clone(), k));
                next.push(v);
            }
        }
        out = next;
    }
    let mut bags: Vec<Bag> = out.into_iter().map(Bag::new).collect();
    bags.sort_by_key(|x| x.len());
    bags
}

/// Matches a hole pattern at every position of `bag`.
pub fn match_hole(p: &PBag, bag: &Bag, b: &Binding, mode: MatchMode) -> Vec<(Binding, Context)> {
    let mut out = Vec::new();
    let only_top = mode == MatchMode::Search && p.0.is_empty();
    walk_positions(bag, &mut Vec::new(), &mut |path, here| {
        if only_top && !path.is_empty() {
            return;
        }
        for (b2, rest) in match_bag(p, here.items(), b, false, mode) {
            out.push((
                b2,
                Context {
                    path: path.to_vec(),
                    rest,
                },
            ));
        }
    });
    out
}

/// Called with the modal path to a position and the bag found there.
type PositionVisitor<'a> = dyn FnMut(&[(SOp, Bag)], &Bag) + 'a;

fn walk_positions(bag: &Bag, path: &mut Vec<(SOp, Bag)>, k: &mut PositionVisitor<'_>) {
    k(path, bag);
    let items = bag.items();
    for (i, it) in items.iter().enumerate() {
        if i > 0 && items[i - 1] == *it {
            continue;
        }
        if let Item::Node(op, inner) = it {
            let mut siblings = items.to_vec();
            siblings.remove(i);
            path.push((*op, Bag::new(siblings)));
            walk_positions(inner, path, k);
            path.pop();
        }
    }
}

/// Matches a sequent pattern, returning bindings and (for hole patterns)
/// the context.
pub fn match_seq(
    p: &SeqPat,
    s: &CSeq,
    b: &Binding,
    mode: MatchMode,
) -> Vec<(Binding, Option<Context>)> {
    let b = match (&p.right, s) {
        (Some(rp), CSeq::OneSided { rhs, .. }) => match match_leaf(rp, rhs, b) {
            Some(b2) => b2,
            None => return Vec::new(),
        },
        (None, CSeq::Involutive { .. }) => b.clone(),
        _ => return Vec::new(),
    };
    match &p.left {
        PSide::Hole(pb) => match_hole(pb, s.bag(), &b, mode)
            .into_iter()
            .map(|(b, c)| (b, Some(c)))
            .collect(),
        PSide::Exact(pb) => match_bag(pb, s.bag().items(), &b, true, mode)
            .into_iter()
            .map(|(b, _)| (b, None))
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Instantiation

fn substitute(f: &Formula, b: &Binding) -> Option<Formula> {
    Some(match f {
        Formula::Atom(x) => b.forms.get(x)?.clone(),
        Formula::Unary(op, g) => Formula::un(*op, substitute(g, b)?),
        Formula::Binary(op, g, h) => Formula::bin(*op, substitute(g, b)?, substitute(h, b)?),
        other => other.clone(),
    })
}

pub fn instantiate_leaf(p: &LeafPat, b: &Binding) -> Option<Formula> {
    let base = match &p.kind {
        LeafKind::Form(f) => substitute(f, b)?,
        LeafKind::Const(v) => Formula::constant(b.consts.get(v)?),
        LeafKind::Expansion(v) => expand_dyadic_formula(b.consts.get(v)?),
    };
    let base = canonical_leaf(&base);
    Some(if p.negated {
        negate_formula(&base)
    } else {
        base
    })
}

pub fn instantiate_bag(p: &PBag, b: &Binding) -> Option<Bag> {
    let mut items = Vec::new();
    for i in &p.0 {
        match i {
            PItem::Leaf(lp) => items.push(Item::Leaf(instantiate_leaf(lp, b)?)),
            PItem::Node(op, pb) => items.push(Item::Node(*op, instantiate_bag(pb, b)?)),
            PItem::Var(v) => items.extend(b.structs.get(v)?.items().iter().cloned()),
        }
    }
    Some(Bag::new(items))
}

/// The sequent a pattern denotes; `None` if a variable is unbound or a hole
/// pattern lacks its context.
pub fn instantiate_seq(p: &SeqPat, b: &Binding, ctx: Option<&Context>) -> Option<CSeq> {
    let bag = match &p.left {
        PSide::Hole(pb) => ctx?.plug(&instantiate_bag(pb, b)?),
        PSide::Exact(pb) => instantiate_bag(pb, b)?,
    };
    Some(match &p.right {
        Some(rp) => CSeq::OneSided {
            ctx: bag,
            rhs: instantiate_leaf(rp, b)?,
        },
        None => CSeq::Involutive { m: bag },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    fn canon(text: &str, sys: SystemId) -> CSeq {
        CSeq::from_sequent(&parse_sequent(text, sys).unwrap())
    }

    #[test]
    fn patterns_parse_and_print() {
        let p = SeqPat::parse("G[o2 gamma, delta] |- a + b").unwrap();
        assert_eq!(p.to_string(), "G[o2 gamma, delta] |- a + b");
        let q = SeqPat::parse("gamma, !a").unwrap();
        assert!(q.is_two_sided());
        assert_eq!(
            SeqPat::parse("eps(1) |- a").unwrap().to_string(),
            "b2 eps, b2 eps |- a"
        );
    }

    #[test]
    fn hole_matches_at_depth() {
        let p = SeqPat::parse("G[2 a] |- c").unwrap();
        let s = canon("b, o2 (d, 2 e) |- f", SystemId::Cflew);
        let m = match_seq(&p, &s, &Binding::default(), MatchMode::Check);
        assert_eq!(m.len(), 1);
        let (b, ctx) = &m[0];
        assert_eq!(b.forms["a"], Formula::atom("e"));
        let prem = SeqPat::parse("G[o2 a] |- c").unwrap();
        let out = instantiate_seq(&prem, b, ctx.as_ref()).unwrap();
        assert_eq!(out, canon("b, o2 (d, o2 e) |- f", SystemId::Cflew));
    }

    #[test]
    fn structure_variables_split_multisets() {
        let p = SeqPat::parse("gamma, delta |- a + b").unwrap();
        let s = canon("p, q, r |- u + v", SystemId::Cflew);
        assert_eq!(
            match_seq(&p, &s, &Binding::default(), MatchMode::Check).len(),
            8
        );
        let q = SeqPat::parse("G[gamma, gamma] |- a").unwrap();
        let t = canon("p, p, q |- u", SystemId::Cflew);
        let found = match_seq(&q, &t, &Binding::default(), MatchMode::Search);
        assert!(found.iter().any(|(b, _)| b.structs["gamma"].len() == 1));
    }

    #[test]
    fn negated_leaves_match_through_double_negation() {
        let p = SeqPat::parse("a, !a").unwrap();
        assert_eq!(
            match_seq(
                &p,
                &canon("!!q |- q", SystemId::Incflew),
                &Binding::default(),
                MatchMode::Check
            )
            .len(),
            2
        );
        assert!(match_seq(
            &p,
            &canon("q |- r", SystemId::Incflew),
            &Binding::default(),
            MatchMode::Check
        )
        .is_empty());
    }
}
