//! Canonical sequents: structures flattened into sorted multisets so that
//! associativity, commutativity and the unit law of `,` hold by
//! construction.
//!
//! One-sided sequents keep their formula succedent. Two-sided sequents
//! `Γ ⊢ Θ` are stored as the single multiset `Γ ⊎ Θ^!` with `ε` on the
//! right; display moves, `~ = !` and `ba = oa` are absorbed here.

use std::fmt;

use crate::dyadic::Dyadic;
use crate::syntax::{expand_eps, Formula, SUnOp, Sequent, Structure, Succedent, UnOp};

/// The structural modalities that survive canonicalisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SOp {
    O2,
    B2,
    OA,
}

impl SOp {
    pub fn keyword(self) -> &'static str {
        match self {
            SOp::O2 => "o2",
            SOp::B2 => "b2",
            SOp::OA => "oa",
        }
    }

    fn structural(self) -> SUnOp {
        match self {
            SOp::O2 => SUnOp::O2,
            SOp::B2 => SUnOp::B2,
            SOp::OA => SUnOp::OA,
        }
    }
}

/// One element of a multiset: a formula or a modality applied to a
/// multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    Leaf(Formula),
    Node(SOp, Bag),
}

/// A sorted multiset of items; the empty bag is `ε`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bag(Vec<Item>);

impl Bag {
    pub fn empty() -> Bag {
        Bag(Vec::new())
    }

    pub fn new(mut items: Vec<Item>) -> Bag {
        items.sort();
        Bag(items)
    }

    pub fn items(&self) -> &[Item] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &Bag) -> Bag {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Bag::new(v)
    }

    /// Items plus nodes, counted recursively.
    pub fn size(&self) -> usize {
        self.0
            .iter()
            .map(|i| match i {
                Item::Leaf(_) => 1,
                Item::Node(_, b) => 1 + b.size(),
            })
            .sum()
    }

    /// Whether `sub` is a sub-multiset, and the remainder if so.
    pub fn minus(&self, sub: &Bag) -> Option<Bag> {
        let mut rest = self.0.clone();
        for it in &sub.0 {
            let pos = rest.iter().position(|x| x == it)?;
            rest.remove(pos);
        }
        Some(Bag(rest))
    }

    /// Every formula occurring in a leaf, at any depth.
    pub fn leaf_formulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        for it in &self.0 {
            match it {
                Item::Leaf(f) => out.push(f),
                Item::Node(_, b) => out.extend(b.leaf_formulas()),
            }
        }
        out
    }

    /// The structure this bag stands for, items joined by `,`.
    pub fn to_structure(&self) -> Structure {
        Structure::join_all(self.0.iter().map(Item::to_structure).collect())
    }
}

impl Item {
    pub fn node(op: SOp, items: Vec<Item>) -> Item {
        Item::Node(op, Bag::new(items))
    }

    pub fn to_structure(&self) -> Structure {
        match self {
            Item::Leaf(f) => Structure::Formula(f.clone()),
            Item::Node(op, b) => Structure::un(op.structural(), b.to_structure()),
        }
    }

    /// The involutive negation of an item: `!` moves through modalities and
    /// cancels in pairs on leaves.
    pub fn negate(&self) -> Item {
        match self {
            Item::Leaf(f) => Item::Leaf(negate_formula(f)),
            Item::Node(op, b) => Item::Node(*op, negate_bag(b)),
        }
    }
}

pub fn negate_bag(b: &Bag) -> Bag {
    Bag::new(b.items().iter().map(Item::negate).collect())
}

/// `!f`, removing a leading `!` instead of adding a second one.
pub fn negate_formula(f: &Formula) -> Formula {
    match f {
        Formula::Unary(UnOp::Neg, g) => (**g).clone(),
        other => Formula::un(UnOp::Neg, other.clone()),
    }
}

/// Strips leading `! !` pairs.
pub fn canonical_leaf(f: &Formula) -> Formula {
    let mut cur = f;
    while let Formula::Unary(UnOp::Neg, g) = cur {
        match &**g {
            Formula::Unary(UnOp::Neg, h) => cur = h,
            _ => break,
        }
    }
    cur.clone()
}

/// `ε_d` as a bag.
pub fn eps_bag(d: &Dyadic) -> Bag {
    bag_of(&expand_eps(d), false, false)
}

/// Flattens a structure. With `involutive` set, `!`/`~` are pushed to the
/// leaves; `negated` says whether an odd number of them is pending.
pub fn bag_of(s: &Structure, involutive: bool, negated: bool) -> Bag {
    let mut out = Vec::new();
    collect(s, involutive, negated, &mut out);
    Bag::new(out)
}

fn collect(s: &Structure, involutive: bool, negated: bool, out: &mut Vec<Item>) {
    match s {
        Structure::Formula(f) => {
            let leaf = if involutive {
                canonical_leaf(f)
            } else {
                f.clone()
            };
            out.push(Item::Leaf(if negated {
                negate_formula(&leaf)
            } else {
                leaf
            }));
        }
        Structure::Eps => {}
        Structure::EpsD(d) => collect(&expand_eps(d), involutive, negated, out),
        Structure::Comma(a, b) => {
            collect(a, involutive, negated, out);
            collect(b, involutive, negated, out);
        }
        Structure::Unary(op, inner) => {
            let sop = match op {
                SUnOp::O2 => SOp::O2,
                SUnOp::B2 => SOp::B2,
                SUnOp::OA | SUnOp::BA => SOp::OA,
                SUnOp::Neg | SUnOp::Tilde => {
                    collect(inner, involutive, !negated, out);
                    return;
                }
            };
            out.push(Item::Node(sop, bag_of(inner, involutive, negated)));
        }
    }
}

/// A canonical sequent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CSeq {
    /// `Γ ⊢ A`.
    OneSided { ctx: Bag, rhs: Formula },
    /// `M ⊢ ε` with `M = Γ ⊎ Θ^!`.
    Involutive { m: Bag },
}

impl CSeq {
    pub fn from_sequent(s: &Sequent) -> CSeq {
        match &s.rhs {
            Succedent::Formula(f) => CSeq::OneSided {
                ctx: bag_of(&s.lhs, false, false),
                rhs: f.clone(),
            },
            Succedent::Structure(r) => {
                let m = bag_of(&s.lhs, true, false).union(&bag_of(r, true, true));
                CSeq::Involutive { m }
            }
        }
    }

    /// The antecedent multiset (the whole `M` for two-sided sequents).
    pub fn bag(&self) -> &Bag {
        match self {
            CSeq::OneSided { ctx, .. } => ctx,
            CSeq::Involutive { m } => m,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            CSeq::OneSided { ctx, rhs } => ctx.size() + formula_size(rhs),
            CSeq::Involutive { m } => m.size(),
        }
    }

    /// A readable sequent. Two-sided sequents print their positive items on
    /// the left and their negated leaves, un-negated, on the right.
    pub fn to_sequent(&self) -> Sequent {
        match self {
            CSeq::OneSided { ctx, rhs } => Sequent::one_sided(ctx.to_structure(), rhs.clone()),
            CSeq::Involutive { m } => {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for it in m.items() {
                    match it {
                        Item::Leaf(Formula::Unary(UnOp::Neg, g)) => {
                            right.push(Structure::Formula((**g).clone()))
                        }
                        other => left.push(other.to_structure()),
                    }
                }
                Sequent::two_sided(Structure::join_all(left), Structure::join_all(right))
            }
        }
    }

    /// Every formula occurring in the sequent, including the succedent.
    pub fn formulas(&self) -> Vec<&Formula> {
        let mut v = self.bag().leaf_formulas();
        if let CSeq::OneSided { rhs, .. } = self {
            v.push(rhs);
        }
        v
    }
}

impl fmt::Display for CSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sequent())
    }
}

pub fn formula_size(f: &Formula) -> usize {
    match f {
        Formula::Unary(_, g) => 1 + formula_size(g),
        Formula::Binary(_, a, b) => 1 + formula_size(a) + formula_size(b),
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_sequent, SystemId};

    fn canon(text: &str, sys: SystemId) -> CSeq {
        CSeq::from_sequent(&parse_sequent(text, sys).unwrap())
    }

    #[test]
    fn comma_is_associative_commutative_with_unit() {
        let a = canon("(a, b), c |- d", SystemId::Cflew);
        let b = canon("c, (eps, b, a) |- d", SystemId::Cflew);
        assert_eq!(a, b);
    }

    #[test]
    fn eps_constants_expand() {
        let a = canon("eps(3/4) |- a", SystemId::Cflew);
        let b = canon("oa b2 eps, oa b2 eps, oa b2 eps |- a", SystemId::Cflew);
        assert_eq!(a, b);
        assert_eq!(
            canon("eps(1) |- a", SystemId::Cflew),
            canon("b2 eps, b2 eps |- a", SystemId::Cflew)
        );
    }

    #[test]
    fn two_sided_sequents_collapse_to_one_multiset() {
        let sys = SystemId::Incflew;
        assert_eq!(canon("a |- a", sys), canon("a, !a |- eps", sys));
        assert_eq!(canon("!!a |- a", sys), canon("a |- a", sys));
        assert_eq!(canon("~ (! a) |- b", sys), canon("a |- b", sys));
        assert_eq!(canon("ba a |- b", sys), canon("oa a |- b", sys));
        assert_eq!(canon("eps |- o2 a", sys), canon("o2 !a |- eps", sys));
    }

    #[test]
    fn printing_roundtrips() {
        for (text, sys) in [
            ("a, o2 (b + c) |- 2 a", SystemId::Cflew),
            ("a, b2 !c |- d, e", SystemId::Incflew),
            ("eps |- !a", SystemId::Inljk),
        ] {
            let c = canon(text, sys);
            let printed = c.to_sequent().to_string();
            assert_eq!(canon(&printed, sys), c, "{printed}");
        }
        assert_eq!(canon("eps |- !a", SystemId::Inljk).to_string(), "a |- eps");
    }
}
