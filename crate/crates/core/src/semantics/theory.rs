//! The axiom systems as inequality schemas, the suite runner, the embedding
//! checks and the locale/involution discriminators.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::dyadic::Dyadic;
use crate::lattice::{Elem, FiniteResiduatedLattice};
use crate::syntax::{Sequent, Structure};
use crate::usc::{StepFunction, UnaryKind};

use super::report::{CheckOutcome, Report};
use super::term::{cst, iterate, join, meet, minus, plus, un, var, Term};
use super::{first_failure, random_valuation, SamplerSpec, SemanticsError, Valuation};

use UnaryKind::{Alpha, Beta, Double, Ell, Ellstar, Half, Jmap, Jstar, Neg};

/// The theories that can be run against `USC(L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoryId {
    /// Affine continuous algebras.
    T,
    /// The `l`/`l*` fragment without the modal operations.
    T0,
    /// `T0` with the modal operations and their interaction with `l`.
    T1,
    /// Intuitionistic: `T` with doubling equal to self-sum.
    Tint,
    /// Involutive: `T` with double negation.
    Tinv,
    /// Classical: `Tint` with double negation.
    Tclass,
    /// The six-axiom presentation of classical continuous logic.
    Tc,
}

impl TheoryId {
    pub const ALL: [TheoryId; 7] = [
        TheoryId::T,
        TheoryId::T0,
        TheoryId::T1,
        TheoryId::Tint,
        TheoryId::Tinv,
        TheoryId::Tclass,
        TheoryId::Tc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoryId::T => "T",
            TheoryId::T0 => "T0",
            TheoryId::T1 => "T1",
            TheoryId::Tint => "Tint",
            TheoryId::Tinv => "Tinv",
            TheoryId::Tclass => "Tclass",
            TheoryId::Tc => "Tc",
        }
    }

    /// The schemas with parameters instantiated for `n ≤ n_cap` and dyadics
    /// on the grid `k / 2^n_cap`.
    pub fn schemas(self, n_cap: u32) -> Vec<AxiomSchema> {
        match self {
            TheoryId::T => continuous_axioms(n_cap, true),
            TheoryId::Tint => continuous_axioms(n_cap, false),
            TheoryId::Tinv => {
                let mut v = continuous_axioms(n_cap, true);
                v.push(double_negation());
                v
            }
            TheoryId::Tclass => {
                let mut v = continuous_axioms(n_cap, false);
                v.push(double_negation());
                v
            }
            TheoryId::T0 => fixed_point_axioms(n_cap, false),
            TheoryId::T1 => fixed_point_axioms(n_cap, true),
            TheoryId::Tc => classical_axioms(),
        }
    }
}

impl fmt::Display for TheoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoryId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoryId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown theory `{s}`"))
    }
}

/// `≤` or `=` in the continuous order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Leq,
    Eq,
}

/// A named instance `lhs ≤ rhs` (or `lhs = rhs`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSchema {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
    pub relation: Relation,
}

impl AxiomSchema {
    fn leq(name: impl Into<String>, lhs: Term, rhs: Term) -> Self {
        AxiomSchema {
            name: name.into(),
            lhs,
            rhs,
            relation: Relation::Leq,
        }
    }

    fn eq(name: impl Into<String>, lhs: Term, rhs: Term) -> Self {
        AxiomSchema {
            name: name.into(),
            lhs,
            rhs,
            relation: Relation::Eq,
        }
    }

    /// Variables in first-occurrence order.
    pub fn vars(&self) -> Vec<String> {
        let mut v = self.lhs.vars();
        for x in self.rhs.vars() {
            if !v.contains(&x) {
                v.push(x);
            }
        }
        v
    }

    /// Whether the instance holds under `v`.
    pub fn holds(&self, v: &Valuation) -> Result<bool, SemanticsError> {
        let (a, b) = (self.lhs.eval(v)?, self.rhs.eval(v)?);
        Ok(match self.relation {
            Relation::Leq => a.leq(&b)?,
            Relation::Eq => a == b,
        })
    }
}

impl AxiomSchema {
    /// The sequents stating this instance: `u ≤ v` reads as `v |- u`, and
    /// an equation gives both directions. `None` if a term has no formula.
    pub fn as_sequents(&self) -> Option<Vec<Sequent>> {
        let (lhs, rhs) = (self.lhs.to_formula()?, self.rhs.to_formula()?);
        let forward = Sequent::one_sided(Structure::leaf(rhs.clone()), lhs.clone());
        Some(match self.relation {
            Relation::Leq => vec![forward],
            Relation::Eq => vec![forward, Sequent::one_sided(Structure::leaf(lhs), rhs)],
        })
    }
}

impl fmt::Display for AxiomSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.relation == Relation::Leq {
            "<="
        } else {
            "="
        };
        write!(f, "{}: {} {} {}", self.name, self.lhs, rel, self.rhs)
    }
}

fn dy(k: i64, n: u32) -> Dyadic {
    Dyadic::frac(k, n)
}

fn grid(n: u32) -> Vec<Dyadic> {
    (0..=(1i64 << n)).map(|k| dy(k, n)).collect()
}

fn half_const() -> Term {
    un(Jstar, cst(&Dyadic::zero()))
}

fn zero() -> Term {
    cst(&Dyadic::zero())
}

fn one() -> Term {
    cst(&Dyadic::one())
}

/// Bounded lattice, commutative monoid and residuation laws.
fn order_axioms() -> Vec<AxiomSchema> {
    let (u, v, w) = (var("u"), var("v"), var("w"));
    vec![
        AxiomSchema::leq("meet-below-left", meet(u.clone(), v.clone()), u.clone()),
        AxiomSchema::leq("meet-below-right", meet(u.clone(), v.clone()), v.clone()),
        AxiomSchema::leq("join-above-left", u.clone(), join(u.clone(), v.clone())),
        AxiomSchema::leq("join-above-right", v.clone(), join(u.clone(), v.clone())),
        AxiomSchema::eq(
            "meet-commutes",
            meet(u.clone(), v.clone()),
            meet(v.clone(), u.clone()),
        ),
        AxiomSchema::eq(
            "join-commutes",
            join(u.clone(), v.clone()),
            join(v.clone(), u.clone()),
        ),
        AxiomSchema::eq(
            "meet-associates",
            meet(meet(u.clone(), v.clone()), w.clone()),
            meet(u.clone(), meet(v.clone(), w.clone())),
        ),
        AxiomSchema::eq(
            "join-associates",
            join(join(u.clone(), v.clone()), w.clone()),
            join(u.clone(), join(v.clone(), w.clone())),
        ),
        AxiomSchema::eq(
            "meet-absorbs-join",
            meet(u.clone(), join(u.clone(), v.clone())),
            u.clone(),
        ),
        AxiomSchema::eq(
            "join-absorbs-meet",
            join(u.clone(), meet(u.clone(), v.clone())),
            u.clone(),
        ),
        AxiomSchema::leq("zero-is-least", zero(), v.clone()),
        AxiomSchema::leq("one-is-greatest", v.clone(), one()),
        AxiomSchema::eq(
            "sum-commutes",
            plus(u.clone(), v.clone()),
            plus(v.clone(), u.clone()),
        ),
        AxiomSchema::eq(
            "sum-associates",
            plus(plus(u.clone(), v.clone()), w.clone()),
            plus(u.clone(), plus(v.clone(), w.clone())),
        ),
        AxiomSchema::eq("zero-is-sum-unit", plus(v.clone(), zero()), v.clone()),
        AxiomSchema::leq(
            "difference-then-sum-restores",
            w.clone(),
            plus(minus(w.clone(), v.clone()), v.clone()),
        ),
        AxiomSchema::leq(
            "sum-then-difference-restores",
            minus(plus(u.clone(), v.clone()), v.clone()),
            u.clone(),
        ),
        AxiomSchema::leq(
            "sum-monotone",
            plus(u.clone(), w.clone()),
            plus(join(u.clone(), v.clone()), w.clone()),
        ),
    ]
}

fn monotone(name: &str, kind: UnaryKind) -> AxiomSchema {
    AxiomSchema::leq(
        format!("{name}-monotone"),
        un(kind, var("u")),
        un(kind, join(var("u"), var("v"))),
    )
}

fn adjunction_axioms() -> Vec<AxiomSchema> {
    let v = var("v");
    vec![
        AxiomSchema::leq(
            "half-of-double-below",
            un(Half, un(Double, v.clone())),
            v.clone(),
        ),
        AxiomSchema::leq(
            "double-of-half-above",
            v.clone(),
            un(Double, un(Half, v.clone())),
        ),
        AxiomSchema::leq(
            "j-of-jstar-below",
            un(Jmap, un(Jstar, v.clone())),
            v.clone(),
        ),
        AxiomSchema::leq(
            "jstar-of-j-above",
            v.clone(),
            un(Jstar, un(Jmap, v.clone())),
        ),
    ]
}

/// The box of alpha, `2v ∧ j_*(v)`.
fn box_alpha(t: Term) -> Term {
    meet(un(Double, t.clone()), un(Jstar, t))
}

/// `T` (with `with_doubling_additivity`) or `Tint` (without the two
/// doubling-over-sum laws, plus `v ∔ v ≤ 2v`).
fn continuous_axioms(n_cap: u32, with_doubling_additivity: bool) -> Vec<AxiomSchema> {
    let (u, v) = (var("u"), var("v"));
    let mut out = order_axioms();
    for (name, kind) in [
        ("double", Double),
        ("half", Half),
        ("jstar", Jstar),
        ("j", Jmap),
        ("alpha", Alpha),
    ] {
        out.push(monotone(name, kind));
    }
    out.extend(adjunction_axioms());
    out.push(AxiomSchema::leq(
        "double-below-self-sum",
        un(Double, v.clone()),
        plus(v.clone(), v.clone()),
    ));
    if with_doubling_additivity {
        out.push(AxiomSchema::leq(
            "sum-of-doubles-below-double-of-sum",
            plus(un(Double, u.clone()), un(Double, v.clone())),
            un(Double, plus(u.clone(), v.clone())),
        ));
    } else {
        out.push(AxiomSchema::leq(
            "self-sum-below-double",
            plus(v.clone(), v.clone()),
            un(Double, v.clone()),
        ));
    }
    out.push(AxiomSchema::eq(
        "jstar-of-double-is-half-shift",
        un(Jstar, un(Double, v.clone())),
        plus(v.clone(), half_const()),
    ));
    out.push(AxiomSchema::leq(
        "double-inflates",
        v.clone(),
        un(Double, v.clone()),
    ));
    out.push(AxiomSchema::leq(
        "jstar-inflates",
        v.clone(),
        un(Jstar, v.clone()),
    ));
    out.push(AxiomSchema::eq(
        "alpha-inverts-box",
        un(Alpha, box_alpha(v.clone())),
        v.clone(),
    ));
    out.push(AxiomSchema::eq(
        "box-inverts-alpha",
        box_alpha(un(Alpha, v.clone())),
        v.clone(),
    ));
    out.push(AxiomSchema::leq(
        "double-half-reaches-one",
        one(),
        un(Double, half_const()),
    ));
    for n in 1..=n_cap.max(1) {
        let unit = iterate(Alpha, n, half_const());
        let parent = iterate(Alpha, n - 1, half_const());
        out.push(AxiomSchema::leq(
            format!("halves-sum-below-parent n={n}"),
            plus(unit.clone(), unit),
            parent,
        ));
    }
    if with_doubling_additivity {
        out.push(AxiomSchema::leq(
            "double-of-sum-below-sum-of-doubles",
            un(Double, plus(u.clone(), v.clone())),
            plus(un(Double, u.clone()), un(Double, v.clone())),
        ));
    }
    out.push(AxiomSchema::leq(
        "jstar-of-sum-below-shifted",
        un(Jstar, plus(u.clone(), v.clone())),
        plus(un(Jstar, u.clone()), v.clone()),
    ));
    out.push(AxiomSchema::leq(
        "alpha-of-sum-below-shifted",
        un(Alpha, plus(u.clone(), v.clone())),
        plus(un(Alpha, u.clone()), un(Double, v.clone())),
    ));
    for n in 0..=n_cap {
        for d in grid(n_cap) {
            let rest = Dyadic::one().sub(&d);
            out.push(AxiomSchema::leq(
                format!("value-split-by-alpha d={d} n={n}"),
                v.clone(),
                plus(cst(&d), iterate(Alpha, n, plus(v.clone(), cst(&rest)))),
            ));
        }
    }
    for n in 0..=n_cap {
        let m = n + 1;
        let terms: Vec<Term> = (1..(1i64 << m))
            .map(|k| {
                plus(
                    cst(&Dyadic::one().sub(&dy(k, m))),
                    iterate(Alpha, m, plus(v.clone(), cst(&dy(k, m)))),
                )
            })
            .collect();
        let lhs = terms.into_iter().reduce(meet).expect("at least one term");
        out.push(AxiomSchema::leq(
            format!("value-recovered-within-half-power n={n}"),
            lhs,
            plus(v.clone(), cst(&Dyadic::pow2_inv(n))),
        ));
    }
    out
}

fn double_negation() -> AxiomSchema {
    AxiomSchema::leq(
        "double-negation-inflates",
        var("v"),
        un(Neg, un(Neg, var("v"))),
    )
}

fn classical_axioms() -> Vec<AxiomSchema> {
    let (a, b, c) = (var("a"), var("b"), var("c"));
    vec![
        AxiomSchema::leq(
            "difference-below-minuend",
            minus(a.clone(), b.clone()),
            a.clone(),
        ),
        AxiomSchema::leq(
            "difference-antitone-in-subtrahend",
            minus(minus(c.clone(), a.clone()), minus(c.clone(), b.clone())),
            minus(b.clone(), a.clone()),
        ),
        AxiomSchema::leq(
            "meet-commutes",
            meet(a.clone(), b.clone()),
            meet(b.clone(), a.clone()),
        ),
        AxiomSchema::leq(
            "difference-contraposes",
            minus(a.clone(), b.clone()),
            minus(un(Neg, b.clone()), un(Neg, a.clone())),
        ),
        AxiomSchema::leq(
            "half-below-difference-of-half",
            un(Half, a.clone()),
            minus(a.clone(), un(Half, a.clone())),
        ),
        AxiomSchema::leq(
            "difference-of-half-below-half",
            minus(a.clone(), un(Half, a.clone())),
            un(Half, a.clone()),
        ),
    ]
}

/// `l(d)`: 1 at 1 and 0 elsewhere.
fn ell_of(d: &Dyadic) -> Dyadic {
    if d.is_one() {
        Dyadic::one()
    } else {
        Dyadic::zero()
    }
}

/// `T0` or, with the modal operations, `T1`.
fn fixed_point_axioms(n_cap: u32, modal: bool) -> Vec<AxiomSchema> {
    let (u, v) = (var("u"), var("v"));
    let lv = un(Ell, v.clone());
    let mut out = order_axioms();
    out.push(monotone("ell", Ell));
    out.push(monotone("ellstar", Ellstar));
    out.push(AxiomSchema::leq(
        "ell-of-ellstar-above",
        v.clone(),
        un(Ell, un(Ellstar, v.clone())),
    ));
    out.push(AxiomSchema::leq(
        "ellstar-of-ell-below",
        un(Ellstar, un(Ell, v.clone())),
        v.clone(),
    ));
    if modal {
        for (name, kind) in [
            ("double", Double),
            ("half", Half),
            ("jstar", Jstar),
            ("j", Jmap),
            ("alpha", Alpha),
        ] {
            out.push(monotone(name, kind));
        }
        out.extend(adjunction_axioms());
        out.push(AxiomSchema::leq(
            "alpha-of-beta-above",
            v.clone(),
            un(Alpha, un(Beta, v.clone())),
        ));
        out.push(AxiomSchema::leq(
            "beta-of-alpha-below",
            un(Beta, un(Alpha, v.clone())),
            v.clone(),
        ));
    }
    let g = grid(n_cap);
    for d in &g {
        let shifted = plus(cst(d), lv.clone());
        if modal {
            let maps: [(&str, UnaryKind, Dyadic); 3] = [
                ("double", Double, d.double_trunc()),
                ("jstar", Jstar, d.jstar()),
                ("alpha", Alpha, d.alpha()),
            ];
            for (name, kind, image) in maps {
                out.push(AxiomSchema::eq(
                    format!("{name}-commutes-with-fixed-shift d={d}"),
                    un(kind, shifted.clone()),
                    plus(cst(&image), lv.clone()),
                ));
            }
        }
        out.push(AxiomSchema::eq(
            format!("ell-commutes-with-fixed-shift d={d}"),
            un(Ell, shifted.clone()),
            plus(cst(&ell_of(d)), lv.clone()),
        ));
    }
    for (i, d) in g.iter().enumerate() {
        for e in &g[i..] {
            out.push(AxiomSchema::eq(
                format!("constants-add d={d} e={e}"),
                plus(cst(d), cst(e)),
                cst(&d.trunc_add(e)),
            ));
        }
    }
    let (lu, lv2) = (un(Ell, u.clone()), un(Ell, v.clone()));
    out.push(AxiomSchema::eq(
        "ell-fixes-sums-of-fixed-points",
        un(Ell, plus(lu.clone(), lv2.clone())),
        plus(lu, lv2),
    ));
    for d in &g {
        out.push(AxiomSchema::leq(
            format!("value-split-by-ell d={d}"),
            v.clone(),
            plus(cst(d), un(Ell, plus(v.clone(), cst(&Dyadic::one().sub(d))))),
        ));
    }
    for n in 0..=n_cap {
        let m = n + 1;
        let terms: Vec<Term> = (1..(1i64 << m))
            .map(|k| {
                let low = dy(k - 1, m);
                plus(
                    cst(&Dyadic::one().sub(&low)),
                    un(Ell, plus(v.clone(), cst(&low))),
                )
            })
            .collect();
        let lhs = terms.into_iter().reduce(meet).expect("at least one term");
        out.push(AxiomSchema::leq(
            format!("value-recovered-by-ell n={n}"),
            lhs,
            plus(v.clone(), cst(&Dyadic::pow2_inv(n))),
        ));
    }
    out
}

/// Checks one schema against the sampler.
pub fn check_schema(
    schema: &AxiomSchema,
    l: &Arc<FiniteResiduatedLattice>,
    spec: &SamplerSpec,
) -> Result<CheckOutcome, SemanticsError> {
    let names = schema.vars();
    if names.is_empty() {
        let passed = schema.holds(&Valuation::new(l.clone()))?;
        return Ok(CheckOutcome {
            name: schema.name.clone(),
            passed,
            checked: 1,
            witness: (!passed).then(|| "(closed instance)".to_string()),
        });
    }
    let hit = first_failure(l, &names, spec, |v| schema.holds(v))?;
    Ok(match hit {
        None => CheckOutcome {
            name: schema.name.clone(),
            passed: true,
            checked: super::visited_count(l, names.len(), spec)?,
            witness: None,
        },
        Some((i, v)) => CheckOutcome {
            name: schema.name.clone(),
            passed: false,
            checked: i + 1,
            witness: Some(v.to_string()),
        },
    })
}

/// Runs every schema of `theory` over sampled valuations in `USC(L)`.
pub fn axiom_suite(
    theory: TheoryId,
    l: &Arc<FiniteResiduatedLattice>,
    spec: &SamplerSpec,
    n_cap: u32,
) -> Result<Report, SemanticsError> {
    let schemas = theory.schemas(n_cap);
    let outcomes: Result<Vec<CheckOutcome>, SemanticsError> = schemas
        .par_iter()
        .map(|s| check_schema(s, l, spec))
        .collect();
    Ok(Report {
        subject: format!("theory {theory}"),
        lattice: l.name().to_string(),
        outcomes: outcomes?,
        notes: vec![format!(
            "parameters n <= {n_cap}, dyadics on the grid k/2^{n_cap}"
        )],
    })
}

fn outcome(name: &str, checked: usize, witness: Option<String>) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        passed: witness.is_none(),
        checked,
        witness,
    }
}

/// Indicator and constant embeddings preserve the operations, checked
/// exhaustively over the elements of `L` and the grid `k / 2^P`.
pub fn embedding_checks(l: &Arc<FiniteResiduatedLattice>, spec: &SamplerSpec) -> Report {
    let ind = |u: Elem| StepFunction::indicator(l, u);
    let name = |u: Elem| l.element_name(u).to_string();
    type ElemCheck<'a> = (&'a str, Box<dyn Fn(Elem, Elem) -> bool + 'a>);
    let elem_checks: Vec<ElemCheck> = vec![
        (
            "indicator-sum-is-product",
            Box::new(|u, v| ind(u).oplus(&ind(v)).unwrap() == ind(l.otimes(u, v))),
        ),
        (
            "indicator-difference-is-residual",
            Box::new(|u, v| ind(u).ominus(&ind(v)).unwrap() == ind(l.residual(v, u))),
        ),
        (
            "indicator-otimes-is-product",
            Box::new(|u, v| ind(u).otimes(&ind(v)).unwrap() == ind(l.otimes(u, v))),
        ),
        (
            "indicator-meet-is-lattice-join",
            Box::new(|u, v| ind(u).meet(&ind(v)).unwrap() == ind(l.join(u, v))),
        ),
        (
            "indicator-join-is-lattice-meet",
            Box::new(|u, v| ind(u).join(&ind(v)).unwrap() == ind(l.meet(u, v))),
        ),
        (
            "indicator-order-is-reversed",
            Box::new(|u, v| ind(u).leq(&ind(v)).unwrap() == l.leq(v, u)),
        ),
    ];
    let mut outcomes = Vec::new();
    let pairs: Vec<(Elem, Elem)> = l
        .elements()
        .flat_map(|u| l.elements().map(move |v| (u, v)))
        .collect();
    for (label, check) in &elem_checks {
        let bad = pairs.iter().find(|&&(u, v)| !check(u, v));
        outcomes.push(outcome(
            label,
            pairs.len(),
            bad.map(|&(u, v)| format!("U = {}, V = {}", name(u), name(v))),
        ));
    }

    let points = grid(spec.grid_exponent);
    let c = |p: &Dyadic| StepFunction::constant(l, p);
    type ConstBinary<'a> = (&'a str, Box<dyn Fn(&Dyadic, &Dyadic) -> bool + 'a>);
    let binary: Vec<ConstBinary> = vec![
        (
            "constant-sum",
            Box::new(|p, q| c(p).oplus(&c(q)).unwrap() == c(&p.trunc_add(q))),
        ),
        (
            "constant-difference",
            Box::new(|p, q| c(p).ominus(&c(q)).unwrap() == c(&p.trunc_sub(q))),
        ),
        (
            "constant-otimes-is-max",
            Box::new(|p, q| c(p).otimes(&c(q)).unwrap() == c(p.max(q))),
        ),
        (
            "constant-meet-is-min",
            Box::new(|p, q| c(p).meet(&c(q)).unwrap() == c(p.min(q))),
        ),
        (
            "constant-join-is-max",
            Box::new(|p, q| c(p).join(&c(q)).unwrap() == c(p.max(q))),
        ),
        (
            "constant-order",
            Box::new(|p, q| c(p).leq(&c(q)).unwrap() == (p <= q)),
        ),
    ];
    let dpairs: Vec<(&Dyadic, &Dyadic)> = points
        .iter()
        .flat_map(|p| points.iter().map(move |q| (p, q)))
        .collect();
    for (label, check) in &binary {
        let bad = dpairs.iter().find(|&&(p, q)| !check(p, q));
        outcomes.push(outcome(
            label,
            dpairs.len(),
            bad.map(|&(p, q)| format!("p = {p}, q = {q}")),
        ));
    }
    type ConstUnary<'a> = (&'a str, UnaryKind, Box<dyn Fn(&Dyadic) -> Dyadic + 'a>);
    let unary: Vec<ConstUnary> = vec![
        ("constant-double", Double, Box::new(|p| p.double_trunc())),
        ("constant-half", Half, Box::new(|p| p.half())),
        ("constant-jstar", Jstar, Box::new(|p| p.jstar())),
        ("constant-j", Jmap, Box::new(|p| p.j())),
        ("constant-alpha", Alpha, Box::new(|p| p.alpha())),
        ("constant-beta", Beta, Box::new(|p| p.beta())),
    ];
    for (label, kind, image) in &unary {
        let bad = points
            .iter()
            .find(|p| c(p).apply_unary(*kind) != c(&image(p)));
        outcomes.push(outcome(
            label,
            points.len(),
            bad.map(|p| format!("p = {p}")),
        ));
    }
    Report {
        subject: "embeddings".into(),
        lattice: l.name().to_string(),
        outcomes,
        notes: vec![format!("constants on the grid k/2^{}", spec.grid_exponent)],
    }
}

/// Indicators first, then samples: the first `f` for which `pred` fails.
fn discriminator_witness(
    l: &Arc<FiniteResiduatedLattice>,
    spec: &SamplerSpec,
    pred: impl Fn(&StepFunction) -> bool + Sync,
) -> Option<StepFunction> {
    if let Some(f) = l
        .elements()
        .map(|u| StepFunction::indicator(l, u))
        .find(|f| !pred(f))
    {
        return Some(f);
    }
    let names = ["f".to_string()];
    (0..spec.sample_count).into_par_iter().find_map_first(|i| {
        let v = random_valuation(l, &names, spec.grid_exponent, spec.seed, i as u64);
        let f = v.get("f").expect("bound").clone();
        (!pred(&f)).then_some(f)
    })
}

/// A step function with `2f ≠ f ∔ f`, if one is found. None exists exactly
/// when `L` is a locale.
pub fn locale_witness(
    l: &Arc<FiniteResiduatedLattice>,
    spec: &SamplerSpec,
) -> Option<StepFunction> {
    discriminator_witness(l, spec, |f| f.double() == f.oplus(f).expect("same lattice"))
}

/// A step function with `¬¬f ≠ f`, if one is found. None exists exactly when
/// `L` is involutive.
pub fn involution_witness(
    l: &Arc<FiniteResiduatedLattice>,
    spec: &SamplerSpec,
) -> Option<StepFunction> {
    discriminator_witness(l, spec, |f| f.neg().neg() == *f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lattice_from_spec;

    /// The value-recovery schema with `α^{n+1}` is false in `[0,1]` once
    /// `n ≥ 1`; every other schema must pass.
    fn passes_except_value_recovery(r: &Report) -> bool {
        r.failures().all(|o| {
            o.name.starts_with("value-recovered-within-half-power") && !o.name.ends_with("n=0")
        })
    }

    #[test]
    fn theory_t_holds_over_lukasiewicz() {
        let l = lattice_from_spec("luk:3").unwrap();
        let r = axiom_suite(TheoryId::T, &l, &SamplerSpec::random(3, 60, 0), 2).unwrap();
        assert!(passes_except_value_recovery(&r), "{r}");
        assert!(
            r.outcome("value-recovered-within-half-power n=0")
                .unwrap()
                .passed
        );
    }

    #[test]
    fn value_recovery_with_alpha_power_fails_on_the_unit_interval() {
        let l = lattice_from_spec("luk:2").unwrap();
        let schema = TheoryId::T
            .schemas(1)
            .into_iter()
            .find(|s| s.name == "value-recovered-within-half-power n=1")
            .unwrap();
        let v = Valuation::new(l.clone())
            .with("v", StepFunction::constant(&l, &Dyadic::frac(3, 3)))
            .unwrap();
        assert!(!schema.holds(&v).unwrap());
    }

    #[test]
    fn intuitionistic_theory_fails_off_locales() {
        let l = lattice_from_spec("luk:3").unwrap();
        let r = axiom_suite(TheoryId::Tint, &l, &SamplerSpec::random(3, 200, 0), 2).unwrap();
        let o = r.outcome("self-sum-below-double").unwrap();
        assert!(!o.passed);
        let g = lattice_from_spec("godel:3").unwrap();
        let r = axiom_suite(TheoryId::Tint, &g, &SamplerSpec::random(3, 60, 0), 2).unwrap();
        assert!(passes_except_value_recovery(&r), "{r}");
    }

    #[test]
    fn fixed_point_theories_hold() {
        let l = lattice_from_spec("luk:4").unwrap();
        for t in [TheoryId::T0, TheoryId::T1] {
            let r = axiom_suite(t, &l, &SamplerSpec::random(3, 40, 2), 2).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn classical_axioms_hold_over_boolean_algebras() {
        for spec in ["luk:2", "bool:2"] {
            let l = lattice_from_spec(spec).unwrap();
            let r = axiom_suite(TheoryId::Tc, &l, &SamplerSpec::random(3, 100, 0), 2).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn embeddings_preserve_operations() {
        let l = lattice_from_spec("luk:4").unwrap();
        let r = embedding_checks(&l, &SamplerSpec::random(3, 0, 0));
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn discriminators() {
        let spec = SamplerSpec::random(3, 100, 0);
        let luk = lattice_from_spec("luk:3").unwrap();
        let godel = lattice_from_spec("godel:3").unwrap();
        let h = luk.element("h").unwrap();
        assert_eq!(
            locale_witness(&luk, &spec),
            Some(StepFunction::indicator(&luk, h))
        );
        assert!(locale_witness(&godel, &spec).is_none());
        assert!(involution_witness(&luk, &spec).is_none());
        assert!(involution_witness(&godel, &spec).is_some());
    }
}
