//! Terms of the extended continuous language: formulas plus the operations
//! `l`, `l*` and `β` that only appear in axiom schemas.

use std::fmt;

use crate::dyadic::Dyadic;
use crate::syntax::{BinOp, Formula, UnOp};
use crate::usc::{StepFunction, UnaryKind};

use super::{SemanticsError, Valuation};

/// A term over variables, dyadic constants and the operations of `USC(L)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(Dyadic),
    Un(UnaryKind, Box<Term>),
    Bin(BinOp, Box<Term>, Box<Term>),
}

pub fn var(name: &str) -> Term {
    Term::Var(name.to_string())
}

pub fn cst(d: &Dyadic) -> Term {
    Term::Const(d.clone())
}

pub fn un(kind: UnaryKind, t: Term) -> Term {
    Term::Un(kind, Box::new(t))
}

/// `kind` applied `n` times.
pub fn iterate(kind: UnaryKind, n: u32, t: Term) -> Term {
    (0..n).fold(t, |acc, _| un(kind, acc))
}

pub fn bin(op: BinOp, a: Term, b: Term) -> Term {
    Term::Bin(op, Box::new(a), Box::new(b))
}

pub fn plus(a: Term, b: Term) -> Term {
    bin(BinOp::Plus, a, b)
}

pub fn minus(a: Term, b: Term) -> Term {
    bin(BinOp::Minus, a, b)
}

pub fn meet(a: Term, b: Term) -> Term {
    bin(BinOp::Meet, a, b)
}

pub fn join(a: Term, b: Term) -> Term {
    bin(BinOp::Join, a, b)
}

impl Term {
    /// Variable names in first-occurrence order.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(x) => {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            }
            Term::Const(_) => {}
            Term::Un(_, t) => t.collect_vars(out),
            Term::Bin(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Compositional evaluation. `x` is read as `j(½a ∔ ½b)` and `!` as
    /// `1̲ ∸ a`.
    pub fn eval(&self, v: &Valuation) -> Result<StepFunction, SemanticsError> {
        let l = v.lattice();
        Ok(match self {
            Term::Var(x) => v
                .get(x)
                .cloned()
                .ok_or_else(|| SemanticsError::UnboundAtom(x.clone()))?,
            Term::Const(d) => StepFunction::constant(l, d),
            Term::Un(kind, t) => t.eval(v)?.apply_unary(*kind),
            Term::Bin(op, a, b) => {
                let (x, y) = (a.eval(v)?, b.eval(v)?);
                match op {
                    BinOp::Plus => x.oplus(&y)?,
                    BinOp::Minus => x.ominus(&y)?,
                    BinOp::Meet => x.meet(&y)?,
                    BinOp::Join => x.join(&y)?,
                    BinOp::Odot => x.half().oplus(&y.half())?.jmap(),
                }
            }
        })
    }
}

impl Term {
    /// The formula this term denotes, if it avoids `l` and `l*`.
    pub fn to_formula(&self) -> Option<Formula> {
        Some(match self {
            Term::Var(x) => Formula::atom(x),
            Term::Const(d) => Formula::constant(d),
            Term::Un(kind, t) => {
                let op = match kind {
                    UnaryKind::Double => UnOp::Double,
                    UnaryKind::Half => UnOp::Half,
                    UnaryKind::Jstar => UnOp::Jstar,
                    UnaryKind::Jmap => UnOp::Jmap,
                    UnaryKind::Alpha => UnOp::Alpha,
                    UnaryKind::Beta => UnOp::BoxAlpha,
                    UnaryKind::Neg => UnOp::Neg,
                    UnaryKind::Ell | UnaryKind::Ellstar => return None,
                };
                Formula::un(op, t.to_formula()?)
            }
            Term::Bin(op, a, b) => Formula::bin(*op, a.to_formula()?, b.to_formula()?),
        })
    }
}

impl From<&Formula> for Term {
    fn from(f: &Formula) -> Term {
        match f {
            Formula::Atom(a) => Term::Var(a.clone()),
            Formula::Zero => Term::Const(Dyadic::zero()),
            Formula::One => Term::Const(Dyadic::one()),
            Formula::Const(d) => Term::Const(d.clone()),
            Formula::Unary(op, g) => {
                let kind = match op {
                    UnOp::Double => UnaryKind::Double,
                    UnOp::Half => UnaryKind::Half,
                    UnOp::Jstar => UnaryKind::Jstar,
                    UnOp::Jmap => UnaryKind::Jmap,
                    UnOp::Alpha => UnaryKind::Alpha,
                    UnOp::BoxAlpha => UnaryKind::Beta,
                    UnOp::Neg => UnaryKind::Neg,
                };
                un(kind, Term::from(&**g))
            }
            Formula::Binary(op, a, b) => bin(*op, Term::from(&**a), Term::from(&**b)),
        }
    }
}

fn unary_name(kind: UnaryKind) -> &'static str {
    match kind {
        UnaryKind::Double => "2",
        UnaryKind::Half => "h",
        UnaryKind::Jstar => "j*",
        UnaryKind::Jmap => "j",
        UnaryKind::Alpha => "al",
        UnaryKind::Beta => "be",
        UnaryKind::Ell => "l",
        UnaryKind::Ellstar => "l*",
        UnaryKind::Neg => "!",
    }
}

impl Term {
    fn write_at(&self, f: &mut fmt::Formatter<'_>, tight: bool) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::Const(d) => write!(f, "d({d})"),
            Term::Un(kind, t) => {
                write!(f, "{} ", unary_name(*kind))?;
                t.write_at(f, true)
            }
            Term::Bin(op, a, b) => {
                if tight {
                    f.write_str("(")?;
                }
                a.write_at(f, true)?;
                write!(f, " {} ", op.keyword())?;
                b.write_at(f, true)?;
                if tight {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, false)
    }
}
