//! Brute-force evaluation of the step-function operations straight from
//! their pointwise definitions, sampled on a grid fine enough to see every
//! open interval on which the inputs are constant.

#![allow(dead_code)]

use std::sync::Arc;

use acl_core::dyadic::Dyadic;
use acl_core::lattice::{Elem, FinitePoset, FiniteResiduatedLattice};
use acl_core::usc::StepFunction;

pub const BUILTINS: [&str; 5] = ["luk:2", "luk:3", "luk:4", "godel:3", "bool:2"];

/// The operations covered by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Oplus,
    Ominus,
    Join,
    Meet,
    Otimes,
    Residual,
    Double,
    Half,
    Jstar,
    Jmap,
    Alpha,
    Beta,
}

pub const ALL_OPS: [Op; 12] = [
    Op::Oplus,
    Op::Ominus,
    Op::Join,
    Op::Meet,
    Op::Otimes,
    Op::Residual,
    Op::Double,
    Op::Half,
    Op::Jstar,
    Op::Jmap,
    Op::Alpha,
    Op::Beta,
];

/// The library's answer for `op`.
pub fn symbolic(op: Op, f: &StepFunction, g: &StepFunction) -> StepFunction {
    match op {
        Op::Oplus => f.oplus(g).unwrap(),
        Op::Ominus => f.ominus(g).unwrap(),
        Op::Join => f.join(g).unwrap(),
        Op::Meet => f.meet(g).unwrap(),
        Op::Otimes => f.otimes(g).unwrap(),
        Op::Residual => f.residual(g).unwrap(),
        Op::Double => f.double(),
        Op::Half => f.half(),
        Op::Jstar => f.jstar(),
        Op::Jmap => f.jmap(),
        Op::Alpha => f.alpha(),
        Op::Beta => f.beta(),
    }
}

fn finest_exponent(fs: &[&StepFunction]) -> u32 {
    fs.iter()
        .flat_map(|f| f.breakpoints())
        .map(|d| d.exponent())
        .max()
        .unwrap_or(0)
}

/// Values of `f` at `k / 2^e` for `k = 0..=2^e`.
fn table(f: &StepFunction, e: u32) -> Vec<Elem> {
    (0..=1i64 << e)
        .map(|k| f.eval_at(&Dyadic::frac(k, e)))
        .collect()
}

/// The oracle's value of `op(f, g)` at every point `k / 2^c` of the
/// comparison grid, where `c` is returned alongside.
///
/// Inputs are tabulated four times finer than the comparison grid, so
/// suprema and infima over real arguments are attained at tabulated points.
pub fn brute_force(op: Op, f: &StepFunction, g: &StepFunction, c: u32) -> Vec<Elem> {
    let l: &FiniteResiduatedLattice = f.lattice();
    let e = c + 2;
    let n = 1usize << e;
    let (tf, tg) = (table(f, e), table(g, e));
    let (bot, top) = (l.bottom(), l.top());
    // Suprema over `p < q` where `p` runs over the half-step grid.
    let sup_below = |q: usize, term: &dyn Fn(usize) -> Elem| -> Elem {
        l.join_all((0..q).step_by(2).map(term))
    };
    let points = (0..=n).step_by(4);
    match op {
        Op::Oplus => points
            .map(|q| sup_below(q, &|p| l.otimes(tf[p], tg[q - p])))
            .collect(),
        Op::Ominus => {
            let inner: Vec<Elem> = (0..=n)
                .map(|p| l.meet_all((p..=n).map(|r| l.residual(tg[r - p], tf[r]))))
                .collect();
            points.map(|q| sup_below(q, &|p| inner[p])).collect()
        }
        Op::Residual => {
            let inner: Vec<Elem> = (0..=n)
                .map(|p| l.meet_all((p..=n).map(|r| l.residual(tf[r], tg[r]))))
                .collect();
            points.map(|q| sup_below(q, &|p| inner[p])).collect()
        }
        Op::Join => points
            .map(|q| sup_below(q, &|p| l.meet(tf[p], tg[p])))
            .collect(),
        Op::Meet => points.map(|q| l.join(tf[q], tg[q])).collect(),
        Op::Otimes => points.map(|q| l.otimes(tf[q], tg[q])).collect(),
        Op::Double => points.map(|q| tf[q / 2]).collect(),
        Op::Half => points
            .map(|q| if 2 * q <= n { tf[2 * q] } else { top })
            .collect(),
        Op::Jstar => points.map(|q| tf[(2 * q).saturating_sub(n)]).collect(),
        Op::Jmap => points
            .map(|q| if q == 0 { bot } else { tf[(q + n) / 2] })
            .collect(),
        Op::Alpha => points.map(|q| tf[(2 * q).min(q / 2 + n / 2)]).collect(),
        Op::Beta => points
            .map(|q| tf[(q / 2).max((2 * q).saturating_sub(n))])
            .collect(),
    }
}

/// Compares the library against the oracle on `{k/64}` and every result
/// breakpoint. Returns the first disagreeing point.
pub fn first_mismatch(op: Op, f: &StepFunction, g: &StepFunction) -> Option<Dyadic> {
    let result = symbolic(op, f, g);
    let c = finest_exponent(&[f, g, &result]).max(6) + 1;
    let expected = brute_force(op, f, g, c);
    let mut points: Vec<Dyadic> = (0..=64).map(|k| Dyadic::frac(k, 6)).collect();
    points.extend(result.breakpoints());
    points.into_iter().find(|q| {
        let k = q
            .scaled_integer(c)
            .expect("point lies on the comparison grid");
        let k: usize = k.try_into().expect("small index");
        result.eval_at(q) != expected[k]
    })
}

/// The pair `(f, g)` drawn for sample `i`.
pub fn sample_pair(
    l: &Arc<FiniteResiduatedLattice>,
    grid: u32,
    seed: u64,
    i: u64,
) -> (StepFunction, StepFunction) {
    let mut rng = acl_core::semantics::sample_rng(seed, i);
    let f = acl_core::semantics::random_step(l, grid, &mut rng);
    let g = acl_core::semantics::random_step(l, grid, &mut rng);
    (f, g)
}

/// `c` is the least upper bound of `set`, checked against every element.
pub fn is_least_upper_bound(p: &FinitePoset, set: &[usize], c: usize) -> bool {
    let upper = |u: usize| set.iter().all(|&s| p.leq(s, u));
    upper(c) && (0..p.size()).filter(|&u| upper(u)).all(|u| p.leq(c, u))
}

pub fn is_greatest_lower_bound(p: &FinitePoset, set: &[usize], c: usize) -> bool {
    let lower = |u: usize| set.iter().all(|&s| p.leq(u, s));
    lower(c) && (0..p.size()).filter(|&u| lower(u)).all(|u| p.leq(u, c))
}

pub fn every_pair_has_bounds(p: &FinitePoset) -> bool {
    let n = p.size();
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).any(|c| is_least_upper_bound(p, &[a, b], c))
                && (0..n).any(|c| is_greatest_lower_bound(p, &[a, b], c))
        })
    })
}
