//! Sup-preserving step functions `[0,1] → L` and the operations on them.
//!
//! A step function is stored as breakpoints `0 < t₁ < … < t_k = 1` with
//! values `v₁ < … < v_k` (strictly increasing in `L`): the function is `⊥` at
//! `0` and `v_i` on `(t_{i-1}, t_i]`. Such a function is left-continuous,
//! hence sup-preserving, and the canonical form (equal neighbours merged)
//! makes structural equality coincide with equality of functions.
//!
//! The order used throughout is the reverse pointwise order:
//! `f ≤ g ⇔ ∀q. g(q) ≤ f(q)`. Its least element `0̲` is `⊤` on `(0,1]` and its
//! greatest element `1̲` is constantly `⊥`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::lattice::{Elem, FiniteResiduatedLattice};

/// Errors raised by step-function construction and binary operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UscError {
    #[error("values are not monotone at breakpoint {0}")]
    NonMonotoneValues(Dyadic),
    #[error("breakpoint {0} lies outside (0,1]")]
    BreakpointOutOfRange(Dyadic),
    #[error("breakpoints are not strictly increasing at {0}")]
    UnsortedBreakpoints(Dyadic),
    #[error("the last breakpoint must be 1")]
    MissingFinalBreakpoint,
    #[error("operands live over different lattices (`{0}` and `{1}`)")]
    LatticeMismatch(String, String),
    #[error("unknown lattice element `{0}`")]
    UnknownElement(String),
    #[error("malformed step-function literal `{0}`")]
    Malformed(String),
}

/// Lattice-valued pointwise operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointwiseKind {
    Join,
    Meet,
    Otimes,
    Residual,
}

/// Unary operations with closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryKind {
    Double,
    Half,
    Jstar,
    Jmap,
    Alpha,
    Beta,
    Ell,
    Ellstar,
    Neg,
}

impl UnaryKind {
    pub const ALL: [UnaryKind; 9] = [
        UnaryKind::Double,
        UnaryKind::Half,
        UnaryKind::Jstar,
        UnaryKind::Jmap,
        UnaryKind::Alpha,
        UnaryKind::Beta,
        UnaryKind::Ell,
        UnaryKind::Ellstar,
        UnaryKind::Neg,
    ];
}

/// Iteration cap for the query-side `α` iteration used by `ellstar`.
pub const ELLSTAR_ITERATION_CAP: usize = 1_000_000;

/// An element of `USC(L)`.
#[derive(Clone)]
pub struct StepFunction {
    lattice: Arc<FiniteResiduatedLattice>,
    segments: Vec<(Dyadic, Elem)>,
}

impl PartialEq for StepFunction {
    fn eq(&self, other: &Self) -> bool {
        same_lattice(&self.lattice, &other.lattice) && self.segments == other.segments
    }
}

impl Eq for StepFunction {}

impl std::hash::Hash for StepFunction {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.segments.hash(state);
    }
}

fn same_lattice(a: &Arc<FiniteResiduatedLattice>, b: &Arc<FiniteResiduatedLattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn check_same(f: &StepFunction, g: &StepFunction) -> Result<(), UscError> {
    if same_lattice(&f.lattice, &g.lattice) {
        Ok(())
    } else {
        Err(UscError::LatticeMismatch(
            f.lattice.name().into(),
            g.lattice.name().into(),
        ))
    }
}

fn sorted_unique(mut v: Vec<Dyadic>) -> Vec<Dyadic> {
    v.sort();
    v.dedup();
    v
}

impl StepFunction {
    /// Validates breakpoint/value pairs and merges equal neighbours.
    pub fn normalize(
        lattice: Arc<FiniteResiduatedLattice>,
        raw: Vec<(Dyadic, Elem)>,
    ) -> Result<Self, UscError> {
        let zero = Dyadic::zero();
        let one = Dyadic::one();
        let mut prev_t: Option<&Dyadic> = None;
        for (i, (t, v)) in raw.iter().enumerate() {
            if *t <= zero || *t > one {
                return Err(UscError::BreakpointOutOfRange(t.clone()));
            }
            if let Some(p) = prev_t {
                if t <= p {
                    return Err(UscError::UnsortedBreakpoints(t.clone()));
                }
                if !lattice.leq(raw[i - 1].1, *v) {
                    return Err(UscError::NonMonotoneValues(t.clone()));
                }
            }
            if *v >= lattice.size() {
                return Err(UscError::UnknownElement(format!("#{v}")));
            }
            prev_t = Some(t);
        }
        match raw.last() {
            Some((t, _)) if t.is_one() => {}
            _ => return Err(UscError::MissingFinalBreakpoint),
        }
        Ok(Self::canonical(lattice, raw))
    }

    /// Merges equal neighbours; the input must already be well-formed.
    fn canonical(lattice: Arc<FiniteResiduatedLattice>, raw: Vec<(Dyadic, Elem)>) -> Self {
        let mut segments: Vec<(Dyadic, Elem)> = Vec::with_capacity(raw.len());
        for (t, v) in raw {
            match segments.last_mut() {
                Some(last) if last.1 == v => last.0 = t,
                _ => segments.push((t, v)),
            }
        }
        debug_assert!(segments.windows(2).all(|w| lattice.lt(w[0].1, w[1].1)));
        StepFunction { lattice, segments }
    }

    /// Builds a function from sorted right endpoints (the last being 1) and
    /// the value on each interval ending there.
    fn from_endpoints(
        lattice: &Arc<FiniteResiduatedLattice>,
        ends: Vec<Dyadic>,
        mut value: impl FnMut(&Dyadic) -> Elem,
    ) -> Self {
        let raw: Vec<(Dyadic, Elem)> = ends
            .into_iter()
            .map(|c| {
                let v = value(&c);
                (c, v)
            })
            .collect();
        Self::canonical(lattice.clone(), raw)
    }

    pub fn lattice(&self) -> &Arc<FiniteResiduatedLattice> {
        &self.lattice
    }

    /// `(breakpoint, value)` pairs in canonical form.
    pub fn segments(&self) -> &[(Dyadic, Elem)] {
        &self.segments
    }

    pub fn breakpoints(&self) -> Vec<Dyadic> {
        self.segments.iter().map(|s| s.0.clone()).collect()
    }

    /// `p̲`: `⊤` above `p`, `⊥` up to and including `p`.
    pub fn constant(lattice: &Arc<FiniteResiduatedLattice>, p: &Dyadic) -> Self {
        let p = p.clamp_unit();
        let (b, t) = (lattice.bottom(), lattice.top());
        let raw = if p.is_zero() {
            vec![(Dyadic::one(), t)]
        } else if p.is_one() {
            vec![(Dyadic::one(), b)]
        } else {
            vec![(p, b), (Dyadic::one(), t)]
        };
        Self::canonical(lattice.clone(), raw)
    }

    /// `0_U`: `⊥` at 0 and `U` on `(0,1]`.
    pub fn indicator(lattice: &Arc<FiniteResiduatedLattice>, u: Elem) -> Self {
        Self::canonical(lattice.clone(), vec![(Dyadic::one(), u)])
    }

    /// The least element `0̲`.
    pub fn bottom(lattice: &Arc<FiniteResiduatedLattice>) -> Self {
        Self::indicator(lattice, lattice.top())
    }

    /// The greatest element `1̲`.
    pub fn top(lattice: &Arc<FiniteResiduatedLattice>) -> Self {
        Self::indicator(lattice, lattice.bottom())
    }

    /// `f(q)`; `⊥` at 0.
    pub fn eval_at(&self, q: &Dyadic) -> Elem {
        if *q <= Dyadic::zero() {
            return self.lattice.bottom();
        }
        for (t, v) in &self.segments {
            if q <= t {
                return *v;
            }
        }
        self.segments
            .last()
            .map(|s| s.1)
            .unwrap_or(self.lattice.bottom())
    }

    /// Value of the first segment, i.e. the right limit at 0.
    pub fn first_value(&self) -> Elem {
        self.segments[0].1
    }

    /// `f(1)`.
    pub fn value_at_one(&self) -> Elem {
        self.segments[self.segments.len() - 1].1
    }

    fn union_ends(f: &StepFunction, g: &StepFunction) -> Vec<Dyadic> {
        sorted_unique(
            f.segments
                .iter()
                .chain(&g.segments)
                .map(|s| s.0.clone())
                .collect(),
        )
    }

    /// The reverse pointwise order: `g(q) ≤ f(q)` everywhere.
    pub fn leq(&self, other: &StepFunction) -> Result<bool, UscError> {
        check_same(self, other)?;
        let l = &self.lattice;
        Ok(Self::union_ends(self, other)
            .iter()
            .all(|c| l.leq(other.eval_at(c), self.eval_at(c))))
    }

    /// `join`, `meet`, `otimes` or `residual`, computed on the common refinement.
    pub fn lattice_pointwise(
        kind: PointwiseKind,
        f: &StepFunction,
        g: &StepFunction,
    ) -> Result<StepFunction, UscError> {
        check_same(f, g)?;
        let l = f.lattice.clone();
        let ends = Self::union_ends(f, g);
        Ok(match kind {
            PointwiseKind::Join => {
                Self::from_endpoints(&l, ends, |c| l.meet(f.eval_at(c), g.eval_at(c)))
            }
            PointwiseKind::Meet => {
                Self::from_endpoints(&l, ends, |c| l.join(f.eval_at(c), g.eval_at(c)))
            }
            PointwiseKind::Otimes => {
                Self::from_endpoints(&l, ends, |c| l.otimes(f.eval_at(c), g.eval_at(c)))
            }
            PointwiseKind::Residual => {
                let raw: Vec<Elem> = ends
                    .iter()
                    .map(|c| l.residual(f.eval_at(c), g.eval_at(c)))
                    .collect();
                let mut suffix = vec![l.top(); raw.len()];
                let mut acc = l.top();
                for i in (0..raw.len()).rev() {
                    acc = l.meet(acc, raw[i]);
                    suffix[i] = acc;
                }
                let pairs = ends.into_iter().zip(suffix).collect();
                Self::canonical(l, pairs)
            }
        })
    }

    pub fn join(&self, g: &StepFunction) -> Result<StepFunction, UscError> {
        Self::lattice_pointwise(PointwiseKind::Join, self, g)
    }

    pub fn meet(&self, g: &StepFunction) -> Result<StepFunction, UscError> {
        Self::lattice_pointwise(PointwiseKind::Meet, self, g)
    }

    pub fn otimes(&self, g: &StepFunction) -> Result<StepFunction, UscError> {
        Self::lattice_pointwise(PointwiseKind::Otimes, self, g)
    }

    pub fn residual(&self, g: &StepFunction) -> Result<StepFunction, UscError> {
        Self::lattice_pointwise(PointwiseKind::Residual, self, g)
    }

    /// Segment lower ends `t_{i-1}` paired with values.
    fn lower_ends(&self) -> Vec<(Dyadic, Elem)> {
        let mut out = Vec::with_capacity(self.segments.len());
        let mut lo = Dyadic::zero();
        for (t, v) in &self.segments {
            out.push((lo.clone(), *v));
            lo = t.clone();
        }
        out
    }

    /// `(f ∔ g)(q) = ⋁_{p<q} f(p) ⊗ g(q−p)`.
    ///
    /// The supremum is `⋁{a_i ⊗ b_j : s_{i-1} + t_{j-1} < q}` over the
    /// segments of `f` and `g`, so the result only jumps at such sums.
    pub fn oplus(&self, g: &StepFunction) -> Result<StepFunction, UscError> {
        check_same(self, g)?;
        let l = self.lattice.clone();
        let fa = self.lower_ends();
        let gb = g.lower_ends();
        let mut pairs: Vec<(Dyadic, Elem)> = Vec::with_capacity(fa.len() * gb.len());
        for (s, a) in &fa {
            for (t, b) in &gb {
                let sum = s.add(t);
                if sum < Dyadic::one() {
                    pairs.push((sum, l.otimes(*a, *b)));
                }
            }
        }
        let mut ends: Vec<Dyadic> = pairs
            .iter()
            .map(|p| p.0.clone())
            .filter(|d| !d.is_zero())
            .collect();
        ends.push(Dyadic::one());
        let ends = sorted_unique(ends);
        Ok(Self::from_endpoints(&l, ends, |c| {
            l.join_all(pairs.iter().filter(|p| p.0 < *c).map(|p| p.1))
        }))
    }

    /// `(f ∸ g)(q) = ⋁_{p<q} ⋀_{r≥p} g(r−p) ⊸ f(r)`, the residual of `∔`.
    ///
    /// For fixed `p` the inner meet ranges over the segment pairs `(i, j)`
    /// with `s_{i-1} − t_j < p < s_i − t_{j-1}`; it is therefore constant on
    /// the open gaps between the differences of breakpoints, and the outer
    /// join is accumulated over those gaps and the differences themselves.
    pub fn ominus(&self, g: &StepFunction) -> Result<StepFunction, UscError> {
        check_same(self, g)?;
        let l = self.lattice.clone();
        let f_lo = self.lower_ends();
        let g_lo = g.lower_ends();
        let fs: Vec<(Dyadic, Dyadic, Elem)> = self
            .segments
            .iter()
            .zip(&f_lo)
            .map(|((hi, v), (lo, _))| (lo.clone(), hi.clone(), *v))
            .collect();
        let gs: Vec<(Dyadic, Dyadic, Elem)> = g
            .segments
            .iter()
            .zip(&g_lo)
            .map(|((hi, v), (lo, _))| (lo.clone(), hi.clone(), *v))
            .collect();
        let inner = |p: &Dyadic| -> Elem {
            let mut acc = l.top();
            for (s_lo, s_hi, a) in &fs {
                for (t_lo, t_hi, b) in &gs {
                    if s_lo.sub(t_hi) < *p && *p < s_hi.sub(t_lo) {
                        acc = l.meet(acc, l.residual(*b, *a));
                    }
                }
            }
            acc
        };
        let mut points: Vec<Dyadic> = vec![Dyadic::zero()];
        let f_pts: Vec<Dyadic> = std::iter::once(Dyadic::zero())
            .chain(self.segments.iter().map(|s| s.0.clone()))
            .collect();
        let g_pts: Vec<Dyadic> = std::iter::once(Dyadic::zero())
            .chain(g.segments.iter().map(|s| s.0.clone()))
            .collect();
        for s in &f_pts {
            for t in &g_pts {
                let d = s.sub(t);
                if d >= Dyadic::zero() && d < Dyadic::one() {
                    points.push(d);
                }
            }
        }
        let points = sorted_unique(points);
        let mut raw: Vec<(Dyadic, Elem)> = Vec::with_capacity(points.len());
        let mut acc = l.bottom();
        for (m, d) in points.iter().enumerate() {
            let next = points.get(m + 1).cloned().unwrap_or_else(Dyadic::one);
            let mid = d.add(&next).half();
            acc = l.join(acc, l.join(inner(d), inner(&mid)));
            raw.push((next, acc));
        }
        let out = Self::canonical(l, raw);
        Ok(out)
    }

    /// `f ∘ φ` for a monotone reparametrisation `φ` of `(0,1]`, where `ψ(t)`
    /// is the largest `q` with `φ(q) ≤ t`. The result only jumps at `ψ(0)`
    /// and at the images `ψ(t_i)` of the breakpoints.
    fn compose(
        &self,
        phi: impl Fn(&Dyadic) -> Dyadic,
        psi: impl Fn(&Dyadic) -> Dyadic,
    ) -> StepFunction {
        let zero = Dyadic::zero();
        let one = Dyadic::one();
        let mut ends: Vec<Dyadic> = vec![one.clone(), psi(&zero)];
        ends.extend(self.segments.iter().map(|s| psi(&s.0)));
        let ends: Vec<Dyadic> = sorted_unique(
            ends.into_iter()
                .map(|d| d.clamp_unit())
                .filter(|d| *d > zero)
                .collect(),
        );
        Self::from_endpoints(&self.lattice, ends, |c| self.eval_at(&phi(c)))
    }

    /// One of the unary operations.
    pub fn apply_unary(&self, kind: UnaryKind) -> StepFunction {
        let one = Dyadic::one();
        match kind {
            UnaryKind::Double => self.compose(|q| q.half(), |t| t.double_trunc()),
            UnaryKind::Half => {
                let top = self.lattice.top();
                let mut ends: Vec<Dyadic> = vec![one.clone(), one.half()];
                ends.extend(self.segments.iter().map(|s| s.0.half()));
                Self::from_endpoints(&self.lattice, sorted_unique(ends), |c| {
                    let x = c.double();
                    if x > one {
                        top
                    } else {
                        self.eval_at(&x)
                    }
                })
            }
            UnaryKind::Jstar => self.compose(|q| q.j(), |t| t.jstar()),
            UnaryKind::Jmap => self.compose(
                |q| q.jstar(),
                |t| if t.is_one() { one.clone() } else { t.j() },
            ),
            UnaryKind::Alpha => self.compose(|q| q.beta(), |t| t.alpha()),
            UnaryKind::Beta => self.compose(|q| q.alpha(), |t| t.beta()),
            UnaryKind::Ell => Self::indicator(&self.lattice, self.value_at_one()),
            UnaryKind::Ellstar => {
                let floor = self.segments[0].0.clone();
                let l = &self.lattice;
                let mut probe = Dyadic::frac(1, 1);
                let mut value = self.eval_at(&probe);
                let mut steps = 0;
                while probe > floor && steps < ELLSTAR_ITERATION_CAP {
                    probe = probe.alpha();
                    value = l.meet(value, self.eval_at(&probe));
                    steps += 1;
                }
                Self::indicator(l, value)
            }
            UnaryKind::Neg => Self::constant(&self.lattice, &one)
                .ominus(self)
                .expect("constant shares the lattice"),
        }
    }

    pub fn double(&self) -> StepFunction {
        self.apply_unary(UnaryKind::Double)
    }

    pub fn half(&self) -> StepFunction {
        self.apply_unary(UnaryKind::Half)
    }

    pub fn jstar(&self) -> StepFunction {
        self.apply_unary(UnaryKind::Jstar)
    }

    pub fn jmap(&self) -> StepFunction {
        self.apply_unary(UnaryKind::Jmap)
    }

    pub fn alpha(&self) -> StepFunction {
        self.apply_unary(UnaryKind::Alpha)
    }

    pub fn beta(&self) -> StepFunction {
        self.apply_unary(UnaryKind::Beta)
    }

    pub fn neg(&self) -> StepFunction {
        self.apply_unary(UnaryKind::Neg)
    }

    /// `■α(f) = 2f ∧ j_*(f)`.
    pub fn box_alpha(&self) -> StepFunction {
        self.double().meet(&self.jstar()).expect("same lattice")
    }

    /// The least `q` such that `f` is `⊤` on `(q,1]`, or 1 if `f(1) ≠ ⊤`.
    pub fn norm(&self) -> Dyadic {
        let n = self.segments.len();
        if self.segments[n - 1].1 != self.lattice.top() {
            return Dyadic::one();
        }
        if n == 1 {
            Dyadic::zero()
        } else {
            self.segments[n - 2].0.clone()
        }
    }

    /// `max(‖f ∸ g‖, ‖g ∸ f‖)`.
    pub fn dist(&self, g: &StepFunction) -> Result<Dyadic, UscError> {
        Ok(self.ominus(g)?.norm().max(g.ominus(self)?.norm()))
    }

    /// `f ≤ g ∔ 1/2ⁿ`.
    pub fn leq_within(&self, g: &StepFunction, n: u32) -> Result<bool, UscError> {
        let eps = Self::constant(&self.lattice, &Dyadic::pow2_inv(n));
        self.leq(&g.oplus(&eps)?)
    }

    /// Parses `step(t1=v1,...,1=vk)`, `const(p)` or `ind(U)`.
    pub fn parse_literal(
        lattice: &Arc<FiniteResiduatedLattice>,
        text: &str,
    ) -> Result<StepFunction, UscError> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || UscError::Malformed(text.to_string());
        let inner = |prefix: &str| -> Option<String> {
            t.strip_prefix(prefix)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
                .map(str::to_string)
        };
        let elem = |name: &str| {
            lattice
                .element(name)
                .ok_or_else(|| UscError::UnknownElement(name.to_string()))
        };
        if let Some(body) = inner("const") {
            let p = Dyadic::from_str(&body).map_err(|_| bad())?;
            if !p.in_unit() {
                return Err(UscError::BreakpointOutOfRange(p));
            }
            return Ok(Self::constant(lattice, &p));
        }
        if let Some(body) = inner("ind") {
            return Ok(Self::indicator(lattice, elem(&body)?));
        }
        if let Some(body) = inner("step") {
            let mut raw = Vec::new();
            for part in body.split(',') {
                let (tp, vp) = part.split_once('=').ok_or_else(bad)?;
                let d = Dyadic::from_str(tp).map_err(|_| bad())?;
                raw.push((d, elem(vp)?));
            }
            return Self::normalize(lattice.clone(), raw);
        }
        Err(bad())
    }
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step(")?;
        for (i, (t, v)) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}={}", t, self.lattice.element_name(*v))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_builtin, Family};

    fn lat(f: Family, n: usize) -> Arc<FiniteResiduatedLattice> {
        Arc::new(make_builtin(f, n).unwrap())
    }

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn c(l: &Arc<FiniteResiduatedLattice>, s: &str) -> StepFunction {
        StepFunction::constant(l, &d(s))
    }

    #[test]
    fn normalize_merges_and_rejects() {
        let l = lat(Family::Lukasiewicz, 3);
        let h = l.element("h").unwrap();
        let f = StepFunction::normalize(l.clone(), vec![(d("1/2"), h), (d("1"), h)]).unwrap();
        assert_eq!(f, StepFunction::indicator(&l, h));
        let two = lat(Family::Boolean, 1);
        let g = StepFunction::normalize(
            two.clone(),
            vec![(d("1/2"), two.bottom()), (d("1"), two.top())],
        )
        .unwrap();
        assert_eq!(g, c(&two, "1/2"));
        let bad = StepFunction::normalize(
            two.clone(),
            vec![(d("1/2"), two.top()), (d("1"), two.bottom())],
        );
        assert!(matches!(bad, Err(UscError::NonMonotoneValues(_))));
        let bad = StepFunction::normalize(two.clone(), vec![(d("3/2"), two.top())]);
        assert!(matches!(bad, Err(UscError::BreakpointOutOfRange(_))));
        let bad = StepFunction::normalize(
            two.clone(),
            vec![
                (d("1/2"), two.bottom()),
                (d("1/4"), two.top()),
                (d("1"), two.top()),
            ],
        );
        assert!(matches!(bad, Err(UscError::UnsortedBreakpoints(_))));
    }

    #[test]
    fn point_evaluation() {
        let l = lat(Family::Lukasiewicz, 3);
        let h = l.element("h").unwrap();
        let ind = StepFunction::indicator(&l, h);
        assert_eq!(ind.eval_at(&Dyadic::one()), h);
        assert_eq!(ind.eval_at(&Dyadic::zero()), l.bottom());
        let half = c(&l, "1/2");
        assert_eq!(half.eval_at(&d("1/2")), l.bottom());
        assert_eq!(half.eval_at(&d("5/8")), l.top());
    }

    #[test]
    fn order_on_constants_and_bounds() {
        let l = lat(Family::Godel, 3);
        let f = StepFunction::indicator(&l, 1);
        assert!(StepFunction::bottom(&l).leq(&f).unwrap());
        assert!(f.leq(&StepFunction::top(&l)).unwrap());
        assert!(c(&l, "1/4").leq(&c(&l, "3/4")).unwrap());
        assert!(!c(&l, "3/4").leq(&c(&l, "1/4")).unwrap());
        assert_eq!(c(&l, "0"), StepFunction::bottom(&l));
        assert_eq!(c(&l, "1"), StepFunction::top(&l));
        assert_eq!(StepFunction::top(&l).half(), c(&l, "1/2"));
    }

    #[test]
    fn constant_arithmetic() {
        let l = lat(Family::Boolean, 1);
        assert_eq!(c(&l, "1/4").otimes(&c(&l, "3/4")).unwrap(), c(&l, "3/4"));
        assert_eq!(c(&l, "1/4").oplus(&c(&l, "1/2")).unwrap(), c(&l, "3/4"));
        assert_eq!(c(&l, "3/4").oplus(&c(&l, "1/2")).unwrap(), c(&l, "1"));
        assert_eq!(c(&l, "3/4").ominus(&c(&l, "1/4")).unwrap(), c(&l, "1/2"));
        assert_eq!(c(&l, "1/4").ominus(&c(&l, "3/4")).unwrap(), c(&l, "0"));
        assert_eq!(c(&l, "1/4").double(), c(&l, "1/2"));
        assert_eq!(c(&l, "1/2").half(), c(&l, "1/4"));
        assert_eq!(c(&l, "1/2").jstar(), c(&l, "3/4"));
        assert_eq!(c(&l, "3/4").jmap(), c(&l, "1/2"));
        assert_eq!(c(&l, "3/4").alpha(), c(&l, "1/2"));
        assert_eq!(c(&l, "1/2").beta(), c(&l, "3/4"));
    }

    #[test]
    fn units_and_bounds() {
        let l = lat(Family::Lukasiewicz, 4);
        let f = StepFunction::normalize(l.clone(), vec![(d("1/4"), 0), (d("5/8"), 1), (d("1"), 3)])
            .unwrap();
        let zero = StepFunction::bottom(&l);
        let one = StepFunction::top(&l);
        assert_eq!(f.join(&zero).unwrap(), f);
        assert_eq!(f.meet(&one).unwrap(), f);
        assert_eq!(zero.residual(&f).unwrap(), f);
        assert_eq!(f.oplus(&zero).unwrap(), f);
        assert_eq!(f.ominus(&zero).unwrap(), f);
    }

    #[test]
    fn indicators_add_by_otimes() {
        let l = lat(Family::Lukasiewicz, 3);
        for u in l.elements() {
            for v in l.elements() {
                let iu = StepFunction::indicator(&l, u);
                let iv = StepFunction::indicator(&l, v);
                assert_eq!(
                    iu.oplus(&iv).unwrap(),
                    StepFunction::indicator(&l, l.otimes(u, v))
                );
                assert_eq!(
                    iu.ominus(&iv).unwrap(),
                    StepFunction::indicator(&l, l.residual(v, u))
                );
            }
        }
    }

    #[test]
    fn ell_and_ellstar() {
        let l = lat(Family::Boolean, 1);
        assert_eq!(
            c(&l, "1/2").apply_unary(UnaryKind::Ell),
            StepFunction::bottom(&l)
        );
        assert_eq!(
            c(&l, "1").apply_unary(UnaryKind::Ell),
            StepFunction::top(&l)
        );
        let l3 = lat(Family::Lukasiewicz, 3);
        for u in l3.elements() {
            let iu = StepFunction::indicator(&l3, u);
            assert_eq!(iu.apply_unary(UnaryKind::Ellstar), iu);
        }
    }

    #[test]
    fn negation_involutive_only_when_lattice_is() {
        let luk = lat(Family::Lukasiewicz, 3);
        let h = luk.element("h").unwrap();
        let f =
            StepFunction::normalize(luk.clone(), vec![(d("1/4"), 0), (d("3/4"), h), (d("1"), 2)])
                .unwrap();
        assert_eq!(f.neg().neg(), f);
        let god = lat(Family::Godel, 3);
        let g = StepFunction::indicator(&god, 1);
        assert_ne!(g.neg().neg(), g);
    }

    #[test]
    fn norms_and_distances() {
        let l = lat(Family::Boolean, 1);
        assert_eq!(c(&l, "3/8").norm(), d("3/8"));
        assert_eq!(c(&l, "1/4").dist(&c(&l, "3/4")).unwrap(), d("1/2"));
        assert_eq!(c(&l, "1/4").dist(&c(&l, "1/4")).unwrap(), Dyadic::zero());
        assert!(c(&l, "1/2").leq_within(&c(&l, "1/4"), 2).unwrap());
        assert!(!c(&l, "1/2").leq_within(&c(&l, "1/4"), 3).unwrap());
    }

    #[test]
    fn literals_roundtrip() {
        let l = lat(Family::Lukasiewicz, 3);
        let f = StepFunction::parse_literal(&l, "step(1/4=0, 1=h)").unwrap();
        assert_eq!(f.to_string(), "step(1/4=0,1=1/2)");
        assert_eq!(StepFunction::parse_literal(&l, &f.to_string()).unwrap(), f);
        assert_eq!(
            StepFunction::parse_literal(&l, "const(3/2^2)").unwrap(),
            c(&l, "3/4")
        );
        assert_eq!(
            StepFunction::parse_literal(&l, "ind(1)").unwrap(),
            StepFunction::bottom(&l)
        );
        assert!(StepFunction::parse_literal(&l, "step(1=z)").is_err());
    }

    #[test]
    fn lattice_mismatch_is_reported() {
        let a = lat(Family::Lukasiewicz, 3);
        let b = lat(Family::Godel, 3);
        let r = StepFunction::bottom(&a).oplus(&StepFunction::bottom(&b));
        assert!(matches!(r, Err(UscError::LatticeMismatch(..))));
    }
}
