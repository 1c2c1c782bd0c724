//! Finite commutative integral residuated lattices.
//!
//! A lattice is given by tables over opaque string element ids. Validation
//! checks the order, the monoid laws and integrality exhaustively and always
//! recomputes the residual `b ⊸ c = max{a : a ⊗ b ≤ c}` from `⊗`.

mod algebraic;
mod format;
mod macneille;

pub use algebraic::{satisfies_rule_algebraically, AlgebraicRuleError, RuleLanguage};
pub use format::{parse_lattice_file, write_lattice_file, LatticeFileError};
pub use macneille::{
    dm_completion, order_isomorphic, random_poset, Completion, FinitePoset, PosetError,
};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Index of an element inside its lattice.
pub type Elem = usize;

/// Raw, unvalidated lattice tables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawLattice {
    pub name: String,
    pub elements: Vec<String>,
    pub bottom: String,
    pub top: String,
    /// Generating pairs of the order; the reflexive-transitive closure is taken.
    pub leq: Vec<(String, String)>,
    /// Entries `(a, b, a ⊗ b)`; the full table is required.
    pub otimes: Vec<(String, String, String)>,
    /// Optional supplied residual entries `(b, c, b ⊸ c)`, checked against the computed one.
    pub residual: Vec<(String, String, String)>,
}

/// Why a lattice description was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("element `{0}` is declared twice")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order is not antisymmetric: `{0}` and `{1}` are mutually below each other")]
    NotAntisymmetric(String, String),
    #[error("not a lattice: {0}")]
    NotLattice(String),
    #[error("otimes table has no entry for (`{0}`, `{1}`)")]
    IncompleteTable(String, String),
    #[error("otimes table has two entries for (`{0}`, `{1}`)")]
    ConflictingEntry(String, String),
    #[error("otimes is not commutative: `{0}` ⊗ `{1}`")]
    NotCommutative(String, String),
    #[error("otimes is not associative on (`{0}`, `{1}`, `{2}`)")]
    NotAssociative(String, String, String),
    #[error("top is not the otimes unit: top ⊗ `{0}` ≠ `{0}`")]
    NotIntegral(String),
    #[error("otimes is not monotone: `{0}` ≤ `{1}` but `{0}` ⊗ `{2}` ≰ `{1}` ⊗ `{2}`")]
    NotMonotone(String, String, String),
    #[error("no greatest a with a ⊗ `{0}` ≤ `{1}`")]
    MissingResidual(String, String),
    #[error("supplied residual `{0}` ⊸ `{1}` = `{2}` disagrees with computed `{3}`")]
    ResidualMismatch(String, String, String, String),
    #[error("size {size} out of range for {family} (allowed {min}..={max})")]
    SizeOutOfRange {
        family: String,
        size: usize,
        min: usize,
        max: usize,
    },
    #[error("unknown lattice specifier `{0}`")]
    UnknownSpecifier(String),
    #[error("{0}")]
    File(String),
}

/// The builtin families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Lukasiewicz,
    Godel,
    Boolean,
}

/// A validated finite commutative integral residuated lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteResiduatedLattice {
    name: String,
    names: Vec<String>,
    index: HashMap<String, Elem>,
    aliases: HashMap<String, Elem>,
    bottom: Elem,
    top: Elem,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    otimes: Vec<Elem>,
    residual: Vec<Elem>,
}

/// Result of [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeClassification {
    pub is_locale: bool,
    pub is_involutive: bool,
    pub is_boolean: bool,
}

impl fmt::Debug for FiniteResiduatedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice({}, {:?})", self.name, self.names)
    }
}

impl FiniteResiduatedLattice {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.names.len()
    }

    pub fn element_name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    /// Looks up an element by id or by a registered synonym.
    pub fn element(&self, name: &str) -> Option<Elem> {
        self.index
            .get(name)
            .or_else(|| self.aliases.get(name))
            .copied()
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.names.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.names.len() + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.names.len() + b]
    }

    #[inline]
    pub fn otimes(&self, a: Elem, b: Elem) -> Elem {
        self.otimes[a * self.names.len() + b]
    }

    /// `b ⊸ c`, the greatest `a` with `a ⊗ b ≤ c`.
    #[inline]
    pub fn residual(&self, b: Elem, c: Elem) -> Elem {
        self.residual[b * self.names.len() + c]
    }

    /// `x ⊸ ⊥`.
    pub fn neg(&self, x: Elem) -> Elem {
        self.residual(x, self.bottom)
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// The raw tables this lattice was built from (with the computed residual).
    pub fn to_raw(&self) -> RawLattice {
        let n = self.size();
        let mut raw = RawLattice {
            name: self.name.clone(),
            elements: self.names.clone(),
            bottom: self.names[self.bottom].clone(),
            top: self.names[self.top].clone(),
            ..Default::default()
        };
        for a in 0..n {
            for b in 0..n {
                if self.leq(a, b) {
                    raw.leq.push((self.names[a].clone(), self.names[b].clone()));
                }
                raw.otimes.push((
                    self.names[a].clone(),
                    self.names[b].clone(),
                    self.names[self.otimes(a, b)].clone(),
                ));
            }
        }
        raw
    }

    /// Element chains ordered bottom-up: every strictly increasing sequence
    /// of elements, used by the step-function sampler.
    pub fn strict_chains_from_bottom(&self) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        let mut stack = vec![vec![]];
        while let Some(ch) = stack.pop() {
            let last: Option<Elem> = ch.last().copied();
            for e in self.elements() {
                let ok = match last {
                    None => true,
                    Some(l) => self.lt(l, e),
                };
                if ok {
                    let mut c2 = ch.clone();
                    c2.push(e);
                    stack.push(c2.clone());
                    out.push(c2);
                }
            }
        }
        out.sort();
        out
    }
}

/// Validates raw tables, producing a lattice with the computed residual.
pub fn validate(raw: &RawLattice) -> Result<FiniteResiduatedLattice, LatticeError> {
    let n = raw.elements.len();
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    let mut index = HashMap::new();
    for (i, e) in raw.elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(LatticeError::DuplicateElement(e.clone()));
        }
    }
    let id = |s: &str| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| LatticeError::UnknownElement(s.to_string()))
    };
    let names = raw.elements.clone();
    let bottom = id(&raw.bottom)?;
    let top = id(&raw.top)?;

    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for (a, b) in &raw.leq {
        let (a, b) = (id(a)?, id(b)?);
        leq[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if leq[a * n + b] && leq[b * n + a] {
                return Err(LatticeError::NotAntisymmetric(
                    names[a].clone(),
                    names[b].clone(),
                ));
            }
        }
    }
    for x in 0..n {
        if !leq[bottom * n + x] {
            return Err(LatticeError::NotLattice(format!(
                "`{}` is not below `{}`, so it is not the bottom",
                names[bottom], names[x]
            )));
        }
        if !leq[x * n + top] {
            return Err(LatticeError::NotLattice(format!(
                "`{}` is not above `{}`, so it is not the top",
                names[top], names[x]
            )));
        }
    }

    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let lows: Vec<Elem> = (0..n)
                .filter(|&x| leq[x * n + a] && leq[x * n + b])
                .collect();
            let glb = lows
                .iter()
                .copied()
                .find(|&m| lows.iter().all(|&x| leq[x * n + m]));
            let ups: Vec<Elem> = (0..n)
                .filter(|&x| leq[a * n + x] && leq[b * n + x])
                .collect();
            let lub = ups
                .iter()
                .copied()
                .find(|&m| ups.iter().all(|&x| leq[m * n + x]));
            match (glb, lub) {
                (Some(g), Some(l)) => {
                    meet[a * n + b] = g;
                    join[a * n + b] = l;
                }
                (None, _) => {
                    return Err(LatticeError::NotLattice(format!(
                        "`{}` and `{}` have no meet",
                        names[a], names[b]
                    )))
                }
                (_, None) => {
                    return Err(LatticeError::NotLattice(format!(
                        "`{}` and `{}` have no join",
                        names[a], names[b]
                    )))
                }
            }
        }
    }

    let mut table: Vec<Option<Elem>> = vec![None; n * n];
    for (a, b, c) in &raw.otimes {
        let (a, b, c) = (id(a)?, id(b)?, id(c)?);
        match table[a * n + b] {
            Some(prev) if prev != c => {
                return Err(LatticeError::ConflictingEntry(
                    names[a].clone(),
                    names[b].clone(),
                ))
            }
            _ => table[a * n + b] = Some(c),
        }
    }
    let mut otimes = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            otimes[a * n + b] = table[a * n + b]
                .ok_or_else(|| LatticeError::IncompleteTable(names[a].clone(), names[b].clone()))?;
        }
    }
    let ot = |a: Elem, b: Elem| otimes[a * n + b];
    for a in 0..n {
        for b in 0..n {
            if ot(a, b) != ot(b, a) {
                return Err(LatticeError::NotCommutative(
                    names[a].clone(),
                    names[b].clone(),
                ));
            }
        }
    }
    for (a, name) in names.iter().enumerate() {
        if ot(top, a) != a {
            return Err(LatticeError::NotIntegral(name.clone()));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !leq[a * n + b] {
                continue;
            }
            for c in 0..n {
                if !leq[ot(a, c) * n + ot(b, c)] {
                    return Err(LatticeError::NotMonotone(
                        names[a].clone(),
                        names[b].clone(),
                        names[c].clone(),
                    ));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if ot(ot(a, b), c) != ot(a, ot(b, c)) {
                    return Err(LatticeError::NotAssociative(
                        names[a].clone(),
                        names[b].clone(),
                        names[c].clone(),
                    ));
                }
            }
        }
    }

    let mut residual = vec![0; n * n];
    for b in 0..n {
        for c in 0..n {
            let below: Vec<Elem> = (0..n).filter(|&a| leq[ot(a, b) * n + c]).collect();
            let greatest = below
                .iter()
                .copied()
                .find(|&m| below.iter().all(|&x| leq[x * n + m]));
            match greatest {
                Some(g) => residual[b * n + c] = g,
                None => {
                    return Err(LatticeError::MissingResidual(
                        names[b].clone(),
                        names[c].clone(),
                    ))
                }
            }
        }
    }
    for (b, c, r) in &raw.residual {
        let (bi, ci, ri) = (id(b)?, id(c)?, id(r)?);
        if residual[bi * n + ci] != ri {
            return Err(LatticeError::ResidualMismatch(
                b.clone(),
                c.clone(),
                r.clone(),
                names[residual[bi * n + ci]].clone(),
            ));
        }
    }

    let mut aliases = HashMap::new();
    if index.contains_key("1/2") && !index.contains_key("h") {
        aliases.insert("h".to_string(), index["1/2"]);
    }
    Ok(FiniteResiduatedLattice {
        name: raw.name.clone(),
        names,
        index,
        aliases,
        bottom,
        top,
        leq,
        meet,
        join,
        otimes,
        residual,
    })
}

fn chain_name(k: usize, m: usize) -> String {
    if k == 0 {
        return "0".into();
    }
    if k == m {
        return "1".into();
    }
    let g = num_integer::gcd(k, m);
    format!("{}/{}", k / g, m / g)
}

/// Builds one of the builtin lattices.
///
/// Chains of length `size` (at least 2) carry the elements
/// `0, 1/(size-1), ..., 1` as reduced fractions; the Boolean family is the
/// powerset of `size` atoms (1 to 6) named by atom letters, with `0` for the
/// empty set and `1` for the full set. The synonym `h` is accepted for `1/2`.
pub fn make_builtin(family: Family, size: usize) -> Result<FiniteResiduatedLattice, LatticeError> {
    match family {
        Family::Lukasiewicz | Family::Godel => {
            if !(2..=64).contains(&size) {
                let fam = if family == Family::Lukasiewicz {
                    "luk"
                } else {
                    "godel"
                };
                return Err(LatticeError::SizeOutOfRange {
                    family: fam.into(),
                    size,
                    min: 2,
                    max: 64,
                });
            }
            let m = size - 1;
            let names: Vec<String> = (0..size).map(|k| chain_name(k, m)).collect();
            let mut raw = RawLattice {
                name: format!(
                    "{}:{}",
                    if family == Family::Lukasiewicz {
                        "luk"
                    } else {
                        "godel"
                    },
                    size
                ),
                elements: names.clone(),
                bottom: names[0].clone(),
                top: names[m].clone(),
                ..Default::default()
            };
            for k in 0..m {
                raw.leq.push((names[k].clone(), names[k + 1].clone()));
            }
            for a in 0..size {
                for b in 0..size {
                    let c = match family {
                        Family::Lukasiewicz => (a + b).saturating_sub(m),
                        _ => a.min(b),
                    };
                    raw.otimes
                        .push((names[a].clone(), names[b].clone(), names[c].clone()));
                }
            }
            validate(&raw)
        }
        Family::Boolean => {
            if !(1..=6).contains(&size) {
                return Err(LatticeError::SizeOutOfRange {
                    family: "bool".into(),
                    size,
                    min: 1,
                    max: 6,
                });
            }
            let count = 1usize << size;
            let full = count - 1;
            let name_of = |s: usize| -> String {
                if s == 0 {
                    "0".into()
                } else if s == full {
                    "1".into()
                } else {
                    (0..size)
                        .filter(|i| s >> i & 1 == 1)
                        .map(|i| (b'a' + i as u8) as char)
                        .collect()
                }
            };
            let names: Vec<String> = (0..count).map(name_of).collect();
            let mut raw = RawLattice {
                name: format!("bool:{size}"),
                elements: names.clone(),
                bottom: names[0].clone(),
                top: names[full].clone(),
                ..Default::default()
            };
            for s in 0..count {
                for i in 0..size {
                    if s >> i & 1 == 0 {
                        raw.leq.push((names[s].clone(), names[s | 1 << i].clone()));
                    }
                }
                for t in 0..count {
                    raw.otimes
                        .push((names[s].clone(), names[t].clone(), names[s & t].clone()));
                }
            }
            validate(&raw)
        }
    }
}

/// Parses `luk:n`, `godel:n`, `bool:k` or `file:PATH`.
pub fn lattice_from_spec(spec: &str) -> Result<Arc<FiniteResiduatedLattice>, LatticeError> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| LatticeError::UnknownSpecifier(spec.into()))?;
    let family = match kind {
        "luk" => Family::Lukasiewicz,
        "godel" => Family::Godel,
        "bool" => Family::Boolean,
        "file" => {
            let text = std::fs::read_to_string(arg)
                .map_err(|e| LatticeError::File(format!("{arg}: {e}")))?;
            let raw = parse_lattice_file(&text).map_err(|e| LatticeError::File(e.to_string()))?;
            return validate(&raw).map(Arc::new);
        }
        _ => return Err(LatticeError::UnknownSpecifier(spec.into())),
    };
    let size: usize = arg
        .parse()
        .map_err(|_| LatticeError::UnknownSpecifier(spec.into()))?;
    make_builtin(family, size).map(Arc::new)
}

/// Locale, involutivity and Boolean-ness by brute force.
pub fn classify(l: &FiniteResiduatedLattice) -> LatticeClassification {
    let is_locale = l.elements().all(|x| l.leq(x, l.otimes(x, x)));
    let is_involutive = l.elements().all(|x| l.neg(l.neg(x)) == x);
    LatticeClassification {
        is_locale,
        is_involutive,
        is_boolean: is_locale && is_involutive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn luk3() -> FiniteResiduatedLattice {
        make_builtin(Family::Lukasiewicz, 3).unwrap()
    }

    #[test]
    fn lukasiewicz_three_has_nilpotent_half() {
        let l = luk3();
        let h = l.element("1/2").unwrap();
        assert_eq!(l.otimes(h, h), l.bottom());
        assert_eq!(l.element("h"), Some(h));
        assert_eq!(l.element_names(), &["0", "1/2", "1"]);
    }

    #[test]
    fn godel_three_has_idempotent_half() {
        let l = make_builtin(Family::Godel, 3).unwrap();
        let h = l.element("1/2").unwrap();
        assert_eq!(l.otimes(h, h), h);
    }

    #[test]
    fn boolean_one_is_the_two_chain() {
        let l = make_builtin(Family::Boolean, 1).unwrap();
        assert_eq!(l.size(), 2);
        let (b, t) = (l.bottom(), l.top());
        assert_eq!(l.residual(t, b), b);
        assert_eq!(l.residual(b, b), t);
        assert_eq!(l.residual(b, t), t);
        assert_eq!(l.residual(t, t), t);
    }

    #[test]
    fn size_limits() {
        assert!(matches!(
            make_builtin(Family::Boolean, 7),
            Err(LatticeError::SizeOutOfRange { .. })
        ));
        assert!(matches!(
            make_builtin(Family::Lukasiewicz, 1),
            Err(LatticeError::SizeOutOfRange { .. })
        ));
        assert_eq!(make_builtin(Family::Boolean, 6).unwrap().size(), 64);
    }

    #[test]
    fn classification_matches_brute_force_expectations() {
        let c = classify(&luk3());
        assert_eq!(
            (c.is_locale, c.is_involutive, c.is_boolean),
            (false, true, false)
        );
        let c = classify(&make_builtin(Family::Godel, 3).unwrap());
        assert_eq!(
            (c.is_locale, c.is_involutive, c.is_boolean),
            (true, false, false)
        );
        let c = classify(&make_builtin(Family::Boolean, 1).unwrap());
        assert_eq!(
            (c.is_locale, c.is_involutive, c.is_boolean),
            (true, true, true)
        );
    }

    #[test]
    fn integrality_violation_is_reported() {
        let mut raw = luk3().to_raw();
        for entry in raw.otimes.iter_mut() {
            if (entry.0.as_str(), entry.1.as_str()) == ("1/2", "1/2") {
                entry.2 = "1/2".into();
            }
            if (entry.0.as_str(), entry.1.as_str()) == ("1/2", "1")
                || (entry.0.as_str(), entry.1.as_str()) == ("1", "1/2")
            {
                entry.2 = "0".into();
            }
        }
        let err = validate(&raw).unwrap_err();
        assert!(matches!(
            err,
            LatticeError::NotIntegral(_) | LatticeError::NotMonotone(..)
        ));
    }

    #[test]
    fn missing_meet_is_reported() {
        let raw = RawLattice {
            name: "v".into(),
            elements: vec!["a".into(), "b".into(), "t".into()],
            bottom: "a".into(),
            top: "t".into(),
            leq: vec![("a".into(), "t".into()), ("b".into(), "t".into())],
            otimes: vec![],
            residual: vec![],
        };
        assert!(matches!(validate(&raw), Err(LatticeError::NotLattice(_))));
    }

    #[test]
    fn non_commutative_table_is_reported() {
        let mut raw = make_builtin(Family::Boolean, 2).unwrap().to_raw();
        for entry in raw.otimes.iter_mut() {
            if (entry.0.as_str(), entry.1.as_str()) == ("a", "b") {
                entry.2 = "a".into();
            }
        }
        assert!(matches!(
            validate(&raw),
            Err(LatticeError::NotCommutative(..))
        ));
    }

    #[test]
    fn supplied_residual_must_agree() {
        let mut raw = luk3().to_raw();
        raw.residual.push(("1/2".into(), "0".into(), "0".into()));
        assert!(matches!(
            validate(&raw),
            Err(LatticeError::ResidualMismatch(..))
        ));
        let mut raw = luk3().to_raw();
        raw.residual.push(("1/2".into(), "0".into(), "1/2".into()));
        assert!(validate(&raw).is_ok());
    }

    #[test]
    fn specifiers() {
        assert_eq!(lattice_from_spec("luk:4").unwrap().size(), 4);
        assert_eq!(lattice_from_spec("bool:2").unwrap().size(), 4);
        assert!(lattice_from_spec("nope:3").is_err());
    }
}
