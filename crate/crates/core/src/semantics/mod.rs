//! Evaluation of formulas and sequents in `USC(L)`, countermodel search and
//! the axiom-suite runner.
//!
//! Order convention: `StepFunction::leq` is the continuous order, with `0̲`
//! least and `1̲` greatest. A sequent `Γ ⊢ A` holds under a valuation when
//! `⟦Γ⟧ ≥ ⟦A⟧`, that is when `⟦A⟧.leq(⟦Γ⟧)`.

pub mod report;
pub mod rules;
pub mod sampler;
pub mod term;
pub mod theory;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::lattice::FiniteResiduatedLattice;
use crate::syntax::{
    struct_to_formula, succedent_formula, Formula, Sequent, Side, Succedent, SystemId,
    TranslationError,
};
use crate::usc::{StepFunction, UscError};

pub use report::{CheckOutcome, Report};
pub use rules::{rule_counterexample, rule_holds_sampled, structure_term};
pub use sampler::{all_steps, random_step, sample_rng, SampleMode, SamplerSpec};
pub use term::Term;
pub use theory::{
    axiom_suite, embedding_checks, involution_witness, locale_witness, AxiomSchema, Relation,
    TheoryId,
};

/// Failures during evaluation or search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("atom `{0}` has no value")]
    UnboundAtom(String),
    #[error(transparent)]
    Usc(#[from] UscError),
    #[error(transparent)]
    Translation(#[from] TranslationError),
    #[error("{0} has no reading in USC(L)")]
    NoReading(String),
    #[error("exhaustive enumeration needs {count} valuations, above the cap of {cap}")]
    ExhaustiveTooLarge { count: String, cap: usize },
}

/// An assignment of step functions to atom names, all over one lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct Valuation {
    lattice: Arc<FiniteResiduatedLattice>,
    bindings: BTreeMap<String, StepFunction>,
}

impl Valuation {
    pub fn new(lattice: Arc<FiniteResiduatedLattice>) -> Self {
        Valuation {
            lattice,
            bindings: BTreeMap::new(),
        }
    }

    pub fn lattice(&self) -> &Arc<FiniteResiduatedLattice> {
        &self.lattice
    }

    /// Binds `name`; the function must live over the valuation's lattice.
    pub fn bind(&mut self, name: &str, f: StepFunction) -> Result<(), SemanticsError> {
        if !Arc::ptr_eq(f.lattice(), &self.lattice) && f.lattice().name() != self.lattice.name() {
            return Err(UscError::LatticeMismatch(
                self.lattice.name().into(),
                f.lattice().name().into(),
            )
            .into());
        }
        self.bindings.insert(name.to_string(), f);
        Ok(())
    }

    pub fn with(mut self, name: &str, f: StepFunction) -> Result<Self, SemanticsError> {
        self.bind(name, f)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&StepFunction> {
        self.bindings.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &StepFunction)> {
        self.bindings.iter()
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .bindings
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `⟦f⟧_v`.
pub fn eval_formula(f: &Formula, v: &Valuation) -> Result<StepFunction, SemanticsError> {
    Term::from(f).eval(v)
}

/// The two formulas compared by a sequent: the left structure read
/// positively and the succedent (read negatively when it is a structure).
pub fn sequent_formulas(s: &Sequent) -> Result<(Formula, Formula), SemanticsError> {
    match &s.rhs {
        Succedent::Formula(r) => Ok((
            struct_to_formula(&s.lhs, Side::Left, SystemId::Cflew)?,
            r.clone(),
        )),
        Succedent::Structure(r) => Ok((
            struct_to_formula(&s.lhs, Side::Left, SystemId::Incflew)?,
            succedent_formula(r),
        )),
    }
}

/// Whether `s` holds under `v`.
pub fn sequent_valid(s: &Sequent, v: &Valuation) -> Result<bool, SemanticsError> {
    let (lhs, rhs) = sequent_formulas(s)?;
    Ok(eval_formula(&rhs, v)?.leq(&eval_formula(&lhs, v)?)?)
}

/// A valuation of `names` drawn from the stream `(seed, index)`.
pub fn random_valuation(
    l: &Arc<FiniteResiduatedLattice>,
    names: &[String],
    grid_exponent: u32,
    seed: u64,
    index: u64,
) -> Valuation {
    let mut rng = sample_rng(seed, index);
    let mut v = Valuation::new(l.clone());
    for name in names {
        v.bindings
            .insert(name.clone(), random_step(l, grid_exponent, &mut rng));
    }
    v
}

/// All grid step functions over `l`, fewest segments first, or an error when
/// `count^arity` exceeds the cap.
pub fn exhaustive_pool(
    l: &Arc<FiniteResiduatedLattice>,
    arity: usize,
    spec: &SamplerSpec,
) -> Result<Vec<StepFunction>, SemanticsError> {
    let too_large = |count: String| SemanticsError::ExhaustiveTooLarge {
        count,
        cap: spec.exhaustive_cap,
    };
    let mut pool = all_steps(l, spec.grid_exponent, spec.exhaustive_cap)
        .ok_or_else(|| too_large(format!("more than {}", spec.exhaustive_cap)))?;
    pool.sort_by_key(|f| f.segments().len());
    let total = (pool.len() as u128)
        .checked_pow(arity as u32)
        .unwrap_or(u128::MAX);
    if total > spec.exhaustive_cap as u128 {
        return Err(too_large(total.to_string()));
    }
    Ok(pool)
}

/// The `index`-th valuation of `names` in mixed-radix order over `pool`.
pub fn pool_valuation(
    l: &Arc<FiniteResiduatedLattice>,
    names: &[String],
    pool: &[StepFunction],
    index: usize,
) -> Valuation {
    let mut v = Valuation::new(l.clone());
    let mut rest = index;
    for name in names {
        v.bindings
            .insert(name.clone(), pool[rest % pool.len()].clone());
        rest /= pool.len();
    }
    v
}

/// Number of valuations a spec visits for `arity` atoms.
pub fn valuation_count(pool: Option<&[StepFunction]>, arity: usize, spec: &SamplerSpec) -> usize {
    match pool {
        Some(p) => p.len().pow(arity as u32),
        None => spec.sample_count,
    }
}

/// How many valuations a full pass visits for `arity` atoms.
pub fn visited_count(
    l: &Arc<FiniteResiduatedLattice>,
    arity: usize,
    spec: &SamplerSpec,
) -> Result<usize, SemanticsError> {
    Ok(match spec.mode {
        SampleMode::Exhaustive => exhaustive_pool(l, arity, spec)?.len().pow(arity as u32),
        SampleMode::Random => spec.sample_count,
    })
}

/// Searches for the first valuation that falsifies `pred`, in sample order,
/// together with its index. Returns `Ok(None)` when every visited valuation
/// satisfies it.
pub fn first_failure<F>(
    l: &Arc<FiniteResiduatedLattice>,
    names: &[String],
    spec: &SamplerSpec,
    pred: F,
) -> Result<Option<(usize, Valuation)>, SemanticsError>
where
    F: Fn(&Valuation) -> Result<bool, SemanticsError> + Sync,
{
    let pool = match spec.mode {
        SampleMode::Exhaustive => Some(exhaustive_pool(l, names.len(), spec)?),
        SampleMode::Random => None,
    };
    let count = valuation_count(pool.as_deref(), names.len(), spec);
    let make = |i: usize| match &pool {
        Some(p) => pool_valuation(l, names, p, i),
        None => random_valuation(l, names, spec.grid_exponent, spec.seed, i as u64),
    };
    let hit = (0..count).into_par_iter().find_map_first(|i| {
        let v = make(i);
        match pred(&v) {
            Ok(true) => None,
            Ok(false) => Some(Ok((i, v))),
            Err(e) => Some(Err(e)),
        }
    });
    hit.transpose()
}

/// The first valuation (in sample order) under which `s` fails.
pub fn countermodel_search(
    s: &Sequent,
    l: &Arc<FiniteResiduatedLattice>,
    spec: &SamplerSpec,
) -> Result<Option<Valuation>, SemanticsError> {
    let (lhs, rhs) = sequent_formulas(s)?;
    let (lt, rt) = (Term::from(&lhs), Term::from(&rhs));
    let names = s.atoms();
    Ok(first_failure(l, &names, spec, |v| Ok(rt.eval(v)?.leq(&lt.eval(v)?)?))?.map(|(_, v)| v))
}

/// The builtin lattices used across the test suites, in a fixed order:
/// the two-element chain, Łukasiewicz 3 and 4, Gödel 3 and the four-element
/// Boolean algebra.
pub fn builtin_lattices() -> Vec<Arc<FiniteResiduatedLattice>> {
    ["luk:2", "luk:3", "luk:4", "godel:3", "bool:2"]
        .iter()
        .map(|s| crate::lattice::lattice_from_spec(s).expect("builtin lattice"))
        .collect()
}
