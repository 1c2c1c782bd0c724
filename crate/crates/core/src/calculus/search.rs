//! Bounded backward proof search.
//!
//! Iterative deepening over the rule set, trying axioms, then introduction
//! rules, then structural rules that shrink the sequent, then those that
//! grow it, and cut last. A rule that is invertible is applied alone when
//! it matches. Sequents already on the current branch are not revisited,
//! and failures are cached per remaining depth. Optionally, premises that
//! fail on a few fixed valuations over a model of the system are dropped:
//! by soundness they have no proof.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::rc::Rc;
use std::sync::Arc;

use crate::lattice::lattice_from_spec;
use crate::semantics::{random_valuation, sequent_formulas, Valuation};
use crate::syntax::{BinOp, Formula, Sequent, SystemId, UnOp};
use crate::usc::{StepFunction, UnaryKind};

use super::canon::CSeq;
use super::pattern::{
    instantiate_seq, match_seq, Binding, LeafKind, MatchMode, PBag, PItem, SeqPat,
};
use super::proof::ProofTree;
use super::rules::{rule_set, RuleKind, RuleScheme};
use super::SystemConfig;

/// Rules whose premises follow from their conclusion; applying them first
/// loses no proofs.
const INVERTIBLE: [&str; 11] = [
    "L+", "R-", "L0", "L/\\", "R\\/", "L2", "Lj*", "Lal", "Ld", "Rd", "Rx",
];

/// Node visits allowed by [`prove`] before giving up.
pub const DEFAULT_NODE_BUDGET: usize = 400_000;

const EXPANSION_CACHE_LIMIT: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_depth: usize,
    pub node_budget: usize,
    /// Drop premises refuted by sample valuations.
    pub semantic_pruning: bool,
}

impl SearchLimits {
    pub fn depth(max_depth: usize) -> SearchLimits {
        SearchLimits {
            max_depth,
            node_budget: DEFAULT_NODE_BUDGET,
            semantic_pruning: true,
        }
    }
}

/// The lattice whose step functions prune the search for a system: one
/// over which every rule of the system is meant to be sound.
pub fn pruning_lattice(system: SystemId) -> &'static str {
    match system {
        SystemId::Ljk => "godel:3",
        SystemId::Inljk => "bool:2",
        _ => "luk:3",
    }
}

const PRUNING_SAMPLES: u64 = 6;
const PRUNING_GRID: u32 = 3;
const PRUNING_SEED: u64 = 0x5eed;

/// Sample valuations over a model, with verdicts cached per sequent and
/// values cached per formula.
struct Oracle {
    valuations: Vec<Valuation>,
    verdicts: HashMap<CSeq, bool>,
    values: HashMap<Formula, Rc<Vec<StepFunction>>>,
}

impl Oracle {
    fn new(system: SystemId, goal: &CSeq) -> Oracle {
        let l = lattice_from_spec(pruning_lattice(system)).expect("builtin lattice");
        let mut names: Vec<String> = Vec::new();
        for f in goal.formulas() {
            for a in f.atoms() {
                if !names.contains(&a) {
                    names.push(a);
                }
            }
        }
        let valuations = (0..PRUNING_SAMPLES)
            .map(|i| random_valuation(&Arc::clone(&l), &names, PRUNING_GRID, PRUNING_SEED, i))
            .collect();
        Oracle {
            valuations,
            verdicts: HashMap::new(),
            values: HashMap::new(),
        }
    }

    fn value(&mut self, f: &Formula) -> Option<Rc<Vec<StepFunction>>> {
        if let Some(v) = self.values.get(f) {
            return Some(Rc::clone(v));
        }
        let out: Vec<StepFunction> = match f {
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
                self.value(g)?.iter().map(|x| x.apply_unary(kind)).collect()
            }
            Formula::Binary(op, a, b) => {
                let (x, y) = (self.value(a)?, self.value(b)?);
                x.iter()
                    .zip(y.iter())
                    .map(|(x, y)| {
                        match op {
                            BinOp::Plus => x.oplus(y),
                            BinOp::Minus => x.ominus(y),
                            BinOp::Meet => x.meet(y),
                            BinOp::Join => x.join(y),
                            BinOp::Odot => x.half().oplus(&y.half()).map(|s| s.jmap()),
                        }
                        .ok()
                    })
                    .collect::<Option<_>>()?
            }
            _ => self
                .valuations
                .iter()
                .map(|v| crate::semantics::eval_formula(f, v).ok())
                .collect::<Option<_>>()?,
        };
        let out = Rc::new(out);
        if self.values.len() < EXPANSION_CACHE_LIMIT {
            self.values.insert(f.clone(), Rc::clone(&out));
        }
        Some(out)
    }

    fn plausible(&mut self, s: &CSeq) -> bool {
        if let Some(&v) = self.verdicts.get(s) {
            return v;
        }
        let verdict = match sequent_formulas(&s.to_sequent()) {
            Ok((lhs, rhs)) => match (self.value(&lhs), self.value(&rhs)) {
                (Some(l), Some(r)) => l
                    .iter()
                    .zip(r.iter())
                    .all(|(l, r)| r.leq(l).unwrap_or(true)),
                _ => true,
            },
            Err(_) => true,
        };
        self.verdicts.insert(s.clone(), verdict);
        verdict
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotFoundReason {
    /// Some branch reached the depth bound.
    DepthExhausted,
    /// The whole space under the family cap was explored without reaching
    /// the depth bound.
    NMaxExhausted,
    /// The node budget ran out first.
    BudgetExhausted,
}

impl fmt::Display for NotFoundReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotFoundReason::DepthExhausted => "depth_exhausted",
            NotFoundReason::NMaxExhausted => "n_max_exhausted",
            NotFoundReason::BudgetExhausted => "budget_exhausted",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: usize,
    /// The last depth bound tried.
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found {
        proof: ProofTree,
        /// Set when the proof uses a truncated infinitary rule.
        conditional: bool,
        stats: SearchStats,
    },
    NotFound {
        reason: NotFoundReason,
        stats: SearchStats,
    },
}

impl SearchOutcome {
    pub fn proof(&self) -> Option<&ProofTree> {
        match self {
            SearchOutcome::Found { proof, .. } => Some(proof),
            SearchOutcome::NotFound { .. } => None,
        }
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            SearchOutcome::Found { stats, .. } | SearchOutcome::NotFound { stats, .. } => *stats,
        }
    }
}

/// Searches for a proof of height at most `max_depth`.
pub fn prove(s: &Sequent, cfg: &SystemConfig, max_depth: usize) -> SearchOutcome {
    prove_with_limits(s, cfg, &SearchLimits::depth(max_depth))
}

pub fn prove_with_limits(s: &Sequent, cfg: &SystemConfig, limits: &SearchLimits) -> SearchOutcome {
    let goal = CSeq::from_sequent(s);
    let mut searcher = Searcher::new(cfg, &goal, limits.node_budget);
    if limits.semantic_pruning {
        searcher.oracle = Some(Oracle::new(cfg.system, &goal));
    }
    for depth in 1..=limits.max_depth {
        searcher.cutoff = false;
        let mut path = HashSet::new();
        let found = searcher.dfs(&goal, depth, &mut path);
        let stats = SearchStats {
            nodes: searcher.nodes,
            depth,
        };
        if let Some(proof) = found {
            let conditional = proof.is_conditional();
            return SearchOutcome::Found {
                proof,
                conditional,
                stats,
            };
        }
        if searcher.out_of_budget {
            return SearchOutcome::NotFound {
                reason: NotFoundReason::BudgetExhausted,
                stats,
            };
        }
        if !searcher.cutoff {
            return SearchOutcome::NotFound {
                reason: NotFoundReason::NMaxExhausted,
                stats,
            };
        }
    }
    SearchOutcome::NotFound {
        reason: NotFoundReason::DepthExhausted,
        stats: SearchStats {
            nodes: searcher.nodes,
            depth: limits.max_depth,
        },
    }
}

struct Expansion {
    rule: usize,
    premises: Vec<CSeq>,
}

struct Searcher {
    rules: Vec<RuleScheme>,
    invertible: Vec<bool>,
    cut_candidates: Vec<Formula>,
    expansions: HashMap<CSeq, Rc<Vec<Expansion>>>,
    /// Remaining depth at which a sequent is known to fail; `usize::MAX`
    /// when it fails at every depth.
    failed: HashMap<CSeq, usize>,
    nodes: usize,
    budget: usize,
    cutoff: bool,
    cutoffs: usize,
    prunes: usize,
    out_of_budget: bool,
    oracle: Option<Oracle>,
}

fn phase(r: &RuleScheme) -> u8 {
    match r.kind {
        RuleKind::Axiom => 0,
        RuleKind::Introduction => 1,
        RuleKind::Structural => {
            let size = r.conclusion.left.bag().size();
            if r.premises.iter().all(|p| p.left.bag().size() < size) {
                2
            } else {
                3
            }
        }
        RuleKind::Cut => 4,
    }
}

fn pattern_formula_vars(p: &SeqPat, out: &mut BTreeSet<String>) {
    fn bag(b: &PBag, out: &mut BTreeSet<String>) {
        for i in &b.0 {
            match i {
                PItem::Leaf(l) => {
                    if let LeafKind::Form(f) = &l.kind {
                        out.extend(f.atoms());
                    }
                }
                PItem::Node(_, inner) => bag(inner, out),
                PItem::Var(_) => {}
            }
        }
    }
    bag(p.left.bag(), out);
    if let Some(r) = &p.right {
        if let LeafKind::Form(f) = &r.kind {
            out.extend(f.atoms());
        }
    }
}

impl Searcher {
    fn new(cfg: &SystemConfig, goal: &CSeq, budget: usize) -> Searcher {
        let mut indexed: Vec<(u8, usize, RuleScheme)> = rule_set(cfg)
            .into_iter()
            .enumerate()
            .map(|(i, r)| (phase(&r), i, r))
            .collect();
        indexed.sort_by_key(|(p, i, _)| (*p, *i));
        let rules: Vec<RuleScheme> = indexed.into_iter().map(|(_, _, r)| r).collect();
        let invertible = rules
            .iter()
            .map(|r| INVERTIBLE.contains(&r.name.as_str()))
            .collect();
        let mut subs: BTreeSet<Formula> = BTreeSet::new();
        for f in goal.formulas() {
            subs.extend(f.subformulas());
        }
        let mut cut_candidates: Vec<Formula> = subs.into_iter().collect();
        cut_candidates.sort_by_key(super::canon::formula_size);
        Searcher {
            rules,
            invertible,
            cut_candidates,
            expansions: HashMap::new(),
            failed: HashMap::new(),
            nodes: 0,
            budget,
            cutoff: false,
            cutoffs: 0,
            prunes: 0,
            out_of_budget: false,
            oracle: None,
        }
    }

    /// Backward applications of rule `i` to `goal`.
    fn apply(&mut self, i: usize, goal: &CSeq) -> Vec<Vec<CSeq>> {
        let rule = &self.rules[i];
        let oracle = &mut self.oracle;
        let mut out: Vec<Vec<CSeq>> = Vec::new();
        for (b, ctx) in match_seq(
            &rule.conclusion,
            goal,
            &Binding::default(),
            MatchMode::Search,
        ) {
            let mut missing = BTreeSet::new();
            for p in &rule.premises {
                pattern_formula_vars(p, &mut missing);
            }
            missing.retain(|v| !b.forms.contains_key(v));
            let mut bindings = vec![b];
            for v in &missing {
                bindings = bindings
                    .into_iter()
                    .flat_map(|b| {
                        self.cut_candidates.iter().map(move |c| {
                            let mut b2 = b.clone();
                            b2.forms.insert(v.clone(), c.clone());
                            b2
                        })
                    })
                    .collect();
            }
            for b in bindings {
                let premises: Option<Vec<CSeq>> = rule
                    .premises
                    .iter()
                    .map(|p| instantiate_seq(p, &b, ctx.as_ref()))
                    .collect();
                let Some(premises) = premises else { continue };
                if premises.iter().any(|p| p == goal) || out.contains(&premises) {
                    continue;
                }
                if let Some(o) = oracle.as_mut() {
                    if !premises.iter().all(|p| o.plausible(p)) {
                        continue;
                    }
                }
                out.push(premises);
            }
        }
        out
    }

    fn expand(&mut self, goal: &CSeq) -> Rc<Vec<Expansion>> {
        if let Some(e) = self.expansions.get(goal) {
            return e.clone();
        }
        let mut all = Vec::new();
        let mut focused = None;
        for i in 0..self.rules.len() {
            let found = self.apply(i, goal);
            if self.rules[i].kind == RuleKind::Axiom && !found.is_empty() {
                focused = Some(Expansion {
                    rule: i,
                    premises: Vec::new(),
                });
                break;
            }
            if self.invertible[i] {
                if let Some(premises) = found.into_iter().next() {
                    focused = Some(Expansion { rule: i, premises });
                    break;
                }
                continue;
            }
            all.extend(
                found
                    .into_iter()
                    .map(|premises| Expansion { rule: i, premises }),
            );
        }
        let result = Rc::new(match focused {
            Some(e) => vec![e],
            None => all,
        });
        if self.expansions.len() < EXPANSION_CACHE_LIMIT {
            self.expansions.insert(goal.clone(), result.clone());
        }
        result
    }

    fn dfs(&mut self, goal: &CSeq, depth: usize, path: &mut HashSet<CSeq>) -> Option<ProofTree> {
        if self.nodes >= self.budget {
            self.out_of_budget = true;
            return None;
        }
        self.nodes += 1;
        if depth == 0 {
            self.cutoff = true;
            self.cutoffs += 1;
            return None;
        }
        if let Some(&d) = self.failed.get(goal) {
            if d >= depth {
                if d != usize::MAX {
                    self.cutoff = true;
                    self.cutoffs += 1;
                }
                return None;
            }
        }
        let prunes_before = self.prunes;
        let cutoffs_before = self.cutoffs;
        let expansions = self.expand(goal);
        path.insert(goal.clone());
        let mut result = None;
        'rules: for e in expansions.iter() {
            if e.premises.iter().any(|p| path.contains(p)) {
                self.prunes += 1;
                continue;
            }
            let mut children = Vec::with_capacity(e.premises.len());
            for p in &e.premises {
                match self.dfs(p, depth - 1, path) {
                    Some(t) => children.push(t),
                    None => continue 'rules,
                }
            }
            let rule = &self.rules[e.rule];
            result = Some(ProofTree {
                conclusion: goal.to_sequent(),
                rule: rule.name.clone(),
                params: rule.params.clone(),
                children,
            });
            break;
        }
        path.remove(goal);
        if result.is_none() && !self.out_of_budget && self.prunes == prunes_before {
            let bound = if self.cutoffs == cutoffs_before {
                usize::MAX
            } else {
                depth
            };
            let entry = self.failed.entry(goal.clone()).or_insert(0);
            *entry = (*entry).max(bound);
        }
        result
    }
}
