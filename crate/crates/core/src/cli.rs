//! The `acl` command-line front end.
//!
//! Exit codes: 0 when the sequent is proved, valid or every check passes;
//! 1 when nothing is found, a countermodel exists or a check fails; 2 for
//! usage and parse errors; 3 when a lattice fails validation.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::calculus::analytic::parse_rule;
use crate::calculus::search::{prove_with_limits, SearchLimits, DEFAULT_NODE_BUDGET};
use crate::calculus::{
    check_proof, is_analytic, translate_rule, ProofTree, SearchOutcome, SystemConfig,
};
use crate::lattice::{
    dm_completion, lattice_from_spec, satisfies_rule_algebraically, FinitePoset,
    FiniteResiduatedLattice, LatticeError, RuleLanguage,
};
use crate::semantics::{
    axiom_suite, countermodel_search, eval_formula, rule_counterexample, visited_count,
    SamplerSpec, TheoryId, Valuation,
};
use crate::syntax::{parse_formula, parse_sequent, SystemId};
use crate::usc::StepFunction;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LATTICE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "acl",
    version,
    about = "Proof search and USC(L) semantics for continuous affine logic"
)]
struct Cli {
    /// Worker threads for sampling; output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Random,
    Exhaustive,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search for a proof of a sequent.
    Prove {
        /// Sequent text, a file holding it, or `-` for standard input.
        input: String,
        #[command(flatten)]
        calculus: CalculusArgs,
        /// Give up after this many search nodes.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
    },
    /// Check a proof tree written as an s-expression.
    CheckProof {
        /// Proof text, a file holding it, or `-` for standard input.
        input: String,
        #[command(flatten)]
        calculus: CalculusArgs,
    },
    /// Evaluate a formula in USC(L).
    Eval {
        /// Formula text, a file holding it, or `-` for standard input.
        input: String,
        #[arg(long, default_value = "luk:3")]
        lattice: String,
        /// Atom values as `name=step(t=u,...)`.
        #[arg(long = "bind", value_name = "NAME=STEP")]
        binds: Vec<String>,
    },
    /// Check a sequent on sampled valuations.
    Valid {
        input: String,
        #[arg(long, default_value = "cflew")]
        system: String,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Search for a valuation falsifying a sequent.
    Countermodel {
        input: String,
        #[arg(long, default_value = "cflew")]
        system: String,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Check the axioms of a theory on sampled valuations.
    Axioms {
        #[arg(long, default_value = "T")]
        theory: String,
        /// Largest schema parameter `n`.
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Analyse a structural rule and compare its two readings.
    Rule {
        /// A builtin name (contraction, weakening, mingle) or `P ; P => C`.
        input: String,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Dedekind-MacNeille completion of a finite poset.
    CompletePoset {
        /// Lines `elements a b ...` and `leq a b`, a file holding them, or `-`.
        input: String,
    },
}

#[derive(Debug, Args)]
struct CalculusArgs {
    #[arg(long, default_value = "cflew")]
    system: String,
    #[arg(long, default_value_t = 12)]
    max_depth: usize,
    #[arg(long, default_value_t = 3)]
    n_max: u32,
    #[arg(long)]
    allow_cut: bool,
}

#[derive(Debug, Args)]
struct SamplingArgs {
    #[arg(long, default_value = "luk:3")]
    lattice: String,
    /// Breakpoints on the grid `k / 2^grid`.
    #[arg(long, default_value_t = 3)]
    grid: u32,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Random)]
    mode: Mode,
}

impl SamplingArgs {
    fn spec(&self) -> SamplerSpec {
        match self.mode {
            Mode::Random => SamplerSpec::random(self.grid, self.samples, self.seed),
            Mode::Exhaustive => SamplerSpec::exhaustive(self.grid),
        }
    }
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

fn lattice(spec: &str) -> Result<Arc<FiniteResiduatedLattice>, Failure> {
    lattice_from_spec(spec).map_err(|e| {
        let code = if matches!(e, LatticeError::UnknownSpecifier(_)) {
            EXIT_USAGE
        } else {
            EXIT_LATTICE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    })
}

fn system(name: &str) -> Result<SystemId, Failure> {
    name.parse().map_err(usage)
}

fn read_input(arg: &str, stdin: &str) -> Result<String, Failure> {
    if arg == "-" {
        return Ok(stdin.to_string());
    }
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| usage(format!("{arg}: {e}")));
    }
    Ok(arg.to_string())
}

struct Output {
    out: Vec<u8>,
    format: Format,
}

impl Output {
    fn line(&mut self, text: &str) {
        let _ = writeln!(self.out, "{text}");
    }

    fn emit(&mut self, text: String, value: serde_json::Value) {
        match self.format {
            Format::Text => {
                let _ = write!(self.out, "{text}");
                if !text.ends_with('\n') {
                    let _ = writeln!(self.out);
                }
            }
            Format::JsonLines => self.line(&value.to_string()),
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let wants_stdin = match &cli.command {
        Command::Prove { input, .. }
        | Command::CheckProof { input, .. }
        | Command::Eval { input, .. }
        | Command::Valid { input, .. }
        | Command::Countermodel { input, .. }
        | Command::Rule { input, .. }
        | Command::CompletePoset { input } => input == "-",
        Command::Axioms { .. } => false,
    };
    let mut text = String::new();
    if wants_stdin {
        if let Err(e) = stdin.read_to_string(&mut text) {
            let _ = writeln!(err, "error: reading standard input: {e}");
            return EXIT_USAGE;
        }
    }
    let mut o = Output {
        out: Vec::new(),
        format: cli.format,
    };
    let result = pool.install(|| dispatch(cli.command, &text, &mut o));
    let _ = out.write_all(&o.out);
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, stdin: &str, o: &mut Output) -> Result<i32, Failure> {
    match cmd {
        Command::Prove {
            input,
            calculus,
            budget,
        } => prove_cmd(&read_input(&input, stdin)?, &calculus, budget, o),
        Command::CheckProof { input, calculus } => {
            check_cmd(&read_input(&input, stdin)?, &calculus, o)
        }
        Command::Eval {
            input,
            lattice: spec,
            binds,
        } => eval_cmd(&read_input(&input, stdin)?, &spec, &binds, o),
        Command::Valid {
            input,
            system: sys,
            sampling,
        } => sample_cmd(&read_input(&input, stdin)?, &sys, &sampling, false, o),
        Command::Countermodel {
            input,
            system: sys,
            sampling,
        } => sample_cmd(&read_input(&input, stdin)?, &sys, &sampling, true, o),
        Command::Axioms {
            theory,
            n_max,
            sampling,
        } => axioms_cmd(&theory, n_max, &sampling, o),
        Command::Rule { input, sampling } => rule_cmd(&read_input(&input, stdin)?, &sampling, o),
        Command::CompletePoset { input } => poset_cmd(&read_input(&input, stdin)?, o),
    }
}

fn config(c: &CalculusArgs) -> Result<SystemConfig, Failure> {
    Ok(SystemConfig::new(system(&c.system)?)
        .with_cut(c.allow_cut)
        .with_n_max(c.n_max))
}

fn prove_cmd(text: &str, c: &CalculusArgs, budget: usize, o: &mut Output) -> Result<i32, Failure> {
    let cfg = config(c)?;
    let s = parse_sequent(text.trim(), cfg.system).map_err(usage)?;
    let limits = SearchLimits {
        max_depth: c.max_depth,
        node_budget: budget,
        semantic_pruning: true,
    };
    match prove_with_limits(&s, &cfg, &limits) {
        SearchOutcome::Found {
            proof,
            conditional,
            stats,
        } => {
            let mut text = format!("proved {s}\n");
            text.push_str(&format!(
                "height {} nodes {} searched {}\n",
                proof.height(),
                proof.node_count(),
                stats.nodes
            ));
            if conditional {
                text.push_str("conditional: uses a truncated 7.b instance\n");
            }
            text.push_str(&proof.to_string());
            let value = json!({
                "status": "proved",
                "sequent": s.to_string(),
                "height": proof.height(),
                "nodes": proof.node_count(),
                "searched": stats.nodes,
                "conditional": conditional,
                "proof": proof.to_string(),
            });
            o.emit(text, value);
            Ok(EXIT_OK)
        }
        SearchOutcome::NotFound { reason, stats } => {
            let text = format!(
                "not found {s}\nreason {reason} depth {} searched {}\n",
                stats.depth, stats.nodes
            );
            let value = json!({
                "status": "not_found",
                "sequent": s.to_string(),
                "reason": reason.to_string(),
                "depth": stats.depth,
                "searched": stats.nodes,
            });
            o.emit(text, value);
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn check_cmd(text: &str, c: &CalculusArgs, o: &mut Output) -> Result<i32, Failure> {
    let cfg = config(c)?;
    let tree = ProofTree::parse(text, cfg.system).map_err(usage)?;
    match check_proof(&tree, &cfg) {
        Ok(()) => {
            let text = format!(
                "ok {} (height {}, {} nodes)\n",
                tree.conclusion,
                tree.height(),
                tree.node_count()
            );
            o.emit(text, json!({"status": "ok", "conclusion": tree.conclusion.to_string(), "height": tree.height()}));
            Ok(EXIT_OK)
        }
        Err(e) => {
            o.emit(
                format!("invalid: {e}\n"),
                json!({"status": "invalid", "error": e.to_string(), "path": e.path()}),
            );
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn eval_cmd(text: &str, spec: &str, binds: &[String], o: &mut Output) -> Result<i32, Failure> {
    let l = lattice(spec)?;
    let f = parse_formula(text.trim(), SystemId::Inljk).map_err(usage)?;
    let mut v = Valuation::new(Arc::clone(&l));
    for b in binds {
        let (name, lit) = b
            .split_once('=')
            .ok_or_else(|| usage(format!("binding `{b}` needs NAME=STEP")))?;
        let step = StepFunction::parse_literal(&l, lit.trim()).map_err(usage)?;
        v.bind(name.trim(), step).map_err(usage)?;
    }
    let value = eval_formula(&f, &v).map_err(usage)?;
    o.emit(
        format!("{value}\n"),
        json!({"formula": f.to_string(), "lattice": l.name(), "value": value.to_string()}),
    );
    Ok(EXIT_OK)
}

fn sample_cmd(
    text: &str,
    sys: &str,
    s: &SamplingArgs,
    witness_mode: bool,
    o: &mut Output,
) -> Result<i32, Failure> {
    let sys = system(sys)?;
    let l = lattice(&s.lattice)?;
    let seq = parse_sequent(text.trim(), sys).map_err(usage)?;
    let spec = s.spec();
    match countermodel_search(&seq, &l, &spec).map_err(usage)? {
        None => {
            let checked = visited_count(&l, seq.atoms().len(), &spec).map_err(usage)?;
            let word = if witness_mode {
                "no countermodel"
            } else {
                "valid"
            };
            o.emit(
                format!("{word} on {checked} valuations over {}\n", l.name()),
                json!({"status": "valid", "sequent": seq.to_string(), "lattice": l.name(), "checked": checked}),
            );
            Ok(EXIT_OK)
        }
        Some(v) => {
            let word = if witness_mode {
                "countermodel"
            } else {
                "invalid"
            };
            o.emit(
                format!("{word} over {}: {v}\n", l.name()),
                json!({"status": "countermodel", "sequent": seq.to_string(), "lattice": l.name(), "witness": v.to_string()}),
            );
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn axioms_cmd(theory: &str, n_max: u32, s: &SamplingArgs, o: &mut Output) -> Result<i32, Failure> {
    let theory: TheoryId = theory.parse().map_err(usage)?;
    let l = lattice(&s.lattice)?;
    let report = axiom_suite(theory, &l, &s.spec(), n_max).map_err(usage)?;
    match o.format {
        Format::Text => o.emit(report.to_string(), json!(null)),
        Format::JsonLines => {
            let _ = write!(o.out, "{}", report.to_json_lines());
        }
    }
    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn rule_cmd(text: &str, s: &SamplingArgs, o: &mut Output) -> Result<i32, Failure> {
    let rule = parse_rule(text).map_err(usage)?;
    let l = lattice(&s.lattice)?;
    let report = is_analytic(&rule, false);
    if !report.is_analytic() {
        o.emit(
            format!("{rule}\n{report}\n"),
            json!({"rule": rule.to_string(), "analytic": false, "report": report.to_string()}),
        );
        return Ok(EXIT_NEGATIVE);
    }
    let translated = translate_rule(&rule).map_err(usage)?;
    let algebraic = satisfies_rule_algebraically(&l, &rule, RuleLanguage::Gl).map_err(usage)?;
    let witness = rule_counterexample(&l, &translated, &s.spec()).map_err(usage)?;
    let sampled = witness.is_none();
    let mut text = format!("{rule}\nanalytic\ncontinuous form {translated}\n");
    text.push_str(&format!("holds in {}: {algebraic}\n", l.name()));
    text.push_str(&format!(
        "continuous form holds on samples over USC({}): {sampled}\n",
        l.name()
    ));
    if let Some(v) = &witness {
        text.push_str(&format!("witness: {v}\n"));
    }
    let agree = algebraic == sampled;
    text.push_str(if agree {
        "readings agree\n"
    } else {
        "readings disagree\n"
    });
    o.emit(
        text,
        json!({
            "rule": rule.to_string(),
            "analytic": true,
            "translated": translated.to_string(),
            "lattice": l.name(),
            "algebraic": algebraic,
            "sampled": sampled,
            "witness": witness.map(|v| v.to_string()),
            "agree": agree,
        }),
    );
    Ok(if agree { EXIT_OK } else { EXIT_NEGATIVE })
}

/// Reads `elements a b ...` and `leq a b` lines; `#` starts a comment.
pub fn parse_poset(text: &str) -> Result<FinitePoset, String> {
    let mut names: Vec<String> = Vec::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["elements", rest @ ..] => names.extend(rest.iter().map(|s| s.to_string())),
            ["leq", a, b] => pairs.push((a.to_string(), b.to_string())),
            _ => {
                return Err(format!(
                    "line {}: expected `elements ...` or `leq a b`",
                    i + 1
                ))
            }
        }
    }
    FinitePoset::new(names, &pairs).map_err(|e| e.to_string())
}

fn poset_cmd(text: &str, o: &mut Output) -> Result<i32, Failure> {
    let p = parse_poset(text).map_err(usage)?;
    let c = dm_completion(&p);
    let names = c.order.names();
    let mut lines = vec![format!("completion has {} elements", c.size())];
    let mut covers = Vec::new();
    for a in 0..c.size() {
        for b in 0..c.size() {
            let strictly = a != b && c.order.leq(a, b);
            let covered = strictly
                && (0..c.size())
                    .all(|m| m == a || m == b || !(c.order.leq(a, m) && c.order.leq(m, b)));
            if covered {
                covers.push((names[a].clone(), names[b].clone()));
            }
        }
    }
    for (x, e) in p.names().iter().zip(&c.embedding) {
        lines.push(format!("embed {x} -> {}", names[*e]));
    }
    for (a, b) in &covers {
        lines.push(format!("cover {a} < {b}"));
    }
    let value = json!({
        "elements": names,
        "embedding": p.names().iter().zip(&c.embedding).map(|(x, e)| (x.clone(), names[*e].clone())).collect::<Vec<_>>(),
        "covers": covers,
    });
    o.emit(lines.join("\n"), value);
    Ok(EXIT_OK)
}
