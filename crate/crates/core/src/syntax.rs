//! Formulas, structures and sequents of the continuous sequent calculi:
//! abstract syntax, an ASCII parser and printer, dyadic-constant expansion,
//! the structure-to-formula translations and the involutive normal form.
//!
//! Concrete syntax (all keywords are reserved):
//!
//! ```text
//! F   ::= atom | '0' | '1' | 'd(' DY ')' | '(' F ')' | UN F | F BIN F
//! UN  ::= '2' | 'h' | 'j*' | 'j' | 'al' | 'bx' | '!'
//! BIN ::= '+' | '-' | 'x' | '/\' | '\/'
//! S   ::= F | 'eps' | 'eps(' DY ')' | '(' S ')' | SUN S | S ',' S
//! SUN ::= 'o2' | 'b2' | 'oa' | 'ba' | '~' | '!'
//! SEQ ::= S '|-' F | S '|-' S
//! ```
//!
//! Unary operators bind tightest, then `+ - x` (left associative), then
//! `/\`, then `\/`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dyadic::Dyadic;

/// The eight sequent systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemId {
    Gl,
    Mgl,
    Ingl,
    Inmgl,
    Cflew,
    Ljk,
    Incflew,
    Inljk,
}

impl SystemId {
    pub const ALL: [SystemId; 8] = [
        SystemId::Gl,
        SystemId::Mgl,
        SystemId::Ingl,
        SystemId::Inmgl,
        SystemId::Cflew,
        SystemId::Ljk,
        SystemId::Incflew,
        SystemId::Inljk,
    ];

    /// Two-sided systems with a structural negation.
    pub fn is_involutive(self) -> bool {
        matches!(
            self,
            SystemId::Ingl | SystemId::Inmgl | SystemId::Incflew | SystemId::Inljk
        )
    }

    /// Systems whose formulas include the modal connectives.
    pub fn has_modalities(self) -> bool {
        !matches!(self, SystemId::Gl | SystemId::Ingl)
    }

    /// Systems with the continuous structural rules (and dyadic constants).
    pub fn is_continuous(self) -> bool {
        matches!(
            self,
            SystemId::Cflew | SystemId::Ljk | SystemId::Incflew | SystemId::Inljk
        )
    }

    /// Systems whose models live over locales.
    pub fn is_intuitionistic(self) -> bool {
        matches!(self, SystemId::Ljk | SystemId::Inljk)
    }

    pub fn name(self) -> &'static str {
        match self {
            SystemId::Gl => "gl",
            SystemId::Mgl => "mgl",
            SystemId::Ingl => "ingl",
            SystemId::Inmgl => "inmgl",
            SystemId::Cflew => "cflew",
            SystemId::Ljk => "ljk",
            SystemId::Incflew => "incflew",
            SystemId::Inljk => "inljk",
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SystemId::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown system `{s}`"))
    }
}

/// Unary formula connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnOp {
    /// `2`
    Double,
    /// `h`, the half operation
    Half,
    /// `j*`
    Jstar,
    /// `j`
    Jmap,
    /// `al`
    Alpha,
    /// `bx`, the box of alpha (`2v ∧ j_*(v)`)
    BoxAlpha,
    /// `!`
    Neg,
}

impl UnOp {
    pub fn keyword(self) -> &'static str {
        match self {
            UnOp::Double => "2",
            UnOp::Half => "h",
            UnOp::Jstar => "j*",
            UnOp::Jmap => "j",
            UnOp::Alpha => "al",
            UnOp::BoxAlpha => "bx",
            UnOp::Neg => "!",
        }
    }
}

/// Binary formula connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    /// `+`, truncated sum
    Plus,
    /// `-`, truncated difference
    Minus,
    /// `x`, the involutive fusion `j(½a ∔ ½b)`
    Odot,
    /// `/\`, the meet of the continuous order
    Meet,
    /// `\/`, the join of the continuous order
    Join,
}

impl BinOp {
    pub fn keyword(self) -> &'static str {
        match self {
            BinOp::Plus => "+",
            BinOp::Minus => "-",
            BinOp::Odot => "x",
            BinOp::Meet => "/\\",
            BinOp::Join => "\\/",
        }
    }

    fn level(self) -> u8 {
        match self {
            BinOp::Join => 0,
            BinOp::Meet => 1,
            BinOp::Plus | BinOp::Minus | BinOp::Odot => 2,
        }
    }
}

/// A formula of the continuous language.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    /// `0̲`
    Zero,
    /// `1̲`
    One,
    /// `d̲` for a dyadic strictly between 0 and 1.
    Const(Dyadic),
    Unary(UnOp, Box<Formula>),
    Binary(BinOp, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    /// `d̲`, using `Zero`/`One` at the ends.
    pub fn constant(d: &Dyadic) -> Formula {
        if d.is_zero() {
            Formula::Zero
        } else if d.is_one() {
            Formula::One
        } else {
            Formula::Const(d.clone())
        }
    }

    pub fn un(op: UnOp, f: Formula) -> Formula {
        Formula::Unary(op, Box::new(f))
    }

    pub fn bin(op: BinOp, a: Formula, b: Formula) -> Formula {
        Formula::Binary(op, Box::new(a), Box::new(b))
    }

    /// Atom names in order of first occurrence.
    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<String>) {
        match self {
            Formula::Atom(a) => {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
            Formula::Unary(_, f) => f.collect_atoms(out),
            Formula::Binary(_, a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            _ => {}
        }
    }

    /// All subformulas, the formula itself included.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut out = vec![self.clone()];
        match self {
            Formula::Unary(_, f) => out.extend(f.subformulas()),
            Formula::Binary(_, a, b) => {
                out.extend(a.subformulas());
                out.extend(b.subformulas());
            }
            _ => {}
        }
        out
    }

    /// Every dyadic constant mentioned.
    pub fn constants(&self) -> Vec<Dyadic> {
        self.subformulas()
            .into_iter()
            .filter_map(|f| match f {
                Formula::Const(d) => Some(d),
                _ => None,
            })
            .collect()
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        match self {
            Formula::Atom(a) => f.write_str(a),
            Formula::Zero => f.write_str("0"),
            Formula::One => f.write_str("1"),
            Formula::Const(d) => write!(f, "d({d})"),
            Formula::Unary(op, inner) => {
                write!(f, "{} ", op.keyword())?;
                inner.write_at(f, 3)
            }
            Formula::Binary(op, a, b) => {
                let own = op.level();
                let paren = own < level;
                if paren {
                    f.write_str("(")?;
                }
                a.write_at(f, own)?;
                write!(f, " {} ", op.keyword())?;
                b.write_at(f, own + 1)?;
                if paren {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Unary structure symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SUnOp {
    /// `o2`
    O2,
    /// `b2`
    B2,
    /// `oa`
    OA,
    /// `ba`
    BA,
    /// `~`
    Tilde,
    /// `!`
    Neg,
}

impl SUnOp {
    pub fn keyword(self) -> &'static str {
        match self {
            SUnOp::O2 => "o2",
            SUnOp::B2 => "b2",
            SUnOp::OA => "oa",
            SUnOp::BA => "ba",
            SUnOp::Tilde => "~",
            SUnOp::Neg => "!",
        }
    }

    pub fn is_negation(self) -> bool {
        matches!(self, SUnOp::Tilde | SUnOp::Neg)
    }
}

/// A structure: the antecedent (and, in involutive systems, the succedent)
/// of a sequent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    Formula(Formula),
    /// `ε`
    Eps,
    /// `ε_d` for a dyadic `d` in `(0,1]`.
    EpsD(Dyadic),
    Comma(Box<Structure>, Box<Structure>),
    Unary(SUnOp, Box<Structure>),
}

impl Structure {
    pub fn leaf(f: Formula) -> Structure {
        Structure::Formula(f)
    }

    pub fn comma(a: Structure, b: Structure) -> Structure {
        Structure::Comma(Box::new(a), Box::new(b))
    }

    pub fn un(op: SUnOp, s: Structure) -> Structure {
        Structure::Unary(op, Box::new(s))
    }

    /// `ε_d`, with `ε_0 = ε`.
    pub fn eps_d(d: &Dyadic) -> Structure {
        if d.is_zero() {
            Structure::Eps
        } else {
            Structure::EpsD(d.clone())
        }
    }

    /// Joins a list with `,` (left nested); the empty list is `ε`.
    pub fn join_all(items: Vec<Structure>) -> Structure {
        let mut it = items.into_iter();
        match it.next() {
            None => Structure::Eps,
            Some(first) => it.fold(first, Structure::comma),
        }
    }

    /// Formula leaves in left-to-right order.
    pub fn formulas(&self) -> Vec<&Formula> {
        match self {
            Structure::Formula(f) => vec![f],
            Structure::Eps | Structure::EpsD(_) => vec![],
            Structure::Comma(a, b) => {
                let mut v = a.formulas();
                v.extend(b.formulas());
                v
            }
            Structure::Unary(_, s) => s.formulas(),
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, tight: bool) -> fmt::Result {
        match self {
            Structure::Formula(x) => {
                if tight && matches!(x, Formula::Binary(..)) {
                    write!(f, "({x})")
                } else {
                    write!(f, "{x}")
                }
            }
            Structure::Eps => f.write_str("eps"),
            Structure::EpsD(d) => write!(f, "eps({d})"),
            Structure::Comma(a, b) => {
                if tight {
                    f.write_str("(")?;
                }
                a.write_at(f, false)?;
                f.write_str(", ")?;
                b.write_at(f, false)?;
                if tight {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Structure::Unary(op, s) => {
                write!(f, "{} ", op.keyword())?;
                s.write_at(f, true)
            }
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, false)
    }
}

/// The succedent of a sequent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Succedent {
    Formula(Formula),
    Structure(Structure),
}

/// `lhs ⊢ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub lhs: Structure,
    pub rhs: Succedent,
}

impl Sequent {
    pub fn one_sided(lhs: Structure, rhs: Formula) -> Sequent {
        Sequent {
            lhs,
            rhs: Succedent::Formula(rhs),
        }
    }

    pub fn two_sided(lhs: Structure, rhs: Structure) -> Sequent {
        Sequent {
            lhs,
            rhs: Succedent::Structure(rhs),
        }
    }

    /// Atom names in order of first occurrence.
    pub fn atoms(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let mut add = |f: &Formula| {
            for a in f.atoms() {
                if !out.contains(&a) {
                    out.push(a);
                }
            }
        };
        for f in self.lhs.formulas() {
            add(f);
        }
        match &self.rhs {
            Succedent::Formula(f) => add(f),
            Succedent::Structure(s) => {
                for f in s.formulas() {
                    add(f);
                }
            }
        }
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rhs {
            Succedent::Formula(r) => write!(f, "{} |- {}", self.lhs, r),
            Succedent::Structure(r) => write!(f, "{} |- {}", self.lhs, r),
        }
    }
}

/// Parse failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: connective `{connective}` is not available in system {system}")]
    IllegalConnective {
        line: usize,
        column: usize,
        connective: String,
        system: SystemId,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Slash,
    Caret,
    Plus,
    Minus,
    Meet,
    Join,
    Turnstile,
    Comma,
    LParen,
    RParen,
    Bang,
    Tilde,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, message: String| SyntaxError::Syntax {
        line,
        column,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok: Tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Token {
                tok,
                line: l0,
                column: c0,
            });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '/' if chars.get(i + 1) == Some(&'\\') => push(Tok::Meet, 2, &mut i, &mut col),
            '\\' if chars.get(i + 1) == Some(&'/') => push(Tok::Join, 2, &mut i, &mut col),
            '|' if chars.get(i + 1) == Some(&'-') => push(Tok::Turnstile, 2, &mut i, &mut col),
            '/' => push(Tok::Slash, 1, &mut i, &mut col),
            '^' => push(Tok::Caret, 1, &mut i, &mut col),
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            '-' => push(Tok::Minus, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '!' => push(Tok::Bang, 1, &mut i, &mut col),
            '~' => push(Tok::Tilde, 1, &mut i, &mut col),
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Token {
                    tok: Tok::Int(s),
                    line: l0,
                    column: c0,
                });
            }
            c if c.is_ascii_lowercase() => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_lowercase()
                        || chars[i].is_ascii_digit()
                        || chars[i] == '_')
                {
                    i += 1;
                }
                let mut s: String = chars[start..i].iter().collect();
                if s == "j" && chars.get(i) == Some(&'*') {
                    s.push('*');
                    i += 1;
                }
                col += i - start;
                out.push(Token {
                    tok: Tok::Ident(s),
                    line: l0,
                    column: c0,
                });
            }
            other => return Err(err(l0, c0, format!("unexpected character `{other}`"))),
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

const RESERVED: [&str; 13] = [
    "h", "j*", "j", "al", "bx", "x", "eps", "o2", "b2", "oa", "ba", "d", "2",
];

fn formula_unop(word: &str) -> Option<UnOp> {
    match word {
        "h" => Some(UnOp::Half),
        "j*" => Some(UnOp::Jstar),
        "j" => Some(UnOp::Jmap),
        "al" => Some(UnOp::Alpha),
        "bx" => Some(UnOp::BoxAlpha),
        _ => None,
    }
}

fn struct_unop(word: &str) -> Option<SUnOp> {
    match word {
        "o2" => Some(SUnOp::O2),
        "b2" => Some(SUnOp::B2),
        "oa" => Some(SUnOp::OA),
        "ba" => Some(SUnOp::BA),
        _ => None,
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    system: SystemId,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn new(text: &str, system: SystemId) -> PResult<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            system,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        let t = &self.toks[self.pos];
        Err(SyntaxError::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn require_involutive(&self, connective: &str) -> PResult<()> {
        if self.system.is_involutive() {
            Ok(())
        } else {
            let t = &self.toks[self.pos];
            Err(SyntaxError::IllegalConnective {
                line: t.line,
                column: t.column,
                connective: connective.to_string(),
                system: self.system,
            })
        }
    }

    fn dyadic_arg(&mut self) -> PResult<Dyadic> {
        self.expect(Tok::LParen, "`(`")?;
        let mut text = String::new();
        loop {
            match self.peek().clone() {
                Tok::Int(s) => text.push_str(&s),
                Tok::Slash => text.push('/'),
                Tok::Caret => text.push('^'),
                Tok::RParen => break,
                _ => return self.error("malformed dyadic constant"),
            }
            self.bump();
        }
        let d: Dyadic = match text.parse() {
            Ok(d) => d,
            Err(e) => return self.error(format!("{e}")),
        };
        if !d.in_unit() {
            return self.error(format!("constant {d} lies outside [0,1]"));
        }
        self.bump();
        Ok(d)
    }

    fn formula(&mut self) -> PResult<Formula> {
        self.formula_at(0)
    }

    fn binop_here(&self) -> Option<BinOp> {
        match self.peek() {
            Tok::Plus => Some(BinOp::Plus),
            Tok::Minus => Some(BinOp::Minus),
            Tok::Meet => Some(BinOp::Meet),
            Tok::Join => Some(BinOp::Join),
            Tok::Ident(w) if w == "x" => Some(BinOp::Odot),
            _ => None,
        }
    }

    fn formula_at(&mut self, level: u8) -> PResult<Formula> {
        let mut lhs = self.formula_unary()?;
        while let Some(op) = self.binop_here() {
            if op.level() < level {
                break;
            }
            if op == BinOp::Odot {
                self.require_involutive("x")?;
            }
            self.bump();
            let rhs = self.formula_at(op.level() + 1)?;
            lhs = Formula::bin(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn formula_unary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Int(s) if s == "2" => {
                self.bump();
                Ok(Formula::un(UnOp::Double, self.formula_unary()?))
            }
            Tok::Int(s) if s == "0" => {
                self.bump();
                Ok(Formula::Zero)
            }
            Tok::Int(s) if s == "1" => {
                self.bump();
                Ok(Formula::One)
            }
            Tok::Int(s) => self.error(format!("unexpected number `{s}`")),
            Tok::Bang => {
                self.require_involutive("!")?;
                self.bump();
                Ok(Formula::un(UnOp::Neg, self.formula_unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(w) => {
                if let Some(op) = formula_unop(&w) {
                    self.bump();
                    return Ok(Formula::un(op, self.formula_unary()?));
                }
                if w == "d" && *self.peek_at(1) == Tok::LParen {
                    self.bump();
                    let d = self.dyadic_arg()?;
                    return Ok(Formula::constant(&d));
                }
                if RESERVED.contains(&w.as_str()) && w != "d" {
                    return self.error(format!("keyword `{w}` cannot start a formula"));
                }
                self.bump();
                Ok(Formula::Atom(w))
            }
            _ => self.error("expected a formula"),
        }
    }

    fn structure(&mut self) -> PResult<Structure> {
        let mut s = self.structure_atom()?;
        while *self.peek() == Tok::Comma {
            self.bump();
            let rhs = self.structure_atom()?;
            s = Structure::comma(s, rhs);
        }
        Ok(s)
    }

    /// Tries to read a whole formula from the current position; restores
    /// the position on failure.
    fn try_formula(&mut self) -> Option<Formula> {
        let save = self.pos;
        match self.formula() {
            Ok(f)
                if matches!(
                    self.peek(),
                    Tok::Comma | Tok::RParen | Tok::Turnstile | Tok::Eof
                ) =>
            {
                Some(f)
            }
            _ => {
                self.pos = save;
                None
            }
        }
    }

    fn structure_atom(&mut self) -> PResult<Structure> {
        match self.peek().clone() {
            Tok::Ident(w) if w == "eps" => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    let d = self.dyadic_arg()?;
                    Ok(Structure::eps_d(&d))
                } else {
                    Ok(Structure::Eps)
                }
            }
            Tok::Ident(w) if struct_unop(&w).is_some() => {
                let op = struct_unop(&w).expect("checked");
                if op == SUnOp::BA {
                    self.require_involutive("ba")?;
                }
                self.bump();
                Ok(Structure::un(op, self.structure_atom()?))
            }
            Tok::Tilde => {
                self.require_involutive("~")?;
                self.bump();
                Ok(Structure::un(SUnOp::Tilde, self.structure_atom()?))
            }
            Tok::Bang => {
                self.require_involutive("!")?;
                if let Some(f) = self.try_formula() {
                    return Ok(Structure::Formula(f));
                }
                self.bump();
                Ok(Structure::un(SUnOp::Neg, self.structure_atom()?))
            }
            Tok::LParen => {
                if let Some(f) = self.try_formula() {
                    return Ok(Structure::Formula(f));
                }
                self.bump();
                let s = self.structure()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(s)
            }
            _ => Ok(Structure::Formula(self.formula()?)),
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error("unexpected trailing input")
        }
    }
}

/// Parses a formula.
pub fn parse_formula(text: &str, system: SystemId) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text, system)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses a structure.
pub fn parse_structure(text: &str, system: SystemId) -> Result<Structure, SyntaxError> {
    let mut p = Parser::new(text, system)?;
    let s = p.structure()?;
    p.finish()?;
    Ok(s)
}

/// Parses a sequent; the succedent is a formula in one-sided systems and a
/// structure in involutive ones.
pub fn parse_sequent(text: &str, system: SystemId) -> Result<Sequent, SyntaxError> {
    let mut p = Parser::new(text, system)?;
    let lhs = p.structure()?;
    p.expect(Tok::Turnstile, "`|-`")?;
    let rhs = if system.is_involutive() {
        Succedent::Structure(p.structure()?)
    } else {
        Succedent::Formula(p.formula()?)
    };
    p.finish()?;
    Ok(Sequent { lhs, rhs })
}

/// `d = k / 2ⁿ` with `k` odd, for `0 < d < 1`.
fn odd_form(d: &Dyadic) -> (u64, u32) {
    let n = d.exponent();
    let k = d.scaled_integer(n).expect("exponent is exact");
    let k: u64 = k.try_into().expect("numerator fits in u64");
    (k, n)
}

/// `d̲` written with `j*`, `al` and `+` only: `2ⁿd` copies of `α^{n-1}(j_*(0̲))`
/// for the least such `n`. The constant `1̲` is read as `1/2 + 1/2`.
pub fn expand_dyadic_formula(d: &Dyadic) -> Formula {
    if d.is_zero() {
        return Formula::Zero;
    }
    let half = Formula::un(UnOp::Jstar, Formula::Zero);
    if d.is_one() {
        return Formula::bin(BinOp::Plus, half.clone(), half);
    }
    let (k, n) = odd_form(d);
    let mut unit = half;
    for _ in 1..n {
        unit = Formula::un(UnOp::Alpha, unit);
    }
    let mut acc = unit.clone();
    for _ in 1..k {
        acc = Formula::bin(BinOp::Plus, acc, unit.clone());
    }
    acc
}

/// `ε_d` written with `oa`, `b2`, `eps` and `,`: `k` copies of
/// `∘α^{n-1} •₂ ε` for `d = k/2ⁿ`, `k` odd. `ε_0 = ε` and `ε_1 = ε_{1/2}, ε_{1/2}`.
pub fn expand_eps(d: &Dyadic) -> Structure {
    if d.is_zero() {
        return Structure::Eps;
    }
    let half = Structure::un(SUnOp::B2, Structure::Eps);
    if d.is_one() {
        return Structure::comma(half.clone(), half);
    }
    let (k, n) = odd_form(d);
    let mut unit = half;
    for _ in 1..n {
        unit = Structure::un(SUnOp::OA, unit);
    }
    Structure::join_all(vec![unit; k as usize])
}

/// Which side of the turnstile a structure is read on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Failures of the structure-to-formula translation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslationError {
    #[error("negation in a structure of the one-sided system {0}")]
    NegationInOneSided(SystemId),
    #[error("system {0} has no right-hand structures")]
    NoRightStructures(SystemId),
}

/// The formula a structure stands for. The left side reads `,` as `+`,
/// `ε` as `0`, `∘₂` as `2`, `•₂` as `j*` and `∘α`/`•α` as `al`; the right
/// side reads each symbol as the De Morgan dual `¬F(¬·)` of its left
/// reading: `,` as `x`, `ε` as `1`, `∘₂` as `j`, `•₂` as `h` and
/// `∘α`/`•α` as `bx`. Negations are pushed to the leaves first and become
/// the formula negation. `ε_d` is read through its expansion.
pub fn struct_to_formula(
    s: &Structure,
    side: Side,
    system: SystemId,
) -> Result<Formula, TranslationError> {
    if !system.is_involutive() {
        if side == Side::Right {
            return Err(TranslationError::NoRightStructures(system));
        }
        if contains_negation(s) {
            return Err(TranslationError::NegationInOneSided(system));
        }
        return Ok(translate(s, side, false));
    }
    Ok(translate(&involutive_normal_form(s), side, false))
}

/// The succedent of a two-sided sequent as the formula its validity is
/// judged against: the right reading with `,` spelled out as
/// `!(!a + !b)`, so that `Γ ⊢ Θ` and `Γ, Θ^! ⊢ eps` agree over every
/// involutive lattice. It differs from `x` off the Boolean case.
pub fn succedent_formula(s: &Structure) -> Formula {
    translate(&involutive_normal_form(s), Side::Right, true)
}

fn contains_negation(s: &Structure) -> bool {
    match s {
        Structure::Unary(op, inner) => op.is_negation() || contains_negation(inner),
        Structure::Comma(a, b) => contains_negation(a) || contains_negation(b),
        _ => false,
    }
}

fn translate(s: &Structure, side: Side, de_morgan_comma: bool) -> Formula {
    let left = side == Side::Left;
    match s {
        Structure::Formula(f) => f.clone(),
        Structure::Eps => {
            if left {
                Formula::Zero
            } else {
                Formula::One
            }
        }
        Structure::EpsD(d) => {
            if left {
                Formula::constant(d)
            } else {
                translate(&expand_eps(d), side, de_morgan_comma)
            }
        }
        Structure::Comma(a, b) => {
            let (x, y) = (
                translate(a, side, de_morgan_comma),
                translate(b, side, de_morgan_comma),
            );
            if left {
                Formula::bin(BinOp::Plus, x, y)
            } else if de_morgan_comma {
                let neg = |f| Formula::un(UnOp::Neg, f);
                neg(Formula::bin(BinOp::Plus, neg(x), neg(y)))
            } else {
                Formula::bin(BinOp::Odot, x, y)
            }
        }
        Structure::Unary(op, inner) => {
            let f = translate(inner, side, de_morgan_comma);
            let u = match (op, left) {
                (SUnOp::O2, true) => UnOp::Double,
                (SUnOp::O2, false) => UnOp::Jmap,
                (SUnOp::B2, true) => UnOp::Jstar,
                (SUnOp::B2, false) => UnOp::Half,
                (SUnOp::OA | SUnOp::BA, true) => UnOp::Alpha,
                (SUnOp::OA | SUnOp::BA, false) => UnOp::BoxAlpha,
                (SUnOp::Neg | SUnOp::Tilde, _) => UnOp::Neg,
            };
            Formula::un(u, f)
        }
    }
}

/// Pushes `~` and `!` down to the formula leaves using `γ^{~!} = γ^{!~} = γ`,
/// `(∘γ)^! = ∘(γ^!)` and `(γ, δ)^! = δ^!, γ^!` (likewise for `~`). A `!`
/// that reaches a leaf becomes the formula negation; `~` stays structural.
pub fn involutive_normal_form(s: &Structure) -> Structure {
    nf(s, &[])
}

/// Appends a negation to a word, cancelling a complementary innermost one.
fn apply_negation(word: &mut Vec<SUnOp>, op: SUnOp) {
    let complement = if op == SUnOp::Neg {
        SUnOp::Tilde
    } else {
        SUnOp::Neg
    };
    if word.last() == Some(&complement) {
        word.pop();
    } else {
        word.push(op);
    }
}

/// `pending` lists the negations still to apply, outermost first.
fn nf(s: &Structure, pending: &[SUnOp]) -> Structure {
    match s {
        Structure::Unary(op, inner) if op.is_negation() => {
            let mut word = pending.to_vec();
            apply_negation(&mut word, *op);
            nf(inner, &word)
        }
        Structure::Unary(op, inner) => Structure::un(*op, nf(inner, pending)),
        Structure::Comma(a, b) => {
            let (x, y) = (nf(a, pending), nf(b, pending));
            if pending.len() % 2 == 1 {
                Structure::comma(y, x)
            } else {
                Structure::comma(x, y)
            }
        }
        Structure::Eps | Structure::EpsD(_) => s.clone(),
        Structure::Formula(f) => {
            let mut word = pending.to_vec();
            let mut core = f;
            while let Formula::Unary(UnOp::Neg, g) = core {
                apply_negation(&mut word, SUnOp::Neg);
                core = g;
            }
            let mut out = Structure::Formula(core.clone());
            for op in word.into_iter().rev() {
                out = match (op, out) {
                    (SUnOp::Neg, Structure::Formula(g)) => {
                        Structure::Formula(Formula::un(UnOp::Neg, g))
                    }
                    (op, other) => Structure::un(op, other),
                };
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn roundtrip_of_mixed_sequent() {
        let s = parse_sequent("j* a /\\ 2 b |- a + d(3/4)", SystemId::Cflew).unwrap();
        let printed = s.to_string();
        assert_eq!(printed, "j* a /\\ 2 b |- a + d(3/4)");
        assert_eq!(parse_sequent(&printed, SystemId::Cflew).unwrap(), s);
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("a + b - c /\\ d \\/ e", SystemId::Cflew).unwrap();
        assert_eq!(f.to_string(), "a + b - c /\\ d \\/ e");
        let g = parse_formula("a - (b - c)", SystemId::Cflew).unwrap();
        assert_eq!(g.to_string(), "a - (b - c)");
        let h = parse_formula("2a", SystemId::Cflew).unwrap();
        assert_eq!(h, Formula::un(UnOp::Double, Formula::atom("a")));
    }

    #[test]
    fn involutive_connectives_are_rejected_elsewhere() {
        assert!(matches!(
            parse_sequent("~ a |- b", SystemId::Cflew),
            Err(SyntaxError::IllegalConnective { .. })
        ));
        assert!(matches!(
            parse_formula("a x b", SystemId::Ljk),
            Err(SyntaxError::IllegalConnective { .. })
        ));
        assert!(parse_sequent("~ a |- b", SystemId::Incflew).is_ok());
    }

    #[test]
    fn eps_constants() {
        let s = parse_structure("eps(3/4)", SystemId::Cflew).unwrap();
        assert_eq!(s, Structure::EpsD(d("3/4")));
        assert_eq!(
            expand_eps(&d("3/4")).to_string(),
            "oa b2 eps, oa b2 eps, oa b2 eps"
        );
        assert_eq!(expand_eps(&d("1/2")).to_string(), "b2 eps");
        assert_eq!(expand_dyadic_formula(&d("1/2")).to_string(), "j* 0");
        assert_eq!(
            expand_dyadic_formula(&d("3/8")).to_string(),
            "al al j* 0 + al al j* 0 + al al j* 0"
        );
    }

    #[test]
    fn translations() {
        let s = parse_structure("a, o2 b", SystemId::Cflew).unwrap();
        assert_eq!(
            struct_to_formula(&s, Side::Left, SystemId::Cflew)
                .unwrap()
                .to_string(),
            "a + 2 b"
        );
        let r = parse_structure("a, b", SystemId::Incflew).unwrap();
        assert_eq!(
            struct_to_formula(&r, Side::Right, SystemId::Incflew)
                .unwrap()
                .to_string(),
            "a x b"
        );
        assert_eq!(
            struct_to_formula(&Structure::Eps, Side::Right, SystemId::Incflew).unwrap(),
            Formula::One
        );
    }

    #[test]
    fn normal_form_relations() {
        let sys = SystemId::Incflew;
        let a = parse_structure("~ (! a)", sys).unwrap();
        assert_eq!(
            involutive_normal_form(&a),
            Structure::Formula(Formula::atom("a"))
        );
        let b = parse_structure("~ (a, b)", sys).unwrap();
        assert_eq!(involutive_normal_form(&b).to_string(), "~ b, ~ a");
        let c = parse_structure("! (o2 (a, b))", sys).unwrap();
        let nf_c = involutive_normal_form(&c);
        assert_eq!(nf_c.to_string(), "o2 (! b, ! a)");
        assert_eq!(involutive_normal_form(&nf_c), nf_c);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("a +", SystemId::Cflew) {
            Err(SyntaxError::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 4)),
            other => panic!("{other:?}"),
        }
    }
}
