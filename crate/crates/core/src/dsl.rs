//! A small surface language for current-algebra relations.
//!
//! ```text
//! relation := expr '=' expr
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := primary ('^' INT)?
//! primary  := INT | 'hbar' | 'c' | specvar | atom
//!           | 'inv' '(' expr ')' | 'delta' '(' arg ',' arg ')'
//!           | 'tensor' '(' expr ',' expr ')'
//!           | '[' expr ',' expr ']' | '{' expr ',' expr '}' | '(' expr ')'
//! atom     := name ('+' | '-')? '(' arg ')'
//! arg      := specvar (('+' | '-') [INT '*'] 'hbar' ['/' INT])*
//! ```
//!
//! A spectral variable written directly against a sign, as in `u+` or `v-`,
//! is the centrally shifted variable `u ± ħc/4` whenever the sign is not
//! followed by an operand. `u+v` is a sum, `u+ - v` a difference.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::evalrep::Sign;
use crate::field::Var;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at line {}, column {}", span.line, span.column)]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
    pub expected: BTreeSet<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomName {
    K1,
    K2,
    SmallE,
    SmallF,
    X,
    K,
    H,
    E,
    F,
    L(u8, u8),
}

impl AtomName {
    fn from_ident(s: &str) -> Option<AtomName> {
        Some(match s {
            "k1" => AtomName::K1,
            "k2" => AtomName::K2,
            "e" => AtomName::SmallE,
            "f" => AtomName::SmallF,
            "X" => AtomName::X,
            "K" => AtomName::K,
            "H" => AtomName::H,
            "E" => AtomName::E,
            "F" => AtomName::F,
            "l11" => AtomName::L(1, 1),
            "l12" => AtomName::L(1, 2),
            "l21" => AtomName::L(2, 1),
            "l22" => AtomName::L(2, 2),
            _ => return None,
        })
    }

    pub fn parity(self) -> u8 {
        match self {
            AtomName::K1 | AtomName::K2 | AtomName::K | AtomName::H => 0,
            AtomName::SmallE | AtomName::SmallF | AtomName::X | AtomName::E | AtomName::F => 1,
            AtomName::L(i, j) => (i + j) % 2,
        }
    }

    /// Whether the atom is written without a sign (`E(u)`, `F(u)`) as well.
    fn sign_optional(self) -> bool {
        matches!(self, AtomName::E | AtomName::F)
    }
}

impl fmt::Display for AtomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomName::K1 => f.write_str("k1"),
            AtomName::K2 => f.write_str("k2"),
            AtomName::SmallE => f.write_str("e"),
            AtomName::SmallF => f.write_str("f"),
            AtomName::X => f.write_str("X"),
            AtomName::K => f.write_str("K"),
            AtomName::H => f.write_str("H"),
            AtomName::E => f.write_str("E"),
            AtomName::F => f.write_str("F"),
            AtomName::L(i, j) => write!(f, "l{i}{j}"),
        }
    }
}

/// A spectral argument `var + central·ħc/4 + shift·ħ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arg {
    pub var: Var,
    pub central: i8,
    pub shift: BigRational,
}

impl Arg {
    pub fn plain(var: Var) -> Arg {
        Arg {
            var,
            central: 0,
            shift: BigRational::zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub name: AtomName,
    pub sign: Option<Sign>,
    pub arg: Arg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constant {
    Hbar,
    Central,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(BigInt),
    Const(Constant),
    Spectral { var: Var, central: i8 },
    Atom(Atom),
    Delta(Arg, Arg),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Inv(Box<Expr>),
    Comm(Box<Expr>, Box<Expr>),
    Anti(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Expr {
    /// Parity of a homogeneous expression; `None` for mixed sums.
    pub fn parity(&self) -> Option<u8> {
        match self {
            Expr::Num(_) | Expr::Const(_) | Expr::Spectral { .. } | Expr::Delta(..) => Some(0),
            Expr::Atom(a) => Some(a.name.parity()),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (p, q) = (a.parity()?, b.parity()?);
                // zero summands do not spoil homogeneity
                if p == q || b.is_zero_literal() {
                    Some(p)
                } else if a.is_zero_literal() {
                    Some(q)
                } else {
                    None
                }
            }
            Expr::Mul(a, b) | Expr::Comm(a, b) | Expr::Anti(a, b) | Expr::Tensor(a, b) => {
                Some((a.parity()? + b.parity()?) % 2)
            }
            Expr::Div(a, _) | Expr::Neg(a) | Expr::Inv(a) => a.parity(),
            Expr::Pow(a, n) => Some((a.parity()? as u32 * n % 2) as u8),
        }
    }

    fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Num(n) if n.is_zero())
    }

    /// True when the expression contains no atoms and no delta.
    pub fn is_scalar(&self) -> bool {
        let mut scalar = true;
        self.visit(&mut |e| {
            if matches!(e, Expr::Atom(_) | Expr::Delta(..)) {
                scalar = false;
            }
        });
        scalar
    }

    /// Pre-order traversal.
    pub fn visit<F: FnMut(&Expr)>(&self, f: &mut F) {
        f(self);
        match self {
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Comm(a, b)
            | Expr::Anti(a, b)
            | Expr::Tensor(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Inv(a) => a.visit(f),
            _ => {}
        }
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.visit(&mut |e| {
            if let Expr::Atom(a) = e {
                out.push(a.clone());
            }
        });
        out
    }

    pub fn has_delta(&self) -> bool {
        let mut found = false;
        self.visit(&mut |e| found |= matches!(e, Expr::Delta(..)));
        found
    }
}

impl Relation {
    pub fn atoms(&self) -> Vec<Atom> {
        let mut a = self.lhs.atoms();
        a.extend(self.rhs.atoms());
        a
    }

    pub fn has_delta(&self) -> bool {
        self.lhs.has_delta() || self.rhs.has_delta()
    }
}

// ---------------------------------------------------------------- lexer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Spec(Var, i8),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number '{n}'"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Spec(v, 0) => format!("'{v}'"),
        Tok::Spec(v, c) => format!("'{v}{}'", if *c > 0 { '+' } else { '-' }),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::Eof => "end of input".into(),
    }
}

fn operand_start(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '(' | '[' | '{' | '_')
}

struct Lexer<'a> {
    src: &'a str,
    line_starts: Vec<usize>,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        let mut line_starts = vec![0];
        for (i, c) in src.char_indices() {
            if c == '\n' {
                line_starts.push(i + 1);
            }
        }
        Lexer { src, line_starts }
    }

    fn span(&self, start: usize, end: usize) -> SourceSpan {
        let line = self.line_starts.partition_point(|&s| s <= start);
        let col = self.src[self.line_starts[line - 1]..start].chars().count() + 1;
        SourceSpan {
            start,
            end,
            line,
            column: col,
        }
    }

    fn tokens(&self) -> Result<Vec<Token>, ParseError> {
        let mut out = Vec::new();
        let chars: Vec<(usize, char)> = self.src.char_indices().collect();
        let at = |k: usize| chars.get(k).map(|&(_, c)| c);
        let offset = |k: usize| chars.get(k).map_or(self.src.len(), |&(o, _)| o);
        let mut k = 0;
        while k < chars.len() {
            let (start, c) = chars[k];
            if c.is_whitespace() {
                k += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let mut j = k;
                while at(j).is_some_and(|d| d.is_ascii_digit()) {
                    j += 1;
                }
                let text = &self.src[start..offset(j)];
                out.push(Token {
                    tok: Tok::Int(text.parse().expect("digits")),
                    span: self.span(start, offset(j)),
                });
                k = j;
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let mut j = k;
                while at(j).is_some_and(|d| d.is_alphanumeric() || d == '_') {
                    j += 1;
                }
                let text = &self.src[start..offset(j)];
                if text == "u" || text == "v" {
                    let var = if text == "u" { Var::U } else { Var::V };
                    let central = match at(j) {
                        Some(s @ ('+' | '-')) if !at(j + 1).is_some_and(operand_start) => {
                            if s == '+' {
                                1
                            } else {
                                -1
                            }
                        }
                        _ => 0,
                    };
                    let end = if central != 0 { j + 1 } else { j };
                    out.push(Token {
                        tok: Tok::Spec(var, central),
                        span: self.span(start, offset(end)),
                    });
                    k = end;
                    continue;
                }
                out.push(Token {
                    tok: Tok::Ident(text.to_string()),
                    span: self.span(start, offset(j)),
                });
                k = j;
                continue;
            }
            if "+-*/^()[]{},=".contains(c) {
                out.push(Token {
                    tok: Tok::Sym(c),
                    span: self.span(start, offset(k + 1)),
                });
                k += 1;
                continue;
            }
            return Err(ParseError {
                message: format!("unexpected character '{c}'"),
                span: self.span(start, offset(k + 1)),
                expected: BTreeSet::new(),
            });
        }
        out.push(Token {
            tok: Tok::Eof,
            span: self.span(self.src.len(), self.src.len()),
        });
        Ok(out)
    }
}

// ---------------------------------------------------------------- parser

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

const PRIMARY_START: &[&str] = &[
    "number", "'hbar'", "'c'", "'u'", "'v'", "atom", "'inv'", "'delta'", "'tensor'", "'('", "'['",
    "'{'", "'-'",
];

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: BTreeSet<String>) -> ParseError {
        let t = self.peek();
        let message = match &t.tok {
            Tok::Eof => "unexpected end of input".to_string(),
            other => format!("unexpected {}", describe(other)),
        };
        ParseError {
            message,
            span: t.span,
            expected,
        }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char, also: &[&str]) -> Result<Token, ParseError> {
        if self.is_sym(c) {
            Ok(self.bump())
        } else {
            let mut e = set(also);
            e.insert(format!("'{c}'"));
            Err(self.error_here(e))
        }
    }

    fn relation(&mut self) -> Result<Relation, ParseError> {
        let lhs = self.expr()?;
        self.expect_sym('=', &["'+'", "'-'", "'*'", "'/'"])?;
        let rhs = self.expr()?;
        if self.peek().tok != Tok::Eof {
            return Err(self.error_here(set(&["end of input", "'+'", "'-'", "'*'", "'/'"])));
        }
        Ok(Relation { lhs, rhs })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            if self.is_sym('+') {
                self.bump();
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.is_sym('-') {
                self.bump();
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        loop {
            if self.is_sym('*') {
                self.bump();
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.is_sym('/') {
                let slash = self.bump();
                let d = self.unary()?;
                if !d.is_scalar() {
                    return Err(ParseError {
                        message: "division by a non-scalar".into(),
                        span: slash.span,
                        expected: BTreeSet::new(),
                    });
                }
                e = Expr::Div(Box::new(e), Box::new(d));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.is_sym('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.is_sym('^') {
            self.bump();
            let t = self.peek().clone();
            match &t.tok {
                Tok::Int(n) => {
                    self.bump();
                    let n = n.to_u32().ok_or_else(|| ParseError {
                        message: "exponent too large".into(),
                        span: t.span,
                        expected: BTreeSet::new(),
                    })?;
                    return Ok(Expr::Pow(Box::new(base), n));
                }
                _ => return Err(self.error_here(set(&["number"]))),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Num(n.clone()))
            }
            Tok::Spec(var, central) => {
                self.bump();
                Ok(Expr::Spectral {
                    var: *var,
                    central: *central,
                })
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')', &["'+'", "'-'", "'*'", "'/'"])?;
                Ok(e)
            }
            Tok::Sym('[') => {
                self.bump();
                let a = self.expr()?;
                self.expect_sym(',', &["'+'", "'-'", "'*'", "'/'"])?;
                let b = self.expr()?;
                self.expect_sym(']', &["'+'", "'-'", "'*'", "'/'"])?;
                Ok(Expr::Comm(Box::new(a), Box::new(b)))
            }
            Tok::Sym('{') => {
                self.bump();
                let a = self.expr()?;
                self.expect_sym(',', &["'+'", "'-'", "'*'", "'/'"])?;
                let b = self.expr()?;
                let close = self.expect_sym('}', &["'+'", "'-'", "'*'", "'/'"])?;
                if a.parity() != Some(1) || b.parity() != Some(1) {
                    return Err(ParseError {
                        message: "anticommutator requires odd operands".into(),
                        span: SourceSpan {
                            end: close.span.end,
                            ..t.span
                        },
                        expected: BTreeSet::new(),
                    });
                }
                Ok(Expr::Anti(Box::new(a), Box::new(b)))
            }
            Tok::Ident(name) => self.named(name, t.span),
            _ => Err(self.error_here(set(PRIMARY_START))),
        }
    }

    fn named(&mut self, name: &str, span: SourceSpan) -> Result<Expr, ParseError> {
        match name {
            "hbar" | "ħ" => {
                self.bump();
                Ok(Expr::Const(Constant::Hbar))
            }
            "c" => {
                self.bump();
                Ok(Expr::Const(Constant::Central))
            }
            "inv" => {
                self.bump();
                self.expect_sym('(', &[])?;
                let e = self.expr()?;
                self.expect_sym(')', &["'+'", "'-'", "'*'", "'/'"])?;
                Ok(Expr::Inv(Box::new(e)))
            }
            "tensor" => {
                self.bump();
                self.expect_sym('(', &[])?;
                let a = self.expr()?;
                self.expect_sym(',', &["'+'", "'-'", "'*'", "'/'"])?;
                let b = self.expr()?;
                self.expect_sym(')', &["'+'", "'-'", "'*'", "'/'"])?;
                Ok(Expr::Tensor(Box::new(a), Box::new(b)))
            }
            "delta" => {
                self.bump();
                self.expect_sym('(', &[])?;
                let a = self.arg()?;
                self.expect_sym(',', &["'+'", "'-'"])?;
                let b = self.arg()?;
                self.expect_sym(')', &["'+'", "'-'"])?;
                Ok(Expr::Delta(a, b))
            }
            _ => {
                let Some(atom) = AtomName::from_ident(name) else {
                    return Err(ParseError {
                        message: format!("unknown name '{name}'"),
                        span,
                        expected: set(PRIMARY_START),
                    });
                };
                self.bump();
                let sign = if self.is_sym('+') {
                    self.bump();
                    Some(Sign::Plus)
                } else if self.is_sym('-') {
                    self.bump();
                    Some(Sign::Minus)
                } else {
                    None
                };
                if sign.is_none() && !atom.sign_optional() {
                    return Err(ParseError {
                        message: format!("atom '{name}' needs a sign"),
                        span: self.peek().span,
                        expected: set(&["'+'", "'-'"]),
                    });
                }
                let also: &[&str] = if sign.is_none() {
                    &["'+'", "'-'"]
                } else {
                    &[]
                };
                self.expect_sym('(', also)?;
                let arg = self.arg()?;
                self.expect_sym(')', &["'+'", "'-'"])?;
                Ok(Expr::Atom(Atom {
                    name: atom,
                    sign,
                    arg,
                }))
            }
        }
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        let (var, central) = match self.peek().tok {
            Tok::Spec(v, c) => (v, c),
            _ => return Err(self.error_here(set(&["'u'", "'v'"]))),
        };
        self.bump();
        let mut shift = BigRational::zero();
        loop {
            let neg = if self.is_sym('+') {
                false
            } else if self.is_sym('-') {
                true
            } else {
                break;
            };
            self.bump();
            let s = self.shift_term()?;
            shift = if neg { shift - s } else { shift + s };
        }
        Ok(Arg {
            var,
            central,
            shift,
        })
    }

    fn shift_term(&mut self) -> Result<BigRational, ParseError> {
        let mut coeff = BigRational::one();
        if let Tok::Int(n) = &self.peek().tok {
            coeff = BigRational::from_integer(n.clone());
            self.bump();
            self.expect_sym('*', &[])?;
        }
        match &self.peek().tok {
            Tok::Ident(s) if s == "hbar" || s == "ħ" => {
                self.bump();
            }
            _ => {
                let mut e = set(&["'hbar'"]);
                if coeff.is_one() {
                    e.insert("number".into());
                }
                return Err(self.error_here(e));
            }
        }
        if self.is_sym('/') {
            self.bump();
            let t = self.peek().clone();
            match &t.tok {
                Tok::Int(n) if !n.is_zero() => {
                    self.bump();
                    coeff /= BigRational::from_integer(n.clone());
                }
                Tok::Int(_) => {
                    return Err(ParseError {
                        message: "zero denominator in shift".into(),
                        span: t.span,
                        expected: set(&["number"]),
                    })
                }
                _ => return Err(self.error_here(set(&["number"]))),
            }
        }
        Ok(coeff)
    }
}

/// Parses `lhs = rhs`.
pub fn parse_relation(text: &str) -> Result<Relation, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    Parser { toks, pos: 0 }.relation()
}

/// Parses a standalone expression.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error_here(set(&["end of input", "'+'", "'-'", "'*'", "'/'"])));
    }
    Ok(e)
}

/// Parses a relation file: one relation per line, `#` comments, blank lines
/// skipped. Returns the 1-based line number of each relation.
pub fn parse_relation_file(text: &str) -> Result<Vec<(usize, Relation)>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (i, raw) in text.split('\n').enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if !body.trim().is_empty() {
            let rel = parse_relation(body).map_err(|mut e| {
                e.span.start += offset;
                e.span.end += offset;
                e.span.line = i + 1;
                e
            })?;
            out.push((i + 1, rel));
        }
        offset += raw.len() + 1;
    }
    Ok(out)
}

// ---------------------------------------------------------------- renderer

fn render_shift(out: &mut String, q: &BigRational) {
    let (n, d) = (q.numer().abs(), q.denom().clone());
    if !n.is_one() {
        out.push_str(&format!("{n}*"));
    }
    out.push_str("hbar");
    if !d.is_one() {
        out.push_str(&format!("/{d}"));
    }
}

pub fn render_arg(a: &Arg) -> String {
    let mut s = a.var.name().to_string();
    match a.central {
        1 => s.push('+'),
        -1 => s.push('-'),
        _ => {}
    }
    if !a.shift.is_zero() {
        s.push_str(if a.shift.is_negative() { " - " } else { " + " });
        render_shift(&mut s, &a.shift);
    }
    s
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

fn render_into(out: &mut String, e: &Expr, min: u8) {
    let wrap = prec(e) < min;
    if wrap {
        out.push('(');
    }
    match e {
        Expr::Num(n) => out.push_str(&n.to_string()),
        Expr::Const(Constant::Hbar) => out.push_str("hbar"),
        Expr::Const(Constant::Central) => out.push('c'),
        Expr::Spectral { var, central } => {
            out.push_str(var.name());
            match central {
                1 => out.push('+'),
                -1 => out.push('-'),
                _ => {}
            }
        }
        Expr::Atom(a) => {
            out.push_str(&a.name.to_string());
            if let Some(s) = a.sign {
                out.push(s.symbol());
            }
            out.push('(');
            out.push_str(&render_arg(&a.arg));
            out.push(')');
        }
        Expr::Delta(a, b) => {
            out.push_str(&format!("delta({}, {})", render_arg(a), render_arg(b)));
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            render_into(out, a, 1);
            out.push_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " });
            render_into(out, b, 2);
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            render_into(out, a, 2);
            out.push(if matches!(e, Expr::Mul(..)) { '*' } else { '/' });
            render_into(out, b, 3);
        }
        Expr::Neg(a) => {
            out.push('-');
            render_into(out, a, 3);
        }
        Expr::Pow(a, n) => {
            render_into(out, a, 5);
            out.push_str(&format!("^{n}"));
        }
        Expr::Inv(a) => {
            out.push_str("inv(");
            render_into(out, a, 0);
            out.push(')');
        }
        Expr::Comm(a, b) | Expr::Anti(a, b) | Expr::Tensor(a, b) => {
            let (open, close) = match e {
                Expr::Comm(..) => ("[", "]"),
                Expr::Anti(..) => ("{", "}"),
                _ => ("tensor(", ")"),
            };
            out.push_str(open);
            render_into(out, a, 0);
            out.push_str(", ");
            render_into(out, b, 0);
            out.push_str(close);
        }
    }
    if wrap {
        out.push(')');
    }
}

pub fn render_expr(e: &Expr) -> String {
    let mut s = String::new();
    render_into(&mut s, e, 0);
    s
}

pub fn render_relation(r: &Relation) -> String {
    format!("{} = {}", render_expr(&r.lhs), render_expr(&r.rhs))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_expr(self))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_relation(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_of_k1() {
        let r = parse_relation("[k1+(u), k1-(v)] = 0").unwrap();
        match &r.lhs {
            Expr::Comm(a, b) => {
                assert!(matches!(**a, Expr::Atom(Atom { name: AtomName::K1, sign: Some(Sign::Plus), .. })));
                assert!(matches!(**b, Expr::Atom(Atom { name: AtomName::K1, sign: Some(Sign::Minus), .. })));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(r.rhs, Expr::Num(BigInt::zero()));
    }

    #[test]
    fn anticommutator_of_odd_atoms() {
        let r = parse_relation("{X+(u), X+(v)} = 0").unwrap();
        match &r.lhs {
            Expr::Anti(a, b) => {
                assert_eq!(a.parity(), Some(1));
                assert_eq!(b.parity(), Some(1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_close_paren() {
        let e = parse_relation("k1+(u").unwrap_err();
        assert_eq!(e.span.start, 5);
        assert!(e.expected.contains("')'"));
    }

    #[test]
    fn central_shift_tokens() {
        let e = parse_expr("(u+ - v- + hbar)/(u+v)").unwrap();
        let r = render_expr(&e);
        assert_eq!(r, "(u+ - v- + hbar)/(u + v)");
        assert_eq!(parse_expr(&r).unwrap(), e);
    }

    #[test]
    fn explicit_shifts_in_arguments() {
        let e = parse_expr("K+(u + hbar/2)*E(v- - 3*hbar/2)").unwrap();
        assert_eq!(render_expr(&e), "K+(u + hbar/2)*E(v- - 3*hbar/2)");
        let compact = parse_expr("K+(u+hbar/2)*E(v--3*hbar/2)").unwrap();
        assert_eq!(compact, e);
    }

    #[test]
    fn zero_and_nested_inverse() {
        assert_eq!(render_expr(&parse_expr("0").unwrap()), "0");
        assert_eq!(render_expr(&parse_expr("inv(k2-(v))").unwrap()), "inv(k2-(v))");
    }

    #[test]
    fn even_anticommutator_is_rejected() {
        let e = parse_relation("{k1+(u), k2+(v)} = 0").unwrap_err();
        assert_eq!((e.span.start, e.span.end), (0, 16));
    }

    #[test]
    fn precedence_round_trip() {
        for s in [
            "-c",
            "1 - (2 - 3)",
            "hbar/(u - v)*k1+(u)",
            "(u - v)^2*H+(u)",
            "-hbar*e+(u) + -f-(v)",
            "tensor(E+(u), 1) + tensor(H+(u), E+(u))",
            "2/3/4",
        ] {
            let Ok(e) = parse_expr(s) else { continue };
            let r = render_expr(&e);
            assert_eq!(parse_expr(&r).unwrap(), e, "{s} -> {r}");
        }
    }
}
