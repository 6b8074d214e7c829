//! S-expression concrete syntax for fractional programs.
//!
//! ```text
//! ty   ::= 0 | 1 | (+ ty ty) | (* ty ty) | (/ val : ty)
//! val  ::= tt | (inl val) | (inr val) | (val , val) | gc | 𝔽 | 𝕋
//! comb ::= prim @ ty | (; comb comb) | (p+ comb comb) | (p* comb comb)
//!        | (eta val : ty) | (eps val : ty)
//! ```
//!
//! `Display` on [`TyD`], [`ValD`] and [`CombD`] is the canonical printer;
//! [`pretty`] breaks long programs over several lines.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::comb::Path;
use crate::frac::{CombD, TyD, TypeErrorD, ValD};
use crate::prim::{Prim, PrimOp};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: Pos,
    pub end: Pos,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{span}: {error}")]
    Type { span: Span, error: TypeErrorD },
}

impl ParseError {
    fn at(pos: Pos, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: pos.line,
            col: pos.col,
            msg: msg.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Colon,
    At,
    Atom(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Open => f.write_str("'('"),
            Tok::Close => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Colon => f.write_str("':'"),
            Tok::At => f.write_str("'@'"),
            Tok::Atom(a) => write!(f, "'{a}'"),
        }
    }
}

fn tokenize(src: &str) -> Vec<(Tok, Span)> {
    let mut out: Vec<(Tok, Span)> = Vec::new();
    let mut pos = Pos { line: 1, col: 1 };
    let mut chars = src.chars().peekable();
    let mut atom = String::new();
    let mut atom_start = pos;
    let mut atom_end = pos;
    let flush = |atom: &mut String, out: &mut Vec<(Tok, Span)>, start: Pos, end: Pos| {
        if !atom.is_empty() {
            out.push((Tok::Atom(std::mem::take(atom)), Span { start, end }));
        }
    };
    while let Some(c) = chars.next() {
        let here = pos;
        if c == '\n' {
            pos.line += 1;
            pos.col = 1;
        } else {
            pos.col += 1;
        }
        if c == ';' && atom.is_empty() && !matches!(out.last(), Some((Tok::Open, _))) {
            // line comment
            flush(&mut atom, &mut out, atom_start, atom_end);
            for c in chars.by_ref() {
                if c == '\n' {
                    pos.line += 1;
                    pos.col = 1;
                    break;
                }
            }
            continue;
        }
        let single = match c {
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            '@' => Some(Tok::At),
            _ => None,
        };
        if single.is_some() || c.is_whitespace() {
            flush(&mut atom, &mut out, atom_start, atom_end);
            if let Some(t) = single {
                out.push((
                    t,
                    Span {
                        start: here,
                        end: pos,
                    },
                ));
            }
        } else {
            if atom.is_empty() {
                atom_start = here;
            }
            atom.push(c);
            atom_end = pos;
        }
    }
    flush(&mut atom, &mut out, atom_start, atom_end);
    out
}

/// Source span of every sub-term, keyed by its path from the root.
pub type SpanMap = HashMap<Path, Span>;

/// A parsed and type-checked program.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub comb: CombD,
    pub dom: TyD,
    pub cod: TyD,
    pub spans: SpanMap,
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    i: usize,
    eof: Pos,
}

impl Parser {
    fn new(src: &str) -> Parser {
        let toks = tokenize(src);
        let eof = toks
            .last()
            .map(|t| t.1.end)
            .unwrap_or(Pos { line: 1, col: 1 });
        Parser { toks, i: 0, eof }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map(|t| t.1.start).unwrap_or(self.eof)
    }

    fn last_end(&self) -> Pos {
        self.toks[self.i - 1].1.end
    }

    fn next(&mut self, what: &str) -> Result<Tok, ParseError> {
        match self.toks.get(self.i) {
            Some((t, _)) => {
                self.i += 1;
                Ok(t.clone())
            }
            None => Err(ParseError::at(
                self.eof,
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let pos = self.pos();
        let got = self.next(&want.to_string())?;
        if got == want {
            Ok(())
        } else {
            Err(ParseError::at(pos, format!("expected {want}, found {got}")))
        }
    }

    fn end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseError::at(
                self.pos(),
                format!("unexpected {t} after end of term"),
            )),
        }
    }

    fn ty(&mut self) -> Result<TyD, ParseError> {
        let pos = self.pos();
        match self.next("a type")? {
            Tok::Atom(a) if a == "0" => Ok(TyD::Zero),
            Tok::Atom(a) if a == "1" => Ok(TyD::One),
            Tok::Open => {
                let head_pos = self.pos();
                let t = match self.next("'+', '*' or '/'")? {
                    Tok::Atom(a) if a == "+" => TyD::sum(self.ty()?, self.ty()?),
                    Tok::Atom(a) if a == "*" => TyD::prod(self.ty()?, self.ty()?),
                    Tok::Atom(a) if a == "/" => {
                        let v = self.val()?;
                        self.expect(Tok::Colon)?;
                        TyD::frac(self.ty()?, v)
                    }
                    t => {
                        return Err(ParseError::at(
                            head_pos,
                            format!("expected '+', '*' or '/', found {t}"),
                        ))
                    }
                };
                self.expect(Tok::Close)?;
                Ok(t)
            }
            t => Err(ParseError::at(pos, format!("expected a type, found {t}"))),
        }
    }

    fn val(&mut self) -> Result<ValD, ParseError> {
        let pos = self.pos();
        match self.next("a value")? {
            Tok::Atom(a) => match a.as_str() {
                "tt" => Ok(ValD::Unit),
                "gc" => Ok(ValD::Gc),
                "𝔽" | "false" => Ok(ValD::ff()),
                "𝕋" | "true" => Ok(ValD::tt()),
                _ => Err(ParseError::at(
                    pos,
                    format!("expected a value, found '{a}'"),
                )),
            },
            Tok::Open => {
                let v = match self.peek() {
                    Some(Tok::Atom(a)) if a == "inl" || a == "inr" => {
                        let left = a == "inl";
                        self.i += 1;
                        let v = self.val()?;
                        if left {
                            ValD::inl(v)
                        } else {
                            ValD::inr(v)
                        }
                    }
                    _ => {
                        let a = self.val()?;
                        self.expect(Tok::Comma)?;
                        ValD::pair(a, self.val()?)
                    }
                };
                self.expect(Tok::Close)?;
                Ok(v)
            }
            t => Err(ParseError::at(pos, format!("expected a value, found {t}"))),
        }
    }

    fn comb(&mut self, path: Path, spans: &mut SpanMap) -> Result<CombD, ParseError> {
        let start = self.pos();
        let c = match self.next("a combinator")? {
            Tok::Atom(a) => {
                let Some(op) = PrimOp::from_keyword(&a) else {
                    return Err(ParseError::at(start, format!("unknown primitive '{a}'")));
                };
                self.expect(Tok::At)?;
                let ty_pos = self.pos();
                let at = self.ty()?;
                match Prim::instantiate(op, &at) {
                    Some(p) => CombD::Prim(p),
                    None => {
                        return Err(ParseError::at(
                            ty_pos,
                            format!("{a} cannot be instantiated at {at}"),
                        ))
                    }
                }
            }
            Tok::Open => {
                let head_pos = self.pos();
                let head = match self.next("a combinator form")? {
                    Tok::Atom(h) => h,
                    t => {
                        return Err(ParseError::at(
                            head_pos,
                            format!("expected a combinator form, found {t}"),
                        ))
                    }
                };
                let c = match head.as_str() {
                    ";" | "p+" | "p*" => {
                        let a = self.comb(path.child(0), spans)?;
                        let b = self.comb(path.child(1), spans)?;
                        match head.as_str() {
                            ";" => a.seq(b),
                            "p+" => a.plus(b),
                            _ => a.times(b),
                        }
                    }
                    "eta" | "eps" => {
                        let v = self.val()?;
                        self.expect(Tok::Colon)?;
                        let t = self.ty()?;
                        if head == "eta" {
                            CombD::Eta(v, t)
                        } else {
                            CombD::Eps(v, t)
                        }
                    }
                    _ => {
                        return Err(ParseError::at(
                            head_pos,
                            format!("expected ';', 'p+', 'p*', 'eta' or 'eps', found '{head}'"),
                        ))
                    }
                };
                self.expect(Tok::Close)?;
                c
            }
            t => {
                return Err(ParseError::at(
                    start,
                    format!("expected a combinator, found {t}"),
                ))
            }
        };
        spans.insert(
            path,
            Span {
                start,
                end: self.last_end(),
            },
        );
        Ok(c)
    }
}

/// Parses a program without type checking it.
pub fn parse_untyped(src: &str) -> Result<(CombD, SpanMap), ParseError> {
    let mut p = Parser::new(src);
    let mut spans = SpanMap::new();
    if p.peek().is_none() {
        return Err(ParseError::at(p.eof, "empty program"));
    }
    let c = p.comb(Path::root(), &mut spans)?;
    p.end()?;
    Ok((c, spans))
}

/// Parses and type checks a program.
pub fn parse(src: &str) -> Result<Parsed, ParseError> {
    let (comb, spans) = parse_untyped(src)?;
    match comb.infer() {
        Ok((dom, cod)) => Ok(Parsed {
            comb,
            dom,
            cod,
            spans,
        }),
        Err(error) => {
            let span = locate(&spans, error.path());
            Err(ParseError::Type { span, error })
        }
    }
}

fn locate(spans: &SpanMap, path: &Path) -> Span {
    let mut p = path.clone();
    loop {
        if let Some(s) = spans.get(&p) {
            return *s;
        }
        let steps = p.steps();
        if steps.is_empty() {
            return Span {
                start: Pos { line: 1, col: 1 },
                end: Pos { line: 1, col: 1 },
            };
        }
        p = steps[..steps.len() - 1]
            .iter()
            .fold(Path::root(), |acc, s| acc.child(*s));
    }
}

pub fn parse_val(src: &str) -> Result<ValD, ParseError> {
    let mut p = Parser::new(src);
    let v = p.val()?;
    p.end()?;
    Ok(v)
}

pub fn parse_ty(src: &str) -> Result<TyD, ParseError> {
    let mut p = Parser::new(src);
    let t = p.ty()?;
    p.end()?;
    Ok(t)
}

const WIDTH: usize = 80;

/// Multi-line rendering: compound forms that do not fit on one line put
/// each operand on its own indented line.
pub fn pretty(c: &CombD) -> String {
    let mut out = String::new();
    pretty_into(c, 0, &mut out);
    out
}

fn pretty_into(c: &CombD, indent: usize, out: &mut String) {
    let flat = c.to_string();
    let (head, a, b) = match c {
        CombD::Seq(a, b) => (";", a, b),
        CombD::Plus(a, b) => ("p+", a, b),
        CombD::Times(a, b) => ("p*", a, b),
        _ => {
            out.push_str(&flat);
            return;
        }
    };
    if indent + flat.chars().count() <= WIDTH {
        out.push_str(&flat);
        return;
    }
    out.push('(');
    out.push_str(head);
    for sub in [a, b] {
        out.push('\n');
        out.push_str(&" ".repeat(indent + 2));
        pretty_into(sub, indent + 2, out);
    }
    out.push(')');
}
