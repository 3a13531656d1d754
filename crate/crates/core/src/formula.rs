//! Formula ASTs, the concrete grammar and the printer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Error;
use crate::signature::{Polarity, Signature, COIMP, IMP};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Bot,
    Top,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Neg(Box<Formula>),
    App(String, Vec<Formula>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub lhs: Formula,
    pub rhs: Formula,
}

pub fn var(name: &str) -> Formula {
    Formula::Var(name.to_string())
}

pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

pub fn neg(a: Formula) -> Formula {
    Formula::Neg(Box::new(a))
}

pub fn app(name: &str, args: Vec<Formula>) -> Formula {
    Formula::App(name.to_string(), args)
}

impl Formula {
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Formula::Var(p) => {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
            Formula::Bot | Formula::Top => {}
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Neg(a) => a.collect_vars(out),
            Formula::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn connectives(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::App(name, _) = f {
                out.insert(name.clone());
            }
        });
        out
    }

    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Neg(a) => a.visit(f),
            Formula::App(_, args) => args.iter().for_each(|a| a.visit(f)),
            _ => {}
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bot | Formula::Top => 0,
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Neg(a) => 1 + a.depth(),
            Formula::App(_, args) => 1 + args.iter().map(Formula::depth).max().unwrap_or(0),
        }
    }

    /// Check arities, membership in `sig` and that negation only occurs in
    /// the classical dialect.
    pub fn check(&self, sig: &Signature) -> Result<(), Error> {
        let mut err = None;
        self.visit(&mut |f| {
            if err.is_some() {
                return;
            }
            match f {
                Formula::Neg(_) if !sig.is_bae() => {
                    err = Some(Error::SignatureMismatch(format!(
                        "negation is not available in `{}`",
                        sig.name
                    )))
                }
                Formula::App(name, args) => match sig.get(name) {
                    None => err = Some(Error::UnknownConnective(name.clone())),
                    Some(c) if c.arity != args.len() => {
                        err = Some(Error::ArityMismatch {
                            name: name.clone(),
                            arity: c.arity,
                            found: args.len(),
                        })
                    }
                    _ => {}
                },
                _ => {}
            }
        });
        err.map_or(Ok(()), Err)
    }

    pub fn parse(text: &str, sig: &Signature) -> Result<Formula, Error> {
        let mut p = Parser::new(text, sig)?;
        let f = p.arrow()?;
        p.expect_end()?;
        Ok(f)
    }
}

impl Inequality {
    pub fn new(lhs: Formula, rhs: Formula) -> Inequality {
        Inequality { lhs, rhs }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.lhs.collect_vars(&mut out);
        self.rhs.collect_vars(&mut out);
        out
    }

    pub fn connectives(&self) -> BTreeSet<String> {
        let mut c = self.lhs.connectives();
        c.extend(self.rhs.connectives());
        c
    }

    pub fn check(&self, sig: &Signature) -> Result<(), Error> {
        self.lhs.check(sig)?;
        self.rhs.check(sig)
    }

    pub fn parse(text: &str, sig: &Signature) -> Result<Inequality, Error> {
        let mut p = Parser::new(text, sig)?;
        let lhs = p.arrow()?;
        p.expect(&Tok::Leq)?;
        let rhs = p.arrow()?;
        p.expect_end()?;
        Ok(Inequality { lhs, rhs })
    }

    pub fn map(&self, mut f: impl FnMut(&Formula) -> Formula) -> Inequality {
        Inequality {
            lhs: f(&self.lhs),
            rhs: f(&self.rhs),
        }
    }
}

/// Either a formula or an inequality, depending on a top-level `<=`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Formula(Formula),
    Inequality(Inequality),
}

pub fn parse(text: &str, sig: &Signature) -> Result<Parsed, Error> {
    let mut p = Parser::new(text, sig)?;
    let lhs = p.arrow()?;
    if p.peek() == Some(&Tok::Leq) {
        p.bump();
        let rhs = p.arrow()?;
        p.expect_end()?;
        Ok(Parsed::Inequality(Inequality { lhs, rhs }))
    } else {
        p.expect_end()?;
        Ok(Parsed::Formula(lhs))
    }
}

/// Order-type assignment on proposition variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarOrderType(pub BTreeMap<String, Polarity>);

impl VarOrderType {
    pub fn uniform<S: AsRef<str>>(vars: &[S], p: Polarity) -> VarOrderType {
        VarOrderType(vars.iter().map(|v| (v.as_ref().to_string(), p)).collect())
    }

    pub fn from_pairs(pairs: &[(&str, Polarity)]) -> VarOrderType {
        VarOrderType(pairs.iter().map(|(v, p)| (v.to_string(), *p)).collect())
    }

    /// The `i`-th assignment over `vars`: bit `k` of `i` set means `vars[k]` is antitone.
    pub fn from_index<S: AsRef<str>>(vars: &[S], i: usize) -> VarOrderType {
        VarOrderType(
            vars.iter()
                .enumerate()
                .map(|(k, v)| {
                    let p = if i >> k & 1 == 1 { Polarity::Dual } else { Polarity::One };
                    (v.as_ref().to_string(), p)
                })
                .collect(),
        )
    }

    pub fn get(&self, v: &str) -> Option<Polarity> {
        self.0.get(v).copied()
    }

    pub fn of(&self, v: &str) -> Result<Polarity, Error> {
        self.get(v).ok_or_else(|| Error::UncoveredVariable(v.to_string()))
    }

    pub fn opposite(&self) -> VarOrderType {
        VarOrderType(self.0.iter().map(|(k, p)| (k.clone(), p.opposite())).collect())
    }

    pub fn covers<S: AsRef<str>>(&self, vars: &[S]) -> Result<(), Error> {
        for v in vars {
            self.of(v.as_ref())?;
        }
        Ok(())
    }

    /// Parse `p=1,q=d`.
    pub fn parse(text: &str) -> Result<VarOrderType, Error> {
        let mut m = BTreeMap::new();
        for (i, part) in text.split(',').map(str::trim).enumerate() {
            if part.is_empty() {
                continue;
            }
            let bad = || Error::Parse {
                line: 1,
                pos: i + 1,
                msg: format!("expected `var=1` or `var=d`, found `{part}`"),
            };
            let (v, p) = part.split_once('=').ok_or_else(bad)?;
            let p = Polarity::parse(p.trim()).ok_or_else(bad)?;
            m.insert(v.trim().to_string(), p);
        }
        Ok(VarOrderType(m))
    }

    /// Restrict to `vars`, in their order, as a display string.
    pub fn render<S: AsRef<str>>(&self, vars: &[S]) -> String {
        vars.iter()
            .filter_map(|v| self.get(v.as_ref()).map(|p| format!("{}={}", v.as_ref(), p)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for VarOrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.0.iter().map(|(v, p)| format!("{v}={p}")).collect();
        f.write_str(&parts.join(","))
    }
}

// ---- lexer / parser ----

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    And,
    Or,
    Imp,
    Coimp,
    Leq,
    LParen,
    RParen,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, Error> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: String| Error::Parse { line: 1, pos: pos + 1, msg };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = text.get(i..i + 2).unwrap_or("");
        let (tok, len) = match two {
            "/\\" => (Tok::And, 2),
            "\\/" => (Tok::Or, 2),
            "->" => (Tok::Imp, 2),
            ">-" => (Tok::Coimp, 2),
            "<=" => (Tok::Leq, 2),
            _ => match c {
                b'~' => (Tok::Tilde, 1),
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b',' => (Tok::Comma, 1),
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = i;
                    let mut j = i;
                    while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                        j += 1;
                    }
                    (Tok::Ident(text[start..j].to_string()), j - start)
                }
                _ => {
                    let ch = text[i..].chars().next().unwrap_or('?');
                    return Err(err(i, format!("unexpected character `{ch}`")));
                }
            },
        };
        out.push((tok, i));
        i += len;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn new(text: &str, sig: &'a Signature) -> Result<Parser<'a>, Error> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
            end: text.len(),
            sig,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1) + 1
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.0.clone());
        self.at += 1;
        t
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: 1, pos: self.pos(), msg: msg.into() }
    }

    fn expect(&mut self, tok: &Tok) -> Result<(), Error> {
        if self.peek() == Some(tok) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {}", describe(tok))))
        }
    }

    fn expect_end(&self) -> Result<(), Error> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected {}", describe(t)))),
        }
    }

    fn infix(&self, name: &str) -> Result<(), Error> {
        match self.sig.get(name) {
            Some(c) if c.arity == 2 => Ok(()),
            Some(c) => Err(Error::ArityMismatch { name: name.into(), arity: c.arity, found: 2 }),
            None => Err(Error::UnknownConnective(name.into())),
        }
    }

    fn arrow(&mut self) -> Result<Formula, Error> {
        let lhs = self.disj()?;
        let name = match self.peek() {
            Some(Tok::Imp) => IMP,
            Some(Tok::Coimp) => COIMP,
            _ => return Ok(lhs),
        };
        self.infix(name)?;
        self.bump();
        let rhs = self.arrow()?;
        Ok(app(name, vec![lhs, rhs]))
    }

    fn disj(&mut self) -> Result<Formula, Error> {
        let mut f = self.conj()?;
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            f = or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula, Error> {
        let mut f = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.bump();
            f = and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, Error> {
        match self.peek().cloned() {
            Some(Tok::Tilde) => {
                if !self.sig.is_bae() {
                    return Err(self.error("negation requires a classical signature"));
                }
                self.bump();
                Ok(neg(self.unary()?))
            }
            Some(Tok::Ident(name)) => {
                let Some(c) = self.sig.get(&name) else {
                    return self.atom();
                };
                let arity = c.arity;
                self.bump();
                if arity == 1 && self.peek() != Some(&Tok::LParen) {
                    return Ok(app(&name, vec![self.unary()?]));
                }
                let mut args = Vec::new();
                if self.peek() == Some(&Tok::LParen) {
                    self.bump();
                    if self.peek() != Some(&Tok::RParen) {
                        loop {
                            args.push(self.arrow()?);
                            if self.peek() == Some(&Tok::Comma) {
                                self.bump();
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect(&Tok::RParen)?;
                }
                if args.len() != arity {
                    return Err(Error::ArityMismatch { name, arity, found: args.len() });
                }
                Ok(app(&name, args))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, Error> {
        match self.bump() {
            Some(Tok::Ident(name)) => Ok(match name.as_str() {
                "bot" => Formula::Bot,
                "top" => Formula::Top,
                _ => {
                    if name == "neg" || name == "boxle" || name == "diage" {
                        self.at -= 1;
                        return Err(Error::UnknownConnective(name));
                    }
                    Formula::Var(name)
                }
            }),
            Some(Tok::LParen) => {
                let f = self.arrow()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(t) => {
                self.at -= 1;
                Err(self.error(format!("unexpected {}", describe(&t))))
            }
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Tilde => "`~`".into(),
        Tok::And => "`/\\`".into(),
        Tok::Or => "`\\/`".into(),
        Tok::Imp => "`->`".into(),
        Tok::Coimp => "`>-`".into(),
        Tok::Leq => "`<=`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
    }
}

// ---- printer ----

const ARROW: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;
const ATOM: u8 = 5;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::App(n, args) if args.len() == 2 && (n == IMP || n == COIMP) => ARROW,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Neg(_) => UNARY,
        Formula::App(_, args) if args.len() == 1 => UNARY,
        _ => ATOM,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(f) < min {
        write!(out, "(")?;
        write_at(f, 0, out)?;
        return write!(out, ")");
    }
    match f {
        Formula::Var(p) => write!(out, "{p}"),
        Formula::Bot => write!(out, "bot"),
        Formula::Top => write!(out, "top"),
        Formula::And(a, b) => {
            write_at(a, AND, out)?;
            write!(out, " /\\ ")?;
            write_at(b, UNARY, out)
        }
        Formula::Or(a, b) => {
            write_at(a, OR, out)?;
            write!(out, " \\/ ")?;
            write_at(b, AND, out)
        }
        Formula::Neg(a) => {
            write!(out, "~")?;
            write_at(a, UNARY, out)
        }
        Formula::App(n, args) if args.len() == 2 && (n == IMP || n == COIMP) => {
            write_at(&args[0], OR, out)?;
            write!(out, " {n} ")?;
            write_at(&args[1], OR, out)
        }
        Formula::App(n, args) if args.len() == 1 => {
            write!(out, "{n} ")?;
            write_at(&args[0], UNARY, out)
        }
        Formula::App(n, args) if args.is_empty() => write!(out, "{n}"),
        Formula::App(n, args) => {
            write!(out, "{n}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    write!(out, ", ")?;
                }
                write_at(a, 0, out)?;
            }
            write!(out, ")")
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, 0, f)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}
