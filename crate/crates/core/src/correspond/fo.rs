//! First-order sentences over the frame vocabulary: `<=`, `=` and one
//! relation symbol per connective.

use std::fmt;

use crate::error::Error;
use crate::semantics::Frame;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fo {
    True,
    False,
    Eq(String, String),
    Leq(String, String),
    /// Relation symbol of a connective, applied to world variables.
    Rel(String, Vec<String>),
    Not(Box<Fo>),
    And(Vec<Fo>),
    Or(Vec<Fo>),
    Implies(Box<Fo>, Box<Fo>),
    Forall(String, Box<Fo>),
    Exists(String, Box<Fo>),
}

impl Fo {
    pub fn not(a: Fo) -> Fo {
        match a {
            Fo::True => Fo::False,
            Fo::False => Fo::True,
            Fo::Not(x) => *x,
            a => Fo::Not(Box::new(a)),
        }
    }

    pub fn and(parts: Vec<Fo>) -> Fo {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Fo::True => {}
                Fo::False => return Fo::False,
                Fo::And(xs) => out.extend(xs),
                p => out.push(p),
            }
        }
        match out.len() {
            0 => Fo::True,
            1 => out.pop().unwrap(),
            _ => Fo::And(out),
        }
    }

    pub fn or(parts: Vec<Fo>) -> Fo {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Fo::False => {}
                Fo::True => return Fo::True,
                Fo::Or(xs) => out.extend(xs),
                p => out.push(p),
            }
        }
        match out.len() {
            0 => Fo::False,
            1 => out.pop().unwrap(),
            _ => Fo::Or(out),
        }
    }

    pub fn implies(a: Fo, b: Fo) -> Fo {
        match (a, b) {
            (Fo::True, b) => b,
            (Fo::False, _) | (_, Fo::True) => Fo::True,
            (a, Fo::False) => Fo::not(a),
            (a, b) => Fo::Implies(Box::new(a), Box::new(b)),
        }
    }

    pub fn forall(v: &str, body: Fo) -> Fo {
        if !body.mentions(v) {
            return body;
        }
        Fo::Forall(v.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, body: Fo) -> Fo {
        if !body.mentions(v) {
            return body;
        }
        Fo::Exists(v.to_string(), Box::new(body))
    }

    pub fn forall_all(vs: &[String], body: Fo) -> Fo {
        vs.iter().rev().fold(body, |b, v| Fo::forall(v, b))
    }

    /// Whether `v` occurs free.
    pub fn mentions(&self, v: &str) -> bool {
        match self {
            Fo::True | Fo::False => false,
            Fo::Eq(a, b) | Fo::Leq(a, b) => a == v || b == v,
            Fo::Rel(_, xs) => xs.iter().any(|x| x == v),
            Fo::Not(a) => a.mentions(v),
            Fo::And(xs) | Fo::Or(xs) => xs.iter().any(|x| x.mentions(v)),
            Fo::Implies(a, b) => a.mentions(v) || b.mentions(v),
            Fo::Forall(x, b) | Fo::Exists(x, b) => x != v && b.mentions(v),
        }
    }

    /// Relation symbols used.
    pub fn relations(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let Fo::Rel(r, _) = f {
                if !out.contains(r) {
                    out.push(r.clone());
                }
            }
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(&Fo)) {
        f(self);
        match self {
            Fo::Not(a) | Fo::Forall(_, a) | Fo::Exists(_, a) => a.walk(f),
            Fo::And(xs) | Fo::Or(xs) => xs.iter().for_each(|x| x.walk(f)),
            Fo::Implies(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            _ => {}
        }
    }

    pub fn to_sexpr(&self) -> String {
        match self {
            Fo::True => "true".into(),
            Fo::False => "false".into(),
            Fo::Eq(a, b) => format!("(= {a} {b})"),
            Fo::Leq(a, b) => format!("(<= {a} {b})"),
            Fo::Rel(r, xs) => format!("(R_{r} {})", xs.join(" ")),
            Fo::Not(a) => format!("(not {})", a.to_sexpr()),
            Fo::And(xs) => format!("(and {})", xs.iter().map(Fo::to_sexpr).collect::<Vec<_>>().join(" ")),
            Fo::Or(xs) => format!("(or {})", xs.iter().map(Fo::to_sexpr).collect::<Vec<_>>().join(" ")),
            Fo::Implies(a, b) => format!("(implies {} {})", a.to_sexpr(), b.to_sexpr()),
            Fo::Forall(v, b) => format!("(forall {v} {})", b.to_sexpr()),
            Fo::Exists(v, b) => format!("(exists {v} {})", b.to_sexpr()),
        }
    }

    pub fn parse_sexpr(text: &str) -> Result<Fo, Error> {
        let toks: Vec<String> = text
            .replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(str::to_string)
            .collect();
        let mut pos = 0;
        let f = parse_sx(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(sx_err("trailing input"));
        }
        Ok(f)
    }

    /// Closed-sentence check.
    pub fn free_vars(&self) -> Vec<String> {
        fn go(f: &Fo, bound: &mut Vec<String>, out: &mut Vec<String>) {
            let see = |v: &String, bound: &Vec<String>, out: &mut Vec<String>| {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            };
            match f {
                Fo::True | Fo::False => {}
                Fo::Eq(a, b) | Fo::Leq(a, b) => {
                    see(a, bound, out);
                    see(b, bound, out);
                }
                Fo::Rel(_, xs) => xs.iter().for_each(|x| see(x, bound, out)),
                Fo::Not(a) => go(a, bound, out),
                Fo::And(xs) | Fo::Or(xs) => xs.iter().for_each(|x| go(x, bound, out)),
                Fo::Implies(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Fo::Forall(v, b) | Fo::Exists(v, b) => {
                    bound.push(v.clone());
                    go(b, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Truth on a frame, by enumerating every quantifier.
    pub fn holds(&self, fr: &Frame) -> Result<bool, Error> {
        let c = CompiledFo::new(self)?;
        Ok(c.holds(fr))
    }
}

fn sx_err(msg: &str) -> Error {
    Error::Parse { line: 1, pos: 0, msg: msg.to_string() }
}

fn parse_sx(toks: &[String], pos: &mut usize) -> Result<Fo, Error> {
    let tok = toks.get(*pos).ok_or_else(|| sx_err("unexpected end"))?.clone();
    *pos += 1;
    match tok.as_str() {
        "true" => return Ok(Fo::True),
        "false" => return Ok(Fo::False),
        "(" => {}
        t => return Err(sx_err(&format!("unexpected `{t}`"))),
    }
    let head = toks.get(*pos).ok_or_else(|| sx_err("unexpected end"))?.clone();
    *pos += 1;
    let atom = |pos: &mut usize| -> Result<String, Error> {
        let t = toks.get(*pos).ok_or_else(|| sx_err("unexpected end"))?;
        if t == "(" || t == ")" {
            return Err(sx_err("expected a variable"));
        }
        *pos += 1;
        Ok(t.clone())
    };
    let subs = |pos: &mut usize| -> Result<Vec<Fo>, Error> {
        let mut out = Vec::new();
        while toks.get(*pos).map(String::as_str) != Some(")") {
            out.push(parse_sx(toks, pos)?);
        }
        Ok(out)
    };
    let f = match head.as_str() {
        "=" => Fo::Eq(atom(pos)?, atom(pos)?),
        "<=" => Fo::Leq(atom(pos)?, atom(pos)?),
        "not" => Fo::Not(Box::new(parse_sx(toks, pos)?)),
        "and" => Fo::And(subs(pos)?),
        "or" => Fo::Or(subs(pos)?),
        "implies" => {
            let a = parse_sx(toks, pos)?;
            Fo::Implies(Box::new(a), Box::new(parse_sx(toks, pos)?))
        }
        "forall" | "exists" => {
            let v = atom(pos)?;
            let b = Box::new(parse_sx(toks, pos)?);
            if head == "forall" {
                Fo::Forall(v, b)
            } else {
                Fo::Exists(v, b)
            }
        }
        h => {
            let r = h.strip_prefix("R_").ok_or_else(|| sx_err(&format!("unknown head `{h}`")))?;
            let mut xs = Vec::new();
            while toks.get(*pos).map(String::as_str) != Some(")") {
                xs.push(atom(pos)?);
            }
            Fo::Rel(r.to_string(), xs)
        }
    };
    if toks.get(*pos).map(String::as_str) != Some(")") {
        return Err(sx_err("expected `)`"));
    }
    *pos += 1;
    Ok(f)
}

const PREC_IMP: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UN: u8 = 4;

fn infix(f: &Fo, ctx: u8, out: &mut String) {
    let (prec, s) = match f {
        Fo::True => (PREC_UN, "⊤".to_string()),
        Fo::False => (PREC_UN, "⊥".to_string()),
        Fo::Eq(a, b) => (PREC_UN, format!("{a} = {b}")),
        Fo::Leq(a, b) => (PREC_UN, format!("{a} ≤ {b}")),
        Fo::Rel(r, xs) => (PREC_UN, format!("R_{r}({})", xs.join(", "))),
        Fo::Not(a) => match a.as_ref() {
            Fo::Eq(x, y) => (PREC_UN, format!("{x} ≠ {y}")),
            Fo::Leq(x, y) => (PREC_UN, format!("{x} ≰ {y}")),
            a => {
                let mut s = "¬".to_string();
                infix(a, PREC_UN, &mut s);
                (PREC_UN, s)
            }
        },
        Fo::And(xs) | Fo::Or(xs) => {
            let (p, sep) = if matches!(f, Fo::And(_)) { (PREC_AND, " ∧ ") } else { (PREC_OR, " ∨ ") };
            let parts: Vec<String> = xs
                .iter()
                .map(|x| {
                    let mut s = String::new();
                    infix(x, p + 1, &mut s);
                    s
                })
                .collect();
            (p, parts.join(sep))
        }
        Fo::Implies(a, b) => {
            let mut s = String::new();
            infix(a, PREC_IMP + 1, &mut s);
            s.push_str(" → ");
            infix(b, PREC_IMP, &mut s);
            (PREC_IMP, s)
        }
        Fo::Forall(..) | Fo::Exists(..) => {
            let mut s = String::new();
            let mut cur = f;
            loop {
                match cur {
                    Fo::Forall(v, b) => {
                        s.push_str(&format!("∀{v} "));
                        cur = b;
                    }
                    Fo::Exists(v, b) => {
                        s.push_str(&format!("∃{v} "));
                        cur = b;
                    }
                    _ => break,
                }
            }
            s.push('(');
            infix(cur, 0, &mut s);
            s.push(')');
            (PREC_UN, s)
        }
    };
    if prec < ctx {
        out.push('(');
        out.push_str(&s);
        out.push(')');
    } else {
        out.push_str(&s);
    }
}

impl fmt::Display for Fo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        infix(self, 0, &mut s);
        f.write_str(&s)
    }
}

#[derive(Clone, Debug)]
enum Node {
    True,
    False,
    Eq(usize, usize),
    Leq(usize, usize),
    Rel(usize, Vec<usize>),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Forall(Box<Node>),
    Exists(Box<Node>),
}

/// A sentence with variables resolved to stack slots, for repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledFo {
    root: Node,
    rels: Vec<String>,
}

impl CompiledFo {
    pub fn new(f: &Fo) -> Result<CompiledFo, Error> {
        let free = f.free_vars();
        if !free.is_empty() {
            return Err(Error::Unsupported(format!("sentence has free variables {}", free.join(", "))));
        }
        let mut rels = Vec::new();
        let root = compile(f, &mut Vec::new(), &mut rels);
        Ok(CompiledFo { root, rels })
    }

    pub fn holds(&self, fr: &Frame) -> bool {
        let n = fr.n;
        let tables: Vec<Vec<bool>> = self
            .rels
            .iter()
            .map(|r| match fr.relation(r) {
                Some(rel) => {
                    let k = rel.arity();
                    let mut t = vec![false; n.pow(k as u32)];
                    for tup in &rel.tuples {
                        t[index(n, tup)] = true;
                    }
                    t
                }
                None => Vec::new(),
            })
            .collect();
        let mut env = Vec::new();
        eval(&self.root, fr, &tables, &mut env)
    }
}

fn index(n: usize, t: &[usize]) -> usize {
    t.iter().rev().fold(0, |acc, &x| acc * n + x)
}

fn compile(f: &Fo, scope: &mut Vec<String>, rels: &mut Vec<String>) -> Node {
    let slot = |v: &String, scope: &Vec<String>| scope.iter().rposition(|x| x == v).expect("closed");
    match f {
        Fo::True => Node::True,
        Fo::False => Node::False,
        Fo::Eq(a, b) => Node::Eq(slot(a, scope), slot(b, scope)),
        Fo::Leq(a, b) => Node::Leq(slot(a, scope), slot(b, scope)),
        Fo::Rel(r, xs) => {
            let i = rels.iter().position(|x| x == r).unwrap_or_else(|| {
                rels.push(r.clone());
                rels.len() - 1
            });
            Node::Rel(i, xs.iter().map(|x| slot(x, scope)).collect())
        }
        Fo::Not(a) => Node::Not(Box::new(compile(a, scope, rels))),
        Fo::And(xs) => Node::And(xs.iter().map(|x| compile(x, scope, rels)).collect()),
        Fo::Or(xs) => Node::Or(xs.iter().map(|x| compile(x, scope, rels)).collect()),
        Fo::Implies(a, b) => Node::Implies(Box::new(compile(a, scope, rels)), Box::new(compile(b, scope, rels))),
        Fo::Forall(v, b) | Fo::Exists(v, b) => {
            scope.push(v.clone());
            let body = Box::new(compile(b, scope, rels));
            scope.pop();
            if matches!(f, Fo::Forall(..)) {
                Node::Forall(body)
            } else {
                Node::Exists(body)
            }
        }
    }
}

fn eval(f: &Node, fr: &Frame, tables: &[Vec<bool>], env: &mut Vec<usize>) -> bool {
    match f {
        Node::True => true,
        Node::False => false,
        Node::Eq(a, b) => env[*a] == env[*b],
        Node::Leq(a, b) => fr.leq(env[*a], env[*b]),
        Node::Rel(r, xs) => {
            let t: Vec<usize> = xs.iter().map(|&x| env[x]).collect();
            tables[*r].get(index(fr.n, &t)).copied().unwrap_or(false)
        }
        Node::Not(a) => !eval(a, fr, tables, env),
        Node::And(xs) => xs.iter().all(|x| eval(x, fr, tables, env)),
        Node::Or(xs) => xs.iter().any(|x| eval(x, fr, tables, env)),
        Node::Implies(a, b) => !eval(a, fr, tables, env) || eval(b, fr, tables, env),
        Node::Forall(b) | Node::Exists(b) => {
            let all = matches!(f, Node::Forall(_));
            let mut result = all;
            for w in 0..fr.n {
                env.push(w);
                let v = eval(b, fr, tables, env);
                env.pop();
                if v != all {
                    result = v;
                    break;
                }
            }
            result
        }
    }
}

/// Relation atom shorthand.
pub fn rel(name: &str, vars: &[&str]) -> Fo {
    Fo::Rel(name.to_string(), vars.iter().map(|v| v.to_string()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sexpr_round_trip() {
        let f = Fo::forall(
            "w",
            Fo::exists("v", Fo::and(vec![rel("box", &["w", "v"]), Fo::not(Fo::Leq("v".into(), "w".into()))])),
        );
        let s = f.to_sexpr();
        assert_eq!(s, "(forall w (exists v (and (R_box w v) (not (<= v w)))))");
        assert_eq!(Fo::parse_sexpr(&s).unwrap(), f);
        assert_eq!(f.to_string(), "∀w ∃v (R_box(w, v) ∧ v ≰ w)");
    }

    #[test]
    fn free_variables() {
        let f = Fo::Forall("w".into(), Box::new(Fo::Eq("w".into(), "v".into())));
        assert_eq!(f.free_vars(), vec!["v"]);
        assert!(CompiledFo::new(&f).is_err());
    }

    #[test]
    fn smart_constructors() {
        assert_eq!(Fo::and(vec![Fo::True, Fo::False]), Fo::False);
        assert_eq!(Fo::implies(Fo::True, Fo::Eq("a".into(), "b".into())), Fo::Eq("a".into(), "b".into()));
        assert_eq!(Fo::forall("x", Fo::True), Fo::True);
    }
}
