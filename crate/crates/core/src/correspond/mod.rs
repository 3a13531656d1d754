//! A small ALBA: first approximation, approximation and residuation rules,
//! Ackermann elimination in dependency order, and the standard translation
//! of the resulting pure quasi-inequalities into first-order frame conditions.

mod fo;

pub use fo::{rel, CompiledFo, Fo};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::error::Error;
use crate::formula::{Formula, Inequality, VarOrderType};
use crate::gentree::{analyze, find_witnesses, DependencyOrder, Mode, DEFAULT_VAR_BOUND};
use crate::semantics::{enumerate_frames, EnumOptions};
use crate::semantics::{all_tuples, is_valid, Frame, ValuationKind, WorldSet};
use crate::signature::{Family, Polarity, Signature, BOX_LEQ, DIA_GEQ};
use crate::translate::{tau_eps_ineq, Options};

/// Accessibility relation behind a term operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Leq,
    Named(String),
}

/// Terms of the expanded language. `Dia` and `Bx` read a relation with
/// tuple position `at` as output: `Dia` holds at `u` when some tuple with
/// `u` at `at` has every other component in its slot, `Bx` when every such
/// tuple has some component in its slot. `slots[at]` is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Nom(String),
    Conom(String),
    Bot,
    Top,
    And(Box<Term>, Box<Term>),
    Or(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Dia { rel: Rel, at: usize, slots: Vec<Option<Term>> },
    Bx { rel: Rel, at: usize, slots: Vec<Option<Term>> },
}

fn t_and(a: Term, b: Term) -> Term {
    Term::And(Box::new(a), Box::new(b))
}

fn t_or(a: Term, b: Term) -> Term {
    Term::Or(Box::new(a), Box::new(b))
}

fn t_neg(a: Term) -> Term {
    Term::Neg(Box::new(a)).simplify()
}

impl Term {
    /// Read a formula of a classical signature.
    pub fn from_formula(f: &Formula, sig: &Signature) -> Result<Term, Error> {
        Ok(match f {
            Formula::Var(p) => Term::Var(p.clone()),
            Formula::Bot => Term::Bot,
            Formula::Top => Term::Top,
            Formula::And(a, b) => t_and(Term::from_formula(a, sig)?, Term::from_formula(b, sig)?),
            Formula::Or(a, b) => t_or(Term::from_formula(a, sig)?, Term::from_formula(b, sig)?),
            Formula::Neg(a) => Term::Neg(Box::new(Term::from_formula(a, sig)?)),
            Formula::App(name, args) => {
                let args = args.iter().map(|a| Term::from_formula(a, sig)).collect::<Result<Vec<_>, _>>()?;
                if name == DIA_GEQ {
                    return Ok(Term::Dia { rel: Rel::Leq, at: 1, slots: vec![Some(args[0].clone()), None] });
                }
                if name == BOX_LEQ {
                    return Ok(Term::Bx { rel: Rel::Leq, at: 0, slots: vec![None, Some(args[0].clone())] });
                }
                let c = sig.get(name).ok_or_else(|| Error::UnknownConnective(name.clone()))?;
                let mut slots = vec![None];
                for (a, p) in args.into_iter().zip(c.coord_types.iter()) {
                    slots.push(Some(if p.is_dual() { Term::Neg(Box::new(a)) } else { a }));
                }
                let rel = Rel::Named(c.relation_name().to_string());
                match c.family {
                    Family::F => Term::Dia { rel, at: 0, slots },
                    Family::G => Term::Bx { rel, at: 0, slots },
                }
            }
        })
    }

    fn children(&self) -> Vec<&Term> {
        match self {
            Term::And(a, b) | Term::Or(a, b) => vec![a, b],
            Term::Neg(a) => vec![a],
            Term::Dia { slots, .. } | Term::Bx { slots, .. } => slots.iter().flatten().collect(),
            _ => vec![],
        }
    }

    pub fn is_pure(&self) -> bool {
        !matches!(self, Term::Var(_)) && self.children().iter().all(|c| c.is_pure())
    }

    pub fn mentions(&self, p: &str) -> bool {
        matches!(self, Term::Var(x) if x == p) || self.children().iter().any(|c| c.mentions(p))
    }

    /// Proposition variables, in first-occurrence order.
    pub fn variables(&self, out: &mut Vec<String>) {
        if let Term::Var(x) = self {
            if !out.contains(x) {
                out.push(x.clone());
            }
        }
        for c in self.children() {
            c.variables(out);
        }
    }

    /// Nominal and conominal names.
    pub fn world_vars(&self, out: &mut Vec<String>) {
        if let Term::Nom(x) | Term::Conom(x) = self {
            if !out.contains(x) {
                out.push(x.clone());
            }
        }
        for c in self.children() {
            c.world_vars(out);
        }
    }

    /// Whether `p` occurs with the given polarity (true: under an even number of negations).
    fn occurs(&self, p: &str, positive: bool, cur: bool) -> bool {
        match self {
            Term::Var(x) => x == p && cur == positive,
            Term::Neg(a) => a.occurs(p, positive, !cur),
            _ => self.children().iter().any(|c| c.occurs(p, positive, cur)),
        }
    }

    pub fn subst(&self, p: &str, val: &Term) -> Term {
        let map_slots = |slots: &Vec<Option<Term>>| slots.iter().map(|s| s.as_ref().map(|t| t.subst(p, val))).collect();
        match self {
            Term::Var(x) if x == p => val.clone(),
            Term::And(a, b) => t_and(a.subst(p, val), b.subst(p, val)),
            Term::Or(a, b) => t_or(a.subst(p, val), b.subst(p, val)),
            Term::Neg(a) => Term::Neg(Box::new(a.subst(p, val))),
            Term::Dia { rel, at, slots } => Term::Dia { rel: rel.clone(), at: *at, slots: map_slots(slots) },
            Term::Bx { rel, at, slots } => Term::Bx { rel: rel.clone(), at: *at, slots: map_slots(slots) },
            t => t.clone(),
        }
    }

    pub fn simplify(&self) -> Term {
        match self {
            Term::Neg(a) => match a.simplify() {
                Term::Neg(x) => *x,
                Term::Nom(x) => Term::Conom(x),
                Term::Conom(x) => Term::Nom(x),
                Term::Top => Term::Bot,
                Term::Bot => Term::Top,
                x => Term::Neg(Box::new(x)),
            },
            Term::And(a, b) => match (a.simplify(), b.simplify()) {
                (Term::Top, x) | (x, Term::Top) => x,
                (Term::Bot, _) | (_, Term::Bot) => Term::Bot,
                (x, y) if x == y => x,
                (x, y) => t_and(x, y),
            },
            Term::Or(a, b) => match (a.simplify(), b.simplify()) {
                (Term::Bot, x) | (x, Term::Bot) => x,
                (Term::Top, _) | (_, Term::Top) => Term::Top,
                (x, y) if x == y => x,
                (x, y) => t_or(x, y),
            },
            Term::Dia { rel, at, slots } | Term::Bx { rel, at, slots } => {
                let dia = matches!(self, Term::Dia { .. });
                let slots: Vec<Option<Term>> = slots.iter().map(|s| s.as_ref().map(Term::simplify)).collect();
                let absorbing = if dia { Term::Bot } else { Term::Top };
                if slots.iter().flatten().any(|s| *s == absorbing) {
                    return absorbing;
                }
                // the order is transitive: the S4 operators are idempotent
                if *rel == Rel::Leq {
                    let inner = slots[1 - at].as_ref().expect("binary");
                    let same = match inner {
                        Term::Dia { rel: Rel::Leq, at: a2, .. } => dia && a2 == at,
                        Term::Bx { rel: Rel::Leq, at: a2, .. } => !dia && a2 == at,
                        _ => false,
                    };
                    if same {
                        return inner.clone();
                    }
                }
                let (rel, at) = (rel.clone(), *at);
                if dia {
                    Term::Dia { rel, at, slots }
                } else {
                    Term::Bx { rel, at, slots }
                }
            }
            t => t.clone(),
        }
    }

    pub fn eval(&self, ctx: &EvalCtx) -> Result<WorldSet, Error> {
        let full = ctx.fr.full();
        Ok(match self {
            Term::Var(p) => *ctx.props.get(p).ok_or_else(|| Error::UncoveredVariable(p.clone()))?,
            Term::Nom(x) => 1 << ctx.world(x)?,
            Term::Conom(x) => full & !(1 << ctx.world(x)?),
            Term::Bot => 0,
            Term::Top => full,
            Term::And(a, b) => a.eval(ctx)? & b.eval(ctx)?,
            Term::Or(a, b) => a.eval(ctx)? | b.eval(ctx)?,
            Term::Neg(a) => full & !a.eval(ctx)?,
            Term::Dia { rel, at, slots } | Term::Bx { rel, at, slots } => {
                let dia = matches!(self, Term::Dia { .. });
                let vals: Vec<WorldSet> = slots
                    .iter()
                    .map(|s| s.as_ref().map_or(Ok(0), |t| t.eval(ctx)))
                    .collect::<Result<_, _>>()?;
                let mut out = if dia { 0 } else { full };
                for t in ctx.tuples(rel)? {
                    let hit = |i: usize| vals[i] >> t[i] & 1 == 1;
                    let others = (0..t.len()).filter(|&i| i != *at);
                    if dia && others.clone().all(hit) {
                        out |= 1 << t[*at];
                    }
                    if !dia && !others.clone().any(hit) {
                        out &= !(1 << t[*at]);
                    }
                }
                out
            }
        })
    }
}

fn op_name(rel: &Rel, at: usize, dia: bool) -> String {
    match (rel, at, dia) {
        (Rel::Leq, 1, true) => "diage".into(),
        (Rel::Leq, 0, false) => "boxle".into(),
        (Rel::Leq, 0, true) => "diale".into(),
        (Rel::Leq, _, false) => "boxge".into(),
        (Rel::Named(r), 0, true) => format!("<{r}>"),
        (Rel::Named(r), 0, false) => format!("[{r}]"),
        (Rel::Named(r), k, true) => format!("<{r}>^{k}"),
        (Rel::Named(r), k, false) => format!("[{r}]^{k}"),
        _ => unreachable!(),
    }
}

fn fmt_term(t: &Term, out: &mut String, top: bool) {
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Nom(x) if x.starts_with('m') => out.push_str(&format!("¬{x}")),
        Term::Conom(x) if x.starts_with('j') => out.push_str(&format!("¬{x}")),
        Term::Nom(x) | Term::Conom(x) => out.push_str(x),
        Term::Bot => out.push_str("bot"),
        Term::Top => out.push_str("top"),
        Term::And(a, b) | Term::Or(a, b) => {
            let op = if matches!(t, Term::And(..)) { " /\\ " } else { " \\/ " };
            if !top {
                out.push('(');
            }
            fmt_term(a, out, false);
            out.push_str(op);
            fmt_term(b, out, false);
            if !top {
                out.push(')');
            }
        }
        Term::Neg(a) => {
            out.push('~');
            fmt_term(a, out, false);
        }
        Term::Dia { rel, at, slots } | Term::Bx { rel, at, slots } => {
            out.push_str(&op_name(rel, *at, matches!(t, Term::Dia { .. })));
            out.push('(');
            for (i, s) in slots.iter().flatten().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                fmt_term(s, out, true);
            }
            out.push(')');
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        fmt_term(self, &mut s, true);
        f.write_str(&s)
    }
}

/// Interpretation of proposition variables and nominals on one frame.
pub struct EvalCtx<'a> {
    pub fr: &'a Frame,
    pub props: BTreeMap<String, WorldSet>,
    pub worlds: BTreeMap<String, usize>,
    leq: Vec<Vec<usize>>,
}

impl<'a> EvalCtx<'a> {
    pub fn new(fr: &'a Frame) -> EvalCtx<'a> {
        let n = fr.n;
        let leq = all_tuples(n, 2).filter(|t| fr.leq(t[0], t[1])).collect();
        EvalCtx { fr, props: BTreeMap::new(), worlds: BTreeMap::new(), leq }
    }

    fn world(&self, x: &str) -> Result<usize, Error> {
        self.worlds.get(x).copied().ok_or_else(|| Error::UncoveredVariable(x.to_string()))
    }

    fn tuples(&self, rel: &Rel) -> Result<&[Vec<usize>], Error> {
        match rel {
            Rel::Leq => Ok(&self.leq),
            Rel::Named(r) => self
                .fr
                .relation(r)
                .map(|r| r.tuples.as_slice())
                .ok_or_else(|| Error::Frame(format!("frame has no relation `{r}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermIneq {
    pub lhs: Term,
    pub rhs: Term,
}

impl TermIneq {
    pub fn new(lhs: Term, rhs: Term) -> TermIneq {
        TermIneq { lhs, rhs }
    }

    fn simplify(&self) -> TermIneq {
        TermIneq::new(self.lhs.simplify(), self.rhs.simplify())
    }

    fn is_trivial(&self) -> bool {
        self.lhs == Term::Bot || self.rhs == Term::Top || self.lhs == self.rhs
    }

    /// Never satisfiable: a nominal or ⊤ below a conominal or ⊥ on the same world.
    fn is_absurd(&self) -> bool {
        match (&self.lhs, &self.rhs) {
            (Term::Top, Term::Bot | Term::Conom(_)) | (Term::Nom(_), Term::Bot) => true,
            (Term::Nom(a), Term::Conom(b)) => a == b,
            _ => false,
        }
    }

    pub fn is_pure(&self) -> bool {
        self.lhs.is_pure() && self.rhs.is_pure()
    }

    pub fn holds(&self, ctx: &EvalCtx) -> Result<bool, Error> {
        Ok(self.lhs.eval(ctx)? & !self.rhs.eval(ctx)? == 0)
    }
}

impl fmt::Display for TermIneq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}

/// Universally closed `antecedent ⇒ conclusion`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasi {
    pub antecedent: Vec<TermIneq>,
    pub conclusion: TermIneq,
}

impl Quasi {
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in self.antecedent.iter().chain([&self.conclusion]) {
            i.lhs.variables(&mut out);
            i.rhs.variables(&mut out);
        }
        out
    }

    pub fn world_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in self.antecedent.iter().chain([&self.conclusion]) {
            i.lhs.world_vars(&mut out);
            i.rhs.world_vars(&mut out);
        }
        out
    }

    pub fn is_pure(&self) -> bool {
        self.antecedent.iter().all(TermIneq::is_pure) && self.conclusion.is_pure()
    }

    /// Validity on a frame under arbitrary valuations and world assignments.
    pub fn holds_on(&self, fr: &Frame) -> Result<bool, Error> {
        let props = self.variables();
        let worlds = self.world_vars();
        let mut ctx = EvalCtx::new(fr);
        let sets: Vec<WorldSet> = (0..=fr.full()).collect();
        for ws in all_tuples(fr.n, worlds.len()) {
            ctx.worlds = worlds.iter().cloned().zip(ws).collect();
            for vals in all_tuples(sets.len(), props.len()) {
                ctx.props = props.iter().cloned().zip(vals.iter().map(|&i| sets[i])).collect();
                let mut ante = true;
                for i in &self.antecedent {
                    if !i.holds(&ctx)? {
                        ante = false;
                        break;
                    }
                }
                if ante && !self.conclusion.holds(&ctx)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Quasi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ante: Vec<String> = self.antecedent.iter().map(|i| i.to_string()).collect();
        if ante.is_empty() {
            write!(f, "{}", self.conclusion)
        } else {
            write!(f, "[{}] => {}", ante.join(" & "), self.conclusion)
        }
    }
}

/// A conjunction of quasi-inequalities holds on a frame.
pub fn all_hold_on(qs: &[Quasi], fr: &Frame) -> Result<bool, Error> {
    for q in qs {
        if !q.holds_on(fr)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `j0 <= lhs`, `rhs <= m0` implies `j0 <= m0`.
pub fn first_approximation(ineq: &Inequality, sig: &Signature) -> Result<Quasi, Error> {
    if !sig.is_bae() {
        return Err(Error::SignatureMismatch("first approximation works on translated inequalities".into()));
    }
    let j = Term::Nom("j0".into());
    let m = Term::Conom("m0".into());
    Ok(Quasi {
        antecedent: vec![
            TermIneq::new(j.clone(), Term::from_formula(&ineq.lhs, sig)?),
            TermIneq::new(Term::from_formula(&ineq.rhs, sig)?, m.clone()),
        ],
        conclusion: TermIneq::new(j, m),
    })
}

#[derive(Clone, Debug)]
pub struct Step {
    pub rule: String,
    pub state: Vec<Quasi>,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}:", self.rule)?;
        if self.state.is_empty() {
            return writeln!(f, "  (nothing left: valid on every frame)");
        }
        for q in &self.state {
            writeln!(f, "  {q}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub steps: Vec<Step>,
    /// Conjunction of pure quasi-inequalities.
    pub pure: Vec<Quasi>,
}

enum Approx {
    Keep(TermIneq),
    Replace(Vec<TermIneq>),
    Cases(TermIneq, TermIneq),
    Drop,
    Vacuous,
}

struct Reducer {
    noms: usize,
    conoms: usize,
}

impl Reducer {
    fn new(q: &Quasi) -> Reducer {
        let next = |prefix: char| {
            q.world_vars()
                .iter()
                .filter_map(|x| x.strip_prefix(prefix).and_then(|d| d.parse::<usize>().ok()))
                .map(|k| k + 1)
                .max()
                .unwrap_or(0)
        };
        Reducer { noms: next('j'), conoms: next('m') }
    }

    fn nominal(&mut self) -> Term {
        self.noms += 1;
        Term::Nom(format!("j{}", self.noms - 1))
    }

    fn conominal(&mut self) -> Term {
        self.conoms += 1;
        Term::Conom(format!("m{}", self.conoms - 1))
    }

    fn approx_step(&mut self, ineq: TermIneq) -> Approx {
        let ineq = ineq.simplify();
        if ineq.is_trivial() {
            return Approx::Drop;
        }
        if ineq.is_absurd() {
            return Approx::Vacuous;
        }
        let TermIneq { lhs, rhs } = ineq;
        if matches!(lhs, Term::Nom(_)) && !rhs.is_pure() {
            let below = |t: Term| TermIneq::new(lhs.clone(), t);
            return match rhs {
                Term::And(a, b) => Approx::Replace(vec![below(*a), below(*b)]),
                Term::Or(a, b) => Approx::Cases(below(*a), below(*b)),
                Term::Neg(a) => Approx::Replace(vec![TermIneq::new(*a, t_neg(lhs))]),
                Term::Dia { rel, at, slots } => {
                    let mut extra = Vec::new();
                    let slots = slots
                        .into_iter()
                        .map(|s| match s {
                            Some(t) if !t.is_pure() => {
                                let i = self.nominal();
                                extra.push(TermIneq::new(i.clone(), t));
                                Some(i)
                            }
                            s => s,
                        })
                        .collect();
                    let mut out = vec![below(Term::Dia { rel, at, slots })];
                    out.extend(extra);
                    Approx::Replace(out)
                }
                rhs => Approx::Keep(TermIneq::new(lhs, rhs)),
            };
        }
        if matches!(rhs, Term::Conom(_)) && !lhs.is_pure() {
            let above = |t: Term| TermIneq::new(t, rhs.clone());
            return match lhs {
                Term::Or(a, b) => Approx::Replace(vec![above(*a), above(*b)]),
                Term::And(a, b) => Approx::Cases(above(*a), above(*b)),
                Term::Neg(a) => Approx::Replace(vec![TermIneq::new(t_neg(rhs), *a)]),
                Term::Bx { rel, at, slots } => {
                    let mut extra = Vec::new();
                    let slots = slots
                        .into_iter()
                        .map(|s| match s {
                            Some(t) if !t.is_pure() => {
                                let m = self.conominal();
                                extra.push(TermIneq::new(t, m.clone()));
                                Some(m)
                            }
                            s => s,
                        })
                        .collect();
                    let mut out = vec![above(Term::Bx { rel, at, slots })];
                    out.extend(extra);
                    Approx::Replace(out)
                }
                lhs => Approx::Keep(TermIneq::new(lhs, rhs)),
            };
        }
        Approx::Keep(TermIneq::new(lhs, rhs))
    }

    /// Decompose the skeleton: split, flip negations, case on prime bounds
    /// and introduce (co)nominals below diamonds and above boxes.
    fn approximate(&mut self, q: &Quasi) -> Vec<Quasi> {
        let mut out = Vec::new();
        let mut states: Vec<(Vec<TermIneq>, VecDeque<TermIneq>)> =
            vec![(Vec::new(), q.antecedent.iter().cloned().collect())];
        'state: while let Some((mut done, mut todo)) = states.pop() {
            while let Some(ineq) = todo.pop_front() {
                match self.approx_step(ineq) {
                    Approx::Keep(i) => done.push(i),
                    Approx::Replace(v) => {
                        for i in v.into_iter().rev() {
                            todo.push_front(i);
                        }
                    }
                    Approx::Cases(a, b) => {
                        let mut other = todo.clone();
                        other.push_front(b);
                        states.push((done.clone(), other));
                        todo.push_front(a);
                    }
                    Approx::Drop => {}
                    Approx::Vacuous => continue 'state,
                }
            }
            out.push(Quasi { antecedent: done, conclusion: q.conclusion.clone() });
        }
        out.reverse();
        out
    }

    /// Rewrite until every critical occurrence of `p` stands alone on its side.
    fn solve(&self, ineq: TermIneq, p: &str, pol: Polarity, solved: &mut Vec<Term>, rest: &mut Vec<TermIneq>) -> Result<(), Error> {
        let TermIneq { lhs, rhs } = ineq.simplify();
        let up = pol == Polarity::One;
        let crit_r = rhs.occurs(p, up, true);
        let crit_l = lhs.occurs(p, !up, true);
        let unsupported = |why: &str, l: &Term, r: &Term| Err(Error::Unsupported(format!("{why} in `{l} <= {r}` while solving for {p}")));
        match (crit_l, crit_r) {
            (false, false) => {
                rest.push(TermIneq::new(lhs, rhs));
                Ok(())
            }
            (true, true) => unsupported("critical occurrences on both sides", &lhs, &rhs),
            (false, true) => match rhs {
                Term::Var(_) => {
                    if lhs.mentions(p) {
                        return unsupported("minimal valuation would mention the variable itself", &lhs, &rhs);
                    }
                    solved.push(lhs);
                    Ok(())
                }
                Term::And(a, b) => {
                    self.solve(TermIneq::new(lhs.clone(), *a), p, pol, solved, rest)?;
                    self.solve(TermIneq::new(lhs, *b), p, pol, solved, rest)
                }
                Term::Or(a, b) => {
                    let (x, y) = if a.occurs(p, up, true) { (*a, *b) } else { (*b, *a) };
                    if y.occurs(p, up, true) {
                        return unsupported("critical occurrences in both disjuncts", &lhs, &t_or(x, y));
                    }
                    self.solve(TermIneq::new(t_and(lhs, t_neg(y)), x), p, pol, solved, rest)
                }
                Term::Neg(a) => self.solve(TermIneq::new(*a, t_neg(lhs)), p, pol, solved, rest),
                Term::Bx { rel, at, slots } => {
                    let crit: Vec<usize> = (0..slots.len())
                        .filter(|&i| slots[i].as_ref().is_some_and(|t| t.occurs(p, up, true)))
                        .collect();
                    if crit.len() != 1 {
                        return unsupported("critical occurrences in several coordinates", &lhs, &Term::Bx { rel, at, slots });
                    }
                    let l = crit[0];
                    let new_slots = residual_slots(&slots, at, l, lhs);
                    let target = slots[l].clone().expect("slot");
                    self.solve(TermIneq::new(Term::Dia { rel, at: l, slots: new_slots }, target), p, pol, solved, rest)
                }
                r => unsupported("diamond-type operator on a critical branch", &lhs, &r),
            },
            (true, false) => match lhs {
                Term::Var(_) => {
                    if rhs.mentions(p) {
                        return unsupported("maximal valuation would mention the variable itself", &lhs, &rhs);
                    }
                    solved.push(rhs);
                    Ok(())
                }
                Term::Or(a, b) => {
                    self.solve(TermIneq::new(*a, rhs.clone()), p, pol, solved, rest)?;
                    self.solve(TermIneq::new(*b, rhs), p, pol, solved, rest)
                }
                Term::And(a, b) => {
                    let (x, y) = if a.occurs(p, !up, true) { (*a, *b) } else { (*b, *a) };
                    if y.occurs(p, !up, true) {
                        return unsupported("critical occurrences in both conjuncts", &t_and(x, y), &rhs);
                    }
                    self.solve(TermIneq::new(x, t_or(t_neg(y), rhs)), p, pol, solved, rest)
                }
                Term::Neg(a) => self.solve(TermIneq::new(t_neg(rhs), *a), p, pol, solved, rest),
                Term::Dia { rel, at, slots } => {
                    let crit: Vec<usize> = (0..slots.len())
                        .filter(|&i| slots[i].as_ref().is_some_and(|t| t.occurs(p, !up, true)))
                        .collect();
                    if crit.len() != 1 {
                        return unsupported("critical occurrences in several coordinates", &Term::Dia { rel, at, slots }, &rhs);
                    }
                    let l = crit[0];
                    let new_slots = residual_slots(&slots, at, l, rhs);
                    let source = slots[l].clone().expect("slot");
                    self.solve(TermIneq::new(source, Term::Bx { rel, at: l, slots: new_slots }), p, pol, solved, rest)
                }
                l => unsupported("box-type operator on a critical branch", &l, &rhs),
            },
        }
    }

    /// Solve for `p` in every inequality: bounds on `p` and the other inequalities.
    fn solve_all(&self, q: &Quasi, p: &str, pol: Polarity) -> Result<(Vec<Term>, Vec<TermIneq>), Error> {
        let mut solved = Vec::new();
        let mut rest = Vec::new();
        for i in &q.antecedent {
            self.solve(i.clone(), p, pol, &mut solved, &mut rest)?;
        }
        Ok((solved, rest))
    }

    /// The solved form as a quasi-inequality, for the trace.
    fn solved_form(q: &Quasi, p: &str, pol: Polarity, solved: &[Term], rest: &[TermIneq]) -> Quasi {
        let var = Term::Var(p.to_string());
        let mut antecedent: Vec<TermIneq> = solved
            .iter()
            .map(|a| match pol {
                Polarity::One => TermIneq::new(a.clone(), var.clone()),
                Polarity::Dual => TermIneq::new(var.clone(), a.clone()),
            })
            .collect();
        antecedent.extend(rest.iter().cloned());
        Quasi { antecedent, conclusion: q.conclusion.clone() }
    }

    /// Apply the Ackermann rule to a solved system.
    fn eliminate(&self, q: &Quasi, p: &str, pol: Polarity, solved: Vec<Term>, rest: Vec<TermIneq>) -> Result<Option<Quasi>, Error> {
        let up = pol == Polarity::One;
        for i in &rest {
            if i.rhs.occurs(p, up, true) || i.lhs.occurs(p, !up, true) {
                return Err(Error::Unsupported(format!("`{i}` keeps a critical occurrence of {p}")));
            }
        }
        let val = match pol {
            Polarity::One => solved.into_iter().reduce(t_or).unwrap_or(Term::Bot),
            Polarity::Dual => solved.into_iter().reduce(t_and).unwrap_or(Term::Top),
        }
        .simplify();
        let sub = |i: &TermIneq| TermIneq::new(i.lhs.subst(p, &val), i.rhs.subst(p, &val)).simplify();
        let mut ante = Vec::new();
        for i in rest.iter().map(sub) {
            if i.is_absurd() {
                return Ok(None);
            }
            if !i.is_trivial() && !ante.contains(&i) {
                ante.push(i);
            }
        }
        let conclusion = sub(&q.conclusion);
        if conclusion.is_trivial() {
            return Ok(None);
        }
        Ok(Some(Quasi { antecedent: ante, conclusion }))
    }
}

/// Slots of the residual at coordinate `l` of an operator reading output at `at`:
/// the bound goes to `at`, other coordinates are negated.
fn residual_slots(slots: &[Option<Term>], at: usize, l: usize, bound: Term) -> Vec<Option<Term>> {
    (0..slots.len())
        .map(|i| {
            if i == l {
                None
            } else if i == at {
                Some(bound.clone())
            } else {
                slots[i].clone().map(t_neg)
            }
        })
        .collect()
}

/// Drop the outer conominal and nominal when each is bound by a single
/// antecedent: `∀m(β ≤ m ⇒ j ≤ m)` is `j ≤ β`, `∀j(j ≤ α ⇒ j ≤ β)` is `α ≤ β`.
fn tidy(q: Quasi) -> Quasi {
    let mut q = q;
    let count = |q: &Quasi, x: &str| {
        q.antecedent
            .iter()
            .filter(|i| {
                let mut v = Vec::new();
                i.lhs.world_vars(&mut v);
                i.rhs.world_vars(&mut v);
                v.iter().any(|y| y == x)
            })
            .count()
    };
    if let Term::Conom(m) = q.conclusion.rhs.clone() {
        let mut vars = Vec::new();
        q.conclusion.lhs.world_vars(&mut vars);
        if !vars.contains(&m) && count(&q, &m) == 1 {
            let k = q
                .antecedent
                .iter()
                .position(|i| i.rhs == Term::Conom(m.clone()) && !i.lhs.world_vars_contain(&m));
            if let Some(k) = k {
                let beta = q.antecedent.remove(k).lhs;
                q.conclusion = TermIneq::new(q.conclusion.lhs.clone(), beta);
            }
        }
    }
    if let Term::Nom(j) = q.conclusion.lhs.clone() {
        if !q.conclusion.rhs.world_vars_contain(&j) && count(&q, &j) == 1 {
            let k = q
                .antecedent
                .iter()
                .position(|i| i.lhs == Term::Nom(j.clone()) && !i.rhs.world_vars_contain(&j));
            if let Some(k) = k {
                let alpha = q.antecedent.remove(k).rhs;
                q.conclusion = TermIneq::new(alpha, q.conclusion.rhs.clone());
            }
        }
    }
    q
}

impl Term {
    fn world_vars_contain(&self, x: &str) -> bool {
        let mut v = Vec::new();
        self.world_vars(&mut v);
        v.iter().any(|y| y == x)
    }
}

/// Reduce a quasi-inequality to pure ones, eliminating variables in the
/// order given by `omega` (least first).
pub fn alba_reduce(q: &Quasi, eps: &VarOrderType, omega: &DependencyOrder) -> Result<Reduction, Error> {
    let mut r = Reducer::new(q);
    let mut steps = vec![Step { rule: "first approximation".into(), state: vec![q.clone()] }];
    let mut state = r.approximate(q);
    steps.push(Step { rule: "approximation".into(), state: state.clone() });
    let vars = q.variables();
    eps.covers(&vars)?;
    for p in omega.topological(&vars) {
        let pol = eps.of(&p)?;
        let mut solved_forms = Vec::new();
        let mut next = Vec::new();
        for qq in &state {
            let (solved, rest) = r.solve_all(qq, &p, pol)?;
            solved_forms.push(Reducer::solved_form(qq, &p, pol, &solved, &rest));
            if let Some(x) = r.eliminate(qq, &p, pol, solved, rest)? {
                next.push(x);
            }
        }
        steps.push(Step { rule: format!("solve for {p}"), state: solved_forms });
        state = next;
        let kind = if pol == Polarity::One { "minimal" } else { "maximal" };
        steps.push(Step { rule: format!("Ackermann on {p} ({kind} valuation)"), state: state.clone() });
    }
    for qq in &state {
        if !qq.is_pure() {
            return Err(Error::Unsupported(format!("`{qq}` is not pure after elimination")));
        }
    }
    let pure: Vec<Quasi> = state.into_iter().map(tidy).filter(|q| !q.conclusion.is_trivial()).collect();
    steps.push(Step { rule: "pure".into(), state: pure.clone() });
    Ok(Reduction { steps, pure })
}

struct Translator {
    fresh: usize,
}

impl Translator {
    fn var(&mut self) -> String {
        self.fresh += 1;
        format!("w{}", self.fresh - 1)
    }

    fn atom(rel: &Rel, tuple: Vec<String>) -> Fo {
        match rel {
            Rel::Leq => Fo::Leq(tuple[0].clone(), tuple[1].clone()),
            Rel::Named(r) => Fo::Rel(r.clone(), tuple),
        }
    }

    /// `x` belongs to the denotation of `t`.
    fn at(&mut self, t: &Term, x: &str) -> Result<Fo, Error> {
        Ok(match t {
            Term::Var(p) => return Err(Error::Unsupported(format!("variable {p} in a pure term"))),
            Term::Nom(y) => Fo::Eq(x.to_string(), y.clone()),
            Term::Conom(y) => Fo::not(Fo::Eq(x.to_string(), y.clone())),
            Term::Bot => Fo::False,
            Term::Top => Fo::True,
            Term::And(a, b) => Fo::and(vec![self.at(a, x)?, self.at(b, x)?]),
            Term::Or(a, b) => Fo::or(vec![self.at(a, x)?, self.at(b, x)?]),
            Term::Neg(a) => Fo::not(self.at(a, x)?),
            Term::Dia { rel, at, slots } | Term::Bx { rel, at, slots } => {
                let dia = matches!(t, Term::Dia { .. });
                let mut tuple = Vec::new();
                let mut bound = Vec::new();
                let mut parts = Vec::new();
                for (i, s) in slots.iter().enumerate() {
                    if i == *at {
                        tuple.push(x.to_string());
                        continue;
                    }
                    let s = s.as_ref().expect("slot");
                    match (dia, s) {
                        (true, Term::Nom(y)) | (false, Term::Conom(y)) => tuple.push(y.clone()),
                        _ => {
                            let v = self.var();
                            parts.push(self.at(s, &v)?);
                            tuple.push(v.clone());
                            bound.push(v);
                        }
                    }
                }
                let atom = Translator::atom(rel, tuple);
                let body = if dia {
                    let mut all = vec![atom];
                    all.extend(parts);
                    Fo::and(all)
                } else {
                    Fo::implies(atom, Fo::or(parts))
                };
                bound.iter().rev().fold(body, |b, v| if dia { Fo::exists(v, b) } else { Fo::forall(v, b) })
            }
        })
    }

    fn ineq(&mut self, i: &TermIneq) -> Result<Fo, Error> {
        match (&i.lhs, &i.rhs) {
            (Term::Nom(x), t) => self.at(t, x),
            (s, Term::Conom(x)) => Ok(Fo::not(self.at(s, x)?)),
            (s, t) => {
                let w = self.var();
                let body = Fo::implies(self.at(s, &w)?, self.at(t, &w)?);
                Ok(Fo::forall(&w, body))
            }
        }
    }
}

/// First-order sentence equivalent to a conjunction of pure quasi-inequalities.
pub fn standard_translation(pure: &[Quasi]) -> Result<Fo, Error> {
    let mut tr = Translator { fresh: 0 };
    let mut parts = Vec::new();
    for q in pure {
        if !q.is_pure() {
            return Err(Error::Unsupported(format!("`{q}` is not pure")));
        }
        let ante = q.antecedent.iter().map(|i| tr.ineq(i)).collect::<Result<Vec<_>, _>>()?;
        let body = Fo::implies(Fo::and(ante), tr.ineq(&q.conclusion)?);
        let mut ws = q.world_vars();
        ws.sort_by_key(|w| (!w.starts_with('j'), w[1..].parse::<usize>().unwrap_or(usize::MAX), w.clone()));
        parts.push(Fo::forall_all(&ws, body));
    }
    Ok(Fo::and(parts))
}

#[derive(Clone, Debug)]
pub struct Correspondence {
    pub input: Inequality,
    pub eps: VarOrderType,
    pub omega: DependencyOrder,
    pub translated: Inequality,
    pub target: Signature,
    pub reduction: Reduction,
    pub fo: Fo,
}

impl Correspondence {
    pub fn to_json(&self) -> serde_json::Value {
        let vars = self.input.variables();
        serde_json::json!({
            "inequality": self.input.to_string(),
            "eps": self.eps.render(&vars),
            "omega_edges": self.omega.edges().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
            "translated": self.translated.to_string(),
            "pure": self.reduction.pure.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "fo": self.fo.to_sexpr(),
            "fo_text": self.fo.to_string(),
        })
    }
}

/// Translate (for DLE input), classify, reduce and read off a first-order
/// condition. Without `eps`, the first Sahlqvist witness is used, else the
/// first inductive one.
pub fn correspondent(ineq: &Inequality, sig: &Signature, eps: Option<&VarOrderType>) -> Result<Correspondence, Error> {
    let vars = ineq.variables();
    let eps = match eps {
        Some(e) => {
            e.covers(&vars)?;
            e.clone()
        }
        None => {
            let rep = find_witnesses(ineq, sig, Mode::Both, DEFAULT_VAR_BOUND)?;
            let w = rep
                .sahlqvist_witnesses()
                .next()
                .or(rep.witnesses.first())
                .ok_or_else(|| Error::NotInductive(rep.diagnostics.join("; ")))?;
            w.eps.clone()
        }
    };
    let (translated, target) = if sig.is_bae() {
        (ineq.clone(), sig.clone())
    } else {
        let a = analyze(ineq, &eps, sig)?;
        if a.least_order().is_none() {
            return Err(Error::NotInductive(format!("not inductive at {}: {}", eps.render(&vars), a.bad.join("; "))));
        }
        (tau_eps_ineq(ineq, &eps, sig, Options::default())?, sig.target()?)
    };
    let a = analyze(&translated, &eps, &target)?;
    let omega = a.least_order().ok_or_else(|| {
        let mut why = a.bad.clone();
        if why.is_empty() {
            why.push("forced dependencies are cyclic".into());
        }
        Error::NotInductive(format!("not inductive at {}: {}", eps.render(&vars), why.join("; ")))
    })?;
    let q = first_approximation(&translated, &target)?;
    let reduction = alba_reduce(&q, &eps, &omega)?;
    let fo = standard_translation(&reduction.pure)?;
    Ok(Correspondence { input: ineq.clone(), eps, omega, translated, target, reduction, fo })
}

/// All frames up to `max_worlds` worlds interpreting the connectives of `ineq`,
/// with the valuation kind matching the signature's dialect.
pub fn frames_for(ineq: &Inequality, sig: &Signature, max_worlds: usize) -> Result<(Vec<Frame>, ValuationKind), Error> {
    let source = sig.source()?;
    let used: BTreeSet<String> = ineq
        .connectives()
        .iter()
        .filter_map(|n| sig.get(n).map(|c| c.relation_name().to_string()))
        .filter(|n| source.get(n).is_some())
        .collect();
    let frames = enumerate_frames(&source, max_worlds, &EnumOptions::only(used))?;
    let kind = if sig.is_bae() { ValuationKind::Arbitrary } else { ValuationKind::Persistent };
    Ok((frames, kind))
}

#[derive(Clone, Debug)]
pub enum OracleVerdict {
    Verified { frames: usize },
    Refuted { frame: Frame, inequality_valid: bool },
}

impl OracleVerdict {
    pub fn verified(&self) -> bool {
        matches!(self, OracleVerdict::Verified { .. })
    }
}

/// Compare validity of `ineq` with truth of `fo` on every frame up to `max_worlds`.
pub fn oracle_equivalence(ineq: &Inequality, sig: &Signature, fo: &Fo, max_worlds: usize) -> Result<OracleVerdict, Error> {
    let (frames, kind) = frames_for(ineq, sig, max_worlds)?;
    let compiled = CompiledFo::new(fo)?;
    let found = frames
        .par_iter()
        .map(|fr| -> Result<Option<(Frame, bool)>, Error> {
            let valid = is_valid(ineq, sig, fr, kind)?;
            Ok((valid != compiled.holds(fr)).then(|| (fr.clone(), valid)))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .next();
    Ok(match found {
        None => OracleVerdict::Verified { frames: frames.len() },
        Some((frame, inequality_valid)) => OracleVerdict::Refuted { frame, inequality_valid },
    })
}
