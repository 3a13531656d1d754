//! Forcing, compiled once per formula and frame.

use super::{Frame, WorldSet};
use crate::error::Error;
use crate::formula::Formula;
use crate::signature::{Family, Signature, BOX_LEQ, DIA_GEQ};

#[derive(Clone, Debug)]
enum Op {
    Var(usize),
    Const(WorldSet),
    And(usize, usize),
    Or(usize, usize),
    Not(usize),
    Up(usize),
    Interior(usize),
    /// Binary relation, one argument: `succ[w]` are the successors of `w`.
    Unary { succ: Vec<WorldSet>, dual: bool, exists: bool, arg: usize },
    /// General case; `by_world[w]` lists the tails of tuples starting at `w`.
    Nary { by_world: Vec<Vec<Vec<usize>>>, dual: Vec<bool>, exists: bool, args: Vec<usize> },
}

/// A formula compiled against a frame; evaluation maps variable values to its extension.
#[derive(Clone, Debug)]
pub struct Compiled {
    ops: Vec<Op>,
    vars: Vec<String>,
    n: usize,
    full: WorldSet,
    up: Vec<WorldSet>,
}

impl Compiled {
    pub fn new(f: &Formula, sig: &Signature, fr: &Frame) -> Result<Compiled, Error> {
        Compiled::with_vars(f, sig, fr, &f.variables())
    }

    pub fn with_vars(f: &Formula, sig: &Signature, fr: &Frame, vars: &[String]) -> Result<Compiled, Error> {
        let mut c = Compiled {
            ops: Vec::new(),
            vars: vars.to_vec(),
            n: fr.n,
            full: fr.full(),
            up: fr.up.clone(),
        };
        c.compile(f, sig, fr)?;
        Ok(c)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    fn push(&mut self, op: Op) -> usize {
        self.ops.push(op);
        self.ops.len() - 1
    }

    fn compile(&mut self, f: &Formula, sig: &Signature, fr: &Frame) -> Result<usize, Error> {
        let op = match f {
            Formula::Var(p) => {
                let i = self
                    .vars
                    .iter()
                    .position(|v| v == p)
                    .ok_or_else(|| Error::UncoveredVariable(p.clone()))?;
                Op::Var(i)
            }
            Formula::Bot => Op::Const(0),
            Formula::Top => Op::Const(self.full),
            Formula::And(a, b) => {
                let (a, b) = (self.compile(a, sig, fr)?, self.compile(b, sig, fr)?);
                Op::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.compile(a, sig, fr)?, self.compile(b, sig, fr)?);
                Op::Or(a, b)
            }
            Formula::Neg(a) => Op::Not(self.compile(a, sig, fr)?),
            Formula::App(name, args) if sig.is_bae() && (name == DIA_GEQ || name == BOX_LEQ) => {
                let a = self.compile(&args[0], sig, fr)?;
                if name == DIA_GEQ {
                    Op::Up(a)
                } else {
                    Op::Interior(a)
                }
            }
            Formula::App(name, args) => {
                let c = sig.get(name).ok_or_else(|| Error::UnknownConnective(name.clone()))?;
                let rel = fr
                    .relation(c.relation_name())
                    .ok_or_else(|| Error::Frame(format!("frame has no relation for `{name}`")))?;
                let args = args
                    .iter()
                    .map(|a| self.compile(a, sig, fr))
                    .collect::<Result<Vec<_>, _>>()?;
                let dual: Vec<bool> = c.coord_types.iter().map(|p| p.is_dual()).collect();
                let exists = c.family == Family::F;
                if args.len() == 1 {
                    let mut succ = vec![0; fr.n];
                    for t in &rel.tuples {
                        succ[t[0]] |= 1 << t[1];
                    }
                    Op::Unary { succ, dual: dual[0], exists, arg: args[0] }
                } else {
                    let mut by_world = vec![Vec::new(); fr.n];
                    for t in &rel.tuples {
                        by_world[t[0]].push(t[1..].to_vec());
                    }
                    Op::Nary { by_world, dual, exists, args }
                }
            }
        };
        Ok(self.push(op))
    }

    pub fn eval(&self, vals: &[WorldSet]) -> WorldSet {
        self.eval_with(vals, &mut Vec::new())
    }

    pub fn eval_with(&self, vals: &[WorldSet], r: &mut Vec<WorldSet>) -> WorldSet {
        r.clear();
        for op in &self.ops {
            let v = match op {
                Op::Var(i) => vals[*i],
                Op::Const(s) => *s,
                Op::And(a, b) => r[*a] & r[*b],
                Op::Or(a, b) => r[*a] | r[*b],
                Op::Not(a) => !r[*a] & self.full,
                Op::Up(a) => {
                    let x = r[*a];
                    (0..self.n)
                        .filter(|&w| x >> w & 1 == 1)
                        .fold(0, |acc, w| acc | self.up_mask(w))
                }
                Op::Interior(a) => {
                    let x = r[*a];
                    (0..self.n).filter(|&w| self.up_mask(w) & !x == 0).fold(0, |acc, w| acc | 1 << w)
                }
                Op::Unary { succ, dual, exists, arg } => {
                    // worlds satisfying the coordinate condition
                    let sat = if *dual { !r[*arg] & self.full } else { r[*arg] };
                    let mut out = 0;
                    for (w, &s) in succ.iter().enumerate() {
                        let hit = if *exists { s & sat != 0 } else { s & !sat == 0 };
                        if hit {
                            out |= 1 << w;
                        }
                    }
                    out
                }
                Op::Nary { by_world, dual, exists, args } => {
                    let sat = |i: usize, x: usize| (r[args[i]] >> x & 1 == 1) != dual[i];
                    let mut out = 0;
                    for (w, tails) in by_world.iter().enumerate() {
                        let hit = if *exists {
                            tails.iter().any(|t| t.iter().enumerate().all(|(i, &x)| sat(i, x)))
                        } else {
                            tails.iter().all(|t| t.iter().enumerate().any(|(i, &x)| sat(i, x)))
                        };
                        if hit {
                            out |= 1 << w;
                        }
                    }
                    out
                }
            };
            r.push(v);
        }
        *r.last().expect("non-empty formula")
    }

    fn up_mask(&self, w: usize) -> WorldSet {
        self.up[w]
    }
}
