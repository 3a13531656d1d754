//! Finite algebras: up-set complex algebras, their powerset companions, the
//! embedding with its two adjoints, and the checks relating them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::formula::{Formula, Inequality};
use crate::semantics::{apply, members, Frame, WorldSet};
use crate::signature::{companion_name, Family, Signature, BOX_LEQ, DIA_GEQ};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Dle,
    Bae,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    pub names: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    pub bot: usize,
    pub top: usize,
}

impl FiniteLattice {
    /// Build from an explicit order; fails if some pair lacks a meet or join.
    pub fn from_order(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<FiniteLattice, Error> {
        let n = names.len();
        let bound = |a: usize, b: usize, upper: bool| -> Option<usize> {
            let cands: Vec<usize> = (0..n)
                .filter(|&x| if upper { leq[a][x] && leq[b][x] } else { leq[x][a] && leq[x][b] })
                .collect();
            cands
                .iter()
                .copied()
                .find(|&x| cands.iter().all(|&y| if upper { leq[x][y] } else { leq[y][x] }))
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = bound(a, b, false)
                    .ok_or_else(|| Error::Unsupported(format!("no meet of {} and {}", names[a], names[b])))?;
                join[a][b] = bound(a, b, true)
                    .ok_or_else(|| Error::Unsupported(format!("no join of {} and {}", names[a], names[b])))?;
            }
        }
        let bot = (0..n).find(|&x| (0..n).all(|y| leq[x][y])).ok_or_else(|| Error::Unsupported("no bottom".into()))?;
        let top = (0..n).find(|&x| (0..n).all(|y| leq[y][x])).ok_or_else(|| Error::Unsupported("no top".into()))?;
        Ok(FiniteLattice { names, leq, meet, join, bot, top })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The Boolean complement, when it exists.
    pub fn complement(&self, a: usize) -> Option<usize> {
        (0..self.size()).find(|&x| self.meet(a, x) == self.bot && self.join(a, x) == self.top)
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))))
        })
    }
}

/// An operation table indexed by `Σ a_i · size^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    pub arity: usize,
    pub table: Vec<usize>,
}

impl Operation {
    pub fn from_fn(size: usize, arity: usize, mut f: impl FnMut(&[usize]) -> usize) -> Operation {
        let total = size.pow(arity as u32);
        let mut args = vec![0; arity];
        let table = (0..total)
            .map(|mut i| {
                for a in args.iter_mut() {
                    *a = i % size;
                    i /= size;
                }
                f(&args)
            })
            .collect();
        Operation { arity, table }
    }

    pub fn apply(&self, size: usize, args: &[usize]) -> usize {
        self.table[args.iter().rev().fold(0, |acc, &a| acc * size + a)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    pub lattice: FiniteLattice,
    pub ops: BTreeMap<String, Operation>,
    pub role: Role,
}

/// Every tuple over `0..size` of length `k`.
fn tuples(size: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    crate::semantics::all_tuples(size, k)
}

fn set_name(s: WorldSet) -> String {
    let ws: Vec<_> = members(s).map(|w| w.to_string()).collect();
    format!("{{{}}}", ws.join(","))
}

fn lattice_of_sets(sets: &[WorldSet]) -> FiniteLattice {
    let leq = sets.iter().map(|&a| sets.iter().map(|&b| a & !b == 0).collect()).collect();
    FiniteLattice::from_order(sets.iter().map(|&s| set_name(s)).collect(), leq).expect("families of sets closed under ∩, ∪ are lattices")
}

impl FiniteAlgebra {
    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    pub fn op(&self, name: &str) -> Option<&Operation> {
        self.ops.get(name)
    }

    pub fn apply(&self, name: &str, args: &[usize]) -> Result<usize, Error> {
        let op = self.op(name).ok_or_else(|| Error::UnknownConnective(name.to_string()))?;
        Ok(op.apply(self.size(), args))
    }

    pub fn eval(&self, f: &Formula, assign: &BTreeMap<String, usize>) -> Result<usize, Error> {
        let l = &self.lattice;
        Ok(match f {
            Formula::Var(p) => *assign.get(p).ok_or_else(|| Error::UncoveredVariable(p.clone()))?,
            Formula::Bot => l.bot,
            Formula::Top => l.top,
            Formula::And(a, b) => l.meet(self.eval(a, assign)?, self.eval(b, assign)?),
            Formula::Or(a, b) => l.join(self.eval(a, assign)?, self.eval(b, assign)?),
            Formula::Neg(a) => {
                let x = self.eval(a, assign)?;
                l.complement(x).ok_or_else(|| Error::Unsupported(format!("{} has no complement", l.names[x])))?
            }
            Formula::App(name, args) => {
                let xs = args.iter().map(|a| self.eval(a, assign)).collect::<Result<Vec<_>, _>>()?;
                self.apply(name, &xs)?
            }
        })
    }

    /// Whether the inequality holds under every assignment into the algebra.
    pub fn satisfies(&self, ineq: &Inequality) -> Result<bool, Error> {
        let vars = ineq.variables();
        for vals in tuples(self.size(), vars.len()) {
            let assign: BTreeMap<_, _> = vars.iter().cloned().zip(vals).collect();
            if !self.lattice.leq(self.eval(&ineq.lhs, &assign)?, self.eval(&ineq.rhs, &assign)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Normality of each declared operation: joins (including the empty one)
    /// are preserved at monotone coordinates of f-operations and reversed into
    /// meets at antitone ones; dually for g-operations.
    pub fn normality_violations(&self, sig: &Signature) -> Vec<String> {
        let l = &self.lattice;
        let n = self.size();
        let mut out = Vec::new();
        for c in &sig.connectives {
            let Some(op) = self.op(&c.name) else { continue };
            for i in 0..c.arity {
                let dual = c.coord_types.get(i).is_dual();
                // (binary operation on the coordinate, its unit) for the source side
                let src_is_join = (c.family == Family::F) != dual;
                for rest in tuples(n, c.arity) {
                    let at = |x: usize| {
                        let mut a = rest.clone();
                        a[i] = x;
                        op.apply(n, &a)
                    };
                    let unit_src = if src_is_join { l.bot } else { l.top };
                    let unit_tgt = if c.family == Family::F { l.bot } else { l.top };
                    if at(unit_src) != unit_tgt {
                        out.push(format!("{} does not send the unit at coordinate {i} to the unit", c.name));
                    }
                    for y in 0..n {
                        let x = rest[i];
                        let src = if src_is_join { l.join(x, y) } else { l.meet(x, y) };
                        let tgt = if c.family == Family::F { l.join(at(x), at(y)) } else { l.meet(at(x), at(y)) };
                        if at(src) != tgt {
                            out.push(format!("{} is not normal at coordinate {i}", c.name));
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// The up-set algebra of a frame, with operations given by the forcing clauses.
pub fn complex_algebra(fr: &Frame, sig: &Signature) -> Result<FiniteAlgebra, Error> {
    let sets = fr.upsets();
    let lattice = lattice_of_sets(&sets);
    let pos: BTreeMap<WorldSet, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut ops = BTreeMap::new();
    for c in &sig.connectives {
        let mut err = None;
        let op = Operation::from_fn(sets.len(), c.arity, |args| {
            let xs: Vec<WorldSet> = args.iter().map(|&a| sets[a]).collect();
            match apply(fr, sig, &c.name, &xs) {
                Ok(r) => *pos.get(&r).unwrap_or_else(|| {
                    err = Some(Error::Frame(format!("`{}` does not preserve up-sets", c.name)));
                    &0
                }),
                Err(e) => {
                    err = Some(e);
                    0
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        ops.insert(c.name.clone(), op);
    }
    Ok(FiniteAlgebra { lattice, ops, role: Role::Dle })
}

/// Canonical extensions of finite algebras are the algebras themselves.
pub fn canonical_extension(a: &FiniteAlgebra) -> FiniteAlgebra {
    a.clone()
}

/// A lattice embedding `e: A → B` with left adjoint `c` and right adjoint `iota`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingTriple {
    pub e: Vec<usize>,
    pub c: Vec<usize>,
    pub iota: Vec<usize>,
}

impl EmbeddingTriple {
    /// Compute both adjoints of `e` by search; `None` if either is missing.
    pub fn from_embedding(a: &FiniteLattice, b: &FiniteLattice, e: Vec<usize>) -> Option<EmbeddingTriple> {
        let mut c = Vec::new();
        let mut iota = Vec::new();
        for y in 0..b.size() {
            // least x with y <= e(x); greatest x with e(x) <= y
            let ups: Vec<usize> = (0..a.size()).filter(|&x| b.leq(y, e[x])).collect();
            let lo = ups.iter().copied().find(|&x| ups.iter().all(|&z| a.leq(x, z)))?;
            let downs: Vec<usize> = (0..a.size()).filter(|&x| b.leq(e[x], y)).collect();
            let hi = downs.iter().copied().find(|&x| downs.iter().all(|&z| a.leq(z, x)))?;
            c.push(lo);
            iota.push(hi);
        }
        Some(EmbeddingTriple { e, c, iota })
    }

    /// `e ∘ ι`, as a table on B.
    pub fn interior(&self) -> Vec<usize> {
        self.iota.iter().map(|&x| self.e[x]).collect()
    }

    /// `e ∘ c`, as a table on B.
    pub fn closure(&self) -> Vec<usize> {
        self.c.iter().map(|&x| self.e[x]).collect()
    }
}

/// The powerset algebra over the same frame, with companions, the S4 pair
/// and negation, together with the inclusion of up-sets and its adjoints.
pub fn boolean_companion(fr: &Frame, sig: &Signature) -> Result<(FiniteAlgebra, FiniteAlgebra, EmbeddingTriple), Error> {
    let a = complex_algebra(fr, sig)?;
    let upsets = fr.upsets();
    let target = sig.target()?;
    let sets: Vec<WorldSet> = (0..=fr.full()).collect();
    let lattice = lattice_of_sets(&sets);
    let size = sets.len();
    let mut ops = BTreeMap::new();
    ops.insert("neg".to_string(), Operation::from_fn(size, 1, |x| fr.complement(sets[x[0]]) as usize));
    for c in &target.connectives {
        let mut err = None;
        let op = Operation::from_fn(size, c.arity, |args| {
            let xs: Vec<WorldSet> = args.iter().map(|&i| sets[i]).collect();
            apply(fr, &target, &c.name, &xs).unwrap_or_else(|e| {
                err = Some(e);
                0
            }) as usize
        });
        if let Some(e) = err {
            return Err(e);
        }
        ops.insert(c.name.clone(), op);
    }
    let b = FiniteAlgebra { lattice, ops, role: Role::Bae };
    let pos = |s: WorldSet| upsets.iter().position(|&u| u == s).expect("up-set");
    let triple = EmbeddingTriple {
        e: upsets.iter().map(|&u| u as usize).collect(),
        c: sets.iter().map(|&s| pos(fr.up_closure(s))).collect(),
        iota: sets.iter().map(|&s| pos(fr.interior(s))).collect(),
    };
    Ok((a, b, triple))
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !cond && self.failures.len() < 20 {
            self.failures.push(msg());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} checks, {} failures", self.checked, self.failures.len())?;
        for m in &self.failures {
            write!(f, "\n  {m}")?;
        }
        Ok(())
    }
}

/// `f^A = c ∘ f° ∘ e^ε` and `g^A = ι ∘ g° ∘ e^ε` pointwise, where `e^ε`
/// negates the antitone coordinates after embedding.
pub fn check_diagrams(a: &FiniteAlgebra, b: &FiniteAlgebra, t: &EmbeddingTriple, sig: &Signature) -> CheckReport {
    let mut rep = CheckReport::default();
    let bl = &b.lattice;
    for conn in &sig.connectives {
        let (Some(fa), Some(fb)) = (a.op(&conn.name), b.op(&companion_name(&conn.name))) else {
            rep.check(false, || format!("missing operation for `{}`", conn.name));
            continue;
        };
        for args in tuples(a.size(), conn.arity) {
            let bargs: Vec<usize> = args
                .iter()
                .zip(conn.coord_types.iter())
                .map(|(&x, p)| {
                    let y = t.e[x];
                    if p.is_dual() {
                        bl.complement(y).expect("Boolean")
                    } else {
                        y
                    }
                })
                .collect();
            let inner = fb.apply(b.size(), &bargs);
            let back = match conn.family {
                Family::F => t.c[inner],
                Family::G => t.iota[inner],
            };
            let direct = fa.apply(a.size(), &args);
            rep.check(back == direct, || {
                let names: Vec<_> = args.iter().map(|&x| a.lattice.names[x].clone()).collect();
                format!(
                    "{}({}) = {} but the diagram gives {}",
                    conn.name,
                    names.join(", "),
                    a.lattice.names[direct],
                    a.lattice.names[back]
                )
            });
        }
    }
    rep
}

/// `c(b) <= a ⟺ b <= e(a)` and `e(a) <= b ⟺ a <= ι(b)`.
pub fn check_adjunctions(a: &FiniteLattice, b: &FiniteLattice, t: &EmbeddingTriple) -> CheckReport {
    let mut rep = CheckReport::default();
    for x in 0..a.size() {
        for y in 0..b.size() {
            rep.check(a.leq(t.c[y], x) == b.leq(y, t.e[x]), || format!("c-adjunction fails at ({}, {})", a.names[x], b.names[y]));
            rep.check(b.leq(t.e[x], y) == a.leq(x, t.iota[y]), || format!("ι-adjunction fails at ({}, {})", a.names[x], b.names[y]));
        }
    }
    for x in 0..a.size() {
        for z in 0..a.size() {
            rep.check(t.e[a.meet(x, z)] == b.meet(t.e[x], t.e[z]), || "e does not preserve meets".into());
            rep.check(t.e[a.join(x, z)] == b.join(t.e[x], t.e[z]), || "e does not preserve joins".into());
            rep.check(a.leq(x, z) == b.leq(t.e[x], t.e[z]), || "e is not an order-embedding".into());
        }
    }
    rep
}

/// Interior laws for `e∘ι` and closure laws for `e∘c`, plus `eιe = e = ece`
/// and `ιeι = ι`, `cec = c`.
pub fn check_interior_closure(a: &FiniteLattice, b: &FiniteLattice, t: &EmbeddingTriple) -> CheckReport {
    let mut rep = CheckReport::default();
    let box_b = t.interior();
    let dia_b = t.closure();
    for y in 0..b.size() {
        rep.check(b.leq(box_b[y], y), || format!("i1 fails at {}", b.names[y]));
        rep.check(b.leq(box_b[y], box_b[box_b[y]]), || format!("i3 fails at {}", b.names[y]));
        rep.check(b.leq(y, dia_b[y]), || format!("c1 fails at {}", b.names[y]));
        rep.check(b.leq(dia_b[dia_b[y]], dia_b[y]), || format!("c3 fails at {}", b.names[y]));
        rep.check(t.iota[t.e[t.iota[y]]] == t.iota[y], || "ιeι ≠ ι".into());
        rep.check(t.c[t.e[t.c[y]]] == t.c[y], || "cec ≠ c".into());
        for z in 0..b.size() {
            if b.leq(y, z) {
                rep.check(b.leq(box_b[y], box_b[z]), || format!("i2 fails at {} <= {}", b.names[y], b.names[z]));
                rep.check(b.leq(dia_b[y], dia_b[z]), || format!("c2 fails at {} <= {}", b.names[y], b.names[z]));
            }
        }
    }
    for x in 0..a.size() {
        rep.check(t.e[t.iota[t.e[x]]] == t.e[x], || "eιe ≠ e".into());
        rep.check(t.e[t.c[t.e[x]]] == t.e[x], || "ece ≠ e".into());
    }
    rep
}

/// S4 laws for a box (meets, top, T, 4) and a diamond (joins, bottom, T, 4).
pub fn s4_check(b: &FiniteLattice, box_op: &[usize], dia_op: &[usize]) -> CheckReport {
    let mut rep = CheckReport::default();
    rep.check(box_op[b.top] == b.top, || "box does not preserve top".into());
    rep.check(dia_op[b.bot] == b.bot, || "diamond does not preserve bottom".into());
    for x in 0..b.size() {
        rep.check(b.leq(box_op[x], x), || format!("T fails for box at {}", b.names[x]));
        rep.check(b.leq(box_op[x], box_op[box_op[x]]), || format!("4 fails for box at {}", b.names[x]));
        rep.check(b.leq(x, dia_op[x]), || format!("T fails for diamond at {}", b.names[x]));
        rep.check(b.leq(dia_op[dia_op[x]], dia_op[x]), || format!("4 fails for diamond at {}", b.names[x]));
        for y in 0..b.size() {
            rep.check(box_op[b.meet(x, y)] == b.meet(box_op[x], box_op[y]), || "box does not preserve meets".into());
            rep.check(dia_op[b.join(x, y)] == b.join(dia_op[x], dia_op[y]), || "diamond does not preserve joins".into());
        }
    }
    rep
}

/// All checks relating a frame's complex algebra to its Boolean companion.
pub fn check_frame(fr: &Frame, sig: &Signature) -> Result<CheckReport, Error> {
    let (a, b, t) = boolean_companion(fr, sig)?;
    let mut rep = check_adjunctions(&a.lattice, &b.lattice, &t);
    rep.merge(check_interior_closure(&a.lattice, &b.lattice, &t));
    rep.merge(s4_check(&b.lattice, &t.interior(), &t.closure()));
    // the S4 pair of B must be the composites through A
    let size = b.size();
    let bx = b.op(BOX_LEQ).expect("target has the S4 box");
    let dx = b.op(DIA_GEQ).expect("target has the S4 diamond");
    let (ei, ec) = (t.interior(), t.closure());
    let mut pair = CheckReport::default();
    for y in 0..size {
        pair.check(bx.apply(size, &[y]) == ei[y], || format!("boxle ≠ e∘ι at {}", b.lattice.names[y]));
        pair.check(dx.apply(size, &[y]) == ec[y], || format!("diage ≠ e∘c at {}", b.lattice.names[y]));
    }
    rep.merge(pair);
    rep.merge(check_diagrams(&a, &b, &t, sig));
    Ok(rep)
}

#[derive(Clone, Debug)]
pub struct MixReport {
    pub lines: Vec<String>,
    pub box_le_a: String,
    pub box_le_d: String,
    pub box_le_x: String,
    pub diagram_commutes: bool,
    pub mix_lhs: String,
    pub mix_rhs: String,
    pub ok: bool,
}

impl fmt::Display for MixReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        write!(f, "result: {}", if self.ok { "ok" } else { "FAILED" })
    }
}

/// A five-element distributive lattice A inside the eight-element Boolean
/// algebra on atoms b, x, c, with a box on B that makes the embedding
/// diagram commute although the mix law fails.
///
/// The arrows of □° are a reconstruction: ⊥↦x, b↦a, c↦d, y↦⊤, and the
/// self-loops x, a, d, ⊤; where a = b∨x, d = x∨c and y = b∨c.
pub fn mix_counterexample() -> MixReport {
    let a_names = ["⊥", "b", "c", "y", "⊤"];
    let a_leq = |i: usize, j: usize| {
        i == j || i == 0 || j == 4 || (j == 3 && (i == 1 || i == 2))
    };
    let a = FiniteLattice::from_order(
        a_names.iter().map(|s| s.to_string()).collect(),
        (0..5).map(|i| (0..5).map(|j| a_leq(i, j)).collect()).collect(),
    )
    .expect("A is a lattice");
    // B: subsets of {b, x, c} as bits 0, 1, 2
    let b_names = ["⊥", "b", "x", "a", "c", "y", "d", "⊤"];
    let b = FiniteLattice::from_order(
        b_names.iter().map(|s| s.to_string()).collect(),
        (0..8).map(|i: usize| (0..8).map(|j: usize| i & !j == 0).collect()).collect(),
    )
    .expect("B is a lattice");
    let ix = |l: &FiniteLattice, n: &str| l.index(n).expect("named element");
    let box_a: Vec<usize> = ["⊥", "b", "c", "⊤", "⊤"].iter().map(|n| ix(&a, n)).collect();
    let box_o: Vec<usize> = ["x", "a", "x", "a", "d", "⊤", "d", "⊤"].iter().map(|n| ix(&b, n)).collect();
    let e: Vec<usize> = a_names.iter().map(|n| ix(&b, n)).collect();

    let mut lines = vec![
        "A = {⊥ < b, c < y < ⊤}; B = powerset of atoms {b, x, c}, a = b∨x, d = x∨c, y = b∨c".to_string(),
        "□^A: ⊥↦⊥, b↦b, c↦c, y↦⊤, ⊤↦⊤".to_string(),
        "□°:  ⊥↦x, b↦a, c↦d, x↦x, a↦a, d↦d, y↦⊤, ⊤↦⊤".to_string(),
        "note: the self-loops of □° on x, a, d, ⊤ are not labelled in the source figure; they are read as fixed points".to_string(),
    ];
    let mut ok = a.is_distributive() && b.is_distributive();
    let Some(t) = EmbeddingTriple::from_embedding(&a, &b, e) else {
        lines.push("e has no adjoints".into());
        return MixReport {
            lines,
            box_le_a: String::new(),
            box_le_d: String::new(),
            box_le_x: String::new(),
            diagram_commutes: false,
            mix_lhs: String::new(),
            mix_rhs: String::new(),
            ok: false,
        };
    };
    let adj = check_adjunctions(&a, &b, &t);
    lines.push(format!("adjunctions c ⊣ e ⊣ ι: {adj}"));
    ok &= adj.ok();

    let box_le = t.interior();
    let name_b = |i: usize| b.names[i].clone();
    let box_le_a = name_b(box_le[ix(&b, "a")]);
    let box_le_d = name_b(box_le[ix(&b, "d")]);
    let box_le_x = name_b(box_le[ix(&b, "x")]);
    lines.push(format!("□_≤(a) = {box_le_a}, □_≤(d) = {box_le_d}, □_≤(x) = {box_le_x}"));
    ok &= box_le_a == "b" && box_le_d == "c" && box_le_x == "⊥";

    let mut box_o_normal = box_o[b.top] == b.top;
    for y in 0..8 {
        for z in 0..8 {
            box_o_normal &= box_o[b.meet(y, z)] == b.meet(box_o[y], box_o[z]);
        }
    }
    lines.push(format!("□° preserves finite meets: {box_o_normal}"));
    ok &= box_o_normal;

    let mut diagram_commutes = true;
    for x in 0..a.size() {
        let via = t.iota[box_o[t.e[x]]];
        let hit = via == box_a[x];
        diagram_commutes &= hit;
        lines.push(format!(
            "ι(□°(e({0}))) = {1}, □^A({0}) = {2}{3}",
            a.names[x],
            a.names[via],
            a.names[box_a[x]],
            if hit { "" } else { "  MISMATCH" }
        ));
    }
    lines.push(format!("diagram commutes: {diagram_commutes}"));
    ok &= diagram_commutes;

    let bb = ix(&b, "b");
    let lhs = box_le[box_o[box_le[bb]]];
    let rhs = box_o[bb];
    let mix_lhs = name_b(lhs);
    let mix_rhs = name_b(rhs);
    lines.push(format!(
        "mix: □_≤□°□_≤(b) = {mix_lhs}, □°(b) = {mix_rhs}: {}",
        if lhs != rhs { "mix law fails" } else { "mix law holds" }
    ));
    ok &= lhs != rhs && mix_lhs == "b" && mix_rhs == "a";

    MixReport {
        lines,
        box_le_a,
        box_le_d,
        box_le_x,
        diagram_commutes,
        mix_lhs,
        mix_rhs,
        ok,
    }
}
