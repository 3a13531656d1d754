//! Finite DLE-frames, valuations, forcing and validity.

mod enumerate;
mod eval;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::formula::{Formula, Inequality, VarOrderType};
use crate::signature::{Family, OrderType, Polarity, Signature};
use crate::translate::{tau_eps_ineq, Options};

pub use enumerate::{enumerate_frames, for_each_frame, posets, EnumOptions};
pub use eval::Compiled;

/// Sets of worlds as bitmasks; frames have at most 64 worlds.
pub type WorldSet = u64;

pub fn full(n: usize) -> WorldSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn members(s: WorldSet) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| s >> i & 1 == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub family: Family,
    /// Order-type of the relation's coordinates (first coordinate always `1`).
    pub eta: OrderType,
    /// Sorted, duplicate-free.
    pub tuples: Vec<Vec<usize>>,
}

impl Relation {
    pub fn contains(&self, t: &[usize]) -> bool {
        self.tuples.binary_search_by(|x| x.as_slice().cmp(t)).is_ok()
    }

    pub fn arity(&self) -> usize {
        self.eta.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub n: usize,
    /// `up[w]` is the set of worlds above `w`.
    up: Vec<WorldSet>,
    down: Vec<WorldSet>,
    pub relations: BTreeMap<String, Relation>,
}

impl Frame {
    /// Build a frame from order pairs (closed reflexively and transitively)
    /// and explicit relation tuples. Order-derived relations are computed.
    /// Compatibility with the order is not enforced here; see `validate`.
    pub fn from_parts(
        sig: &Signature,
        n: usize,
        leq: &[(usize, usize)],
        rels: &BTreeMap<String, Vec<Vec<usize>>>,
    ) -> Result<Frame, Error> {
        if n == 0 || n > 64 {
            return Err(Error::Frame(format!("world count {n} outside 1..=64")));
        }
        let mut up: Vec<WorldSet> = (0..n).map(|w| 1 << w).collect();
        for &(a, b) in leq {
            if a >= n || b >= n {
                return Err(Error::Frame(format!("order pair ({a},{b}) out of range")));
            }
            up[a] |= 1 << b;
        }
        loop {
            let mut changed = false;
            for w in 0..n {
                let mut acc = up[w];
                for v in members(up[w]) {
                    acc |= up[v];
                }
                if acc != up[w] {
                    up[w] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && up[a] >> b & 1 == 1 && up[b] >> a & 1 == 1 {
                    return Err(Error::Frame(format!("order is not antisymmetric on {a}, {b}")));
                }
            }
        }
        let down = (0..n)
            .map(|w| (0..n).filter(|&v| up[v] >> w & 1 == 1).fold(0, |s, v| s | 1 << v))
            .collect();
        let mut fr = Frame {
            n,
            up,
            down,
            relations: BTreeMap::new(),
        };
        for name in rels.keys() {
            if sig.get(name).map_or(true, |c| c.companion_of.is_some()) {
                return Err(Error::Frame(format!("no connective `{name}` in `{}`", sig.name)));
            }
        }
        for c in sig.connectives.iter().filter(|c| c.companion_of.is_none() && !sig.is_bae()) {
            let tuples = if c.is_order_derived() {
                if rels.contains_key(&c.name) {
                    return Err(Error::Frame(format!(
                        "relation for `{}` is derived from the order and cannot be given",
                        c.name
                    )));
                }
                fr.derived_relation(c.family)
            } else {
                let mut ts = rels.get(&c.name).cloned().unwrap_or_default();
                for t in &ts {
                    if t.len() != c.arity + 1 || t.iter().any(|&x| x >= n) {
                        return Err(Error::Frame(format!("bad tuple {t:?} for `{}`", c.name)));
                    }
                }
                ts.sort();
                ts.dedup();
                ts
            };
            fr.relations.insert(
                c.name.clone(),
                Relation {
                    family: c.family,
                    eta: c.relation_type(),
                    tuples,
                },
            );
        }
        Ok(fr)
    }

    /// Frame given by the upper-set masks of an order (assumed valid) and closed relations.
    pub(crate) fn from_masks(n: usize, up: Vec<WorldSet>, relations: BTreeMap<String, Relation>) -> Frame {
        let down = (0..n)
            .map(|w| (0..n).filter(|&v| up[v] >> w & 1 == 1).fold(0, |s, v| s | 1 << v))
            .collect();
        Frame { n, up, down, relations }
    }

    /// `R(w,u,v)` iff some `x` lies above `w` and `u` and below `v` (implication),
    /// or below `w` and `u` and above `v` (co-implication).
    fn derived_relation(&self, family: Family) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for w in 0..self.n {
            for u in 0..self.n {
                for v in 0..self.n {
                    let hit = match family {
                        Family::G => self.up[w] & self.up[u] & self.down[v] != 0,
                        Family::F => self.down[w] & self.down[u] & self.up[v] != 0,
                    };
                    if hit {
                        out.push(vec![w, u, v]);
                    }
                }
            }
        }
        out
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    pub fn up_of(&self, w: usize) -> WorldSet {
        self.up[w]
    }

    pub fn down_of(&self, w: usize) -> WorldSet {
        self.down[w]
    }

    pub fn full(&self) -> WorldSet {
        full(self.n)
    }

    pub fn complement(&self, s: WorldSet) -> WorldSet {
        !s & self.full()
    }

    pub fn up_closure(&self, s: WorldSet) -> WorldSet {
        members(s).fold(0, |acc, w| acc | self.up[w])
    }

    pub fn down_closure(&self, s: WorldSet) -> WorldSet {
        members(s).fold(0, |acc, w| acc | self.down[w])
    }

    /// Largest up-set inside `s`.
    pub fn interior(&self, s: WorldSet) -> WorldSet {
        self.complement(self.down_closure(self.complement(s)))
    }

    pub fn is_upset(&self, s: WorldSet) -> bool {
        self.up_closure(s) == s
    }

    pub fn upsets(&self) -> Vec<WorldSet> {
        (0..=self.full()).filter(|&s| self.is_upset(s)).collect()
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    /// `a` is below `b` in the η-lifted order.
    pub fn leq_eta(&self, eta: &OrderType, a: &[usize], b: &[usize]) -> bool {
        eta.iter().zip(a.iter().zip(b)).all(|(p, (&x, &y))| match p {
            Polarity::One => self.leq(x, y),
            Polarity::Dual => self.leq(y, x),
        })
    }

    /// Whether a relation with this family and η must contain `b` when it contains `a`.
    pub fn forces(&self, family: Family, eta: &OrderType, a: &[usize], b: &[usize]) -> bool {
        match family {
            Family::F => self.leq_eta(eta, a, b),
            Family::G => self.leq_eta(eta, b, a),
        }
    }

    pub fn validate(&self) -> Result<(), Vec<String>> {
        let mut violations = Vec::new();
        for (name, r) in &self.relations {
            for t in &r.tuples {
                for s in all_tuples(self.n, r.arity()) {
                    if self.forces(r.family, &r.eta, t, &s) && !r.contains(&s) {
                        violations.push(format!("`{name}` contains {t:?} but not {s:?}"));
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Least frame above this one satisfying the compatibility conditions.
    pub fn close(&self) -> Frame {
        let mut fr = self.clone();
        for r in fr.relations.values_mut() {
            let mut out: Vec<Vec<usize>> = all_tuples(self.n, r.arity())
                .filter(|s| r.tuples.iter().any(|t| self.forces(r.family, &r.eta, t, s)))
                .collect();
            out.sort();
            r.tuples = out;
        }
        fr
    }

    pub fn to_json(&self, sig: &Signature) -> serde_json::Value {
        let mut leq = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b && self.leq(a, b) {
                    leq.push([a, b]);
                }
            }
        }
        let rel: BTreeMap<_, _> = self
            .relations
            .iter()
            .filter(|(name, _)| sig.get(name).map_or(true, |c| !c.is_order_derived()))
            .map(|(name, r)| (name.clone(), r.tuples.clone()))
            .collect();
        serde_json::json!({ "worlds": self.n, "leq": leq, "rel": rel })
    }

    pub fn from_json(text: &str, sig: &Signature) -> Result<Frame, Error> {
        #[derive(Deserialize, Serialize)]
        struct Raw {
            worlds: usize,
            #[serde(default)]
            leq: Vec<(usize, usize)>,
            #[serde(default)]
            rel: BTreeMap<String, Vec<Vec<usize>>>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            pos: e.column(),
            msg: e.to_string(),
        })?;
        Frame::from_parts(sig, raw.worlds, &raw.leq, &raw.rel)
    }

    /// Same order, relations kept only for the named connectives.
    pub fn restrict(&self, keep: impl Fn(&str) -> bool) -> Frame {
        let mut fr = self.clone();
        fr.relations.retain(|k, _| keep(k));
        fr
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} worlds; <=", self.n)?;
        let mut first = true;
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b && self.leq(a, b) {
                    write!(f, "{}{a}{b}", if first { " " } else { "," })?;
                    first = false;
                }
            }
        }
        if first {
            write!(f, " id")?;
        }
        for (name, r) in &self.relations {
            write!(f, "; {name}:")?;
            for t in &r.tuples {
                write!(f, " ")?;
                for x in t {
                    write!(f, "{x}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn all_tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(k as u32);
    (0..total).map(move |mut i| {
        let mut t = vec![0; k];
        for x in t.iter_mut() {
            *x = i % n;
            i /= n;
        }
        t
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValuationKind {
    Persistent,
    Arbitrary,
}

impl ValuationKind {
    pub fn parse(s: &str) -> Option<ValuationKind> {
        match s {
            "persistent" => Some(ValuationKind::Persistent),
            "arbitrary" | "classical" => Some(ValuationKind::Arbitrary),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    pub kind: ValuationKind,
    pub values: BTreeMap<String, WorldSet>,
}

impl Valuation {
    pub fn new(kind: ValuationKind, values: &[(&str, WorldSet)]) -> Valuation {
        Valuation {
            kind,
            values: values.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    pub fn is_persistent_on(&self, fr: &Frame) -> bool {
        self.values.values().all(|&s| fr.is_upset(s))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self
            .values
            .iter()
            .map(|(k, &v)| {
                let ws: Vec<_> = members(v).map(|w| w.to_string()).collect();
                format!("{k}={{{}}}", ws.join(","))
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn extension(f: &Formula, sig: &Signature, fr: &Frame, val: &Valuation) -> Result<WorldSet, Error> {
    let c = Compiled::new(f, sig, fr)?;
    let vals = c
        .vars()
        .iter()
        .map(|v| val.values.get(v).copied().ok_or_else(|| Error::UncoveredVariable(v.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(c.eval(&vals))
}

/// Apply a single connective to world sets, by its forcing clause.
pub fn apply(fr: &Frame, sig: &Signature, name: &str, args: &[WorldSet]) -> Result<WorldSet, Error> {
    if sig.is_bae() && name == crate::signature::DIA_GEQ {
        return Ok(fr.up_closure(args[0]));
    }
    if sig.is_bae() && name == crate::signature::BOX_LEQ {
        return Ok(fr.interior(args[0]));
    }
    let c = sig.get(name).ok_or_else(|| Error::UnknownConnective(name.to_string()))?;
    let rel = fr
        .relation(c.relation_name())
        .ok_or_else(|| Error::Frame(format!("frame has no relation for `{name}`")))?;
    let sat = |i: usize, x: usize| (args[i] >> x & 1 == 1) != c.coord_types.get(i).is_dual();
    let mut out = match c.family {
        Family::F => 0,
        Family::G => fr.full(),
    };
    for t in &rel.tuples {
        match c.family {
            Family::F => {
                if t[1..].iter().enumerate().all(|(i, &x)| sat(i, x)) {
                    out |= 1 << t[0];
                }
            }
            Family::G => {
                if !t[1..].iter().enumerate().any(|(i, &x)| sat(i, x)) {
                    out &= !(1 << t[0]);
                }
            }
        }
    }
    Ok(out)
}

/// Candidate values for one variable under a valuation kind.
pub fn candidates(fr: &Frame, kind: ValuationKind) -> Vec<WorldSet> {
    match kind {
        ValuationKind::Persistent => fr.upsets(),
        ValuationKind::Arbitrary => (0..=fr.full()).collect(),
    }
}

/// Calls `f` with every assignment of candidate values to `k` variables; stops early on `false`.
pub fn for_each_assignment(k: usize, cands: &[WorldSet], mut f: impl FnMut(&[WorldSet]) -> bool) {
    let mut idx = vec![0usize; k];
    let mut vals: Vec<WorldSet> = vec![cands[0]; k];
    loop {
        if !f(&vals) {
            return;
        }
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            idx[i] += 1;
            if idx[i] < cands.len() {
                vals[i] = cands[idx[i]];
                break;
            }
            idx[i] = 0;
            vals[i] = cands[0];
            i += 1;
        }
    }
}

/// `None` when valid, otherwise a falsifying valuation.
pub fn counterexample(ineq: &Inequality, sig: &Signature, fr: &Frame, kind: ValuationKind) -> Result<Option<Valuation>, Error> {
    let vars = ineq.variables();
    let lhs = Compiled::with_vars(&ineq.lhs, sig, fr, &vars)?;
    let rhs = Compiled::with_vars(&ineq.rhs, sig, fr, &vars)?;
    let cands = candidates(fr, kind);
    let mut bad = None;
    let mut scratch = Vec::new();
    for_each_assignment(vars.len(), &cands, |vals| {
        if lhs.eval_with(vals, &mut scratch) & !rhs.eval_with(vals, &mut scratch) != 0 {
            bad = Some(vals.to_vec());
            false
        } else {
            true
        }
    });
    Ok(bad.map(|vals| Valuation {
        kind,
        values: vars.iter().cloned().zip(vals).collect(),
    }))
}

pub fn is_valid(ineq: &Inequality, sig: &Signature, fr: &Frame, kind: ValuationKind) -> Result<bool, Error> {
    Ok(counterexample(ineq, sig, fr, kind)?.is_none())
}

/// Persistent valuation induced by an arbitrary one: interior at monotone
/// variables, up-closure at antitone ones.
pub fn lift_valuation(u: &Valuation, eps: &VarOrderType, fr: &Frame) -> Result<Valuation, Error> {
    let mut values = BTreeMap::new();
    for (k, &s) in &u.values {
        let v = match eps.of(k)? {
            Polarity::One => fr.interior(s),
            Polarity::Dual => fr.up_closure(s),
        };
        values.insert(k.clone(), v);
    }
    Ok(Valuation {
        kind: ValuationKind::Persistent,
        values,
    })
}

#[derive(Clone, Debug)]
pub struct TransferReport {
    pub frame: Frame,
    pub inequality: String,
    pub eps: VarOrderType,
    pub dle_valid: bool,
    pub bae_valid: bool,
    pub agree: bool,
    pub dle_counterexample: Option<Valuation>,
    pub bae_counterexample: Option<Valuation>,
}

/// Validity of the inequality under persistent valuations against validity of
/// its translation under arbitrary valuations on the same frame.
pub fn transfer_check(ineq: &Inequality, eps: &VarOrderType, sig: &Signature, fr: &Frame) -> Result<TransferReport, Error> {
    let target = sig.target()?;
    let t = tau_eps_ineq(ineq, eps, sig, Options::default())?;
    let dle = counterexample(ineq, sig, fr, ValuationKind::Persistent)?;
    let bae = counterexample(&t, &target, fr, ValuationKind::Arbitrary)?;
    Ok(TransferReport {
        frame: fr.clone(),
        inequality: ineq.to_string(),
        eps: eps.clone(),
        dle_valid: dle.is_none(),
        bae_valid: bae.is_none(),
        agree: dle.is_none() == bae.is_none(),
        dle_counterexample: dle,
        bae_counterexample: bae,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;

    fn chain2(sig: &Signature) -> Frame {
        Frame::from_parts(sig, 2, &[(0, 1)], &BTreeMap::new()).unwrap()
    }

    #[test]
    fn compatibility_violation_and_closure() {
        let sig = Signature::builtin("positive-modal").unwrap();
        let rels = BTreeMap::from([("dia".to_string(), vec![vec![0, 1]])]);
        let fr = Frame::from_parts(&sig, 2, &[(0, 1)], &rels).unwrap();
        assert!(fr.validate().is_err());
        let closed = fr.close();
        assert!(closed.validate().is_ok());
        assert!(closed.relation("dia").unwrap().contains(&[1, 0]));
        assert_eq!(closed.close(), closed);
        let discrete = Frame::from_parts(&sig, 2, &[], &rels).unwrap();
        assert!(discrete.validate().is_ok());
    }

    #[test]
    fn excluded_middle() {
        let sig = Signature::builtin("intuitionistic").unwrap();
        let em = Inequality::parse("top <= p \\/ (p -> bot)", &sig).unwrap();
        let one = Frame::from_parts(&sig, 1, &[], &BTreeMap::new()).unwrap();
        assert!(is_valid(&em, &sig, &one, ValuationKind::Persistent).unwrap());
        let c2 = chain2(&sig);
        let cx = counterexample(&em, &sig, &c2, ValuationKind::Persistent).unwrap().unwrap();
        assert_eq!(cx.values["p"], 0b10);
        let f = Formula::parse("p \\/ (p -> bot)", &sig).unwrap();
        let v = Valuation::new(ValuationKind::Persistent, &[("p", 1)]);
        assert_eq!(extension(&f, &sig, &one, &v).unwrap(), 1);
    }

    #[test]
    fn lifting() {
        let sig = Signature::builtin("intuitionistic").unwrap();
        let c2 = chain2(&sig);
        let lift = |s, p| {
            let u = Valuation::new(ValuationKind::Arbitrary, &[("p", s)]);
            lift_valuation(&u, &VarOrderType::from_pairs(&[("p", p)]), &c2).unwrap().values["p"]
        };
        assert_eq!(lift(0b10, Polarity::One), 0b10);
        assert_eq!(lift(0b01, Polarity::One), 0);
        assert_eq!(lift(0b01, Polarity::Dual), 0b11);
    }

    #[test]
    fn json_round_trip() {
        let sig = Signature::builtin("fischer-servi").unwrap();
        let text = r#"{"worlds":2,"leq":[[0,1]],"rel":{"dia":[[0,0],[1,0],[1,1]],"box":[[0,1],[1,1]]}}"#;
        let fr = Frame::from_json(text, &sig).unwrap();
        assert!(fr.relation("->").is_some());
        let again = Frame::from_json(&fr.to_json(&sig).to_string(), &sig).unwrap();
        assert_eq!(fr, again);
        let bad = r#"{"worlds":2,"leq":[[0,1],[1,0]]}"#;
        assert!(Frame::from_json(bad, &sig).is_err());
    }
}
