//! Signed generation trees, Skeleton/PIA node classes and recognition of
//! Sahlqvist and inductive inequalities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::formula::{Formula, Inequality, VarOrderType};
use crate::signature::{Family, Polarity, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn under(self, p: Polarity) -> Sign {
        if p.is_dual() {
            self.flip()
        } else {
            self
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NodeClass {
    DeltaAdjoint,
    Sra,
    Slr,
    Srr,
    Leaf,
}

/// The classes a node belongs to; Table 1 rows overlap, so a node may carry several.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Classes {
    pub delta_adjoint: bool,
    pub sra: bool,
    pub slr: bool,
    pub srr: bool,
}

impl Classes {
    pub fn is_skeleton(&self) -> bool {
        self.delta_adjoint || self.slr
    }

    pub fn is_pia(&self) -> bool {
        self.sra || self.srr
    }

    pub fn is_leaf(&self) -> bool {
        !(self.delta_adjoint || self.sra || self.slr || self.srr)
    }

    pub fn list(&self) -> Vec<NodeClass> {
        let mut v = Vec::new();
        if self.delta_adjoint {
            v.push(NodeClass::DeltaAdjoint);
        }
        if self.sra {
            v.push(NodeClass::Sra);
        }
        if self.slr {
            v.push(NodeClass::Slr);
        }
        if self.srr {
            v.push(NodeClass::Srr);
        }
        if v.is_empty() {
            v.push(NodeClass::Leaf);
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Var(String),
    Const,
    And,
    Or,
    Neg,
    Conn(String),
}

#[derive(Clone, Debug)]
pub struct Node {
    pub sign: Sign,
    pub kind: NodeKind,
    pub classes: Classes,
    pub children: Vec<usize>,
    pub parent: Option<usize>,
}

impl Node {
    pub fn label(&self) -> String {
        let sym = match &self.kind {
            NodeKind::Var(p) => p.as_str(),
            NodeKind::Const => "const",
            NodeKind::And => "/\\",
            NodeKind::Or => "\\/",
            NodeKind::Neg => "~",
            NodeKind::Conn(n) => n.as_str(),
        };
        format!("{}{}", self.sign, sym)
    }
}

#[derive(Clone, Debug)]
pub struct SignedTree {
    pub formula: Formula,
    pub root_sign: Sign,
    pub nodes: Vec<Node>,
}

fn classify_node(sign: Sign, kind: &NodeKind, family: Option<Family>, arity: usize) -> Classes {
    use Sign::{Minus, Plus};
    let mut c = Classes::default();
    match (kind, sign) {
        (NodeKind::Var(_) | NodeKind::Const, _) => {}
        (NodeKind::And, Plus) | (NodeKind::Or, Minus) => {
            c.delta_adjoint = true;
            c.sra = true;
            c.slr = true;
        }
        (NodeKind::Or, Plus) | (NodeKind::And, Minus) => {
            c.delta_adjoint = true;
            c.srr = true;
        }
        // unary, antitone, in both families
        (NodeKind::Neg, _) => {
            c.sra = true;
            c.slr = true;
        }
        (NodeKind::Conn(_), _) if arity == 0 => {}
        (NodeKind::Conn(_), _) => {
            let acts_as_g = matches!((family, sign), (Some(Family::G), Plus) | (Some(Family::F), Minus));
            if acts_as_g {
                c.sra = arity == 1;
                c.srr = arity >= 2;
            } else {
                c.slr = true;
            }
        }
    }
    c
}

impl SignedTree {
    pub fn build(f: &Formula, sign: Sign, sig: &Signature) -> Result<SignedTree, Error> {
        let mut t = SignedTree {
            formula: f.clone(),
            root_sign: sign,
            nodes: Vec::new(),
        };
        t.add(f, sign, None, sig)?;
        Ok(t)
    }

    fn add(&mut self, f: &Formula, sign: Sign, parent: Option<usize>, sig: &Signature) -> Result<usize, Error> {
        let idx = self.nodes.len();
        let (kind, family, kids): (NodeKind, Option<Family>, Vec<(&Formula, Sign)>) = match f {
            Formula::Var(p) => (NodeKind::Var(p.clone()), None, vec![]),
            Formula::Bot | Formula::Top => (NodeKind::Const, None, vec![]),
            Formula::And(a, b) => (NodeKind::And, None, vec![(a, sign), (b, sign)]),
            Formula::Or(a, b) => (NodeKind::Or, None, vec![(a, sign), (b, sign)]),
            Formula::Neg(a) => (NodeKind::Neg, None, vec![(a, sign.flip())]),
            Formula::App(name, args) => {
                let c = sig.get(name).ok_or_else(|| Error::UnknownConnective(name.clone()))?;
                if c.arity != args.len() {
                    return Err(Error::ArityMismatch {
                        name: name.clone(),
                        arity: c.arity,
                        found: args.len(),
                    });
                }
                let kids = args
                    .iter()
                    .zip(c.coord_types.iter())
                    .map(|(a, p)| (a, sign.under(p)))
                    .collect();
                (NodeKind::Conn(name.clone()), Some(c.family), kids)
            }
        };
        let classes = classify_node(sign, &kind, family, kids.len());
        self.nodes.push(Node {
            sign,
            kind,
            classes,
            children: vec![],
            parent,
        });
        for (a, s) in kids {
            let k = self.add(a, s, Some(idx), sig)?;
            self.nodes[idx].children.push(k);
        }
        Ok(idx)
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].children.is_empty())
    }

    fn is_critical(&self, i: usize, eps: &VarOrderType) -> Result<bool, Error> {
        let n = &self.nodes[i];
        Ok(match &n.kind {
            NodeKind::Var(p) => {
                let e = eps.of(p)?;
                matches!((n.sign, e), (Sign::Plus, Polarity::One) | (Sign::Minus, Polarity::Dual))
            }
            _ => false,
        })
    }

    /// Paths from each ε-critical leaf up to the root.
    pub fn critical_branches(&self, eps: &VarOrderType) -> Result<Vec<Branch>, Error> {
        let mut out = Vec::new();
        for leaf in self.leaves() {
            if self.is_critical(leaf, eps)? {
                let mut path = vec![leaf];
                let mut at = leaf;
                while let Some(p) = self.nodes[at].parent {
                    path.push(p);
                    at = p;
                }
                out.push(Branch { path });
            }
        }
        Ok(out)
    }

    pub fn branch_label(&self, b: &Branch) -> String {
        b.path
            .iter()
            .map(|&i| self.nodes[i].label())
            .collect::<Vec<_>>()
            .join(" < ")
    }

    /// Split a branch as PIA part followed by Skeleton part, taking the PIA
    /// part as short as possible: it ends at the topmost non-Skeleton node.
    pub fn branch_quality(&self, b: &Branch) -> BranchQuality {
        let inner = &b.path[1..];
        let top = inner.iter().rposition(|&i| !self.nodes[i].classes.is_skeleton());
        let pia_len = top.map_or(0, |k| k + 1);
        for &i in &inner[..pia_len] {
            if !self.nodes[i].classes.is_pia() {
                let upper = inner[top.unwrap()];
                return BranchQuality::Bad(format!(
                    "node {} is Skeleton only but lies below the non-Skeleton node {}",
                    self.nodes[i].label(),
                    self.nodes[upper].label()
                ));
            }
        }
        if inner[..pia_len].iter().all(|&i| self.nodes[i].classes.sra) {
            BranchQuality::Excellent { pia_len }
        } else {
            BranchQuality::Good { pia_len }
        }
    }

    fn subtree_leaves(&self, i: usize, out: &mut Vec<usize>) {
        if self.nodes[i].children.is_empty() {
            out.push(i);
        }
        for &k in &self.nodes[i].children {
            self.subtree_leaves(k, out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    /// Node indices from the leaf to the root.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchQuality {
    Excellent { pia_len: usize },
    Good { pia_len: usize },
    Bad(String),
}

impl BranchQuality {
    pub fn is_good(&self) -> bool {
        !matches!(self, BranchQuality::Bad(_))
    }

    pub fn is_excellent(&self) -> bool {
        matches!(self, BranchQuality::Excellent { .. })
    }
}

/// A strict order on variables given by its transitive closure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DependencyOrder {
    less: BTreeSet<(String, String)>,
}

impl DependencyOrder {
    pub fn empty() -> DependencyOrder {
        DependencyOrder::default()
    }

    /// Transitive closure of `edges`; fails if the result is not irreflexive.
    pub fn from_edges(edges: impl IntoIterator<Item = (String, String)>) -> Result<DependencyOrder, String> {
        let mut less: BTreeSet<(String, String)> = edges.into_iter().collect();
        loop {
            let mut added = Vec::new();
            for (a, b) in &less {
                for (c, d) in less.range((b.clone(), String::new())..) {
                    if c != b {
                        break;
                    }
                    if !less.contains(&(a.clone(), d.clone())) {
                        added.push((a.clone(), d.clone()));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            less.extend(added);
        }
        if let Some((a, _)) = less.iter().find(|(a, b)| a == b) {
            return Err(format!("dependency cycle through `{a}`"));
        }
        Ok(DependencyOrder { less })
    }

    /// Parse `q<p,r<p`.
    pub fn parse(text: &str) -> Result<DependencyOrder, Error> {
        let mut edges = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let mut names: Vec<&str> = part.split('<').map(str::trim).collect();
            if names.len() < 2 || names.iter().any(|n| n.is_empty()) {
                return Err(Error::Parse {
                    line: 1,
                    pos: 1,
                    msg: format!("expected `a<b`, found `{part}`"),
                });
            }
            for w in names.windows(2) {
                edges.push((w[0].to_string(), w[1].to_string()));
            }
            names.clear();
        }
        DependencyOrder::from_edges(edges).map_err(|m| Error::Parse { line: 1, pos: 1, msg: m })
    }

    pub fn lt(&self, a: &str, b: &str) -> bool {
        self.less.contains(&(a.to_string(), b.to_string()))
    }

    pub fn edges(&self) -> impl Iterator<Item = &(String, String)> {
        self.less.iter()
    }

    pub fn contains_all(&self, other: &BTreeSet<(String, String)>) -> bool {
        other.is_subset(&self.less)
    }

    /// Variables in an order compatible with `<`, ties broken by `vars` order.
    pub fn topological<S: AsRef<str>>(&self, vars: &[S]) -> Vec<String> {
        let mut left: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut out = Vec::new();
        while !left.is_empty() {
            let k = left
                .iter()
                .position(|v| !left.iter().any(|u| self.lt(u, v)))
                .expect("strict orders have minimal elements");
            out.push(left.remove(k));
        }
        out
    }

    /// Reduced edge list, for display.
    pub fn cover_edges(&self) -> Vec<(String, String)> {
        self.less
            .iter()
            .filter(|(a, b)| {
                !self
                    .less
                    .iter()
                    .any(|(x, y)| x == a && y != b && self.lt(y, b))
            })
            .cloned()
            .collect()
    }
}

impl fmt::Display for DependencyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.cover_edges().iter().map(|(a, b)| format!("{a}<{b}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Everything a single order-type settles about an inequality.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub bad: Vec<String>,
    pub all_excellent: bool,
    pub forced: BTreeSet<(String, String)>,
    pub not_excellent: Vec<String>,
}

impl Analysis {
    pub fn sahlqvist(&self) -> bool {
        self.bad.is_empty() && self.all_excellent
    }

    /// The least dependency order making the inequality inductive, if any.
    pub fn least_order(&self) -> Option<DependencyOrder> {
        if !self.bad.is_empty() {
            return None;
        }
        DependencyOrder::from_edges(self.forced.iter().cloned()).ok()
    }
}

pub fn analyze(ineq: &Inequality, eps: &VarOrderType, sig: &Signature) -> Result<Analysis, Error> {
    eps.covers(&ineq.variables())?;
    let mut a = Analysis {
        bad: vec![],
        all_excellent: true,
        forced: BTreeSet::new(),
        not_excellent: vec![],
    };
    for (side, f, sign) in [("lhs", &ineq.lhs, Sign::Plus), ("rhs", &ineq.rhs, Sign::Minus)] {
        let t = SignedTree::build(f, sign, sig)?;
        for b in t.critical_branches(eps)? {
            let label = t.branch_label(&b);
            let q = t.branch_quality(&b);
            let pia_len = match q {
                BranchQuality::Bad(msg) => {
                    a.bad.push(format!("{side} branch {label}: not good: {msg}"));
                    a.all_excellent = false;
                    continue;
                }
                BranchQuality::Good { pia_len } => {
                    a.all_excellent = false;
                    a.not_excellent
                        .push(format!("{side} branch {label}: PIA part contains a non-SRA node"));
                    pia_len
                }
                BranchQuality::Excellent { pia_len } => pia_len,
            };
            let NodeKind::Var(leaf_var) = &t.nodes[b.path[0]].kind else {
                unreachable!("critical leaves are variables")
            };
            for k in 1..=pia_len {
                let node = &t.nodes[b.path[k]];
                if !node.classes.srr || node.classes.sra {
                    continue;
                }
                let from = b.path[k - 1];
                for &other in node.children.iter().filter(|&&c| c != from) {
                    let mut leaves = Vec::new();
                    t.subtree_leaves(other, &mut leaves);
                    for l in leaves {
                        let NodeKind::Var(v) = &t.nodes[l].kind else { continue };
                        if t.is_critical(l, eps)? {
                            a.bad.push(format!(
                                "{side} branch {label}: side formula of SRR node {} contains critical occurrence {}",
                                node.label(),
                                t.nodes[l].label()
                            ));
                        } else if v == leaf_var {
                            a.bad.push(format!(
                                "{side} branch {label}: `{v}` occurs in a side formula of its own SRR node {}",
                                node.label()
                            ));
                        } else {
                            a.forced.insert((v.clone(), leaf_var.clone()));
                        }
                    }
                }
            }
        }
    }
    Ok(a)
}

pub fn is_sahlqvist(ineq: &Inequality, eps: &VarOrderType, sig: &Signature) -> Result<(bool, Vec<String>), Error> {
    let a = analyze(ineq, eps, sig)?;
    let mut diags = a.bad.clone();
    diags.extend(a.not_excellent.clone());
    Ok((a.sahlqvist(), diags))
}

pub fn is_inductive(
    ineq: &Inequality,
    eps: &VarOrderType,
    omega: &DependencyOrder,
    sig: &Signature,
) -> Result<(bool, Vec<String>), Error> {
    let a = analyze(ineq, eps, sig)?;
    let mut diags = a.bad.clone();
    for (x, y) in &a.forced {
        if !omega.lt(x, y) {
            diags.push(format!("dependency `{x}<{y}` required but not in the given order"));
        }
    }
    Ok((diags.is_empty(), diags))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sahlqvist,
    Inductive,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Sahlqvist,
    Inductive,
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub eps: VarOrderType,
    pub omega: DependencyOrder,
    pub sahlqvist: bool,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub inequality: String,
    pub variables: Vec<String>,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub diagnostics: Vec<String>,
}

pub const DEFAULT_VAR_BOUND: usize = 12;

/// Try every order-type on the variables, in the order of `VarOrderType::from_index`.
pub fn find_witnesses(ineq: &Inequality, sig: &Signature, mode: Mode, bound: usize) -> Result<ClassificationReport, Error> {
    let vars = ineq.variables();
    if vars.len() > bound {
        return Err(Error::BoundExceeded { what: "variable count", found: vars.len(), bound });
    }
    let results: Vec<(VarOrderType, Analysis)> = (0..1usize << vars.len())
        .into_par_iter()
        .map(|i| {
            let eps = VarOrderType::from_index(&vars, i);
            analyze(ineq, &eps, sig).map(|a| (eps, a))
        })
        .collect::<Result<_, _>>()?;
    let mut witnesses = Vec::new();
    let mut diagnostics = Vec::new();
    for (eps, a) in &results {
        let ok = match mode {
            Mode::Sahlqvist => a.sahlqvist(),
            Mode::Inductive | Mode::Both => a.least_order().is_some(),
        };
        if ok {
            witnesses.push(Witness {
                eps: eps.clone(),
                omega: a.least_order().unwrap_or_default(),
                sahlqvist: a.sahlqvist(),
            });
        } else {
            let e = eps.render(&vars);
            if a.bad.is_empty() && mode == Mode::Sahlqvist {
                diagnostics.extend(a.not_excellent.iter().map(|d| format!("[{e}] {d}")));
            } else if a.bad.is_empty() {
                let cyc: Vec<_> = a.forced.iter().map(|(x, y)| format!("{x}<{y}")).collect();
                diagnostics.push(format!("[{e}] forced dependencies are cyclic: {}", cyc.join(",")));
            } else {
                diagnostics.extend(a.bad.iter().map(|d| format!("[{e}] {d}")));
            }
        }
    }
    let verdict = if witnesses.iter().any(|w| w.sahlqvist) {
        Verdict::Sahlqvist
    } else if witnesses.is_empty() {
        Verdict::Negative
    } else {
        Verdict::Inductive
    };
    Ok(ClassificationReport {
        inequality: ineq.to_string(),
        variables: vars,
        verdict,
        witnesses,
        diagnostics,
    })
}

impl ClassificationReport {
    pub fn sahlqvist_witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| w.sahlqvist)
    }

    pub fn find(&self, eps: &VarOrderType) -> Option<&Witness> {
        self.witnesses.iter().find(|w| &w.eps == eps)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ws: Vec<_> = self
            .witnesses
            .iter()
            .map(|w| {
                let eps: BTreeMap<_, _> = w.eps.0.iter().map(|(k, p)| (k.clone(), p.symbol())).collect();
                serde_json::json!({
                    "eps": eps,
                    "omega_edges": w.omega.edges().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
                    "sahlqvist": w.sahlqvist,
                })
            })
            .collect();
        serde_json::json!({
            "inequality": self.inequality,
            "verdict": self.verdict,
            "witnesses": ws,
            "diagnostics": self.diagnostics,
        })
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "inequality: {}", self.inequality)?;
        writeln!(f, "verdict: {}", serde_json::to_value(self.verdict).unwrap().as_str().unwrap())?;
        for w in &self.witnesses {
            let kind = if w.sahlqvist { "sahlqvist" } else { "inductive" };
            writeln!(f, "  {kind}  eps {}  omega {{{}}}", w.eps.render(&self.variables), w.omega)?;
        }
        if self.witnesses.is_empty() {
            for d in &self.diagnostics {
                writeln!(f, "  {d}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Polarity::{Dual as D, One};

    fn eps(pairs: &[(&str, Polarity)]) -> VarOrderType {
        VarOrderType::from_pairs(pairs)
    }

    #[test]
    fn table_one_rows() {
        let f = Some(Family::F);
        let g = Some(Family::G);
        let conn = NodeKind::Conn("h".into());
        let c = classify_node(Sign::Plus, &conn, g, 1);
        assert!(c.sra && !c.srr && !c.is_skeleton());
        let c = classify_node(Sign::Plus, &conn, g, 2);
        assert!(c.srr && !c.sra);
        let c = classify_node(Sign::Minus, &conn, g, 2);
        assert!(c.slr && !c.is_pia());
        let c = classify_node(Sign::Minus, &conn, f, 1);
        assert!(c.sra);
        let c = classify_node(Sign::Minus, &conn, f, 3);
        assert!(c.srr);
        let c = classify_node(Sign::Plus, &conn, f, 2);
        assert!(c.slr);
        assert!(classify_node(Sign::Plus, &conn, f, 0).is_leaf());
        let c = classify_node(Sign::Minus, &NodeKind::Neg, None, 1);
        assert!(c.sra && c.slr);
        let c = classify_node(Sign::Plus, &NodeKind::Or, None, 2);
        assert!(c.delta_adjoint && c.srr && !c.sra);
    }

    #[test]
    fn sign_duality() {
        let sig = Signature::builtin("dml").unwrap();
        let f = Formula::parse("lhd (p /\\ rhd q) \\/ box dia r", &sig).unwrap();
        let plus = SignedTree::build(&f, Sign::Plus, &sig).unwrap();
        let minus = SignedTree::build(&f, Sign::Minus, &sig).unwrap();
        for (a, b) in plus.nodes.iter().zip(&minus.nodes) {
            assert_eq!(a.sign, b.sign.flip());
        }
    }

    #[test]
    fn frege_critical_branches() {
        let sig = Signature::builtin("intuitionistic").unwrap();
        let ineq = Inequality::parse("p -> (q -> r) <= (p -> q) -> (p -> r)", &sig).unwrap();
        let e = eps(&[("p", One), ("q", One), ("r", D)]);
        let lhs = SignedTree::build(&ineq.lhs, Sign::Plus, &sig).unwrap();
        assert!(lhs.critical_branches(&e).unwrap().is_empty());
        let rhs = SignedTree::build(&ineq.rhs, Sign::Minus, &sig).unwrap();
        let leaves: Vec<_> = rhs
            .critical_branches(&e)
            .unwrap()
            .iter()
            .map(|b| rhs.nodes[b.path[0]].label())
            .collect();
        assert_eq!(leaves, vec!["+q", "+p", "-r"]);
        let root = &rhs.nodes[0];
        assert!(root.classes.is_skeleton());
        // the binary implication under the rhs root is PIA as SRR
        let inner = &rhs.nodes[root.children[0]];
        assert!(inner.classes.srr && !inner.classes.sra);
    }

    #[test]
    fn leaf_branch_is_excellent() {
        let sig = Signature::empty("bdl");
        let t = SignedTree::build(&Formula::Var("p".into()), Sign::Plus, &sig).unwrap();
        let b = &t.critical_branches(&eps(&[("p", One)])).unwrap()[0];
        assert_eq!(t.branch_quality(b), BranchQuality::Excellent { pia_len: 0 });
    }

    #[test]
    fn skeleton_below_pia_is_bad() {
        let sig = Signature::builtin("positive-modal").unwrap();
        // +box (SRA) above +dia (Skeleton only)
        let t = SignedTree::build(&Formula::parse("box dia p", &sig).unwrap(), Sign::Plus, &sig).unwrap();
        let b = &t.critical_branches(&eps(&[("p", One)])).unwrap()[0];
        assert!(!t.branch_quality(b).is_good());
    }

    #[test]
    fn dependency_orders() {
        let o = DependencyOrder::parse("r<p,p<q").unwrap();
        assert!(o.lt("r", "q"));
        assert_eq!(o.topological(&["q", "p", "r"]), vec!["r", "p", "q"]);
        assert!(DependencyOrder::parse("p<q,q<p").is_err());
        assert_eq!(o.to_string(), "p<q,r<p");
    }
}
