#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use sk_core::formula::{and, app, neg, or, var};
use sk_core::{Formula, Inequality, Signature};

/// Random formula of depth at most `depth` over the connectives of `sig`.
pub fn formula(rng: &mut StdRng, sig: &Signature, vars: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => Formula::Bot,
            1 => Formula::Top,
            _ => var(vars[rng.gen_range(0..vars.len())]),
        };
    }
    let conns: Vec<_> = sig.connectives.iter().collect();
    let extra = if sig.is_bae() { 3 } else { 2 };
    let k = rng.gen_range(0..conns.len() + extra);
    let sub = |rng: &mut StdRng| formula(rng, sig, vars, depth - 1);
    match k.checked_sub(conns.len()) {
        Some(0) => and(sub(rng), sub(rng)),
        Some(1) => or(sub(rng), sub(rng)),
        Some(_) => neg(sub(rng)),
        None => {
            let c = conns[k];
            let args = (0..c.arity).map(|_| sub(rng)).collect();
            app(&c.name, args)
        }
    }
}

pub fn inequality(rng: &mut StdRng, sig: &Signature, vars: &[&str], depth: usize) -> Inequality {
    Inequality::new(formula(rng, sig, vars, depth), formula(rng, sig, vars, depth))
}

/// Order-type / dependency-order pairs on which the inequality and its
/// translation disagree about being Sahlqvist or inductive.
pub fn shape_violations(ineq: &Inequality, sig: &Signature) -> Vec<String> {
    use sk_core::gentree::{analyze, is_inductive};
    use sk_core::translate::{tau_eps_ineq, Options};
    use sk_core::{DependencyOrder, VarOrderType};

    let target = sig.target().unwrap();
    let vars = ineq.variables();
    let mut out = Vec::new();
    for i in 0..1usize << vars.len() {
        let eps = VarOrderType::from_index(&vars, i);
        let t = tau_eps_ineq(ineq, &eps, sig, Options::default()).unwrap();
        let a = analyze(ineq, &eps, sig).unwrap();
        let b = analyze(&t, &eps, &target).unwrap();
        if a.sahlqvist() != b.sahlqvist() {
            out.push(format!("{ineq} at {eps}: sahlqvist {} vs {}", a.sahlqvist(), b.sahlqvist()));
        }
        let chain = |vs: &[String]| {
            DependencyOrder::from_edges(vs.windows(2).map(|w| (w[0].clone(), w[1].clone()))).unwrap()
        };
        let mut rev = vars.clone();
        rev.reverse();
        let orders = [DependencyOrder::empty(), chain(&vars), chain(&rev)]
            .into_iter()
            .chain(a.least_order())
            .chain(b.least_order());
        for omega in orders {
            let x = is_inductive(ineq, &eps, &omega, sig).unwrap().0;
            let y = is_inductive(&t, &eps, &omega, &target).unwrap().0;
            if x != y {
                out.push(format!("{ineq} at {eps}, {{{omega}}}: inductive {x} vs {y}"));
            }
        }
    }
    out
}
