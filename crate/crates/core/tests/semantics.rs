mod common;

use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::SeedableRng;
use sk_core::formula::{and, app, neg, or};
use sk_core::semantics::{
    candidates, enumerate_frames, extension, for_each_assignment, full, lift_valuation, EnumOptions, Frame, Valuation,
    ValuationKind, WorldSet,
};
use sk_core::translate::{tau_eps, Options};
use sk_core::{Formula, Signature, VarOrderType};

const VARS: [&str; 2] = ["p", "q"];

fn frames(sig: &Signature, n: usize) -> Vec<Frame> {
    enumerate_frames(sig, n, &EnumOptions::default()).unwrap()
}

fn each_valuation(fr: &Frame, kind: ValuationKind, mut f: impl FnMut(&Valuation)) {
    let cands = candidates(fr, kind);
    for_each_assignment(VARS.len(), &cands, |vals| {
        let v = Valuation {
            kind,
            values: VARS.iter().zip(vals).map(|(k, &s)| (k.to_string(), s)).collect(),
        };
        f(&v);
        true
    });
}

fn box_shape(fr: &Frame, s: WorldSet) -> WorldSet {
    fr.complement(fr.down_closure(fr.complement(s)))
}

fn sample(sig: &Signature, seed: u64, count: usize, depth: usize) -> Vec<Formula> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| common::formula(&mut rng, sig, &VARS, depth)).collect()
}

#[test]
fn extensions_are_upsets_under_persistent_valuations() {
    for name in ["intuitionistic", "bi-intuitionistic", "positive-modal"] {
        let sig = Signature::builtin(name).unwrap();
        let fs = sample(&sig, 11, 40, 3);
        for fr in frames(&sig, 3).iter().filter(|f| f.n <= 2 || name != "positive-modal") {
            each_valuation(fr, ValuationKind::Persistent, |v| {
                for f in &fs {
                    assert!(fr.is_upset(extension(f, &sig, fr, v).unwrap()), "{f} on {fr}");
                }
            });
        }
    }
}

#[test]
fn box_extension_identity() {
    let sig = Signature::resolve("target:intuitionistic").unwrap();
    let source = sig.source().unwrap();
    let fs = sample(&sig, 12, 60, 3);
    for fr in frames(&source, 3) {
        each_valuation(&fr, ValuationKind::Arbitrary, |u| {
            for f in &fs {
                let inner = extension(f, &sig, &fr, u).unwrap();
                let boxed = extension(&app("boxle", vec![f.clone()]), &sig, &fr, u).unwrap();
                assert_eq!(boxed, box_shape(&fr, inner), "{f} on {fr}");
            }
        });
    }
}

#[test]
fn implication_extension_identity() {
    let sig = Signature::builtin("intuitionistic").unwrap();
    let fs = sample(&sig, 13, 30, 2);
    for fr in frames(&sig, 3) {
        each_valuation(&fr, ValuationKind::Persistent, |v| {
            for a in &fs {
                for b in fs.iter().take(10) {
                    let ea = extension(a, &sig, &fr, v).unwrap();
                    let eb = extension(b, &sig, &fr, v).unwrap();
                    let imp = extension(&app("->", vec![a.clone(), b.clone()]), &sig, &fr, v).unwrap();
                    assert_eq!(imp, box_shape(&fr, fr.complement(ea) | eb), "{a} -> {b} on {fr}");
                }
            }
        });
    }
}

fn all_eps() -> Vec<VarOrderType> {
    (0..4).map(|i| VarOrderType::from_index(&VARS, i)).collect()
}

// Persistent valuations give the same extension before and after translation;
// arbitrary ones give the extension of the input under the lifted valuation.
#[test]
fn translation_lemma_conditions() {
    for name in ["intuitionistic", "co-intuitionistic", "bi-intuitionistic", "positive-modal", "dml"] {
        let sig = Signature::builtin(name).unwrap();
        let target = sig.target().unwrap();
        let fs = sample(&sig, 14, 25, 3);
        // order-only signatures are checked on every frame; modal ones on a fixed subsample
        let modal = sig.connectives.iter().any(|c| !c.is_order_derived());
        let all = frames(&sig, if modal { 2 } else { 3 });
        let stride = all.len().div_ceil(300);
        for fr in all.into_iter().step_by(stride) {
            for eps in all_eps() {
                let ts: Vec<Formula> = fs.iter().map(|f| tau_eps(f, &eps, &sig, Options::default()).unwrap()).collect();
                each_valuation(&fr, ValuationKind::Persistent, |v| {
                    for (f, t) in fs.iter().zip(&ts) {
                        let b = Valuation { kind: ValuationKind::Arbitrary, values: v.values.clone() };
                        assert_eq!(extension(f, &sig, &fr, v).unwrap(), extension(t, &target, &fr, &b).unwrap(), "(a) {f} at {eps} on {fr}");
                    }
                });
                each_valuation(&fr, ValuationKind::Arbitrary, |u| {
                    let lifted = lift_valuation(u, &eps, &fr).unwrap();
                    assert!(lifted.is_persistent_on(&fr));
                    for (f, t) in fs.iter().zip(&ts) {
                        assert_eq!(extension(t, &target, &fr, u).unwrap(), extension(f, &sig, &fr, &lifted).unwrap(), "(b) {f} at {eps} on {fr}");
                    }
                });
            }
        }
    }
}

#[test]
fn negation_and_lattice_clauses() {
    let sig = Signature::resolve("target:intuitionistic").unwrap();
    let source = sig.source().unwrap();
    let p = Formula::Var("p".into());
    let q = Formula::Var("q".into());
    for fr in frames(&source, 3) {
        each_valuation(&fr, ValuationKind::Arbitrary, |u| {
            let (vp, vq) = (u.values["p"], u.values["q"]);
            let ext = |f: &Formula| extension(f, &sig, &fr, u).unwrap();
            assert_eq!(ext(&neg(p.clone())), full(fr.n) & !vp);
            assert_eq!(ext(&and(p.clone(), q.clone())), vp & vq);
            assert_eq!(ext(&or(p.clone(), q.clone())), vp | vq);
            assert_eq!(ext(&app("diage", vec![p.clone()])), fr.up_closure(vp));
        });
    }
}

fn permute(t: &[usize], perm: &[usize]) -> Vec<usize> {
    t.iter().map(|&x| perm[x]).collect()
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    perms(n - 1)
        .into_iter()
        .flat_map(|p| {
            (0..n).map(move |k| {
                let mut q = p.clone();
                q.insert(k, n - 1);
                q
            })
        })
        .collect()
}

/// Frames over a single binary relation up to isomorphism, by brute force
/// over every order and every relation.
fn brute_force_count(sig: &Signature, name: &str, n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let off: Vec<(usize, usize)> = pairs.iter().copied().filter(|(a, b)| a != b).collect();
    let mut classes = BTreeSet::new();
    for om in 0u32..1 << off.len() {
        let leq: Vec<(usize, usize)> = off.iter().enumerate().filter(|(i, _)| om >> i & 1 == 1).map(|(_, &p)| p).collect();
        let Ok(probe) = Frame::from_parts(sig, n, &leq, &BTreeMap::new()) else { continue };
        // from_parts closes the order; skip inputs that are not already closed
        let closed: Vec<(usize, usize)> = off.iter().copied().filter(|&(a, b)| probe.leq(a, b)).collect();
        if closed != leq {
            continue;
        }
        for rm in 0u32..1 << pairs.len() {
            let tuples: Vec<Vec<usize>> = pairs.iter().enumerate().filter(|(i, _)| rm >> i & 1 == 1).map(|(_, &(a, b))| vec![a, b]).collect();
            let fr = Frame::from_parts(sig, n, &leq, &BTreeMap::from([(name.to_string(), tuples.clone())])).unwrap();
            if fr.validate().is_err() {
                continue;
            }
            let code = perms(n)
                .iter()
                .map(|p| {
                    let mut o: Vec<_> = leq.iter().map(|&(a, b)| (p[a], p[b])).collect();
                    o.sort();
                    let mut r: Vec<_> = tuples.iter().map(|t| permute(t, p)).collect();
                    r.sort();
                    (o, r)
                })
                .min()
                .unwrap();
            classes.insert(code);
        }
    }
    classes.len()
}

#[test]
fn enumeration_matches_brute_force() {
    for (name, rel) in [("positive-modal", "box"), ("positive-modal", "dia")] {
        let sig = Signature::builtin(name).unwrap();
        for n in 1..=3 {
            let got = enumerate_frames(&sig, n, &EnumOptions::only([rel.to_string()])).unwrap().into_iter().filter(|f| f.n == n).count();
            assert_eq!(got, brute_force_count(&sig, rel, n), "{rel} at {n} worlds");
        }
    }
    let int = Signature::builtin("intuitionistic").unwrap();
    for n in 1..=4 {
        let got = enumerate_frames(&int, n, &EnumOptions::default()).unwrap().into_iter().filter(|f| f.n == n).count();
        assert_eq!(got, [1, 2, 5, 16][n - 1]);
    }
}
