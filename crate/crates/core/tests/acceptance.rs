//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits non-zero on any FAIL.

mod common;

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;
use sk_core::algebra::{canonical_extension, check_frame, complex_algebra, mix_counterexample};
use sk_core::correspond::{first_approximation, alba_reduce};
use sk_core::corpus;
use sk_core::formula::app;
use sk_core::gentree::{find_witnesses, is_inductive, is_sahlqvist, Mode, Verdict, DEFAULT_VAR_BOUND};
use sk_core::correspond::frames_for;
use sk_core::semantics::{
    candidates, enumerate_frames, extension, for_each_assignment, lift_valuation, transfer_check, EnumOptions, Frame,
    Valuation, ValuationKind,
};
use sk_core::translate::{tau_eps, Options};
use sk_core::{DependencyOrder, Formula, Inequality, Signature, VarOrderType};

struct Outcome {
    pass: bool,
    detail: String,
}

fn ineq(sig: &str, text: &str) -> (Inequality, Signature) {
    let s = Signature::resolve(sig).unwrap();
    (Inequality::parse(text, &s).unwrap(), s)
}

fn eps(text: &str) -> VarOrderType {
    VarOrderType::parse(text).unwrap()
}

fn omega(text: &str) -> DependencyOrder {
    DependencyOrder::parse(text).unwrap()
}

fn golden_classification() -> Outcome {
    let mut bad = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            bad.push(what.to_string());
        }
    };
    let sahl = |i: &Inequality, s: &Signature, e: &str| is_sahlqvist(i, &eps(e), s).unwrap().0;
    let ind = |i: &Inequality, s: &Signature, e: &str, o: &str| is_inductive(i, &eps(e), &omega(o), s).unwrap().0;

    let (i, s) = ineq("intuitionistic", "p -> (q -> r) <= (p -> q) -> (p -> r)");
    let never = (0..8).all(|k| !is_sahlqvist(&i, &VarOrderType::from_index(&["p", "q", "r"], k), &s).unwrap().0);
    expect(never, "Frege is Sahlqvist for some order-type");
    expect(ind(&i, &s, "p=1,q=1,r=d", "r<p,p<q"), "Frege inductive at (1,1,d), r<p<q");

    let (i, s) = ineq("bi-intuitionistic", "r >- (q >- p) <= (p \\/ q) >- p");
    expect(find_witnesses(&i, &s, Mode::Both, DEFAULT_VAR_BOUND).unwrap().verdict == Verdict::Negative, "Rauszer first negative");

    let (i, s) = ineq("bi-intuitionistic", "(q >- p) -> bot <= p -> q");
    expect(sahl(&i, &s, "p=1,q=d"), "Rauszer second Sahlqvist at (1,d)");
    expect(!sahl(&i, &s, "p=d,q=d") && ind(&i, &s, "p=d,q=d", "q<p"), "Rauszer second inductive only at (d,d), q<p");
    expect(!sahl(&i, &s, "p=1,q=1") && ind(&i, &s, "p=1,q=1", "p<q"), "Rauszer second inductive only at (1,1), p<q");

    for text in ["dia (q -> p) <= box q -> dia p", "dia q -> box p <= box (q -> p)"] {
        let (i, s) = ineq("fischer-servi", text);
        expect(sahl(&i, &s, "p=d,q=1"), &format!("{text} Sahlqvist at p=d,q=1"));
        expect(!sahl(&i, &s, "p=d,q=d") && ind(&i, &s, "p=d,q=d", "p<q"), &format!("{text} inductive only at d,d"));
    }

    let (i, s) = ineq("positive-modal", "box q /\\ dia p <= dia (q /\\ p)");
    expect(sahl(&i, &s, "p=1,q=1"), "Dunn left Sahlqvist at 1,1");
    expect(!sahl(&i, &s, "p=1,q=d") && ind(&i, &s, "p=1,q=d", "p<q"), "Dunn left inductive only at p=1,q=d");
    let (i, s) = ineq("positive-modal", "box (q \\/ p) <= dia q \\/ box p");
    expect(sahl(&i, &s, "p=d,q=d"), "Dunn right Sahlqvist at d,d");
    expect(!sahl(&i, &s, "p=d,q=1") && ind(&i, &s, "p=d,q=1", "p<q"), "Dunn right inductive only at p=d,q=1");

    Outcome { pass: bad.is_empty(), detail: if bad.is_empty() { "7 inequalities as stated".into() } else { bad.join("; ") } }
}

fn legacy_non_example() -> Outcome {
    let (i, s) = ineq("target:positive-modal", "box_o dia_o boxle p <= dia_o boxle p");
    let rep = find_witnesses(&i, &s, Mode::Both, DEFAULT_VAR_BOUND).unwrap();
    Outcome {
        pass: rep.verdict == Verdict::Negative,
        detail: format!("verdict {:?} over {} order-types", rep.verdict, 1usize << rep.variables.len()),
    }
}

fn shape_preservation() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20_26);
    let mut violations = Vec::new();
    let mut inductive = 0;
    for k in 0..1000 {
        let sig = Signature::builtin(if k % 2 == 0 { "bi-intuitionistic" } else { "dml" }).unwrap();
        let i = common::inequality(&mut rng, &sig, &["p", "q", "r"], 4);
        if find_witnesses(&i, &sig, Mode::Both, DEFAULT_VAR_BOUND).unwrap().verdict != Verdict::Negative {
            inductive += 1;
        }
        violations.extend(common::shape_violations(&i, &sig));
    }
    Outcome {
        pass: violations.is_empty(),
        detail: format!(
            "1000 inequalities ({inductive} inductive for some order-type), {} violations{}",
            violations.len(),
            violations.first().map(|v| format!(": {v}")).unwrap_or_default()
        ),
    }
}

const TRANSFER_POOL: [(&str, &str); 25] = [
    ("intuitionistic", "top <= p \\/ (p -> bot)"),
    ("intuitionistic", "top <= (p -> bot) \\/ ((p -> bot) -> bot)"),
    ("intuitionistic", "top <= (p -> q) \\/ (q -> p)"),
    ("intuitionistic", "p -> (q -> r) <= (p -> q) -> (p -> r)"),
    ("intuitionistic", "(p -> q) -> p <= p"),
    ("intuitionistic", "(p -> bot) -> bot <= p"),
    ("intuitionistic", "p <= q -> p"),
    ("intuitionistic", "p /\\ (p -> q) <= q"),
    ("intuitionistic", "top <= ((p -> q) -> p) -> p"),
    ("intuitionistic", "p -> q <= (q -> bot) -> (p -> bot)"),
    ("intuitionistic", "top <= p \\/ (p -> q \\/ (q -> bot))"),
    ("intuitionistic", "(p -> q) -> q <= (q -> p) -> p"),
    ("positive-modal", "box p <= p"),
    ("positive-modal", "p <= dia p"),
    ("positive-modal", "dia dia p <= dia p"),
    ("positive-modal", "box p <= box box p"),
    ("positive-modal", "box q /\\ dia p <= dia (q /\\ p)"),
    ("positive-modal", "box (q \\/ p) <= dia q \\/ box p"),
    ("positive-modal", "dia p <= box p"),
    ("positive-modal", "box p <= dia p"),
    ("positive-modal", "p <= box dia p"),
    ("positive-modal", "dia box p <= p"),
    ("positive-modal", "dia box p <= box dia p"),
    ("positive-modal", "box box p <= box p"),
    ("positive-modal", "dia (p \\/ q) <= dia p \\/ box q"),
];

fn validity_transfer() -> Outcome {
    let mut pairs = 0;
    let mut disagreements = Vec::new();
    for (sig, text) in TRANSFER_POOL {
        let (i, s) = ineq(sig, text);
        let ws = find_witnesses(&i, &s, Mode::Both, DEFAULT_VAR_BOUND).unwrap().witnesses;
        let (frames, _) = frames_for(&i, &s, 3).unwrap();
        for w in &ws {
            for fr in &frames {
                pairs += 1;
                if !transfer_check(&i, &w.eps, &s, fr).unwrap().agree {
                    disagreements.push(format!("{text} at {} on {fr}", w.eps));
                }
            }
        }
    }
    Outcome {
        pass: disagreements.is_empty(),
        detail: format!("25 inequalities, {pairs} (order-type, frame) pairs, {} disagreements", disagreements.len()),
    }
}

fn all_valuations(fr: &Frame, kind: ValuationKind, mut f: impl FnMut(&Valuation)) {
    let cands = candidates(fr, kind);
    for_each_assignment(2, &cands, |vals| {
        let v = Valuation { kind, values: [("p".to_string(), vals[0]), ("q".to_string(), vals[1])].into() };
        f(&v);
        true
    });
}

fn semantic_identities() -> Outcome {
    let int = Signature::builtin("intuitionistic").unwrap();
    let target = int.target().unwrap();
    let mut rng = StdRng::seed_from_u64(5);
    let s4: Vec<Formula> = (0..40).map(|_| common::formula(&mut rng, &target, &["p", "q"], 3)).collect();
    let fs: Vec<Formula> = (0..40).map(|_| common::formula(&mut rng, &int, &["p", "q"], 3)).collect();
    let all_eps: Vec<VarOrderType> = (0..4).map(|k| VarOrderType::from_index(&["p", "q"], k)).collect();
    let mut checks = 0usize;
    let mut bad = Vec::new();
    for fr in enumerate_frames(&int, 3, &EnumOptions::default()).unwrap() {
        let boxed = |s: u64| fr.complement(fr.down_closure(fr.complement(s)));
        all_valuations(&fr, ValuationKind::Arbitrary, |u| {
            for a in &s4 {
                checks += 1;
                let inner = extension(a, &target, &fr, u).unwrap();
                if extension(&app("boxle", vec![a.clone()]), &target, &fr, u).unwrap() != boxed(inner) {
                    bad.push(format!("box identity: {a} on {fr}"));
                }
            }
        });
        all_valuations(&fr, ValuationKind::Persistent, |v| {
            for (a, b) in fs.iter().zip(fs.iter().skip(1)) {
                checks += 1;
                let (ea, eb) = (extension(a, &int, &fr, v).unwrap(), extension(b, &int, &fr, v).unwrap());
                if extension(&app("->", vec![a.clone(), b.clone()]), &int, &fr, v).unwrap() != boxed(fr.complement(ea) | eb) {
                    bad.push(format!("implication identity: {a}, {b} on {fr}"));
                }
            }
        });
        for e in &all_eps {
            let ts: Vec<Formula> = fs.iter().map(|f| tau_eps(f, e, &int, Options::default()).unwrap()).collect();
            all_valuations(&fr, ValuationKind::Persistent, |v| {
                let as_arbitrary = Valuation { kind: ValuationKind::Arbitrary, values: v.values.clone() };
                for (f, t) in fs.iter().zip(&ts) {
                    checks += 1;
                    if extension(f, &int, &fr, v).unwrap() != extension(t, &target, &fr, &as_arbitrary).unwrap() {
                        bad.push(format!("(a) {f} at {e} on {fr}"));
                    }
                }
            });
            all_valuations(&fr, ValuationKind::Arbitrary, |u| {
                let lifted = lift_valuation(u, e, &fr).unwrap();
                for (f, t) in fs.iter().zip(&ts) {
                    checks += 1;
                    if extension(t, &target, &fr, u).unwrap() != extension(f, &int, &fr, &lifted).unwrap() {
                        bad.push(format!("(b) {f} at {e} on {fr}"));
                    }
                }
            });
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{checks} pointwise checks, {} violations{}", bad.len(), bad.first().map(|b| format!(": {b}")).unwrap_or_default()),
    }
}

fn single(family: &str, name: &str, ot: &str) -> Signature {
    let other = if family == "F" { "G" } else { "F" };
    Signature::load(&format!(
        r#"{{"name":"{name}-only","{family}":[{{"name":"{name}","arity":1,"ot":["{ot}"]}}],"{other}":[]}}"#
    ))
    .unwrap()
}

fn algebra_suite() -> Outcome {
    let mut sigs: Vec<(Signature, usize)> = ["intuitionistic", "co-intuitionistic", "bi-intuitionistic"]
        .iter()
        .map(|n| (Signature::builtin(n).unwrap(), 4))
        .collect();
    for (f, n, o) in [("G", "box", "1"), ("F", "dia", "1"), ("F", "lhd", "d"), ("G", "rhd", "d")] {
        sigs.push((single(f, n, o), 4));
    }
    for n in ["positive-modal", "fischer-servi", "wolter-bimodal", "dml"] {
        sigs.push((Signature::builtin(n).unwrap(), 2));
    }
    let (mut frames, mut checks, mut failures) = (0, 0, Vec::new());
    for (sig, worlds) in &sigs {
        for fr in enumerate_frames(sig, *worlds, &EnumOptions::default()).unwrap() {
            frames += 1;
            let rep = check_frame(&fr, sig).unwrap();
            checks += rep.checked;
            failures.extend(rep.failures.into_iter().map(|m| format!("{}: {m}", sig.name)));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "{frames} frames over {} signatures (single relations to 4 worlds, several to 2), {checks} checks, {} failures",
            sigs.len(),
            failures.len()
        ),
    }
}

fn mix() -> Outcome {
    let r = mix_counterexample();
    let exact = r.box_le_a == "b" && r.box_le_d == "c" && r.box_le_x == "⊥" && r.diagram_commutes && r.mix_lhs == "b" && r.mix_rhs == "a";
    Outcome {
        pass: r.ok && exact,
        detail: format!(
            "boxle(a)={}, boxle(d)={}, boxle(x)={}, diagram commutes: {}, mix {} vs {}",
            r.box_le_a, r.box_le_d, r.box_le_x, r.diagram_commutes, r.mix_lhs, r.mix_rhs
        ),
    }
}

fn correspondence_oracle() -> Outcome {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/regression.txt")).unwrap();
    let entries = corpus::parse(&text).unwrap();
    let at_four = entries.iter().filter(|e| e.checks.iter().any(|c| matches!(c, corpus::Check::Correspond { worlds: 4, .. }))).count();
    let required = [
        ("target:intuitionistic", "boxle p <= diage boxle p"),
        ("target:positive-modal", "box_o p <= p"),
        ("target:positive-modal", "p <= box_o ~box_o ~p"),
    ];
    let has_required = required.iter().all(|(s, i)| entries.iter().any(|e| e.sig == *s && e.inequality == *i));
    let rep = corpus::run(&entries);
    Outcome {
        pass: rep.ok() && at_four >= 10 && has_required,
        detail: format!("{at_four} correspondents checked at 4 worlds; {} checks passed, {} failed", rep.passed, rep.failed),
    }
}

fn canonicity_stand_ins() -> Outcome {
    let (i, s) = ineq("target:intuitionistic", "boxle p <= diage boxle p");
    let q = first_approximation(&i, &s).unwrap();
    let red = alba_reduce(&q, &eps("p=1"), &DependencyOrder::empty()).unwrap();
    let step = |k: usize| red.steps[k].state.iter().map(|q| q.to_string()).collect::<Vec<_>>().join("; ");
    let run_matches = step(0) == "[j0 <= boxle(p) & diage(boxle(p)) <= m0] => j0 <= m0"
        && step(2) == "[diage(j0) <= p & diage(boxle(p)) <= m0] => j0 <= m0"
        && step(3) == "[diage(boxle(diage(j0))) <= m0] => j0 <= m0";
    let int = Signature::builtin("positive-modal").unwrap();
    let identity = enumerate_frames(&int, 2, &EnumOptions::default()).unwrap().iter().all(|fr| {
        let a = complex_algebra(fr, &int).unwrap();
        canonical_extension(&a) == a
    });
    Outcome {
        pass: run_matches && identity,
        detail: format!(
            "canonicity transfer itself not reproduced (needs infinite algebras); stand-ins: ALBA run on boxle p <= diage boxle p matches ({run_matches}), finite canonical extension is the identity ({identity})"
        ),
    }
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("classification golden suite", Duration::from_secs(1), golden_classification),
        ("legacy translation non-example", Duration::from_secs(1), legacy_non_example),
        ("shape preservation, 1000 random inequalities", Duration::from_secs(60), shape_preservation),
        ("validity transfer, frames up to 3 worlds", Duration::from_secs(300), validity_transfer),
        ("semantic identities", Duration::MAX, semantic_identities),
        ("algebra suite", Duration::MAX, algebra_suite),
        ("mix counterexample", Duration::MAX, mix),
        ("correspondence oracle at 4 worlds", Duration::from_secs(600), correspondence_oracle),
        ("canonicity transfer", Duration::MAX, canonicity_stand_ins),
    ];
    let mut failed = 0;
    for (k, (name, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        let took = t.elapsed();
        let pass = o.pass && took <= *limit;
        if !pass {
            failed += 1;
        }
        let bound = if *limit == Duration::MAX { String::new() } else { format!(", limit {}s", limit.as_secs()) };
        println!(
            "criterion {}: {} {name}: {} [{:.2}s{bound}]",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
