use sk_core::correspond::{all_hold_on, correspondent, frames_for, oracle_equivalence, rel, Fo, OracleVerdict};
use sk_core::semantics::is_valid;
use sk_core::{Error, Inequality, Signature};

fn input(sig: &str, text: &str) -> (Inequality, Signature) {
    let s = Signature::resolve(sig).unwrap();
    (Inequality::parse(text, &s).unwrap(), s)
}

fn fo_of(sig: &str, text: &str) -> Fo {
    let (i, s) = input(sig, text);
    correspondent(&i, &s, None).unwrap().fo
}

#[test]
fn known_shapes() {
    assert_eq!(fo_of("target:positive-modal", "box_o p <= p").to_sexpr(), "(forall j0 (R_box j0 j0))");
    // over a poset the condition keeps the order; it is reflexivity only up to compatibility
    assert_eq!(fo_of("positive-modal", "box p <= p").relations(), vec!["box".to_string()]);
    let sym = fo_of("target:positive-modal", "p <= box_o ~box_o ~p");
    assert_eq!(sym.relations(), vec!["box".to_string()]);
}

#[test]
fn oracle_agrees_on_single_relation_inputs() {
    for (sig, text) in [
        ("target:intuitionistic", "boxle p <= diage boxle p"),
        ("target:positive-modal", "box_o p <= box_o box_o p"),
        ("target:positive-modal", "~box_o ~p <= box_o ~box_o ~p"),
        ("positive-modal", "dia dia p <= dia p"),
        ("intuitionistic", "top <= (p -> q) \\/ (q -> p)"),
    ] {
        let (i, s) = input(sig, text);
        let c = correspondent(&i, &s, None).unwrap();
        let v = oracle_equivalence(&i, &s, &c.fo, 4).unwrap();
        assert!(v.verified(), "{text}: {v:?}");
    }
}

#[test]
fn oracle_agrees_on_two_relation_inputs() {
    for (sig, text) in [
        ("fischer-servi", "dia (q -> p) <= box q -> dia p"),
        ("fischer-servi", "dia q -> box p <= box (q -> p)"),
        ("positive-modal", "box q /\\ dia p <= dia (q /\\ p)"),
        ("positive-modal", "box (q \\/ p) <= dia q \\/ box p"),
        ("bi-intuitionistic", "(q >- p) -> bot <= p -> q"),
    ] {
        let (i, s) = input(sig, text);
        let c = correspondent(&i, &s, None).unwrap();
        assert!(oracle_equivalence(&i, &s, &c.fo, 3).unwrap().verified(), "{text}");
    }
}

#[test]
fn wrong_condition_is_refuted() {
    let (i, s) = input("positive-modal", "box p <= p");
    let total = Fo::forall("w", Fo::forall("v", rel("box", &["w", "v"])));
    match oracle_equivalence(&i, &s, &total, 2).unwrap() {
        OracleVerdict::Refuted { inequality_valid, .. } => assert!(inequality_valid),
        v => panic!("expected a refutation, got {v:?}"),
    }
}

#[test]
fn legacy_translation_is_rejected() {
    let (i, s) = input("target:positive-modal", "box_o dia_o boxle p <= dia_o boxle p");
    assert!(matches!(correspondent(&i, &s, None), Err(Error::NotInductive(_))));
}

#[test]
fn multi_relation_four_worlds_is_refused() {
    let (i, s) = input("positive-modal", "p <= box dia p");
    let c = correspondent(&i, &s, None).unwrap();
    assert!(matches!(oracle_equivalence(&i, &s, &c.fo, 4), Err(Error::BoundExceeded { .. })));
}

// Every intermediate state of the reduction is valid on exactly the frames
// validating the input.
#[test]
fn each_step_preserves_validity() {
    for (sig, text, worlds) in [
        ("positive-modal", "box p <= box box p", 3),
        ("positive-modal", "box q /\\ dia p <= dia (q /\\ p)", 2),
        ("intuitionistic", "top <= p \\/ (p -> bot)", 3),
        ("target:intuitionistic", "boxle p <= diage boxle p", 3),
        ("target:positive-modal", "p <= box_o ~box_o ~p", 3),
    ] {
        let (i, s) = input(sig, text);
        let c = correspondent(&i, &s, None).unwrap();
        let (frames, kind) = frames_for(&i, &s, worlds).unwrap();
        for fr in &frames {
            let valid = is_valid(&i, &s, fr, kind).unwrap();
            for step in &c.reduction.steps {
                assert_eq!(all_hold_on(&step.state, fr).unwrap(), valid, "{text}, {}, on {fr}", step.rule);
            }
        }
    }
}
