use sk_core::gentree::{find_witnesses, is_inductive, is_sahlqvist, Mode, Verdict, DEFAULT_VAR_BOUND};
use sk_core::signature::Polarity::{Dual as D, One};
use sk_core::{DependencyOrder, Inequality, Polarity, Signature, VarOrderType};

fn ineq(sig: &str, text: &str) -> (Inequality, Signature) {
    let s = Signature::resolve(sig).unwrap();
    (Inequality::parse(text, &s).unwrap(), s)
}

fn eps(pairs: &[(&str, Polarity)]) -> VarOrderType {
    VarOrderType::from_pairs(pairs)
}

fn omega(text: &str) -> DependencyOrder {
    DependencyOrder::parse(text).unwrap()
}

const FREGE: &str = "p -> (q -> r) <= (p -> q) -> (p -> r)";
const RAUSZER_1: &str = "r >- (q >- p) <= (p \\/ q) >- p";
const RAUSZER_2: &str = "(q >- p) -> bot <= p -> q";
const FS_1: &str = "dia (q -> p) <= box q -> dia p";
const FS_2: &str = "dia q -> box p <= box (q -> p)";
const DUNN_1: &str = "box q /\\ dia p <= dia (q /\\ p)";
const DUNN_2: &str = "box (q \\/ p) <= dia q \\/ box p";

#[test]
fn frege() {
    let (i, s) = ineq("intuitionistic", FREGE);
    for k in 0..8 {
        let e = VarOrderType::from_index(&["p", "q", "r"], k);
        assert!(!is_sahlqvist(&i, &e, &s).unwrap().0, "{e}");
    }
    let e = eps(&[("p", One), ("q", One), ("r", D)]);
    assert!(is_inductive(&i, &e, &omega("r<p,p<q"), &s).unwrap().0);
    // the least witnessing order only needs p below q
    assert!(is_inductive(&i, &e, &omega("p<q"), &s).unwrap().0);
    assert!(!is_inductive(&i, &e, &omega("q<p"), &s).unwrap().0);
    let rep = find_witnesses(&i, &s, Mode::Inductive, DEFAULT_VAR_BOUND).unwrap();
    assert_eq!(rep.verdict, Verdict::Inductive);
    assert!(rep.find(&e).is_some());
    let sahl = find_witnesses(&i, &s, Mode::Sahlqvist, DEFAULT_VAR_BOUND).unwrap();
    assert!(sahl.witnesses.is_empty());
}

#[test]
fn rauszer_first_is_not_inductive() {
    let (i, s) = ineq("bi-intuitionistic", RAUSZER_1);
    let rep = find_witnesses(&i, &s, Mode::Both, DEFAULT_VAR_BOUND).unwrap();
    assert_eq!(rep.verdict, Verdict::Negative);
    assert!(rep.witnesses.is_empty());
    assert!(!rep.diagnostics.is_empty());
}

#[test]
fn rauszer_second() {
    let (i, s) = ineq("bi-intuitionistic", RAUSZER_2);
    assert!(is_sahlqvist(&i, &eps(&[("p", One), ("q", D)]), &s).unwrap().0);
    let dd = eps(&[("p", D), ("q", D)]);
    assert!(!is_sahlqvist(&i, &dd, &s).unwrap().0);
    assert!(is_inductive(&i, &dd, &omega("q<p"), &s).unwrap().0);
    let ones = eps(&[("p", One), ("q", One)]);
    assert!(!is_sahlqvist(&i, &ones, &s).unwrap().0);
    assert!(is_inductive(&i, &ones, &omega("p<q"), &s).unwrap().0);
}

#[test]
fn fischer_servi() {
    for text in [FS_1, FS_2] {
        let (i, s) = ineq("fischer-servi", text);
        assert!(is_sahlqvist(&i, &eps(&[("p", D), ("q", One)]), &s).unwrap().0, "{text}");
        let dd = eps(&[("p", D), ("q", D)]);
        assert!(!is_sahlqvist(&i, &dd, &s).unwrap().0, "{text}");
        assert!(is_inductive(&i, &dd, &omega("p<q"), &s).unwrap().0, "{text}");
    }
}

#[test]
fn dunn() {
    let (i, s) = ineq("positive-modal", DUNN_1);
    assert!(is_sahlqvist(&i, &eps(&[("p", One), ("q", One)]), &s).unwrap().0);
    let mixed = eps(&[("p", One), ("q", D)]);
    assert!(!is_sahlqvist(&i, &mixed, &s).unwrap().0);
    assert!(is_inductive(&i, &mixed, &omega("p<q"), &s).unwrap().0);

    let (i, s) = ineq("positive-modal", DUNN_2);
    assert!(is_sahlqvist(&i, &eps(&[("p", D), ("q", D)]), &s).unwrap().0);
    let mixed = eps(&[("p", D), ("q", One)]);
    assert!(!is_sahlqvist(&i, &mixed, &s).unwrap().0);
    assert!(is_inductive(&i, &mixed, &omega("p<q"), &s).unwrap().0);
}

#[test]
fn trivial_inequality() {
    let (i, s) = ineq("intuitionistic", "p <= p");
    let rep = find_witnesses(&i, &s, Mode::Sahlqvist, DEFAULT_VAR_BOUND).unwrap();
    assert!(rep.find(&eps(&[("p", One)])).is_some());
}

#[test]
fn legacy_translation_is_not_inductive() {
    let (i, s) = ineq("target:positive-modal", "box_o dia_o boxle p <= dia_o boxle p");
    let rep = find_witnesses(&i, &s, Mode::Both, DEFAULT_VAR_BOUND).unwrap();
    assert_eq!(rep.verdict, Verdict::Negative);
}

#[test]
fn bound_is_enforced() {
    let (i, s) = ineq("intuitionistic", "p /\\ q /\\ r <= p");
    assert!(find_witnesses(&i, &s, Mode::Both, 2).is_err());
}
