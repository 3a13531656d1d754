//! Parametric Gödel–McKinsey–Tarski translation into the classical target language.

use crate::error::Error;
use crate::formula::{and, app, neg, or, Formula, Inequality, VarOrderType};
use crate::signature::{companion_name, Family, Polarity, Signature, BOX_LEQ, COIMP, DIA_GEQ, IMP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Wrap each companion application in the S4 modality of its family.
    /// Without it the output is the un-prefixed variant, which is only sound
    /// for mix-style semantics.
    pub s4_prefix: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { s4_prefix: true }
    }
}

pub fn box_le(f: Formula) -> Formula {
    app(BOX_LEQ, vec![f])
}

pub fn dia_ge(f: Formula) -> Formula {
    app(DIA_GEQ, vec![f])
}

/// Which arguments of an application get negated.
pub fn polarity_vector(coord_types: &[Polarity]) -> Vec<bool> {
    coord_types.iter().map(|p| p.is_dual()).collect()
}

pub fn tau_eps(f: &Formula, eps: &VarOrderType, sig: &Signature, opts: Options) -> Result<Formula, Error> {
    if sig.is_bae() {
        return Err(Error::SignatureMismatch(format!("`{}` is already classical", sig.name)));
    }
    tr(f, eps, sig, opts)
}

fn tr(f: &Formula, eps: &VarOrderType, sig: &Signature, opts: Options) -> Result<Formula, Error> {
    Ok(match f {
        Formula::Var(p) => match eps.of(p)? {
            Polarity::One => box_le(f.clone()),
            Polarity::Dual => dia_ge(f.clone()),
        },
        Formula::Bot => Formula::Bot,
        Formula::Top => Formula::Top,
        Formula::And(a, b) => and(tr(a, eps, sig, opts)?, tr(b, eps, sig, opts)?),
        Formula::Or(a, b) => or(tr(a, eps, sig, opts)?, tr(b, eps, sig, opts)?),
        Formula::Neg(_) => {
            return Err(Error::SignatureMismatch("negation in a DLE formula".into()));
        }
        Formula::App(name, args) => {
            let c = sig.get(name).ok_or_else(|| Error::UnknownConnective(name.clone()))?;
            let targs = args
                .iter()
                .map(|a| tr(a, eps, sig, opts))
                .collect::<Result<Vec<_>, _>>()?;
            if c.is_order_derived() {
                let [a, b] = <[Formula; 2]>::try_from(targs).expect("binary");
                return Ok(if name == IMP {
                    box_le(or(neg(a), b))
                } else {
                    debug_assert_eq!(name, COIMP);
                    dia_ge(and(neg(a), b))
                });
            }
            let wrapped = targs
                .into_iter()
                .zip(polarity_vector(&c.coord_types.0))
                .map(|(a, d)| if d { neg(a) } else { a })
                .collect();
            let core = app(&companion_name(name), wrapped);
            match (opts.s4_prefix, c.family) {
                (false, _) => core,
                (true, Family::F) => dia_ge(core),
                (true, Family::G) => box_le(core),
            }
        }
    })
}

pub fn tau_eps_ineq(ineq: &Inequality, eps: &VarOrderType, sig: &Signature, opts: Options) -> Result<Inequality, Error> {
    Ok(Inequality::new(
        tau_eps(&ineq.lhs, eps, sig, opts)?,
        tau_eps(&ineq.rhs, eps, sig, opts)?,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Tau,
    Sigma,
    TauPrime,
    SigmaPrime,
}

impl Variant {
    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "tau" => Some(Variant::Tau),
            "sigma" => Some(Variant::Sigma),
            "tau_prime" | "tau'" => Some(Variant::TauPrime),
            "sigma_prime" | "sigma'" => Some(Variant::SigmaPrime),
            _ => None,
        }
    }

    pub fn signature(self) -> Signature {
        let name = match self {
            Variant::Tau => "intuitionistic",
            Variant::Sigma => "co-intuitionistic",
            Variant::TauPrime | Variant::SigmaPrime => "bi-intuitionistic",
        };
        Signature::builtin(name).expect("builtin")
    }

    pub fn polarity(self) -> Polarity {
        match self {
            Variant::Tau | Variant::TauPrime => Polarity::One,
            Variant::Sigma | Variant::SigmaPrime => Polarity::Dual,
        }
    }
}

/// The classical, non-parametric translations.
pub fn gmt(f: &Formula, variant: Variant) -> Result<Formula, Error> {
    let sig = variant.signature();
    f.check(&sig).map_err(|e| Error::SignatureMismatch(format!("{e} (expected `{}`)", sig.name)))?;
    let eps = VarOrderType::uniform(&f.variables(), variant.polarity());
    tau_eps(f, &eps, &sig, Options::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::var;

    #[test]
    fn implication_clause() {
        let sig = Signature::builtin("intuitionistic").unwrap();
        let f = Formula::parse("p -> q", &sig).unwrap();
        let eps = VarOrderType::uniform(&["p", "q"], Polarity::One);
        let t = tau_eps(&f, &eps, &sig, Options::default()).unwrap();
        assert_eq!(t, box_le(or(neg(box_le(var("p"))), box_le(var("q")))));
    }

    #[test]
    fn coimplication_clause() {
        let sig = Signature::builtin("co-intuitionistic").unwrap();
        let f = Formula::parse("p >- q", &sig).unwrap();
        let eps = VarOrderType::uniform(&["p", "q"], Polarity::Dual);
        let t = tau_eps(&f, &eps, &sig, Options::default()).unwrap();
        assert_eq!(t, dia_ge(and(neg(dia_ge(var("p"))), dia_ge(var("q")))));
    }

    #[test]
    fn fischer_servi_unfolding() {
        let sig = Signature::builtin("fischer-servi").unwrap();
        let ineq = Inequality::parse("box dia p <= dia p", &sig).unwrap();
        let eps = VarOrderType::uniform(&["p"], Polarity::One);
        let t = tau_eps_ineq(&ineq, &eps, &sig, Options::default()).unwrap();
        let inner = dia_ge(app("dia_o", vec![box_le(var("p"))]));
        assert_eq!(t.lhs, box_le(app("box_o", vec![inner.clone()])));
        assert_eq!(t.rhs, inner);
        let target = sig.target().unwrap();
        assert_eq!(Inequality::parse(&t.to_string(), &target).unwrap(), t);
    }

    #[test]
    fn dual_coordinates_are_negated() {
        let sig = Signature::builtin("dml").unwrap();
        let f = Formula::parse("lhd p", &sig).unwrap();
        let eps = VarOrderType::uniform(&["p"], Polarity::One);
        let t = tau_eps(&f, &eps, &sig, Options::default()).unwrap();
        assert_eq!(t, dia_ge(app("lhd_o", vec![neg(box_le(var("p")))])));
        let bare = tau_eps(&f, &eps, &sig, Options { s4_prefix: false }).unwrap();
        assert_eq!(bare, app("lhd_o", vec![neg(box_le(var("p")))]));
    }

    #[test]
    fn classical_variants() {
        let int = Signature::builtin("intuitionistic").unwrap();
        assert_eq!(gmt(&var("p"), Variant::Tau).unwrap(), box_le(var("p")));
        assert_eq!(gmt(&var("p"), Variant::Sigma).unwrap(), dia_ge(var("p")));
        assert_eq!(gmt(&Formula::Bot, Variant::Tau).unwrap(), Formula::Bot);
        let bi = Signature::builtin("bi-intuitionistic").unwrap();
        let f = Formula::parse("p >- q", &bi).unwrap();
        assert_eq!(
            gmt(&f, Variant::TauPrime).unwrap(),
            dia_ge(and(neg(box_le(var("p"))), box_le(var("q"))))
        );
        let g = Formula::parse("p -> q", &int).unwrap();
        assert!(matches!(gmt(&g, Variant::Sigma), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn uncovered_variable() {
        let sig = Signature::builtin("intuitionistic").unwrap();
        let r = tau_eps(&var("p"), &VarOrderType::default(), &sig, Options::default());
        assert!(matches!(r, Err(Error::UncoveredVariable(_))));
    }
}
