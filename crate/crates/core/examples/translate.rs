//! The parametric translation at every order-type of a two-variable inequality.
//!
//!     cargo run --example translate

use sk_core::translate::{gmt, tau_eps_ineq, Options, Variant};
use sk_core::{Formula, Inequality, Signature, VarOrderType};

fn main() -> Result<(), sk_core::Error> {
    let sig = Signature::builtin("fischer-servi")?;
    let fs = Inequality::parse("dia (q -> p) <= box q -> dia p", &sig)?;
    let vars = fs.variables();
    for k in 0..1 << vars.len() {
        let eps = VarOrderType::from_index(&vars, k);
        let t = tau_eps_ineq(&fs, &eps, &sig, Options::default())?;
        println!("{}  {t}", eps.render(&vars));
    }
    let bare = tau_eps_ineq(&fs, &VarOrderType::parse("p=d,q=1")?, &sig, Options { s4_prefix: false })?;
    println!("without prefixes: {bare}");

    let int = Signature::builtin("intuitionistic")?;
    let f = Formula::parse("(p -> q) -> p", &int)?;
    println!("classical GMT of {f}: {}", gmt(&f, Variant::Tau)?);
    Ok(())
}
