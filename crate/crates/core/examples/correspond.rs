//! First-order correspondents with their reduction traces, each checked
//! against all frames up to three worlds.
//!
//!     cargo run --example correspond

use sk_core::correspond::{correspondent, oracle_equivalence};
use sk_core::{Inequality, Signature};

fn main() -> Result<(), sk_core::Error> {
    for (sig, text) in [
        ("target:intuitionistic", "boxle p <= diage boxle p"),
        ("positive-modal", "box p <= box box p"),
        ("fischer-servi", "dia q -> box p <= box (q -> p)"),
    ] {
        let sig = Signature::resolve(sig)?;
        let ineq = Inequality::parse(text, &sig)?;
        let c = correspondent(&ineq, &sig, None)?;
        println!("== {ineq}  (eps {})", c.eps);
        for step in &c.reduction.steps {
            print!("{step}");
        }
        println!("{}", c.fo);
        println!("oracle: {:?}\n", oracle_equivalence(&ineq, &sig, &c.fo, 3)?);
    }
    Ok(())
}
