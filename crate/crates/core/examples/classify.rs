//! Classify the Frege inequality and print every witnessing order-type.
//!
//!     cargo run --example classify

use sk_core::gentree::{find_witnesses, Mode, DEFAULT_VAR_BOUND};
use sk_core::{Inequality, Signature};

fn main() -> Result<(), sk_core::Error> {
    let sig = Signature::builtin("intuitionistic")?;
    let frege = Inequality::parse("p -> (q -> r) <= (p -> q) -> (p -> r)", &sig)?;
    let rep = find_witnesses(&frege, &sig, Mode::Both, DEFAULT_VAR_BOUND)?;
    print!("{rep}");

    let sig = Signature::builtin("bi-intuitionistic")?;
    let rauszer = Inequality::parse("r >- (q >- p) <= (p \\/ q) >- p", &sig)?;
    let rep = find_witnesses(&rauszer, &sig, Mode::Both, DEFAULT_VAR_BOUND)?;
    println!("{}: {:?}, {} diagnostics", rep.inequality, rep.verdict, rep.diagnostics.len());
    Ok(())
}
