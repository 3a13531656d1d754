//! The mix counterexample, then the companion checks on a three-world fork.
//!
//!     cargo run --example algebra

use sk_core::algebra::{boolean_companion, check_frame, mix_counterexample};
use sk_core::semantics::Frame;
use sk_core::Signature;

fn main() -> Result<(), sk_core::Error> {
    println!("{}\n", mix_counterexample());

    let sig = Signature::builtin("intuitionistic")?;
    let fork = Frame::from_json(include_str!("frames/fork3.json"), &sig)?;
    let (a, b, _) = boolean_companion(&fork, &sig)?;
    println!("complex algebra: {} elements; Boolean companion: {} elements", a.size(), b.size());
    println!("{}", check_frame(&fork, &sig)?);
    Ok(())
}
