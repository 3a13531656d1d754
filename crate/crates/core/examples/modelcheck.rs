//! Check an inequality on a frame from JSON, then compare validity of the
//! inequality and of its translation on every frame up to three worlds.
//!
//!     cargo run --example modelcheck

use sk_core::correspond::frames_for;
use sk_core::gentree::{find_witnesses, Mode, DEFAULT_VAR_BOUND};
use sk_core::semantics::{counterexample, transfer_check, Frame, ValuationKind};
use sk_core::{Inequality, Signature};

fn main() -> Result<(), sk_core::Error> {
    let sig = Signature::builtin("intuitionistic")?;
    let lem = Inequality::parse("top <= p \\/ (p -> bot)", &sig)?;
    let chain = Frame::from_json(include_str!("frames/chain2.json"), &sig)?;
    match counterexample(&lem, &sig, &chain, ValuationKind::Persistent)? {
        Some(v) => println!("{lem} fails on {chain} at {v}"),
        None => println!("{lem} holds on {chain}"),
    }

    let dummett = Inequality::parse("top <= (p -> q) \\/ (q -> p)", &sig)?;
    let (frames, _) = frames_for(&dummett, &sig, 3)?;
    for w in find_witnesses(&dummett, &sig, Mode::Both, DEFAULT_VAR_BOUND)?.witnesses {
        let mut valid = 0;
        for fr in &frames {
            let r = transfer_check(&dummett, &w.eps, &sig, fr)?;
            assert!(r.agree, "disagreement on {fr}");
            valid += r.dle_valid as usize;
        }
        println!("{dummett} at {}: valid on {valid} of {} frames, translation agrees", w.eps, frames.len());
    }
    Ok(())
}
