//! Run a corpus file; defaults to the worked examples.
//!
//!     cargo run --release --example corpus [-- FILE]

use sk_core::corpus;

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/paper.txt").into());
    let text = std::fs::read_to_string(&path).expect("readable corpus");
    let entries = corpus::parse(&text).expect("well-formed corpus");
    let rep = corpus::run(&entries);
    println!("{rep}");
    std::process::exit(if rep.ok() { 0 } else { 1 });
}
