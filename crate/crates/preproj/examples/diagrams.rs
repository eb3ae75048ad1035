//! Print the radical layers of Π_w e_u for a word on one of the built-in
//! quivers, e.g. `cargo run --example diagrams -- a3 1 2 3 1 2 1`.

use preproj::context::WordContext;
use preproj::quiver::{examples, Word};
use preproj::report::diagrams;
use preproj::Rat;

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "a3".into());
    let q = examples::by_name(&name).expect("unknown quiver name");
    let letters: Vec<u32> = args.map(|a| a.parse().expect("letter")).collect();
    let w = if letters.is_empty() { Word(vec![1, 2, 3, 1, 2, 1]) } else { Word(letters) };
    let ctx = WordContext::<Rat>::new(&q, &w).expect("reduced word");
    println!("{}", diagrams(&ctx.piw, &ctx.quiver, "Pi_w"));
}
