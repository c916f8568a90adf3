//! Parse a sequence and measure it with the checkers.
//!
//! `cargo run --example check_sequence -- "a b a c a c b c"`

use sparse_formations::checkers::{is_ds, is_sparse, max_alternation, max_formation_length};
use sparse_formations::seq::parse_sequence;

fn main() -> sparse_formations::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "a b a c a c b c".to_string());
    let seq = parse_sequence(&text)?.sequence();
    println!("sequence      {}", seq.render());
    println!("letters       {}", seq.alphabet_size());
    println!("alternation   {}", max_alternation(&seq));
    for s in 1..=4 {
        println!("DS order {s}    {}", is_ds(&seq, s));
    }
    for j in 2..=3 {
        println!("{j}-sparse      {}", is_sparse(&seq, j));
    }
    println!("longest (2,·)-formation  {}", max_formation_length(&seq, 2)?);
    Ok(())
}
