//! Longest sparse sequences avoiding a fixed pattern.
//!
//! Sparsity is the pattern's letter count (at least 2). A value marked `+`
//! hit the search's length cap and is only a lower bound.

use sparse_formations::oracles::{oracle_pattern, OracleConfig};
use sparse_formations::report::parse_pattern;

fn main() -> sparse_formations::Result<()> {
    let config = OracleConfig::default();
    for text in ["aa", "aba", "abab", "abba", "abcab", "(ab)^3"] {
        let u = parse_pattern(text)?;
        let values: Vec<String> = (1..=4)
            .map(|n| {
                oracle_pattern(&u, u.letter_count().max(2), n, &config)
                    .map(|r| format!("{}{}", r.value, if r.exhausted { "" } else { "+" }))
            })
            .collect::<Result<_, _>>()?;
        println!("{text:>7}  n=1..4: {}", values.join(" "));
    }
    Ok(())
}
