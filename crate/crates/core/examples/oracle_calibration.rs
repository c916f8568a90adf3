//! Exact Davenport-Schinzel values from exhaustive search.

use sparse_formations::oracles::{ds_ceiling, oracle_lambda, OracleConfig};

fn main() -> sparse_formations::Result<()> {
    let config = OracleConfig {
        threads: 4,
        ..OracleConfig::default()
    };
    println!(" n  s  j  value  ceiling  nodes  witness");
    for n in 2..=4 {
        for s in 1..=3 {
            for j in 2..=3 {
                let res = oracle_lambda(n, s, j, &config)?;
                println!(
                    "{n:>2} {s:>2} {j:>2} {:>6} {:>8} {:>6}  {}",
                    res.value,
                    ds_ceiling(n, s),
                    res.nodes_explored,
                    res.witness.render()
                );
            }
        }
    }
    Ok(())
}
