//! Exact Zarankiewicz numbers against the Kővári–Sós–Turán bound, and the
//! block-cooccurrence problem they equal.

use sparse_formations::matrix::{all_ones, kst_bound};
use sparse_formations::oracles::{oracle_ex_matrix, oracle_lambda_prime, OracleConfig};

fn main() -> sparse_formations::Result<()> {
    let config = OracleConfig::default();
    for n in 2..=5 {
        let res = oracle_ex_matrix(n, n, &all_ones(2, 2)?, &config)?;
        println!("ex({n}, R_2,2) = {:>2} <= {:.3}", res.value, kst_bound(n, n, 2, 2)?);
        println!("{}\n", res.witness.render());
    }
    for n in 2..=4 {
        for s in 1..=2 {
            let ex = oracle_ex_matrix(n, n, &all_ones(2, s + 1)?, &config)?;
            let prime = oracle_lambda_prime(n, s, n, &config)?;
            println!(
                "n={n} s={s}: ex = {:>2}, block cooccurrence optimum = {:>2}",
                ex.value, prime.value
            );
        }
    }
    Ok(())
}
