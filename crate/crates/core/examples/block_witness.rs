//! Reversed-block witnesses and their incidence matrices.

use sparse_formations::checkers::is_ds;
use sparse_formations::constructions::build_block_witness;
use sparse_formations::matrix::{all_ones, blocked_to_matrix, matrix_contains, max_pair_cooccurrence};

fn main() -> sparse_formations::Result<()> {
    for n in 3..=6 {
        for s in [2, n] {
            let b = build_block_witness(n, s);
            println!(
                "n={n} s={s}: length {:>2} (>= {:>2}), ds {}  {}",
                b.len(),
                n * s - n,
                is_ds(&b.flatten(), s),
                b.render()
            );
        }
    }

    let b = build_block_witness(4, 3);
    let m = blocked_to_matrix(&b)?;
    println!("\nincidence matrix of {}:\n{}", b.render(), m.render());
    let s = max_pair_cooccurrence(&b);
    println!(
        "pairs share at most {s} blocks; contains R_2,{}: {}",
        s + 1,
        matrix_contains(&m, &all_ones(2, s + 1)?)
    );
    Ok(())
}
