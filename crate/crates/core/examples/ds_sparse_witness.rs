//! A long `j`-sparse Davenport-Schinzel sequence when the order is large
//! compared with the alphabet.

use sparse_formations::checkers::{is_ds, is_sparse, max_alternation};
use sparse_formations::constructions::build_ds_sparse_witness;

fn main() -> sparse_formations::Result<()> {
    for (n, s, j) in [(48, 24, 2), (48, 24, 3), (96, 48, 2)] {
        let w = build_ds_sparse_witness(n, s, j)?;
        println!(
            "n={n} s={s} j={j}: length {}, alternation {} (limit {}), ds {}, {j}-sparse {}",
            w.len(),
            max_alternation(&w),
            s + 1,
            is_ds(&w, s),
            is_sparse(&w, j)
        );
    }
    println!("n=4 s=4 j=2: {}", build_ds_sparse_witness(4, 4, 2).unwrap_err());
    Ok(())
}
