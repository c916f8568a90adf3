//! The base troop sequence `T_r(x, t)` and the formations it avoids.

use sparse_formations::checkers::max_formation_length;
use sparse_formations::constructions::build_base;

fn main() -> sparse_formations::Result<()> {
    for (r, x, t) in [(2, 3, 2), (2, 5, 3), (3, 5, 2)] {
        let (seq, trace) = build_base(r, x, t)?;
        println!(
            "T_{r}({x}, {t}): {} tokens on {} letters",
            seq.len(),
            trace.letter_count()
        );
        println!(
            "  longest ({r},·)-formation {} < ceiling {}",
            max_formation_length(&seq, r)?,
            trace.formation_ceiling()
        );
        println!("  {} troop rows", trace.troop_rows().len());
    }
    let (seq, _) = build_base(2, 3, 2)?;
    println!("T_2(3, 2) = {}", seq.render());
    Ok(())
}
