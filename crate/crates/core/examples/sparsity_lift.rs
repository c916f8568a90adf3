//! Lift a troop sequence to higher sparsity by coloring its troop hypergraph.

use sparse_formations::checkers::is_sparse;
use sparse_formations::constructions::{build_base, lift_step};

fn main() -> sparse_formations::Result<()> {
    let (seq, mut trace) = build_base(2, 4, 2)?;
    println!("q=2  {} tokens, 2-sparse: {}", seq.len(), is_sparse(&seq, 2));
    for _ in 0..2 {
        let step = lift_step(&trace)?;
        let h = &step.hypergraph;
        println!(
            "  colored {} troops ({}-uniform, max intersection {}) with {} colors, budget {:.1}",
            h.edges().len(),
            h.uniformity(),
            h.max_pairwise_intersection(),
            step.coloring.color_count,
            h.color_budget(step.coloring.y),
        );
        trace = step.trace;
        let q = trace.levels().last().map_or(2, |l| l.q);
        println!(
            "q={q}  {} tokens on {} letters, {q}-sparse: {}",
            step.sequence.len(),
            trace.letter_count(),
            is_sparse(&step.sequence, q)
        );
    }
    print!("{}", trace.report());
    Ok(())
}
