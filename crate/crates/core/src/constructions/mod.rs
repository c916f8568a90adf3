//! Lower-bound witnesses: troop sequences and their sparsity lifts, the
//! hypergraph coloring that drives the lifts, and the reversed-block
//! construction.

mod blocks;
mod coloring;
mod troops;

pub use blocks::build_block_witness;
pub use coloring::{greedy_edge_coloring, EdgeColoring, Hypergraph};
pub use troops::{
    build_base, build_ds_sparse_witness, build_formation_witness, choose_params, formation_ceiling, lift, lift_step,
    pad_to_alphabet, ConstructionTrace, LiftLevel, LiftStep, Params, Troop, TroopRow,
};
