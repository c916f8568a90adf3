use crate::seq::{letter, BlockedSequence, Letter};

/// `n` blocks on letters `1..=n` whose flattening is Davenport-Schinzel of
/// order `s`.
///
/// The first `min(s, n)` blocks hold every letter, in alternating ascending
/// and descending order. Where a block would start with the letter its
/// predecessor ends with, that first letter is dropped. The remaining blocks
/// are empty. Any two letters then alternate at most `min(s, n) + 1` times.
pub fn build_block_witness(n: usize, s: usize) -> BlockedSequence {
    let full = s.min(n);
    let ascending: Vec<Letter> = (1..=n as u32).map(letter).collect();
    let descending: Vec<Letter> = ascending.iter().rev().copied().collect();

    let mut blocks: Vec<Vec<Letter>> = Vec::with_capacity(n);
    for index in 0..full {
        let order = if index % 2 == 0 { &ascending } else { &descending };
        let mut block = order.clone();
        let previous_last = blocks.last().and_then(|b| b.last());
        if previous_last.is_some() && previous_last == block.first() {
            block.remove(0);
        }
        blocks.push(block);
    }
    blocks.resize(n, Vec::new());
    BlockedSequence::new(blocks).expect("each block lists distinct letters")
}
