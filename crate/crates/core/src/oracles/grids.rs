//! Exhaustive searches over 0-1 matrices and over block systems.

use crate::matrix::{matrix_contains, MatrixPattern, ZeroOneMatrix};

pub(crate) struct MatrixOutcome {
    pub best: ZeroOneMatrix,
    pub ones: usize,
    pub nodes: u64,
    pub exhausted: bool,
}

/// Maximum number of ones in an `n × m` matrix avoiding `p`.
///
/// Cells are filled row-major, 1 before 0. A branch is cut when the filled
/// part already contains `p` (containment only grows with more ones) or when
/// ones so far plus cells left cannot beat the incumbent.
pub(crate) fn max_avoiding_matrix(n: usize, m: usize, p: &MatrixPattern, node_budget: Option<u64>) -> MatrixOutcome {
    let mut search = MatrixSearch {
        cells: n * m,
        cols: m,
        pattern: p,
        current: ZeroOneMatrix::zeros(n, m).expect("positive dimensions"),
        best: ZeroOneMatrix::zeros(n, m).expect("positive dimensions"),
        best_ones: 0,
        nodes: 0,
        budget: node_budget,
        aborted: false,
    };
    search.run(0, 0);
    MatrixOutcome {
        best: search.best,
        ones: search.best_ones,
        nodes: search.nodes,
        exhausted: !search.aborted,
    }
}

struct MatrixSearch<'a> {
    cells: usize,
    cols: usize,
    pattern: &'a MatrixPattern,
    current: ZeroOneMatrix,
    best: ZeroOneMatrix,
    best_ones: usize,
    nodes: u64,
    budget: Option<u64>,
    aborted: bool,
}

impl MatrixSearch<'_> {
    fn run(&mut self, cell: usize, ones: usize) {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.aborted = true;
        }
        if self.aborted || ones + (self.cells - cell) <= self.best_ones {
            return;
        }
        if cell == self.cells {
            self.best_ones = ones;
            self.best = self.current.clone();
            return;
        }
        let (i, j) = (cell / self.cols, cell % self.cols);
        self.current.set(i, j, true);
        if !matrix_contains(&self.current, self.pattern) {
            self.run(cell + 1, ones + 1);
        }
        self.current.set(i, j, false);
        self.run(cell + 1, ones);
    }
}

pub(crate) struct BlockSystemOutcome {
    /// Letter masks, one per block.
    pub blocks: Vec<u64>,
    pub total: usize,
    pub nodes: u64,
    pub exhausted: bool,
}

/// Maximum total size of `m` blocks over `n` letters (as subsets) such that no
/// two letters share more than `s` blocks. Blocks are chosen as a
/// non-increasing sequence of masks, since block order does not matter.
pub(crate) fn max_block_system(n: usize, s: usize, m: usize, node_budget: Option<u64>) -> BlockSystemOutcome {
    assert!(n <= 16, "block-system search supports n <= 16");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut search = BlockSystemSearch {
        n,
        s,
        m,
        pairs,
        shared: vec![0; n * n],
        chosen: Vec::with_capacity(m),
        best: Vec::new(),
        best_total: 0,
        found: false,
        nodes: 0,
        budget: node_budget,
        aborted: false,
    };
    search.run((1u64 << n) - 1, 0);
    let mut blocks = search.best;
    blocks.resize(m, 0);
    BlockSystemOutcome {
        blocks,
        total: search.best_total,
        nodes: search.nodes,
        exhausted: !search.aborted,
    }
}

struct BlockSystemSearch {
    n: usize,
    s: usize,
    m: usize,
    pairs: Vec<(usize, usize)>,
    shared: Vec<usize>,
    chosen: Vec<u64>,
    best: Vec<u64>,
    best_total: usize,
    found: bool,
    nodes: u64,
    budget: Option<u64>,
    aborted: bool,
}

impl BlockSystemSearch {
    fn run(&mut self, max_mask: u64, total: usize) {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.aborted = true;
        }
        if self.aborted {
            return;
        }
        let left = self.m - self.chosen.len();
        if self.found && total + left * self.n <= self.best_total {
            return;
        }
        if left == 0 {
            self.found = true;
            self.best_total = total;
            self.best.clone_from(&self.chosen);
            return;
        }
        for mask in (0..=max_mask).rev() {
            let inside: Vec<(usize, usize)> = self
                .pairs
                .iter()
                .copied()
                .filter(|&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1)
                .collect();
            if inside.iter().any(|&(a, b)| self.shared[a * self.n + b] >= self.s) {
                continue;
            }
            inside.iter().for_each(|&(a, b)| self.shared[a * self.n + b] += 1);
            self.chosen.push(mask);
            self.run(mask, total + mask.count_ones() as usize);
            self.chosen.pop();
            inside.iter().for_each(|&(a, b)| self.shared[a * self.n + b] -= 1);
        }
    }
}
