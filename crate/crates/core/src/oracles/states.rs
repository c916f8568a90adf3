//! Incremental admissibility states for the sequence searches.

use itertools::Itertools;

use super::search::SearchState;
use crate::checkers::contains_pattern;
use crate::seq::{letter, PatternSequence, Sequence};

/// Tracks `j`-sparsity and, for Davenport-Schinzel searches, adjacency and
/// pairwise alternation lengths.
#[derive(Clone, Debug)]
pub(crate) struct DsState {
    letters: usize,
    j: usize,
    /// `None` disables the alternation check (sparsity only).
    max_alternation: Option<usize>,
    len: usize,
    last_pos: Vec<Option<usize>>,
    /// Runs of the restriction to each pair, row-major `letters × letters`.
    runs: Vec<usize>,
    frames: Vec<(usize, Option<usize>)>,
}

impl DsState {
    pub fn sparse(letters: usize, j: usize) -> Self {
        DsState {
            letters,
            j,
            max_alternation: None,
            len: 0,
            last_pos: vec![None; letters],
            runs: vec![0; letters * letters],
            frames: Vec::new(),
        }
    }

    /// `j`-sparse, no adjacent repeats, alternations of length at most `s + 1`.
    pub fn ds(letters: usize, s: usize, j: usize) -> Self {
        DsState {
            max_alternation: Some(s + 1),
            j: j.max(2),
            ..DsState::sparse(letters, j)
        }
    }

    // Appending `l` starts a new run of the {l, o} restriction unless the
    // restriction already ends with `l`.
    fn starts_run(&self, l: usize, o: usize) -> bool {
        match (self.last_pos[l], self.last_pos[o]) {
            (None, _) => true,
            (Some(pl), Some(po)) => po > pl,
            (Some(_), None) => false,
        }
    }
}

impl SearchState for DsState {
    fn push(&mut self, l: usize) -> bool {
        if let Some(p) = self.last_pos[l] {
            if self.len - p < self.j {
                return false;
            }
        }
        if let Some(limit) = self.max_alternation {
            for o in (0..self.letters).filter(|&o| o != l) {
                if self.starts_run(l, o) && self.runs[l * self.letters + o] + 1 > limit {
                    return false;
                }
            }
            for o in (0..self.letters).filter(|&o| o != l) {
                if self.starts_run(l, o) {
                    self.runs[l * self.letters + o] += 1;
                    self.runs[o * self.letters + l] += 1;
                }
            }
        }
        self.frames.push((l, self.last_pos[l]));
        self.last_pos[l] = Some(self.len);
        self.len += 1;
        true
    }

    fn pop(&mut self) {
        let (l, previous) = self.frames.pop().expect("pop after push");
        self.len -= 1;
        self.last_pos[l] = previous;
        if self.max_alternation.is_some() {
            for o in (0..self.letters).filter(|&o| o != l) {
                if self.starts_run(l, o) {
                    self.runs[l * self.letters + o] -= 1;
                    self.runs[o * self.letters + l] -= 1;
                }
            }
        }
    }
}

/// `j`-sparse sequences in which every `r`-subset of letters has greedy
/// formation length below `s`.
#[derive(Clone, Debug)]
pub(crate) struct FormationState {
    sparse: DsState,
    r: usize,
    s: usize,
    /// For each letter, the subsets containing it and its slot there.
    memberships: Vec<Vec<(usize, usize)>>,
    seen: Vec<u64>,
    counts: Vec<usize>,
    frames: Vec<Vec<(usize, u64, usize)>>,
}

impl FormationState {
    pub fn new(letters: usize, r: usize, s: usize, j: usize) -> Self {
        assert!(r <= 64, "formation searches support r <= 64");
        let mut memberships = vec![Vec::new(); letters];
        let mut subsets = 0;
        for (index, subset) in (0..letters).combinations(r).enumerate() {
            for (slot, &l) in subset.iter().enumerate() {
                memberships[l].push((index, slot));
            }
            subsets += 1;
        }
        FormationState {
            sparse: DsState::sparse(letters, j),
            r,
            s,
            memberships,
            seen: vec![0; subsets],
            counts: vec![0; subsets],
            frames: Vec::new(),
        }
    }
}

impl SearchState for FormationState {
    fn push(&mut self, l: usize) -> bool {
        let full = if self.r == 64 { u64::MAX } else { (1u64 << self.r) - 1 };
        let mut changes = Vec::with_capacity(self.memberships[l].len());
        for &(subset, slot) in &self.memberships[l] {
            let bit = 1u64 << slot;
            if self.seen[subset] & bit == 0 {
                let seen = self.seen[subset] | bit;
                let (seen, count) = if seen == full {
                    (0, self.counts[subset] + 1)
                } else {
                    (seen, self.counts[subset])
                };
                if count >= self.s {
                    return false;
                }
                changes.push((subset, seen, count));
            }
        }
        if !self.sparse.push(l) {
            return false;
        }
        let mut undo = Vec::with_capacity(changes.len());
        for (subset, seen, count) in changes {
            undo.push((subset, self.seen[subset], self.counts[subset]));
            self.seen[subset] = seen;
            self.counts[subset] = count;
        }
        self.frames.push(undo);
        true
    }

    fn pop(&mut self) {
        for (subset, seen, count) in self.frames.pop().expect("pop after push") {
            self.seen[subset] = seen;
            self.counts[subset] = count;
        }
        self.sparse.pop();
    }
}

/// `j`-sparse sequences avoiding the pattern `u`.
#[derive(Clone, Debug)]
pub(crate) struct PatternState {
    sparse: DsState,
    pattern: PatternSequence,
    tokens: Vec<usize>,
}

impl PatternState {
    pub fn new(letters: usize, pattern: PatternSequence, j: usize) -> Self {
        PatternState {
            sparse: DsState::sparse(letters, j),
            pattern,
            tokens: Vec::new(),
        }
    }
}

impl SearchState for PatternState {
    fn push(&mut self, l: usize) -> bool {
        if !self.sparse.push(l) {
            return false;
        }
        self.tokens.push(l);
        let seq: Sequence = self.tokens.iter().map(|&t| letter(t as u32 + 1)).collect();
        if contains_pattern(&seq, &self.pattern) {
            self.tokens.pop();
            self.sparse.pop();
            return false;
        }
        true
    }

    fn pop(&mut self) {
        self.tokens.pop();
        self.sparse.pop();
    }
}

/// Davenport-Schinzel sequences whose greedy block partition uses at most
/// `max_blocks` blocks.
#[derive(Clone, Debug)]
pub(crate) struct BlocksState {
    ds: DsState,
    max_blocks: usize,
    current: u64,
    blocks: usize,
    frames: Vec<(u64, usize)>,
}

impl BlocksState {
    pub fn new(letters: usize, s: usize, max_blocks: usize) -> Self {
        assert!(letters <= 64, "block searches support at most 64 letters");
        BlocksState {
            ds: DsState::ds(letters, s, 1),
            max_blocks,
            current: 0,
            blocks: 0,
            frames: Vec::new(),
        }
    }
}

impl SearchState for BlocksState {
    fn push(&mut self, l: usize) -> bool {
        let bit = 1u64 << l;
        let (current, blocks) = if self.blocks == 0 || self.current & bit != 0 {
            (bit, self.blocks + 1)
        } else {
            (self.current | bit, self.blocks)
        };
        if blocks > self.max_blocks || !self.ds.push(l) {
            return false;
        }
        self.frames.push((self.current, self.blocks));
        self.current = current;
        self.blocks = blocks;
        true
    }

    fn pop(&mut self) {
        let (current, blocks) = self.frames.pop().expect("pop after push");
        self.current = current;
        self.blocks = blocks;
        self.ds.pop();
    }
}
