//! Canonical-form depth-first search for the longest admissible sequence.
//!
//! Letters are `0..letters`; a letter `k` may be appended only once letters
//! `0..k` have all occurred, so each sequence is visited once up to renaming.
//! Admissibility is checked incrementally by a [`SearchState`] and must be
//! hereditary under taking prefixes.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

/// Incremental admissibility of the current prefix.
pub(crate) trait SearchState: Clone + Send {
    /// Appends `letter` if the longer prefix stays admissible; otherwise
    /// leaves the state untouched and returns `false`.
    fn push(&mut self, letter: usize) -> bool;
    /// Undoes the last successful `push`.
    fn pop(&mut self);
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct SearchLimits {
    pub letters: usize,
    /// No prefix grows beyond this length.
    pub length_cap: usize,
    /// Whether `length_cap` is a proven upper bound on the answer.
    pub cap_is_ceiling: bool,
    pub node_budget: Option<u64>,
    pub threads: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct SearchOutcome {
    pub best: Vec<usize>,
    pub nodes: u64,
    pub exhausted: bool,
}

struct Dfs<'a, S> {
    state: S,
    prefix: Vec<usize>,
    best: Vec<usize>,
    limits: SearchLimits,
    nodes: &'a AtomicU64,
    aborted: &'a AtomicBool,
}

impl<S: SearchState> Dfs<'_, S> {
    // Returns true when the whole search should stop.
    fn run(&mut self, used: usize) -> bool {
        let visited = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.limits.node_budget.is_some_and(|b| visited > b) {
            self.aborted.store(true, Ordering::Relaxed);
        }
        if self.aborted.load(Ordering::Relaxed) {
            return true;
        }
        if self.prefix.len() > self.best.len() {
            self.best.clone_from(&self.prefix);
            if self.best.len() >= self.limits.length_cap {
                return true;
            }
        }
        if self.prefix.len() >= self.limits.length_cap {
            return false;
        }
        for letter in 0..(used + 1).min(self.limits.letters) {
            if self.state.push(letter) {
                self.prefix.push(letter);
                let stop = self.run(used.max(letter + 1));
                self.prefix.pop();
                self.state.pop();
                if stop {
                    return true;
                }
            }
        }
        false
    }
}

fn used_letters(prefix: &[usize]) -> usize {
    prefix.iter().map(|&l| l + 1).max().unwrap_or(0)
}

/// Longest admissible sequence. The witness is the first longest sequence in
/// depth-first order, whatever the thread count.
pub(crate) fn longest<S: SearchState + Sync>(state: S, limits: SearchLimits) -> SearchOutcome {
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);

    if limits.threads <= 1 {
        let mut dfs = Dfs {
            state,
            prefix: Vec::new(),
            best: Vec::new(),
            limits,
            nodes: &nodes,
            aborted: &aborted,
        };
        dfs.run(0);
        return finish(dfs.best, &nodes, &aborted, limits);
    }

    // Expand a frontier breadth-first, in depth-first order, then search the
    // frontier subtrees in parallel and merge them in order.
    let mut frontier: Vec<(Vec<usize>, S)> = vec![(Vec::new(), state)];
    let mut shallow_best: Vec<usize> = Vec::new();
    let target = limits.threads * 16;
    while frontier.len() < target {
        let mut next = Vec::new();
        for (prefix, st) in &frontier {
            nodes.fetch_add(1, Ordering::Relaxed);
            if prefix.len() > shallow_best.len() {
                shallow_best.clone_from(prefix);
            }
            if prefix.len() >= limits.length_cap {
                continue;
            }
            let used = used_letters(prefix);
            for letter in 0..(used + 1).min(limits.letters) {
                let mut child = st.clone();
                if child.push(letter) {
                    let mut p = prefix.clone();
                    p.push(letter);
                    next.push((p, child));
                }
            }
        }
        if next.is_empty() {
            return finish(shallow_best, &nodes, &aborted, limits);
        }
        frontier = next;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(limits.threads)
        .build()
        .expect("thread pool");
    let results: Vec<Vec<usize>> = pool.install(|| {
        frontier
            .into_par_iter()
            .map(|(prefix, st)| {
                let used = used_letters(&prefix);
                let mut dfs = Dfs {
                    state: st,
                    best: Vec::new(),
                    prefix,
                    limits,
                    nodes: &nodes,
                    aborted: &aborted,
                };
                dfs.run(used);
                dfs.best
            })
            .collect()
    });

    let mut best = shallow_best;
    for candidate in results {
        if candidate.len() > best.len() {
            best = candidate;
        }
    }
    finish(best, &nodes, &aborted, limits)
}

fn finish(best: Vec<usize>, nodes: &AtomicU64, aborted: &AtomicBool, limits: SearchLimits) -> SearchOutcome {
    let aborted = aborted.load(Ordering::Relaxed);
    let exhausted = !aborted && (best.len() < limits.length_cap || limits.cap_is_ceiling);
    SearchOutcome {
        best,
        nodes: nodes.load(Ordering::Relaxed),
        exhausted,
    }
}
