//! Troop sequences: sparse sequences with long total length whose `r`-letter
//! formations stay short.
//!
//! The base sequence on letters `1..=x` walks the `r`-subsets
//! `i_1 < ... < i_r` in lexicographic order and writes `t` consecutive copies
//! of `i_1 ... i_r` for each; the copies of one subset form a *troop*, and the
//! troops sharing `i_1 .. i_{r-1}` form a *troop-row*. Such a sequence is
//! `r`-sparse, has length `r·t·C(x, r)`, and every `r`-tuple of letters has
//! formation length below `2·C(x−1, r−1) + t + 1`.
//!
//! A lift raises the sparsity by one: the troop supports are viewed as a
//! hypergraph, colored so that supports meeting in `r − 1` letters differ,
//! and each color becomes a fresh letter appended to every copy in its
//! troop.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;

use super::coloring::{greedy_edge_coloring, EdgeColoring, Hypergraph};
use crate::combinatorics::{binomial, factorial, saturating_pow};
use crate::error::{Error, Result};
use crate::seq::{letter, Letter, Sequence};

/// `t` consecutive copies of the string `support`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Troop {
    pub support: Vec<Letter>,
    pub repetitions: usize,
}

impl Troop {
    fn push_tokens(&self, out: &mut Vec<Letter>) {
        for _ in 0..self.repetitions {
            out.extend_from_slice(&self.support);
        }
    }
}

/// Consecutive troops sharing their first `r − 1` base letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TroopRow {
    pub prefix: Vec<Letter>,
    /// Indices into the trace's troop list.
    pub troops: Vec<usize>,
}

/// Colors introduced by one lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftLevel {
    /// Sparsity reached by this lift.
    pub q: usize,
    /// Fresh letter appended to each troop, in troop order.
    pub troop_colors: Vec<Letter>,
    /// The fresh letters, ascending.
    pub fresh: Vec<Letter>,
}

/// Everything needed to re-verify a troop construction and lift it again.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub r: usize,
    pub q: usize,
    pub x: usize,
    pub t: usize,
    troops: Vec<Troop>,
    letter_count: usize,
    levels: Vec<LiftLevel>,
}

impl ConstructionTrace {
    pub fn troops(&self) -> &[Troop] {
        &self.troops
    }

    /// Letters in use; they are exactly `1..=letter_count`.
    pub fn letter_count(&self) -> usize {
        self.letter_count
    }

    pub fn levels(&self) -> &[LiftLevel] {
        &self.levels
    }

    pub fn color_letters_per_level(&self) -> BTreeMap<usize, Vec<Letter>> {
        self.levels.iter().map(|l| (l.q, l.fresh.clone())).collect()
    }

    pub fn sequence(&self) -> Sequence {
        let mut tokens = Vec::with_capacity(self.q * self.t * self.troops.len());
        for troop in &self.troops {
            troop.push_tokens(&mut tokens);
        }
        Sequence::new(tokens)
    }

    pub fn troop_rows(&self) -> Vec<TroopRow> {
        let mut rows: Vec<TroopRow> = Vec::new();
        for (index, troop) in self.troops.iter().enumerate() {
            let prefix = &troop.support[..self.r - 1];
            match rows.last_mut() {
                Some(row) if row.prefix == prefix => row.troops.push(index),
                _ => rows.push(TroopRow {
                    prefix: prefix.to_vec(),
                    troops: vec![index],
                }),
            }
        }
        rows
    }

    /// The `q`-uniform hypergraph with one edge per troop support.
    pub fn troop_hypergraph(&self) -> Hypergraph {
        let edges = self
            .troops
            .iter()
            .map(|t| t.support.iter().map(|l| l.id()).collect())
            .collect();
        Hypergraph::new(self.letter_count, self.q, edges).expect("troop supports are q distinct letters")
    }

    /// The formation-length ceiling `2·C(x−1, r−1) + t + 1`: every `r`-tuple
    /// has formation length strictly below it.
    pub fn formation_ceiling(&self) -> usize {
        formation_ceiling(self.r, self.x, self.t)
    }

    /// Text report: parameters, troops, and the color map of every lift.
    pub fn report(&self) -> String {
        let mut out = String::new();
        let ids = |ls: &[Letter]| ls.iter().map(|l| l.id().to_string()).join(" ");
        writeln!(out, "troop-construction").unwrap();
        writeln!(out, "r={} q={} x={} t={}", self.r, self.q, self.x, self.t).unwrap();
        writeln!(
            out,
            "troops={} letters={} length={}",
            self.troops.len(),
            self.letter_count,
            self.q * self.t * self.troops.len()
        )
        .unwrap();
        writeln!(out, "[troops]").unwrap();
        for (i, troop) in self.troops.iter().enumerate() {
            writeln!(out, "{} : {} x{}", i + 1, ids(&troop.support), troop.repetitions).unwrap();
        }
        for level in &self.levels {
            writeln!(out, "[level {}]", level.q).unwrap();
            writeln!(out, "fresh={}", ids(&level.fresh)).unwrap();
            for (i, c) in level.troop_colors.iter().enumerate() {
                writeln!(out, "{} -> {}", i + 1, c).unwrap();
            }
        }
        out
    }
}

pub fn formation_ceiling(r: usize, x: usize, t: usize) -> usize {
    let rows = binomial(x.saturating_sub(1) as u64, r.saturating_sub(1) as u64);
    2 * rows as usize + t + 1
}

/// The base sequence `T_r(x, t)`.
pub fn build_base(r: usize, x: usize, t: usize) -> Result<(Sequence, ConstructionTrace)> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("r = {r} must be at least 2")));
    }
    if x < r {
        return Err(Error::InvalidParameter(format!("x = {x} must be at least r = {r}")));
    }
    if t == 0 {
        return Err(Error::InvalidParameter("t must be positive".into()));
    }
    let troops = (1..=x as u32)
        .combinations(r)
        .map(|subset| Troop {
            support: subset.into_iter().map(letter).collect(),
            repetitions: t,
        })
        .collect();
    let trace = ConstructionTrace {
        r,
        q: r,
        x,
        t,
        troops,
        letter_count: x,
        levels: Vec::new(),
    };
    Ok((trace.sequence(), trace))
}

/// One lift together with the hypergraph and coloring that drove it.
#[derive(Clone, Debug)]
pub struct LiftStep {
    pub sequence: Sequence,
    pub trace: ConstructionTrace,
    pub hypergraph: Hypergraph,
    pub coloring: EdgeColoring,
}

/// Raises sparsity from `q` to `q + 1`.
///
/// Fails if two troop supports share `r` or more letters.
pub fn lift(trace: &ConstructionTrace) -> Result<(Sequence, ConstructionTrace)> {
    let step = lift_step(trace)?;
    Ok((step.sequence, step.trace))
}

pub fn lift_step(trace: &ConstructionTrace) -> Result<LiftStep> {
    let hypergraph = trace.troop_hypergraph();
    let coloring = greedy_edge_coloring(&hypergraph, trace.r - 1)?;

    // Color c becomes letter letter_count + c, above every existing id.
    let base = trace.letter_count as u32;
    let troop_colors: Vec<Letter> = coloring.colors.iter().map(|&c| letter(base + c)).collect();
    let fresh = (1..=coloring.color_count as u32).map(|c| letter(base + c)).collect();

    let troops = trace
        .troops
        .iter()
        .zip(&troop_colors)
        .map(|(troop, &color)| {
            let mut support = troop.support.clone();
            support.push(color);
            Troop {
                support,
                repetitions: troop.repetitions,
            }
        })
        .collect();
    let mut levels = trace.levels.clone();
    levels.push(LiftLevel {
        q: trace.q + 1,
        troop_colors,
        fresh,
    });
    let lifted = ConstructionTrace {
        r: trace.r,
        q: trace.q + 1,
        x: trace.x,
        t: trace.t,
        troops,
        letter_count: trace.letter_count + coloring.color_count,
        levels,
    };
    Ok(LiftStep {
        sequence: lifted.sequence(),
        trace: lifted,
        hypergraph,
        coloring,
    })
}

/// `T_{r,q}(x, t)`: the base sequence lifted `q − r` times.
pub fn build_formation_witness(r: usize, q: usize, x: usize, t: usize) -> Result<(Sequence, ConstructionTrace)> {
    if q < r {
        return Err(Error::InvalidParameter(format!("q = {q} must be at least r = {r}")));
    }
    let (mut seq, mut trace) = build_base(r, x, t)?;
    for _ in r..q {
        (seq, trace) = lift(&trace)?;
    }
    Ok((seq, trace))
}

/// Appends fresh letters, one occurrence each, until `n` letters are used.
pub fn pad_to_alphabet(seq: &Sequence, n: usize) -> Result<Sequence> {
    let present = seq.alphabet_size();
    if present > n {
        return Err(Error::InvalidParameter(format!(
            "sequence already has {present} letters, more than {n}"
        )));
    }
    let start = seq.max_id();
    let mut tokens = seq.tokens().to_vec();
    tokens.extend((1..=(n - present) as u32).map(|k| letter(start + k)));
    Ok(Sequence::new(tokens))
}

/// Construction parameters `(x, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub x: usize,
    pub t: usize,
}

/// Picks `x = ⌊c·n / (4·(q!)^{r−1})⌋` and `t = ⌊s/2⌋ − 1`, then lowers `x`
/// until the witness provably avoids `(r, s)`-formations
/// (`2·C(x−1, r−1) + t + 1 <= s`) and fits in `n` letters
/// (`(q!)^{r−1}·x <= n`).
pub fn choose_params(n: usize, s: usize, c: f64, r: usize, q: usize) -> Result<Params> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::InvalidParameter(format!("c = {c} must lie in (0, 1]")));
    }
    if r < 2 || q < r {
        return Err(Error::InvalidParameter(format!(
            "need q >= r >= 2, got r = {r}, q = {q}"
        )));
    }
    let budget = saturating_pow(factorial(q as u64), (r - 1) as u32);
    let mut x = (c * n as f64 / (4.0 * budget as f64)).floor() as usize;
    let t = (s / 2).saturating_sub(1);
    if t < 1 {
        return Err(Error::Infeasible(format!("t = floor({s}/2) - 1 is below 1")));
    }
    let fits = |x: usize| formation_ceiling(r, x, t) <= s && budget.saturating_mul(x as u128) <= n as u128;
    while x >= r && !fits(x) {
        x -= 1;
    }
    if x < r {
        return Err(Error::Infeasible(format!(
            "no x >= r = {r} satisfies the formation and letter budgets (n = {n}, s = {s}, q = {q})"
        )));
    }
    Ok(Params { x, t })
}

/// A `j`-sparse Davenport-Schinzel sequence of order `s` on exactly `n`
/// letters.
///
/// An alternation of length `s + 2` contains a `(2, ⌊s/2⌋ + 1)`-formation, so
/// the two-letter troop construction is sized to avoid those and padded to
/// `n` letters.
pub fn build_ds_sparse_witness(n: usize, s: usize, j: usize) -> Result<Sequence> {
    if j < 2 {
        return Err(Error::InvalidParameter(format!("j = {j} must be at least 2")));
    }
    let order = s / 2 + 1;
    let params = choose_params(n, order, 1.0, 2, j).map_err(|e| match e {
        Error::Infeasible(why) => Error::Infeasible(format!("order {s} needs (2, {order})-formation avoidance: {why}")),
        other => other,
    })?;
    let (seq, _) = build_formation_witness(2, j, params.x, params.t)?;
    pad_to_alphabet(&seq, n)
}
