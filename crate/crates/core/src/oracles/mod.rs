//! Exact extremal values on small instances, computed by exhaustive search.
//!
//! Each oracle returns the optimum together with a witness, the number of
//! search nodes visited, and whether the search was exhaustive. Queries
//! outside the desk-scale caps are refused unless
//! [`OracleConfig::override_caps`] is set.

mod grids;
mod search;
mod states;

use serde::Serialize;

use crate::combinatorics::{binomial, saturating_pow};
use crate::error::{Error, Result};
use crate::matrix::{MatrixPattern, ZeroOneMatrix};
use crate::seq::{letter, BlockedSequence, Letter, PatternSequence, Sequence};
use search::{longest, SearchLimits};
use states::{BlocksState, DsState, FormationState, PatternState};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub override_caps: bool,
    /// Worker threads for the sequence searches; 1 runs sequentially.
    pub threads: usize,
    /// Stop after this many search nodes, reporting a non-exhaustive result.
    pub node_budget: Option<u64>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            override_caps: false,
            threads: 1,
            node_budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Sequence(Sequence),
    Blocked(BlockedSequence),
    Matrix(ZeroOneMatrix),
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Sequence(_) => "sequence",
            Witness::Blocked(_) => "blocked-sequence",
            Witness::Matrix(_) => "matrix",
        }
    }

    pub fn render(&self) -> String {
        match self {
            Witness::Sequence(s) => s.render(),
            Witness::Blocked(b) => b.render(),
            Witness::Matrix(m) => m.render(),
        }
    }
}

/// Optimum of one extremal query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalResult {
    pub query: String,
    pub value: usize,
    pub witness: Witness,
    pub nodes_explored: u64,
    /// True iff the search space was fully explored, so `value` is exact.
    pub exhausted: bool,
}

/// Serializable form of an [`ExtremalResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultRecord {
    pub query: String,
    pub value: usize,
    pub witness_kind: String,
    pub witness: String,
    pub nodes_explored: u64,
    pub exhausted: bool,
}

impl ExtremalResult {
    pub fn record(&self) -> ResultRecord {
        ResultRecord {
            query: self.query.clone(),
            value: self.value,
            witness_kind: self.witness.kind().to_string(),
            witness: self.witness.render(),
            nodes_explored: self.nodes_explored,
            exhausted: self.exhausted,
        }
    }
}

fn check_caps(config: &OracleConfig, query: &str, within: bool, caps: &str, estimate: f64) -> Result<()> {
    if within || config.override_caps {
        Ok(())
    } else {
        Err(Error::CapExceeded {
            query: query.to_string(),
            caps: caps.to_string(),
            estimate,
        })
    }
}

// Crude upper bound on canonical-search nodes: all words up to the cap.
fn sequence_estimate(letters: usize, cap: usize) -> f64 {
    (letters.max(2) as f64).powf(cap as f64 + 1.0)
}

fn to_sequence(best: &[usize]) -> Sequence {
    best.iter().map(|&l| letter(l as u32 + 1)).collect()
}

fn limits(config: &OracleConfig, letters: usize, length_cap: usize, cap_is_ceiling: bool) -> SearchLimits {
    SearchLimits {
        letters,
        length_cap,
        cap_is_ceiling,
        node_budget: config.node_budget,
        threads: config.threads.max(1),
    }
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        Err(Error::InvalidParameter(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

/// The Davenport-Schinzel ceiling `s·C(n, 2) + 1`.
pub fn ds_ceiling(n: usize, s: usize) -> u128 {
    (s as u128).saturating_mul(binomial(n as u64, 2)).saturating_add(1)
}

/// The formation ceiling `s·n^r` for `r`-sparse sequences with `n >= r`.
pub fn formation_ceiling_bound(n: usize, r: usize, s: usize) -> u128 {
    (s as u128).saturating_mul(saturating_pow(n as u128, r as u32))
}

/// `λ_s(n, j)`: longest `j`-sparse Davenport-Schinzel sequence of order `s` on
/// at most `n` letters. `λ_s(n)` is `j = 2`.
pub fn oracle_lambda(n: usize, s: usize, j: usize, config: &OracleConfig) -> Result<ExtremalResult> {
    positive("n", n)?;
    positive("s", s)?;
    positive("j", j)?;
    let query = format!("lambda(n={n}, s={s}, j={j})");
    let ceiling = ds_ceiling(n, s).min(usize::MAX as u128) as usize;
    check_caps(
        config,
        &query,
        n <= 5 && s <= 4 && j <= 3,
        "n <= 5, s <= 4, j <= 3",
        sequence_estimate(n, ceiling),
    )?;
    let out = longest(DsState::ds(n, s, j), limits(config, n, ceiling, true));
    Ok(ExtremalResult {
        query,
        value: out.best.len(),
        witness: Witness::Sequence(to_sequence(&out.best)),
        nodes_explored: out.nodes,
        exhausted: out.exhausted,
    })
}

/// `F_{r,s,j}(n)`: longest `j`-sparse sequence on at most `n` letters in
/// which no `r` letters form an `(r, s)`-formation.
///
/// The search never goes past `s·n^r`; that is a proven ceiling only when
/// `n >= r` and `j >= r`, otherwise reaching it leaves the result
/// non-exhaustive.
pub fn oracle_formation(n: usize, r: usize, s: usize, j: usize, config: &OracleConfig) -> Result<ExtremalResult> {
    positive("n", n)?;
    positive("r", r)?;
    positive("s", s)?;
    positive("j", j)?;
    let query = format!("formation(n={n}, r={r}, s={s}, j={j})");
    let cap = formation_ceiling_bound(n, r, s).min(usize::MAX as u128) as usize;
    check_caps(
        config,
        &query,
        n <= 4 && r <= 3 && s <= 3 && j <= 3,
        "n <= 4, r <= 3, s <= 3, j <= 3",
        sequence_estimate(n, cap),
    )?;
    let proven = n >= r && j >= r;
    let out = longest(FormationState::new(n, r, s, j), limits(config, n, cap, proven));
    Ok(ExtremalResult {
        query,
        value: out.best.len(),
        witness: Witness::Sequence(to_sequence(&out.best)),
        nodes_explored: out.nodes,
        exhausted: out.exhausted,
    })
}

/// `Ex(u, j, n)`: longest `j`-sparse sequence on at most `n` letters avoiding
/// `u`.
///
/// Every `(r, |u|)`-formation contains `u` (with `r` its letter count), so
/// `|u|·n^r` bounds the answer when `n >= r` and `j >= r`; it is also the
/// search cap otherwise.
pub fn oracle_pattern(u: &PatternSequence, j: usize, n: usize, config: &OracleConfig) -> Result<ExtremalResult> {
    positive("n", n)?;
    positive("j", j)?;
    let query = format!("pattern(u={}, j={j}, n={n})", u.sequence().render());
    let r = u.letter_count();
    let cap = formation_ceiling_bound(n, r, u.len()).min(usize::MAX as u128) as usize;
    check_caps(
        config,
        &query,
        n <= 4 && u.len() <= 6 && j <= 3,
        "n <= 4, |u| <= 6, j <= 3",
        sequence_estimate(n, cap),
    )?;
    let proven = n >= r && j >= r;
    let out = longest(PatternState::new(n, u.clone(), j), limits(config, n, cap, proven));
    Ok(ExtremalResult {
        query,
        value: out.best.len(),
        witness: Witness::Sequence(to_sequence(&out.best)),
        nodes_explored: out.nodes,
        exhausted: out.exhausted,
    })
}

/// `λ_s(n; m)`: longest Davenport-Schinzel sequence of order `s` on at most
/// `n` letters that splits into at most `m` blocks. The witness is the
/// greedy block partition.
pub fn oracle_lambda_blocks(n: usize, s: usize, m: usize, config: &OracleConfig) -> Result<ExtremalResult> {
    positive("n", n)?;
    positive("s", s)?;
    positive("m", m)?;
    let query = format!("lambda-blocks(n={n}, s={s}, m={m})");
    let ceiling = ds_ceiling(n, s).min((n * m) as u128) as usize;
    check_caps(
        config,
        &query,
        n <= 4 && s <= 4 && m <= 4,
        "n <= 4, s <= 4, m <= 4",
        sequence_estimate(n, ceiling),
    )?;
    let out = longest(BlocksState::new(n, s, m), limits(config, n, ceiling, true));
    let witness = greedy_blocks(&to_sequence(&out.best));
    Ok(ExtremalResult {
        query,
        value: out.best.len(),
        witness: Witness::Blocked(witness),
        nodes_explored: out.nodes,
        exhausted: out.exhausted,
    })
}

/// Splits a sequence into the fewest blocks of distinct letters.
pub fn greedy_blocks(seq: &Sequence) -> BlockedSequence {
    let mut blocks: Vec<Vec<Letter>> = Vec::new();
    for &l in seq.tokens() {
        match blocks.last_mut() {
            Some(block) if !block.contains(&l) => block.push(l),
            _ => blocks.push(vec![l]),
        }
    }
    BlockedSequence::new(blocks).expect("greedy blocks are distinct")
}

/// `λ'_s(n; m)`: largest blocked sequence with at most `m` blocks over at most
/// `n` letters in which no two letters share more than `s` blocks. Nothing is
/// required of adjacent letters.
pub fn oracle_lambda_prime(n: usize, s: usize, m: usize, config: &OracleConfig) -> Result<ExtremalResult> {
    positive("n", n)?;
    positive("m", m)?;
    let query = format!("lambda-prime(n={n}, s={s}, m={m})");
    let masks = 1u64 << n.min(63);
    let estimate = binomial(masks + m as u64 - 1, m as u64) as f64;
    check_caps(
        config,
        &query,
        n <= 4 && s <= 3 && m <= 4,
        "n <= 4, s <= 3, m <= 4",
        estimate,
    )?;
    if n > 16 {
        return Err(Error::InvalidParameter("lambda-prime supports n <= 16".into()));
    }
    let out = grids::max_block_system(n, s, m, config.node_budget);
    let blocks = out
        .blocks
        .iter()
        .map(|&mask| {
            (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| letter(i as u32 + 1))
                .collect()
        })
        .collect();
    Ok(ExtremalResult {
        query,
        value: out.total,
        witness: Witness::Blocked(BlockedSequence::new(blocks).expect("masks list distinct letters")),
        nodes_explored: out.nodes,
        exhausted: out.exhausted,
    })
}

/// `ex(n, m, P)`: most ones in an `n × m` matrix avoiding `P`.
pub fn oracle_ex_matrix(n: usize, m: usize, p: &MatrixPattern, config: &OracleConfig) -> Result<ExtremalResult> {
    positive("n", n)?;
    positive("m", m)?;
    let query = format!(
        "ex-matrix(n={n}, m={m}, P={}x{}:{})",
        p.rows(),
        p.cols(),
        p.matrix().render().replace('\n', "/")
    );
    check_caps(
        config,
        &query,
        n * m <= 30,
        "n*m <= 30",
        2f64.powf((n * m) as f64 + 1.0),
    )?;
    let out = grids::max_avoiding_matrix(n, m, p, config.node_budget);
    Ok(ExtremalResult {
        query,
        value: out.ones,
        witness: Witness::Matrix(out.best),
        nodes_explored: out.nodes,
        exhausted: out.exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::{contains_pattern, is_ds, is_sparse, max_formation_length};
    use crate::matrix::{all_ones, blocked_to_matrix_with_rows, cooccurrence_at_most, matrix_contains};
    use crate::seq::parse_plain;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    fn pattern(text: &str) -> PatternSequence {
        PatternSequence::new(&parse_plain(text).unwrap()).unwrap()
    }

    fn seq_witness(r: &ExtremalResult) -> Sequence {
        match &r.witness {
            Witness::Sequence(s) => s.clone(),
            other => panic!("expected a sequence witness, got {other:?}"),
        }
    }

    #[test]
    fn lambda_examples() {
        let r = oracle_lambda(3, 2, 2, &cfg()).unwrap();
        assert_eq!(r.value, 5);
        assert!(r.exhausted);
        assert!(is_ds(&seq_witness(&r), 2));
        assert_eq!(oracle_lambda(4, 1, 2, &cfg()).unwrap().value, 4);
        // abab is allowed at order 3, ababa is not
        assert_eq!(oracle_lambda(2, 3, 2, &cfg()).unwrap().value, 4);
    }

    #[test]
    fn lambda_caps() {
        assert!(matches!(oracle_lambda(6, 2, 2, &cfg()), Err(Error::CapExceeded { .. })));
        let over = OracleConfig {
            override_caps: true,
            ..cfg()
        };
        assert_eq!(oracle_lambda(6, 2, 2, &over).unwrap().value, 11);
        assert!(oracle_lambda(0, 2, 2, &cfg()).is_err());
    }

    #[test]
    fn sparse_lambda_is_smaller_or_equal() {
        for n in 2..=4 {
            let two = oracle_lambda(n, 3, 2, &cfg()).unwrap().value;
            let three = oracle_lambda(n, 3, 3, &cfg()).unwrap();
            assert!(three.value <= two);
            assert!(is_sparse(&seq_witness(&three), 3));
        }
    }

    #[test]
    fn formation_examples() {
        let r = oracle_formation(2, 3, 1, 2, &cfg()).unwrap();
        assert!(!r.exhausted);
        assert_eq!(r.value, 8);

        let r = oracle_formation(2, 2, 2, 2, &cfg()).unwrap();
        assert_eq!(r.value, 3);
        assert!(r.exhausted);
        assert_eq!(seq_witness(&r).render(), "1 2 1");

        let r = oracle_formation(3, 2, 2, 2, &cfg()).unwrap();
        assert!(r.exhausted);
        assert!(r.value <= 18);
        let w = seq_witness(&r);
        assert!(is_sparse(&w, 2));
        assert!(max_formation_length(&w, 2).unwrap() < 2);
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(oracle_pattern(&pattern("a b a b"), 2, 3, &cfg()).unwrap().value, 5);
        assert_eq!(oracle_pattern(&pattern("a a"), 2, 3, &cfg()).unwrap().value, 3);
        assert_eq!(oracle_pattern(&pattern("a b a"), 2, 2, &cfg()).unwrap().value, 2);
        let r = oracle_pattern(&pattern("a b a b"), 2, 3, &cfg()).unwrap();
        assert!(!contains_pattern(&seq_witness(&r), &pattern("a b a b")));
    }

    #[test]
    fn lambda_blocks_examples() {
        for n in 1..=4 {
            assert_eq!(oracle_lambda_blocks(n, 2, 1, &cfg()).unwrap().value, n);
        }
        assert!(oracle_lambda_blocks(4, 3, 4, &cfg()).unwrap().value >= 10);
        // 1 2 | 2 1 repeats a letter across the boundary and 1 2 | 1 2 alternates 4 times
        let r = oracle_lambda_blocks(2, 2, 2, &cfg()).unwrap();
        assert_eq!(r.value, 3);
        match &r.witness {
            Witness::Blocked(b) => {
                assert!(b.block_count() <= 2);
                assert!(is_ds(&b.flatten(), 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lambda_prime_examples() {
        for (n, m) in [(2, 2), (3, 2), (2, 3)] {
            assert_eq!(oracle_lambda_prime(n, m, m, &cfg()).unwrap().value, n * m);
        }
        let r = oracle_lambda_prime(3, 1, 3, &cfg()).unwrap();
        assert_eq!(r.value, 6);
        match &r.witness {
            Witness::Blocked(b) => {
                assert_eq!(b.len(), 6);
                assert!(cooccurrence_at_most(b, 1));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(oracle_lambda_prime(4, 1, 4, &cfg()).unwrap().value, 9);
    }

    #[test]
    fn ex_matrix_examples() {
        let r22 = all_ones(2, 2).unwrap();
        let r = oracle_ex_matrix(4, 4, &r22, &cfg()).unwrap();
        assert_eq!(r.value, 9);
        assert!(r.exhausted);
        match &r.witness {
            Witness::Matrix(m) => {
                assert_eq!(m.ones_count(), 9);
                assert!(!matrix_contains(m, &r22));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(oracle_ex_matrix(3, 3, &r22, &cfg()).unwrap().value, 6);
        assert_eq!(
            oracle_ex_matrix(3, 4, &all_ones(1, 1).unwrap(), &cfg()).unwrap().value,
            0
        );
        assert!(matches!(
            oracle_ex_matrix(6, 6, &r22, &cfg()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn lambda_prime_witness_maps_to_avoiding_matrix() {
        let r = oracle_lambda_prime(4, 2, 4, &cfg()).unwrap();
        let Witness::Blocked(b) = &r.witness else { panic!() };
        let m = blocked_to_matrix_with_rows(b, 4).unwrap();
        assert!(!matrix_contains(&m, &all_ones(2, 3).unwrap()));
        assert_eq!(m.ones_count(), r.value);
    }

    #[test]
    fn node_budget_marks_result_inexact() {
        let config = OracleConfig {
            node_budget: Some(10),
            ..cfg()
        };
        let r = oracle_lambda(4, 3, 2, &config).unwrap();
        assert!(!r.exhausted);
        let r = oracle_ex_matrix(4, 4, &all_ones(2, 2).unwrap(), &config).unwrap();
        assert!(!r.exhausted);
    }

    #[test]
    fn threads_do_not_change_results() {
        let par = OracleConfig { threads: 4, ..cfg() };
        for (n, s, j) in [(4, 3, 2), (3, 2, 2), (5, 2, 3), (4, 4, 3)] {
            let a = oracle_lambda(n, s, j, &cfg()).unwrap();
            let b = oracle_lambda(n, s, j, &par).unwrap();
            assert_eq!((a.value, &a.witness), (b.value, &b.witness), "n={n} s={s} j={j}");
        }
        let a = oracle_formation(3, 2, 3, 2, &cfg()).unwrap();
        let b = oracle_formation(3, 2, 3, 2, &par).unwrap();
        assert_eq!((a.value, a.witness), (b.value, b.witness));
    }
}
