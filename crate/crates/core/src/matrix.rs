//! 0-1 matrices, submatrix containment, the Kővári–Sós–Turán bound and the
//! incidence bridge between blocked sequences and matrices.
//!
//! Rows are stored as packed bitsets so that containment of all-ones patterns
//! reduces to AND-ing rows and counting bits.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::seq::{letter, BlockedSequence, Letter};

const WORD: usize = 64;

/// An `n × m` matrix of bits, row-major, each row a run of `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZeroOneMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl ZeroOneMatrix {
    /// All-zero matrix; both dimensions must be positive.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Matrix(format!("dimensions {rows}x{cols} must be positive")));
        }
        let stride = cols.div_ceil(WORD);
        Ok(ZeroOneMatrix {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        })
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Matrix("rows have different lengths".into()));
        }
        let mut m = ZeroOneMatrix::zeros(rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Parses one line per row of `0`/`1` characters. Blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty())
            .map(|line| {
                line.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(Error::Matrix(format!("unexpected character {other:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ZeroOneMatrix::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = ZeroOneMatrix::zeros(n, n)?;
        (0..n).for_each(|i| m.set(i, i, true));
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        self.bits[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let word = &mut self.bits[i * self.stride + j / WORD];
        if value {
            *word |= 1 << (j % WORD);
        } else {
            *word &= !(1 << (j % WORD));
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn ones_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn column_sums(&self) -> Vec<usize> {
        (0..self.cols)
            .map(|j| (0..self.rows).filter(|&i| self.get(i, j)).count())
            .collect()
    }

    pub fn is_all_ones(&self) -> bool {
        self.ones_count() == self.rows * self.cols
    }

    pub fn render(&self) -> String {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| if self.get(i, j) { '1' } else { '0' })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Debug for ZeroOneMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ZeroOneMatrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.render())
    }
}

impl fmt::Display for ZeroOneMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A forbidden matrix pattern; it has at least one 1-entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixPattern {
    matrix: ZeroOneMatrix,
    all_ones: bool,
}

impl MatrixPattern {
    pub fn new(matrix: ZeroOneMatrix) -> Result<Self> {
        if matrix.ones_count() == 0 {
            return Err(Error::Matrix("a pattern needs at least one 1-entry".into()));
        }
        let all_ones = matrix.is_all_ones();
        Ok(MatrixPattern { matrix, all_ones })
    }

    pub fn matrix(&self) -> &ZeroOneMatrix {
        &self.matrix
    }

    pub fn is_all_ones(&self) -> bool {
        self.all_ones
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols
    }
}

/// `R_{a,b}`, the `a × b` matrix of all ones.
pub fn all_ones(a: usize, b: usize) -> Result<MatrixPattern> {
    let mut m = ZeroOneMatrix::zeros(a, b)?;
    for i in 0..a {
        for j in 0..b {
            m.set(i, j, true);
        }
    }
    MatrixPattern::new(m)
}

/// True iff some choice of `P.rows()` rows and `P.cols()` columns of `a`, in
/// order, has a 1 wherever `p` has a 1.
pub fn matrix_contains(a: &ZeroOneMatrix, p: &MatrixPattern) -> bool {
    if p.rows() > a.rows || p.cols() > a.cols {
        return false;
    }
    if p.all_ones {
        let mut acc = vec![u64::MAX; a.stride];
        return all_ones_rows(a, p.rows(), p.cols(), 0, &mut acc);
    }
    (0..a.rows)
        .combinations(p.rows())
        .any(|chosen| greedy_columns(a, p.matrix(), &chosen))
}

// Chooses `need` more rows from `from..`, keeping the AND of chosen rows in
// `acc`; succeeds once the AND has at least `width` bits.
fn all_ones_rows(a: &ZeroOneMatrix, need: usize, width: usize, from: usize, acc: &mut [u64]) -> bool {
    let common: usize = acc.iter().map(|w| w.count_ones() as usize).sum();
    if common < width {
        return false;
    }
    if need == 0 {
        return true;
    }
    for i in from..=a.rows - need {
        let saved = acc.to_vec();
        for (dst, src) in acc.iter_mut().zip(a.row_words(i)) {
            *dst &= src;
        }
        if all_ones_rows(a, need - 1, width, i + 1, acc) {
            return true;
        }
        acc.copy_from_slice(&saved);
    }
    false
}

// For fixed rows, leftmost column matching is optimal.
fn greedy_columns(a: &ZeroOneMatrix, p: &ZeroOneMatrix, rows: &[usize]) -> bool {
    let mut col = 0;
    for v in 0..p.cols {
        loop {
            if col >= a.cols {
                return false;
            }
            let fits = rows.iter().enumerate().all(|(u, &i)| !p.get(u, v) || a.get(i, col));
            col += 1;
            if fits {
                break;
            }
        }
    }
    true
}

/// Kővári–Sós–Turán: `(b−1)^{1/a}·(n−a+1)·m^{1−1/a} + (a−1)·m`, an upper
/// bound on `ex(n, m, R_{a,b})`.
pub fn kst_bound(n: usize, m: usize, a: usize, b: usize) -> Result<f64> {
    if a == 0 || b == 0 || m == 0 {
        return Err(Error::InvalidParameter("a, b and m must be positive".into()));
    }
    if n < a {
        return Err(Error::InvalidParameter(format!("n = {n} must be at least a = {a}")));
    }
    let (n, m, a, b) = (n as f64, m as f64, a as f64, b as f64);
    Ok((b - 1.0).powf(1.0 / a) * (n - a + 1.0) * m.powf(1.0 - 1.0 / a) + (a - 1.0) * m)
}

/// Incidence matrix: one row per distinct letter (increasing id), one column
/// per block. Fails when there are no letters or no blocks.
pub fn blocked_to_matrix(bseq: &BlockedSequence) -> Result<ZeroOneMatrix> {
    let alphabet = bseq.alphabet();
    let mut m = ZeroOneMatrix::zeros(alphabet.len(), bseq.block_count())?;
    for (j, block) in bseq.blocks().iter().enumerate() {
        for l in block {
            let i = alphabet.binary_search(l).expect("letter is in the alphabet");
            m.set(i, j, true);
        }
    }
    Ok(m)
}

/// Incidence matrix with exactly `rows` rows, letter `i` in row `i − 1`. Rows
/// of letters that never occur stay zero.
pub fn blocked_to_matrix_with_rows(bseq: &BlockedSequence, rows: usize) -> Result<ZeroOneMatrix> {
    let mut m = ZeroOneMatrix::zeros(rows, bseq.block_count())?;
    for (j, block) in bseq.blocks().iter().enumerate() {
        for l in block {
            let i = l.id() as usize - 1;
            if i >= rows {
                return Err(Error::Matrix(format!("letter {l} has no row among {rows}")));
            }
            m.set(i, j, true);
        }
    }
    Ok(m)
}

/// Block `j` lists the letters `i + 1` with `M[i][j] = 1`, in increasing order.
pub fn matrix_to_blocked(m: &ZeroOneMatrix) -> BlockedSequence {
    let blocks = (0..m.cols)
        .map(|j| {
            (0..m.rows)
                .filter(|&i| m.get(i, j))
                .map(|i| letter(i as u32 + 1))
                .collect()
        })
        .collect();
    BlockedSequence::new(blocks).expect("matrix columns never repeat a letter")
}

/// Number of blocks containing both `a` and `b`.
pub fn pair_block_cooccurrence(bseq: &BlockedSequence, a: Letter, b: Letter) -> Result<usize> {
    if a == b {
        return Err(Error::SameLetter(a.id()));
    }
    Ok(bseq
        .blocks()
        .iter()
        .filter(|block| block.contains(&a) && block.contains(&b))
        .count())
}

/// Largest block co-occurrence over all pairs of distinct letters.
pub fn max_pair_cooccurrence(bseq: &BlockedSequence) -> usize {
    let alphabet = bseq.alphabet();
    let mut best = 0;
    for (x, &a) in alphabet.iter().enumerate() {
        for &b in &alphabet[x + 1..] {
            let c = pair_block_cooccurrence(bseq, a, b).expect("distinct letters");
            best = best.max(c);
        }
    }
    best
}

/// No pair of letters shares more than `s` blocks. Adjacent equal letters
/// across block boundaries are allowed here.
pub fn cooccurrence_at_most(bseq: &BlockedSequence, s: usize) -> bool {
    max_pair_cooccurrence(bseq) <= s
}
