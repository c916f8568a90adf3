//! Sequences over positive integer letters, blocked sequences, and their text
//! format.
//!
//! Text grammar: letters are whitespace-separated tokens that contain neither
//! whitespace nor `|`. A `|` separates blocks; a leading or trailing `|`
//! denotes an empty first or last block and `| |` an interior empty block.
//! When every token is a positive integer the integers are used as letter
//! ids; otherwise the tokens are treated as names and numbered `1, 2, ...` by
//! first occurrence.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter, identified by a positive integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(u32);

impl Letter {
    pub fn new(id: u32) -> Option<Self> {
        (id > 0).then_some(Letter(id))
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Builds a letter from an id the caller knows to be positive.
pub(crate) fn letter(id: u32) -> Letter {
    debug_assert!(id > 0);
    Letter(id)
}

/// An immutable finite sequence of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequence {
    tokens: Vec<Letter>,
}

impl Sequence {
    pub fn new(tokens: Vec<Letter>) -> Self {
        Sequence { tokens }
    }

    /// Builds a sequence from raw ids; `None` if any id is zero.
    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Option<Self> {
        ids.into_iter()
            .map(Letter::new)
            .collect::<Option<Vec<_>>>()
            .map(Sequence::new)
    }

    pub fn tokens(&self) -> &[Letter] {
        &self.tokens
    }

    pub fn ids(&self) -> Vec<u32> {
        self.tokens.iter().map(|l| l.id()).collect()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Distinct letters, in increasing id order.
    pub fn alphabet(&self) -> Vec<Letter> {
        let set: BTreeSet<Letter> = self.tokens.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet().len()
    }

    pub fn max_id(&self) -> u32 {
        self.tokens.iter().map(|l| l.id()).max().unwrap_or(0)
    }

    /// Keeps only the tokens whose letter satisfies `keep`.
    pub fn restrict<F: Fn(Letter) -> bool>(&self, keep: F) -> Sequence {
        Sequence::new(self.tokens.iter().copied().filter(|&l| keep(l)).collect())
    }

    /// Relabels letters `1..=A` in order of first occurrence.
    pub fn normalize(&self) -> Sequence {
        let mut map: HashMap<Letter, u32> = HashMap::new();
        let tokens = self
            .tokens
            .iter()
            .map(|l| {
                let next = map.len() as u32 + 1;
                letter(*map.entry(*l).or_insert(next))
            })
            .collect();
        Sequence { tokens }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalize() == *self
    }

    pub fn concat(&self, other: &Sequence) -> Sequence {
        let mut tokens = self.tokens.clone();
        tokens.extend_from_slice(&other.tokens);
        Sequence { tokens }
    }

    pub fn render(&self) -> String {
        render_tokens(&self.tokens)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromIterator<Letter> for Sequence {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Sequence::new(iter.into_iter().collect())
    }
}

fn render_tokens(tokens: &[Letter]) -> String {
    tokens.iter().map(|l| l.id().to_string()).collect::<Vec<_>>().join(" ")
}

/// A sequence partitioned into blocks of pairwise distinct letters. Empty
/// blocks are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockedSequence {
    blocks: Vec<Vec<Letter>>,
}

impl BlockedSequence {
    /// Fails if some block repeats a letter.
    pub fn new(blocks: Vec<Vec<Letter>>) -> Result<Self> {
        for (index, block) in blocks.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &l in block {
                if !seen.insert(l) {
                    return Err(Error::RepeatedInBlock {
                        block: index,
                        letter: l.id(),
                    });
                }
            }
        }
        Ok(BlockedSequence { blocks })
    }

    pub fn from_id_blocks(blocks: Vec<Vec<u32>>) -> Result<Self> {
        let blocks = blocks
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|id| Letter::new(id).ok_or_else(|| Error::Parse("letter id 0".to_string())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        BlockedSequence::new(blocks)
    }

    /// Wraps a sequence of distinct letters as a single block.
    pub fn single(seq: &Sequence) -> Result<Self> {
        BlockedSequence::new(vec![seq.tokens().to_vec()])
    }

    pub fn blocks(&self) -> &[Vec<Letter>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flatten(&self) -> Sequence {
        Sequence::new(self.blocks.iter().flatten().copied().collect())
    }

    pub fn alphabet(&self) -> Vec<Letter> {
        self.flatten().alphabet()
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.blocks.iter().map(|b| render_tokens(b)).collect();
        collapse_whitespace(&parts.join(" | "))
    }
}

impl fmt::Display for BlockedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A forbidden pattern `u`, kept in normalized form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternSequence {
    seq: Sequence,
}

impl PatternSequence {
    /// Normalizes `seq`; an empty pattern is rejected.
    pub fn new(seq: &Sequence) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(PatternSequence { seq: seq.normalize() })
    }

    /// The alternation `a b a b ...` with `len` tokens.
    pub fn alternation(len: usize) -> Result<Self> {
        let seq = Sequence::new((0..len).map(|i| letter(1 + (i % 2) as u32)).collect());
        PatternSequence::new(&seq)
    }

    pub fn sequence(&self) -> &Sequence {
        &self.seq
    }

    /// Number of tokens (`s`).
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of distinct letters (`r`).
    pub fn letter_count(&self) -> usize {
        self.seq.max_id() as usize
    }
}

/// Result of parsing sequence text: plain when no `|` occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Plain(Sequence),
    Blocked(BlockedSequence),
}

impl Parsed {
    /// The flattened sequence in either case.
    pub fn sequence(&self) -> Sequence {
        match self {
            Parsed::Plain(s) => s.clone(),
            Parsed::Blocked(b) => b.flatten(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Parsed::Plain(s) => s.render(),
            Parsed::Blocked(b) => b.render(),
        }
    }
}

fn collapse_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Parses sequence text. Blank input is an error.
pub fn parse_sequence(text: &str) -> Result<Parsed> {
    if text.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    let raw_blocks: Vec<Vec<&str>> = text.split('|').map(|part| part.split_whitespace().collect()).collect();

    let all_numeric = raw_blocks
        .iter()
        .flatten()
        .all(|tok| tok.bytes().all(|b| b.is_ascii_digit()));
    let mut names: HashMap<&str, u32> = HashMap::new();
    let mut blocks: Vec<Vec<Letter>> = Vec::with_capacity(raw_blocks.len());
    for raw in &raw_blocks {
        let mut block = Vec::with_capacity(raw.len());
        for &tok in raw {
            let l = if all_numeric {
                tok.parse::<u32>()
                    .ok()
                    .and_then(Letter::new)
                    .ok_or_else(|| Error::Parse(format!("malformed letter token {tok:?}")))?
            } else {
                let next = names.len() as u32 + 1;
                letter(*names.entry(tok).or_insert(next))
            };
            block.push(l);
        }
        blocks.push(block);
    }

    if blocks.len() == 1 {
        let tokens = blocks.into_iter().next().unwrap_or_default();
        Ok(Parsed::Plain(Sequence::new(tokens)))
    } else {
        Ok(Parsed::Blocked(BlockedSequence::new(blocks)?))
    }
}

/// Parses text that must be a plain sequence (blocks are flattened).
pub fn parse_plain(text: &str) -> Result<Sequence> {
    parse_sequence(text).map(|p| p.sequence())
}

/// Parses text as a blocked sequence; plain text is one block.
pub fn parse_blocked(text: &str) -> Result<BlockedSequence> {
    match parse_sequence(text)? {
        Parsed::Blocked(b) => Ok(b),
        Parsed::Plain(s) => BlockedSequence::single(&s),
    }
}
