//! Predicates on sequences: sparsity, alternations, Davenport-Schinzel order,
//! formation lengths and pattern containment.
//!
//! Everything here favors plain scans that are easy to audit. The greedy
//! formation count has an exhaustive twin, [`brute_formation_length`], used to
//! validate it.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::seq::{Letter, PatternSequence, Sequence};

/// Default cap on the restriction length accepted by [`brute_formation_length`].
pub const BRUTE_FORMATION_CAP: usize = 24;

/// Default cap on the number of letter subsets [`max_formation_length`] visits.
pub const SUBSET_CAP: u128 = 1_000_000;

/// A set of `r` distinct letters whose formations are counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormationQuery {
    letters: Vec<Letter>,
}

impl FormationQuery {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidParameter(
                "a formation query needs at least one letter".into(),
            ));
        }
        let distinct: BTreeSet<_> = letters.iter().collect();
        if distinct.len() != letters.len() {
            return Err(Error::InvalidParameter(
                "formation query letters must be distinct".into(),
            ));
        }
        Ok(FormationQuery { letters })
    }

    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Result<Self> {
        let letters = ids
            .into_iter()
            .map(|id| Letter::new(id).ok_or_else(|| Error::InvalidParameter("letter 0".into())))
            .collect::<Result<Vec<_>>>()?;
        FormationQuery::new(letters)
    }

    pub fn r(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    fn slot_of(&self, l: Letter) -> Option<usize> {
        self.letters.iter().position(|&m| m == l)
    }
}

/// True iff every `j` consecutive tokens are pairwise distinct, i.e. equal
/// letters sit at distance at least `j`.
pub fn is_sparse(seq: &Sequence, j: usize) -> bool {
    let mut last: HashMap<Letter, usize> = HashMap::new();
    for (i, &l) in seq.tokens().iter().enumerate() {
        if let Some(prev) = last.insert(l, i) {
            if i - prev < j {
                return false;
            }
        }
    }
    true
}

/// True iff no two adjacent tokens are equal.
pub fn has_no_adjacent_repeats(seq: &Sequence) -> bool {
    seq.tokens().windows(2).all(|w| w[0] != w[1])
}

/// Length of the longest strict alternation `a b a b ...` (or `b a b a ...`)
/// contained in `seq`.
pub fn alternation_length(seq: &Sequence, a: Letter, b: Letter) -> Result<usize> {
    if a == b {
        return Err(Error::SameLetter(a.id()));
    }
    Ok(alternation_unchecked(seq.tokens(), a, b))
}

// Number of runs in the restriction to {a, b}.
fn alternation_unchecked(tokens: &[Letter], a: Letter, b: Letter) -> usize {
    let mut runs = 0;
    let mut last = None;
    for &l in tokens {
        if (l == a || l == b) && last != Some(l) {
            runs += 1;
            last = Some(l);
        }
    }
    runs
}

/// Longest alternation over all pairs of distinct letters; 0 with fewer than
/// two letters.
pub fn max_alternation(seq: &Sequence) -> usize {
    let alphabet = seq.alphabet();
    let mut best = 0;
    for (i, &a) in alphabet.iter().enumerate() {
        for &b in &alphabet[i + 1..] {
            best = best.max(alternation_unchecked(seq.tokens(), a, b));
        }
    }
    best
}

/// Davenport-Schinzel of order `s`: no adjacent repeats and no alternation of
/// length `s + 2`.
pub fn is_ds(seq: &Sequence, s: usize) -> bool {
    has_no_adjacent_repeats(seq) && max_alternation(seq) <= s + 1
}

/// Greedy left-to-right formation count on exactly the query letters: collect
/// letters of the current permutation and count a permutation each time all
/// `r` have been seen. Letters absent from `seq` keep the count at 0.
pub fn formation_length(seq: &Sequence, q: &FormationQuery) -> usize {
    let mut greedy = GreedyFormation::new(q.r());
    for &l in seq.tokens() {
        if let Some(slot) = q.slot_of(l) {
            greedy.push(slot);
        }
    }
    greedy.count
}

struct GreedyFormation {
    seen: Vec<bool>,
    seen_count: usize,
    count: usize,
}

impl GreedyFormation {
    fn new(r: usize) -> Self {
        GreedyFormation {
            seen: vec![false; r],
            seen_count: 0,
            count: 0,
        }
    }

    fn push(&mut self, slot: usize) {
        if !self.seen[slot] {
            self.seen[slot] = true;
            self.seen_count += 1;
            if self.seen_count == self.seen.len() {
                self.count += 1;
                self.seen_count = 0;
                self.seen.iter_mut().for_each(|s| *s = false);
            }
        }
    }
}

/// Exact formation length by exhaustive search over embeddings.
///
/// Every permutation is placed by choosing one occurrence of each query
/// letter after the end of the previous permutation; all such choices are
/// tried, memoized on the start position. No leftmost or greedy choice is
/// assumed.
pub fn brute_formation_length(seq: &Sequence, q: &FormationQuery, cap: usize) -> Result<usize> {
    let restricted = seq.restrict(|l| q.slot_of(l).is_some());
    if restricted.len() > cap {
        return Err(Error::RestrictionTooLong {
            len: restricted.len(),
            cap,
        });
    }
    let slots: Vec<usize> = restricted
        .tokens()
        .iter()
        .map(|&l| q.slot_of(l).expect("restricted to query letters"))
        .collect();
    let mut memo = vec![None; slots.len() + 1];
    Ok(best_from(&slots, q.r(), 0, &mut memo))
}

fn best_from(slots: &[usize], r: usize, start: usize, memo: &mut [Option<usize>]) -> usize {
    if let Some(v) = memo[start] {
        return v;
    }
    let mut best = 0;
    let mut chosen = Vec::with_capacity(r);
    place_permutation(slots, r, start, &mut chosen, &mut |end| {
        best = best.max(1 + best_from(slots, r, end + 1, memo));
    });
    memo[start] = Some(best);
    best
}

// Enumerates every way to pick one position >= start for each slot 0..r,
// reporting the largest chosen position.
fn place_permutation<F: FnMut(usize)>(
    slots: &[usize],
    r: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    report: &mut F,
) {
    let slot = chosen.len();
    if slot == r {
        report(*chosen.iter().max().expect("r >= 1"));
        return;
    }
    for pos in start..slots.len() {
        if slots[pos] == slot {
            chosen.push(pos);
            place_permutation(slots, r, start, chosen, report);
            chosen.pop();
        }
    }
}

/// Largest formation length over all `r`-subsets of the alphabet, 0 when the
/// alphabet has fewer than `r` letters.
pub fn max_formation_length(seq: &Sequence, r: usize) -> Result<usize> {
    max_formation_length_capped(seq, r, SUBSET_CAP)
}

pub fn max_formation_length_capped(seq: &Sequence, r: usize, subset_cap: u128) -> Result<usize> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let alphabet = seq.alphabet();
    if alphabet.len() < r {
        return Ok(0);
    }
    let count = binomial(alphabet.len() as u64, r as u64);
    if count > subset_cap {
        return Err(Error::SubsetCap {
            what: "formation subsets",
            count,
            cap: subset_cap,
        });
    }

    let index: HashMap<Letter, usize> = alphabet.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut positions = vec![Vec::new(); alphabet.len()];
    for (pos, l) in seq.tokens().iter().enumerate() {
        positions[index[l]].push(pos);
    }

    let mut best = 0;
    let mut heads = vec![0usize; r];
    for subset in (0..alphabet.len()).combinations(r) {
        // An upper bound: no letter can take part in more permutations than
        // it has occurrences.
        let ceiling = subset.iter().map(|&i| positions[i].len()).min().unwrap_or(0);
        if ceiling <= best {
            continue;
        }
        heads.iter_mut().for_each(|h| *h = 0);
        let mut greedy = GreedyFormation::new(r);
        // k-way merge of the occurrence lists
        loop {
            let mut pick: Option<(usize, usize)> = None;
            for (slot, &letter) in subset.iter().enumerate() {
                if let Some(&pos) = positions[letter].get(heads[slot]) {
                    if pick.is_none_or(|(_, p)| pos < p) {
                        pick = Some((slot, pos));
                    }
                }
            }
            let Some((slot, _)) = pick else { break };
            heads[slot] += 1;
            greedy.push(slot);
        }
        best = best.max(greedy.count);
    }
    Ok(best)
}

/// `max_formation_length(seq, r) < s`.
pub fn avoids_all_formations(seq: &Sequence, r: usize, s: usize) -> Result<bool> {
    Ok(max_formation_length(seq, r)? < s)
}

/// True iff some injective relabeling of `u` occurs as a subsequence of `seq`.
///
/// Backtracks over letter assignments while scanning left to right: once a
/// pattern letter is assigned, its next occurrence is matched leftmost;
/// unassigned pattern letters try the candidate letters in increasing id
/// order.
pub fn contains_pattern(seq: &Sequence, u: &PatternSequence) -> bool {
    if u.len() > seq.len() {
        return false;
    }
    let alphabet = seq.alphabet();
    let mut positions: HashMap<Letter, Vec<usize>> = HashMap::new();
    for (pos, &l) in seq.tokens().iter().enumerate() {
        positions.entry(l).or_default().push(pos);
    }
    let pattern: Vec<usize> = u.sequence().ids().iter().map(|&id| id as usize - 1).collect();
    let mut embed = Embedding {
        pattern: &pattern,
        alphabet: &alphabet,
        positions: &positions,
        assigned: vec![None; u.letter_count()],
    };
    embed.search(0, 0)
}

struct Embedding<'a> {
    pattern: &'a [usize],
    alphabet: &'a [Letter],
    positions: &'a HashMap<Letter, Vec<usize>>,
    assigned: Vec<Option<Letter>>,
}

impl Embedding<'_> {
    fn next_occurrence(&self, l: Letter, from: usize) -> Option<usize> {
        let occ = &self.positions[&l];
        occ.get(occ.partition_point(|&p| p < from)).copied()
    }

    fn search(&mut self, i: usize, from: usize) -> bool {
        if i == self.pattern.len() {
            return true;
        }
        let slot = self.pattern[i];
        if let Some(l) = self.assigned[slot] {
            return match self.next_occurrence(l, from) {
                Some(p) => self.search(i + 1, p + 1),
                None => false,
            };
        }
        for &l in self.alphabet {
            if self.assigned.contains(&Some(l)) {
                continue;
            }
            if let Some(p) = self.next_occurrence(l, from) {
                self.assigned[slot] = Some(l);
                if self.search(i + 1, p + 1) {
                    return true;
                }
                self.assigned[slot] = None;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::parse_plain;
    use proptest::prelude::*;

    fn seq(text: &str) -> Sequence {
        parse_plain(text).unwrap()
    }

    fn l(id: u32) -> Letter {
        Letter::new(id).unwrap()
    }

    fn query(ids: &[u32]) -> FormationQuery {
        FormationQuery::from_ids(ids.iter().copied()).unwrap()
    }

    fn pattern(text: &str) -> PatternSequence {
        PatternSequence::new(&seq(text)).unwrap()
    }

    const T_2_3_2: &str = "1 2 1 2 1 3 1 3 2 3 2 3";

    #[test]
    fn sparsity_examples() {
        assert!(is_sparse(&seq("1 2 1 2"), 2));
        assert!(!is_sparse(&seq("1 1"), 2));
        assert!(is_sparse(&seq(T_2_3_2), 2));
        assert!(!is_sparse(&seq(T_2_3_2), 3));
        assert!(is_sparse(&seq("1 1"), 1));
    }

    #[test]
    fn alternation_examples() {
        assert_eq!(alternation_length(&seq("1 2 1 2 1"), l(1), l(2)), Ok(5));
        assert_eq!(alternation_length(&seq("1 1 2 2"), l(1), l(2)), Ok(2));
        assert_eq!(alternation_length(&seq("1 2 3 4 3 2 1 2 3 4"), l(1), l(4)), Ok(4));
        assert_eq!(alternation_length(&seq("3 3"), l(1), l(2)), Ok(0));
        assert_eq!(alternation_length(&seq("1 2"), l(2), l(2)), Err(Error::SameLetter(2)));
    }

    #[test]
    fn max_alternation_examples() {
        assert_eq!(max_alternation(&seq("1 2 1 2")), 4);
        assert_eq!(max_alternation(&seq("1")), 0);
        assert_eq!(max_alternation(&seq("1 2 1 3 1")), 3);
    }

    #[test]
    fn ds_examples() {
        assert!(is_ds(&seq("1 2 1 3 1"), 2));
        assert!(!is_ds(&seq("1 1"), 2));
        assert!(!is_ds(&seq("1 1"), 100));
        assert!(!is_ds(&seq("1 2 1 2 1"), 2));
    }

    #[test]
    fn formation_length_examples() {
        assert_eq!(formation_length(&seq("1 2 1 2 1 2"), &query(&[1, 2])), 3);
        assert_eq!(formation_length(&seq("1 2 3"), &query(&[1, 2])), 1);
        assert_eq!(formation_length(&seq("1 2 1 2 1 1 2 2"), &query(&[1, 2])), 3);
        assert_eq!(formation_length(&seq("1 1 1"), &query(&[1, 2])), 0);
    }

    #[test]
    fn brute_formation_examples() {
        let cap = BRUTE_FORMATION_CAP;
        assert_eq!(brute_formation_length(&seq("1 2 1 2 1 2"), &query(&[1, 2]), cap), Ok(3));
        assert_eq!(brute_formation_length(&seq("1 2 2 1"), &query(&[1, 2]), cap), Ok(2));
        assert_eq!(brute_formation_length(&seq("2 2 2"), &query(&[1, 2]), cap), Ok(0));
        assert_eq!(
            brute_formation_length(&seq("1 2 1 2 1"), &query(&[1, 2]), 4),
            Err(Error::RestrictionTooLong { len: 5, cap: 4 })
        );
    }

    #[test]
    fn max_formation_examples() {
        assert_eq!(max_formation_length(&seq(T_2_3_2), 2), Ok(3));
        assert_eq!(max_formation_length(&seq("1 2 3"), 3), Ok(1));
        assert_eq!(max_formation_length(&seq("1 2"), 3), Ok(0));
        assert_eq!(avoids_all_formations(&seq(T_2_3_2), 2, 4), Ok(true));
        assert_eq!(avoids_all_formations(&seq(T_2_3_2), 2, 3), Ok(false));
        assert!(matches!(
            max_formation_length_capped(&seq("1 2 3 4 5"), 2, 5),
            Err(Error::SubsetCap { count: 10, .. })
        ));
    }

    #[test]
    fn formation_query_validation() {
        assert!(FormationQuery::from_ids([1, 1]).is_err());
        assert!(FormationQuery::from_ids([]).is_err());
    }

    #[test]
    fn pattern_examples() {
        assert!(contains_pattern(&seq("1 2 1 2"), &pattern("a b a b")));
        assert!(!contains_pattern(&seq("1 2 3"), &pattern("a a")));
        assert!(contains_pattern(&seq("5 3 9 3 5"), &pattern("a b a")));
        assert!(!contains_pattern(&seq("1 2 2 1"), &pattern("a b a b")));
        // injectivity: "a b" needs two different letters
        assert!(!contains_pattern(&seq("1 1 1"), &pattern("a b")));
    }

    // Every (2,4)-formation contains every (2,2)-formation; in particular abab.
    #[test]
    fn two_four_formations_contain_abab() {
        let perms = [[1u32, 2], [2, 1]];
        for choice in 0..16u32 {
            let ids: Vec<u32> = (0..4).flat_map(|k| perms[((choice >> k) & 1) as usize]).collect();
            let s = Sequence::from_ids(ids).unwrap();
            assert!(contains_pattern(&s, &pattern("a b a b")), "{s}");
        }
    }

    fn arb_seq(alphabet: u32, max_len: usize) -> impl Strategy<Value = Sequence> {
        prop::collection::vec(1..=alphabet, 0..max_len).prop_map(|ids| Sequence::from_ids(ids).unwrap())
    }

    // Direct brute-force alternation oracle: longest subsequence of the
    // {a,b}-restriction with no two equal neighbours, by DP over positions.
    fn alternation_oracle(s: &Sequence, a: Letter, b: Letter) -> usize {
        let r: Vec<Letter> = s.tokens().iter().copied().filter(|&x| x == a || x == b).collect();
        let mut best_end = vec![0usize; r.len()];
        for i in 0..r.len() {
            best_end[i] = 1 + (0..i).filter(|&k| r[k] != r[i]).map(|k| best_end[k]).max().unwrap_or(0);
        }
        best_end.into_iter().max().unwrap_or(0)
    }

    proptest! {
        #[test]
        fn greedy_matches_brute(s in arb_seq(4, 18), r in 1usize..=3) {
            let ids: Vec<u32> = (1..=r as u32).collect();
            let q = FormationQuery::from_ids(ids).unwrap();
            prop_assert_eq!(
                formation_length(&s, &q),
                brute_formation_length(&s, &q, BRUTE_FORMATION_CAP).unwrap()
            );
        }

        #[test]
        fn formation_length_monotone_under_append(s in arb_seq(4, 16), t in arb_seq(4, 6)) {
            let q = FormationQuery::from_ids([1, 3]).unwrap();
            prop_assert!(formation_length(&s.concat(&t), &q) >= formation_length(&s, &q));
        }

        #[test]
        fn sparsity_is_downward_closed(s in arb_seq(5, 20), j in 1usize..6) {
            if is_sparse(&s, j) {
                for smaller in 1..=j {
                    prop_assert!(is_sparse(&s, smaller));
                }
            }
        }

        #[test]
        fn alternation_matches_dp(s in arb_seq(3, 20)) {
            prop_assert_eq!(alternation_length(&s, l(1), l(2)).unwrap(), alternation_oracle(&s, l(1), l(2)));
        }

        #[test]
        fn alternation_pattern_iff_max_alternation(s in arb_seq(4, 14), len in 2usize..8) {
            let u = PatternSequence::alternation(len).unwrap();
            prop_assert_eq!(contains_pattern(&s, &u), max_alternation(&s) >= len);
        }

        #[test]
        fn ds_iff_no_repeats_and_no_long_alternation(s in arb_seq(4, 14), order in 1usize..5) {
            let u = PatternSequence::alternation(order + 2).unwrap();
            prop_assert_eq!(
                is_ds(&s, order),
                has_no_adjacent_repeats(&s) && !contains_pattern(&s, &u)
            );
        }
    }
}
