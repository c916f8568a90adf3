//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sparse_formations::checkers::{
    brute_formation_length, formation_length, is_ds, is_sparse, max_formation_length, FormationQuery,
    BRUTE_FORMATION_CAP,
};
use sparse_formations::combinatorics::{binomial, factorial};
use sparse_formations::constructions::{
    build_base, build_block_witness, build_formation_witness, choose_params, greedy_edge_coloring, lift_step,
    pad_to_alphabet, EdgeColoring, Hypergraph,
};
use sparse_formations::matrix::{all_ones, kst_bound};
use sparse_formations::oracles::{
    ds_ceiling, oracle_ex_matrix, oracle_lambda, oracle_lambda_blocks, oracle_lambda_prime, oracle_pattern,
    OracleConfig,
};
use sparse_formations::{Error, Letter, PatternSequence, Sequence};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.1?}, limit {limit:?}"))
}

/// Every witness of the construction grid with the hypergraphs and colorings
/// used to lift it.
struct GridCase {
    r: usize,
    q: usize,
    x: usize,
    t: usize,
    seq: Sequence,
    letter_count: usize,
    ceiling: usize,
    lifts: Vec<(Hypergraph, EdgeColoring)>,
    final_hypergraph: Hypergraph,
}

fn grid() -> Vec<GridCase> {
    let mut cases = Vec::new();
    for r in 2..=3 {
        for x in r + 1..=7 {
            for t in 2..=4 {
                let (seq, mut trace) = build_base(r, x, t).unwrap();
                let mut lifts = Vec::new();
                let mut seq = seq;
                for q in r..=r + 2 {
                    if q > r {
                        let step = lift_step(&trace).unwrap();
                        lifts.push((step.hypergraph, step.coloring));
                        trace = step.trace;
                        seq = step.sequence;
                    }
                    cases.push(GridCase {
                        r,
                        q,
                        x,
                        t,
                        seq: seq.clone(),
                        letter_count: trace.letter_count(),
                        ceiling: trace.formation_ceiling(),
                        lifts: lifts.clone(),
                        final_hypergraph: trace.troop_hypergraph(),
                    });
                }
            }
        }
    }
    cases
}

fn oracle_config() -> OracleConfig {
    OracleConfig::default()
}

fn criterion_1(values: &mut BTreeMap<(usize, usize), usize>) -> Outcome {
    let start = Instant::now();
    for n in 2..=4 {
        for (s, expected) in [(1, n), (2, 2 * n - 1)] {
            let result = oracle_lambda(n, s, 2, &oracle_config()).map_err(|e| e.to_string())?;
            ensure(result.exhausted, || format!("lambda({n},{s},2) not exhausted"))?;
            ensure(result.value == expected, || {
                format!("lambda({n},{s},2) = {}, expected {expected}", result.value)
            })?;
            values.insert((n, s), result.value);
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("6 instances exact in {:.2?}", start.elapsed()))
}

fn criterion_2(values: &mut BTreeMap<(usize, usize), usize>) -> Outcome {
    for (n, s) in [(3, 3), (4, 3)] {
        let result = oracle_lambda(n, s, 2, &oracle_config()).map_err(|e| e.to_string())?;
        ensure(result.exhausted, || format!("lambda({n},{s},2) not exhausted"))?;
        values.insert((n, s), result.value);
    }
    for (&(n, s), &value) in values.iter() {
        let ceiling = ds_ceiling(n, s);
        ensure(value as u128 <= ceiling, || {
            format!("lambda({n},{s}) = {value} above ceiling {ceiling}")
        })?;
    }
    let listed = values.iter().map(|((n, s), v)| format!("({n},{s})={v}")).join(" ");
    Ok(listed)
}

fn criterion_3(cases: &[GridCase]) -> Outcome {
    let start = Instant::now();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|c| {
            let tag = format!("r={} q={} x={} t={}", c.r, c.q, c.x, c.t);
            let expected_len = c.q as u128 * c.t as u128 * binomial(c.x as u64, c.r as u64);
            let letter_cap = factorial(c.q as u64).pow(c.r as u32 - 1) * c.x as u128;
            let formation = match max_formation_length(&c.seq, c.r) {
                Ok(v) => v,
                Err(e) => return Some(format!("{tag}: {e}")),
            };
            let problems = [
                (c.seq.len() as u128 != expected_len, "length"),
                (!is_sparse(&c.seq, c.q), "not q-sparse"),
                (is_sparse(&c.seq, c.q + 1), "(q+1)-sparse"),
                (c.letter_count as u128 > letter_cap, "letter count"),
                (c.seq.alphabet_size() != c.letter_count, "alphabet"),
                (formation >= c.ceiling, "formation length"),
                (
                    c.final_hypergraph.max_pairwise_intersection() > c.r - 1,
                    "troop intersections",
                ),
                (
                    c.lifts.iter().any(|(h, _)| h.max_pairwise_intersection() > c.r - 1),
                    "lift intersections",
                ),
            ];
            let bad: Vec<&str> = problems.iter().filter(|(b, _)| *b).map(|(_, m)| *m).collect();
            (!bad.is_empty()).then(|| format!("{tag}: {}", bad.join(", ")))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "{} witnesses, zero failures in {:.2?}",
        cases.len(),
        start.elapsed()
    ))
}

fn compare_greedy(seq: &Sequence, query: &FormationQuery) -> Result<(), String> {
    let greedy = formation_length(seq, query);
    let brute = brute_formation_length(seq, query, BRUTE_FORMATION_CAP).map_err(|e| e.to_string())?;
    ensure(greedy == brute, || {
        format!(
            "{} on {:?}: greedy {greedy}, brute {brute}",
            seq.render(),
            query.letters()
        )
    })
}

fn criterion_4(cases: &[GridCase]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let alphabet = rng.gen_range(1..=5u32);
        let len = rng.gen_range(0..=20);
        let ids: Vec<u32> = (0..len).map(|_| rng.gen_range(1..=alphabet)).collect();
        let seq = Sequence::from_ids(ids).unwrap();
        let mut letters: Vec<u32> = (1..=alphabet).collect();
        letters.shuffle(&mut rng);
        let r = rng.gen_range(1..=alphabet as usize);
        let query = FormationQuery::from_ids(letters[..r].iter().copied()).unwrap();
        compare_greedy(&seq.restrict(|l| query.letters().contains(&l)), &query)?;
    }

    // Restrictions of the grid witnesses to r-subsets, as long as they stay
    // within the exhaustive cap.
    let restrictions: usize = cases
        .par_iter()
        .map(|c| -> Result<usize, String> {
            let mut positions: BTreeMap<Letter, Vec<usize>> = BTreeMap::new();
            for (i, l) in c.seq.tokens().iter().enumerate() {
                positions.entry(*l).or_default().push(i);
            }
            let short: Vec<(Letter, usize)> = positions
                .iter()
                .map(|(l, p)| (*l, p.len()))
                .filter(|&(_, k)| k <= BRUTE_FORMATION_CAP)
                .collect();
            let mut checked = 0;
            for subset in short.iter().combinations(c.r) {
                if subset.iter().map(|(_, k)| k).sum::<usize>() > BRUTE_FORMATION_CAP {
                    continue;
                }
                let letters: Vec<Letter> = subset.iter().map(|(l, _)| *l).collect();
                let query = FormationQuery::new(letters.clone()).unwrap();
                compare_greedy(&c.seq.restrict(|l| letters.contains(&l)), &query)?;
                checked += 1;
            }
            Ok(checked)
        })
        .collect::<Result<Vec<usize>, String>>()?
        .into_iter()
        .sum();
    Ok(format!(
        "500 random sequences and {restrictions} grid restrictions agree"
    ))
}

fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, k: usize, y: usize) -> Hypergraph {
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let vertices: Vec<u32> = (1..=n as u32).collect();
    for _ in 0..rng.gen_range(1..=40) {
        let mut edge: Vec<u32> = vertices.choose_multiple(rng, k).copied().collect();
        edge.sort_unstable();
        let fits = edges
            .iter()
            .all(|e| e != &edge && e.iter().filter(|v| edge.contains(v)).count() <= y);
        if fits {
            edges.push(edge);
        }
    }
    Hypergraph::new(n, k, edges).unwrap()
}

fn coloring_violations(h: &Hypergraph, c: &EdgeColoring) -> Option<String> {
    let conflicts = c.conflicts(h);
    let budget = h.color_budget(c.y);
    if !conflicts.is_empty() {
        Some(format!("{} conflicting edge pairs", conflicts.len()))
    } else if c.color_count as f64 > budget {
        Some(format!("{} colors above budget {budget}", c.color_count))
    } else {
        None
    }
}

fn criterion_5(cases: &[GridCase]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut random = 0;
    while random < 200 {
        let k = rng.gen_range(2..=5);
        let n = rng.gen_range(k..=12);
        for y in 1..k {
            if random == 200 {
                break;
            }
            let h = random_hypergraph(&mut rng, n, k, y);
            let coloring = greedy_edge_coloring(&h, y).map_err(|e| e.to_string())?;
            if let Some(v) = coloring_violations(&h, &coloring) {
                return Err(format!("random n={n} k={k} y={y}: {v}"));
            }
            random += 1;
        }
    }
    let mut lifted = 0;
    for c in cases {
        // Each grid case repeats the lifts of its predecessors; check only the newest.
        if let Some((h, coloring)) = c.lifts.last().filter(|_| c.q > c.r) {
            if let Some(v) = coloring_violations(h, coloring) {
                return Err(format!("lift r={} q={} x={} t={}: {v}", c.r, c.q, c.x, c.t));
            }
            lifted += 1;
        }
    }
    Ok(format!(
        "{random} random hypergraphs and {lifted} lift hypergraphs, zero violations"
    ))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut listed = Vec::new();
    for n in 2..=4 {
        for s in 1..=2 {
            let prime = oracle_lambda_prime(n, s, n, &oracle_config()).map_err(|e| e.to_string())?;
            let ex =
                oracle_ex_matrix(n, n, &all_ones(2, s + 1).unwrap(), &oracle_config()).map_err(|e| e.to_string())?;
            ensure(prime.exhausted && ex.exhausted, || format!("n={n} s={s} not exhausted"))?;
            ensure(prime.value == ex.value, || {
                format!("n={n} s={s}: lambda' = {}, ex = {}", prime.value, ex.value)
            })?;
            listed.push(format!("({n},{s})={}", ex.value));
        }
    }
    within(start.elapsed(), Duration::from_secs(600))?;
    Ok(format!("{} in {:.2?}", listed.join(" "), start.elapsed()))
}

fn criterion_7() -> Outcome {
    let mut listed = Vec::new();
    for (n, expected) in [(3, 6), (4, 9)] {
        let result = oracle_ex_matrix(n, n, &all_ones(2, 2).unwrap(), &oracle_config()).map_err(|e| e.to_string())?;
        let bound = kst_bound(n, n, 2, 2).map_err(|e| e.to_string())?;
        ensure(result.exhausted && result.value == expected, || {
            format!("ex({n},{n},R22) = {}, expected {expected}", result.value)
        })?;
        ensure(result.value as f64 <= bound, || {
            format!("ex({n},{n},R22) above {bound}")
        })?;
        listed.push(format!("ex({n},{n},R22)={} <= {bound:.3}", result.value));
    }
    Ok(listed.join(", "))
}

fn criterion_8() -> Outcome {
    for n in 3..=6 {
        for s in 1..=6 {
            let b = build_block_witness(n, s);
            ensure(b.block_count() == n, || {
                format!("({n},{s}): {} blocks", b.block_count())
            })?;
            ensure(
                b.blocks()
                    .iter()
                    .filter(|bl| !bl.is_empty())
                    .all(|bl| bl.len() + 1 >= n),
                || format!("({n},{s}): a block lost more than one letter"),
            )?;
            if s <= n {
                ensure(b.len() + n >= n * s, || format!("({n},{s}): length {}", b.len()))?;
            }
            ensure(is_ds(&b.flatten(), s), || format!("({n},{s}): not DS"))?;
        }
    }
    Ok("24 witnesses, zero failures".into())
}

fn criterion_9() -> Outcome {
    let u = PatternSequence::alternation(4).unwrap();
    let pattern = oracle_pattern(&u, 2, 3, &oracle_config()).map_err(|e| e.to_string())?;
    let lambda = oracle_lambda(3, 2, 2, &oracle_config()).map_err(|e| e.to_string())?;
    ensure(pattern.value == 5 && lambda.value == 5, || {
        format!("Ex(abab,2,3) = {}, lambda(3,2,2) = {}", pattern.value, lambda.value)
    })?;
    for n in 2..=4 {
        for s in 1..=2 {
            let blocks = oracle_lambda_blocks(n, s, n, &oracle_config()).map_err(|e| e.to_string())?;
            let prime = oracle_lambda_prime(n, s, n, &oracle_config()).map_err(|e| e.to_string())?;
            ensure(blocks.value <= prime.value, || {
                format!("n={n} s={s}: lambda blocks {} > lambda' {}", blocks.value, prime.value)
            })?;
        }
    }
    Ok("Ex(abab,2,3) = lambda(3,2,2) = 5; block values dominated on 6 instances".into())
}

fn criterion_10() -> Outcome {
    let mut listed = Vec::new();
    for n in [24, 48] {
        for q in [2, 3] {
            let (r, s) = (2, n);
            let params = match choose_params(n, s, 1.0, r, q) {
                Ok(p) => p,
                Err(Error::Infeasible(_)) => {
                    // x = floor(n / (4·q!)) falls below r; only a refusal is sound.
                    ensure(n / (4 * factorial(q as u64) as usize) < r, || {
                        format!("n={n} q={q} refused although x >= r")
                    })?;
                    listed.push(format!("n={n} q={q}: infeasible (x < r)"));
                    continue;
                }
                Err(e) => return Err(e.to_string()),
            };
            let ceiling = 2 * binomial(params.x as u64 - 1, r as u64 - 1) as usize + params.t + 1;
            ensure(ceiling <= s, || format!("n={n} q={q}: ceiling {ceiling} > {s}"))?;
            ensure(factorial(q as u64) * params.x as u128 <= n as u128, || {
                format!("n={n} q={q}: letter budget")
            })?;
            let (seq, trace) = build_formation_witness(r, q, params.x, params.t).map_err(|e| e.to_string())?;
            let expected_len = q * params.t * binomial(params.x as u64, r as u64) as usize;
            let formation = max_formation_length(&seq, r).map_err(|e| e.to_string())?;
            ensure(seq.len() == expected_len, || format!("n={n} q={q}: length"))?;
            ensure(is_sparse(&seq, q) && !is_sparse(&seq, q + 1), || {
                format!("n={n} q={q}: sparsity")
            })?;
            ensure(formation < trace.formation_ceiling(), || {
                format!("n={n} q={q}: formation")
            })?;
            let padded = pad_to_alphabet(&seq, n).map_err(|e| e.to_string())?;
            ensure(padded.alphabet_size() == n, || format!("n={n} q={q}: padded alphabet"))?;
            let old: Vec<Letter> = seq.alphabet();
            let restricted = padded.restrict(|l| old.contains(&l));
            let after = max_formation_length(&restricted, r).map_err(|e| e.to_string())?;
            ensure(after == formation, || {
                format!("n={n} q={q}: padding changed formation length")
            })?;
            listed.push(format!("n={n} q={q}: x={} t={}", params.x, params.t));
        }
    }
    Ok(listed.join("; "))
}

fn main() -> ExitCode {
    let cases = grid();
    let mut lambda_values = BTreeMap::new();
    let results: Vec<(&str, Outcome)> = vec![
        ("oracle calibration", criterion_1(&mut lambda_values)),
        ("DS ceiling", criterion_2(&mut lambda_values)),
        ("construction invariant grid", criterion_3(&cases)),
        ("greedy formation correctness", criterion_4(&cases)),
        ("edge coloring bound", criterion_5(&cases)),
        ("bridge identity", criterion_6()),
        ("Zarankiewicz desk values", criterion_7()),
        ("block construction", criterion_8()),
        ("cross-oracle consistency", criterion_9()),
        ("parameter choice soundness", criterion_10()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
