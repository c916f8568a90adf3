//! Run reports and the commands behind the `formations` tool.
//!
//! Every command returns a [`RunReport`]: the parameters it ran with, one
//! [`Check`] per verified property, and the witnesses it produced. A report
//! with a failed check maps to exit status 1; errors map to 2.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::checkers::{
    contains_pattern, has_no_adjacent_repeats, is_ds, is_sparse, max_alternation, max_formation_length,
};
use crate::combinatorics::binomial;
use crate::constructions::{
    build_block_witness, build_ds_sparse_witness, build_formation_witness, choose_params, pad_to_alphabet,
};
use crate::error::{Error, Result};
use crate::matrix::{
    all_ones, blocked_to_matrix, kst_bound, matrix_to_blocked, max_pair_cooccurrence, MatrixPattern, ZeroOneMatrix,
};
use crate::oracles::{
    ds_ceiling, formation_ceiling_bound, oracle_ex_matrix, oracle_formation, oracle_lambda, oracle_lambda_blocks,
    oracle_lambda_prime, oracle_pattern, ExtremalResult, OracleConfig,
};
use crate::seq::{parse_blocked, parse_sequence, BlockedSequence, Parsed, PatternSequence, Sequence};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: String,
    pub bound: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessPayload {
    pub kind: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub values: BTreeMap<String, String>,
    pub witnesses: Vec<WitnessPayload>,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            values: BTreeMap::new(),
            witnesses: Vec::new(),
            wall_time_ms: 0.0,
        }
    }

    pub fn param(mut self, name: &str, value: impl ToString) -> Self {
        self.params.insert(name.to_string(), value.to_string());
        self
    }

    pub fn value(&mut self, name: &str, value: impl ToString) {
        self.values.insert(name.to_string(), value.to_string());
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, measured: impl ToString, bound: impl ToString) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            measured: measured.to_string(),
            bound: bound.to_string(),
        });
    }

    pub fn witness(&mut self, kind: &str, text: impl Into<String>) {
        self.witnesses.push(WitnessPayload {
            kind: kind.to_string(),
            text: text.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        if !self.params.is_empty() {
            let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(out, "params: {}", params.join(" ")).unwrap();
        }
        for (k, v) in &self.values {
            writeln!(out, "{k}: {v}").unwrap();
        }
        for c in &self.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            writeln!(
                out,
                "check {}: {verdict} (measured {}, bound {})",
                c.name, c.measured, c.bound
            )
            .unwrap();
        }
        for w in &self.witnesses {
            if w.text.contains('\n') {
                writeln!(out, "witness {}:\n{}", w.kind, w.text).unwrap();
            } else {
                writeln!(out, "witness {}: {}", w.kind, w.text).unwrap();
            }
        }
        writeln!(out, "wall time: {:.3} ms", self.wall_time_ms).unwrap();
        out
    }
}

/// Runs `f` and stamps the elapsed time on its report.
pub fn timed(f: impl FnOnce() -> Result<RunReport>) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = f()?;
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn min_gap(seq: &Sequence) -> Option<usize> {
    let mut last = BTreeMap::new();
    let mut gap: Option<usize> = None;
    for (i, l) in seq.tokens().iter().enumerate() {
        if let Some(p) = last.insert(*l, i) {
            gap = Some(gap.map_or(i - p, |g| g.min(i - p)));
        }
    }
    gap
}

fn check_sparse(report: &mut RunReport, seq: &Sequence, j: usize) {
    let measured = min_gap(seq).map_or("no repeats".to_string(), |g| format!("min gap {g}"));
    report.check(
        format!("sparse:{j}"),
        is_sparse(seq, j),
        measured,
        format!("gap >= {j}"),
    );
}

fn check_ds(report: &mut RunReport, seq: &Sequence, s: usize) {
    let adjacent = if has_no_adjacent_repeats(seq) {
        ""
    } else {
        ", adjacent repeat"
    };
    report.check(
        format!("ds:{s}"),
        is_ds(seq, s),
        format!("max alternation {}{adjacent}", max_alternation(seq)),
        format!("alternation <= {}", s + 1),
    );
}

fn check_formation(report: &mut RunReport, seq: &Sequence, r: usize, s: usize) -> Result<()> {
    let longest = max_formation_length(seq, r)?;
    report.check(
        format!("formation:{r}:{s}"),
        longest < s,
        format!("max formation length {longest}"),
        format!("< {s}"),
    );
    Ok(())
}

fn check_pattern(report: &mut RunReport, seq: &Sequence, label: &str, u: &PatternSequence) {
    let found = contains_pattern(seq, u);
    report.check(
        format!("pattern:{label}"),
        !found,
        if found { "contained" } else { "avoided" },
        format!("avoid {}", u.sequence().render()),
    );
}

fn check_lambda_prime(report: &mut RunReport, bseq: &BlockedSequence, s: usize) {
    let worst = max_pair_cooccurrence(bseq);
    report.check(
        format!("lambda-prime:{s}"),
        worst <= s,
        format!("max pair cooccurrence {worst}"),
        format!("<= {s}"),
    );
}

/// Parses a pattern given as a file path, `(ab)^k`, `alt:L`, a run of
/// single-character letters such as `abab`, or whitespace-separated tokens.
pub fn parse_pattern(text: &str) -> Result<PatternSequence> {
    let text = text.trim();
    if Path::new(text).is_file() {
        let contents = std::fs::read_to_string(text).map_err(|e| Error::Parse(format!("{text}: {e}")))?;
        return parse_pattern_literal(&contents);
    }
    parse_pattern_literal(text)
}

fn parse_pattern_literal(text: &str) -> Result<PatternSequence> {
    let text = text.trim();
    if let Some(k) = text.strip_prefix("(ab)^") {
        let k: usize = k
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {text:?}")))?;
        return PatternSequence::alternation(2 * k);
    }
    if let Some(len) = text.strip_prefix("alt:") {
        let len: usize = len
            .parse()
            .map_err(|_| Error::Parse(format!("bad length in {text:?}")))?;
        return PatternSequence::alternation(len);
    }
    let seq = if !text.contains(char::is_whitespace) && text.chars().all(|c| c.is_ascii_alphabetic()) {
        let spaced: Vec<String> = text.chars().map(String::from).collect();
        parse_sequence(&spaced.join(" "))?.sequence()
    } else {
        parse_sequence(text)?.sequence()
    };
    PatternSequence::new(&seq)
}

/// Parses `Ra,b` as the all-ones matrix, otherwise a matrix file or literal
/// rows separated by newlines or `/`.
pub fn parse_matrix_pattern(text: &str) -> Result<MatrixPattern> {
    let text = text.trim();
    if let Some(dims) = text.strip_prefix('R') {
        let (a, b) = dims
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected Ra,b, got {text:?}")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad dimension in {text:?}")))
        };
        return all_ones(parse(a)?, parse(b)?);
    }
    let body = if Path::new(text).is_file() {
        std::fs::read_to_string(text).map_err(|e| Error::Parse(format!("{text}: {e}")))?
    } else {
        text.replace('/', "\n")
    };
    MatrixPattern::new(ZeroOneMatrix::parse(&body)?)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))
}

/// The troop construction at `q`-sparsity, re-verified.
pub fn construct_formation(r: usize, q: usize, x: usize, t: usize, out: Option<&Path>) -> Result<RunReport> {
    let (seq, trace) = build_formation_witness(r, q, x, t)?;
    let mut report = RunReport::new("construct formation")
        .param("r", r)
        .param("q", q)
        .param("x", x)
        .param("t", t);
    report.value("length", seq.len());
    report.value("letters", seq.alphabet_size());
    let expected_len = q as u128 * t as u128 * binomial(x as u64, r as u64);
    report.check("length", seq.len() as u128 == expected_len, seq.len(), expected_len);
    report.check(
        "letters",
        seq.alphabet_size() == trace.letter_count(),
        seq.alphabet_size(),
        trace.letter_count(),
    );
    check_sparse(&mut report, &seq, q);
    check_formation(&mut report, &seq, r, trace.formation_ceiling())?;
    if let Some(path) = out {
        write_file(path, &format!("{}\n", seq.render()))?;
        write_file(&path.with_extension("trace"), &trace.report())?;
        report.value("written", path.display());
    }
    report.witness("sequence", seq.render());
    Ok(report)
}

/// The troop construction sized by [`choose_params`] for `n` letters and
/// `(r, s)`-formations, padded to exactly `n` letters and re-verified.
pub fn construct_formation_for(
    n: usize,
    s: usize,
    c: f64,
    r: usize,
    q: usize,
    out: Option<&Path>,
) -> Result<RunReport> {
    let params = choose_params(n, s, c, r, q)?;
    let (seq, trace) = build_formation_witness(r, q, params.x, params.t)?;
    let padded = pad_to_alphabet(&seq, n)?;
    let mut report = RunReport::new("construct formation")
        .param("n", n)
        .param("s", s)
        .param("c", c)
        .param("r", r)
        .param("q", q);
    report.value("x", params.x);
    report.value("t", params.t);
    report.value("length", padded.len());
    report.check(
        "formation ceiling",
        trace.formation_ceiling() <= s,
        trace.formation_ceiling(),
        format!("<= {s}"),
    );
    report.check("letters", padded.alphabet_size() == n, padded.alphabet_size(), n);
    check_sparse(&mut report, &padded, q);
    check_formation(&mut report, &padded, r, s)?;
    if let Some(path) = out {
        write_file(path, &format!("{}\n", padded.render()))?;
        write_file(&path.with_extension("trace"), &trace.report())?;
        report.value("written", path.display());
    }
    report.witness("sequence", padded.render());
    Ok(report)
}

/// A `j`-sparse DS witness of order `s` on `n` letters, re-verified.
pub fn construct_ds_sparse(n: usize, s: usize, j: usize, out: Option<&Path>) -> Result<RunReport> {
    let seq = build_ds_sparse_witness(n, s, j)?;
    let mut report = RunReport::new("construct ds-sparse")
        .param("n", n)
        .param("s", s)
        .param("j", j);
    report.value("length", seq.len());
    report.check("letters", seq.alphabet_size() == n, seq.alphabet_size(), n);
    check_sparse(&mut report, &seq, j);
    check_ds(&mut report, &seq, s);
    if let Some(path) = out {
        write_file(path, &format!("{}\n", seq.render()))?;
        report.value("written", path.display());
    }
    report.witness("sequence", seq.render());
    Ok(report)
}

/// The reversed-block witness on `n` letters, re-verified.
pub fn construct_block(n: usize, s: usize, out: Option<&Path>) -> Result<RunReport> {
    if n == 0 || s == 0 {
        return Err(Error::InvalidParameter("n and s must be positive".into()));
    }
    let bseq = build_block_witness(n, s);
    let flat = bseq.flatten();
    let mut report = RunReport::new("construct block").param("n", n).param("s", s);
    report.value("length", bseq.len());
    report.check("blocks", bseq.block_count() == n, bseq.block_count(), n);
    let deletions = bseq
        .blocks()
        .iter()
        .filter(|b| !b.is_empty())
        .map(|b| n - b.len())
        .max()
        .unwrap_or(0);
    report.check("deletions per block", deletions <= 1, deletions, "<= 1");
    if s <= n {
        report.check(
            "length",
            bseq.len() + n >= n * s,
            bseq.len(),
            format!(">= {}", n * s - n),
        );
    }
    check_ds(&mut report, &flat, s);
    if let Some(path) = out {
        write_file(path, &format!("{}\n", bseq.render()))?;
        report.value("written", path.display());
    }
    report.witness("blocked-sequence", bseq.render());
    Ok(report)
}

/// A property requested by `verify`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyCheck {
    Sparse(usize),
    Ds(usize),
    Formation(usize, usize),
    Pattern(String),
    LambdaPrime(usize),
}

impl std::str::FromStr for VerifyCheck {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (name, rest) = text.split_once(':').unwrap_or((text, ""));
        let number = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| Error::Parse(format!("check {text:?}: expected a number, got {v:?}")))
        };
        match name {
            "sparse" => Ok(VerifyCheck::Sparse(number(rest)?)),
            "ds" => Ok(VerifyCheck::Ds(number(rest)?)),
            "formation" => {
                let (r, s) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("check {text:?}: expected formation:r:s")))?;
                Ok(VerifyCheck::Formation(number(r)?, number(s)?))
            }
            "pattern" if !rest.is_empty() => Ok(VerifyCheck::Pattern(rest.to_string())),
            "lambda-prime" => Ok(VerifyCheck::LambdaPrime(number(rest)?)),
            _ => Err(Error::Parse(format!("unknown check {text:?}"))),
        }
    }
}

/// Runs each check against the sequence in `text`.
pub fn verify_text(text: &str, checks: &[VerifyCheck]) -> Result<RunReport> {
    let parsed = parse_sequence(text)?;
    let seq = parsed.sequence();
    let mut report = RunReport::new("verify");
    report.value("length", seq.len());
    report.value("letters", seq.alphabet_size());
    for check in checks {
        match check {
            VerifyCheck::Sparse(j) => check_sparse(&mut report, &seq, *j),
            VerifyCheck::Ds(s) => check_ds(&mut report, &seq, *s),
            VerifyCheck::Formation(r, s) => check_formation(&mut report, &seq, *r, *s)?,
            VerifyCheck::Pattern(p) => check_pattern(&mut report, &seq, p, &parse_pattern(p)?),
            VerifyCheck::LambdaPrime(s) => {
                let bseq = match &parsed {
                    Parsed::Blocked(b) => b.clone(),
                    Parsed::Plain(p) => BlockedSequence::single(p)?,
                };
                check_lambda_prime(&mut report, &bseq, *s);
            }
        }
    }
    Ok(report)
}

pub fn verify_file(path: &Path, checks: &[VerifyCheck]) -> Result<RunReport> {
    let report = verify_text(&read_file(path)?, checks)?;
    Ok(report.param("file", path.display()))
}

fn oracle_report(command: &str, result: &ExtremalResult) -> RunReport {
    let mut report = RunReport::new(command);
    report.value("query", &result.query);
    report.value("value", result.value);
    report.value("nodes_explored", result.nodes_explored);
    report.value("exhausted", result.exhausted);
    report.witness(result.witness.kind(), result.witness.render());
    report
}

pub fn oracle_lambda_report(n: usize, s: usize, j: usize, config: &OracleConfig) -> Result<RunReport> {
    let result = oracle_lambda(n, s, j, config)?;
    Ok(oracle_report("oracle lambda", &result)
        .param("n", n)
        .param("s", s)
        .param("j", j))
}

pub fn oracle_formation_report(n: usize, r: usize, s: usize, j: usize, config: &OracleConfig) -> Result<RunReport> {
    let result = oracle_formation(n, r, s, j, config)?;
    Ok(oracle_report("oracle formation", &result)
        .param("n", n)
        .param("r", r)
        .param("s", s)
        .param("j", j))
}

pub fn oracle_pattern_report(pattern: &str, j: usize, n: usize, config: &OracleConfig) -> Result<RunReport> {
    let u = parse_pattern(pattern)?;
    let result = oracle_pattern(&u, j, n, config)?;
    Ok(oracle_report("oracle pattern", &result)
        .param("pattern", u.sequence().render())
        .param("j", j)
        .param("n", n))
}

pub fn oracle_lambda_blocks_report(n: usize, s: usize, m: usize, config: &OracleConfig) -> Result<RunReport> {
    let result = oracle_lambda_blocks(n, s, m, config)?;
    Ok(oracle_report("oracle lambda-blocks", &result)
        .param("n", n)
        .param("s", s)
        .param("m", m))
}

pub fn oracle_lambda_prime_report(n: usize, s: usize, m: usize, config: &OracleConfig) -> Result<RunReport> {
    let result = oracle_lambda_prime(n, s, m, config)?;
    Ok(oracle_report("oracle lambda-prime", &result)
        .param("n", n)
        .param("s", s)
        .param("m", m))
}

pub fn oracle_ex_matrix_report(n: usize, m: usize, pattern: &str, config: &OracleConfig) -> Result<RunReport> {
    let p = parse_matrix_pattern(pattern)?;
    let result = oracle_ex_matrix(n, m, &p, config)?;
    Ok(oracle_report("oracle ex-matrix", &result)
        .param("n", n)
        .param("m", m)
        .param("pattern", pattern))
}

fn compare(report: &mut RunReport, result: &ExtremalResult, bound: f64) {
    report.value("oracle_value", result.value);
    report.value("oracle_exhausted", result.exhausted);
    report.check("oracle <= bound", result.value as f64 <= bound, result.value, bound);
}

/// The Kővári–Sós–Turán bound on `ex(n, m, R_{a,b})`.
pub fn bound_kst(n: usize, m: usize, a: usize, b: usize, compare_with: Option<&OracleConfig>) -> Result<RunReport> {
    let bound = kst_bound(n, m, a, b)?;
    let mut report = RunReport::new("bound kst")
        .param("n", n)
        .param("m", m)
        .param("a", a)
        .param("b", b);
    report.value("bound", bound);
    if let Some(config) = compare_with {
        let result = oracle_ex_matrix(n, m, &all_ones(a, b)?, config)?;
        compare(&mut report, &result, bound);
    }
    Ok(report)
}

/// The Davenport-Schinzel ceiling `s·C(n, 2) + 1`.
pub fn bound_ds_ceiling(n: usize, s: usize, compare_with: Option<&OracleConfig>) -> Result<RunReport> {
    let bound = ds_ceiling(n, s);
    let mut report = RunReport::new("bound ds-ceiling").param("n", n).param("s", s);
    report.value("bound", bound);
    if let Some(config) = compare_with {
        let result = oracle_lambda(n, s, 2, config)?;
        compare(&mut report, &result, bound as f64);
    }
    Ok(report)
}

/// The formation ceiling `s·n^r`; the comparison searches `j`-sparse sequences.
pub fn bound_formation_ceiling(
    n: usize,
    r: usize,
    s: usize,
    j: usize,
    compare_with: Option<&OracleConfig>,
) -> Result<RunReport> {
    let bound = formation_ceiling_bound(n, r, s);
    let mut report = RunReport::new("bound formation-ceiling")
        .param("n", n)
        .param("r", r)
        .param("s", s);
    report.value("bound", bound);
    if let Some(config) = compare_with {
        let result = oracle_formation(n, r, s, j, config)?;
        report = report.param("j", j);
        compare(&mut report, &result, bound as f64);
    }
    Ok(report)
}

/// Incidence matrix of a blocked sequence (rows are letters, columns blocks).
pub fn convert_blocks_to_matrix(text: &str) -> Result<ZeroOneMatrix> {
    blocked_to_matrix(&parse_blocked(text)?)
}

pub fn convert_matrix_to_blocks(text: &str) -> Result<BlockedSequence> {
    Ok(matrix_to_blocked(&ZeroOneMatrix::parse(text)?))
}

pub fn convert_report(direction: &str, text: &str) -> Result<RunReport> {
    let mut report = RunReport::new(format!("convert {direction}"));
    match direction {
        "blocks-to-matrix" => {
            let m = convert_blocks_to_matrix(text)?;
            let back = blocked_to_matrix(&matrix_to_blocked(&m))?;
            report.check(
                "round trip",
                back == m,
                if back == m { "identical" } else { "differs" },
                "identical",
            );
            report.witness("matrix", m.render());
        }
        "matrix-to-blocks" => {
            let b = convert_matrix_to_blocks(text)?;
            let m = ZeroOneMatrix::parse(text)?;
            let back = crate::matrix::blocked_to_matrix_with_rows(&b, m.rows())?;
            report.check(
                "round trip",
                back == m,
                if back == m { "identical" } else { "differs" },
                "identical",
            );
            report.witness("blocked-sequence", b.render());
        }
        other => return Err(Error::InvalidParameter(format!("unknown direction {other:?}"))),
    }
    Ok(report)
}
