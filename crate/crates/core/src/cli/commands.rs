//! The `seq`, `table1`, `oracle`, `asym` and `cache` commands.

use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use thiserror::Error;

use super::cache::{Cache, CacheError};
use super::format::{render, OutputFormat};
use super::report::{Check, RunReport, Witness};
use crate::asymptotics::{self, AsymptoticsError, HighPrecision, RatioKind};
use crate::kernel::ExactRatio;
use crate::oracle::{self, OracleError};
use crate::sequence::{self, SequenceError, SequenceKind, SequenceTable};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("check failed: {0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Failure(_) => 1,
            Self::Usage(_) => 2,
            Self::Io(_) => 3,
            Self::Budget(_) => 4,
        }
    }
}

impl From<CacheError> for CliError {
    fn from(e: CacheError) -> Self {
        match e {
            CacheError::Conflict { .. } => Self::Failure(e.to_string()),
            CacheError::Io { .. } | CacheError::Parse { .. } => Self::Io(e.to_string()),
        }
    }
}

impl From<SequenceError> for CliError {
    fn from(e: SequenceError) -> Self {
        match e {
            SequenceError::Consistency { .. } => Self::Failure(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

impl From<AsymptoticsError> for CliError {
    fn from(e: AsymptoticsError) -> Self {
        Self::Usage(e.to_string())
    }
}

fn oracle_error(d: u32, n: usize, e: OracleError) -> CliError {
    match e {
        OracleError::BudgetExceeded { .. } => CliError::Budget(format!("(d={d}, n={n}): {e}")),
        other => CliError::Usage(format!("(d={d}, n={n}): {other}")),
    }
}

/// A sequence prefix, served from the cache when every entry is present.
/// Returns the table and the number of cache hits.
pub fn fetch(
    cache: &mut Cache,
    kind: SequenceKind,
    d: u32,
    n_max: usize,
) -> Result<(SequenceTable, usize), CliError> {
    if let Some(table) = cache.table(kind, d, n_max) {
        let hits = table.values().len();
        return Ok((table, hits));
    }
    let table = sequence::compute(kind, d, n_max)?;
    cache.insert_table(&table)?;
    Ok((table, 0))
}

#[derive(Debug, Clone)]
pub struct SeqRequest {
    pub kind: SequenceKind,
    pub d: u32,
    pub n_max: usize,
    pub format: OutputFormat,
    /// First index printed; defaults to 1. Index 0 only exists for `w`/`w01`.
    pub offset: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct SeqOutput {
    pub rendered: String,
    pub cache_hits: usize,
}

pub fn cmd_seq(request: &SeqRequest, cache: &mut Cache) -> Result<SeqOutput, CliError> {
    if request.d < 2 {
        return Err(CliError::Usage(format!("--dim must be at least 2, got {}", request.d)));
    }
    if request.n_max < 1 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    let offset = request.offset.unwrap_or(1);
    if offset > 1 || offset < request.kind.first_index() {
        return Err(CliError::Usage(format!(
            "offset {offset} is not available for kind {} (first index {})",
            request.kind,
            request.kind.first_index()
        )));
    }
    let (table, cache_hits) = fetch(cache, request.kind, request.d, request.n_max)?;
    cache.save()?;
    Ok(SeqOutput {
        rendered: render(&table, request.format, offset),
        cache_hits,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table1Row {
    Indecomposable,
    ZeroOne,
    All,
}

impl Table1Row {
    pub fn kind(self) -> SequenceKind {
        match self {
            Self::Indecomposable => SequenceKind::U,
            Self::ZeroOne => SequenceKind::W01,
            Self::All => SequenceKind::W,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Indecomposable => "indec",
            Self::ZeroOne => "0-1",
            Self::All => "all",
        }
    }
}

impl FromStr for Table1Row {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "indec" => Ok(Self::Indecomposable),
            "0-1" => Ok(Self::ZeroOne),
            "all" => Ok(Self::All),
            other => Err(format!("unknown row `{other}` (expected indec, 0-1 or all)")),
        }
    }
}

/// Reference counts for `d = 2, 3` and `n = 1..=6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Golden {
    pub rows: Vec<(u32, Table1Row, Vec<String>)>,
}

const TABLE1: &str = "\
2,indec,1,1,6,72,1440,43200
2,0-1,0,1,6,90,2040,67950
2,all,1,3,21,282,6210,202410
3,indec,1,8,900,359424,370828800,820150272000
3,0-1,0,8,900,366336,378028800,833156928000
3,all,1,12,1152,431424,427723200,920031955200
";

impl Table1Golden {
    pub fn embedded() -> Self {
        Self::parse(TABLE1).expect("embedded table parses")
    }

    /// Lines `d,row,v1,...,v6`; blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 8 {
                return Err(format!("line {}: expected 8 fields, got {}", i + 1, fields.len()));
            }
            let d: u32 = fields[0]
                .parse()
                .map_err(|_| format!("line {}: bad dimension `{}`", i + 1, fields[0]))?;
            let row: Table1Row = fields[1].parse().map_err(|e| format!("line {}: {e}", i + 1))?;
            let values = fields[2..]
                .iter()
                .map(|v| {
                    v.parse::<BigUint>()
                        .map(|b| b.to_string())
                        .map_err(|_| format!("line {}: bad value `{v}`", i + 1))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push((d, row, values));
        }
        Ok(Self { rows })
    }
}

pub fn cmd_table1(cache: &mut Cache, golden: &Table1Golden) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = RunReport::new("table1");
    let mut matched = 0usize;
    let mut total = 0usize;
    for (d, row, expected) in &golden.rows {
        if *d < 2 {
            return Err(CliError::Usage(format!("golden row with dimension {d}")));
        }
        let kind = row.kind();
        let n_max = expected.len();
        let (table, hits) = fetch(cache, kind, *d, n_max)?;
        // Count compared entries only, not the n = 0 term of w and w01.
        if hits > 0 {
            report.cache_hits += n_max;
        }
        let actual: Vec<String> = (1..=n_max)
            .map(|n| table.get(n).expect("fetched prefix").to_string())
            .collect();
        report.lines.push(format!("d={d} {:<5} {}", row.label(), actual.join(" ")));
        let name = format!("table1 d={d} {}", row.label());
        let mismatch = expected.iter().zip(&actual).enumerate().find(|(_, (e, a))| e != a);
        total += n_max;
        matched += expected.iter().zip(&actual).filter(|(e, a)| e == a).count();
        report.checks.push(match mismatch {
            None => Check::pass(name, format!("{n_max}/{n_max} entries match")),
            Some((i, (e, a))) => Check::fail(
                name,
                "entry differs from reference",
                Witness {
                    kind: kind.to_string(),
                    d: *d,
                    n: i + 1,
                    expected: e.clone(),
                    actual: a.clone(),
                },
            ),
        });
    }
    report.lines.push(format!("{matched}/{total} entries match"));
    cache.save()?;
    report.elapsed = start.elapsed();
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OracleCheck {
    V,
    W,
    W01,
    Indec,
    Bijection,
    Birkhoff,
}

impl OracleCheck {
    pub const ALL: [OracleCheck; 6] = [
        Self::V,
        Self::W,
        Self::W01,
        Self::Indec,
        Self::Bijection,
        Self::Birkhoff,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::V => "v",
            Self::W => "w",
            Self::W01 => "w01",
            Self::Indec => "indec",
            Self::Bijection => "bijection",
            Self::Birkhoff => "birkhoff",
        }
    }
}

impl FromStr for OracleCheck {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown check `{s}` (expected v, w, w01, indec, bijection or birkhoff)"))
    }
}

/// Parse `d:n` pairs separated by commas, e.g. `3:2,2:4`.
pub fn parse_pairs(s: &str) -> Result<Vec<(u32, usize)>, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (d, n) = p
                .trim()
                .split_once(':')
                .ok_or_else(|| format!("pair `{p}` is not of the form d:n"))?;
            let d = d.parse().map_err(|_| format!("bad dimension in `{p}`"))?;
            let n = n.parse().map_err(|_| format!("bad size in `{p}`"))?;
            Ok((d, n))
        })
        .collect()
}

#[derive(Default)]
struct Census {
    all: u64,
    zero_one: u64,
    indecomposable: u64,
    not_unit_sum: u64,
    first_not_unit_sum: Option<String>,
    error: Option<OracleError>,
}

fn census(d: u32, n: usize, birkhoff: bool, budget: u64) -> Result<Census, OracleError> {
    let mut c = Census::default();
    oracle::for_each_two_magic(d as usize, n, false, budget, |t| {
        c.all += 1;
        if t.is_zero_one() {
            c.zero_one += 1;
        }
        match oracle::is_indecomposable(t) {
            Ok(true) => c.indecomposable += 1,
            Ok(false) => {}
            Err(e) => c.error = c.error.take().or(Some(e)),
        }
        if birkhoff {
            match oracle::is_sum_of_unit_magic(t) {
                Ok(true) => {}
                Ok(false) => {
                    c.not_unit_sum += 1;
                    c.first_not_unit_sum.get_or_insert_with(|| t.to_string());
                }
                Err(e) => c.error = c.error.take().or(Some(e)),
            }
        }
    })?;
    match c.error.take() {
        Some(e) => Err(e),
        None => Ok(c),
    }
}

fn engine_value(kind: SequenceKind, d: u32, n: usize) -> Result<String, CliError> {
    let table = sequence::compute(kind, d, n)?;
    Ok(table.get(n).expect("computed through n").to_string())
}

pub fn cmd_oracle(
    pairs: &[(u32, usize)],
    checks: &[OracleCheck],
    budget: u64,
) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let pair_list: Vec<String> = pairs.iter().map(|(d, n)| format!("{d}:{n}")).collect();
    let check_list: Vec<&str> = checks.iter().map(|c| c.as_str()).collect();
    let mut report = RunReport::new(format!(
        "oracle --pairs {} --checks {} --budget {budget}",
        pair_list.join(","),
        check_list.join(",")
    ));
    if pairs.is_empty() || checks.is_empty() {
        return Err(CliError::Usage("need at least one pair and one check".into()));
    }
    for &(d, n) in pairs {
        if d < 2 || n < 1 {
            return Err(CliError::Usage(format!(
                "pair {d}:{n} needs d >= 2 and n >= 1"
            )));
        }
        let needs_census = checks.iter().any(|c| {
            matches!(
                c,
                OracleCheck::W | OracleCheck::W01 | OracleCheck::Indec | OracleCheck::Birkhoff
            )
        });
        let census = if needs_census {
            Some(census(d, n, checks.contains(&OracleCheck::Birkhoff), budget).map_err(|e| oracle_error(d, n, e))?)
        } else {
            None
        };
        for &check in checks {
            let name = format!("{} d={d} n={n}", check.as_str());
            let result = match check {
                OracleCheck::V => {
                    let brute = oracle::count_v_oracle(d, n, budget).map_err(|e| oracle_error(d, n, e))?;
                    Check::compare(name, "v", d, n, engine_value(SequenceKind::V, d, n)?, brute.to_string())
                }
                OracleCheck::W => {
                    let c = census.as_ref().expect("census ran");
                    Check::compare(name, "w", d, n, engine_value(SequenceKind::W, d, n)?, c.all.to_string())
                }
                OracleCheck::W01 => {
                    let c = census.as_ref().expect("census ran");
                    Check::compare(name, "w01", d, n, engine_value(SequenceKind::W01, d, n)?, c.zero_one.to_string())
                }
                OracleCheck::Indec => {
                    let c = census.as_ref().expect("census ran");
                    Check::compare(name, "u", d, n, engine_value(SequenceKind::U, d, n)?, c.indecomposable.to_string())
                }
                OracleCheck::Bijection => {
                    if n < 2 {
                        Check::skip(name, "labelling double count needs n >= 2")
                    } else {
                        let dc = oracle::lemma_double_count(d, n, budget).map_err(|e| oracle_error(d, n, e))?;
                        let detail = format!(
                            "{} tensors * 2^{n} = {} ; {} tuples * ({n}!)^{} = {}",
                            dc.indecomposable_tensors,
                            dc.tensor_side,
                            dc.transitive_tuples,
                            d - 1,
                            dc.tuple_side
                        );
                        if dc.holds() {
                            Check::pass(name, detail)
                        } else {
                            Check::fail(
                                name,
                                detail,
                                Witness {
                                    kind: "u".into(),
                                    d,
                                    n,
                                    expected: dc.tuple_side.to_string(),
                                    actual: dc.tensor_side.to_string(),
                                },
                            )
                        }
                    }
                }
                OracleCheck::Birkhoff => {
                    let c = census.as_ref().expect("census ran");
                    let detail = format!(
                        "{} of {} tensors are not a sum of two 1-magic tensors",
                        c.not_unit_sum, c.all
                    );
                    if let Some(t) = &c.first_not_unit_sum {
                        report.lines.push(format!("birkhoff d={d} n={n} witness: {t}"));
                    }
                    if d == 2 && c.not_unit_sum > 0 {
                        Check::fail(
                            name,
                            detail,
                            Witness {
                                kind: "w".into(),
                                d,
                                n,
                                expected: "0".into(),
                                actual: c.not_unit_sum.to_string(),
                            },
                        )
                    } else {
                        Check::pass(name, detail)
                    }
                }
            };
            report.checks.push(result);
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Tolerance constant for `|1 - ratio| <= C / n` on `10 <= n`.
pub const ASYM_CONSTANT: u32 = 2;
/// Start of the range on which the `C / n` tolerance is checked.
pub const ASYM_FROM: usize = 10;

fn ratio_witness(kind: &str, d: u32, n: usize, expected: &str, actual: &ExactRatio) -> Witness {
    Witness {
        kind: kind.into(),
        d,
        n,
        expected: expected.into(),
        actual: actual.to_decimal_string(15),
    }
}

/// Checks on the normalised ratios for `d >= 3`, over `2..=n_max`.
#[derive(Debug, Clone)]
pub struct HighDimensionChecks {
    pub checks: Vec<Check>,
    pub lines: Vec<String>,
    /// `max n |1 - u_ratio|` over `ASYM_FROM..=n_max`.
    pub u_constant: Option<ExactRatio>,
    /// `max n |1 - w_ratio / u_ratio|` over the same range.
    pub wu_constant: Option<ExactRatio>,
}

pub fn high_dimension_checks(d: u32, u: &SequenceTable, w: &SequenceTable, n_max: usize) -> Result<HighDimensionChecks, CliError> {
    let u_series = asymptotics::ratio_series(RatioKind::URatio, &u.truncated(n_max), 2)?;
    let w_series = asymptotics::ratio_series(RatioKind::WRatio, &w.truncated(n_max), 2)?;
    let lines = u_series
        .iter()
        .zip(&w_series)
        .map(|((n, ur), (_, wr))| {
            format!("n={n:<3} u_ratio={} w_ratio={}", ur.to_decimal_string(12), wr.to_decimal_string(12))
        })
        .collect();
    let mut checks = Vec::new();
    let one = ExactRatio::from_integer(1);

    let name = format!("u_ratio <= 1 d={d}");
    checks.push(match u_series.iter().find(|(_, r)| *r > one) {
        None => Check::pass(name, format!("n = 2..={n_max}")),
        Some((n, r)) => Check::fail(name, "ratio above 1", ratio_witness("u_ratio", d, *n, "<= 1", r)),
    });

    // Non-decreasing from n = 2, strictly increasing from n = 3
    // (u_ratio(3,2) = u_ratio(3,3) = 8/9).
    let name = format!("u_ratio increasing d={d}");
    let bad = u_series.windows(2).find(|pair| {
        let ((_, a), (n, b)) = (&pair[0], &pair[1]);
        if *n >= 4 {
            b <= a
        } else {
            b < a
        }
    });
    checks.push(match bad {
        None => Check::pass(name, format!("non-decreasing on 2..={n_max}, strict from 3")),
        Some(pair) => Check::fail(
            name,
            "ratio decreased",
            ratio_witness("u_ratio", d, pair[1].0, &format!("> {}", pair[0].1.to_decimal_string(15)), &pair[1].1),
        ),
    });

    let name = format!("x bound d={d}");
    checks.push(match asymptotics::first_x_bound_violation(d, n_max, u, w) {
        None => Check::pass(name, format!("w_n - u_n <= 2^-n ((2n-1)!! n!)^(d-1) for n = 2..={n_max}")),
        Some(n) => Check::fail(
            name,
            "inductive bound violated",
            Witness {
                kind: "w".into(),
                d,
                n,
                expected: "w_n - u_n <= 2^-n ((2n-1)!! n!)^(d-1)".into(),
                actual: format!(
                    "w_n - u_n = {}",
                    match (w.get(n), u.get(n)) {
                        (Some(wn), Some(un)) if wn >= un => (wn - un).to_string(),
                        _ => "unavailable".into(),
                    }
                ),
            },
        ),
    });

    let tail: Vec<(usize, ExactRatio)> = u_series.iter().filter(|(n, _)| *n >= ASYM_FROM).cloned().collect();
    let wu_tail: Vec<(usize, ExactRatio)> = u_series
        .iter()
        .zip(&w_series)
        .filter(|((n, _), _)| *n >= ASYM_FROM)
        .map(|((n, ur), (_, wr))| (*n, wr.checked_div(ur).expect("u_ratio positive")))
        .collect();
    let u_constant = asymptotics::measured_constant(&tail);
    let wu_constant = asymptotics::measured_constant(&wu_tail);
    let limit = ExactRatio::from_integer(ASYM_CONSTANT);
    for (label, constant, series) in [
        ("|1 - u_ratio| <= 2/n", &u_constant, &tail),
        ("|1 - w_ratio/u_ratio| <= 2/n", &wu_constant, &wu_tail),
    ] {
        let name = format!("{label} d={d}");
        let check = match constant {
            None => Check::skip(name, format!("needs n_max >= {ASYM_FROM}")),
            Some(c) => {
                let detail = format!("measured constant max n|1 - r| = {} over n = {ASYM_FROM}..={n_max}", c.to_decimal_string(6));
                if *c <= limit {
                    Check::pass(name, detail)
                } else {
                    let (n, r) = series
                        .iter()
                        .find(|(n, r)| {
                            let dist = r.distance_from_one();
                            ExactRatio::new(dist.numer() * num_bigint::BigInt::from(*n), dist.denom().clone()).expect("positive") > limit
                        })
                        .expect("some point exceeds the constant");
                    Check::fail(name, detail, ratio_witness(label, d, *n, "within 1 +- 2/n", r))
                }
            }
        };
        checks.push(check);
    }
    Ok(HighDimensionChecks {
        checks,
        lines,
        u_constant,
        wu_constant,
    })
}

/// `w2_ratio(n)` for `n = 1..=n_max`.
pub fn w2_series(w: &SequenceTable, n_max: usize, precision: u32) -> Result<Vec<(usize, HighPrecision)>, CliError> {
    (1..=n_max)
        .map(|n| Ok((n, asymptotics::w2_ratio(n, w, precision)?)))
        .collect()
}

pub fn cmd_asym(d: u32, n_max: usize, precision: u32, cache: &mut Cache) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = RunReport::new(format!("asym --dim {d} --n-max {n_max} --precision {precision}"));
    if d < 2 {
        return Err(CliError::Usage(format!("--dim must be at least 2, got {d}")));
    }
    if n_max < 1 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    if d >= 3 {
        let (u, hu) = fetch(cache, SequenceKind::U, d, n_max)?;
        let (w, hw) = fetch(cache, SequenceKind::W, d, n_max)?;
        report.cache_hits = hu + hw;
        if n_max < 2 {
            let r = asymptotics::u_ratio(d, 1, &u)?;
            report.lines.push(format!("n=1   u_ratio={}", r.to_decimal_string(12)));
            report
                .warnings
                .push("degenerate range: ratio checks need n_max >= 2".into());
        } else {
            let out = high_dimension_checks(d, &u, &w, n_max)?;
            report.lines.extend(out.lines);
            report.checks.extend(out.checks);
        }
    } else {
        let (w, hits) = fetch(cache, SequenceKind::W, 2, n_max)?;
        report.cache_hits = hits;
        let series = w2_series(&w, n_max, precision)?;
        for (n, r) in &series {
            report.lines.push(format!("n={n:<3} w2_ratio={r}"));
        }
        let name = "w2_ratio > 1".to_string();
        let one = HighPrecision::new(num_bigint::BigInt::from(10u32).pow(precision), precision);
        report.checks.push(match series.iter().find(|(_, r)| *r <= one) {
            None => Check::pass(name, format!("n = 1..={n_max}")),
            Some((n, r)) => Check::fail(
                name,
                "ratio not above 1",
                Witness {
                    kind: "w2_ratio".into(),
                    d: 2,
                    n: *n,
                    expected: "> 1".into(),
                    actual: r.to_string(),
                },
            ),
        });
        let name = "w2 error halves as n doubles".to_string();
        if n_max < 20 {
            report.checks.push(Check::skip(name, "needs n_max >= 20"));
        } else {
            let dist = |n: usize| series[n - 1].1.distance_from_one();
            report.checks.push(match (20..=n_max).find(|&n| dist(n) >= dist(n / 2)) {
                None => Check::pass(name, format!("|r(n) - 1| < |r(n/2) - 1| for n = 20..={n_max}")),
                Some(n) => Check::fail(
                    name,
                    "error did not shrink",
                    Witness {
                        kind: "w2_ratio".into(),
                        d: 2,
                        n,
                        expected: format!("< {}", dist(n / 2)),
                        actual: dist(n).to_string(),
                    },
                ),
            });
        }
    }
    cache.save()?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// List cached sequences.
pub fn cmd_cache_inspect(cache: &Cache) -> RunReport {
    let mut report = RunReport::new("cache inspect");
    let path = cache
        .path()
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "(in memory)".into());
    report.lines.push(format!("{path}: {} records", cache.len()));
    for (kind, d, lo, hi, count) in cache.summary() {
        report.lines.push(format!("{kind} d={d} n={lo}..={hi} ({count} records)"));
    }
    report
}

pub fn cmd_cache_clear(cache: &mut Cache) -> Result<RunReport, CliError> {
    let removed = cache.len();
    cache.clear()?;
    let mut report = RunReport::new("cache clear");
    report.lines.push(format!("removed {removed} records"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seq_examples() {
        let mut cache = Cache::disabled();
        let out = cmd_seq(
            &SeqRequest {
                kind: SequenceKind::U,
                d: 3,
                n_max: 6,
                format: OutputFormat::Csv,
                offset: None,
            },
            &mut cache,
        )
        .unwrap();
        assert_eq!(out.rendered, "1,8,900,359424,370828800,820150272000\n");
        assert_eq!(out.cache_hits, 0);
        let again = cmd_seq(
            &SeqRequest {
                kind: SequenceKind::U,
                d: 3,
                n_max: 4,
                format: OutputFormat::Bfile,
                offset: Some(1),
            },
            &mut cache,
        )
        .unwrap();
        assert_eq!(again.cache_hits, 4);
        assert_eq!(again.rendered, "1 1\n2 8\n3 900\n4 359424\n");
    }

    #[test]
    fn seq_usage_errors() {
        let mut cache = Cache::disabled();
        let base = SeqRequest {
            kind: SequenceKind::V,
            d: 2,
            n_max: 3,
            format: OutputFormat::Table,
            offset: Some(0),
        };
        assert_eq!(cmd_seq(&base, &mut cache).unwrap_err().exit_code(), 2);
        let bad_dim = SeqRequest { d: 1, offset: None, ..base.clone() };
        assert_eq!(cmd_seq(&bad_dim, &mut cache).unwrap_err().exit_code(), 2);
        let bad_n = SeqRequest { n_max: 0, offset: None, ..base };
        assert_eq!(cmd_seq(&bad_n, &mut cache).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn golden_parsing() {
        let g = Table1Golden::embedded();
        assert_eq!(g.rows.len(), 6);
        assert_eq!(g.rows.iter().map(|r| r.2.len()).sum::<usize>(), 36);
        assert!(Table1Golden::parse("2,indec,1,2").is_err());
        assert!(Table1Golden::parse("2,oops,1,1,1,1,1,1").is_err());
        assert!(Table1Golden::parse("2,all,1,1,1,1,1,-1").is_err());
    }

    #[test]
    fn table1_detects_corruption() {
        let mut golden = Table1Golden::embedded();
        golden.rows[4].2[2] = "901".into();
        let report = cmd_table1(&mut Cache::disabled(), &golden).unwrap();
        assert_eq!(report.exit_code(), 1);
        let failed: Vec<&Check> = report.checks.iter().filter(|c| c.witness.is_some()).collect();
        assert_eq!(failed.len(), 1);
        let w = failed[0].witness.as_ref().unwrap();
        assert_eq!((w.kind.as_str(), w.d, w.n, w.expected.as_str(), w.actual.as_str()), ("w01", 3, 3, "901", "900"));
    }

    #[test]
    fn pair_and_check_parsing() {
        assert_eq!(parse_pairs("3:2,2:4").unwrap(), vec![(3, 2), (2, 4)]);
        assert!(parse_pairs("3-2").is_err());
        assert!(parse_pairs("x:2").is_err());
        assert_eq!("bijection".parse::<OracleCheck>(), Ok(OracleCheck::Bijection));
        assert!("nope".parse::<OracleCheck>().is_err());
    }

    #[test]
    fn oracle_budget_names_pair() {
        let err = cmd_oracle(&[(3, 5)], &[OracleCheck::V], 1000).unwrap_err();
        assert_eq!(err.exit_code(), 4);
        assert!(err.to_string().contains("(d=3, n=5)"), "{err}");
        assert_eq!(cmd_oracle(&[(1, 2)], &[OracleCheck::V], 1000).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn oracle_small_pairs() {
        let report = cmd_oracle(&[(3, 2)], &[OracleCheck::V, OracleCheck::W], oracle::DEFAULT_BUDGET).unwrap();
        assert!(report.passed());
        assert_eq!(report.checks[0].detail, "8 = 8");
        assert_eq!(report.checks[1].detail, "12 = 12");
        let bij = cmd_oracle(&[(2, 1)], &[OracleCheck::Bijection], oracle::DEFAULT_BUDGET).unwrap();
        assert_eq!(bij.checks[0].status, super::super::report::CheckStatus::Skip);
    }

    #[test]
    fn asym_degenerate_and_errors() {
        let mut cache = Cache::disabled();
        let report = cmd_asym(3, 1, 30, &mut cache).unwrap();
        assert_eq!(report.exit_code(), 0);
        assert_eq!(report.warnings.len(), 1);
        assert_eq!(cmd_asym(1, 5, 30, &mut cache).unwrap_err().exit_code(), 2);
        assert_eq!(cmd_asym(2, 5, 10, &mut cache).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn asym_small_runs() {
        let mut cache = Cache::disabled();
        let r3 = cmd_asym(3, 6, 30, &mut cache).unwrap();
        assert!(r3.passed());
        assert!(r3.lines.last().unwrap().contains("u_ratio=0.937"));
        let r2 = cmd_asym(2, 6, 30, &mut cache).unwrap();
        assert!(r2.passed());
        assert!(r2.lines.last().unwrap().contains("w2_ratio=1.028"));
    }
}
