//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Reference values come from independent enumerations in `magicount::oracle`
//! or from direct arithmetic in this file, never from the engine under test.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use magicount::asymptotics::{self, RatioKind};
use magicount::cli::cache::Cache;
use magicount::cli::commands::{cmd_table1, Table1Golden};
use magicount::kernel::{binomial, factorial, ExactRatio};
use magicount::oracle::{self, MagicTensor, DEFAULT_BUDGET};
use magicount::sequence::{self, SequenceKind};

/// Criteria expected to fail; see the project notes.
const KNOWN_FAILING: &[u32] = &[11];

struct Outcome {
    pass: bool,
    summary: String,
    /// Machine-readable result, compared across runs.
    data: Value,
}

fn within(start: Instant, limit: Duration) -> (bool, String) {
    let elapsed = start.elapsed();
    (elapsed < limit, format!("{:.2}s < {}s", elapsed.as_secs_f64(), limit.as_secs()))
}

fn c1_table1() -> Outcome {
    let start = Instant::now();
    let report = cmd_table1(&mut Cache::disabled(), &Table1Golden::embedded()).unwrap();
    let (fast, timing) = within(start, Duration::from_secs(1));
    let matched = report.lines.last().cloned().unwrap_or_default();
    Outcome {
        pass: report.passed() && matched == "36/36 entries match" && fast,
        summary: format!("{matched}, {timing}"),
        data: serde_json::from_str(&report.to_json()).unwrap(),
    }
}

fn c2_v_oracle() -> Outcome {
    let start = Instant::now();
    let pairs: Vec<(u32, usize)> = (1..=5)
        .map(|n| (2, n))
        .chain((1..=4).map(|n| (3, n)))
        .chain((1..=3).map(|n| (4, n)))
        .collect();
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for &(d, n) in &pairs {
        let brute = oracle::count_v_oracle(d, n, DEFAULT_BUDGET).unwrap();
        let engine = sequence::compute_v(d, n).unwrap().get(n).unwrap().clone();
        if brute != engine {
            mismatches.push(format!("v_{n}({d}): oracle {brute}, engine {engine}"));
        }
        rows.push(json!([d, n, brute.to_string(), engine.to_string()]));
    }
    let (fast, timing) = within(start, Duration::from_secs(60));
    Outcome {
        pass: mismatches.is_empty() && fast,
        summary: format!(
            "{}/{} pairs exact{}, {timing}",
            pairs.len() - mismatches.len(),
            pairs.len(),
            if mismatches.is_empty() { String::new() } else { format!(" ({})", mismatches.join("; ")) }
        ),
        data: json!(rows),
    }
}

fn c3_tensor_oracle() -> Outcome {
    let start = Instant::now();
    let pairs = [(2u32, 1usize), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2)];
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for (d, n) in pairs {
        let (mut all, mut zero_one, mut indec) = (0u64, 0u64, 0u64);
        oracle::for_each_two_magic(d as usize, n, false, DEFAULT_BUDGET, |t| {
            all += 1;
            zero_one += u64::from(t.is_zero_one());
            indec += u64::from(oracle::is_indecomposable(t).unwrap());
        })
        .unwrap();
        for (kind, brute) in [(SequenceKind::W, all), (SequenceKind::W01, zero_one), (SequenceKind::U, indec)] {
            let engine = sequence::compute(kind, d, n).unwrap().get(n).unwrap().to_string();
            if engine != brute.to_string() {
                mismatches.push(format!("{kind}({d},{n}): oracle {brute}, engine {engine}"));
            }
            rows.push(json!([kind.as_str(), d, n, brute.to_string(), engine]));
        }
    }
    let (fast, timing) = within(start, Duration::from_secs(60));
    Outcome {
        pass: mismatches.is_empty() && fast,
        summary: format!("{} comparisons, {} mismatches, {timing}", rows.len(), mismatches.len()),
        data: json!(rows),
    }
}

fn c4_double_count() -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    for (d, n) in [(2u32, 3usize), (3, 2), (3, 3)] {
        let dc = oracle::lemma_double_count(d, n, DEFAULT_BUDGET).unwrap();
        let lhs = BigUint::from(dc.indecomposable_tensors) << n;
        let rhs = &dc.transitive_tuples * factorial(n as u64).pow(d - 1);
        pass &= lhs == rhs && dc.holds();
        rows.push(json!([d, n, dc.indecomposable_tensors, dc.transitive_tuples.to_string(), lhs.to_string()]));
    }
    let summary = rows
        .iter()
        .map(|r| format!("({},{}): {}*2^n = {}", r[0], r[1], r[2], r[4].as_str().unwrap()))
        .collect::<Vec<_>>()
        .join(", ");
    Outcome {
        pass,
        summary,
        data: json!(rows),
    }
}

fn c5_birkhoff() -> Outcome {
    let t = MagicTensor::from_ones_one_based(
        3,
        3,
        &[&[1, 1, 1], &[1, 2, 3], &[2, 1, 2], &[2, 2, 1], &[3, 3, 2], &[3, 3, 3]],
    )
    .unwrap();
    let magic = t.is_two_magic();
    let indec = oracle::is_indecomposable(&t).unwrap();
    let unit_sum = oracle::is_sum_of_unit_magic(&t).unwrap();
    let mut planar = 0u64;
    let mut planar_ok = 0u64;
    for n in 1..=4 {
        oracle::for_each_two_magic(2, n, false, DEFAULT_BUDGET, |m| {
            planar += 1;
            planar_ok += u64::from(oracle::is_sum_of_unit_magic(m).unwrap());
        })
        .unwrap();
    }
    Outcome {
        pass: magic && indec && !unit_sum && planar == planar_ok && planar == 1 + 3 + 21 + 282,
        summary: format!(
            "witness 2-magic={magic} indecomposable={indec} unit-sum={unit_sum}; d=2 n<=4: {planar_ok}/{planar} unit sums"
        ),
        data: json!({"witness": t.to_string(), "magic": magic, "indecomposable": indec, "unit_sum": unit_sum, "planar": planar, "planar_ok": planar_ok}),
    }
}

fn c6_v2() -> Outcome {
    let mut bad = Vec::new();
    let mut rows = Vec::new();
    for d in 2..=12u32 {
        let v2 = sequence::compute_v(d, 2).unwrap().get(2).unwrap().clone();
        let expected = BigUint::from(3u32).pow(d - 1) - 1u32;
        if v2 != expected {
            bad.push(d);
        }
        rows.push(v2.to_string());
    }
    Outcome {
        pass: bad.is_empty(),
        summary: format!("v_2(d) = 3^(d-1) - 1 for d = 2..=12, mismatches at {bad:?}; v_2(12) = {}", rows.last().unwrap()),
        data: json!(rows),
    }
}

/// The closed form for `w_n(2)` with the denominator `2^{n-k}` as printed.
fn printed_w2(n: usize) -> BigRational {
    let mut sum = BigRational::zero();
    for k in 0..=n {
        let numer = BigInt::from(binomial(2 * k as u64, k as i64));
        let shift = n as i64 - k as i64;
        let pow = BigRational::from_integer(BigInt::from(2u32)).pow(shift as i32);
        sum += BigRational::from_integer(numer) / (pow * BigRational::from_integer(BigInt::from(factorial((n - k) as u64))));
    }
    sum * BigRational::from_integer(BigInt::from(factorial(n as u64).pow(2)))
}

fn c7_routes() -> Outcome {
    let mut failures = Vec::new();
    for d in 2..=5u32 {
        if sequence::compute_u(d, 40).unwrap() != sequence::compute_u_direct(d, 40).unwrap() {
            failures.push(format!("u(d={d}) routes differ"));
        }
    }
    let u2 = sequence::compute_u(2, 100).unwrap();
    let w2 = sequence::compute_w(2, 100).unwrap();
    let v2 = sequence::compute_v(2, 100).unwrap();
    for n in 1..=100 {
        if &sequence::closed_u2(n) != u2.get(n).unwrap() {
            failures.push(format!("closed u2 at n={n}"));
        }
        if &sequence::closed_w2(n).unwrap() != w2.get(n).unwrap() {
            failures.push(format!("closed w2 at n={n}"));
        }
        if &sequence::closed_v2(n) != v2.get(n).unwrap() {
            failures.push(format!("closed v2 at n={n}"));
        }
    }
    let printed = printed_w2(1);
    let printed_fails = printed != BigRational::from_integer(BigInt::from(w2.get(1).unwrap().clone()));
    let five_halves = printed == BigRational::new(BigInt::from(5), BigInt::from(2));
    Outcome {
        pass: failures.is_empty() && printed_fails && five_halves,
        summary: format!(
            "u = u_direct for d=2..=5, n<=40; closed u2/w2/v2 match for n<=100 ({} failures); printed w2 form gives {printed} at n=1 vs w_1 = {}",
            failures.len(),
            w2.get(1).unwrap()
        ),
        data: json!({"failures": failures, "printed_w2_1": printed.to_string()}),
    }
}

fn c8_identity() -> Outcome {
    let bad: Vec<usize> = (2..=200).filter(|&n| !sequence::check_double_factorial_identity(n)).collect();
    Outcome {
        pass: bad.is_empty(),
        summary: format!("identity holds for n = 2..=200 except {bad:?}"),
        data: json!(bad),
    }
}

fn max_scaled_distance(series: &[(usize, ExactRatio)]) -> (ExactRatio, Option<usize>) {
    let limit = ExactRatio::from_integer(2);
    let constant = asymptotics::measured_constant(series).unwrap();
    let first_bad = series.iter().find_map(|(n, r)| {
        let scaled = r.distance_from_one().as_rational() * BigRational::from_integer(BigInt::from(*n));
        (ExactRatio::new(scaled.numer().clone(), scaled.denom().clone()).unwrap() > limit).then_some(*n)
    });
    (constant, first_bad)
}

fn c9_high_dimension() -> Outcome {
    let start = Instant::now();
    let one = ExactRatio::from_integer(1);
    let mut pass = true;
    let mut parts = Vec::new();
    let mut data = Vec::new();
    for d in 3..=5u32 {
        let u = sequence::compute_u(d, 40).unwrap();
        let w = sequence::compute_w(d, 40).unwrap();
        let us = asymptotics::ratio_series(RatioKind::URatio, &u, 2).unwrap();
        let ws = asymptotics::ratio_series(RatioKind::WRatio, &w, 2).unwrap();
        let bounded = us.iter().all(|(_, r)| *r <= one);
        // Equal at n = 2, 3 for d = 3; strictly increasing afterwards.
        let monotone = us.windows(2).all(|p| if p[1].0 >= 4 { p[1].1 > p[0].1 } else { p[1].1 >= p[0].1 });
        let tail: Vec<_> = us.iter().filter(|(n, _)| *n >= 10).cloned().collect();
        let wu: Vec<_> = us
            .iter()
            .zip(&ws)
            .filter(|((n, _), _)| *n >= 10)
            .map(|((n, ur), (_, wr))| (*n, wr.checked_div(ur).unwrap()))
            .collect();
        let (cu, bad_u) = max_scaled_distance(&tail);
        let (cw, bad_w) = max_scaled_distance(&wu);
        pass &= bounded && monotone && bad_u.is_none() && bad_w.is_none();
        parts.push(format!(
            "d={d}: <=1 {bounded}, increasing {monotone}, C_u={} C_w/u={}",
            cu.to_decimal_string(4),
            cw.to_decimal_string(4)
        ));
        data.push(json!({"d": d, "u_ratio_40": us.last().unwrap().1.to_string(), "c_u": cu.to_string(), "c_wu": cw.to_string()}));
    }
    let (fast, timing) = within(start, Duration::from_secs(30));
    Outcome {
        pass: pass && fast,
        summary: format!("{}; tolerance 2/n, {timing}", parts.join("; ")),
        data: json!(data),
    }
}

fn c10_planar() -> Outcome {
    let precision = 30;
    let w = sequence::compute_w(2, 200).unwrap();
    let one = ExactRatio::from_integer(1);
    let cap = ExactRatio::new(BigInt::from(6), BigInt::from(5)).unwrap();
    let series: Vec<_> = (1..=200).map(|n| asymptotics::w2_ratio(n, &w, precision).unwrap()).collect();
    let out_of_range: Vec<usize> = series
        .iter()
        .enumerate()
        .filter(|(_, r)| !(r.as_ratio() > one && r.as_ratio() < cap))
        .map(|(i, _)| i + 1)
        .collect();
    let dist = |n: usize| series[n - 1].distance_from_one();
    let shrinking = dist(200) < dist(100) && dist(100) < dist(50);
    Outcome {
        pass: out_of_range.is_empty() && shrinking && series[0].digits() >= 30,
        summary: format!(
            "ratio in (1, 1.2) for n=1..=200 (outside: {out_of_range:?}); |r-1| at 50/100/200 = {}/{}/{}",
            dist(50).to_f64(),
            dist(100).to_f64(),
            dist(200).to_f64()
        ),
        data: json!([series[0].to_string(), series[49].to_string(), series[99].to_string(), series[199].to_string()]),
    }
}

fn c11_inequalities() -> Outcome {
    let sqrt_bad: Vec<usize> = (1..=48).filter(|&n| !asymptotics::double_factorial_estimates_hold(n)).collect();
    let mut ratio_bad = Vec::new();
    for n in 2..=48 {
        for k in 0..=n {
            if !asymptotics::odd_ratio_inequality_holds(n, k) {
                ratio_bad.push((n, k));
            }
        }
    }
    let interior_bad = ratio_bad.iter().filter(|(n, k)| *k != 0 && k != n).count();
    let mut x_bad = Vec::new();
    for d in 3..=4u32 {
        let u = sequence::compute_u(d, 30).unwrap();
        let w = sequence::compute_w(d, 30).unwrap();
        if !asymptotics::x_bound_check(d, 30, &u, &w) {
            x_bad.push(d);
        }
    }
    Outcome {
        pass: sqrt_bad.is_empty() && ratio_bad.is_empty() && x_bad.is_empty(),
        summary: format!(
            "sqrt estimates fail at {sqrt_bad:?}; ratio inequality fails at {} of the (n,k) with 0<=k<=n (first {}, {interior_bad} with 0<k<n); x bound fails for d in {x_bad:?}",
            ratio_bad.len(),
            ratio_bad.first().map(|(n, k)| format!("n={n} k={k}")).unwrap_or_default()
        ),
        data: json!({"sqrt": sqrt_bad, "ratio": ratio_bad, "x": x_bad}),
    }
}

type Criterion = (u32, &'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 11] = [
    (1, "reference table", c1_table1),
    (2, "v oracle", c2_v_oracle),
    (3, "tensor oracles", c3_tensor_oracle),
    (4, "labelling double count", c4_double_count),
    (5, "unit-magic decomposition", c5_birkhoff),
    (6, "v_2(d)", c6_v2),
    (7, "route equivalences", c7_routes),
    (8, "double factorial identity", c8_identity),
    (9, "ratios for d >= 3", c9_high_dimension),
    (10, "ratio for d = 2", c10_planar),
    (11, "inequalities", c11_inequalities),
];

fn cli_json(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_magicount"))
        .arg("--no-cache")
        .arg("--json")
        .args(args)
        .output()
        .expect("binary runs");
    out.stdout
}

fn main() -> ExitCode {
    let mut failed = BTreeSet::new();
    let mut first_run = Vec::new();
    for (id, name, run) in CRITERIA {
        let outcome = run();
        println!(
            "{} criterion {id}: {name}: {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.summary
        );
        if !outcome.pass {
            failed.insert(id);
        }
        first_run.push(serde_json::to_vec(&outcome.data).unwrap());
    }

    let second_run: Vec<Vec<u8>> = CRITERIA.iter().map(|(_, _, run)| serde_json::to_vec(&run().data).unwrap()).collect();
    let differing: Vec<u32> = CRITERIA
        .iter()
        .zip(first_run.iter().zip(&second_run))
        .filter(|(_, (a, b))| a != b)
        .map(|(c, _)| c.0)
        .collect();
    let invocations: [&[&str]; 4] = [
        &["table1"],
        &["oracle", "--pairs", "2:3,3:2", "--checks", "v,w,w01,indec,bijection,birkhoff"],
        &["asym", "--dim", "3", "--n-max", "12"],
        &["asym", "--dim", "2", "--n-max", "25", "--precision", "30"],
    ];
    let cli_stable = invocations.iter().all(|args| {
        let a = cli_json(args);
        !a.is_empty() && a == cli_json(args)
    });
    let deterministic = differing.is_empty() && cli_stable;
    println!(
        "{} criterion 12: determinism: criteria 1-11 rerun byte-identical ({} differ), CLI JSON reports byte-identical: {cli_stable}",
        if deterministic { "PASS" } else { "FAIL" },
        differing.len()
    );
    if !deterministic {
        failed.insert(12);
    }

    let expected: BTreeSet<u32> = KNOWN_FAILING.iter().copied().collect();
    if failed == expected {
        println!("acceptance: {} of 12 criteria pass; known failures {KNOWN_FAILING:?}", 12 - failed.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failures {failed:?} differ from the known set {KNOWN_FAILING:?}");
        ExitCode::FAILURE
    }
}
