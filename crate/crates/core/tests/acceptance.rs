//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use weyl_coideal::census::{self, CensusOptions, CensusRow, REFERENCE_COUNTS};
use weyl_coideal::coideal::{self, CheckResult, Pair};
use weyl_coideal::verify;
use weyl_coideal::GroupTable;

const RANK_AT_MOST_3: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"];
const RANK_AT_MOST_4: &[&str] = &[
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2",
];

struct Outcome {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: Vec<String>,
    elapsed: Duration,
}

fn group(label: &str) -> GroupTable {
    GroupTable::builtin(label).unwrap_or_else(|e| panic!("{label}: {e}"))
}

/// Runtime budget per type for the census.
fn budget(label: &str) -> Duration {
    let rank: usize = label[1..].parse().unwrap();
    match label {
        "A5" | "A6" | "B5" | "D5" => Duration::from_secs(30),
        "A7" | "B6" | "D6" | "E6" => Duration::from_secs(5 * 60),
        "A8" | "B7" | "D7" => Duration::from_secs(15 * 60),
        _ if rank <= 4 => Duration::from_secs(5),
        _ => panic!("no budget for {label}"),
    }
}

fn census_rows(threads: usize) -> Vec<CensusRow> {
    let labels: Vec<&str> = REFERENCE_COUNTS.iter().map(|(l, _, _)| *l).collect();
    let opts = CensusOptions { threads, ..Default::default() };
    census::census_run(&labels, &opts)
        .into_iter()
        .map(|r| r.unwrap_or_else(|f| panic!("{}: {}", f.label, f.error)))
        .collect()
}

fn criterion_1(rows: &[CensusRow], threads: usize) -> (bool, Vec<String>) {
    let mut ok = true;
    let mut detail = vec![format!("workers: {threads}")];
    for ((label, order, expected), row) in REFERENCE_COUNTS.iter().zip(rows) {
        let elapsed = Duration::from_millis(row.elapsed_ms);
        let exact = row.label == *label && row.group_order == *order && row.b_count == *expected;
        let in_time = elapsed < budget(label);
        ok &= exact && in_time;
        detail.push(format!(
            "{} {label}: |W|={} |B(W)|={} (expected {expected}) in {:.3}s (budget {}s)",
            if exact && in_time { "ok " } else { "BAD" },
            row.group_order,
            row.b_count,
            elapsed.as_secs_f64(),
            budget(label).as_secs()
        ));
    }
    (ok, detail)
}

fn criterion_2() -> (bool, Vec<String>) {
    // (element, |{u : u ≤_R x}|, |Π ∩ xΠ|) in the row order of the G2 table.
    let rows: [(&[usize], u32, usize); 12] = [
        (&[], 1, 2),
        (&[1], 2, 0),
        (&[2], 2, 0),
        (&[1, 2], 3, 0),
        (&[2, 1], 3, 0),
        (&[1, 2, 1], 4, 0),
        (&[2, 1, 2], 4, 0),
        (&[1, 2, 1, 2], 5, 0),
        (&[2, 1, 2, 1], 5, 0),
        (&[1, 2, 1, 2, 1], 6, 1),
        (&[2, 1, 2, 1, 2], 6, 1),
        (&[1, 2, 1, 2, 1, 2], 12, 0),
    ];
    let t = group("G2");
    let d = census::downset_sizes(&t);
    let mut ok = true;
    let mut detail = Vec::new();
    for (k, (word, dx, pi)) in rows.iter().enumerate() {
        let letters: Vec<usize> = word.iter().map(|i| i - 1).collect();
        let x = t.from_word(&letters).unwrap();
        let got = (d.get(x), t.pi_cap_xpi(x).len());
        let row_ok = got == (*dx, *pi) && x.index() == k;
        ok &= row_ok;
        if !row_ok {
            detail.push(format!("row {k} {word:?}: got {got:?}, expected ({dx}, {pi})"));
        }
    }
    let total = census::count_bw_from(&t, &d).unwrap();
    ok &= total == 68;
    detail.push(format!("12 rows checked, |B(W)| = {total}"));
    (ok, detail)
}

fn criterion_3(length_checks: &mut CheckResult) -> (bool, Vec<String>) {
    let expected = [("A1", 4u64), ("A2", 26), ("A3", 252), ("B2", 38), ("B3", 664), ("C3", 664), ("G2", 68)];
    let mut ok = true;
    let mut detail = Vec::new();
    for (label, want) in expected {
        let t = group(label);
        let mut accepted = 0u64;
        for v in t.elements() {
            for w in t.elements() {
                if let Some(tr) = coideal::pair_to_triple(&t, Pair { v, w }) {
                    accepted += 1;
                    let wj = t.longest_parabolic(tr.j);
                    let (lv, lw) = (t.length(v), t.length(w));
                    let (lu, lj, lx) = (t.length(tr.u), t.length(wj), t.length(tr.x));
                    length_checks.record(lv == lu + lj && lw + lu == lx + lj, || {
                        format!("{label}: {}", coideal::describe_pair(&t, Pair { v, w }))
                    });
                }
            }
        }
        let count = census::count_bw(&t).unwrap();
        let row_ok = accepted == want && count == want;
        ok &= row_ok;
        detail.push(format!("{label}: accepted pairs {accepted}, count_BW {count}, expected {want}"));
    }
    (ok, detail)
}

fn criterion_4(length_checks: &mut CheckResult) -> (bool, Vec<String>) {
    let mut ok = true;
    let mut detail = Vec::new();
    let mut absorb = |label: &str, r: &verify::RoundTripReport, detail: &mut Vec<String>| {
        length_checks.instances += r.length_identities.instances;
        length_checks.failures += r.length_identities.failures;
        length_checks.examples.extend(r.length_identities.examples.iter().cloned());
        let failures = r.triple_first.failures + r.pair_first.failures;
        detail.push(format!(
            "{label}: {} triples, {} pairs round-tripped, {failures} failures",
            r.triple_first.instances, r.pair_first.instances
        ));
        for c in [&r.triple_first, &r.pair_first] {
            detail.extend(c.examples.iter().map(|e| format!("  {label}: {e}")));
        }
        failures == 0
    };
    for label in RANK_AT_MOST_3 {
        let t = group(label);
        let r = verify::round_trips_exhaustive(&t);
        ok &= absorb(label, &r, &mut detail);
        ok &= r.accepted_pairs == Some(r.triples);
    }
    for (k, label) in ["A4", "A5", "B4", "D4"].into_iter().enumerate() {
        let t = group(label);
        let r = verify::round_trips_sampled(&t, 10_000, 0x5eed + k as u64);
        ok &= r.triple_first.instances >= 10_000;
        ok &= absorb(label, &r, &mut detail);
    }
    (ok, detail)
}

fn criterion_5() -> (bool, Vec<String>) {
    let mut ok = true;
    let mut detail = Vec::new();
    for label in ["A2", "A3", "B2", "B3", "G2"] {
        let report = coideal::check_lemma_suite(&group(label));
        for c in report.checks() {
            ok &= c.passed();
            detail.push(format!("{label}: {c}"));
        }
    }
    (ok, detail)
}

fn criterion_6() -> (bool, Vec<String>) {
    let mut ok = true;
    let mut detail = Vec::new();
    for label in RANK_AT_MOST_4 {
        let c = verify::weak_order_backends(&group(label));
        ok &= c.passed();
        detail.push(format!("{label}: {c}"));
    }
    (ok, detail)
}

fn strip_timing(rows: &[CensusRow]) -> String {
    census::census_csv(rows, false)
}

fn main() {
    let workers = CensusOptions::default().threads;
    let mut outcomes: Vec<Outcome> = Vec::new();
    let mut run = |id: u32, title: &'static str, limit: Option<Duration>, f: &mut dyn FnMut() -> (bool, Vec<String>)| {
        let start = Instant::now();
        let (mut passed, mut detail) = f();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed >= limit {
                passed = false;
                detail.push(format!("exceeded time limit of {}s", limit.as_secs()));
            }
        }
        outcomes.push(Outcome { id, title, passed, detail, elapsed });
    };

    let mut lengths = CheckResult::new("length identities");

    run(2, "G2 table of d(x) and |Pi cap xPi|", Some(Duration::from_secs(1)), &mut criterion_2);
    run(3, "bijection census, rank <= 3", Some(Duration::from_secs(60)), &mut || criterion_3(&mut lengths));
    run(4, "round trips", None, &mut || criterion_4(&mut lengths));
    run(5, "lemma suite, rank <= 3", Some(Duration::from_secs(5 * 60)), &mut criterion_5);
    run(6, "weak-order backend equivalence, rank <= 4", Some(Duration::from_secs(2 * 60)), &mut criterion_6);
    let length_result = lengths.clone();
    run(7, "length identities on every decomposition", None, &mut || {
        (length_result.passed() && length_result.instances > 0, vec![length_result.to_string()])
    });

    let mut first: Vec<CensusRow> = Vec::new();
    run(1, "reference census counts within budget", None, &mut || {
        first = census_rows(workers);
        criterion_1(&first, workers)
    });
    let other_threads = if workers == 1 { 3 } else { 1 };
    run(8, "census determinism across thread counts", None, &mut || {
        let second = census_rows(other_threads);
        let (a, b) = (strip_timing(&first), strip_timing(&second));
        (
            a == b && !a.is_empty(),
            vec![format!(
                "{workers} vs {other_threads} workers: {} bytes vs {} bytes, identical = {}",
                a.len(),
                b.len(),
                a == b
            )],
        )
    });

    outcomes.sort_by_key(|o| o.id);
    let mut all = true;
    for o in &outcomes {
        all &= o.passed;
        println!(
            "{} criterion {}: {} ({:.2}s)",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.elapsed.as_secs_f64()
        );
        for line in &o.detail {
            for sub in line.lines() {
                println!("    {sub}");
            }
        }
    }
    if !all {
        eprintln!("acceptance: at least one criterion failed");
        std::process::exit(1);
    }
    println!("acceptance: all {} criteria passed", outcomes.len());
}
