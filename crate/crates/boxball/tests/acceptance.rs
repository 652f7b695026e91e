//! Acceptance criteria, one pass/fail line each. Runs without the libtest harness so
//! the lines always reach the output; exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use boxball::lab::{verify, LabOptions, Suite, VerificationReport};
use boxball::report::to_json;
use boxball_core::bbs::{
    bbs_move, carrier_move, evolve, from_permutation, local_decr, soliton_decomposition,
};
use boxball_core::knuth::{chain_tableaux, q_hat};
use boxball_core::rs::{
    column_reading_word, column_superstandard, decr, incr, inverse_rs, rs_insert,
};
use boxball_core::tableau::standard_tableaux;
use boxball_core::{BbsConfiguration, Partition, Permutation, Tableau};
use serde_json::{json, Value};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn tab(rows: &[&[u32]]) -> Tableau {
    Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

/// Figure notation from box 1 to the last ball.
fn from_box_1(x: &BbsConfiguration) -> String {
    x.to_compact(1, x.last_box())
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn ensure_eq<T: PartialEq + std::fmt::Debug>(
    what: &str,
    expected: T,
    actual: T,
) -> Result<(), String> {
    ensure(expected == actual, || {
        format!("{what}: expected {expected:?}, got {actual:?}")
    })
}

fn report(suite: Suite, n: usize) -> VerificationReport {
    verify(suite, n, &LabOptions::default()).unwrap_or_else(|e| panic!("{suite} n={n}: {e}"))
}

fn ensure_pass(r: &VerificationReport) -> Result<(), String> {
    ensure(r.pass, || {
        format!(
            "{} n={}: {} violations, first {:?}",
            r.suite,
            r.n,
            r.violation_count,
            r.violations.first()
        )
    })
}

fn golden_traces() -> Outcome {
    let x = from_permutation(&perm("452361"));
    let expected = [
        "452361",
        "ee45e2136",
        "eeee452ee136",
        "eeeeee425eee136",
        "eeeeeee4e25eeee136",
    ];
    for (t, want) in expected.iter().enumerate() {
        ensure_eq(
            &format!("BB^{t}"),
            *want,
            from_box_1(&evolve(&x, t)).as_str(),
        )?;
    }
    let sd = soliton_decomposition(&perm("452361")).map_err(|e| e.to_string())?;
    ensure_eq("SST", 3, sd.steady_state_time)?;
    ensure_eq("SD", tab(&[&[1, 3, 6], &[2, 5], &[4]]), sd.tableau)?;
    // best of several runs, so a busy machine does not decide the verdict
    let best = (0..20)
        .map(|_| {
            let start = Instant::now();
            let sd = soliton_decomposition(&perm("452361")).unwrap();
            std::hint::black_box(&sd);
            start.elapsed()
        })
        .min()
        .unwrap();
    ensure(best < Duration::from_millis(1), || format!("took {best:?}"))?;
    Ok(format!("BB^1..BB^4 match, SST 3, SD 136/25/4, {best:?}"))
}

fn worked_examples() -> Outcome {
    let w = perm("5623714");
    let pair = rs_insert(&w);
    ensure_eq("P(5623714)", tab(&[&[1, 3, 4], &[2, 6, 7], &[5]]), pair.p)?;
    ensure_eq("Q(5623714)", tab(&[&[1, 2, 5], &[3, 4, 7], &[6]]), pair.q)?;
    let sd = soliton_decomposition(&w).unwrap().tableau;
    ensure_eq(
        "SD(5623714)",
        tab(&[&[1, 3, 4], &[2, 7], &[5, 6]]),
        sd.clone(),
    )?;
    ensure_eq(
        "incr, decr, localdecr",
        (3, 3, 3),
        (incr(&w), decr(&w), local_decr(&from_permutation(&w))),
    )?;
    ensure(!sd.is_standard(), || {
        "SD(5623714) should be nonstandard".into()
    })?;

    let sd = soliton_decomposition(&perm("164352879")).unwrap().tableau;
    ensure_eq(
        "SD(164352879)",
        tab(&[&[1, 2, 5, 7, 9], &[8], &[3], &[4], &[6]]),
        sd.clone(),
    )?;
    ensure_eq("shape", vec![5, 1, 1, 1, 1], sd.row_lengths())?;

    let w = perm("5274163");
    let sd = soliton_decomposition(&w).unwrap();
    ensure_eq("SST(5274163)", 1, sd.steady_state_time)?;
    ensure_eq(
        "BB^1(5274163)",
        "e5e72e4136",
        from_box_1(&bbs_move(&from_permutation(&w))).as_str(),
    )?;
    ensure_eq(
        "SD(5274163)",
        tab(&[&[1, 3, 6], &[4], &[2], &[7], &[5]]),
        sd.tableau,
    )?;

    let t = tab(&[&[1, 2, 5], &[3, 4, 8], &[6, 7]]);
    let w = column_reading_word(&t).unwrap();
    ensure_eq("column word", perm("63174285"), w.clone())?;
    let pair = rs_insert(&w);
    ensure_eq("P(column word)", t, pair.p)?;
    let shape = Partition::new(vec![3, 3, 2]).unwrap();
    ensure_eq("Q(column word)", column_superstandard(&shape), pair.q)?;
    ensure(
        soliton_decomposition(&w).unwrap().steady_state_time <= 1,
        || "column word SST > 1".into(),
    )?;

    let chain = chain_tableaux(6).unwrap();
    let ssts: Vec<usize> = chain
        .iter()
        .map(|l| {
            soliton_decomposition(&l.involution)
                .unwrap()
                .steady_state_time
        })
        .collect();
    ensure_eq("chain SSTs", vec![0, 1, 2, 3], ssts)?;
    let invs: Vec<String> = chain.iter().map(|l| l.involution.to_string()).collect();
    ensure_eq(
        "chain involutions",
        vec!["425136", "453126", "351426", "361452"],
        invs.iter().map(String::as_str).collect(),
    )?;
    Ok("5623714, 164352879, 5274163, 63174285 and the n=6 chain match".into())
}

fn carrier_oracle() -> Outcome {
    let start = Instant::now();
    let mut permutations = 0;
    let mut random = 0;
    for n in 1..=7 {
        let r = report(Suite::Carrier, n);
        ensure_pass(&r)?;
        permutations += r.evidence["permutations"].as_u64().unwrap();
        random += r.evidence["random_configurations"].as_u64().unwrap();
    }
    // spot check outside the lab as well
    let x = BbsConfiguration::parse_compact("452ee136", 1).unwrap();
    ensure_eq(
        "carrier example",
        "ee425eee136",
        carrier_move(&x).to_compact(1, 11).as_str(),
    )?;
    ensure_eq("carrier example agrees", bbs_move(&x), carrier_move(&x))?;
    ensure_eq("permutations", 5913, permutations)?;
    ensure_eq("random configurations", 7000, random)?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{permutations} permutations + {random} random configurations, 0 mismatches, {elapsed:.2?}"
    ))
}

fn theorem_suites() -> Outcome {
    let theorems: Vec<Suite> = Suite::ALL
        .into_iter()
        .filter(|&s| s != Suite::CountGood)
        .collect();
    let mut runs = 0;
    let mut slowest = (Duration::ZERO, String::new());
    for &suite in &theorems {
        for n in 1..=7 {
            let start = Instant::now();
            ensure_pass(&report(suite, n))?;
            let took = start.elapsed();
            if took > slowest.0 {
                slowest = (took, format!("{suite} n={n}"));
            }
            runs += 1;
        }
    }
    ensure(slowest.0 < Duration::from_secs(60), || {
        format!("{} took {:?}", slowest.1, slowest.0)
    })?;
    // extended ranges
    for (suite, n) in [
        (Suite::Involutions, 8),
        (Suite::Involutions, 9),
        (Suite::SstBounds, 8),
    ] {
        ensure_pass(&report(suite, n))?;
        runs += 1;
    }
    for n in 5..=9 {
        let q = q_hat(n).unwrap();
        let shape = q.shape().unwrap();
        for p in standard_tableaux(&shape) {
            let w = inverse_rs(&p, &q).unwrap();
            let sst = soliton_decomposition(&w).unwrap().steady_state_time;
            ensure_eq(&format!("SST of {w} in the Q-hat class"), n - 3, sst)?;
        }
    }
    Ok(format!(
        "{} suites x n=1..7 plus extended ranges, {runs} runs, 0 violations, slowest {} {:.2?}",
        theorems.len(),
        slowest.1,
        slowest.0
    ))
}

fn conjecture_evidence() -> Outcome {
    let goods: Vec<u64> = (1..=7)
        .map(|n| {
            report(Suite::CountGood, n).evidence["good"]
                .as_u64()
                .unwrap()
        })
        .collect();
    ensure_eq(
        "good tableau counts",
        vec![1, 2, 4, 9, 21, 51, 127],
        goods.clone(),
    )?;
    let four = report(Suite::CountGood, 4);
    ensure_eq(
        "bad size-4 tableaux",
        &json!([{ "rows": [[1, 3], [2, 4]] }]),
        &four.evidence["bad"],
    )?;
    let start = Instant::now();
    for n in 1..=8 {
        let r = report(Suite::PatternGoodness, n);
        ensure_pass(&r)?;
        ensure_eq(
            &format!("closure counterexamples n={n}"),
            &json!(0),
            &r.evidence["closure_counterexamples"],
        )?;
    }
    let n8 = start.elapsed();
    ensure(n8 < Duration::from_secs(300), || {
        format!("closure search took {n8:?}")
    })?;
    for n in 5..=7 {
        let r = report(Suite::SstBounds, n);
        ensure_eq(
            &format!("max SST n={n}"),
            &json!(n - 3),
            &r.evidence["global_max_sst"],
        )?;
        ensure_eq(
            &format!("only Q-hat n={n}"),
            &Value::Bool(true),
            &r.evidence["max_attained_only_by_q_hat"],
        )?;
    }
    Ok(format!("good counts {goods:?} (Motzkin), bad size-4 tableau 13/24, no closure counterexamples to n=8, max SST n-3 only at Q-hat for n=5..7"))
}

fn determinism() -> Outcome {
    for (suite, n) in [
        (Suite::QInvariance, 6),
        (Suite::SstBounds, 7),
        (Suite::DualKnuth, 6),
        (Suite::PatternGoodness, 7),
    ] {
        let one = to_json(&verify(suite, n, &LabOptions::default().with_jobs(1)).unwrap()).unwrap();
        let eight =
            to_json(&verify(suite, n, &LabOptions::default().with_jobs(8)).unwrap()).unwrap();
        ensure(one == eight, || {
            format!("{suite} n={n} differs between 1 and 8 jobs")
        })?;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for jobs in ["1", "8"] {
        let path = dir.path().join(format!("jobs{jobs}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_boxball"))
            .args([
                "verify",
                "--suite",
                "q-invariance",
                "--n",
                "6",
                "--jobs",
                jobs,
                "--out",
            ])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?
            .status;
        ensure_eq("exit code", Some(0), status.code())?;
        files.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(files[0] == files[1], || {
        "CLI reports differ between --jobs 1 and --jobs 8".into()
    })?;
    Ok("library and CLI reports byte-identical for 1 and 8 jobs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("golden traces", golden_traces),
        ("worked examples", worked_examples),
        ("carrier oracle equivalence", carrier_oracle),
        ("theorem suites", theorem_suites),
        ("conjecture evidence", conjecture_evidence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS  {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
