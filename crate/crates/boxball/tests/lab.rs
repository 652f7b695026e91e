use std::collections::{BTreeMap, BTreeSet};

use boxball::lab::{verify, verify_q_invariance, LabError, LabOptions, Suite};
use boxball::report::{read_report, write_csv, write_report};
use boxball_core::bbs::{config_steady_state_time, evolve, increasing_runs, steady_state_time};
use boxball_core::knuth::{dual_knuth_class, q_hat};
use boxball_core::rs::recording_tableau;
use boxball_core::{permutations, BbsConfiguration, Permutation};
use serde_json::json;

/// A deliberately naive box-ball system: a sparse map from box to ball.
mod naive {
    use std::collections::BTreeMap;

    pub type Boxes = BTreeMap<i64, u32>;

    pub fn seed(word: &[u32]) -> Boxes {
        word.iter()
            .enumerate()
            .map(|(i, &v)| (i as i64 + 1, v))
            .collect()
    }

    pub fn step(boxes: &Boxes) -> Boxes {
        let mut b = boxes.clone();
        for ball in 1..=b.len() as u32 {
            let from = *b.iter().find(|(_, &v)| v == ball).unwrap().0;
            let mut to = from + 1;
            while b.contains_key(&to) {
                to += 1;
            }
            b.remove(&from);
            b.insert(to, ball);
        }
        b
    }

    /// Maximal increasing runs of adjacent balls, rightmost first.
    pub fn runs(b: &Boxes) -> Vec<Vec<u32>> {
        let mut runs: Vec<Vec<u32>> = Vec::new();
        let mut prev: Option<(i64, u32)> = None;
        for (&pos, &v) in b {
            match prev {
                Some((p, u)) if p + 1 == pos && u < v => runs.last_mut().unwrap().push(v),
                _ => runs.push(vec![v]),
            }
            prev = Some((pos, v));
        }
        runs.reverse();
        runs
    }

    pub fn steady(b: &Boxes) -> bool {
        let r = runs(b);
        r.windows(2).all(|p| p[0].len() >= p[1].len()) && runs(&step(b)) == r
    }

    pub fn sst(word: &[u32]) -> usize {
        let mut b = seed(word);
        let mut t = 0;
        while !steady(&b) {
            b = step(&b);
            t += 1;
        }
        t
    }
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

#[test]
fn naive_oracle_agrees_on_small_orbits() {
    for w in permutations(6) {
        assert_eq!(
            steady_state_time(&w, 12).unwrap(),
            naive::sst(w.word()),
            "{w}"
        );
    }
}

#[test]
fn sst_evidence_matches_naive_oracle() {
    for n in 5..=7 {
        let mut by_q: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
        let mut histogram = vec![0u64; n];
        for w in permutations(n) {
            let sst = naive::sst(w.word());
            histogram[sst] += 1;
            by_q.entry(sst)
                .or_default()
                .insert(recording_tableau(&w).to_string());
        }
        let (&max, argmax) = by_q.iter().next_back().unwrap();
        histogram.truncate(max + 1);
        let r = verify(Suite::SstBounds, n, &LabOptions::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.evidence["global_max_sst"], json!(max));
        assert_eq!(r.evidence["sst_histogram"], json!(histogram));
        assert_eq!(r.evidence["max_attained_by"], json!(argmax));
        assert_eq!(max, n - 3);
        assert_eq!(
            argmax.iter().collect::<Vec<_>>(),
            vec![&q_hat(n).unwrap().to_string()]
        );
    }
}

#[test]
fn q_invariance_class_count_is_involution_count() {
    let involutions = permutations(6).filter(|w| w.inverse() == *w).count();
    assert_eq!(involutions, 76);
    let r = verify_q_invariance(6).unwrap();
    assert!(r.pass);
    assert_eq!(r.evidence["classes"], json!(involutions));
    let one = verify_q_invariance(1).unwrap();
    assert_eq!(
        (one.checked, one.evidence["classes"].clone()),
        (1, json!(1))
    );
}

#[test]
fn q_class_pair_shares_steady_state_time() {
    let (a, b) = (perm("452361"), perm("451362"));
    assert!(dual_knuth_class(&a).contains(&b));
    assert_eq!(recording_tableau(&a), recording_tableau(&b));
    assert_eq!(steady_state_time(&a, 12).unwrap(), 3);
    assert_eq!(steady_state_time(&b, 12).unwrap(), 3);
}

#[test]
fn second_soliton_can_lag_for_gapped_configurations() {
    let x = BbsConfiguration::parse_compact("ee45e2136", 1).unwrap();
    assert_eq!(increasing_runs(&x).rows()[0], vec![1, 3, 6]);
    assert_eq!(config_steady_state_time(&x, 10).unwrap(), 2);
    let second: Vec<Vec<u32>> = (0..=2)
        .map(|t| increasing_runs(&evolve(&x, t)).rows()[1].clone())
        .collect();
    assert_eq!(second, vec![vec![2], vec![2], vec![2, 5]]);
}

#[test]
fn small_suites_pass_with_expected_counts() {
    let r = verify(Suite::FirstSoliton, 6, &LabOptions::default()).unwrap();
    assert_eq!((r.checked, r.violation_count), (720, 0));
    let r = verify(Suite::LShaped, 7, &LabOptions::default()).unwrap();
    assert!(r.pass);
    let r = verify(Suite::PatternGoodness, 7, &LabOptions::default()).unwrap();
    assert!(r.pass);
    assert_eq!(r.evidence["consecutive_closure_holds"], json!(true));
    let r = verify(Suite::CountGood, 5, &LabOptions::default()).unwrap();
    assert_eq!(
        (
            r.evidence["good"].clone(),
            r.evidence["motzkin_match"].clone()
        ),
        (json!(21), json!(true))
    );
}

#[test]
fn reports_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested").join("count.json");
    let r = verify(Suite::CountGood, 4, &LabOptions::default()).unwrap();
    let csv = write_report(&r, &path).unwrap();
    assert_eq!(read_report(&path).unwrap(), r);
    assert_eq!(
        std::fs::read_to_string(csv).unwrap(),
        "n,total,good,motzkin,match\n4,10,9,9,true\n"
    );
    let raw: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let keys: Vec<&str> = raw
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    for key in [
        "suite",
        "n",
        "checked",
        "violations",
        "evidence",
        "wall_time_s",
    ] {
        assert!(keys.contains(&key), "{key}");
    }
}

#[test]
fn empty_summary_is_header_only() {
    let mut buf = Vec::new();
    write_csv(&[], &mut buf).unwrap();
    assert_eq!(
        String::from_utf8(buf).unwrap(),
        "suite,n,checked,violations,pass\n"
    );
}

#[test]
fn io_errors_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let r = verify(Suite::Rs, 3, &LabOptions::default()).unwrap();
    assert!(matches!(
        write_report(&r, &blocker.join("r.json")),
        Err(LabError::Io { .. })
    ));
    assert!(matches!(
        read_report(&dir.path().join("missing.json")),
        Err(LabError::Io { .. })
    ));
}

#[test]
fn timing_is_opt_in() {
    let plain = verify(Suite::Carrier, 4, &LabOptions::default()).unwrap();
    assert_eq!(plain.wall_time_s, None);
    let timed = verify(
        Suite::Carrier,
        4,
        &LabOptions {
            timing: true,
            ..LabOptions::default()
        },
    )
    .unwrap();
    assert!(timed.wall_time_s.is_some());
}
