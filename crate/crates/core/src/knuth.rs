//! Dual Knuth relations on permutations and configurations, Q-classes, and
//! Bender-Knuth involutions.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::bbs::bbs_move_snapshots;
use crate::config::BbsConfiguration;
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::rs::inverse_rs;
use crate::tableau::{is_standard, rows_form_standard, Tableau};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum DualKnuthKind {
    /// `k` sits between `k+1` and `k+2`; those two are exchanged.
    First,
    /// `k+2` sits between `k` and `k+1`; those two are exchanged.
    Second,
}

/// One elementary dual Knuth move.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DualKnuthStep {
    pub kind: DualKnuthKind,
    /// Smallest of the three values involved.
    pub k: u32,
    /// The two values exchanged.
    pub swapped: (u32, u32),
}

impl DualKnuthStep {
    pub fn new(kind: DualKnuthKind, k: u32) -> Self {
        let swapped = match kind {
            DualKnuthKind::First => (k + 1, k + 2),
            DualKnuthKind::Second => (k, k + 1),
        };
        DualKnuthStep { kind, k, swapped }
    }
}

impl fmt::Display for DualKnuthStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DualKnuthKind::First => "K1*",
            DualKnuthKind::Second => "K2*",
        };
        write!(
            f,
            "{kind}(k={}, swap {}<->{})",
            self.k, self.swapped.0, self.swapped.1
        )
    }
}

fn between<T: PartialOrd>(mid: T, a: T, b: T) -> bool {
    (a < mid && mid < b) || (b < mid && mid < a)
}

/// Steps applicable to a word whose value `v` sits at `pos[v]`.
fn applicable_steps<T: PartialOrd + Copy>(pos: &[T], n: usize) -> Vec<DualKnuthStep> {
    let mut out = Vec::new();
    for k in 1..=(n as u32).saturating_sub(2) {
        let (pk, pk1, pk2) = (pos[k as usize], pos[k as usize + 1], pos[k as usize + 2]);
        if between(pk, pk1, pk2) {
            out.push(DualKnuthStep::new(DualKnuthKind::First, k));
        }
        if between(pk2, pk, pk1) {
            out.push(DualKnuthStep::new(DualKnuthKind::Second, k));
        }
    }
    out
}

/// Every permutation one dual Knuth move away from `w`, with the move used.
pub fn dual_knuth_neighbors(w: &Permutation) -> Vec<(Permutation, DualKnuthStep)> {
    applicable_steps(&w.positions(), w.len())
        .into_iter()
        .map(|s| (w.swap_values(s.swapped.0, s.swapped.1), s))
        .collect()
}

/// Closure of `{w}` under dual Knuth moves, by breadth-first search.
pub fn dual_knuth_class(w: &Permutation) -> BTreeSet<Permutation> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(cur) = queue.pop_front() {
        for (next, _) in dual_knuth_neighbors(&cur) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Configurations one dual Knuth move away from `x`; only balls are ever exchanged.
pub fn config_dual_knuth_neighbors(x: &BbsConfiguration) -> Vec<(BbsConfiguration, DualKnuthStep)> {
    applicable_steps(&x.ball_positions(), x.n())
        .into_iter()
        .map(|s| (x.swap_balls(s.swapped.0, s.swapped.1), s))
        .collect()
}

/// All moves turning `x` into `y` (a swap of `j, j+1` can qualify as both kinds).
pub fn config_dual_knuth_steps(x: &BbsConfiguration, y: &BbsConfiguration) -> Vec<DualKnuthStep> {
    if x.n() != y.n() || x.offset() != y.offset() || x.cells().len() != y.cells().len() {
        return Vec::new();
    }
    let diffs: Vec<usize> = (0..x.cells().len())
        .filter(|&i| x.cells()[i] != y.cells()[i])
        .collect();
    let [i, j] = diffs[..] else {
        return Vec::new();
    };
    let (Some(a), Some(b)) = (x.cells()[i], x.cells()[j]) else {
        return Vec::new();
    };
    if y.cells()[i] != Some(b) || y.cells()[j] != Some(a) || a.abs_diff(b) != 1 {
        return Vec::new();
    }
    let lo = a.min(b);
    applicable_steps(&x.ball_positions(), x.n())
        .into_iter()
        .filter(|s| s.swapped == (lo, lo + 1))
        .collect()
}

/// The dual Knuth move relating `x` and `y`, if any (first kind preferred when both apply).
pub fn config_dual_knuth_related(
    x: &BbsConfiguration,
    y: &BbsConfiguration,
) -> Option<DualKnuthStep> {
    config_dual_knuth_steps(x, y).into_iter().next()
}

/// True when `x` shows the step's three balls in the displayed orientation:
/// `k+1 .. k .. k+2` for the first kind, `k .. k+2 .. k+1` for the second.
pub fn in_displayed_orientation(x: &BbsConfiguration, step: DualKnuthStep) -> bool {
    let pos = x.ball_positions();
    let p = |v: u32| pos[v as usize];
    let k = step.k;
    match step.kind {
        DualKnuthKind::First => p(k + 1) < p(k) && p(k) < p(k + 2),
        DualKnuthKind::Second => p(k) < p(k + 2) && p(k + 2) < p(k + 1),
    }
}

/// Kind of the relation between the images of a related pair under one move.
///
/// First-kind pairs stay first kind. A second-kind pair stays second kind exactly
/// when, right after balls `1..k-1` have jumped, some empty box lies between balls
/// `k` and `k+1`; otherwise the images are related by the first kind.
pub fn image_kind(x: &BbsConfiguration, step: DualKnuthStep) -> DualKnuthKind {
    match step.kind {
        DualKnuthKind::First => DualKnuthKind::First,
        DualKnuthKind::Second => {
            let snapshot = &bbs_move_snapshots(x)[step.k as usize - 1];
            let a = snapshot.position_of(step.k).expect("ball k present");
            let b = snapshot.position_of(step.k + 1).expect("ball k+1 present");
            if snapshot.empties_between(a.min(b), a.max(b)) > 0 {
                DualKnuthKind::Second
            } else {
                DualKnuthKind::First
            }
        }
    }
}

/// Swaps `i` and `i+1` when the result is still standard; otherwise returns `t`.
pub fn bender_knuth(t: &Tableau, i: u32) -> Result<Tableau> {
    if !is_standard(t) {
        return Err(Error::NotStandard);
    }
    if i == 0 || i as usize >= t.size() {
        return Err(Error::InvalidArgument(
            "Bender-Knuth index must lie in 1..n-1",
        ));
    }
    let rows = t.swapped_rows(i, i + 1);
    if rows_form_standard(&rows) {
        Ok(Tableau::from_rows_unchecked(rows))
    } else {
        Ok(t.clone())
    }
}

/// `[[1,2,5,6,...,n-1],[3,4],[n]]`, the recording tableau of maximal steady-state time.
pub fn q_hat(n: usize) -> Result<Tableau> {
    if n < 5 {
        return Err(Error::InvalidArgument("q_hat needs n >= 5"));
    }
    let n = n as u32;
    let mut first = alloc::vec![1, 2];
    first.extend(5..n);
    Ok(Tableau::from_rows_unchecked(alloc::vec![
        first,
        alloc::vec![3, 4],
        alloc::vec![n]
    ]))
}

/// One link of the chain of recording tableaux with steady-state times `0..=n-3`.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ChainLink {
    pub tableau: Tableau,
    pub expected_sst: usize,
    /// The involution with `P = Q = tableau`.
    pub involution: Permutation,
}

/// `Q0, s2(Q0), s4 s2(Q0), ..., s_{n-1} ... s4 s2(Q0)` with
/// `Q0 = [[1,3,6,7,...,n],[2,5],[4]]`.
pub fn chain_tableaux(n: usize) -> Result<Vec<ChainLink>> {
    if n < 5 {
        return Err(Error::InvalidArgument("chain needs n >= 5"));
    }
    let mut first = alloc::vec![1u32, 3];
    first.extend(6..=n as u32);
    let q0 = Tableau::new(alloc::vec![first, alloc::vec![2, 5], alloc::vec![4]])?;
    let mut tableaux = alloc::vec![q0.clone()];
    let mut cur = bender_knuth(&q0, 2)?;
    tableaux.push(cur.clone());
    for k in 4..n as u32 {
        cur = bender_knuth(&cur, k)?;
        tableaux.push(cur.clone());
    }
    tableaux
        .into_iter()
        .enumerate()
        .map(|(sst, t)| {
            let involution = inverse_rs(&t, &t)?;
            Ok(ChainLink {
                tableau: t,
                expected_sst: sst,
                involution,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bbs::bbs_move;
    use crate::permutation::permutations;
    use crate::rs::recording_tableau;
    use alloc::vec;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn cfg(s: &str) -> BbsConfiguration {
        BbsConfiguration::parse_compact(s, 1).unwrap()
    }

    fn t(rows: &[&[u32]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn neighbor_examples() {
        let nb = dual_knuth_neighbors(&perm("452361"));
        assert!(nb.contains(&(perm("451362"), DualKnuthStep::new(DualKnuthKind::Second, 1))));
        assert_eq!(
            dual_knuth_neighbors(&perm("312")),
            vec![(perm("213"), DualKnuthStep::new(DualKnuthKind::First, 1))]
        );
        assert_eq!(
            recording_tableau(&perm("312")),
            recording_tableau(&perm("213"))
        );
        assert!(dual_knuth_neighbors(&Permutation::identity(6)).is_empty());
    }

    #[test]
    fn class_examples() {
        let class: Vec<_> = dual_knuth_class(&perm("312")).into_iter().collect();
        assert_eq!(class, vec![perm("213"), perm("312")]);
        assert_eq!(dual_knuth_class(&perm("1")).len(), 1);
        assert!(dual_knuth_class(&perm("452361")).contains(&perm("451362")));
    }

    #[test]
    fn class_equals_q_class_small() {
        for n in 1..=5 {
            for w in permutations(n) {
                let q = recording_tableau(&w);
                let by_q: BTreeSet<_> = permutations(n)
                    .filter(|p| recording_tableau(p) == q)
                    .collect();
                assert_eq!(dual_knuth_class(&w), by_q);
            }
        }
    }

    #[test]
    fn configuration_relation_examples() {
        let (x, y) = (cfg("451362"), cfg("452361"));
        assert_eq!(
            config_dual_knuth_related(&x, &y),
            Some(DualKnuthStep::new(DualKnuthKind::Second, 1))
        );
        let (bx, by) = (bbs_move(&x), bbs_move(&y));
        assert_eq!(bx, cfg("ee45e3126"));
        assert_eq!(by, cfg("ee45e2136"));
        assert_eq!(
            config_dual_knuth_related(&bx, &by).map(|s| s.kind),
            Some(DualKnuthKind::First)
        );
        assert_eq!(config_dual_knuth_related(&x, &x), None);
        // the relation requires a ball between the swapped pair
        assert_eq!(config_dual_knuth_related(&cfg("12"), &cfg("21")), None);
    }

    #[test]
    fn image_kind_on_worked_example() {
        let x = cfg("451362");
        let step = DualKnuthStep::new(DualKnuthKind::Second, 1);
        assert!(in_displayed_orientation(&x, step));
        assert_eq!(image_kind(&x, step), DualKnuthKind::First);
    }

    #[test]
    fn bender_knuth_examples() {
        let q = t(&[&[1, 3, 6], &[2, 5], &[4]]);
        let s2 = bender_knuth(&q, 2).unwrap();
        assert_eq!(s2, t(&[&[1, 2, 6], &[3, 5], &[4]]));
        assert_eq!(bender_knuth(&s2, 3).unwrap(), s2);
        assert_eq!(bender_knuth(&t(&[&[1, 2]]), 1).unwrap(), t(&[&[1, 2]]));
        assert_eq!(
            bender_knuth(&t(&[&[1, 3, 4], &[2, 7], &[5, 6]]), 1),
            Err(Error::NotStandard)
        );
        assert!(bender_knuth(&t(&[&[1, 2]]), 2).is_err());
    }

    #[test]
    fn chain_for_six() {
        let chain = chain_tableaux(6).unwrap();
        let tabs: Vec<_> = chain.iter().map(|l| l.tableau.clone()).collect();
        assert_eq!(
            tabs,
            vec![
                t(&[&[1, 3, 6], &[2, 5], &[4]]),
                t(&[&[1, 2, 6], &[3, 5], &[4]]),
                t(&[&[1, 2, 6], &[3, 4], &[5]]),
                t(&[&[1, 2, 5], &[3, 4], &[6]]),
            ]
        );
        let ssts: Vec<_> = chain.iter().map(|l| l.expected_sst).collect();
        assert_eq!(ssts, vec![0, 1, 2, 3]);
        let inv: Vec<_> = chain.iter().map(|l| l.involution.clone()).collect();
        assert_eq!(
            inv,
            vec![
                perm("425136"),
                perm("453126"),
                perm("351426"),
                perm("361452")
            ]
        );
        assert_eq!(tabs.last().unwrap(), &q_hat(6).unwrap());
        assert!(chain_tableaux(4).is_err());
    }

    #[test]
    fn chain_ends_at_q_hat() {
        for n in 5..=10 {
            let chain = chain_tableaux(n).unwrap();
            assert_eq!(chain.len(), n - 2);
            assert_eq!(chain.last().unwrap().tableau, q_hat(n).unwrap());
        }
    }
}
