//! The box-ball system: moves, increasing runs, steady state and soliton decompositions.
//!
//! A move sends every ball, smallest label first, to the nearest empty box on its
//! right. [`bbs_move`] does exactly that; [`carrier_move`] computes the same map with
//! a sweeping carrier and exists so the two can check each other.

use alloc::vec;
use alloc::vec::Vec;

use crate::config::{ArrayRow, BbsConfiguration, Cell, ConfigurationArray};
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::tableau::Tableau;

/// Soliton decomposition of a permutation: row `i` is the `i`-th rightmost soliton.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SolitonDecomposition {
    pub tableau: Tableau,
    pub source: Permutation,
    /// Moves needed to reach steady state.
    pub steady_state_time: usize,
}

/// Default move cap for steady-state searches: `2n`.
pub fn default_cap(n: usize) -> usize {
    2 * n
}

pub fn from_permutation(w: &Permutation) -> BbsConfiguration {
    BbsConfiguration::from_permutation(w)
}

/// Jumps every ball in label order, calling `after_jump(ball, offset, cells)` once each
/// ball has landed.
fn jump_balls(
    x: &BbsConfiguration,
    mut after_jump: impl FnMut(u32, i64, &[Cell]),
) -> (i64, Vec<Cell>) {
    let n = x.n();
    let mut cells = x.cells().to_vec();
    cells.resize(cells.len() + n, None);
    let mut pos = vec![0usize; n + 1];
    for (i, c) in cells.iter().enumerate() {
        if let Some(v) = c {
            pos[*v as usize] = i;
        }
    }
    for ball in 1..=n as u32 {
        let from = pos[ball as usize];
        let mut to = from + 1;
        while cells[to].is_some() {
            to += 1;
        }
        cells[from] = None;
        cells[to] = Some(ball);
        pos[ball as usize] = to;
        after_jump(ball, x.offset(), &cells);
    }
    (x.offset(), cells)
}

/// One box-ball move by direct ball-by-ball jumping.
pub fn bbs_move(x: &BbsConfiguration) -> BbsConfiguration {
    let (offset, cells) = jump_balls(x, |_, _, _| {});
    BbsConfiguration::trimmed(offset, cells, x.n())
}

/// The configuration before any jump, then after each ball `1..=n` has jumped.
///
/// Entry `k` is the state immediately after balls `1..=k` have finished jumping;
/// the last entry equals [`bbs_move`]`(x)`.
pub fn bbs_move_snapshots(x: &BbsConfiguration) -> Vec<BbsConfiguration> {
    let mut out = Vec::with_capacity(x.n() + 1);
    out.push(x.clone());
    jump_balls(x, |_, offset, cells| {
        out.push(BbsConfiguration::trimmed(offset, cells.to_vec(), x.n()));
    });
    out
}

/// Carrier holding `n` values from `1..=n+1`, where `n + 1` stands for an empty box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    /// Sorted ascending.
    slots: Vec<u32>,
    empty: u32,
}

impl Carrier {
    /// A carrier of capacity `n`, filled with empties.
    pub fn new(n: usize) -> Self {
        let empty = n as u32 + 1;
        Carrier {
            slots: vec![empty; n],
            empty,
        }
    }

    pub fn slots(&self) -> &[u32] {
        &self.slots
    }

    pub fn holds_balls(&self) -> bool {
        self.slots.first().is_some_and(|&v| v < self.empty)
    }

    /// Feeds one box content and returns what the carrier drops into that box.
    ///
    /// If the input is smaller than the carrier maximum, the smallest carried value
    /// greater than it is bumped out; otherwise the carrier minimum is dropped.
    pub fn step(&mut self, input: Cell) -> Cell {
        let x = input.unwrap_or(self.empty);
        let max = *self.slots.last().expect("carrier has capacity n >= 1");
        let out_idx = if x < max {
            self.slots.partition_point(|&v| v <= x)
        } else {
            0
        };
        let out = self.slots.remove(out_idx);
        let at = self.slots.partition_point(|&v| v < x);
        self.slots.insert(at, x);
        (out != self.empty).then_some(out)
    }
}

/// One box-ball move computed by the carrier algorithm.
pub fn carrier_move(x: &BbsConfiguration) -> BbsConfiguration {
    let mut carrier = Carrier::new(x.n());
    let mut out = Vec::with_capacity(x.cells().len() + x.n());
    for &c in x.cells() {
        out.push(carrier.step(c));
    }
    while carrier.holds_balls() {
        out.push(carrier.step(None));
    }
    BbsConfiguration::trimmed(x.offset(), out, x.n())
}

/// `t` successive moves.
pub fn evolve(x: &BbsConfiguration, t: usize) -> BbsConfiguration {
    let mut cur = x.clone();
    for _ in 0..t {
        cur = bbs_move(&cur);
    }
    cur
}

/// `x, BB(x), BB^2(x), ...` without end.
pub fn orbit(x: &BbsConfiguration) -> impl Iterator<Item = BbsConfiguration> {
    core::iter::successors(Some(x.clone()), |c| Some(bbs_move(c)))
}

/// Maximal increasing contiguous runs of balls, rightmost first, each with the number
/// of empty boxes separating it from the run to its right (0 for the rightmost run).
fn runs_with_gaps(x: &BbsConfiguration) -> Vec<(usize, Vec<u32>)> {
    let mut runs: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut gap = 0usize;
    let mut current: Vec<u32> = Vec::new();
    for &c in x.cells().iter().rev() {
        match c {
            None => {
                if !current.is_empty() {
                    runs.push((0, core::mem::take(&mut current)));
                }
                gap += 1;
            }
            Some(v) => {
                // scanning leftward: the run continues while values decrease
                if current.last().is_some_and(|&last| v > last) {
                    runs.push((0, core::mem::take(&mut current)));
                }
                if current.is_empty() {
                    current.push(v);
                    if let Some(prev) = runs.last_mut() {
                        // the gap belongs to the run on the right, as the space below it
                        prev.0 = gap;
                    }
                    gap = 0;
                } else {
                    current.push(v);
                }
            }
        }
    }
    if !current.is_empty() {
        runs.push((0, current));
    }
    for run in &mut runs {
        run.1.reverse();
    }
    runs
}

/// Increasing run decomposition: rows are the increasing runs, rightmost first, all shifts zero.
pub fn increasing_run_decomposition(x: &BbsConfiguration) -> ConfigurationArray {
    configuration_array(x).without_shifts()
}

/// The increasing runs as a tableau (rightmost run in the top row).
pub fn increasing_runs(x: &BbsConfiguration) -> Tableau {
    Tableau::from_rows_unchecked(runs_with_gaps(x).into_iter().map(|(_, r)| r).collect())
}

/// Configuration array with shift data.
pub fn configuration_array(x: &BbsConfiguration) -> ConfigurationArray {
    let runs = runs_with_gaps(x);
    // start column of row i relative to the top row is minus the gaps above it
    let total_gap: usize = runs.iter().map(|(g, _)| g).sum();
    let mut shift = total_gap;
    let rows = runs
        .into_iter()
        .map(|(gap_below, entries)| {
            let row = ArrayRow { shift, entries };
            shift -= gap_below;
            row
        })
        .collect();
    ConfigurationArray::from_rows(rows)
}

/// Steady state via the configuration array: a standard skew filling with weakly
/// decreasing row lengths.
pub fn is_steady_state(x: &BbsConfiguration) -> bool {
    configuration_array(x).is_standard_skew_with_decreasing_rows()
}

/// Steady state via increasing runs: row lengths weakly decrease and one move leaves
/// the run decomposition unchanged.
pub fn is_steady_state_via_id(x: &BbsConfiguration) -> bool {
    let runs = increasing_runs(x);
    runs.rows().windows(2).all(|p| p[0].len() >= p[1].len())
        && increasing_runs(&bbs_move(x)) == runs
}

/// Smallest `t <= cap` with the orbit of `x` in steady state at time `t`.
pub fn config_steady_state_time(x: &BbsConfiguration, cap: usize) -> Result<usize> {
    orbit(x)
        .take(cap + 1)
        .position(|c| is_steady_state(&c))
        .ok_or(Error::CapExceeded { cap })
}

/// Moves needed for `w` to reach steady state, searching `t <= cap`.
pub fn steady_state_time(w: &Permutation, cap: usize) -> Result<usize> {
    config_steady_state_time(&from_permutation(w), cap)
}

/// Soliton decomposition with the default cap `2n`.
pub fn soliton_decomposition(w: &Permutation) -> Result<SolitonDecomposition> {
    soliton_decomposition_capped(w, default_cap(w.len()))
}

pub fn soliton_decomposition_capped(w: &Permutation, cap: usize) -> Result<SolitonDecomposition> {
    for (t, c) in orbit(&from_permutation(w)).take(cap + 1).enumerate() {
        if is_steady_state(&c) {
            return Ok(SolitonDecomposition {
                tableau: increasing_runs(&c),
                source: w.clone(),
                steady_state_time: t,
            });
        }
    }
    Err(Error::CapExceeded { cap })
}

/// Penalized length of the balls `seq`, listed left to right: the ball count minus the
/// empty boxes between the first and last of them. `None` unless `seq` is an
/// increasing sequence of balls appearing in that positional order.
pub fn penalized_length(x: &BbsConfiguration, seq: &[u32]) -> Option<i64> {
    if seq.is_empty() || seq.windows(2).any(|p| p[0] >= p[1]) {
        return None;
    }
    let pos: Vec<i64> = seq
        .iter()
        .map(|&v| x.position_of(v))
        .collect::<Option<_>>()?;
    if pos.windows(2).any(|p| p[0] >= p[1]) {
        return None;
    }
    let gaps = x.empties_between(pos[0], pos[pos.len() - 1]);
    Some(seq.len() as i64 - gaps as i64)
}

/// Maximum penalized length over increasing subsequences of balls, by an O(m^2)
/// dynamic program over balls in positional order.
pub fn local_incr(x: &BbsConfiguration) -> usize {
    let balls: Vec<(i64, u32)> = x
        .cells()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.map(|v| (i as i64, v)))
        .collect();
    // best[j]: best penalized length of a chain ending at ball j
    let mut best: Vec<i64> = Vec::with_capacity(balls.len());
    for (j, &(pj, vj)) in balls.iter().enumerate() {
        let mut b = 1i64;
        for (i, &(pi, vi)) in balls[..j].iter().enumerate() {
            if vi < vj {
                let empties = (pj - pi) - (j - i) as i64;
                b = b.max(best[i] + 1 - empties);
            }
        }
        best.push(b);
    }
    best.into_iter().max().unwrap_or(0) as usize
}

/// Descents of `x` with empty boxes read as `n + 1`; equals the number of increasing runs.
pub fn local_decr(x: &BbsConfiguration) -> usize {
    // the box left of the window is empty, hence a descent onto the first ball
    1 + x
        .cells()
        .windows(2)
        .filter(|p| x.key(p[0]) > x.key(p[1]))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> BbsConfiguration {
        BbsConfiguration::parse_compact(s, 1).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn rows(t: &Tableau) -> Vec<Vec<u32>> {
        t.rows().to_vec()
    }

    #[test]
    fn move_examples() {
        let x = from_permutation(&perm("452361"));
        assert_eq!(bbs_move(&x), cfg("ee45e2136"));
        assert_eq!(bbs_move(&from_permutation(&perm("123"))), cfg("eee123"));
        assert_eq!(bbs_move(&from_permutation(&perm("21"))), cfg("e21"));
    }

    #[test]
    fn carrier_examples() {
        assert_eq!(carrier_move(&cfg("452ee136")), cfg("ee425eee136"));
        let x = from_permutation(&perm("452361"));
        assert_eq!(carrier_move(&x), bbs_move(&x));
        assert_eq!(carrier_move(&cfg("1")), cfg("e1"));
    }

    #[test]
    fn carrier_state_during_sweep() {
        // process 1 of the sweep over 452ee136 ends holding 1, 3, 6
        let mut c = Carrier::new(6);
        for cell in cfg("452ee136").cells() {
            c.step(*cell);
        }
        assert_eq!(c.slots(), &[1, 3, 6, 7, 7, 7]);
    }

    #[test]
    fn evolve_examples() {
        let x = from_permutation(&perm("452361"));
        assert_eq!(evolve(&x, 0), x);
        assert_eq!(evolve(&x, 2), cfg("eeee452ee136"));
        assert_eq!(evolve(&x, 3), cfg("eeeeee425eee136"));
        assert_eq!(evolve(&x, 4), cfg("eeeeeee4e25eeee136"));
    }

    #[test]
    fn snapshots_end_at_move() {
        let x = from_permutation(&perm("451362"));
        let snaps = bbs_move_snapshots(&x);
        assert_eq!(snaps.len(), 7);
        assert_eq!(snaps[0], x);
        assert_eq!(snaps[6], bbs_move(&x));
        // after ball 1 jumps from box 3 to box 7
        assert_eq!(snaps[1], cfg("45e3621"));
    }

    #[test]
    fn run_decomposition_examples() {
        assert_eq!(
            rows(&increasing_runs(&cfg("eeee452ee136"))),
            vec![vec![1, 3, 6], vec![2], vec![4, 5]]
        );
        assert_eq!(
            rows(&increasing_runs(&from_permutation(&perm("452361")))),
            vec![vec![1], vec![2, 3, 6], vec![4, 5]]
        );
        assert_eq!(
            rows(&increasing_runs(&from_permutation(&perm("123")))),
            vec![vec![1, 2, 3]]
        );
        let id = increasing_run_decomposition(&cfg("eeee452ee136"));
        assert!(id.rows().iter().all(|r| r.shift == 0));
    }

    #[test]
    fn configuration_array_examples() {
        let show = |s: &str| alloc::format!("{}", configuration_array(&cfg(s)));
        assert_eq!(show("452361"), "1 / 236 / 45");
        assert_eq!(show("ee45e2136"), ":136 / :2 / 45");
        assert_eq!(show("eeee452ee136"), "::136 / 2 / 45");
        assert_eq!(show("eeeeee425eee136"), ":::136 / 25 / 4");
        assert_eq!(show("eeeeeee4e25eeee136"), ":::::136 / :25 / 4");
        assert_eq!(show("425136"), "136 / 25 / 4");
        assert_eq!(show("1"), "1");
        let ca = configuration_array(&cfg("425136"));
        assert!(ca.to_tableau().is_standard());
    }

    #[test]
    fn steady_state_examples() {
        let steady = cfg("eeeeee425eee136");
        assert!(is_steady_state(&steady));
        assert!(is_steady_state_via_id(&steady));
        let x = from_permutation(&perm("452361"));
        assert!(!is_steady_state(&x));
        assert!(!is_steady_state_via_id(&x));
        assert!(is_steady_state(&cfg("425136")));
        assert!(is_steady_state_via_id(&cfg("21")));
        assert!(is_steady_state(&cfg("21")));
    }

    #[test]
    fn steady_state_time_examples() {
        assert_eq!(steady_state_time(&perm("452361"), 12), Ok(3));
        assert_eq!(steady_state_time(&perm("425136"), 12), Ok(0));
        assert_eq!(steady_state_time(&perm("5274163"), 14), Ok(1));
        assert_eq!(
            steady_state_time(&perm("452361"), 2),
            Err(Error::CapExceeded { cap: 2 })
        );
    }

    #[test]
    fn soliton_decomposition_examples() {
        let sd = |s: &str| rows(&soliton_decomposition(&perm(s)).unwrap().tableau);
        assert_eq!(sd("452361"), vec![vec![1, 3, 6], vec![2, 5], vec![4]]);
        assert_eq!(sd("5623714"), vec![vec![1, 3, 4], vec![2, 7], vec![5, 6]]);
        assert_eq!(
            sd("164352879"),
            vec![vec![1, 2, 5, 7, 9], vec![8], vec![3], vec![4], vec![6]]
        );
        assert_eq!(
            sd("5274163"),
            vec![vec![1, 3, 6], vec![4], vec![2], vec![7], vec![5]]
        );
    }

    #[test]
    fn local_statistics_examples() {
        let x = cfg("ee45e2136");
        assert_eq!(local_incr(&x), 3);
        assert_eq!(penalized_length(&x, &[1, 3, 6]), Some(3));
        assert_eq!(penalized_length(&x, &[4, 5, 6]), Some(2));
        assert_eq!(penalized_length(&x, &[3, 1]), None);
        assert_eq!(local_decr(&x), 3);
        assert_eq!(local_decr(&from_permutation(&perm("5623714"))), 3);
        assert_eq!(local_decr(&from_permutation(&perm("1234"))), 1);
        assert_eq!(local_incr(&from_permutation(&perm("5623714"))), 3);
    }

    /// Brute force over all subsets of balls.
    fn local_incr_oracle(x: &BbsConfiguration) -> i64 {
        let word = x.ball_word();
        let m = word.len();
        let mut best = i64::MIN;
        for mask in 1u32..(1 << m) {
            let seq: Vec<u32> = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| word[i])
                .collect();
            if let Some(p) = penalized_length(x, &seq) {
                best = best.max(p);
            }
        }
        best
    }

    #[test]
    fn local_incr_matches_brute_force() {
        for s in [
            "ee45e2136",
            "3e1ee2",
            "1e2e3e4",
            "4e3e2e1",
            "25e1e43",
            "eeee452ee136",
        ] {
            let x = cfg(s);
            assert_eq!(local_incr(&x) as i64, local_incr_oracle(&x), "{s}");
        }
    }
}
