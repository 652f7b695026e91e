//! Box-ball configurations and configuration arrays.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::tableau::Tableau;

/// Content of one box: a ball label, or `None` for an empty box.
///
/// Empty boxes compare as the value `n + 1`; see [`BbsConfiguration::key`].
pub type Cell = Option<u32>;

/// Balls `1..=n` placed in boxes indexed by `Z`; all boxes outside the window are empty.
///
/// The window is always trimmed so its first and last cells hold balls, which
/// makes structural equality coincide with equality of configurations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawConfiguration"))]
pub struct BbsConfiguration {
    offset: i64,
    cells: Vec<Cell>,
    #[cfg_attr(feature = "serde", serde(skip_serializing))]
    n: usize,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
struct RawConfiguration {
    offset: i64,
    cells: Vec<Cell>,
}

#[cfg(feature = "serde")]
impl TryFrom<RawConfiguration> for BbsConfiguration {
    type Error = Error;

    fn try_from(raw: RawConfiguration) -> Result<Self> {
        BbsConfiguration::new(raw.offset, raw.cells)
    }
}

impl BbsConfiguration {
    /// Builds a configuration whose first stored cell sits in box `offset`.
    ///
    /// Leading and trailing empty cells are trimmed. The balls must be exactly `1..=n`
    /// for some `n >= 1`.
    pub fn new(offset: i64, cells: Vec<Cell>) -> Result<Self> {
        let n = cells.iter().filter(|c| c.is_some()).count();
        if n == 0 {
            return Err(Error::InvalidConfiguration("no balls"));
        }
        let mut seen = vec![false; n + 1];
        for &v in cells.iter().flatten() {
            if v == 0 || v as usize > n {
                return Err(Error::OutOfRangeValue { value: v, n });
            }
            if seen[v as usize] {
                return Err(Error::DuplicateValue { value: v });
            }
            seen[v as usize] = true;
        }
        Ok(Self::trimmed(offset, cells, n))
    }

    pub(crate) fn trimmed(offset: i64, mut cells: Vec<Cell>, n: usize) -> Self {
        let first = cells.iter().position(Option::is_some).unwrap_or(0);
        let last = cells.iter().rposition(Option::is_some).map_or(0, |i| i + 1);
        cells.truncate(last);
        cells.drain(..first);
        BbsConfiguration {
            offset: offset + first as i64,
            cells,
            n,
        }
    }

    /// Balls `w_1..w_n` in boxes `1..=n`.
    pub fn from_permutation(w: &Permutation) -> Self {
        BbsConfiguration {
            offset: 1,
            cells: w.word().iter().map(|&v| Some(v)).collect(),
            n: w.len(),
        }
    }

    /// Reads the compact notation used in figures, e.g. `"ee45e2136"`, with the
    /// first character in box `first_box`. `e` or `.` marks an empty box; balls are
    /// single digits, so this only covers `n <= 9`.
    pub fn parse_compact(s: &str, first_box: i64) -> Result<Self> {
        let cells = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'e' | '.' => Ok(None),
                d => d
                    .to_digit(10)
                    .map(Some)
                    .ok_or(Error::Parse("expected a digit, 'e' or '.'")),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(first_box, cells)
    }

    /// Box index of the first (leftmost) ball.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Box index of the last (rightmost) ball.
    pub fn last_box(&self) -> i64 {
        self.offset + self.cells.len() as i64 - 1
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Number of balls.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Value used in comparisons: the label, or `n + 1` for an empty box.
    pub fn key(&self, cell: Cell) -> u32 {
        cell.unwrap_or(self.n as u32 + 1)
    }

    /// Content of box `b` anywhere in `Z`.
    pub fn get(&self, b: i64) -> Cell {
        if b < self.offset {
            return None;
        }
        self.cells
            .get((b - self.offset) as usize)
            .copied()
            .flatten()
    }

    /// Box holding ball `v`.
    pub fn position_of(&self, v: u32) -> Option<i64> {
        self.cells
            .iter()
            .position(|&c| c == Some(v))
            .map(|i| self.offset + i as i64)
    }

    /// `pos[v]` is the box of ball `v`; `pos[0]` is unused.
    pub fn ball_positions(&self) -> Vec<i64> {
        let mut pos = vec![0; self.n + 1];
        for (i, &c) in self.cells.iter().enumerate() {
            if let Some(v) = c {
                pos[v as usize] = self.offset + i as i64;
            }
        }
        pos
    }

    /// Occupied boxes, left to right.
    pub fn occupied_boxes(&self) -> Vec<i64> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_some())
            .map(|(i, _)| self.offset + i as i64)
            .collect()
    }

    /// Ball labels left to right, ignoring empty boxes.
    pub fn ball_word(&self) -> Vec<u32> {
        self.cells.iter().flatten().copied().collect()
    }

    /// Empty boxes strictly between boxes `a < b`.
    pub fn empties_between(&self, a: i64, b: i64) -> usize {
        ((a + 1)..b).filter(|&j| self.get(j).is_none()).count()
    }

    /// Exchanges balls `a` and `b`.
    pub fn swap_balls(&self, a: u32, b: u32) -> BbsConfiguration {
        let cells = self
            .cells
            .iter()
            .map(|&c| match c {
                Some(v) if v == a => Some(b),
                Some(v) if v == b => Some(a),
                other => other,
            })
            .collect();
        BbsConfiguration {
            offset: self.offset,
            cells,
            n: self.n,
        }
    }

    /// Figure notation over boxes `from..=to`: `e` for empty, digits for balls
    /// (comma-separated when `n > 9`).
    pub fn to_compact(&self, from: i64, to: i64) -> String {
        let wide = self.n > 9;
        let mut s = String::new();
        for b in from..=to {
            if wide && b > from {
                s.push(',');
            }
            match self.get(b) {
                Some(v) => {
                    let _ = write!(s, "{v}");
                }
                None => s.push('e'),
            }
        }
        s
    }

    /// ASCII rendering over boxes `from..=to`: space-separated labels, `.` for empty.
    pub fn render(&self, from: i64, to: i64) -> String {
        let mut s = String::new();
        for b in from..=to {
            if b > from {
                s.push(' ');
            }
            match self.get(b) {
                Some(v) => {
                    let _ = write!(s, "{v}");
                }
                None => s.push('.'),
            }
        }
        s
    }
}

impl fmt::Display for BbsConfiguration {
    /// Window only, in the ASCII rendering.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.offset, self.last_box()))
    }
}

/// One row of a configuration array.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ArrayRow {
    /// Column of the first entry; the bottom row has shift 0.
    pub shift: usize,
    pub entries: Vec<u32>,
}

/// Increasing runs of a configuration, rightmost run on top, with the horizontal
/// shifts induced by the empty boxes between runs.
///
/// Each run of `g` empty boxes moves the next row down `g` extra columns to the
/// left; runs that touch start in the same column.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConfigurationArray {
    rows: Vec<ArrayRow>,
}

impl ConfigurationArray {
    pub(crate) fn from_rows(rows: Vec<ArrayRow>) -> Self {
        ConfigurationArray { rows }
    }

    pub fn rows(&self) -> &[ArrayRow] {
        &self.rows
    }

    pub fn row_lengths(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.entries.len()).collect()
    }

    /// `(shift, length)` per row; two arrays with equal shapes differ only in labels.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .map(|r| (r.shift, r.entries.len()))
            .collect()
    }

    /// The shift-free view (the increasing run decomposition) as a tableau.
    pub fn to_tableau(&self) -> Tableau {
        Tableau::from_rows_unchecked(self.rows.iter().map(|r| r.entries.clone()).collect())
    }

    /// Drops the shift data.
    pub fn without_shifts(&self) -> ConfigurationArray {
        ConfigurationArray {
            rows: self
                .rows
                .iter()
                .map(|r| ArrayRow {
                    shift: 0,
                    entries: r.entries.clone(),
                })
                .collect(),
        }
    }

    /// Row lengths weakly decrease and entries strictly increase down every column
    /// where rows overlap.
    pub fn is_standard_skew_with_decreasing_rows(&self) -> bool {
        if self
            .rows
            .windows(2)
            .any(|p| p[0].entries.len() < p[1].entries.len())
        {
            return false;
        }
        // Shifts weakly decrease downward and so do right ends, so each column's
        // cells sit in consecutive rows and checking neighbours is enough.
        self.rows.windows(2).all(|p| {
            let (upper, lower) = (&p[0], &p[1]);
            lower.entries.iter().enumerate().all(|(j, &below)| {
                let col = lower.shift + j;
                match col
                    .checked_sub(upper.shift)
                    .and_then(|k| upper.entries.get(k))
                {
                    Some(&above) => above < below,
                    None => true,
                }
            })
        })
    }
}

impl fmt::Display for ConfigurationArray {
    /// Rows joined by ` / `, each prefixed by one `:` per column of shift.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(" / ")?;
            }
            for _ in 0..row.shift {
                f.write_str(":")?;
            }
            for v in &row.entries {
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_window() {
        let x = BbsConfiguration::new(0, vec![None, Some(2), None, Some(1), None]).unwrap();
        assert_eq!(x.offset(), 1);
        assert_eq!(x.cells(), &[Some(2), None, Some(1)]);
        assert_eq!(x.last_box(), 3);
    }

    #[test]
    fn rejects_bad_balls() {
        assert!(BbsConfiguration::new(0, vec![None, None]).is_err());
        assert_eq!(
            BbsConfiguration::new(0, vec![Some(1), Some(1)]),
            Err(Error::DuplicateValue { value: 1 })
        );
        assert!(BbsConfiguration::new(0, vec![Some(3), Some(1)]).is_err());
    }

    #[test]
    fn compact_roundtrip() {
        let x = BbsConfiguration::parse_compact("ee45e2136", 1).unwrap();
        assert_eq!(x.offset(), 3);
        assert_eq!(x.last_box(), 9);
        assert_eq!(x.to_compact(1, 9), "ee45e2136");
        assert_eq!(x.render(1, 9), ". . 4 5 . 2 1 3 6");
        assert_eq!(x.key(None), 7);
        assert_eq!(x.empties_between(4, 9), 1);
        assert_eq!(x.position_of(1), Some(7));
    }

    #[test]
    fn from_permutation_places_boxes_one_to_n() {
        let w: Permutation = "452361".parse().unwrap();
        let x = BbsConfiguration::from_permutation(&w);
        assert_eq!(x.offset(), 1);
        assert_eq!(x.to_compact(1, 6), "452361");
        let one = BbsConfiguration::from_permutation(&"1".parse().unwrap());
        assert_eq!((one.offset(), one.cells()), (1, &[Some(1)][..]));
        let two = BbsConfiguration::from_permutation(&"21".parse().unwrap());
        assert_eq!(two.to_compact(1, 2), "21");
    }
}
