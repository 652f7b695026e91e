//! Row-increasing tableaux, standardness, and enumeration of standard tableaux.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::partition::{partitions, Partition};

/// Left-justified rows of positive integers, each row strictly increasing.
///
/// Columns need not increase and row lengths need not decrease: soliton
/// decompositions live here too. Standardness is checked by
/// [`Tableau::is_standard`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawTableau"))]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
struct RawTableau {
    rows: Vec<Vec<u32>>,
}

#[cfg(feature = "serde")]
impl TryFrom<RawTableau> for Tableau {
    type Error = Error;

    fn try_from(raw: RawTableau) -> Result<Self> {
        Tableau::new(raw.rows)
    }
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::EmptyRow { row: i });
            }
            if row.windows(2).any(|p| p[0] >= p[1]) {
                return Err(Error::RowNotIncreasing { row: i });
            }
        }
        Ok(Tableau { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<u32>>) -> Self {
        debug_assert!(Tableau::new(rows.clone()).is_ok());
        Tableau { rows }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<u32>> {
        self.rows
    }

    pub fn row_lengths(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// Number of cells.
    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn first_row(&self) -> &[u32] {
        self.rows.first().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Entries of column `c`, top to bottom, stopping at the first row too short to reach it.
    pub fn column(&self, c: usize) -> Vec<u32> {
        self.rows.iter().map_while(|r| r.get(c).copied()).collect()
    }

    /// Row and column of `value`, if present.
    pub fn find(&self, value: u32) -> Option<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.iter().position(|&v| v == value).map(|c| (r, c)))
    }

    /// Row lengths as a partition; fails if they increase anywhere.
    pub fn shape(&self) -> Result<Partition> {
        shape_of(self)
    }

    pub fn is_standard(&self) -> bool {
        is_standard(self)
    }

    /// Exchanges two entries wherever they occur; the result may violate row order.
    pub(crate) fn swapped_rows(&self, a: u32, b: u32) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| {
                        if v == a {
                            b
                        } else if v == b {
                            a
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Row lengths of `t`, which must be weakly decreasing.
pub fn shape_of(t: &Tableau) -> Result<Partition> {
    Partition::new(t.row_lengths())
}

/// Rows and columns strictly increase, rows weakly shorten downward, entries are exactly `1..=n`.
pub fn is_standard(t: &Tableau) -> bool {
    rows_form_standard(&t.rows)
}

pub(crate) fn rows_form_standard(rows: &[Vec<u32>]) -> bool {
    let n = rows.iter().map(Vec::len).sum::<usize>();
    if rows.iter().any(Vec::is_empty) || rows.windows(2).any(|p| p[0].len() < p[1].len()) {
        return false;
    }
    let mut seen = vec![false; n + 1];
    for row in rows {
        if row.windows(2).any(|p| p[0] >= p[1]) {
            return false;
        }
        for &v in row {
            if v == 0 || v as usize > n || seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
    }
    rows.windows(2)
        .all(|p| p[1].iter().zip(&p[0]).all(|(below, above)| below > above))
}

/// Every standard tableau of the given shape, in a fixed deterministic order.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    fn place(next: u32, n: u32, shape: &[usize], rows: &mut Vec<Vec<u32>>, out: &mut Vec<Tableau>) {
        if next > n {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for r in 0..shape.len() {
            let len = rows[r].len();
            let fits_row = len < shape[r];
            let fits_col = r == 0 || rows[r - 1].len() > len;
            if fits_row && fits_col {
                rows[r].push(next);
                place(next + 1, n, shape, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); shape.len()];
    place(1, shape.size() as u32, shape.parts(), &mut rows, &mut out);
    out
}

/// Every standard tableau of size `n`, grouped by shape in the order of [`partitions`].
pub fn all_standard_tableaux(n: usize) -> Vec<Tableau> {
    partitions(n).iter().flat_map(standard_tableaux).collect()
}

/// Fills rows left to right, top to bottom with `1..=n`.
pub fn row_superstandard(shape: &Partition) -> Tableau {
    let mut next = 1u32;
    let rows = shape
        .parts()
        .iter()
        .map(|&len| {
            let row: Vec<u32> = (next..next + len as u32).collect();
            next += len as u32;
            row
        })
        .collect();
    Tableau { rows }
}

impl fmt::Display for Tableau {
    /// Rows separated by `/`, e.g. `136/25/4`; commas inside rows once any entry exceeds 9.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.rows.iter().flatten().any(|&v| v > 9);
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            for (j, v) in row.iter().enumerate() {
                if wide && j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}
