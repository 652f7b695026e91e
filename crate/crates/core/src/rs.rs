//! Robinson-Schensted row insertion, its inverse, reading words and classical statistics.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::permutation::Permutation;
use crate::tableau::{is_standard, Tableau};

/// Insertion tableau `p` and recording tableau `q` of a permutation.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RsPair {
    pub p: Tableau,
    pub q: Tableau,
}

/// Row-inserts `w_1, ..., w_n`, each insertion bumping the smallest entry greater than
/// the incoming value into the next row; `q` records the step at which each cell appeared.
pub fn rs_insert(w: &Permutation) -> RsPair {
    let mut p: Vec<Vec<u32>> = Vec::new();
    let mut q: Vec<Vec<u32>> = Vec::new();
    for (step, &v) in w.word().iter().enumerate() {
        let row = insert_value(&mut p, v);
        if row == q.len() {
            q.push(Vec::new());
        }
        q[row].push(step as u32 + 1);
    }
    RsPair {
        p: Tableau::from_rows_unchecked(p),
        q: Tableau::from_rows_unchecked(q),
    }
}

/// Inserts `v` and returns the row where the new cell was created.
fn insert_value(rows: &mut Vec<Vec<u32>>, mut v: u32) -> usize {
    for (r, row) in rows.iter_mut().enumerate() {
        let idx = row.partition_point(|&x| x < v);
        if idx == row.len() {
            row.push(v);
            return r;
        }
        v = core::mem::replace(&mut row[idx], v);
    }
    rows.push(vec![v]);
    rows.len() - 1
}

/// Insertion tableau only.
pub fn insertion_tableau(w: &Permutation) -> Tableau {
    let mut p = Vec::new();
    for &v in w.word() {
        insert_value(&mut p, v);
    }
    Tableau::from_rows_unchecked(p)
}

pub fn recording_tableau(w: &Permutation) -> Tableau {
    rs_insert(w).q
}

/// The unique permutation with `rs_insert(w) == (p, q)`.
pub fn inverse_rs(p: &Tableau, q: &Tableau) -> Result<Permutation> {
    if !is_standard(p) || !is_standard(q) {
        return Err(Error::NotStandard);
    }
    if p.row_lengths() != q.row_lengths() {
        return Err(Error::ShapeMismatch);
    }
    let n = p.size();
    let mut p = p.rows().to_vec();
    let mut q = q.rows().to_vec();
    let mut word = vec![0u32; n];
    for step in (1..=n as u32).rev() {
        // the cell recorded at `step` is the last entry of its row, and a corner
        let r = q
            .iter()
            .position(|row| row.last() == Some(&step))
            .expect("largest entry of a standard tableau sits at a corner");
        q[r].pop();
        let mut v = p[r].pop().expect("p and q share a shape");
        if q[r].is_empty() {
            q.pop();
            p.pop();
        }
        for row in p[..r].iter_mut().rev() {
            // largest entry smaller than v is bumped back up
            let idx = row.partition_point(|&x| x < v) - 1;
            v = core::mem::replace(&mut row[idx], v);
        }
        word[step as usize - 1] = v;
    }
    Ok(Permutation::from_word_unchecked(word))
}

/// Length of a longest increasing subsequence (patience sorting).
pub fn incr(w: &Permutation) -> usize {
    let mut tops: Vec<u32> = Vec::new();
    for &v in w.word() {
        let idx = tops.partition_point(|&t| t < v);
        if idx == tops.len() {
            tops.push(v);
        } else {
            tops[idx] = v;
        }
    }
    tops.len()
}

/// Length of a longest decreasing subsequence.
pub fn decr(w: &Permutation) -> usize {
    incr(&w.reversed())
}

/// 1-based positions `j` with `w_j > w_{j+1}`.
pub fn descents(w: &Permutation) -> Vec<usize> {
    w.word()
        .windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(j, _)| j + 1)
        .collect()
}

pub fn des(w: &Permutation) -> usize {
    w.word().windows(2).filter(|p| p[0] > p[1]).count()
}

/// Rows concatenated from bottom to top.
pub fn row_reading_word(t: &Tableau) -> Result<Permutation> {
    if !is_standard(t) {
        return Err(Error::NotStandard);
    }
    let word = t.rows().iter().rev().flatten().copied().collect();
    Ok(Permutation::from_word_unchecked(word))
}

/// Columns read bottom to top, left to right.
pub fn column_reading_word(t: &Tableau) -> Result<Permutation> {
    if !is_standard(t) {
        return Err(Error::NotStandard);
    }
    let mut word = Vec::with_capacity(t.size());
    for c in 0..t.first_row().len() {
        let mut col = t.column(c);
        col.reverse();
        word.extend(col);
    }
    Ok(Permutation::from_word_unchecked(word))
}

/// Fills columns top to bottom, left to right with `1..=n`.
pub fn column_superstandard(shape: &Partition) -> Tableau {
    let mut rows: Vec<Vec<u32>> = shape
        .parts()
        .iter()
        .map(|&len| Vec::with_capacity(len))
        .collect();
    let mut next = 1u32;
    for height in shape.conjugate().parts() {
        for row in rows.iter_mut().take(*height) {
            row.push(next);
            next += 1;
        }
    }
    Tableau::from_rows_unchecked(rows)
}
