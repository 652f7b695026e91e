//! Good permutations (standard soliton decomposition), good tableaux and Motzkin numbers.

use alloc::vec::Vec;

use crate::bbs::soliton_decomposition;
use crate::error::Result;
use crate::partition::{partitions, Partition};
use crate::permutation::Permutation;
use crate::rs::{insertion_tableau, inverse_rs};
use crate::tableau::{is_standard, row_superstandard, standard_tableaux, Tableau};

/// The three equivalent goodness conditions, evaluated separately.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Goodness {
    pub sd_standard: bool,
    pub sd_equals_p: bool,
    pub shapes_equal: bool,
}

impl Goodness {
    pub fn consistent(&self) -> bool {
        self.sd_standard == self.sd_equals_p && self.sd_equals_p == self.shapes_equal
    }
}

pub fn goodness(w: &Permutation) -> Result<Goodness> {
    let sd = soliton_decomposition(w)?.tableau;
    let p = insertion_tableau(w);
    Ok(Goodness {
        sd_standard: is_standard(&sd),
        sd_equals_p: sd == p,
        shapes_equal: sd.row_lengths() == p.row_lengths(),
    })
}

/// Whether the soliton decomposition of `w` is a standard tableau.
pub fn is_good(w: &Permutation) -> Result<bool> {
    Ok(is_standard(&soliton_decomposition(w)?.tableau))
}

/// Motzkin number `M_n`, via `M_{n+1} = M_n + sum_k M_k M_{n-1-k}`.
pub fn motzkin(n: usize) -> u64 {
    let mut m: Vec<u64> = alloc::vec![1, 1];
    while m.len() <= n {
        let k = m.len() - 1;
        let conv: u64 = (0..k).map(|i| m[i] * m[k - 1 - i]).sum();
        m.push(m[k] + conv);
    }
    m[n]
}

/// Per-shape tally of good standard tableaux.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ShapeCount {
    pub shape: Partition,
    pub total: u64,
    pub good: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GoodCount {
    pub n: usize,
    /// Number of standard tableaux of size `n`.
    pub total: u64,
    pub good: u64,
    pub motzkin: u64,
    pub by_shape: Vec<ShapeCount>,
    /// The bad tableaux, in enumeration order.
    pub bad: Vec<Tableau>,
}

impl GoodCount {
    pub fn motzkin_match(&self) -> bool {
        self.good == self.motzkin
    }
}

/// Representative of the class `Q = q`: the permutation with the row superstandard
/// insertion tableau.
pub fn class_representative(q: &Tableau) -> Result<Permutation> {
    let shape = q.shape()?;
    inverse_rs(&row_superstandard(&shape), q)
}

/// Counts good standard tableaux of size `n`, testing one representative per tableau.
pub fn good_tableaux_count(n: usize) -> Result<GoodCount> {
    let mut by_shape = Vec::new();
    let mut bad = Vec::new();
    let (mut total, mut good) = (0u64, 0u64);
    for shape in partitions(n) {
        let mut tally = ShapeCount {
            shape: shape.clone(),
            total: 0,
            good: 0,
        };
        for q in standard_tableaux(&shape) {
            tally.total += 1;
            if is_good(&class_representative(&q)?)? {
                tally.good += 1;
            } else {
                bad.push(q);
            }
        }
        total += tally.total;
        good += tally.good;
        by_shape.push(tally);
    }
    Ok(GoodCount {
        n,
        total,
        good,
        motzkin: motzkin(n),
        by_shape,
        bad,
    })
}
