use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// An integer partition: positive, weakly decreasing parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::NotPartitionShape);
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, i.e. the length of the first column.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn first_row(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Hook shape `(a, 1, 1, ..., 1)`.
    pub fn is_l_shaped(&self) -> bool {
        self.parts.iter().skip(1).all(|&p| p == 1)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first_row();
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    /// `(head, 1, ..., 1)` with `ones` trailing ones.
    pub fn hook(head: usize, ones: usize) -> Result<Partition> {
        let mut parts = vec![head];
        parts.extend(core::iter::repeat_n(1, ones));
        Partition::new(parts)
    }

    /// Number of standard tableaux of this shape by the hook length formula.
    pub fn standard_tableau_count(&self) -> u64 {
        let conj = self.conjugate();
        let n = self.size() as u64;
        let mut num: u128 = 1;
        for k in 1..=n {
            num *= k as u128;
        }
        let mut den: u128 = 1;
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 0..len {
                let hook = (len - c - 1) + (conj.parts[c] - r - 1) + 1;
                den *= hook as u128;
            }
        }
        (num / den) as u64
    }
}

/// All partitions of `n`, in reverse lexicographic order starting from `(n)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}
