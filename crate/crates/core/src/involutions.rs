//! Involutions: cycle data, crossings and nestings, and superstandard involutions.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::permutation::Permutation;

/// Cycle data of an involution.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct InvolutionProfile {
    /// `(a, b)` with `a < b`, sorted by `a`.
    pub two_cycles: Vec<(u32, u32)>,
    pub fixed_points: Vec<u32>,
    /// Number of 2-cycles.
    pub k: usize,
    /// Number of adjacent 2-cycles `(a, a+1)`.
    pub c: usize,
}

pub fn involution_profile(w: &Permutation) -> Result<InvolutionProfile> {
    if !w.is_involution() {
        return Err(Error::NotInvolution);
    }
    let mut two_cycles = Vec::new();
    let mut fixed_points = Vec::new();
    for a in 1..=w.len() as u32 {
        let b = w.apply(a);
        if b == a {
            fixed_points.push(a);
        } else if a < b {
            two_cycles.push((a, b));
        }
    }
    let c = two_cycles.iter().filter(|(a, b)| b - a == 1).count();
    Ok(InvolutionProfile {
        k: two_cycles.len(),
        two_cycles,
        fixed_points,
        c,
    })
}

fn crossing((a, c): (u32, u32), (b, d): (u32, u32)) -> bool {
    (a < b && b < c && c < d) || (b < a && a < d && d < c)
}

fn nesting((a, d): (u32, u32), (b, c): (u32, u32)) -> bool {
    (a < b && c < d) || (b < a && d < c)
}

/// No two 2-cycles `(a c), (b d)` with `a < b < c < d`.
pub fn is_noncrossing(w: &Permutation) -> Result<bool> {
    let p = involution_profile(w)?;
    let cycles = &p.two_cycles;
    Ok((0..cycles.len()).all(|i| (i + 1..cycles.len()).all(|j| !crossing(cycles[i], cycles[j]))))
}

/// Every two 2-cycles nest as `(a d), (b c)` with `a < b < c < d`.
pub fn is_nested(w: &Permutation) -> Result<bool> {
    let p = involution_profile(w)?;
    let cycles = &p.two_cycles;
    Ok((0..cycles.len()).all(|i| (i + 1..cycles.len()).all(|j| nesting(cycles[i], cycles[j]))))
}

/// `(n - 2k + c, 1^(2k - c))` for a noncrossing involution with `k` 2-cycles, `c` of them adjacent.
pub fn noncrossing_shape(w: &Permutation) -> Result<Partition> {
    if !is_noncrossing(w)? {
        return Err(Error::NotNoncrossing);
    }
    let p = involution_profile(w)?;
    let ones = 2 * p.k - p.c;
    Partition::hook(w.len() - ones, ones)
}

/// The involution whose insertion and recording tableaux are both the column
/// superstandard tableau of `shape`: fold each column in half, pairing entries that meet.
pub fn superstandard_involution(shape: &Partition) -> Permutation {
    let n = shape.size();
    let mut word = vec![0u32; n];
    let mut start = 1u32;
    for &height in shape.conjugate().parts() {
        let h = height as u32;
        for i in 0..h {
            // entries start..start+h-1 pair up symmetrically about the middle
            word[(start + i) as usize - 1] = start + h - 1 - i;
        }
        start += h;
    }
    Permutation::from_word_unchecked(word)
}

/// Every involution of `S_n`, in lexicographic order.
pub fn involutions(n: usize) -> Vec<Permutation> {
    fn go(word: &mut Vec<u32>, out: &mut Vec<Permutation>) {
        let Some(i) = word.iter().position(|&v| v == 0) else {
            out.push(Permutation::from_word_unchecked(word.clone()));
            return;
        };
        let a = i as u32 + 1;
        word[i] = a;
        go(word, out);
        word[i] = 0;
        for j in i + 1..word.len() {
            if word[j] == 0 {
                let b = j as u32 + 1;
                word[i] = b;
                word[j] = a;
                go(word, out);
                word[i] = 0;
                word[j] = 0;
            }
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(&mut vec![0; n], &mut out);
    }
    out.sort();
    out
}

/// Cycle notation with fixed points omitted, e.g. `(26)(34)(78)`; entries are
/// comma-separated inside a cycle when `n > 9`. The identity prints as `()`.
pub fn cycle_notation(w: &Permutation) -> String {
    let wide = w.len() > 9;
    let mut seen = vec![false; w.len() + 1];
    let mut s = String::new();
    for start in 1..=w.len() as u32 {
        if seen[start as usize] || w.apply(start) == start {
            continue;
        }
        s.push('(');
        let mut v = start;
        let mut first = true;
        while !seen[v as usize] {
            seen[v as usize] = true;
            if wide && !first {
                s.push(',');
            }
            let _ = write!(s, "{v}");
            first = false;
            v = w.apply(v);
        }
        s.push(')');
    }
    if s.is_empty() {
        s.push_str("()");
    }
    s
}

/// Parses cycle notation over `{1..n}`; missing values are fixed points.
pub fn parse_cycles(s: &str, n: usize) -> Result<Permutation> {
    let mut word: Vec<u32> = (1..=n as u32).collect();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or(Error::Parse("unclosed cycle"))?;
        let body = rest.strip_prefix('(').ok_or(Error::Parse("expected '('"))?;
        let body = &body[..body_end - 1];
        let values: Vec<u32> = if body.contains(',') {
            body.split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::Parse("expected an integer"))
                })
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| c.to_digit(10).ok_or(Error::Parse("expected a digit")))
                .collect::<Result<_>>()?
        };
        for (i, &v) in values.iter().enumerate() {
            if v == 0 || v as usize > n {
                return Err(Error::OutOfRangeValue { value: v, n });
            }
            word[v as usize - 1] = values[(i + 1) % values.len()];
        }
        rest = rest[body_end + 1..].trim_start();
    }
    Permutation::new(word)
}
