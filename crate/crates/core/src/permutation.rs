//! Permutations in one-line notation and lexicographic enumeration of `S_n`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1..n}` in one-line notation, `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    word: Vec<u32>,
}

/// Checks that `word` is a bijection on `{1..word.len()}`.
pub fn validate_permutation(word: &[u32]) -> Result<Permutation> {
    Permutation::new(word.to_vec())
}

impl Permutation {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v as usize > n {
                return Err(Error::OutOfRangeValue { value: v, n });
            }
            if seen[v as usize] {
                return Err(Error::DuplicateValue { value: v });
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity of S_0 is not a permutation here");
        Permutation {
            word: (1..=n as u32).collect(),
        }
    }

    /// Size `n`.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn into_word(self) -> Vec<u32> {
        self.word
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: u32) -> u32 {
        self.word[i as usize - 1]
    }

    /// `pos[v]` is the 0-based index of value `v`; `pos[0]` is unused.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len() + 1];
        for (i, &v) in self.word.iter().enumerate() {
            pos[v as usize] = i;
        }
        pos
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { word: inv }
    }

    pub fn is_involution(&self) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(i, &v)| self.word[v as usize - 1] as usize == i + 1)
    }

    pub fn reversed(&self) -> Permutation {
        let mut word = self.word.clone();
        word.reverse();
        Permutation { word }
    }

    /// Exchanges the values `a` and `b` wherever they sit.
    pub fn swap_values(&self, a: u32, b: u32) -> Permutation {
        let word = self
            .word
            .iter()
            .map(|&v| {
                if v == a {
                    b
                } else if v == b {
                    a
                } else {
                    v
                }
            })
            .collect();
        Permutation { word }
    }

    /// Steps to the lexicographic successor in place; false at the last permutation.
    pub fn next_lex(&mut self) -> bool {
        let w = &mut self.word;
        let n = w.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && w[i - 1] > w[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while w[j] < w[i - 1] {
            j -= 1;
        }
        w.swap(i - 1, j);
        w[i..].reverse();
        true
    }

    /// Lexicographic rank in `S_n`, starting from 0 at the identity.
    pub fn rank(&self) -> u64 {
        let n = self.len();
        let mut rank = 0u64;
        for i in 0..n {
            let smaller = self.word[i + 1..]
                .iter()
                .filter(|&&v| v < self.word[i])
                .count();
            rank = rank * (n - i) as u64 + smaller as u64;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut rank: u64) -> Result<Permutation> {
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        if rank >= factorial(n) {
            return Err(Error::InvalidArgument("rank exceeds n!"));
        }
        let mut digits = vec![0u64; n];
        for i in (0..n).rev() {
            let base = (n - i) as u64;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<u32> = (1..=n as u32).collect();
        let word = digits
            .into_iter()
            .map(|d| pool.remove(d as usize))
            .collect();
        Ok(Permutation { word })
    }
}

/// `n!`, saturating at `u64::MAX`.
pub fn factorial(n: usize) -> u64 {
    (1..=n as u64)
        .try_fold(1u64, |acc, k| acc.checked_mul(k))
        .unwrap_or(u64::MAX)
}

/// All of `S_n` in lexicographic order.
pub fn permutations(n: usize) -> Permutations {
    Permutations {
        next: (n >= 1).then(|| Permutation::identity(n)),
    }
}

/// Lexicographic iterator returned by [`permutations`].
pub struct Permutations {
    next: Option<Permutation>,
}

impl Permutations {
    /// Starts the walk at an arbitrary permutation.
    pub fn starting_at(w: Permutation) -> Self {
        Permutations { next: Some(w) }
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if succ.next_lex() {
            self.next = Some(succ);
        }
        Some(current)
    }
}

impl fmt::Display for Permutation {
    /// Digit string for `n <= 9`, comma separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.len() <= 9;
        for (i, v) in self.word.iter().enumerate() {
            if !compact && i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"452361"` (single digits) or `"4,5,2,3,6,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        let word: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse("expected an integer"))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or(Error::Parse("expected a digit")))
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<u32>) -> Result<Self> {
        Permutation::new(word)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(w: Permutation) -> Self {
        w.word
    }
}

impl Permutation {
    /// Same as `Display`, as an owned string.
    pub fn to_compact_string(&self) -> String {
        alloc::format!("{self}")
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        self.word.serialize(s)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let word = Vec::<u32>::deserialize(d)?;
        Permutation::new(word).map_err(serde::de::Error::custom)
    }
}
