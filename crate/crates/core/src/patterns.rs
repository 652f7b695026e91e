//! Classical and consecutive pattern containment.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// The permutation order-isomorphic to `seq`.
pub fn standardize(seq: &[u32]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_unstable_by_key(|&i| seq[i]);
    if let Some(p) = order.windows(2).find(|p| seq[p[0]] == seq[p[1]]) {
        return Err(Error::DuplicateValue { value: seq[p[0]] });
    }
    let mut word = vec![0u32; seq.len()];
    for (rank, &i) in order.iter().enumerate() {
        word[i] = rank as u32 + 1;
    }
    Permutation::new(word)
}

/// Positions (0-based) of some occurrence of `sigma` as a not necessarily contiguous
/// subsequence of `w`.
pub fn classical_occurrence(w: &Permutation, sigma: &Permutation) -> Option<Vec<usize>> {
    let (word, pat) = (w.word(), sigma.word());
    let k = pat.len();
    if k > word.len() {
        return None;
    }
    // chosen[j] is the position matched to pattern letter j
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    fn consistent(word: &[u32], pat: &[u32], chosen: &[usize], pos: usize) -> bool {
        let j = chosen.len();
        chosen
            .iter()
            .enumerate()
            .all(|(i, &p)| (pat[i] < pat[j]) == (word[p] < word[pos]))
    }
    fn search(word: &[u32], pat: &[u32], chosen: &mut Vec<usize>) -> bool {
        let j = chosen.len();
        if j == pat.len() {
            return true;
        }
        let from = chosen.last().map_or(0, |&p| p + 1);
        // leave room for the remaining pattern letters
        let to = word.len() - (pat.len() - j - 1);
        for pos in from..to {
            if consistent(word, pat, chosen, pos) {
                chosen.push(pos);
                if search(word, pat, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    search(word, pat, &mut chosen).then_some(chosen)
}

pub fn contains_classical(w: &Permutation, sigma: &Permutation) -> bool {
    classical_occurrence(w, sigma).is_some()
}

/// Start (0-based) of some window of `w` that standardizes to `sigma`.
pub fn consecutive_occurrence(w: &Permutation, sigma: &Permutation) -> Option<usize> {
    let k = sigma.len();
    if k > w.len() {
        return None;
    }
    w.word().windows(k).position(|win| {
        // order isomorphism without allocating: compare every pair
        (0..k).all(|i| (i + 1..k).all(|j| (win[i] < win[j]) == (sigma.word()[i] < sigma.word()[j])))
    })
}

pub fn contains_consecutive(w: &Permutation, sigma: &Permutation) -> bool {
    consecutive_occurrence(w, sigma).is_some()
}
