use boxball_core::BbsConfiguration;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x0b0c_ba11_5eed;

/// `count` reproducible random configurations with `n` balls: a shuffled word with
/// 0 to 3 empty boxes before each ball, placed at an offset in `-5..5`.
pub fn gapped_configurations(n: usize, count: usize) -> Vec<BbsConfiguration> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ n as u64);
    let mut word: Vec<u32> = (1..=n as u32).collect();
    (0..count)
        .map(|_| {
            word.shuffle(&mut rng);
            let mut cells = Vec::with_capacity(4 * n);
            for &v in &word {
                cells.extend(std::iter::repeat_n(None, rng.random_range(0..=3)));
                cells.push(Some(v));
            }
            let offset = rng.random_range(-5..5);
            BbsConfiguration::new(offset, cells).expect("word is a permutation")
        })
        .collect()
}
