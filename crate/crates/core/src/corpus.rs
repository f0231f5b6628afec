//! Training-set downsampling.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::conllu::Sentence;

/// Uniform sample of `n` sentences without replacement, deterministic for a
/// given seed. Selected sentences keep their original corpus order. When the
/// corpus is smaller than `n`, the whole corpus is returned.
pub fn sample_training(sentences: &[Sentence], n: usize, seed: u64) -> Vec<Sentence> {
    if n >= sentences.len() {
        return sentences.to_vec();
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut indices: Vec<usize> = (0..sentences.len()).collect();
    indices.shuffle(&mut rng);
    let mut chosen: Vec<usize> = indices[..n].to_vec();
    chosen.sort_unstable();
    chosen.into_iter().map(|i| sentences[i].clone()).collect()
}
