//! Paired randomization significance test over per-sentence counts.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};

use super::ScoredRun;

/// Two-sided paired randomization test on LAS. Each replicate swaps the two
/// systems' per-sentence counts with probability ½ and recomputes the
/// absolute LAS difference; the add-one estimator keeps p strictly positive:
/// p = (1 + #{replicates ≥ observed}) / (1 + shuffles).
pub fn randomization_test(
    run_a: &ScoredRun,
    run_b: &ScoredRun,
    shuffles: usize,
    seed: u64,
) -> Result<f64> {
    if shuffles == 0 {
        return Err(Error::usage("randomization test needs at least 1 shuffle"));
    }
    if run_a.sentences.len() != run_b.sentences.len() {
        return Err(Error::Eval(format!(
            "runs are misaligned: {} vs {} sentences",
            run_a.sentences.len(),
            run_b.sentences.len()
        )));
    }
    for (i, (a, b)) in run_a.sentences.iter().zip(&run_b.sentences).enumerate() {
        if a.tokens != b.tokens {
            return Err(Error::Eval(format!(
                "runs are misaligned at sentence {}: {} vs {} tokens",
                i + 1,
                a.tokens,
                b.tokens
            )));
        }
    }
    let total: usize = run_a.sentences.iter().map(|s| s.tokens).sum();
    let total = total as f64;
    let a: Vec<f64> = run_a
        .sentences
        .iter()
        .map(|s| s.correct_labeled as f64)
        .collect();
    let b: Vec<f64> = run_b
        .sentences
        .iter()
        .map(|s| s.correct_labeled as f64)
        .collect();
    let sum_a: f64 = a.iter().sum();
    let sum_b: f64 = b.iter().sum();
    let observed = (sum_a - sum_b).abs() * 100.0 / total;

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut at_least = 0usize;
    for _ in 0..shuffles {
        let mut diff = 0.0;
        for i in 0..a.len() {
            let d = a[i] - b[i];
            if rng.random::<bool>() {
                diff -= d;
            } else {
                diff += d;
            }
        }
        let stat = diff.abs() * 100.0 / total;
        if stat >= observed - 1e-12 {
            at_least += 1;
        }
    }
    Ok((1 + at_least) as f64 / (1 + shuffles) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::SentenceScore;

    fn run(scores: &[(usize, usize)]) -> ScoredRun {
        ScoredRun {
            language: "xx".into(),
            system: "s".into(),
            sentences: scores
                .iter()
                .map(|&(correct, tokens)| SentenceScore {
                    correct_heads: correct,
                    correct_labeled: correct,
                    tokens,
                })
                .collect(),
        }
    }

    #[test]
    fn identical_runs_give_p_one() {
        let a = run(&[(3, 5), (2, 4), (7, 9)]);
        let p = randomization_test(&a, &a.clone(), 500, 1).unwrap();
        assert_eq!(p, 1.0);
    }

    #[test]
    fn dominated_run_is_significant() {
        // A beats B on every one of 200 sentences by a fixed margin
        let a = run(&(0..200).map(|_| (9, 10)).collect::<Vec<_>>());
        let b = run(&(0..200).map(|_| (5, 10)).collect::<Vec<_>>());
        let p = randomization_test(&a, &b, 10_000, 7).unwrap();
        assert!(p < 0.01, "p = {p}");
    }

    #[test]
    fn same_seed_same_p() {
        let a = run(&[(3, 5), (2, 4), (7, 9), (1, 3)]);
        let b = run(&[(4, 5), (1, 4), (6, 9), (2, 3)]);
        let p1 = randomization_test(&a, &b, 1000, 42).unwrap();
        let p2 = randomization_test(&a, &b, 1000, 42).unwrap();
        assert_eq!(p1, p2);
        let p3 = randomization_test(&a, &b, 1000, 43).unwrap();
        assert!(p1 > 0.0 && p1 <= 1.0);
        let _ = p3;
    }

    #[test]
    fn misaligned_runs_error() {
        let a = run(&[(3, 5)]);
        let b = run(&[(3, 6)]);
        assert!(randomization_test(&a, &b, 10, 1).is_err());
        let c = run(&[(3, 5), (1, 2)]);
        assert!(randomization_test(&a, &c, 10, 1).is_err());
    }
}
