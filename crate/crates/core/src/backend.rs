//! Cosine-similarity speaker verification backend.
//!
//! A trial's score against a speaker with several enrollment utterances is
//! the arithmetic mean of the per-enrollment cosine scores (scores are
//! averaged, not embeddings). Enrollment utterances are visited in sorted
//! id order and summed pairwise, so results do not depend on map iteration
//! order.

use crate::error::{Error, Result};
use crate::ingest::{EmbeddingTable, EnrollmentMap, ScoreSet, Trial};

/// Cosine similarity dot(a,b)/(|a|·|b|), in [-1, 1].
pub fn cosine_score(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for (x, y) in a.iter().zip(b) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroNormVector { utt: String::new() });
    }
    // Single square root of the norm product: parallel integer vectors
    // score exactly 1.
    Ok(dot / (na * nb).sqrt())
}

/// Score every trial: mean cosine similarity between the test utterance
/// and each of the claimed speaker's enrollment utterances.
pub fn score_trials(
    embeddings: &EmbeddingTable,
    enrollmap: &EnrollmentMap,
    trials: &[Trial],
) -> Result<ScoreSet> {
    let mut out = ScoreSet::with_capacity("cosine", trials.len());
    for trial in trials {
        let enroll_utts =
            enrollmap
                .get(&trial.key.enroll)
                .ok_or_else(|| Error::UnknownEnrollment {
                    enroll: trial.key.enroll.clone(),
                })?;
        let test_vec = lookup(embeddings, &trial.key.test)?;

        let mut ordered: Vec<&str> = enroll_utts.iter().map(String::as_str).collect();
        ordered.sort_unstable();
        let mut scores = Vec::with_capacity(ordered.len());
        for utt in ordered {
            scores.push(cosine_score(lookup(embeddings, utt)?, test_vec)?);
        }
        let mean = pairwise_sum(&scores) / scores.len() as f64;
        out.insert(trial.key.clone(), mean)?;
    }
    Ok(out)
}

fn lookup<'a>(embeddings: &'a EmbeddingTable, utt: &str) -> Result<&'a [f64]> {
    embeddings
        .get(utt)
        .ok_or_else(|| Error::UnknownUtterance { utt: utt.into() })
}

/// Pairwise (cascade) summation: deterministic and order-stable for a
/// given slice order.
fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}
