//! Z-score normalization and weighted score-level fusion.
//!
//! Each system's scores are standardized to zero mean and unit variance
//! before combination, so systems with different native score scales can
//! be averaged. Normalization statistics use the population (1/N)
//! standard deviation. The fused score is the weighted average of the
//! per-system z-scores; dividing by the weight sum keeps the fused scale
//! comparable across weight choices and leaves every threshold-based
//! metric identical to the raw weighted sum.

use crate::error::{Error, Result};
use crate::ingest::ScoreSet;

/// Cohort mean and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormStats {
    pub mean: f64,
    pub std: f64,
}

impl NormStats {
    pub fn validate(&self) -> Result<()> {
        if !self.mean.is_finite() || !self.std.is_finite() || self.std < 1e-12 {
            return Err(Error::DegenerateStd);
        }
        Ok(())
    }
}

/// Source of normalization statistics.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Cohort {
    /// Statistics over the score set being normalized.
    #[default]
    SelfSet,
    /// Statistics over an external cohort score set, shared by all
    /// systems being fused.
    External(ScoreSet),
}

/// Weights and cohort choice for fusing a system ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionConfig {
    /// One non-negative weight per system; at least one must be positive.
    pub weights: Vec<f64>,
    pub cohort: Cohort,
}

impl FusionConfig {
    /// Uniform weights over `n` systems, self cohort.
    pub fn uniform(n: usize) -> Self {
        FusionConfig {
            weights: vec![1.0; n],
            cohort: Cohort::SelfSet,
        }
    }
}

/// Mean and population standard deviation of a cohort of scores.
pub fn compute_norm_stats(scores: &[f64]) -> Result<NormStats> {
    if scores.len() < 2 {
        return Err(Error::TooFewScores { n: scores.len() });
    }
    let n = scores.len() as f64;
    let mean = scores.iter().sum::<f64>() / n;
    let ssd = scores.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>();
    let std = (ssd / n).sqrt();
    if std < 1e-12 {
        return Err(Error::DegenerateStd);
    }
    Ok(NormStats { mean, std })
}

/// Standardize every score: s -> (s - mean) / std. Keys are unchanged.
pub fn znorm(score_set: &ScoreSet, stats: &NormStats) -> Result<ScoreSet> {
    stats.validate()?;
    let mut out = ScoreSet::with_capacity(score_set.system_name.clone(), score_set.len());
    for (key, score) in score_set.iter() {
        out.insert(key.clone(), (score - stats.mean) / stats.std)?;
    }
    Ok(out)
}

/// Fuse an ensemble of score sets into one: per trial key, the weighted
/// average of the per-system z-scores.
///
/// All systems must share exactly the same trial-key set. With
/// [`Cohort::SelfSet`] each system is standardized by its own statistics;
/// with [`Cohort::External`] the external set's statistics are applied to
/// every system.
pub fn fuse(systems: &[ScoreSet], config: &FusionConfig) -> Result<ScoreSet> {
    if systems.is_empty() {
        return Err(Error::InvalidWeights {
            reason: "no systems to fuse".into(),
        });
    }
    if config.weights.len() != systems.len() {
        return Err(Error::InvalidWeights {
            reason: format!(
                "{} weights for {} systems",
                config.weights.len(),
                systems.len()
            ),
        });
    }
    if config
        .weights
        .iter()
        .any(|w| !w.is_finite() || *w < 0.0)
    {
        return Err(Error::InvalidWeights {
            reason: "weights must be finite and non-negative".into(),
        });
    }
    // Sum in a canonical order so that jointly permuting systems and
    // weights reproduces the fused set bit for bit.
    let weight_sum = stable_sum(config.weights.clone());
    if weight_sum <= 0.0 {
        return Err(Error::InvalidWeights {
            reason: "at least one weight must be positive".into(),
        });
    }
    let first = &systems[0];
    for system in &systems[1..] {
        if !first.same_keys(system) {
            return Err(Error::KeyMismatch {
                detail: format!(
                    "system '{}' does not cover the same trials as '{}'",
                    system.system_name, first.system_name
                ),
            });
        }
    }

    let external_stats = match &config.cohort {
        Cohort::SelfSet => None,
        Cohort::External(cohort) => {
            let scores: Vec<f64> = cohort.scores().collect();
            Some(compute_norm_stats(&scores)?)
        }
    };
    let normalized: Vec<ScoreSet> = systems
        .iter()
        .map(|system| {
            let stats = match external_stats {
                Some(stats) => stats,
                None => {
                    let scores: Vec<f64> = system.scores().collect();
                    compute_norm_stats(&scores)?
                }
            };
            znorm(system, &stats)
        })
        .collect::<Result<_>>()?;

    let mut fused = ScoreSet::with_capacity("fusion", first.len());
    let mut terms = Vec::with_capacity(systems.len());
    for key in first.keys() {
        terms.clear();
        for (system, weight) in normalized.iter().zip(&config.weights) {
            terms.push(weight * system.get(key).expect("key checked against all systems"));
        }
        fused.insert(key.clone(), stable_sum(terms.clone()) / weight_sum)?;
    }
    Ok(fused)
}

/// Sum after sorting by total order: the result depends only on the
/// multiset of addends, not on their arrival order.
fn stable_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_unstable_by(f64::total_cmp);
    terms.iter().sum()
}
