//! Seeded synthetic score and embedding generation with analytically
//! known error rates.
//!
//! Reproducibility contract (so fixtures can be regenerated bit-for-bit
//! by any implementation):
//!
//! * Pseudo-random generator: SplitMix64 (Vigna's `splitmix64.c`
//!   finalizer over a Weyl sequence with increment 0x9E3779B97F4A7C15).
//!   Splitting is by construction: independent streams use independent
//!   seeds.
//! * Uniforms: the top 53 bits of each output, `(x >> 11) * 2^-53`,
//!   giving values in [0, 1).
//! * Gaussians: one draw per Box-Muller cosine branch,
//!   `sqrt(-2 ln u1) * cos(2 pi u2)` with `u1 = 1 - uniform()` in (0, 1]
//!   and `u2 = uniform()`. Exactly two generator outputs are consumed per
//!   Gaussian; the sine branch is discarded.
//!
//! Generation walks classes in target, nontarget, spoof order, so equal
//! configs produce byte-identical files.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ingest::{EmbeddingTable, EnrollmentMap, LabeledScore, Trial, TrialKey, TrialLabel};
use crate::normal::std_normal_cdf;

/// SplitMix64: 64-bit splittable generator with a fixed, portable output
/// sequence.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via the Box-Muller cosine branch. Uses libm's
    /// portable log and cos so identical seeds give bit-identical streams
    /// on every platform.
    pub fn next_standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        (-2.0 * libm::log(u1)).sqrt() * libm::cos(2.0 * std::f64::consts::PI * u2)
    }
}

/// Generation mode selected by a config file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenMode {
    #[default]
    Scores,
    Embeddings,
}

/// Parameters for synthetic score or embedding generation.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynConfig {
    pub mode: GenMode,
    pub seed: u64,
    pub n_target: usize,
    pub n_nontarget: usize,
    pub n_spoof: usize,
    pub mu_tar: f64,
    pub mu_non: f64,
    pub mu_spoof: f64,
    /// Common score (or within-speaker embedding) standard deviation.
    pub sigma: f64,
    /// Embedding dimension (embeddings mode).
    pub dim: usize,
    pub n_speakers: usize,
    pub enroll_per_speaker: usize,
}

impl Default for SynConfig {
    fn default() -> Self {
        SynConfig {
            mode: GenMode::Scores,
            seed: 0,
            n_target: 0,
            n_nontarget: 0,
            n_spoof: 0,
            mu_tar: 0.0,
            mu_non: 0.0,
            mu_spoof: 0.0,
            sigma: 1.0,
            dim: 16,
            n_speakers: 2,
            enroll_per_speaker: 1,
        }
    }
}

impl SynConfig {
    pub fn validate(&self) -> Result<()> {
        let invalid = |reason: &str| Error::InvalidConfig {
            reason: reason.to_string(),
        };
        if !self.sigma.is_finite() || self.sigma <= 0.0 {
            return Err(invalid("sigma must be positive"));
        }
        if [self.mu_tar, self.mu_non, self.mu_spoof]
            .iter()
            .any(|m| !m.is_finite())
        {
            return Err(invalid("class means must be finite"));
        }
        let nonempty = [self.n_target, self.n_nontarget, self.n_spoof]
            .iter()
            .filter(|n| **n > 0)
            .count();
        if nonempty < 2 {
            return Err(invalid("at least two trial classes must be non-empty"));
        }
        if self.mode == GenMode::Embeddings {
            if self.dim < 2 {
                return Err(invalid("embedding dimension must be at least 2"));
            }
            if self.n_speakers == 0 || self.enroll_per_speaker == 0 {
                return Err(invalid("need at least one speaker and one enrollment utterance"));
            }
            if self.n_nontarget > 0 && self.n_speakers < 2 {
                return Err(invalid("nontarget trials need at least two speakers"));
            }
        }
        Ok(())
    }
}

/// Labeled scores drawn from class-conditional Gaussians
/// N(mu_class, sigma^2), one record per configured trial.
pub fn generate_scores(config: &SynConfig) -> Result<Vec<LabeledScore>> {
    config.validate()?;
    let mut rng = SplitMix64::new(config.seed);
    let mut records =
        Vec::with_capacity(config.n_target + config.n_nontarget + config.n_spoof);
    let classes = [
        (TrialLabel::Target, config.n_target, config.mu_tar),
        (TrialLabel::Nontarget, config.n_nontarget, config.mu_non),
        (TrialLabel::Spoof, config.n_spoof, config.mu_spoof),
    ];
    let mut index = 0usize;
    for (label, count, mu) in classes {
        for _ in 0..count {
            let score = mu + config.sigma * rng.next_standard_normal();
            records.push(LabeledScore {
                key: TrialKey::new(format!("spk{index:06}"), format!("utt{index:06}")),
                score,
                label,
            });
            index += 1;
        }
    }
    Ok(records)
}

/// Analytic EER of two equal-variance Gaussian score distributions:
/// Phi(-(mu_pos - mu_neg) / (2 sigma)).
pub fn analytic_eer(mu_pos: f64, mu_neg: f64, sigma: f64) -> Result<f64> {
    if !sigma.is_finite() || sigma <= 0.0 || !mu_pos.is_finite() || !mu_neg.is_finite() {
        return Err(Error::InvalidConfig {
            reason: "sigma must be positive and means finite".into(),
        });
    }
    if mu_pos < mu_neg {
        return Err(Error::InvalidConfig {
            reason: "mu_pos must not be below mu_neg".into(),
        });
    }
    Ok(std_normal_cdf(-(mu_pos - mu_neg) / (2.0 * sigma)))
}

/// Synthetic embedding benchmark: per-speaker Gaussian mean vectors with
/// enrollment and bonafide test utterances sampled around the speaker
/// mean; spoof test utterances are sampled around the claimed speaker's
/// mean but labeled spoof (only a countermeasure could reject them).
pub fn generate_embeddings(
    config: &SynConfig,
) -> Result<(EmbeddingTable, EnrollmentMap, Vec<Trial>)> {
    let mut config = config.clone();
    config.mode = GenMode::Embeddings;
    config.validate()?;
    let mut rng = SplitMix64::new(config.seed);

    let speaker_means: Vec<Vec<f64>> = (0..config.n_speakers)
        .map(|_| (0..config.dim).map(|_| rng.next_standard_normal()).collect())
        .collect();
    let speaker_id = |s: usize| format!("spk{s:04}");
    let sample_around = |mean: &[f64], rng: &mut SplitMix64| -> Vec<f64> {
        mean.iter()
            .map(|m| m + config.sigma * rng.next_standard_normal())
            .collect()
    };

    let mut table = EmbeddingTable::new();
    let mut enrollmap = EnrollmentMap::new();
    for (s, mean) in speaker_means.iter().enumerate() {
        let mut utts = Vec::with_capacity(config.enroll_per_speaker);
        for j in 0..config.enroll_per_speaker {
            let utt = format!("spk{s:04}_enr{j:02}");
            table.insert(utt.clone(), sample_around(mean, &mut rng))?;
            utts.push(utt);
        }
        enrollmap.insert(speaker_id(s), utts)?;
    }

    let mut trials =
        Vec::with_capacity(config.n_target + config.n_nontarget + config.n_spoof);
    for i in 0..config.n_target {
        let s = i % config.n_speakers;
        let utt = format!("tgt{i:06}");
        table.insert(utt.clone(), sample_around(&speaker_means[s], &mut rng))?;
        trials.push(Trial {
            key: TrialKey::new(speaker_id(s), utt),
            label: TrialLabel::Target,
        });
    }
    for i in 0..config.n_nontarget {
        let actual = i % config.n_speakers;
        let claimed = (actual + 1) % config.n_speakers;
        let utt = format!("non{i:06}");
        table.insert(utt.clone(), sample_around(&speaker_means[actual], &mut rng))?;
        trials.push(Trial {
            key: TrialKey::new(speaker_id(claimed), utt),
            label: TrialLabel::Nontarget,
        });
    }
    for i in 0..config.n_spoof {
        let claimed = i % config.n_speakers;
        let utt = format!("spf{i:06}");
        table.insert(utt.clone(), sample_around(&speaker_means[claimed], &mut rng))?;
        trials.push(Trial {
            key: TrialKey::new(speaker_id(claimed), utt),
            label: TrialLabel::Spoof,
        });
    }
    Ok((table, enrollmap, trials))
}
