//! EER, SASV-EER, a-DCF, Macro a-DCF and DET curve computation.
//!
//! All metrics share one threshold convention:
//!
//! * accept rule is `score >= threshold` (ties accept);
//! * candidate thresholds are the midpoints between consecutive distinct
//!   pooled scores plus one sentinel below the minimum and one above the
//!   maximum, so every achievable operating point is visited;
//! * error rates are exact integer-count ratios,
//!   `P_miss(t) = |{pos < t}| / |pos|` and `P_fa(t) = |{neg >= t}| / |neg|`.
//!
//! The EER is the average of `P_miss` and `P_fa` at the first candidate,
//! in increasing threshold order, where `P_miss >= P_fa`. No convex-hull
//! or ROCCH interpolation is applied; published EERs computed under other
//! conventions can differ.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ingest::{LabeledScore, TrialLabel};
use crate::normal::probit;

/// An equal-error-rate operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EerPoint {
    /// Equal error rate in [0, 1].
    pub eer: f64,
    pub threshold: f64,
}

/// A minimum-cost operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdcfPoint {
    pub adcf: f64,
    pub threshold: f64,
}

/// Costs and priors for the agnostic detection cost function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdcfParams {
    pub c_miss: f64,
    pub c_fa_non: f64,
    pub c_fa_spoof: f64,
    pub pi_tar: f64,
    pub pi_non: f64,
    pub pi_spoof: f64,
    pub normalize: bool,
}

impl Default for AdcfParams {
    /// Conventional parameterization: miss cost 1, false-accept costs 10,
    /// priors (0.9405, 0.0095, 0.05), normalized.
    fn default() -> Self {
        AdcfParams {
            c_miss: 1.0,
            c_fa_non: 10.0,
            c_fa_spoof: 10.0,
            pi_tar: 0.9405,
            pi_non: 0.0095,
            pi_spoof: 0.05,
            normalize: true,
        }
    }
}

impl AdcfParams {
    pub fn new(
        costs: (f64, f64, f64),
        priors: (f64, f64, f64),
        normalize: bool,
    ) -> Result<Self> {
        let params = AdcfParams {
            c_miss: costs.0,
            c_fa_non: costs.1,
            c_fa_spoof: costs.2,
            pi_tar: priors.0,
            pi_non: priors.1,
            pi_spoof: priors.2,
            normalize,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |reason: &str| Error::InvalidParams {
            reason: reason.to_string(),
        };
        let costs = [self.c_miss, self.c_fa_non, self.c_fa_spoof];
        let priors = [self.pi_tar, self.pi_non, self.pi_spoof];
        if costs.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(invalid("costs must be finite and non-negative"));
        }
        if priors.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(invalid("priors must be finite and non-negative"));
        }
        let sum: f64 = priors.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(invalid("priors must sum to 1 within 1e-9"));
        }
        let products = [
            self.c_miss * self.pi_tar,
            self.c_fa_non * self.pi_non,
            self.c_fa_spoof * self.pi_spoof,
        ];
        if !products.iter().any(|p| *p > 0.0) {
            return Err(invalid("at least one cost x prior product must be positive"));
        }
        Ok(())
    }
}

/// Exact per-threshold error counts for a three-class labeled score set.
///
/// Rates are always computed as a single integer-count division, so they
/// are bit-identical regardless of how the counting is ordered. An empty
/// nontarget or spoof class has a zero false-accept rate by convention
/// (its cost term vanishes).
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorProfile {
    thresholds: Vec<f64>,
    miss_counts: Vec<usize>,
    fa_non_counts: Vec<usize>,
    fa_spoof_counts: Vec<usize>,
    n_tar: usize,
    n_non: usize,
    n_spoof: usize,
}

impl ErrorProfile {
    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn len(&self) -> usize {
        self.thresholds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thresholds.is_empty()
    }

    pub fn n_tar(&self) -> usize {
        self.n_tar
    }

    pub fn n_non(&self) -> usize {
        self.n_non
    }

    pub fn n_spoof(&self) -> usize {
        self.n_spoof
    }

    pub fn p_miss(&self, i: usize) -> f64 {
        self.miss_counts[i] as f64 / self.n_tar as f64
    }

    pub fn p_fa_non(&self, i: usize) -> f64 {
        rate_or_zero(self.fa_non_counts[i], self.n_non)
    }

    pub fn p_fa_spoof(&self, i: usize) -> f64 {
        rate_or_zero(self.fa_spoof_counts[i], self.n_spoof)
    }

    /// False-accept rate over pooled nontarget and spoof trials.
    pub fn p_fa_pooled(&self, i: usize) -> f64 {
        rate_or_zero(
            self.fa_non_counts[i] + self.fa_spoof_counts[i],
            self.n_non + self.n_spoof,
        )
    }
}

fn rate_or_zero(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        count as f64 / total as f64
    }
}

/// Candidate thresholds for a pooled score collection: midpoints between
/// consecutive distinct values, plus sentinels below the minimum and above
/// the maximum.
pub(crate) fn candidate_thresholds(scores: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut values: Vec<f64> = scores.collect();
    values.sort_unstable_by(f64::total_cmp);
    values.dedup();
    if values.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(values.len() + 1);
    out.push(below_all(values[0]));
    for pair in values.windows(2) {
        out.push(0.5 * pair[0] + 0.5 * pair[1]);
    }
    out.push(above_all(*values.last().unwrap()));
    out
}

/// A finite value strictly below `min` (the accept-all operating point).
pub(crate) fn below_all(min: f64) -> f64 {
    let candidate = min - 1.0;
    if candidate < min {
        candidate
    } else {
        min.next_down()
    }
}

/// A finite value strictly above `max` (the reject-all operating point).
pub(crate) fn above_all(max: f64) -> f64 {
    let candidate = max + 1.0;
    if candidate > max {
        candidate
    } else {
        max.next_up()
    }
}

/// Count of elements in ascending `sorted` that are `< threshold`.
fn count_below(sorted: &[f64], cursor: &mut usize, threshold: f64) -> usize {
    while *cursor < sorted.len() && sorted[*cursor] < threshold {
        *cursor += 1;
    }
    *cursor
}

/// Equal error rate of positive vs negative scores under the module's
/// sweep convention. Returns the EER and the crossing threshold.
pub fn compute_eer(pos: &[f64], neg: &[f64]) -> Result<EerPoint> {
    if pos.is_empty() {
        return Err(Error::EmptyClass {
            class_name: "positive".into(),
        });
    }
    if neg.is_empty() {
        return Err(Error::EmptyClass {
            class_name: "negative".into(),
        });
    }
    let mut pos_sorted = pos.to_vec();
    let mut neg_sorted = neg.to_vec();
    pos_sorted.sort_unstable_by(f64::total_cmp);
    neg_sorted.sort_unstable_by(f64::total_cmp);

    let candidates =
        candidate_thresholds(pos_sorted.iter().chain(neg_sorted.iter()).copied());
    let (mut pi, mut ni) = (0usize, 0usize);
    for threshold in candidates {
        let miss = count_below(&pos_sorted, &mut pi, threshold);
        let rejected_neg = count_below(&neg_sorted, &mut ni, threshold);
        let p_miss = miss as f64 / pos_sorted.len() as f64;
        let p_fa = (neg_sorted.len() - rejected_neg) as f64 / neg_sorted.len() as f64;
        if p_miss >= p_fa {
            return Ok(EerPoint {
                eer: 0.5 * (p_miss + p_fa),
                threshold,
            });
        }
    }
    unreachable!("sweep always crosses at the reject-all sentinel")
}

/// SASV equal error rate: targets are positives; nontarget and spoof
/// trials pool as negatives.
pub fn compute_sasv_eer(scores: &[LabeledScore]) -> Result<EerPoint> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for record in scores {
        match record.label {
            TrialLabel::Target => pos.push(record.score),
            TrialLabel::Nontarget | TrialLabel::Spoof => neg.push(record.score),
        }
    }
    if pos.is_empty() {
        return Err(Error::EmptyClass {
            class_name: "target".into(),
        });
    }
    if neg.is_empty() {
        return Err(Error::EmptyClass {
            class_name: "nontarget+spoof".into(),
        });
    }
    compute_eer(&pos, &neg)
}

/// Exact counting rates at every candidate threshold over the pooled
/// scores of all classes present.
pub fn error_profile(scores: &[LabeledScore]) -> Result<ErrorProfile> {
    let mut tar = Vec::new();
    let mut non = Vec::new();
    let mut spoof = Vec::new();
    for record in scores {
        match record.label {
            TrialLabel::Target => tar.push(record.score),
            TrialLabel::Nontarget => non.push(record.score),
            TrialLabel::Spoof => spoof.push(record.score),
        }
    }
    if tar.is_empty() {
        return Err(Error::EmptyClass {
            class_name: "target".into(),
        });
    }
    if non.is_empty() && spoof.is_empty() {
        return Err(Error::EmptyClass {
            class_name: "nontarget+spoof".into(),
        });
    }
    tar.sort_unstable_by(f64::total_cmp);
    non.sort_unstable_by(f64::total_cmp);
    spoof.sort_unstable_by(f64::total_cmp);

    let thresholds = candidate_thresholds(
        tar.iter().chain(non.iter()).chain(spoof.iter()).copied(),
    );
    let mut profile = ErrorProfile {
        miss_counts: Vec::with_capacity(thresholds.len()),
        fa_non_counts: Vec::with_capacity(thresholds.len()),
        fa_spoof_counts: Vec::with_capacity(thresholds.len()),
        n_tar: tar.len(),
        n_non: non.len(),
        n_spoof: spoof.len(),
        thresholds,
    };
    let (mut ti, mut ni, mut si) = (0usize, 0usize, 0usize);
    for i in 0..profile.thresholds.len() {
        let threshold = profile.thresholds[i];
        profile
            .miss_counts
            .push(count_below(&tar, &mut ti, threshold));
        profile
            .fa_non_counts
            .push(non.len() - count_below(&non, &mut ni, threshold));
        profile
            .fa_spoof_counts
            .push(spoof.len() - count_below(&spoof, &mut si, threshold));
    }
    Ok(profile)
}

/// Minimum of the detection cost
/// `c_miss·pi_tar·p_miss + c_fa_non·pi_non·p_fa_non + c_fa_spoof·pi_spoof·p_fa_spoof`
/// over the profile's candidate thresholds; earliest threshold wins ties.
/// When `params.normalize` is set the minimum is divided by the cost of
/// the better trivial system, `min(c_miss·pi_tar, c_fa_non·pi_non + c_fa_spoof·pi_spoof)`.
pub fn compute_adcf(profile: &ErrorProfile, params: &AdcfParams) -> Result<AdcfPoint> {
    params.validate()?;
    let w_miss = params.c_miss * params.pi_tar;
    let w_non = params.c_fa_non * params.pi_non;
    let w_spoof = params.c_fa_spoof * params.pi_spoof;

    let mut best = f64::INFINITY;
    let mut best_threshold = f64::NAN;
    for i in 0..profile.len() {
        let cost =
            w_miss * profile.p_miss(i) + w_non * profile.p_fa_non(i) + w_spoof * profile.p_fa_spoof(i);
        if cost < best {
            best = cost;
            best_threshold = profile.thresholds[i];
        }
    }
    if params.normalize {
        let normalizer = f64::min(w_miss, w_non + w_spoof);
        if normalizer <= 0.0 {
            return Err(Error::DegenerateParams {
                reason: "normalizer min(c_miss*pi_tar, c_fa_non*pi_non + c_fa_spoof*pi_spoof) is zero"
                    .into(),
            });
        }
        best /= normalizer;
    }
    Ok(AdcfPoint {
        adcf: best,
        threshold: best_threshold,
    })
}

/// Unweighted arithmetic mean of per-dataset a-DCF values.
pub fn compute_macro_adcf(per_dataset: &[(String, f64)]) -> Result<f64> {
    if per_dataset.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sum: f64 = per_dataset.iter().map(|(_, v)| v).sum();
    Ok(sum / per_dataset.len() as f64)
}

/// One DET curve operating point. Rates are raw; probits are computed
/// after clamping rates to [1e-6, 1 - 1e-6].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetPoint {
    pub threshold: f64,
    pub p_miss: f64,
    /// False-accept rate over pooled nontarget and spoof trials.
    pub p_fa: f64,
    pub probit_miss: f64,
    pub probit_fa: f64,
}

const DET_CLAMP: f64 = 1e-6;

/// Probit-transformed DET curve of an error profile, one point per
/// candidate threshold.
pub fn det_points(profile: &ErrorProfile) -> Vec<DetPoint> {
    (0..profile.len())
        .map(|i| {
            let p_miss = profile.p_miss(i);
            let p_fa = profile.p_fa_pooled(i);
            DetPoint {
                threshold: profile.thresholds[i],
                p_miss,
                p_fa,
                probit_miss: probit(p_miss.clamp(DET_CLAMP, 1.0 - DET_CLAMP)),
                probit_fa: probit(p_fa.clamp(DET_CLAMP, 1.0 - DET_CLAMP)),
            }
        })
        .collect()
}

/// Per-class trial counts of an evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub nontarget: usize,
    pub spoof: usize,
    pub target: usize,
}

/// Operating thresholds backing each reported metric.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ReportThresholds {
    pub adcf: Option<f64>,
    pub asv: Option<f64>,
    pub sasv: Option<f64>,
    pub sd: Option<f64>,
}

/// Evaluation summary: spoof-detection, speaker-verification and SASV
/// equal error rates (as percentages) plus the minimum a-DCF.
///
/// A metric whose classes are absent from the input is reported as null.
/// Field declaration order is alphabetical so serialized reports have
/// sorted keys.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricReport {
    pub adcf: Option<f64>,
    pub asv_eer_pct: Option<f64>,
    pub counts: ClassCounts,
    pub dropped_unmatched: usize,
    pub sasv_eer_pct: Option<f64>,
    pub sd_eer_pct: Option<f64>,
    pub thresholds: ReportThresholds,
}

/// Compute the full metric report for a labeled score list.
///
/// * SD EER: bonafide (target + nontarget) vs spoof.
/// * ASV EER: target vs nontarget.
/// * SASV EER: target vs pooled nontarget + spoof.
/// * a-DCF: minimum cost over the error profile.
pub fn compute_report(
    scores: &[LabeledScore],
    params: &AdcfParams,
    dropped_unmatched: usize,
) -> Result<MetricReport> {
    let mut tar = Vec::new();
    let mut non = Vec::new();
    let mut spoof = Vec::new();
    for record in scores {
        match record.label {
            TrialLabel::Target => tar.push(record.score),
            TrialLabel::Nontarget => non.push(record.score),
            TrialLabel::Spoof => spoof.push(record.score),
        }
    }
    if tar.is_empty() {
        return Err(Error::EmptyClass {
            class_name: "target".into(),
        });
    }
    if non.is_empty() && spoof.is_empty() {
        return Err(Error::EmptyClass {
            class_name: "nontarget+spoof".into(),
        });
    }

    let mut report = MetricReport {
        adcf: None,
        asv_eer_pct: None,
        counts: ClassCounts {
            nontarget: non.len(),
            spoof: spoof.len(),
            target: tar.len(),
        },
        dropped_unmatched,
        sasv_eer_pct: None,
        sd_eer_pct: None,
        thresholds: ReportThresholds::default(),
    };

    if !spoof.is_empty() {
        let bona: Vec<f64> = tar.iter().chain(non.iter()).copied().collect();
        let point = compute_eer(&bona, &spoof)?;
        report.sd_eer_pct = Some(point.eer * 100.0);
        report.thresholds.sd = Some(point.threshold);
    }
    if !non.is_empty() {
        let point = compute_eer(&tar, &non)?;
        report.asv_eer_pct = Some(point.eer * 100.0);
        report.thresholds.asv = Some(point.threshold);
    }
    let point = compute_sasv_eer(scores)?;
    report.sasv_eer_pct = Some(point.eer * 100.0);
    report.thresholds.sasv = Some(point.threshold);

    let profile = error_profile(scores)?;
    let point = compute_adcf(&profile, params)?;
    report.adcf = Some(point.adcf);
    report.thresholds.adcf = Some(point.threshold);

    debug_assert!(report
        .sasv_eer_pct
        .iter()
        .chain(report.asv_eer_pct.iter())
        .chain(report.sd_eer_pct.iter())
        .all(|r| (0.0..=100.0).contains(r)));
    debug_assert!(report.adcf.unwrap() >= 0.0);
    Ok(report)
}
