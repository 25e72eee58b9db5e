//! Sequential CM -> ASV gating.
//!
//! The countermeasure decides bonafide vs spoof first; the speaker
//! verifier only matters for trials the CM accepts. Decisions are the
//! conjunction of the two accepts (ties at a threshold accept, matching
//! the metrics convention). The gated score stream keeps the fused ASV
//! score for CM-accepted trials and maps every CM-rejected trial to a
//! floor value strictly below all fused scores, so the stream stays
//! totally ordered for EER computation.

use crate::error::{Error, Result};
use crate::ingest::{LabeledScore, ScoreSet, TrialKey};
use crate::metrics::{below_all, compute_eer};

/// Operating thresholds for the two cascade stages.
///
/// The floor assigned to CM-rejected gated scores is not configurable: it
/// is the minimum fused ASV score over the evaluation set minus 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeConfig {
    pub cm_threshold: f64,
    pub asv_threshold: f64,
}

/// Per-trial cascade outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct SasvDecision {
    pub key: TrialKey,
    pub cm_accept: bool,
    pub asv_accept: bool,
    /// `cm_accept && asv_accept`.
    pub final_accept: bool,
    pub gated_score: f64,
}

/// EER operating threshold of a development CM score set: bonafide
/// (target + nontarget) scores are positives, spoof scores negatives.
pub fn select_cm_threshold(cm_dev_scores: &[LabeledScore]) -> Result<f64> {
    let mut bona = Vec::new();
    let mut spoof = Vec::new();
    for record in cm_dev_scores {
        if record.label.is_bonafide() {
            bona.push(record.score);
        } else {
            spoof.push(record.score);
        }
    }
    if bona.is_empty() || spoof.is_empty() {
        return Err(Error::SingleClassInput);
    }
    Ok(compute_eer(&bona, &spoof)?.threshold)
}

/// Gate fused ASV scores through hard CM decisions: a trial keeps its
/// fused score iff its CM score clears the threshold; rejected trials all
/// receive the floor (min fused score - 1).
pub fn cascade_score(cm: &ScoreSet, asv_fused: &ScoreSet, cm_threshold: f64) -> Result<ScoreSet> {
    check_same_keys(cm, asv_fused)?;
    if asv_fused.is_empty() {
        return Err(Error::EmptyScoreSet);
    }
    let min = asv_fused
        .scores()
        .fold(f64::INFINITY, f64::min);
    let floor = below_all(min);

    let mut out = ScoreSet::with_capacity(
        format!("cascade({},{})", cm.system_name, asv_fused.system_name),
        asv_fused.len(),
    );
    for (key, asv_score) in asv_fused.iter() {
        let cm_score = cm.get(key).expect("key sets checked equal");
        let gated = if cm_score >= cm_threshold { asv_score } else { floor };
        out.insert(key.clone(), gated)?;
    }
    Ok(out)
}

/// Full cascade decisions plus gated scores for every trial, in the CM
/// set's record order.
pub fn cascade_decide(
    cm: &ScoreSet,
    asv_fused: &ScoreSet,
    config: &CascadeConfig,
) -> Result<Vec<SasvDecision>> {
    let gated = cascade_score(cm, asv_fused, config.cm_threshold)?;
    let mut decisions = Vec::with_capacity(cm.len());
    for (key, cm_score) in cm.iter() {
        let asv_score = asv_fused.get(key).expect("key sets checked equal");
        let cm_accept = cm_score >= config.cm_threshold;
        let asv_accept = asv_score >= config.asv_threshold;
        decisions.push(SasvDecision {
            key: key.clone(),
            cm_accept,
            asv_accept,
            final_accept: cm_accept && asv_accept,
            gated_score: gated.get(key).expect("gated covers all keys"),
        });
    }
    Ok(decisions)
}

fn check_same_keys(cm: &ScoreSet, asv: &ScoreSet) -> Result<()> {
    if !cm.same_keys(asv) {
        return Err(Error::KeyMismatch {
            detail: format!(
                "CM scores '{}' and ASV scores '{}' cover different trials",
                cm.system_name, asv.system_name
            ),
        });
    }
    Ok(())
}
