//! Trial, score, embedding, enrollment-map and manifest file handling.
//!
//! All text formats share the same conventions: UTF-8, one record per
//! line, fields separated by single ASCII spaces, lines starting with `#`
//! ignored. Identifiers are opaque, but the formats cannot represent ids
//! that contain spaces or newlines, or that begin with `#` in the first
//! field.
//!
//! Line formats:
//!
//! ```text
//! trials:     <enroll-id> <test-id> <target|nontarget|spoof>
//! scores:     <enroll-id> <test-id> <float>
//! embeddings: <utt-id> <v1> <v2> ... <vd>
//! enroll map: <enroll-id> <utt-id> [<utt-id> ...]
//! manifest:   JSON array of {"name", "trials", "scores"}
//! ```
//!
//! Floats are written with shortest round-trip decimal formatting, so a
//! written file re-parses to bit-identical values and fixture files are
//! byte-stable across platforms.

use std::fmt;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fsutil;

/// Ground-truth class of a trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrialLabel {
    /// Bona fide speech from the claimed speaker.
    Target,
    /// Bona fide speech from a different speaker.
    Nontarget,
    /// Machine-generated speech presented as the claimed speaker.
    Spoof,
}

impl TrialLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            TrialLabel::Target => "target",
            TrialLabel::Nontarget => "nontarget",
            TrialLabel::Spoof => "spoof",
        }
    }

    /// Bona fide = target or nontarget.
    pub fn is_bonafide(&self) -> bool {
        !matches!(self, TrialLabel::Spoof)
    }
}

impl fmt::Display for TrialLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One (enrollment id, test utterance id) pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrialKey {
    pub enroll: String,
    pub test: String,
}

impl TrialKey {
    pub fn new(enroll: impl Into<String>, test: impl Into<String>) -> Self {
        TrialKey {
            enroll: enroll.into(),
            test: test.into(),
        }
    }
}

impl fmt::Display for TrialKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.enroll, self.test)
    }
}

/// A labeled trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trial {
    pub key: TrialKey,
    pub label: TrialLabel,
}

/// One score joined with its ground-truth label.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledScore {
    pub key: TrialKey,
    pub score: f64,
    pub label: TrialLabel,
}

/// Result of aligning a score set with a trial list.
#[derive(Debug, Clone, PartialEq)]
pub struct JoinedScores {
    /// One record per trial, in trial-list order.
    pub records: Vec<LabeledScore>,
    /// Scores without a matching trial that were dropped (lenient mode).
    pub dropped_unmatched: usize,
}

/// Per-system trial scores, keyed by (enroll, test).
///
/// Insertion order is preserved so that writing and re-parsing a set is
/// an identity. Scores are guaranteed finite and keys unique.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreSet {
    pub system_name: String,
    records: IndexMap<TrialKey, f64>,
}

impl ScoreSet {
    pub fn new(system_name: impl Into<String>) -> Self {
        ScoreSet {
            system_name: system_name.into(),
            records: IndexMap::new(),
        }
    }

    pub fn with_capacity(system_name: impl Into<String>, capacity: usize) -> Self {
        ScoreSet {
            system_name: system_name.into(),
            records: IndexMap::with_capacity(capacity),
        }
    }

    pub fn insert(&mut self, key: TrialKey, score: f64) -> Result<()> {
        if !score.is_finite() {
            return Err(Error::NonFiniteScore {
                enroll: key.enroll,
                test: key.test,
            });
        }
        if self.records.contains_key(&key) {
            return Err(Error::DuplicateTrial {
                enroll: key.enroll,
                test: key.test,
            });
        }
        self.records.insert(key, score);
        Ok(())
    }

    pub fn get(&self, key: &TrialKey) -> Option<f64> {
        self.records.get(key).copied()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TrialKey, f64)> {
        self.records.iter().map(|(k, v)| (k, *v))
    }

    pub fn keys(&self) -> impl Iterator<Item = &TrialKey> {
        self.records.keys()
    }

    pub fn scores(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.values().copied()
    }

    /// True when both sets hold exactly the same trial keys (order ignored).
    pub fn same_keys(&self, other: &ScoreSet) -> bool {
        self.len() == other.len() && self.keys().all(|k| other.records.contains_key(k))
    }
}

/// Fixed-dimension utterance embeddings.
///
/// The first inserted vector fixes the dimension; all vectors are finite
/// with nonzero norm, as required for cosine scoring.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dim: usize,
    vectors: IndexMap<String, Vec<f64>>,
}

impl Default for EmbeddingTable {
    fn default() -> Self {
        Self::new()
    }
}

impl EmbeddingTable {
    pub fn new() -> Self {
        EmbeddingTable {
            dim: 0,
            vectors: IndexMap::new(),
        }
    }

    pub fn insert(&mut self, utt: impl Into<String>, vector: Vec<f64>) -> Result<()> {
        let utt = utt.into();
        if self.vectors.is_empty() {
            self.dim = vector.len();
        } else if vector.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: vector.len(),
            });
        }
        if vector.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteComponent { utt });
        }
        if vector.iter().all(|v| *v == 0.0) {
            return Err(Error::ZeroNormVector { utt });
        }
        if self.vectors.contains_key(&utt) {
            return Err(Error::DuplicateUtterance { utt });
        }
        self.vectors.insert(utt, vector);
        Ok(())
    }

    pub fn get(&self, utt: &str) -> Option<&[f64]> {
        self.vectors.get(utt).map(Vec::as_slice)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.vectors.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }
}

/// Speaker enrollment utterance lists.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EnrollmentMap {
    entries: IndexMap<String, Vec<String>>,
}

impl EnrollmentMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, enroll: impl Into<String>, utts: Vec<String>) -> Result<()> {
        let enroll = enroll.into();
        if utts.is_empty() {
            return Err(Error::EmptyEnrollmentList { enroll });
        }
        if self.entries.contains_key(&enroll) {
            return Err(Error::DuplicateEnrollment { enroll });
        }
        self.entries.insert(enroll, utts);
        Ok(())
    }

    pub fn get(&self, enroll: &str) -> Option<&[String]> {
        self.entries.get(enroll).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }
}

/// One dataset entry of a multi-dataset manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub name: String,
    pub trials: PathBuf,
    pub scores: PathBuf,
}

/// Ordered list of datasets to evaluate, with unique names.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetManifest {
    pub entries: Vec<ManifestEntry>,
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Lines that carry data: skips `#` comments, keeps 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (u64, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i as u64 + 1, l))
        .filter(|(_, l)| !l.starts_with('#'))
}

fn malformed(path: &Path, line: u64, reason: impl Into<String>) -> Error {
    Error::MalformedLine {
        path: path.to_path_buf(),
        line,
        reason: reason.into(),
    }
}

/// Parse a trial list from a string (pure function of the bytes).
pub fn parse_trial_list_str(text: &str, path: &Path) -> Result<Vec<Trial>> {
    let mut trials = Vec::new();
    let mut seen: IndexMap<TrialKey, ()> = IndexMap::new();
    for (lineno, line) in data_lines(text) {
        let mut fields = line.split(' ');
        let (enroll, test, label) = match (fields.next(), fields.next(), fields.next()) {
            (Some(e), Some(t), Some(l)) if fields.next().is_none() => (e, t, l),
            _ => return Err(malformed(path, lineno, "expected 3 space-separated fields")),
        };
        if enroll.is_empty() || test.is_empty() {
            return Err(malformed(path, lineno, "empty identifier field"));
        }
        let label = match label {
            "target" => TrialLabel::Target,
            "nontarget" => TrialLabel::Nontarget,
            "spoof" => TrialLabel::Spoof,
            other => {
                return Err(Error::UnknownLabel {
                    path: path.to_path_buf(),
                    line: lineno,
                    token: other.to_string(),
                })
            }
        };
        let key = TrialKey::new(enroll, test);
        if seen.insert(key.clone(), ()).is_some() {
            return Err(Error::DuplicateTrial {
                enroll: key.enroll,
                test: key.test,
            });
        }
        trials.push(Trial { key, label });
    }
    Ok(trials)
}

pub fn parse_trial_list(path: impl AsRef<Path>) -> Result<Vec<Trial>> {
    let path = path.as_ref();
    parse_trial_list_str(&read_file(path)?, path)
}

/// Parse a score file from a string (pure function of the bytes).
pub fn parse_score_file_str(text: &str, system_name: &str, path: &Path) -> Result<ScoreSet> {
    let mut set = ScoreSet::with_capacity(system_name, text.len() / 24);
    for (lineno, line) in data_lines(text) {
        let mut fields = line.split(' ');
        let (enroll, test, score) = match (fields.next(), fields.next(), fields.next()) {
            (Some(e), Some(t), Some(s)) if fields.next().is_none() => (e, t, s),
            _ => return Err(malformed(path, lineno, "expected 3 space-separated fields")),
        };
        if enroll.is_empty() || test.is_empty() {
            return Err(malformed(path, lineno, "empty identifier field"));
        }
        let score: f64 = score
            .parse()
            .map_err(|_| malformed(path, lineno, format!("invalid float literal '{score}'")))?;
        set.insert(TrialKey::new(enroll, test), score)?;
    }
    Ok(set)
}

pub fn parse_score_file(path: impl AsRef<Path>, system_name: &str) -> Result<ScoreSet> {
    let path = path.as_ref();
    parse_score_file_str(&read_file(path)?, system_name, path)
}

/// Parse an embedding table from a string; the first data line fixes the
/// dimension.
pub fn parse_embeddings_str(text: &str, path: &Path) -> Result<EmbeddingTable> {
    let mut table = EmbeddingTable::new();
    for (lineno, line) in data_lines(text) {
        let mut fields = line.split(' ');
        let utt = fields
            .next()
            .filter(|u| !u.is_empty())
            .ok_or_else(|| malformed(path, lineno, "missing utterance id"))?;
        let mut vector = Vec::new();
        for field in fields {
            let v: f64 = field.parse().map_err(|_| {
                malformed(path, lineno, format!("invalid float literal '{field}'"))
            })?;
            if !v.is_finite() {
                return Err(malformed(path, lineno, "non-finite embedding component"));
            }
            vector.push(v);
        }
        if vector.is_empty() {
            return Err(malformed(path, lineno, "embedding has no components"));
        }
        table.insert(utt, vector)?;
    }
    Ok(table)
}

pub fn parse_embeddings(path: impl AsRef<Path>) -> Result<EmbeddingTable> {
    let path = path.as_ref();
    parse_embeddings_str(&read_file(path)?, path)
}

/// Parse an enrollment map from a string.
pub fn parse_enrollment_map_str(text: &str, path: &Path) -> Result<EnrollmentMap> {
    let mut map = EnrollmentMap::new();
    for (lineno, line) in data_lines(text) {
        let mut fields = line.split(' ');
        let enroll = fields
            .next()
            .filter(|e| !e.is_empty())
            .ok_or_else(|| malformed(path, lineno, "missing enrollment id"))?;
        let utts: Vec<String> = fields.map(str::to_string).collect();
        if utts.is_empty() || utts.iter().any(String::is_empty) {
            return Err(malformed(
                path,
                lineno,
                "expected at least one utterance id",
            ));
        }
        map.insert(enroll, utts)?;
    }
    Ok(map)
}

pub fn parse_enrollment_map(path: impl AsRef<Path>) -> Result<EnrollmentMap> {
    let path = path.as_ref();
    parse_enrollment_map_str(&read_file(path)?, path)
}

/// Parse a multi-dataset manifest (JSON array of {name, trials, scores}).
pub fn parse_manifest_str(text: &str) -> Result<DatasetManifest> {
    let entries: Vec<ManifestEntry> =
        serde_json::from_str(text).map_err(|e| Error::MalformedManifest {
            reason: e.to_string(),
        })?;
    let mut seen = std::collections::HashSet::new();
    for entry in &entries {
        if !seen.insert(entry.name.clone()) {
            return Err(Error::DuplicateDatasetName {
                name: entry.name.clone(),
            });
        }
    }
    Ok(DatasetManifest { entries })
}

pub fn parse_manifest(path: impl AsRef<Path>) -> Result<DatasetManifest> {
    let path = path.as_ref();
    parse_manifest_str(&read_file(path)?)
}

// ---------------------------------------------------------------------------
// Joining
// ---------------------------------------------------------------------------

/// Align a score set with a trial list, yielding one labeled score per
/// trial in trial-list order.
///
/// A trial without a score is always an error. A score without a trial is
/// an error in strict mode; in lenient mode it is dropped and counted.
pub fn join_scores(trials: &[Trial], scores: &ScoreSet, strict: bool) -> Result<JoinedScores> {
    let mut records = Vec::with_capacity(trials.len());
    for trial in trials {
        let score = scores.get(&trial.key).ok_or_else(|| Error::MissingScore {
            enroll: trial.key.enroll.clone(),
            test: trial.key.test.clone(),
        })?;
        records.push(LabeledScore {
            key: trial.key.clone(),
            score,
            label: trial.label,
        });
    }
    let mut dropped_unmatched = 0;
    if scores.len() != trials.len() {
        // Trials are unique and all matched, so any surplus keys on the
        // score side are unmatched.
        if strict {
            let trial_keys: std::collections::HashSet<&TrialKey> =
                trials.iter().map(|t| &t.key).collect();
            let unmatched = scores
                .keys()
                .find(|k| !trial_keys.contains(k))
                .expect("score count exceeds trial count");
            return Err(Error::UnmatchedScore {
                enroll: unmatched.enroll.clone(),
                test: unmatched.test.clone(),
            });
        }
        dropped_unmatched = scores.len() - trials.len();
    }
    Ok(JoinedScores {
        records,
        dropped_unmatched,
    })
}

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

/// Format a score set in the score file format. Scores use shortest
/// round-trip decimal formatting, so re-parsing is bit-exact.
pub fn format_score_set(set: &ScoreSet) -> String {
    let mut out = String::with_capacity(set.len() * 24);
    for (key, score) in set.iter() {
        out.push_str(&key.enroll);
        out.push(' ');
        out.push_str(&key.test);
        out.push(' ');
        out.push_str(&format_float(score));
        out.push('\n');
    }
    out
}

pub fn format_trials(trials: &[Trial]) -> String {
    let mut out = String::with_capacity(trials.len() * 24);
    for trial in trials {
        out.push_str(&trial.key.enroll);
        out.push(' ');
        out.push_str(&trial.key.test);
        out.push(' ');
        out.push_str(trial.label.as_str());
        out.push('\n');
    }
    out
}

pub fn format_embeddings(table: &EmbeddingTable) -> String {
    let mut out = String::new();
    for (utt, vector) in table.iter() {
        out.push_str(utt);
        for v in vector {
            out.push(' ');
            out.push_str(&format_float(*v));
        }
        out.push('\n');
    }
    out
}

pub fn format_enrollment_map(map: &EnrollmentMap) -> String {
    let mut out = String::new();
    for (enroll, utts) in map.iter() {
        out.push_str(enroll);
        for utt in utts {
            out.push(' ');
            out.push_str(utt);
        }
        out.push('\n');
    }
    out
}

/// Shortest round-trip decimal representation of a finite float.
pub fn format_float(v: f64) -> String {
    debug_assert!(v.is_finite());
    format!("{v}")
}

pub fn write_score_set(set: &ScoreSet, path: impl AsRef<Path>) -> Result<()> {
    fsutil::write_atomic(path.as_ref(), format_score_set(set).as_bytes())
}

pub fn write_trials(trials: &[Trial], path: impl AsRef<Path>) -> Result<()> {
    fsutil::write_atomic(path.as_ref(), format_trials(trials).as_bytes())
}

pub fn write_embeddings(table: &EmbeddingTable, path: impl AsRef<Path>) -> Result<()> {
    fsutil::write_atomic(path.as_ref(), format_embeddings(table).as_bytes())
}

pub fn write_enrollment_map(map: &EnrollmentMap, path: impl AsRef<Path>) -> Result<()> {
    fsutil::write_atomic(path.as_ref(), format_enrollment_map(map).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> PathBuf {
        PathBuf::from("<test>")
    }

    #[test]
    fn parses_trial_lines() {
        let trials = parse_trial_list_str(
            "# comment\nspk01 utt_0001 target\nspk01 utt_0002 nontarget\nspk02 utt_0003 spoof\n",
            &p(),
        )
        .unwrap();
        assert_eq!(trials.len(), 3);
        assert_eq!(trials[0].key, TrialKey::new("spk01", "utt_0001"));
        assert_eq!(trials[0].label, TrialLabel::Target);
        assert_eq!(trials[2].label, TrialLabel::Spoof);
    }

    #[test]
    fn rejects_unknown_label() {
        let err = parse_trial_list_str("spk01 utt_0002 banana\n", &p()).unwrap_err();
        assert_eq!(err.code(), "E_UNKNOWN_LABEL");
    }

    #[test]
    fn rejects_duplicate_trial() {
        let err = parse_trial_list_str("spk01 utt_0001 target\nspk01 utt_0001 target\n", &p())
            .unwrap_err();
        assert_eq!(err.code(), "E_DUPLICATE_TRIAL");
    }

    #[test]
    fn rejects_wrong_field_count() {
        for text in ["spk01 utt_0001\n", "spk01 utt_0001 target extra\n", "\n"] {
            let err = parse_trial_list_str(text, &p()).unwrap_err();
            assert_eq!(err.code(), "E_MALFORMED_LINE", "input {text:?}");
        }
    }

    #[test]
    fn double_space_is_malformed() {
        let err = parse_trial_list_str("spk01  utt_0001 target\n", &p()).unwrap_err();
        assert_eq!(err.code(), "E_MALFORMED_LINE");
    }

    #[test]
    fn parses_scores() {
        let set = parse_score_file_str("spk01 utt_0001 1.25\nspk01 utt_0002 -3e-2\n", "sys", &p())
            .unwrap();
        assert_eq!(set.get(&TrialKey::new("spk01", "utt_0001")), Some(1.25));
        assert_eq!(set.get(&TrialKey::new("spk01", "utt_0002")), Some(-0.03));
        assert_eq!(set.system_name, "sys");
    }

    #[test]
    fn rejects_non_finite_score() {
        for bad in ["NaN", "inf", "-inf"] {
            let err = parse_score_file_str(&format!("spk01 utt_0001 {bad}\n"), "sys", &p())
                .unwrap_err();
            assert_eq!(err.code(), "E_NON_FINITE_SCORE", "input {bad}");
        }
    }

    #[test]
    fn rejects_missing_score_field() {
        let err = parse_score_file_str("spk01 utt_0001\n", "sys", &p()).unwrap_err();
        assert_eq!(err.code(), "E_MALFORMED_LINE");
    }

    #[test]
    fn parses_embeddings_and_fixes_dim() {
        let table = parse_embeddings_str("u1 1 0\nu2 0 1\n", &p()).unwrap();
        assert_eq!(table.dim(), 2);
        assert_eq!(table.len(), 2);
        assert_eq!(table.get("u1"), Some([1.0, 0.0].as_slice()));
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let err = parse_embeddings_str("u1 1 0\nu2 1 2 3\n", &p()).unwrap_err();
        assert_eq!(err.code(), "E_DIMENSION_MISMATCH");
    }

    #[test]
    fn rejects_zero_norm_vector() {
        let err = parse_embeddings_str("u3 0 0\n", &p()).unwrap_err();
        assert_eq!(err.code(), "E_ZERO_NORM_VECTOR");
    }

    #[test]
    fn rejects_duplicate_utterance() {
        let err = parse_embeddings_str("u1 1 0\nu1 0 1\n", &p()).unwrap_err();
        assert_eq!(err.code(), "E_DUPLICATE_UTTERANCE");
    }

    #[test]
    fn parses_enrollment_map() {
        let map = parse_enrollment_map_str("spk1 u1 u2\nspk2 u3\n", &p()).unwrap();
        assert_eq!(map.get("spk1"), Some(["u1".to_string(), "u2".to_string()].as_slice()));
        assert_eq!(map.get("spk2").unwrap().len(), 1);
    }

    #[test]
    fn enrollment_map_needs_utterances() {
        let err = parse_enrollment_map_str("spk1\n", &p()).unwrap_err();
        assert_eq!(err.code(), "E_MALFORMED_LINE");
        let err = parse_enrollment_map_str("spk1 u1\nspk1 u2\n", &p()).unwrap_err();
        assert_eq!(err.code(), "E_DUPLICATE_ENROLLMENT");
    }

    #[test]
    fn parses_manifest() {
        let m = parse_manifest_str(
            r#"[{"name":"SpoofCeleb","trials":"a.txt","scores":"b.txt"},
                {"name":"ASVspoofF5","trials":"c.txt","scores":"d.txt"}]"#,
        )
        .unwrap();
        assert_eq!(m.entries.len(), 2);
        assert_eq!(m.entries[0].name, "SpoofCeleb");
    }

    #[test]
    fn rejects_duplicate_dataset_name() {
        let err = parse_manifest_str(
            r#"[{"name":"SpoofCeleb","trials":"a","scores":"b"},
                {"name":"SpoofCeleb","trials":"c","scores":"d"}]"#,
        )
        .unwrap_err();
        assert_eq!(err.code(), "E_DUPLICATE_DATASET_NAME");
    }

    #[test]
    fn rejects_manifest_missing_key() {
        let err = parse_manifest_str(r#"[{"name":"SpoofCeleb","trials":"a"}]"#).unwrap_err();
        assert_eq!(err.code(), "E_MALFORMED_MANIFEST");
    }

    #[test]
    fn join_matches_trials_in_order() {
        let trials = parse_trial_list_str("a t1 target\nb t2 spoof\n", &p()).unwrap();
        let scores = parse_score_file_str("b t2 -1\na t1 0.5\n", "s", &p()).unwrap();
        let joined = join_scores(&trials, &scores, true).unwrap();
        assert_eq!(joined.records.len(), 2);
        assert_eq!(joined.records[0].score, 0.5);
        assert_eq!(joined.records[1].label, TrialLabel::Spoof);
        assert_eq!(joined.dropped_unmatched, 0);
    }

    #[test]
    fn join_missing_score_errors() {
        let trials = parse_trial_list_str("a t1 target\n", &p()).unwrap();
        let scores = ScoreSet::new("s");
        let err = join_scores(&trials, &scores, true).unwrap_err();
        assert_eq!(err.code(), "E_MISSING_SCORE");
        // Missing scores are an error in lenient mode too.
        let err = join_scores(&trials, &scores, false).unwrap_err();
        assert_eq!(err.code(), "E_MISSING_SCORE");
    }

    #[test]
    fn join_unmatched_score_strict_vs_lenient() {
        let trials: Vec<Trial> = Vec::new();
        let scores = parse_score_file_str("a t1 0.5\n", "s", &p()).unwrap();
        let err = join_scores(&trials, &scores, true).unwrap_err();
        assert_eq!(err.code(), "E_UNMATCHED_SCORE");
        let joined = join_scores(&trials, &scores, false).unwrap();
        assert!(joined.records.is_empty());
        assert_eq!(joined.dropped_unmatched, 1);
    }

    #[test]
    fn score_round_trip_is_bit_exact() {
        let mut set = ScoreSet::new("s");
        set.insert(TrialKey::new("a", "t1"), 0.1 + 0.2).unwrap();
        set.insert(TrialKey::new("a", "t2"), -0.0).unwrap();
        set.insert(TrialKey::new("b", "t1"), 1.0).unwrap();
        set.insert(TrialKey::new("b", "t2"), f64::MIN_POSITIVE).unwrap();
        let text = format_score_set(&set);
        let reparsed = parse_score_file_str(&text, "s", &p()).unwrap();
        assert_eq!(set, reparsed);
        for (k, v) in set.iter() {
            assert_eq!(v.to_bits(), reparsed.get(k).unwrap().to_bits());
        }
    }

    #[test]
    fn identical_bytes_identical_structures() {
        let text = "a t1 0.25\nb t2 -7\n";
        let one = parse_score_file_str(text, "s", &p()).unwrap();
        let two = parse_score_file_str(text, "s", &p()).unwrap();
        assert_eq!(one, two);
    }
}
