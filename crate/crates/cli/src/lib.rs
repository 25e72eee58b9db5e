//! `sasv`: one binary covering the whole pipeline — backend scoring,
//! fusion, cascading, evaluation, macro aggregation, synthetic generation
//! and DET export.
//!
//! Exit codes: 0 on success, 1 on domain errors (one `E_*`-coded line on
//! stderr), 2 on usage errors. Every output file is written atomically.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use sasv_core::cascade::{cascade_decide, select_cm_threshold, CascadeConfig};
use sasv_core::error::{Error, Result};
use sasv_core::fusion::{fuse, Cohort, FusionConfig};
use sasv_core::ingest::{
    self, format_float, join_scores, parse_embeddings, parse_enrollment_map, parse_manifest,
    parse_score_file, parse_trial_list, ScoreSet, Trial,
};
use sasv_core::metrics::{
    compute_adcf, compute_macro_adcf, compute_report, det_points, error_profile, AdcfParams,
};
use sasv_core::syngen::{generate_embeddings, generate_scores, GenMode, SynConfig};
use sasv_core::{fsutil, LabeledScore};

mod report;
pub use report::{emit_report, render_det, render_macro_report, render_report};

use report::{DatasetAdcf, MacroReport};

#[derive(Parser, Debug)]
#[command(
    name = "sasv",
    version,
    about = "Scoring, fusion, cascading and evaluation for spoofing-aware speaker verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Score trials by cosine similarity with enrollment averaging.
    Score(ScoreArgs),
    /// Z-normalize per-system scores and fuse them with weights.
    Fuse(FuseArgs),
    /// Gate fused ASV scores through hard CM decisions.
    Cascade(CascadeArgs),
    /// Compute EER / SASV-EER / a-DCF metrics for a labeled score file.
    Eval(EvalArgs),
    /// Aggregate per-dataset a-DCF values into a macro average.
    Macro(MacroArgs),
    /// Generate synthetic trials, scores or embeddings from a seeded config.
    Gen(GenArgs),
    /// Export a probit-domain DET curve as TSV.
    Det(DetArgs),
}

#[derive(Args, Debug)]
struct ScoreArgs {
    /// Embedding table: `<utt-id> <v1> ... <vd>` per line.
    #[arg(long)]
    embeddings: PathBuf,
    /// Enrollment map: `<enroll-id> <utt-id> [<utt-id> ...]` per line.
    #[arg(long = "enroll-map")]
    enroll_map: PathBuf,
    /// Trial list: `<enroll-id> <test-id> <label>` per line.
    #[arg(long)]
    trials: PathBuf,
    /// Output score file.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "cosine")]
    system_name: String,
}

#[derive(Args, Debug)]
struct FuseArgs {
    /// Per-system score file; repeat once per system.
    #[arg(long = "scores", required = true)]
    scores: Vec<PathBuf>,
    /// Comma-separated fusion weights, one per system (default: uniform).
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
    /// Normalization cohort: `self` or a path to a cohort score file.
    #[arg(long, default_value = "self")]
    cohort: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct CascadeArgs {
    /// CM score file.
    #[arg(long)]
    cm: PathBuf,
    /// Fused ASV score file.
    #[arg(long)]
    asv: PathBuf,
    /// CM operating threshold: a float, or `auto` to pick the EER
    /// threshold on the dev CM scores.
    #[arg(long = "cm-threshold")]
    cm_threshold: String,
    /// Dev CM score file (required with `--cm-threshold auto`).
    #[arg(long = "dev-cm")]
    dev_cm: Option<PathBuf>,
    /// Dev trial list giving bonafide/spoof labels for the dev CM scores.
    #[arg(long = "dev-trials")]
    dev_trials: Option<PathBuf>,
    /// ASV accept threshold used for the decision columns.
    #[arg(long = "asv-threshold", default_value_t = 0.0)]
    asv_threshold: f64,
    /// Decision dump: `<enroll> <test> <cm01> <asv01> <final01> <gated-score>`.
    #[arg(long)]
    out: PathBuf,
    /// Also write the gated scores as a standard score file.
    #[arg(long = "gated-out")]
    gated_out: Option<PathBuf>,
    /// Drop scores without a matching trial instead of failing.
    #[arg(long)]
    lenient: bool,
}

#[derive(Args, Debug)]
struct AdcfArgs {
    /// Comma-separated detection costs: c_miss,c_fa_nontarget,c_fa_spoof.
    #[arg(long = "adcf-costs", value_delimiter = ',', default_value = "1,10,10")]
    adcf_costs: Vec<f64>,
    /// Comma-separated priors: pi_target,pi_nontarget,pi_spoof (sum 1).
    #[arg(long = "adcf-priors", value_delimiter = ',', default_value = "0.9405,0.0095,0.05")]
    adcf_priors: Vec<f64>,
    /// Report the raw minimum cost instead of normalizing by the best
    /// trivial system.
    #[arg(long = "adcf-no-normalize")]
    adcf_no_normalize: bool,
}

impl AdcfArgs {
    fn params(&self) -> Result<AdcfParams> {
        if self.adcf_costs.len() != 3 || self.adcf_priors.len() != 3 {
            return Err(Error::InvalidParams {
                reason: "expected exactly 3 costs and 3 priors".into(),
            });
        }
        AdcfParams::new(
            (self.adcf_costs[0], self.adcf_costs[1], self.adcf_costs[2]),
            (
                self.adcf_priors[0],
                self.adcf_priors[1],
                self.adcf_priors[2],
            ),
            !self.adcf_no_normalize,
        )
    }
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    scores: PathBuf,
    #[arg(long)]
    trials: PathBuf,
    #[command(flatten)]
    adcf: AdcfArgs,
    /// Drop scores without a matching trial instead of failing.
    #[arg(long)]
    lenient: bool,
    /// JSON report path; prints to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MacroArgs {
    /// JSON manifest: array of {name, trials, scores}. Paths resolve
    /// relative to the manifest's directory.
    #[arg(long, conflicts_with = "values")]
    manifest: Option<PathBuf>,
    /// Precomputed per-dataset a-DCF values, comma separated.
    #[arg(long, value_delimiter = ',')]
    values: Option<Vec<f64>>,
    #[command(flatten)]
    adcf: AdcfArgs,
    /// Print a diagnostic comparing the computed mean against an
    /// externally reported aggregate for the same datasets.
    #[arg(long = "macro-note")]
    macro_note: Option<f64>,
    #[arg(long)]
    lenient: bool,
    /// JSON report path; prints to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Generator config (JSON form of the SynConfig fields).
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config's seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "out-dir")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct DetArgs {
    #[arg(long)]
    scores: PathBuf,
    #[arg(long)]
    trials: PathBuf,
    #[arg(long)]
    lenient: bool,
    /// TSV path; prints to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parse arguments, dispatch, and map failures to exit codes.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("{}: {}", err.code(), err);
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Score(args) => cmd_score(args),
        Command::Fuse(args) => cmd_fuse(args),
        Command::Cascade(args) => cmd_cascade(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Macro(args) => cmd_macro(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Det(args) => cmd_det(args),
    }
}

/// Fail fast: every input must exist before any work starts.
fn require_inputs<'a>(paths: impl IntoIterator<Item = &'a Path>) -> Result<()> {
    for path in paths {
        if !path.exists() {
            return Err(Error::Io {
                path: path.to_path_buf(),
                source: std::io::Error::new(std::io::ErrorKind::NotFound, "input file not found"),
            });
        }
    }
    Ok(())
}

fn emit_text(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fsutil::write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_score(args: ScoreArgs) -> Result<()> {
    require_inputs([
        args.embeddings.as_path(),
        args.enroll_map.as_path(),
        args.trials.as_path(),
    ])?;
    let embeddings = parse_embeddings(&args.embeddings)?;
    let enrollmap = parse_enrollment_map(&args.enroll_map)?;
    let trials = parse_trial_list(&args.trials)?;
    let mut scores = sasv_core::backend::score_trials(&embeddings, &enrollmap, &trials)?;
    scores.system_name = args.system_name;
    ingest::write_score_set(&scores, &args.out)
}

fn cmd_fuse(args: FuseArgs) -> Result<()> {
    let mut inputs: Vec<&Path> = args.scores.iter().map(PathBuf::as_path).collect();
    let cohort_path = match args.cohort.as_str() {
        "self" => None,
        path => Some(PathBuf::from(path)),
    };
    if let Some(path) = &cohort_path {
        inputs.push(path.as_path());
    }
    require_inputs(inputs.iter().copied())?;

    let systems: Vec<ScoreSet> = args
        .scores
        .iter()
        .enumerate()
        .map(|(i, path)| parse_score_file(path, &format!("system{}", i + 1)))
        .collect::<Result<_>>()?;
    let config = FusionConfig {
        weights: args
            .weights
            .unwrap_or_else(|| vec![1.0; systems.len()]),
        cohort: match cohort_path {
            None => Cohort::SelfSet,
            Some(path) => Cohort::External(parse_score_file(&path, "cohort")?),
        },
    };
    let fused = fuse(&systems, &config)?;
    ingest::write_score_set(&fused, &args.out)
}

fn cmd_cascade(args: CascadeArgs) -> Result<()> {
    let mut inputs = vec![args.cm.as_path(), args.asv.as_path()];
    let auto = args.cm_threshold == "auto";
    if auto {
        match (&args.dev_cm, &args.dev_trials) {
            (Some(dev_cm), Some(dev_trials)) => {
                inputs.push(dev_cm.as_path());
                inputs.push(dev_trials.as_path());
            }
            _ => {
                return Err(Error::InvalidConfig {
                    reason: "--cm-threshold auto requires --dev-cm and --dev-trials".into(),
                })
            }
        }
    }
    require_inputs(inputs.iter().copied())?;

    let cm_threshold = if auto {
        let dev_trials = parse_trial_list(args.dev_trials.as_ref().unwrap())?;
        let dev_cm = parse_score_file(args.dev_cm.as_ref().unwrap(), "dev-cm")?;
        let joined = join_scores(&dev_trials, &dev_cm, !args.lenient)?;
        select_cm_threshold(&joined.records)?
    } else {
        args.cm_threshold
            .parse::<f64>()
            .map_err(|_| Error::InvalidConfig {
                reason: format!(
                    "--cm-threshold must be a float or 'auto', got '{}'",
                    args.cm_threshold
                ),
            })?
    };

    let cm = parse_score_file(&args.cm, "cm")?;
    let asv = parse_score_file(&args.asv, "asv")?;
    let config = CascadeConfig {
        cm_threshold,
        asv_threshold: args.asv_threshold,
    };
    let decisions = cascade_decide(&cm, &asv, &config)?;

    let mut dump = String::with_capacity(decisions.len() * 32);
    for d in &decisions {
        dump.push_str(&format!(
            "{} {} {} {} {} {}\n",
            d.key.enroll,
            d.key.test,
            u8::from(d.cm_accept),
            u8::from(d.asv_accept),
            u8::from(d.final_accept),
            format_float(d.gated_score),
        ));
    }
    fsutil::write_atomic(&args.out, dump.as_bytes())?;

    if let Some(gated_out) = &args.gated_out {
        let mut gated = ScoreSet::with_capacity("gated", decisions.len());
        for d in &decisions {
            gated.insert(d.key.clone(), d.gated_score)?;
        }
        ingest::write_score_set(&gated, gated_out)?;
    }
    Ok(())
}

fn load_joined(
    scores: &Path,
    trials: &Path,
    lenient: bool,
) -> Result<(Vec<LabeledScore>, usize)> {
    let trials = parse_trial_list(trials)?;
    let scores = parse_score_file(scores, "scores")?;
    let joined = join_scores(&trials, &scores, !lenient)?;
    Ok((joined.records, joined.dropped_unmatched))
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    require_inputs([args.scores.as_path(), args.trials.as_path()])?;
    let params = args.adcf.params()?;
    let (records, dropped) = load_joined(&args.scores, &args.trials, args.lenient)?;
    let report = compute_report(&records, &params, dropped)?;
    match args.out.as_deref() {
        Some(path) => emit_report(&report, path),
        None => emit_text(&render_report(&report), None),
    }
}

fn cmd_macro(args: MacroArgs) -> Result<()> {
    let params = args.adcf.params()?;
    let datasets: Vec<DatasetAdcf> = match (&args.manifest, &args.values) {
        (Some(manifest_path), None) => {
            require_inputs([manifest_path.as_path()])?;
            let manifest = parse_manifest(manifest_path)?;
            let base = manifest_path.parent().unwrap_or(Path::new("."));
            let resolved: Vec<(String, PathBuf, PathBuf)> = manifest
                .entries
                .iter()
                .map(|e| (e.name.clone(), base.join(&e.trials), base.join(&e.scores)))
                .collect();
            require_inputs(
                resolved
                    .iter()
                    .flat_map(|(_, t, s)| [t.as_path(), s.as_path()]),
            )?;
            let mut out = Vec::with_capacity(resolved.len());
            for (name, trials, scores) in &resolved {
                let (records, _) = load_joined(scores, trials, args.lenient)?;
                let profile = error_profile(&records)?;
                let point = compute_adcf(&profile, &params)?;
                out.push(DatasetAdcf {
                    adcf: point.adcf,
                    name: name.clone(),
                });
            }
            out
        }
        (None, Some(values)) => values
            .iter()
            .enumerate()
            .map(|(i, v)| DatasetAdcf {
                adcf: *v,
                name: format!("d{}", i + 1),
            })
            .collect(),
        _ => {
            return Err(Error::InvalidConfig {
                reason: "provide exactly one of --manifest or --values".into(),
            })
        }
    };

    let named: Vec<(String, f64)> = datasets
        .iter()
        .map(|d| (d.name.clone(), d.adcf))
        .collect();
    let macro_adcf = compute_macro_adcf(&named)?;
    if let Some(reported) = args.macro_note {
        println!(
            "macro-note: computed unweighted mean over {} datasets = {}; externally reported aggregate = {}; values differ unless the reported aggregation scheme matches, which is not asserted here",
            datasets.len(),
            format_float(macro_adcf),
            format_float(reported),
        );
    }
    let report = MacroReport {
        datasets,
        macro_adcf,
    };
    emit_text(&render_macro_report(&report), args.out.as_deref())
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    require_inputs([args.config.as_path()])?;
    let text = std::fs::read_to_string(&args.config).map_err(|source| Error::Io {
        path: args.config.clone(),
        source,
    })?;
    let mut config: SynConfig =
        serde_json::from_str(&text).map_err(|e| Error::InvalidConfig {
            reason: format!("bad generator config: {e}"),
        })?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    std::fs::create_dir_all(&args.out_dir).map_err(|source| Error::Io {
        path: args.out_dir.clone(),
        source,
    })?;

    match config.mode {
        GenMode::Scores => {
            let records = generate_scores(&config)?;
            let trials: Vec<Trial> = records
                .iter()
                .map(|r| Trial {
                    key: r.key.clone(),
                    label: r.label,
                })
                .collect();
            let mut scores = ScoreSet::with_capacity("syn", records.len());
            for r in &records {
                scores.insert(r.key.clone(), r.score)?;
            }
            ingest::write_trials(&trials, args.out_dir.join("trials.txt"))?;
            ingest::write_score_set(&scores, args.out_dir.join("scores.txt"))?;
        }
        GenMode::Embeddings => {
            let (table, enrollmap, trials) = generate_embeddings(&config)?;
            ingest::write_trials(&trials, args.out_dir.join("trials.txt"))?;
            ingest::write_embeddings(&table, args.out_dir.join("embeddings.txt"))?;
            ingest::write_enrollment_map(&enrollmap, args.out_dir.join("enrollmap.txt"))?;
        }
    }
    Ok(())
}

fn cmd_det(args: DetArgs) -> Result<()> {
    require_inputs([args.scores.as_path(), args.trials.as_path()])?;
    let (records, _) = load_joined(&args.scores, &args.trials, args.lenient)?;
    let profile = error_profile(&records)?;
    let points = det_points(&profile);
    emit_text(&render_det(&points), args.out.as_deref())
}
