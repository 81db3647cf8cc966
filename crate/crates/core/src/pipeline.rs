//! End-to-end run: ingest, filter, weight, score, model topics, test, and
//! write every report into one output directory.

use crate::emotion::{score_article, EmotionScores, Metric, MetricError};
use crate::ingest::{aggregate_articles, filter_special, load_shares, IngestError, InputFormat, Reaction};
use crate::report::{self, *};
use crate::stats::{
    describe_corpus, presence_tables, spearman_matrix, topic_metric_test, DecisionMode, DecisionRule, StatsError,
    FEATURE_NAMES,
};
use crate::topics::{
    assign_topics, preprocess, select_model, summarize_topics, LdaParams, PreprocessConfig, StopWords,
    SuffixLemmatizer, TopicError,
};
use crate::weighting::{build_idf, rf_idf, WeightingError};
use serde::Serialize;
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub input_path: PathBuf,
    pub input_format: InputFormat,
    pub min_df: usize,
    pub max_df_ratio: f64,
    pub t_grid: Vec<usize>,
    pub seed: u64,
    pub iterations: usize,
    /// `None` means `50 / t` for each grid point.
    pub alpha_lda: Option<f64>,
    pub beta_lda: f64,
    pub ks_alpha: f64,
    pub ks_rule: DecisionMode,
    pub output_dir: PathBuf,
    pub histogram_bins: usize,
    /// Replaces the bundled English stopword list.
    pub stopwords: Option<PathBuf>,
    pub phrase_threshold: f64,
    pub phrase_min_count: usize,
    pub top_n: usize,
    pub ks_metrics: Vec<Metric>,
    pub hexbin_gridsize: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            input_path: PathBuf::new(),
            input_format: InputFormat::Jsonl,
            min_df: 15,
            max_df_ratio: 0.5,
            t_grid: vec![15, 20, 25, 30, 35, 40, 45],
            seed: 42,
            iterations: 1000,
            alpha_lda: None,
            beta_lda: 0.01,
            ks_alpha: 0.05,
            ks_rule: DecisionMode::PaperTwoTailed,
            output_dir: PathBuf::from("out"),
            histogram_bins: 40,
            stopwords: None,
            phrase_threshold: 0.5,
            phrase_min_count: 5,
            top_n: 10,
            ks_metrics: vec![Metric::Diversity, Metric::Polarity],
            hexbin_gridsize: 30,
        }
    }
}

fn invalid(msg: impl Into<String>) -> PipelineError {
    PipelineError::Config(msg.into())
}

fn parse<V: FromStr>(key: &str, value: &str) -> Result<V, PipelineError> {
    value
        .trim()
        .parse()
        .map_err(|_| invalid(format!("`{key}`: cannot parse `{value}`")))
}

/// Parses `15,20,30`, `15..50` (step 5) or `15..50:1`; ranges are inclusive.
pub fn parse_grid(text: &str) -> Result<Vec<usize>, PipelineError> {
    let mut grid = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, rest)) = part.split_once("..") {
            let (hi, step) = match rest.split_once(':') {
                Some((hi, step)) => (hi, parse::<usize>("t_grid", step)?),
                None => (rest, 5),
            };
            let (lo, hi) = (parse::<usize>("t_grid", lo)?, parse::<usize>("t_grid", hi)?);
            if step == 0 || lo > hi {
                return Err(invalid(format!("`t_grid`: bad range `{part}`")));
            }
            grid.extend((lo..=hi).step_by(step));
        } else {
            grid.push(parse("t_grid", part)?);
        }
    }
    Ok(grid)
}

impl PipelineConfig {
    /// Sets one option from its config-file key.
    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<(), PipelineError> {
        let value = value.trim();
        match key.trim() {
            "input_path" | "input" => self.input_path = PathBuf::from(value),
            "input_format" | "format" => self.input_format = parse(key, value)?,
            "min_df" => self.min_df = parse(key, value)?,
            "max_df_ratio" => self.max_df_ratio = parse(key, value)?,
            "t_grid" | "topics_grid" => self.t_grid = parse_grid(value)?,
            "seed" => self.seed = parse(key, value)?,
            "iterations" => self.iterations = parse(key, value)?,
            "alpha_lda" => {
                self.alpha_lda = match value {
                    "" | "auto" => None,
                    v => Some(parse(key, v)?),
                }
            }
            "beta_lda" => self.beta_lda = parse(key, value)?,
            "ks_alpha" => self.ks_alpha = parse(key, value)?,
            "ks_rule" => self.ks_rule = parse(key, value)?,
            "output_dir" | "out" => self.output_dir = PathBuf::from(value),
            "histogram_bins" | "bins" => self.histogram_bins = parse(key, value)?,
            "stopwords" => self.stopwords = Some(PathBuf::from(value)),
            "phrase_threshold" => self.phrase_threshold = parse(key, value)?,
            "phrase_min_count" => self.phrase_min_count = parse(key, value)?,
            "top_n" => self.top_n = parse(key, value)?,
            "ks_metrics" => {
                self.ks_metrics = value
                    .split(',')
                    .map(str::trim)
                    .filter(|m| !m.is_empty())
                    .map(|m| parse(key, m))
                    .collect::<Result<_, _>>()?
            }
            "hexbin_gridsize" => self.hexbin_gridsize = parse(key, value)?,
            other => return Err(invalid(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file on top of `self`. `#` starts a comment.
    pub fn apply_file_text(&mut self, text: &str) -> Result<(), PipelineError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| invalid(format!("config line {}: expected key = value", n + 1)))?;
            self.apply_kv(key, value)?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read config {}: {e}", path.display())))?;
        let mut config = Self::default();
        config.apply_file_text(&text)?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.input_path.as_os_str().is_empty() {
            return Err(invalid("no input file given"));
        }
        if !self.input_path.is_file() {
            return Err(invalid(format!("input file not found: {}", self.input_path.display())));
        }
        if self.t_grid.is_empty() {
            return Err(invalid("`t_grid` is empty"));
        }
        if let Some(&t) = self.t_grid.iter().find(|&&t| t < 2) {
            return Err(invalid(format!("`t_grid` entries must be at least 2, got {t}")));
        }
        if self.min_df == 0 {
            return Err(invalid("`min_df` must be at least 1"));
        }
        if !(self.max_df_ratio > 0.0 && self.max_df_ratio <= 1.0) {
            return Err(invalid("`max_df_ratio` must lie in (0, 1]"));
        }
        if self.iterations == 0 {
            return Err(invalid("`iterations` must be positive"));
        }
        if self.alpha_lda.is_some_and(|a| !(a > 0.0 && a.is_finite()))
            || !(self.beta_lda > 0.0 && self.beta_lda.is_finite())
        {
            return Err(invalid("LDA priors must be positive"));
        }
        if !(self.ks_alpha > 0.0 && self.ks_alpha < 1.0) {
            return Err(invalid("`ks_alpha` must lie in (0, 1)"));
        }
        if self.histogram_bins == 0 || self.hexbin_gridsize == 0 {
            return Err(invalid("`histogram_bins` and `hexbin_gridsize` must be positive"));
        }
        if !(-1.0..=1.0).contains(&self.phrase_threshold) {
            return Err(invalid("`phrase_threshold` must lie in [-1, 1]"));
        }
        if self.top_n == 0 {
            return Err(invalid("`top_n` must be positive"));
        }
        if let Some(path) = &self.stopwords {
            if !path.is_file() {
                return Err(invalid(format!("stopword file not found: {}", path.display())));
            }
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("config: {0}")]
    Config(String),
    #[error("ingest: {0}")]
    Ingest(#[from] IngestError),
    #[error("filter: no article has any special reaction")]
    NothingToAnalyse,
    #[error("weighting: {0}")]
    Weighting(#[from] WeightingError),
    #[error("metrics: article `{0}`: {1}")]
    Metrics(String, MetricError),
    #[error("stats: {0}")]
    Stats(#[from] StatsError),
    #[error("topics: {0}")]
    Topics(#[from] TopicError),
    #[error("report: {0}")]
    Report(#[from] report::ReportError),
    #[error("output: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl PipelineError {
    /// 1 for configuration problems, 2 for failures during the run.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) => 1,
            _ => 2,
        }
    }
}

/// Deterministic digest of a run, also written as `summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub source_digest: String,
    pub shares: usize,
    pub articles: usize,
    pub articles_without_special: usize,
    pub analysed_articles: usize,
    pub absent_reactions: Vec<String>,
    pub topic_documents: usize,
    pub documents_dropped_in_preprocessing: usize,
    pub vocabulary_size: usize,
    pub phrases_learned: usize,
    pub selected_topics: usize,
    pub selected_coherence: f64,
    pub ks_rule: DecisionMode,
    pub ks_alpha: f64,
    pub ks_tests: usize,
    pub ks_rejections: usize,
    pub regression_slope: Option<f64>,
    pub warnings: Vec<String>,
    pub files: Vec<String>,
}

pub const OUTPUT_FILES: [&str; 16] = [
    "metrics.csv",
    "rfidf.csv",
    "idf.csv",
    "descriptive_stats.csv",
    "presence_pairs.csv",
    "spearman.csv",
    "topic_coherence.csv",
    "topics.csv",
    "topic_assignments.csv",
    "model.json",
    "ks_report.csv",
    "plot_hexbin.csv",
    "plot_regression.csv",
    "plot_polarity_hist.csv",
    "plot_reaction_totals.csv",
    "summary.json",
];

fn write_text(path: &Path, text: &str) -> Result<(), PipelineError> {
    std::fs::write(path, text).map_err(|source| PipelineError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn run_pipeline(config: &PipelineConfig) -> Result<RunSummary, PipelineError> {
    config.validate()?;
    let out = &config.output_dir;
    std::fs::create_dir_all(out).map_err(|source| PipelineError::Io {
        path: out.clone(),
        source,
    })?;
    let mut warnings = Vec::new();

    let batch = load_shares(&config.input_path, config.input_format)?;
    warnings.extend(batch.warnings.iter().cloned());
    let all = aggregate_articles(&batch);
    let (corpus, filter) = filter_special(&all);
    log::info!(
        "{} shares, {} articles, {} analysed",
        batch.shares.len(),
        all.len(),
        corpus.len()
    );
    if corpus.is_empty() {
        return Err(PipelineError::NothingToAnalyse);
    }

    let idf = build_idf::<f64>(&corpus)?;
    let absent: Vec<String> = idf.absent().iter().map(|r| r.name().to_owned()).collect();
    for r in &absent {
        warnings.push(format!(
            "no article received `{r}`; its weighted values are the 0 sentinel"
        ));
    }
    let mut rfidf_rows = Vec::with_capacity(corpus.len());
    let mut metric_rows = Vec::with_capacity(corpus.len());
    let mut scores: Vec<EmotionScores<f64>> = Vec::with_capacity(corpus.len());
    for a in &corpus.articles {
        let w = rf_idf(&a.article_id, &a.reactions, &idf)?;
        let present: Vec<&str> = Reaction::ALL
            .iter()
            .filter(|r| w.present[r.index()])
            .map(|r| r.name())
            .collect();
        rfidf_rows.push(RfIdfRow {
            article_id: a.article_id.clone(),
            like: w.rfidf[0],
            love: w.rfidf[1],
            wow: w.rfidf[2],
            laughter: w.rfidf[3],
            sad: w.rfidf[4],
            anger: w.rfidf[5],
            present: present.join(";"),
        });
        let s = score_article::<f64>(&a.reactions).map_err(|e| PipelineError::Metrics(a.article_id.clone(), e))?;
        metric_rows.push(MetricsRow::new(&a.article_id, &s, a.reactions.reshares));
        scores.push(s);
    }
    let idf_rows: Vec<IdfRow> = Reaction::ALL
        .iter()
        .map(|&r| IdfRow {
            reaction: r.name().to_owned(),
            presence_proportion: idf.presence[r.index()],
            idf: idf.idf(r),
        })
        .collect();

    let descriptive: Vec<DescriptiveRow> = describe_corpus::<f64>(&corpus)?
        .into_iter()
        .map(|f| DescriptiveRow {
            feature: f.feature.to_owned(),
            n: f.stats.n,
            mean: f.stats.mean,
            std_dev: f.stats.std_dev,
            std_dev_defined: f.stats.std_dev_defined,
            min: f.stats.min,
            q25: f.stats.q25,
            median: f.stats.median,
            q75: f.stats.q75,
            max: f.stats.max,
        })
        .collect();
    let pairs: Vec<PairRow> = presence_tables::<f64>(&corpus)?
        .pairs()
        .map(|(a, b, p)| PairRow {
            reaction_a: a.name().to_owned(),
            reaction_b: b.name().to_owned(),
            proportion: p,
        })
        .collect();
    let columns: Vec<Vec<f64>> = (0..FEATURE_NAMES.len())
        .map(|i| {
            corpus
                .articles
                .iter()
                .map(|a| if i < 6 { a.reactions.get(Reaction::ALL[i]) } else { a.reactions.reshares } as f64)
                .collect()
        })
        .collect();
    let spearman_rows: Vec<SpearmanRow> = if corpus.len() >= 2 {
        let matrix = spearman_matrix(&columns)?;
        let mut rows = Vec::new();
        for (i, a) in FEATURE_NAMES.iter().enumerate() {
            for (j, b) in FEATURE_NAMES.iter().enumerate() {
                rows.push(SpearmanRow {
                    feature_a: (*a).to_owned(),
                    feature_b: (*b).to_owned(),
                    rho: matrix[i][j],
                });
            }
        }
        rows
    } else {
        warnings.push("fewer than two articles; Spearman matrix skipped".to_owned());
        Vec::new()
    };

    let stopwords = match &config.stopwords {
        Some(path) => StopWords::from_file(path).map_err(|source| PipelineError::Io {
            path: path.clone(),
            source,
        })?,
        None => StopWords::english(),
    };
    let pre = preprocess(
        &corpus,
        &stopwords,
        &SuffixLemmatizer,
        &PreprocessConfig {
            min_df: config.min_df,
            max_df_ratio: config.max_df_ratio,
            phrase_threshold: config.phrase_threshold,
            phrase_min_count: config.phrase_min_count,
            ..PreprocessConfig::default()
        },
    )?;
    if pre.dropped_docs > 0 {
        warnings.push(format!(
            "{} article(s) have no in-vocabulary tokens and are excluded from topic modelling and KS tests",
            pre.dropped_docs
        ));
    }
    let mut params = LdaParams::<f64>::new(2, config.seed)
        .with_iterations(config.iterations)
        .with_beta(config.beta_lda);
    params.alpha = config.alpha_lda;
    let selection = select_model(&pre.docs, &pre.vocab, &config.t_grid, &params, config.top_n)?;
    let model = selection.best;
    log::info!("selected t={} (coherence {:.4})", model.topics, model.coherence);
    let coherence_rows: Vec<CoherenceRow> = selection
        .grid
        .iter()
        .map(|g| CoherenceRow {
            topics: g.topics,
            seed: g.seed,
            coherence: g.coherence,
            selected: g.topics == model.topics,
        })
        .collect();
    let assignments = assign_topics(&model);
    let summaries = summarize_topics(&model, &assignments, config.top_n);
    let topic_rows: Vec<TopicRow> = summaries
        .iter()
        .map(|s| TopicRow {
            topic_no: s.topic_no,
            article_count: s.article_count,
            top_10_words: s.top_words.join(";"),
        })
        .collect();
    let assignment_rows: Vec<AssignmentRow> = assignments
        .iter()
        .map(|a| AssignmentRow {
            article_id: a.article_id.clone(),
            topic: a.topic,
            prob: a.prob,
        })
        .collect();

    let score_map: HashMap<String, EmotionScores<f64>> = corpus
        .articles
        .iter()
        .zip(&scores)
        .map(|(a, s)| (a.article_id.clone(), *s))
        .collect();
    let rule = DecisionRule {
        alpha: config.ks_alpha,
        mode: config.ks_rule,
    };
    let mut ks_rows = Vec::new();
    for s in &summaries {
        for &metric in &config.ks_metrics {
            match topic_metric_test(&assignments, &score_map, s.topic_no, metric, rule) {
                Ok(r) => ks_rows.push(KsRow {
                    topic_no: s.topic_no,
                    keywords: s.top_words.join(";"),
                    metric: metric.name().to_owned(),
                    ks_statistic: r.statistic,
                    p_value: r.p_value,
                    reject_null: r.reject_null,
                    n_topic: r.n1,
                    n_rest: r.n2,
                    rule: r.mode.to_string(),
                    upper_tail: r.upper_tail,
                    small_sample: r.small_sample,
                }),
                Err(StatsError::EmptyPartition(t)) => warnings.push(format!(
                    "topic {t} / {}: empty partition, KS test skipped",
                    metric.name()
                )),
                Err(e) => return Err(e.into()),
            }
        }
    }

    let reshares: Vec<u64> = corpus.articles.iter().map(|a| a.reactions.reshares).collect();
    let plots = emit_plot_data(
        &scores,
        &reshares,
        &corpus,
        config.histogram_bins,
        config.hexbin_gridsize,
    );

    write_csv(&out.join("metrics.csv"), &metric_rows)?;
    write_csv(&out.join("rfidf.csv"), &rfidf_rows)?;
    write_csv(&out.join("idf.csv"), &idf_rows)?;
    write_csv(&out.join("descriptive_stats.csv"), &descriptive)?;
    write_csv(&out.join("presence_pairs.csv"), &pairs)?;
    write_csv(&out.join("spearman.csv"), &spearman_rows)?;
    write_csv(&out.join("topic_coherence.csv"), &coherence_rows)?;
    write_csv(&out.join("topics.csv"), &topic_rows)?;
    write_csv(&out.join("topic_assignments.csv"), &assignment_rows)?;
    let model_json = model.to_json().map_err(|e| TopicError::ModelFormat(e.to_string()))?;
    write_text(&out.join("model.json"), &model_json)?;
    write_csv(&out.join("ks_report.csv"), &ks_rows)?;
    write_csv(&out.join("plot_hexbin.csv"), &plots.hexbin)?;
    write_csv(
        &out.join("plot_regression.csv"),
        std::slice::from_ref(&plots.regression),
    )?;
    write_csv(&out.join("plot_polarity_hist.csv"), &plots.polarity_histogram)?;
    write_csv(&out.join("plot_reaction_totals.csv"), &plots.reaction_totals)?;

    let summary = RunSummary {
        source_digest: batch.provenance.source_digest.clone(),
        shares: batch.shares.len(),
        articles: all.len(),
        articles_without_special: filter.dropped,
        analysed_articles: filter.retained,
        absent_reactions: absent,
        topic_documents: pre.docs.len(),
        documents_dropped_in_preprocessing: pre.dropped_docs,
        vocabulary_size: pre.vocab.len(),
        phrases_learned: pre.phrases_learned,
        selected_topics: model.topics,
        selected_coherence: model.coherence,
        ks_rule: config.ks_rule,
        ks_alpha: config.ks_alpha,
        ks_tests: ks_rows.len(),
        ks_rejections: ks_rows.iter().filter(|r| r.reject_null).count(),
        regression_slope: plots.regression.slope,
        warnings,
        files: OUTPUT_FILES.iter().map(|f| (*f).to_owned()).collect(),
    };
    let json = serde_json::to_string_pretty(&summary).map_err(|e| invalid(e.to_string()))?;
    write_text(&out.join("summary.json"), &(json + "\n"))?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_syntax() {
        assert_eq!(parse_grid("15..30").unwrap(), vec![15, 20, 25, 30]);
        assert_eq!(parse_grid("2..4:1, 10").unwrap(), vec![2, 3, 4, 10]);
        assert_eq!(parse_grid("").unwrap(), Vec::<usize>::new());
        assert!(parse_grid("5..2").is_err());
        assert!(parse_grid("x").is_err());
    }

    #[test]
    fn config_file_and_validation() {
        let mut c = PipelineConfig::default();
        c.apply_file_text("# run\nseed = 7\nks_rule = conventional\nt_grid = 3,4 # small\nalpha_lda = 0.5\n")
            .unwrap();
        assert_eq!(
            (c.seed, c.ks_rule, c.t_grid.clone(), c.alpha_lda),
            (7, DecisionMode::Conventional, vec![3, 4], Some(0.5))
        );
        assert!(c.apply_kv("nonsense", "1").is_err());
        assert!(c.apply_file_text("no equals sign").is_err());

        let file = tempfile::NamedTempFile::new().unwrap();
        c.input_path = file.path().to_owned();
        c.validate().unwrap();
        c.t_grid.clear();
        let err = c.validate().unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("t_grid"));
    }
}
