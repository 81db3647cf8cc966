//! Descriptive statistics, reaction presence tables, rank correlation and
//! two-sample Kolmogorov-Smirnov testing.

mod describe;
mod ks;
mod presence;
mod spearman;

pub use describe::{describe, describe_corpus, quantile_sorted, DescriptiveStats, FeatureStats, FEATURE_NAMES};
pub use ks::{
    kolmogorov_q, ks_statistic, ks_two_sample, topic_metric_test, DecisionMode, DecisionRule, KsResult,
    SMALL_SAMPLE_THRESHOLD,
};
pub use presence::{presence_tables, PresenceTables};
pub use spearman::{fractional_ranks, pearson, spearman, spearman_matrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StatsError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("sample is empty")]
    EmptySample,
    #[error("samples differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("at least {required} observations required, found {found}")]
    TooFewObservations { required: usize, found: usize },
    #[error("a sample has zero variance; correlation undefined")]
    ZeroVariance,
    #[error("partition for topic {0} is empty")]
    EmptyPartition(usize),
    #[error("no emotion scores for article `{0}`")]
    MissingScores(String),
}
