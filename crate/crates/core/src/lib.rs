//! Aggregate-emotion metrics over click-based social reactions to shared
//! articles.
//!
//! The crate ingests per-share reaction records, sums them per article, and
//! derives:
//!
//! * RF-IDF weighted reaction vectors ([`weighting`]),
//! * valence, intensity, diversity, divint index and polarity ([`emotion`]),
//! * an LDA topic model over the articles' share texts ([`topics`]),
//! * descriptive statistics, Spearman correlations and two-sample
//!   Kolmogorov-Smirnov tests of per-topic metric distributions ([`stats`]).
//!
//! [`pipeline`] wires these stages together and writes CSV/JSON reports.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`). The aliases below
//! fix the scalar to `f64`, which is what the pipeline uses.

pub mod emotion;
pub mod ingest;
pub mod pipeline;
pub mod report;
pub mod scalar;
pub mod stats;
pub mod topics;
pub mod weighting;

pub use emotion::{Metric, MetricError, Valence};
pub use ingest::{ArticleRecord, Corpus, InputFormat, Reaction, ReactionCounts, ShareRecord};
pub use pipeline::{run_pipeline, PipelineConfig, PipelineError, RunSummary};
pub use scalar::Scalar;
pub use stats::DecisionMode;
pub use topics::{TokenizedDoc, TopicAssignment, Vocabulary};

pub type EmotionScores = emotion::EmotionScores<f64>;
pub type EmotionScoresF32 = emotion::EmotionScores<f32>;
pub type SpecialDistribution = emotion::SpecialDistribution<f64>;
pub type IdfTable = weighting::IdfTable<f64>;
pub type IdfTableF32 = weighting::IdfTable<f32>;
pub type WeightedReactions = weighting::WeightedReactions<f64>;
pub type WeightedReactionsF32 = weighting::WeightedReactions<f32>;
pub type TopicModel = topics::TopicModel<f64>;
pub type TopicModelF32 = topics::TopicModel<f32>;
pub type LdaParams = topics::LdaParams<f64>;
pub type KsResult = stats::KsResult<f64>;
pub type KsResultF32 = stats::KsResult<f32>;
pub type DecisionRule = stats::DecisionRule<f64>;
pub type DescriptiveStats = stats::DescriptiveStats<f64>;
pub type PresenceTables = stats::PresenceTables<f64>;
