//! Topic modelling over articles' combined share texts: preprocessing, LDA
//! training over a grid of topic counts, coherence-based model selection and
//! dominant-topic assignment.

mod coherence;
mod lda;
mod text;

pub use coherence::{coherence_score, umass_for_words};
pub use lda::{train_lda, LdaParams, TopicModel, MODEL_FORMAT_VERSION};
pub use text::{
    clean_text, preprocess, tokenize, IdentityLemmatizer, Lemmatizer, PhraseModel, PreprocessConfig, Preprocessed,
    StopWords, SuffixLemmatizer, TokenizedDoc, Vocabulary, PHRASE_JOINER,
};

use crate::scalar::Scalar;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopicError {
    #[error("no documents remain after preprocessing")]
    EmptyCorpusAfterPreprocessing,
    #[error("topic count must be at least 2, got {0}")]
    InvalidTopicCount(usize),
    #[error("alpha and beta must be positive")]
    InvalidHyperparameter,
    #[error("iterations must be positive")]
    InvalidIterations,
    #[error("document `{0}` has no in-vocabulary tokens")]
    EmptyDocument(String),
    #[error("topic grid is empty")]
    EmptyGrid,
    #[error("model file: {0}")]
    ModelFormat(String),
}

/// Number of top words used for coherence and topic reports.
pub const DEFAULT_TOP_N: usize = 10;

/// One grid point of a model selection run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint<T> {
    pub topics: usize,
    pub seed: u64,
    pub coherence: T,
}

#[derive(Debug, Clone)]
pub struct ModelSelection<T> {
    pub best: TopicModel<T>,
    pub grid: Vec<GridPoint<T>>,
}

/// Seed for the model with `topics` topics, so that grid points are
/// independent but reproducible from one base seed.
pub fn grid_seed(base: u64, topics: usize) -> u64 {
    base ^ (topics as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Trains one model per grid entry (in parallel) and keeps the one with the
/// highest coherence; ties go to the smaller topic count.
pub fn select_model<T: Scalar>(
    docs: &[TokenizedDoc],
    vocab: &Vocabulary,
    grid: &[usize],
    params: &LdaParams<T>,
    top_n: usize,
) -> Result<ModelSelection<T>, TopicError> {
    if grid.is_empty() {
        return Err(TopicError::EmptyGrid);
    }
    let mut grid: Vec<usize> = grid.to_vec();
    grid.sort_unstable();
    grid.dedup();

    let models: Vec<TopicModel<T>> = grid
        .par_iter()
        .map(|&t| {
            let p = LdaParams {
                topics: t,
                seed: grid_seed(params.seed, t),
                ..*params
            };
            let mut model = train_lda(docs, vocab, &p)?;
            model.coherence = coherence_score(&model, docs, top_n);
            Ok(model)
        })
        .collect::<Result<_, TopicError>>()?;

    let points = models
        .iter()
        .map(|m| GridPoint {
            topics: m.topics,
            seed: m.seed,
            coherence: m.coherence,
        })
        .collect();
    let mut best: Option<TopicModel<T>> = None;
    for m in models {
        if best.as_ref().is_none_or(|b| m.coherence > b.coherence) {
            best = Some(m);
        }
    }
    Ok(ModelSelection {
        best: best.expect("grid non-empty"),
        grid: points,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicAssignment {
    pub article_id: String,
    /// 1-based topic number.
    pub topic: usize,
    pub prob: f64,
}

/// Index (0-based) and value of the largest entry; ties go to the lowest index.
pub fn dominant_topic<T: Scalar>(row: &[T]) -> (usize, T) {
    let mut best = (0, row[0]);
    for (i, &p) in row.iter().enumerate().skip(1) {
        if p > best.1 {
            best = (i, p);
        }
    }
    best
}

pub fn assign_topics<T: Scalar>(model: &TopicModel<T>) -> Vec<TopicAssignment> {
    model
        .doc_ids
        .iter()
        .zip(&model.theta)
        .map(|(id, row)| {
            let (topic, prob) = dominant_topic(row);
            TopicAssignment {
                article_id: id.clone(),
                topic: topic + 1,
                prob: prob.as_f64(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicSummary {
    pub topic_no: usize,
    pub article_count: usize,
    pub top_words: Vec<String>,
}

/// Per-topic article counts and top words, ordered by topic number.
pub fn summarize_topics<T: Scalar>(
    model: &TopicModel<T>,
    assignments: &[TopicAssignment],
    top_n: usize,
) -> Vec<TopicSummary> {
    (0..model.topics)
        .map(|t| TopicSummary {
            topic_no: t + 1,
            article_count: assignments.iter().filter(|a| a.topic == t + 1).count(),
            top_words: model.top_words(t, top_n).into_iter().map(str::to_owned).collect(),
        })
        .collect()
}
