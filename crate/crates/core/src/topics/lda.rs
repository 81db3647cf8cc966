//! Latent Dirichlet allocation fitted by collapsed Gibbs sampling.

use super::text::{TokenizedDoc, Vocabulary};
use super::TopicError;
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Version tag written into model dumps.
pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LdaParams<T> {
    pub topics: usize,
    pub seed: u64,
    pub iterations: usize,
    /// Document-topic prior; `None` means `50 / topics`.
    pub alpha: Option<T>,
    /// Topic-word prior.
    pub beta: T,
}

impl<T: Scalar> LdaParams<T> {
    pub fn new(topics: usize, seed: u64) -> Self {
        Self {
            topics,
            seed,
            iterations: 1000,
            alpha: None,
            beta: T::lit(0.01),
        }
    }

    pub fn with_iterations(mut self, iterations: usize) -> Self {
        self.iterations = iterations;
        self
    }

    pub fn with_alpha(mut self, alpha: T) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_beta(mut self, beta: T) -> Self {
        self.beta = beta;
        self
    }

    pub fn resolved_alpha(&self) -> T {
        self.alpha
            .unwrap_or_else(|| T::lit(50.0) / T::from_len(self.topics.max(1)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicModel<T> {
    pub format_version: u32,
    pub topics: usize,
    pub seed: u64,
    pub alpha: T,
    pub beta: T,
    pub iterations: usize,
    /// Mean UMass coherence of the top words; filled in by model selection.
    pub coherence: T,
    pub vocab: Vec<String>,
    /// Article ids in training order; rows of `theta` follow this order.
    pub doc_ids: Vec<String>,
    /// `topics × |vocab|` word distributions.
    pub phi: Vec<Vec<T>>,
    /// `|docs| × topics` topic distributions.
    pub theta: Vec<Vec<T>>,
}

impl<T: Scalar> TopicModel<T> {
    /// Indices of the `n` most probable words of `topic` (0-based), most probable first.
    pub fn top_word_ids(&self, topic: usize, n: usize) -> Vec<usize> {
        let row = &self.phi[topic];
        let mut ids: Vec<usize> = (0..row.len()).collect();
        ids.sort_by(|&a, &b| row[b].partial_cmp(&row[a]).expect("NaN in phi").then(a.cmp(&b)));
        ids.truncate(n);
        ids
    }

    pub fn top_words(&self, topic: usize, n: usize) -> Vec<&str> {
        self.top_word_ids(topic, n)
            .into_iter()
            .map(|i| self.vocab[i].as_str())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string(self)
    }

    pub fn from_json(text: &str) -> Result<Self, TopicError> {
        let model: Self = serde_json::from_str(text).map_err(|e| TopicError::ModelFormat(e.to_string()))?;
        if model.format_version != MODEL_FORMAT_VERSION {
            return Err(TopicError::ModelFormat(format!(
                "unsupported model format version {} (expected {MODEL_FORMAT_VERSION})",
                model.format_version
            )));
        }
        Ok(model)
    }
}

/// Fits an LDA model. The sampler is single-threaded and seeded with
/// ChaCha8, so identical inputs give bit-identical output.
pub fn train_lda<T: Scalar>(
    docs: &[TokenizedDoc],
    vocab: &Vocabulary,
    params: &LdaParams<T>,
) -> Result<TopicModel<T>, TopicError> {
    let k = params.topics;
    if k < 2 {
        return Err(TopicError::InvalidTopicCount(k));
    }
    if docs.is_empty() {
        return Err(TopicError::EmptyCorpusAfterPreprocessing);
    }
    let alpha = params.resolved_alpha();
    let beta = params.beta;
    if alpha.is_nan() || beta.is_nan() || alpha <= T::zero() || beta <= T::zero() {
        return Err(TopicError::InvalidHyperparameter);
    }
    if params.iterations == 0 {
        return Err(TopicError::InvalidIterations);
    }
    let v = vocab.len();

    let words: Vec<Vec<usize>> = docs
        .iter()
        .map(|d| {
            let ids: Vec<usize> = d.tokens.iter().filter_map(|t| vocab.id(t)).collect();
            if ids.is_empty() {
                Err(TopicError::EmptyDocument(d.article_id.clone()))
            } else {
                Ok(ids)
            }
        })
        .collect::<Result<_, _>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut doc_topic = vec![vec![0u32; k]; docs.len()];
    let mut topic_word = vec![vec![0u32; v]; k];
    let mut topic_total = vec![0u32; k];
    let mut assignment: Vec<Vec<usize>> = Vec::with_capacity(docs.len());

    for (d, ids) in words.iter().enumerate() {
        let mut z = Vec::with_capacity(ids.len());
        for &w in ids {
            let topic = rng.random_range(0..k);
            doc_topic[d][topic] += 1;
            topic_word[topic][w] += 1;
            topic_total[topic] += 1;
            z.push(topic);
        }
        assignment.push(z);
    }

    let v_beta = T::from_len(v) * beta;
    let mut weights = vec![T::zero(); k];
    for _ in 0..params.iterations {
        for (d, ids) in words.iter().enumerate() {
            for (i, &w) in ids.iter().enumerate() {
                let old = assignment[d][i];
                doc_topic[d][old] -= 1;
                topic_word[old][w] -= 1;
                topic_total[old] -= 1;

                let mut cumulative = T::zero();
                for (t, slot) in weights.iter_mut().enumerate() {
                    let p = (T::from_u32(doc_topic[d][t]).unwrap() + alpha)
                        * (T::from_u32(topic_word[t][w]).unwrap() + beta)
                        / (T::from_u32(topic_total[t]).unwrap() + v_beta);
                    cumulative += p;
                    *slot = cumulative;
                }
                let target = T::lit(rng.random::<f64>()) * cumulative;
                let new = weights.iter().position(|&c| target < c).unwrap_or(k - 1);

                assignment[d][i] = new;
                doc_topic[d][new] += 1;
                topic_word[new][w] += 1;
                topic_total[new] += 1;
            }
        }
    }

    let phi = (0..k)
        .map(|t| {
            let denom = T::from_u32(topic_total[t]).unwrap() + v_beta;
            topic_word[t]
                .iter()
                .map(|&c| (T::from_u32(c).unwrap() + beta) / denom)
                .collect()
        })
        .collect();
    let k_alpha = T::from_len(k) * alpha;
    let theta = words
        .iter()
        .zip(&doc_topic)
        .map(|(ids, counts)| {
            let denom = T::from_len(ids.len()) + k_alpha;
            counts
                .iter()
                .map(|&c| (T::from_u32(c).unwrap() + alpha) / denom)
                .collect()
        })
        .collect();

    Ok(TopicModel {
        format_version: MODEL_FORMAT_VERSION,
        topics: k,
        seed: params.seed,
        alpha,
        beta,
        iterations: params.iterations,
        coherence: T::zero(),
        vocab: vocab.terms.clone(),
        doc_ids: docs.iter().map(|d| d.article_id.clone()).collect(),
        phi,
        theta,
    })
}
