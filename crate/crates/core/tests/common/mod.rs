#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use reaction_metrics::TokenizedDoc;
use std::path::PathBuf;

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/fixture_shares.jsonl")
}

pub struct PlantedCorpus {
    pub docs: Vec<TokenizedDoc>,
    /// Planted topic with the largest mixture weight, per document.
    pub dominant: Vec<usize>,
    /// Planted topic-word distributions over the full vocabulary.
    pub topic_words: Vec<Vec<String>>,
}

/// Documents drawn from `topics` planted topics with disjoint vocabularies of
/// `words_per_topic` words each. Within a topic, word `k` has weight `1/(k+1)`.
/// Document mixtures are symmetric Dirichlet(`doc_alpha`).
pub fn planted_corpus(
    seed: u64,
    n_docs: usize,
    topics: usize,
    words_per_topic: usize,
    doc_alpha: f64,
    doc_len: usize,
) -> PlantedCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gamma = Gamma::new(doc_alpha, 1.0).unwrap();
    let topic_words: Vec<Vec<String>> = (0..topics)
        .map(|t| (0..words_per_topic).map(|w| format!("t{t}w{w:02}")).collect())
        .collect();
    let weights: Vec<f64> = (0..words_per_topic).map(|k| 1.0 / (k + 1) as f64).collect();
    let weight_total: f64 = weights.iter().sum();

    let mut docs = Vec::with_capacity(n_docs);
    let mut dominant = Vec::with_capacity(n_docs);
    for d in 0..n_docs {
        let mut mix: Vec<f64> = (0..topics).map(|_| gamma.sample(&mut rng)).collect();
        let total: f64 = mix.iter().sum();
        if total <= 0.0 {
            mix = vec![1.0; topics];
        }
        let total: f64 = mix.iter().sum();
        mix.iter_mut().for_each(|m| *m /= total);
        let top = (0..topics).fold(0, |b, t| if mix[t] > mix[b] { t } else { b });
        let mut tokens = Vec::with_capacity(doc_len);
        for _ in 0..doc_len {
            let t = pick(&mix, 1.0, &mut rng);
            let w = pick(&weights, weight_total, &mut rng);
            tokens.push(topic_words[t][w].clone());
        }
        docs.push(TokenizedDoc {
            article_id: format!("d{d}"),
            tokens,
        });
        dominant.push(top);
    }
    PlantedCorpus {
        docs,
        dominant,
        topic_words,
    }
}

fn pick(weights: &[f64], total: f64, rng: &mut ChaCha8Rng) -> usize {
    let target = rng.random::<f64>() * total;
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc += w;
        if target < acc {
            return i;
        }
    }
    weights.len() - 1
}

/// Fraction of documents whose inferred topic matches the planted one after
/// greedily pairing inferred and planted topics by overlap.
pub fn aligned_purity(inferred: &[usize], planted: &[usize], n_inferred: usize, n_planted: usize) -> f64 {
    let mut table = vec![vec![0usize; n_planted]; n_inferred];
    for (&i, &p) in inferred.iter().zip(planted) {
        table[i][p] += 1;
    }
    let mut used_i = vec![false; n_inferred];
    let mut used_p = vec![false; n_planted];
    let mut matched = 0;
    for _ in 0..n_inferred.min(n_planted) {
        let mut best = (0, 0, 0);
        let mut found = false;
        for i in (0..n_inferred).filter(|&i| !used_i[i]) {
            for p in (0..n_planted).filter(|&p| !used_p[p]) {
                if !found || table[i][p] > best.2 {
                    best = (i, p, table[i][p]);
                    found = true;
                }
            }
        }
        used_i[best.0] = true;
        used_p[best.1] = true;
        matched += best.2;
    }
    matched as f64 / inferred.len() as f64
}
