//! Document-level UMass topic coherence.

use super::lda::TopicModel;
use super::text::TokenizedDoc;
use crate::scalar::Scalar;
use std::collections::HashMap;

/// For each vocabulary id, the sorted indices of documents containing it.
pub(crate) fn postings(vocab: &[String], docs: &[TokenizedDoc]) -> Vec<Vec<usize>> {
    let index: HashMap<&str, usize> = vocab.iter().enumerate().map(|(i, t)| (t.as_str(), i)).collect();
    let mut lists = vec![Vec::new(); vocab.len()];
    for (d, doc) in docs.iter().enumerate() {
        for tok in &doc.tokens {
            if let Some(&w) = index.get(tok.as_str()) {
                if lists[w].last() != Some(&d) {
                    lists[w].push(d);
                }
            }
        }
    }
    lists
}

fn intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// UMass coherence of one ranked word list: the mean over pairs `i > j` of
/// `ln((D(w_i, w_j) + 1) / D(w_j))`, with `w_j` the higher-ranked word.
/// Lists with fewer than two words score 0.
pub fn umass_for_words<T: Scalar>(ranked: &[usize], postings: &[Vec<usize>]) -> T {
    let mut total = T::zero();
    let mut pairs = 0usize;
    for i in 1..ranked.len() {
        for j in 0..i {
            let wi = &postings[ranked[i]];
            let wj = &postings[ranked[j]];
            let joint = intersection_len(wi, wj);
            let base = wj.len().max(1);
            total += (T::from_len(joint + 1) / T::from_len(base)).ln();
            pairs += 1;
        }
    }
    if pairs == 0 {
        T::zero()
    } else {
        total / T::from_len(pairs)
    }
}

/// Mean UMass coherence over all topics of `model`, using the `top_n` most
/// probable words of each topic and document co-occurrence in `docs`.
pub fn coherence_score<T: Scalar>(model: &TopicModel<T>, docs: &[TokenizedDoc], top_n: usize) -> T {
    let lists = postings(&model.vocab, docs);
    let sum = (0..model.topics).fold(T::zero(), |acc, t| {
        acc + umass_for_words::<T>(&model.top_word_ids(t, top_n), &lists)
    });
    sum / T::from_len(model.topics.max(1))
}
