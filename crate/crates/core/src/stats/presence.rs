use super::StatsError;
use crate::ingest::{Corpus, Reaction};
use crate::scalar::Scalar;
use serde::Serialize;

/// Proportion of articles with each reaction, and with each pair of reactions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PresenceTables<T> {
    pub n_articles: usize,
    pub presence: [T; 6],
    /// Symmetric; the diagonal repeats `presence` and is not reported.
    pub pair: [[T; 6]; 6],
}

impl<T: Scalar> PresenceTables<T> {
    pub fn pair(&self, a: Reaction, b: Reaction) -> T {
        self.pair[a.index()][b.index()]
    }

    /// Off-diagonal pairs `(a, b)` with `a` before `b`.
    pub fn pairs(&self) -> impl Iterator<Item = (Reaction, Reaction, T)> + '_ {
        (0..6).flat_map(move |i| (i + 1..6).map(move |j| (Reaction::ALL[i], Reaction::ALL[j], self.pair[i][j])))
    }
}

pub fn presence_tables<T: Scalar>(corpus: &Corpus) -> Result<PresenceTables<T>, StatsError> {
    if corpus.is_empty() {
        return Err(StatsError::EmptyCorpus);
    }
    let mut joint = [[0usize; 6]; 6];
    for article in &corpus.articles {
        let has = article.reactions.clicks().map(|c| c > 0);
        for i in 0..6 {
            for j in 0..6 {
                if has[i] && has[j] {
                    joint[i][j] += 1;
                }
            }
        }
    }
    let n = T::from_len(corpus.len());
    let pair = joint.map(|row| row.map(|c| T::from_len(c) / n));
    let presence = std::array::from_fn(|i| pair[i][i]);
    Ok(PresenceTables {
        n_articles: corpus.len(),
        presence,
        pair,
    })
}
