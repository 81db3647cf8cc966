//! Reaction-frequency / inverse-document-frequency weighting of reaction counts.
//!
//! The reaction frequency of `r` for an article is the natural log of the
//! share of the article's click-based reactions that were `r`. The IDF of `r`
//! is `ln(|D| / |D_r|)` over the analysis corpus. Their product is the
//! weighted value. A reaction an article never received has no defined log
//! share; it is stored as a `0` sentinel with `present = false`.

use crate::ingest::{Corpus, Reaction, ReactionCounts};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightingError {
    #[error("article has no click-based reactions")]
    ZeroTotal,
    #[error("article has no `{0}` reactions")]
    ZeroCount(Reaction),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("presence proportion for `{0}` must lie in (0, 1]")]
    InvalidProportion(Reaction),
}

/// `ln(counts[r] / total_reactions)`.
pub fn reaction_frequency<T: Scalar>(counts: &ReactionCounts, reaction: Reaction) -> Result<T, WeightingError> {
    let total = counts.total_reactions();
    if total == 0 {
        return Err(WeightingError::ZeroTotal);
    }
    let count = counts.get(reaction);
    if count == 0 {
        return Err(WeightingError::ZeroCount(reaction));
    }
    Ok((T::from_count(count) / T::from_count(total)).ln())
}

/// Per-reaction IDF weights and the presence statistics they came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdfTable<T> {
    /// Number of articles the table was built over (`|D|`).
    pub n_articles: usize,
    /// Articles with at least one of each reaction (`|D_r|`), in [`Reaction::ALL`] order.
    pub doc_counts: [usize; 6],
    /// `|D_r| / |D|`.
    pub presence: [T; 6],
    /// `ln(|D| / |D_r|)`, or `None` when no article received the reaction.
    pub idf: [Option<T>; 6],
}

impl<T: Scalar> IdfTable<T> {
    /// Builds a table directly from presence proportions.
    pub fn from_presence(proportions: [T; 6]) -> Result<Self, WeightingError> {
        let mut idf = [None; 6];
        for (r, (&p, slot)) in Reaction::ALL.iter().zip(proportions.iter().zip(idf.iter_mut())) {
            if !(p > T::zero() && p <= T::one()) {
                return Err(WeightingError::InvalidProportion(*r));
            }
            *slot = Some(p.recip().ln());
        }
        Ok(Self {
            n_articles: 0,
            doc_counts: [0; 6],
            presence: proportions,
            idf,
        })
    }

    pub fn idf(&self, reaction: Reaction) -> Option<T> {
        self.idf[reaction.index()]
    }

    /// Reactions no article received; their weighted values are always the sentinel.
    pub fn absent(&self) -> Vec<Reaction> {
        Reaction::ALL
            .into_iter()
            .filter(|r| self.idf[r.index()].is_none())
            .collect()
    }
}

/// Computes IDF weights over `corpus`. Reactions absent from every article are
/// flagged via [`IdfTable::absent`] rather than failing the build.
pub fn build_idf<T: Scalar>(corpus: &Corpus) -> Result<IdfTable<T>, WeightingError> {
    if corpus.is_empty() {
        return Err(WeightingError::EmptyCorpus);
    }
    let n = corpus.len();
    let mut doc_counts = [0usize; 6];
    for article in &corpus.articles {
        for (slot, c) in doc_counts.iter_mut().zip(article.reactions.clicks()) {
            if c > 0 {
                *slot += 1;
            }
        }
    }
    let n_t = T::from_len(n);
    let presence = doc_counts.map(|d| T::from_len(d) / n_t);
    let idf = doc_counts.map(|d| (d > 0).then(|| (n_t / T::from_len(d)).ln()));
    for r in Reaction::ALL {
        if idf[r.index()].is_none() {
            log::warn!("no article received `{r}`; its weighted values are the zero sentinel");
        }
    }
    Ok(IdfTable {
        n_articles: n,
        doc_counts,
        presence,
        idf,
    })
}

/// Weighted reaction vector for one article.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedReactions<T> {
    pub article_id: String,
    /// Weighted values in [`Reaction::ALL`] order; `0` where `present` is false.
    pub rfidf: [T; 6],
    /// Whether the article received at least one of each reaction.
    pub present: [bool; 6],
}

impl<T: Scalar> WeightedReactions<T> {
    pub fn get(&self, reaction: Reaction) -> T {
        self.rfidf[reaction.index()]
    }
}

/// Weights one article's counts by `idf`.
pub fn rf_idf<T: Scalar>(
    article_id: &str,
    counts: &ReactionCounts,
    idf: &IdfTable<T>,
) -> Result<WeightedReactions<T>, WeightingError> {
    if counts.total_reactions() == 0 {
        return Err(WeightingError::ZeroTotal);
    }
    let mut rfidf = [T::zero(); 6];
    let mut present = [false; 6];
    for r in Reaction::ALL {
        if counts.get(r) == 0 {
            continue;
        }
        present[r.index()] = true;
        if let Some(weight) = idf.idf(r) {
            rfidf[r.index()] = reaction_frequency::<T>(counts, r)? * weight;
        }
    }
    Ok(WeightedReactions {
        article_id: article_id.to_owned(),
        rfidf,
        present,
    })
}
