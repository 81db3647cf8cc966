//! Per-article emotion metrics computed from raw reaction counts.
//!
//! * valence: `-1` when `sad + anger > love`, else `+1`
//! * intensity: special reactions over all click-based reactions
//! * diversity: `1 - JSD(special distribution, uniform over 5)`, base-2 logs
//! * divint index: diversity × intensity
//! * polarity: valence × intensity

use crate::ingest::ReactionCounts;
use crate::scalar::{xlog2_ratio, Scalar};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("article has no special (non-like) reactions")]
    NoSpecialReactions,
    #[error("article has no click-based reactions")]
    ZeroTotal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Valence {
    Negative,
    Positive,
}

impl Valence {
    pub fn sign(self) -> i8 {
        match self {
            Valence::Negative => -1,
            Valence::Positive => 1,
        }
    }

    pub fn as_scalar<T: Scalar>(self) -> T {
        match self {
            Valence::Negative => -T::one(),
            Valence::Positive => T::one(),
        }
    }
}

pub fn valence(counts: &ReactionCounts) -> Result<Valence, MetricError> {
    if counts.special_total() == 0 {
        return Err(MetricError::NoSpecialReactions);
    }
    // Ties fall through to positive.
    Ok(if counts.sad + counts.anger > counts.love {
        Valence::Negative
    } else {
        Valence::Positive
    })
}

pub fn total_reactions(counts: &ReactionCounts) -> u64 {
    counts.total_reactions()
}

pub fn intensity<T: Scalar>(counts: &ReactionCounts) -> Result<T, MetricError> {
    let total = counts.total_reactions();
    if total == 0 {
        return Err(MetricError::ZeroTotal);
    }
    Ok(T::from_count(counts.special_total()) / T::from_count(total))
}

/// Distribution over (love, wow, laughter, sad, anger).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialDistribution<T> {
    pub probs: [T; 5],
}

impl<T: Scalar> SpecialDistribution<T> {
    pub fn uniform() -> Self {
        Self {
            probs: [T::lit(0.2); 5],
        }
    }

    /// Normalises arbitrary non-negative weights. Returns `None` if they sum to zero.
    pub fn from_weights(weights: [T; 5]) -> Option<Self> {
        let total = weights.iter().fold(T::zero(), |acc, &w| acc + w);
        (total > T::zero()).then(|| Self {
            probs: weights.map(|w| w / total),
        })
    }
}

pub fn special_distribution<T: Scalar>(counts: &ReactionCounts) -> Result<SpecialDistribution<T>, MetricError> {
    let total = counts.special_total();
    if total == 0 {
        return Err(MetricError::NoSpecialReactions);
    }
    let total = T::from_count(total);
    Ok(SpecialDistribution {
        probs: counts.special().map(|c| T::from_count(c) / total),
    })
}

/// Jensen-Shannon distance between two discrete distributions of equal length,
/// using base-2 logarithms so the result lies in `[0, 1]`.
pub fn js_distance_slices<T: Scalar>(p: &[T], q: &[T]) -> T {
    assert_eq!(p.len(), q.len(), "distributions must share a support");
    let half = T::lit(0.5);
    let mut divergence = T::zero();
    for (&pi, &qi) in p.iter().zip(q) {
        let mi = half * (pi + qi);
        divergence += half * (xlog2_ratio(pi, mi) + xlog2_ratio(qi, mi));
    }
    // Rounding can push the divergence a hair outside [0, 1].
    divergence.max(T::zero()).min(T::one()).sqrt()
}

pub fn js_distance<T: Scalar>(p: &SpecialDistribution<T>, q: &SpecialDistribution<T>) -> T {
    js_distance_slices(&p.probs, &q.probs)
}

pub fn diversity<T: Scalar>(counts: &ReactionCounts) -> Result<T, MetricError> {
    let dist = special_distribution::<T>(counts)?;
    Ok(T::one() - js_distance(&dist, &SpecialDistribution::uniform()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmotionScores<T> {
    pub valence: Valence,
    pub intensity: T,
    pub diversity: T,
    pub divint_index: T,
    pub polarity: T,
    pub total_reacts: u64,
}

pub fn divint_index<T: Scalar>(scores: &EmotionScores<T>) -> T {
    scores.diversity * scores.intensity
}

pub fn polarity<T: Scalar>(scores: &EmotionScores<T>) -> T {
    scores.valence.as_scalar::<T>() * scores.intensity
}

/// Computes every metric for one article. Requires at least one special reaction.
pub fn score_article<T: Scalar>(counts: &ReactionCounts) -> Result<EmotionScores<T>, MetricError> {
    let mut scores = EmotionScores {
        valence: valence(counts)?,
        intensity: intensity(counts)?,
        diversity: diversity(counts)?,
        divint_index: T::zero(),
        polarity: T::zero(),
        total_reacts: total_reactions(counts),
    };
    scores.divint_index = divint_index(&scores);
    scores.polarity = polarity(&scores);
    Ok(scores)
}

/// Which metric a distribution test or report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Diversity,
    Polarity,
    Intensity,
    Divint,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::Diversity, Metric::Polarity, Metric::Intensity, Metric::Divint];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Diversity => "diversity",
            Metric::Polarity => "polarity",
            Metric::Intensity => "intensity",
            Metric::Divint => "divint",
        }
    }

    pub fn value<T: Scalar>(self, scores: &EmotionScores<T>) -> T {
        match self {
            Metric::Diversity => scores.diversity,
            Metric::Polarity => scores.polarity,
            Metric::Intensity => scores.intensity,
            Metric::Divint => scores.divint_index,
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "diversity" => Ok(Metric::Diversity),
            "polarity" => Ok(Metric::Polarity),
            "intensity" => Ok(Metric::Intensity),
            "divint" | "divint_index" => Ok(Metric::Divint),
            other => Err(format!("unknown metric `{other}`")),
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
