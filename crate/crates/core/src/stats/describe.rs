use super::StatsError;
use crate::ingest::{Corpus, Reaction};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Summary of one feature. `std_dev` is the sample (n - 1) standard deviation;
/// with a single observation it is reported as 0 and `std_dev_defined` is false.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DescriptiveStats<T> {
    pub n: usize,
    pub mean: T,
    pub std_dev: T,
    pub std_dev_defined: bool,
    pub min: T,
    pub q25: T,
    pub median: T,
    pub q75: T,
    pub max: T,
}

/// Linear-interpolation quantile (position `(n - 1) * q`) of sorted data.
pub fn quantile_sorted<T: Scalar>(sorted: &[T], q: T) -> T {
    debug_assert!(!sorted.is_empty());
    let pos = q * T::from_len(sorted.len() - 1);
    let lo = pos.floor();
    let lo_idx = lo.to_usize().unwrap_or(0).min(sorted.len() - 1);
    let hi_idx = (lo_idx + 1).min(sorted.len() - 1);
    let frac = pos - lo;
    sorted[lo_idx] + (sorted[hi_idx] - sorted[lo_idx]) * frac
}

pub fn describe<T: Scalar>(values: &[T]) -> Result<DescriptiveStats<T>, StatsError> {
    if values.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let n = values.len();
    let n_t = T::from_len(n);
    let mean = values.iter().fold(T::zero(), |a, &v| a + v) / n_t;
    let (std_dev, std_dev_defined) = if n > 1 {
        let ss = values.iter().fold(T::zero(), |a, &v| a + (v - mean) * (v - mean));
        ((ss / T::from_len(n - 1)).sqrt(), true)
    } else {
        (T::zero(), false)
    };
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("NaN in sample"));
    Ok(DescriptiveStats {
        n,
        mean,
        std_dev,
        std_dev_defined,
        min: sorted[0],
        q25: quantile_sorted(&sorted, T::lit(0.25)),
        median: quantile_sorted(&sorted, T::lit(0.5)),
        q75: quantile_sorted(&sorted, T::lit(0.75)),
        max: sorted[n - 1],
    })
}

/// Feature names in the order produced by [`describe_corpus`].
pub const FEATURE_NAMES: [&str; 7] = ["like", "love", "wow", "laughter", "sad", "anger", "reshares"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureStats<T> {
    pub feature: &'static str,
    pub stats: DescriptiveStats<T>,
}

/// Summaries of the six reactions and reshares across articles.
pub fn describe_corpus<T: Scalar>(corpus: &Corpus) -> Result<Vec<FeatureStats<T>>, StatsError> {
    if corpus.is_empty() {
        return Err(StatsError::EmptyCorpus);
    }
    let mut out = Vec::with_capacity(7);
    for (i, feature) in FEATURE_NAMES.iter().enumerate() {
        let values: Vec<T> = corpus
            .articles
            .iter()
            .map(|a| {
                let c = &a.reactions;
                T::from_count(if i < 6 { c.get(Reaction::ALL[i]) } else { c.reshares })
            })
            .collect();
        out.push(FeatureStats {
            feature,
            stats: describe(&values)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_computed_summary() {
        // Sorted: 1 2 3 4 10. Mean 4, squared deviations 9 4 1 0 36 -> 50/4.
        let s = describe(&[4.0f64, 1.0, 10.0, 3.0, 2.0]).unwrap();
        assert_eq!(s.mean, 4.0);
        assert!((s.std_dev - 12.5f64.sqrt()).abs() < 1e-15);
        assert_eq!((s.min, s.q25, s.median, s.q75, s.max), (1.0, 2.0, 3.0, 4.0, 10.0));

        // Positions 0.75, 1.5, 2.25 over [1, 2, 3, 4].
        let s = describe(&[1.0f64, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!((s.q25, s.median, s.q75), (1.75, 2.5, 3.25));
    }

    #[test]
    fn degenerate_samples() {
        let s = describe(&[7.0f64]).unwrap();
        assert_eq!((s.mean, s.median, s.min, s.max, s.std_dev), (7.0, 7.0, 7.0, 7.0, 0.0));
        assert!(!s.std_dev_defined);
        let s = describe(&[3.0f64; 6]).unwrap();
        assert_eq!(s.std_dev, 0.0);
        assert!(s.std_dev_defined);
        assert_eq!(describe::<f64>(&[]), Err(StatsError::EmptySample));
    }
}
