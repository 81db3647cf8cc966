use super::StatsError;
use crate::emotion::{EmotionScores, Metric};
use crate::scalar::Scalar;
use crate::topics::TopicAssignment;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Below this per-sample size a warning is raised: the asymptotic p-value is
/// less reliable and the test loses power.
pub const SMALL_SAMPLE_THRESHOLD: usize = 30;

const SERIES_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionMode {
    /// Reject when `p < alpha / 2` or `p > 1 - alpha / 2`.
    PaperTwoTailed,
    /// Reject when `p < alpha`.
    Conventional,
}

impl std::str::FromStr for DecisionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "paper_two_tailed" | "two_tailed" | "paper" => Ok(DecisionMode::PaperTwoTailed),
            "conventional" => Ok(DecisionMode::Conventional),
            other => Err(format!(
                "unknown KS rule `{other}` (expected paper_two_tailed or conventional)"
            )),
        }
    }
}

impl std::fmt::Display for DecisionMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DecisionMode::PaperTwoTailed => "paper_two_tailed",
            DecisionMode::Conventional => "conventional",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecisionRule<T> {
    pub alpha: T,
    pub mode: DecisionMode,
}

impl<T: Scalar> DecisionRule<T> {
    pub fn two_tailed(alpha: T) -> Self {
        Self {
            alpha,
            mode: DecisionMode::PaperTwoTailed,
        }
    }

    pub fn conventional(alpha: T) -> Self {
        Self {
            alpha,
            mode: DecisionMode::Conventional,
        }
    }

    fn decide(&self, p: T) -> (bool, bool) {
        match self.mode {
            DecisionMode::Conventional => (p < self.alpha, false),
            DecisionMode::PaperTwoTailed => {
                let half = self.alpha / T::lit(2.0);
                let upper = p > T::one() - half;
                (p < half || upper, upper)
            }
        }
    }
}

impl<T: Scalar> Default for DecisionRule<T> {
    fn default() -> Self {
        Self::two_tailed(T::lit(0.05))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult<T> {
    pub statistic: T,
    pub p_value: T,
    pub n1: usize,
    pub n2: usize,
    pub reject_null: bool,
    pub alpha: T,
    pub mode: DecisionMode,
    /// Rejected only through the upper tail (`p > 1 - alpha / 2`) of the
    /// two-tailed rule; such rows conflict with the usual reading of a KS p-value.
    pub upper_tail: bool,
    /// `min(n1, n2)` below [`SMALL_SAMPLE_THRESHOLD`].
    pub small_sample: bool,
}

fn sorted<T: Scalar>(sample: &[T]) -> Vec<T> {
    let mut v = sample.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("NaN in sample"));
    v
}

/// Largest gap between the two empirical CDFs, evaluated after each distinct
/// pooled value so that ties never open a spurious gap.
pub fn ks_statistic<T: Scalar>(sample1: &[T], sample2: &[T]) -> Result<T, StatsError> {
    if sample1.is_empty() || sample2.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let (a, b) = (sorted(sample1), sorted(sample2));
    let (n1, n2) = (a.len() as i128, b.len() as i128);
    let (mut i, mut j) = (0usize, 0usize);
    let mut widest: i128 = 0;
    while i < a.len() && j < b.len() {
        let x = if a[i] <= b[j] { a[i] } else { b[j] };
        while i < a.len() && a[i] == x {
            i += 1;
        }
        while j < b.len() && b[j] == x {
            j += 1;
        }
        // |i/n1 - j/n2| scaled by n1*n2 stays exact in integers.
        widest = widest.max((i as i128 * n2 - j as i128 * n1).abs());
    }
    Ok(T::from_f64(widest as f64 / (n1 * n2) as f64).expect("statistic in range"))
}

/// Kolmogorov survival function `Q(λ) = 2 Σ_{k≥1} (-1)^{k-1} exp(-2 k² λ²)`.
///
/// For small `λ` the alternating series converges slowly, so the equivalent
/// theta-function form `1 - √(2π)/λ Σ exp(-(2k-1)² π² / (8 λ²))` is summed
/// instead. Both are truncated once a term drops below 1e-12.
pub fn kolmogorov_q<T: Scalar>(lambda: T) -> T {
    let lambda = lambda.as_f64();
    if lambda <= 0.0 {
        return T::one();
    }
    let q = if lambda < 1.0 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let mut sum = 0.0;
        for k in 1..=200 {
            let odd = (2 * k - 1) as f64;
            let term = (-odd * odd * pi2 / (8.0 * lambda * lambda)).exp();
            sum += term;
            if term < SERIES_EPS {
                break;
            }
        }
        1.0 - (2.0 * std::f64::consts::PI).sqrt() / lambda * sum
    } else {
        let mut sum = 0.0;
        let mut sign = 1.0;
        for k in 1..=200 {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            sum += sign * term;
            if term < SERIES_EPS {
                break;
            }
            sign = -sign;
        }
        2.0 * sum
    };
    T::lit(q.clamp(0.0, 1.0))
}

/// Two-sample KS test with the asymptotic p-value and the small-sample
/// correction `λ = (√n_e + 0.12 + 0.11/√n_e) · D`, `n_e = n1 n2 / (n1 + n2)`.
pub fn ks_two_sample<T: Scalar>(
    sample1: &[T],
    sample2: &[T],
    rule: DecisionRule<T>,
) -> Result<KsResult<T>, StatsError> {
    let statistic = ks_statistic(sample1, sample2)?;
    let (n1, n2) = (sample1.len(), sample2.len());
    let ne = (n1 as f64 * n2 as f64) / (n1 + n2) as f64;
    let root = ne.sqrt();
    let lambda = (root + 0.12 + 0.11 / root) * statistic.as_f64();
    let p_value = kolmogorov_q(T::lit(lambda));
    let (reject_null, upper_tail) = rule.decide(p_value);
    let small_sample = n1.min(n2) < SMALL_SAMPLE_THRESHOLD;
    if small_sample {
        log::warn!("KS test on small samples (n1={n1}, n2={n2}); failure to reject is likely");
    }
    Ok(KsResult {
        statistic,
        p_value,
        n1,
        n2,
        reject_null,
        alpha: rule.alpha,
        mode: rule.mode,
        upper_tail,
        small_sample,
    })
}

/// Tests whether `metric` over articles assigned to `topic` is distributed
/// like the metric over all remaining articles.
pub fn topic_metric_test<T: Scalar>(
    assignments: &[TopicAssignment],
    scores: &HashMap<String, EmotionScores<T>>,
    topic: usize,
    metric: Metric,
    rule: DecisionRule<T>,
) -> Result<KsResult<T>, StatsError> {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for a in assignments {
        let s = scores
            .get(&a.article_id)
            .ok_or_else(|| StatsError::MissingScores(a.article_id.clone()))?;
        if a.topic == topic {
            inside.push(metric.value(s));
        } else {
            outside.push(metric.value(s));
        }
    }
    if inside.is_empty() || outside.is_empty() {
        return Err(StatsError::EmptyPartition(topic));
    }
    ks_two_sample(&inside, &outside, rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emotion::Valence;
    use proptest::prelude::*;

    #[test]
    fn identical_and_disjoint() {
        let r = ks_two_sample(&[1.0f64, 2.0, 3.0], &[1.0, 2.0, 3.0], DecisionRule::default()).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert!(r.small_sample);
        // The two-tailed rule rejects at p = 1 via the upper tail.
        assert!(r.reject_null && r.upper_tail);
        let c = ks_two_sample(&[1.0f64, 2.0, 3.0], &[1.0, 2.0, 3.0], DecisionRule::conventional(0.05)).unwrap();
        assert!(!c.reject_null && !c.upper_tail);

        let r = ks_two_sample(&[1.0f64, 2.0, 3.0], &[4.0, 5.0, 6.0], DecisionRule::default()).unwrap();
        assert_eq!(r.statistic, 1.0);
    }

    #[test]
    fn ties_are_pooled() {
        // ECDFs agree at every distinct pooled value.
        let d = ks_statistic(&[1.0f64, 1.0, 2.0, 2.0], &[1.0, 2.0]).unwrap();
        assert_eq!(d, 0.0);
        let d = ks_statistic(&[0.0f64, 0.0, 1.0], &[0.0, 1.0, 1.0]).unwrap();
        assert!((d - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn q_function_reference_points() {
        // Both summation forms agree where they meet, and Q(1.36) ~ 0.05.
        let lo_side: f64 = {
            let l: f64 = 1.0 - 1e-12;
            kolmogorov_q(l)
        };
        let hi_side: f64 = kolmogorov_q(1.0);
        assert!((lo_side - hi_side).abs() < 1e-9);
        let q: f64 = kolmogorov_q(1.358);
        assert!((q - 0.05).abs() < 1e-3, "{q}");
        assert_eq!(kolmogorov_q(0.0f64), 1.0);
        assert!(kolmogorov_q(0.2f64) > 0.999_999);
        assert!(kolmogorov_q(5.0f64) < 1e-20);
        // Q(0.5) = 0.963945...
        assert!((kolmogorov_q(0.5f64) - 0.963_945).abs() < 1e-5);
    }

    #[test]
    fn decision_rules() {
        let two = DecisionRule::<f64>::two_tailed(0.05);
        assert_eq!(two.decide(0.01), (true, false));
        assert_eq!(two.decide(0.03), (false, false));
        assert_eq!(two.decide(0.984), (true, true));
        let conv = DecisionRule::<f64>::conventional(0.05);
        assert_eq!(conv.decide(0.04), (true, false));
        assert_eq!(conv.decide(0.984), (false, false));
        assert_eq!("conventional".parse::<DecisionMode>(), Ok(DecisionMode::Conventional));
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(
            ks_two_sample::<f64>(&[], &[1.0], DecisionRule::default()),
            Err(StatsError::EmptySample)
        );
    }

    fn scores(d: f64) -> EmotionScores<f64> {
        EmotionScores {
            valence: Valence::Positive,
            intensity: 0.5,
            diversity: d,
            divint_index: d * 0.5,
            polarity: 0.5,
            total_reacts: 2,
        }
    }

    #[test]
    fn topic_partitions() {
        let assignments: Vec<TopicAssignment> = (0..10)
            .map(|i| TopicAssignment {
                article_id: format!("a{i}"),
                topic: 1 + (i % 2),
                prob: 0.9,
            })
            .collect();
        let map: HashMap<String, EmotionScores<f64>> =
            (0..10).map(|i| (format!("a{i}"), scores(i as f64 / 10.0))).collect();
        let r = topic_metric_test(&assignments, &map, 1, Metric::Diversity, DecisionRule::default()).unwrap();
        assert_eq!((r.n1, r.n2), (5, 5));
        assert_eq!(
            topic_metric_test(&assignments, &map, 7, Metric::Diversity, DecisionRule::default()),
            Err(StatsError::EmptyPartition(7))
        );
        let all_one: Vec<TopicAssignment> = assignments
            .iter()
            .map(|a| TopicAssignment { topic: 1, ..a.clone() })
            .collect();
        assert_eq!(
            topic_metric_test(&all_one, &map, 1, Metric::Polarity, DecisionRule::default()),
            Err(StatsError::EmptyPartition(1))
        );
    }

    proptest! {
        #[test]
        fn symmetric_and_bounded(
            a in prop::collection::vec(-5i32..5, 1..40),
            b in prop::collection::vec(-5i32..5, 1..40),
        ) {
            let a: Vec<f64> = a.into_iter().map(f64::from).collect();
            let b: Vec<f64> = b.into_iter().map(f64::from).collect();
            let ab = ks_two_sample(&a, &b, DecisionRule::default()).unwrap();
            let ba = ks_two_sample(&b, &a, DecisionRule::default()).unwrap();
            prop_assert_eq!(ab.statistic, ba.statistic);
            prop_assert_eq!(ab.p_value, ba.p_value);
            prop_assert!((0.0..=1.0).contains(&ab.statistic));
            prop_assert!((0.0..=1.0).contains(&ab.p_value));
        }
    }
}
