//! Row schemas for every emitted CSV file, plot-data builders, and generic
//! CSV readers/writers over those schemas.

use crate::emotion::{EmotionScores, Metric};
use crate::ingest::{Corpus, Reaction};
use crate::scalar::Scalar;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub fn write_csv<R: Serialize>(path: &Path, rows: &[R]) -> Result<(), ReportError> {
    let err = |source| ReportError::Csv {
        path: path.display().to_string(),
        source,
    };
    let mut writer = csv::Writer::from_path(path).map_err(err)?;
    for row in rows {
        writer.serialize(row).map_err(err)?;
    }
    writer.flush().map_err(|source| ReportError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_csv<R: DeserializeOwned>(path: &Path) -> Result<Vec<R>, ReportError> {
    let err = |source| ReportError::Csv {
        path: path.display().to_string(),
        source,
    };
    let mut reader = csv::Reader::from_path(path).map_err(err)?;
    reader.deserialize().collect::<Result<Vec<R>, _>>().map_err(err)
}

/// `metrics.csv`: one row per analysed article.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub article_id: String,
    pub valence: i8,
    pub intensity: f64,
    pub diversity: f64,
    pub divint_index: f64,
    pub polarity: f64,
    pub total_reacts: u64,
    pub reshares: u64,
}

impl MetricsRow {
    pub fn new<T: Scalar>(article_id: &str, scores: &EmotionScores<T>, reshares: u64) -> Self {
        Self {
            article_id: article_id.to_owned(),
            valence: scores.valence.sign(),
            intensity: scores.intensity.as_f64(),
            diversity: scores.diversity.as_f64(),
            divint_index: scores.divint_index.as_f64(),
            polarity: scores.polarity.as_f64(),
            total_reacts: scores.total_reacts,
            reshares,
        }
    }
}

/// `rfidf.csv`: weighted reactions; `present` lists the reactions the article
/// actually received (a `0` for any other reaction is the absence sentinel).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RfIdfRow {
    pub article_id: String,
    pub like: f64,
    pub love: f64,
    pub wow: f64,
    pub laughter: f64,
    pub sad: f64,
    pub anger: f64,
    pub present: String,
}

/// `idf.csv`. `idf` is empty for reactions no article received.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdfRow {
    pub reaction: String,
    pub presence_proportion: f64,
    pub idf: Option<f64>,
}

/// `descriptive_stats.csv`. `std_dev` is the n-1 sample deviation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptiveRow {
    pub feature: String,
    pub n: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub std_dev_defined: bool,
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
}

/// `presence_pairs.csv`: articles with at least one of both reactions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRow {
    pub reaction_a: String,
    pub reaction_b: String,
    pub proportion: f64,
}

/// `spearman.csv`: full correlation matrix in long form; empty `rho` when a
/// feature is constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpearmanRow {
    pub feature_a: String,
    pub feature_b: String,
    pub rho: Option<f64>,
}

/// `topic_coherence.csv`: one row per trained grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoherenceRow {
    pub topics: usize,
    pub seed: u64,
    pub coherence: f64,
    pub selected: bool,
}

/// `topics.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicRow {
    pub topic_no: usize,
    pub article_count: usize,
    /// Semicolon-joined.
    pub top_10_words: String,
}

/// `topic_assignments.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentRow {
    pub article_id: String,
    pub topic: usize,
    pub prob: f64,
}

/// `ks_report.csv`. `upper_tail` marks rejections that came only from
/// `p > 1 - alpha/2` under the two-tailed rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KsRow {
    pub topic_no: usize,
    pub keywords: String,
    pub metric: String,
    pub ks_statistic: f64,
    pub p_value: f64,
    pub reject_null: bool,
    pub n_topic: usize,
    pub n_rest: usize,
    pub rule: String,
    pub upper_tail: bool,
    pub small_sample: bool,
}

/// `plot_hexbin.csv`: occupied hexagon centres over
/// (divint index, ln(1 + reshares)).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HexbinRow {
    pub center_x: f64,
    pub center_y: f64,
    pub count: usize,
}

/// `plot_regression.csv`: least-squares line of ln(1 + reshares) on divint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionRow {
    pub n: usize,
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
}

/// `plot_polarity_hist.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramRow {
    pub bin_left: f64,
    pub bin_right: f64,
    pub count: usize,
}

/// `plot_reaction_totals.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReactionTotalRow {
    pub reaction: String,
    pub total: u64,
}

/// Ordinary least squares `y = intercept + slope * x`. `None` when `x` is constant.
pub fn least_squares<T: Scalar>(x: &[T], y: &[T]) -> Option<(T, T)> {
    if x.is_empty() || x.len() != y.len() {
        return None;
    }
    let n = T::from_len(x.len());
    let mx = x.iter().fold(T::zero(), |a, &v| a + v) / n;
    let my = y.iter().fold(T::zero(), |a, &v| a + v) / n;
    let (mut sxy, mut sxx) = (T::zero(), T::zero());
    for (&a, &b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
    }
    if sxx == T::zero() {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// Hexagonal binning on two offset rectangular lattices. `gridsize` hexagons
/// span the x range; the y count keeps hexagons regular.
pub fn hexbin<T: Scalar>(x: &[T], y: &[T], x_range: (T, T), y_range: (T, T), gridsize: usize) -> Vec<HexbinRow> {
    let nx = gridsize.max(1) as f64;
    let (xmin, xmax) = (x_range.0.as_f64(), x_range.1.as_f64());
    let (ymin, mut ymax) = (y_range.0.as_f64(), y_range.1.as_f64());
    if ymax <= ymin {
        ymax = ymin + 1.0;
    }
    let ny = (nx / 3f64.sqrt()).round().max(1.0);
    let sx = (xmax - xmin) / nx;
    let sy = (ymax - ymin) / ny;

    let mut counts: BTreeMap<(u8, i64, i64), usize> = BTreeMap::new();
    for (&xv, &yv) in x.iter().zip(y) {
        let ix = (xv.as_f64() - xmin) / sx;
        let iy = (yv.as_f64() - ymin) / sy;
        let (i1, j1) = (ix.round(), iy.round());
        let (i2, j2) = (ix.floor(), iy.floor());
        let d1 = (ix - i1).powi(2) + 3.0 * (iy - j1).powi(2);
        let d2 = (ix - i2 - 0.5).powi(2) + 3.0 * (iy - j2 - 0.5).powi(2);
        let key = if d1 <= d2 {
            (0, i1 as i64, j1 as i64)
        } else {
            (1, i2 as i64, j2 as i64)
        };
        *counts.entry(key).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|((lattice, i, j), count)| {
            let offset = if lattice == 0 { 0.0 } else { 0.5 };
            HexbinRow {
                center_x: xmin + (i as f64 + offset) * sx,
                center_y: ymin + (j as f64 + offset) * sy,
                count,
            }
        })
        .collect()
}

/// Equal-width histogram over `[lo, hi]`; the right edge belongs to the last bin.
pub fn histogram<T: Scalar>(values: &[T], lo: T, hi: T, bins: usize) -> Vec<HistogramRow> {
    let bins = bins.max(1);
    let width = (hi - lo) / T::from_len(bins);
    let mut counts = vec![0usize; bins];
    for &v in values {
        let idx = ((v - lo) / width)
            .floor()
            .to_i64()
            .unwrap_or(0)
            .clamp(0, bins as i64 - 1) as usize;
        counts[idx] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramRow {
            bin_left: (lo + width * T::from_len(i)).as_f64(),
            bin_right: if i + 1 == bins {
                hi.as_f64()
            } else {
                (lo + width * T::from_len(i + 1)).as_f64()
            },
            count,
        })
        .collect()
}

pub struct PlotData {
    pub hexbin: Vec<HexbinRow>,
    pub regression: RegressionRow,
    pub polarity_histogram: Vec<HistogramRow>,
    pub reaction_totals: Vec<ReactionTotalRow>,
}

/// Builds the divint/reshare hexbin with its regression line, the polarity
/// histogram and per-reaction totals. Reshares are log-scaled as `ln(1 + x)`.
pub fn emit_plot_data<T: Scalar>(
    scores: &[EmotionScores<T>],
    reshares: &[u64],
    corpus: &Corpus,
    histogram_bins: usize,
    hexbin_gridsize: usize,
) -> PlotData {
    let x: Vec<T> = scores.iter().map(|s| Metric::Divint.value(s)).collect();
    let y: Vec<T> = reshares.iter().map(|&r| T::from_count(r).ln_1p()).collect();
    let ymax = y.iter().fold(T::zero(), |a, &b| a.max(b));
    let hex = hexbin(&x, &y, (T::zero(), T::one()), (T::zero(), ymax), hexbin_gridsize);
    let fit = least_squares(&x, &y);
    let regression = RegressionRow {
        n: x.len(),
        slope: fit.map(|(s, _)| s.as_f64()),
        intercept: fit.map(|(_, i)| i.as_f64()),
    };
    let polarity: Vec<T> = scores.iter().map(|s| s.polarity).collect();
    let polarity_histogram = histogram(&polarity, -T::one(), T::one(), histogram_bins);

    let mut reaction_totals: Vec<ReactionTotalRow> = Reaction::ALL
        .iter()
        .map(|&r| ReactionTotalRow {
            reaction: r.name().to_owned(),
            total: corpus.articles.iter().map(|a| a.reactions.get(r)).sum(),
        })
        .collect();
    reaction_totals.push(ReactionTotalRow {
        reaction: "reshares".to_owned(),
        total: corpus.articles.iter().map(|a| a.reactions.reshares).sum(),
    });

    PlotData {
        hexbin: hex,
        regression,
        polarity_histogram,
        reaction_totals,
    }
}
