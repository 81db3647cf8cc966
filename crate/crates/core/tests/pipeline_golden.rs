//! Runs the pipeline on the bundled fixture and checks every output file
//! against values recomputed here straight from the raw share records.

mod common;

use reaction_metrics::pipeline::OUTPUT_FILES;
use reaction_metrics::report::*;
use reaction_metrics::{run_pipeline, PipelineConfig, TopicModel};
use std::collections::{BTreeMap, HashMap};
use std::path::Path;

const NAMES: [&str; 6] = ["like", "love", "wow", "laughter", "sad", "anger"];

struct RawArticle {
    counts: [u64; 6],
    reshares: u64,
}

/// Sums the raw JSONL shares per article, keeping articles with a special reaction.
fn raw_articles() -> Vec<(String, RawArticle)> {
    let text = std::fs::read_to_string(common::fixture_path()).unwrap();
    let mut order = Vec::new();
    let mut sums: HashMap<String, RawArticle> = HashMap::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let id = v["article_id"].as_str().unwrap().to_owned();
        let entry = sums.entry(id.clone()).or_insert_with(|| {
            order.push(id.clone());
            RawArticle {
                counts: [0; 6],
                reshares: 0,
            }
        });
        for (i, n) in NAMES.iter().enumerate() {
            entry.counts[i] += v[n].as_u64().unwrap();
        }
        entry.reshares += v["reshares"].as_u64().unwrap();
    }
    order
        .into_iter()
        .map(|id| {
            let a = sums.remove(&id).unwrap();
            (id, a)
        })
        .filter(|(_, a)| a.counts[1..].iter().any(|&c| c > 0))
        .collect()
}

fn oracle_diversity(counts: &[u64; 6]) -> f64 {
    let special: u64 = counts[1..].iter().sum();
    let mut jsd = 0.0;
    for &c in &counts[1..] {
        let p = c as f64 / special as f64;
        let m = (p + 0.2) / 2.0;
        if p > 0.0 {
            jsd += 0.5 * p * (p / m).log2();
        }
        jsd += 0.5 * 0.2 * (0.2 / m).log2();
    }
    1.0 - jsd.max(0.0).sqrt()
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn close(a: f64, b: f64, what: &str) {
    assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()), "{what}: {a} vs {b}");
}

fn run(out: &Path) -> reaction_metrics::RunSummary {
    let config = PipelineConfig {
        input_path: common::fixture_path(),
        output_dir: out.to_owned(),
        t_grid: vec![4, 8],
        iterations: 200,
        ..PipelineConfig::default()
    };
    run_pipeline(&config).unwrap()
}

#[test]
fn golden_run_matches_independent_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    let summary = run(out);
    for f in OUTPUT_FILES {
        assert!(out.join(f).is_file(), "missing {f}");
    }
    let raw = raw_articles();
    assert_eq!(summary.analysed_articles, raw.len());

    let metrics: Vec<MetricsRow> = read_csv(&out.join("metrics.csv")).unwrap();
    assert_eq!(metrics.len(), raw.len());
    for (row, (id, a)) in metrics.iter().zip(&raw) {
        assert_eq!(&row.article_id, id);
        let total: u64 = a.counts.iter().sum();
        let special: u64 = a.counts[1..].iter().sum();
        let valence = if a.counts[4] + a.counts[5] > a.counts[1] {
            -1.0
        } else {
            1.0
        };
        let intensity = special as f64 / total as f64;
        let diversity = oracle_diversity(&a.counts);
        assert_eq!(row.valence as f64, valence);
        close(row.intensity, intensity, "intensity");
        close(row.diversity, diversity, "diversity");
        close(row.divint_index, diversity * intensity, "divint");
        close(row.polarity, valence * intensity, "polarity");
        assert_eq!((row.total_reacts, row.reshares), (total, a.reshares));
    }

    let n = raw.len() as f64;
    let idf: Vec<IdfRow> = read_csv(&out.join("idf.csv")).unwrap();
    let rfidf: Vec<RfIdfRow> = read_csv(&out.join("rfidf.csv")).unwrap();
    for (i, row) in idf.iter().enumerate() {
        let present = raw.iter().filter(|(_, a)| a.counts[i] > 0).count() as f64;
        assert_eq!(row.reaction, NAMES[i]);
        close(row.presence_proportion, present / n, "presence");
        close(row.idf.unwrap(), (n / present).ln(), "idf");
    }
    for (row, (_, a)) in rfidf.iter().zip(&raw) {
        let values = [row.like, row.love, row.wow, row.laughter, row.sad, row.anger];
        let total: u64 = a.counts.iter().sum();
        for i in 0..6 {
            let expected = if a.counts[i] == 0 {
                0.0
            } else {
                (a.counts[i] as f64 / total as f64).ln() * idf[i].idf.unwrap()
            };
            close(values[i], expected, "rfidf");
            assert_eq!(row.present.split(';').any(|p| p == NAMES[i]), a.counts[i] > 0);
        }
    }

    let descriptive: Vec<DescriptiveRow> = read_csv(&out.join("descriptive_stats.csv")).unwrap();
    for (i, row) in descriptive.iter().enumerate() {
        let mut v: Vec<f64> = raw
            .iter()
            .map(|(_, a)| if i < 6 { a.counts[i] } else { a.reshares } as f64)
            .collect();
        v.sort_by(f64::total_cmp);
        let mean = v.iter().sum::<f64>() / n;
        let sd = (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        close(row.mean, mean, "mean");
        close(row.std_dev, sd, "sd");
        close(row.q25, quantile(&v, 0.25), "q25");
        close(row.median, quantile(&v, 0.5), "median");
        close(row.q75, quantile(&v, 0.75), "q75");
        assert_eq!((row.min, row.max), (v[0], v[v.len() - 1]));
    }

    let pairs: Vec<PairRow> = read_csv(&out.join("presence_pairs.csv")).unwrap();
    assert_eq!(pairs.len(), 15);
    for row in &pairs {
        let (a, b) = (
            NAMES.iter().position(|n| *n == row.reaction_a).unwrap(),
            NAMES.iter().position(|n| *n == row.reaction_b).unwrap(),
        );
        let both = raw.iter().filter(|(_, r)| r.counts[a] > 0 && r.counts[b] > 0).count() as f64;
        close(row.proportion, both / n, "pair");
    }

    let spearman: Vec<SpearmanRow> = read_csv(&out.join("spearman.csv")).unwrap();
    assert_eq!(spearman.len(), 49);
    for row in spearman.iter().filter(|r| r.feature_a == r.feature_b) {
        assert_eq!(row.rho, Some(1.0));
    }

    let totals: Vec<ReactionTotalRow> = read_csv(&out.join("plot_reaction_totals.csv")).unwrap();
    for (i, row) in totals.iter().take(6).enumerate() {
        assert_eq!(row.total, raw.iter().map(|(_, a)| a.counts[i]).sum::<u64>());
    }

    let x: Vec<f64> = metrics.iter().map(|m| m.divint_index).collect();
    let y: Vec<f64> = metrics.iter().map(|m| (m.reshares as f64).ln_1p()).collect();
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let slope = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum::<f64>()
        / x.iter().map(|a| (a - mx).powi(2)).sum::<f64>();
    let regression: Vec<RegressionRow> = read_csv(&out.join("plot_regression.csv")).unwrap();
    close(regression[0].slope.unwrap(), slope, "slope");
    close(regression[0].intercept.unwrap(), my - slope * mx, "intercept");
    let hex: Vec<HexbinRow> = read_csv(&out.join("plot_hexbin.csv")).unwrap();
    assert_eq!(hex.iter().map(|h| h.count).sum::<usize>(), raw.len());
    let hist: Vec<HistogramRow> = read_csv(&out.join("plot_polarity_hist.csv")).unwrap();
    assert_eq!(hist.len(), 40);
    assert_eq!(hist.iter().map(|h| h.count).sum::<usize>(), raw.len());

    let model = TopicModel::from_json(&std::fs::read_to_string(out.join("model.json")).unwrap()).unwrap();
    let coherence: Vec<CoherenceRow> = read_csv(&out.join("topic_coherence.csv")).unwrap();
    assert_eq!(coherence.iter().map(|c| c.topics).collect::<Vec<_>>(), vec![4, 8]);
    let best = coherence.iter().find(|c| c.selected).unwrap();
    assert_eq!((best.topics, best.coherence), (model.topics, model.coherence));
    assert!(coherence.iter().all(|c| c.coherence <= best.coherence));

    let assignments: Vec<AssignmentRow> = read_csv(&out.join("topic_assignments.csv")).unwrap();
    assert_eq!(assignments.len(), summary.topic_documents);
    let topics: Vec<TopicRow> = read_csv(&out.join("topics.csv")).unwrap();
    assert_eq!(topics.len(), model.topics);
    let mut per_topic: BTreeMap<usize, usize> = BTreeMap::new();
    for a in &assignments {
        *per_topic.entry(a.topic).or_default() += 1;
    }
    for t in &topics {
        assert_eq!(t.article_count, per_topic.get(&t.topic_no).copied().unwrap_or(0));
        assert_eq!(t.top_10_words.split(';').count(), 10);
    }

    // KS statistic recomputed by brute force over the pooled points.
    let diversity: HashMap<&str, f64> = metrics.iter().map(|m| (m.article_id.as_str(), m.diversity)).collect();
    let ks: Vec<KsRow> = read_csv(&out.join("ks_report.csv")).unwrap();
    assert_eq!(ks.len(), summary.ks_tests);
    for row in ks.iter().filter(|r| r.metric == "diversity") {
        let (inside, rest): (Vec<&AssignmentRow>, Vec<&AssignmentRow>) =
            assignments.iter().partition(|a| a.topic == row.topic_no);
        let a: Vec<f64> = inside.iter().map(|r| diversity[r.article_id.as_str()]).collect();
        let b: Vec<f64> = rest.iter().map(|r| diversity[r.article_id.as_str()]).collect();
        let ecdf = |s: &[f64], x: f64| s.iter().filter(|&&v| v <= x).count() as f64 / s.len() as f64;
        let d = a
            .iter()
            .chain(&b)
            .map(|&x| (ecdf(&a, x) - ecdf(&b, x)).abs())
            .fold(0.0, f64::max);
        close(row.ks_statistic, d, "ks statistic");
        assert_eq!((row.n_topic, row.n_rest), (a.len(), b.len()));
        let reject = row.p_value < 0.025 || row.p_value > 0.975;
        assert_eq!(row.reject_null, reject);
        assert_eq!(row.small_sample, a.len().min(b.len()) < 30);
    }
}

#[test]
fn rerun_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    run(&dir.path().join("a"));
    run(&dir.path().join("b"));
    for f in OUTPUT_FILES {
        assert_eq!(
            std::fs::read(dir.path().join("a").join(f)).unwrap(),
            std::fs::read(dir.path().join("b").join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn empty_grid_fails_before_any_work() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    let config = PipelineConfig {
        input_path: common::fixture_path(),
        output_dir: out.clone(),
        t_grid: vec![],
        ..PipelineConfig::default()
    };
    let err = run_pipeline(&config).unwrap_err();
    assert_eq!(err.exit_code(), 1);
    assert!(!out.exists());
}

#[test]
fn all_zero_reshares_give_zero_log_axis() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("flat.jsonl");
    let text: String = std::fs::read_to_string(common::fixture_path())
        .unwrap()
        .lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
            v["reshares"] = 0.into();
            v.to_string() + "\n"
        })
        .collect();
    std::fs::write(&input, text).unwrap();
    let out = dir.path().join("out");
    let config = PipelineConfig {
        input_path: input,
        output_dir: out.clone(),
        t_grid: vec![3],
        iterations: 20,
        ..PipelineConfig::default()
    };
    run_pipeline(&config).unwrap();
    let hex: Vec<HexbinRow> = read_csv(&out.join("plot_hexbin.csv")).unwrap();
    assert!(hex.iter().all(|h| h.center_y == 0.0));
    let regression: Vec<RegressionRow> = read_csv(&out.join("plot_regression.csv")).unwrap();
    assert_eq!(regression[0].slope, Some(0.0));
}
