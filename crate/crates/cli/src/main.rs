use clap::Parser;
use reaction_metrics::{run_pipeline, DecisionMode, InputFormat, PipelineConfig, PipelineError};
use std::path::PathBuf;
use std::process::ExitCode;

/// Computes emotion metrics, topic models and per-topic KS tests for
/// click-based reactions to shared articles.
#[derive(Debug, Parser)]
#[command(name = "reactmetrics", version)]
struct Args {
    /// Flat `key = value` config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    input: Option<PathBuf>,
    /// `jsonl` or `csv`.
    #[arg(long)]
    format: Option<InputFormat>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Topic counts, e.g. `15,20,25` or `15..50:5`.
    #[arg(long)]
    topics_grid: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    min_df: Option<usize>,
    #[arg(long)]
    max_df_ratio: Option<f64>,
    #[arg(long)]
    ks_alpha: Option<f64>,
    /// `paper_two_tailed` or `conventional`.
    #[arg(long)]
    ks_rule: Option<DecisionMode>,
    /// Polarity histogram bins.
    #[arg(long)]
    bins: Option<usize>,
    /// Stopword file, one word per line.
    #[arg(long)]
    stopwords: Option<PathBuf>,
}

fn build_config(args: Args) -> Result<PipelineConfig, PipelineError> {
    let mut c = match &args.config {
        Some(path) => PipelineConfig::from_file(path)?,
        None => PipelineConfig::default(),
    };
    if let Some(v) = args.input {
        c.input_path = v;
    }
    if let Some(v) = args.format {
        c.input_format = v;
    }
    if let Some(v) = args.out {
        c.output_dir = v;
    }
    if let Some(v) = args.topics_grid {
        c.apply_kv("t_grid", &v)?;
    }
    if let Some(v) = args.seed {
        c.seed = v;
    }
    if let Some(v) = args.iterations {
        c.iterations = v;
    }
    if let Some(v) = args.min_df {
        c.min_df = v;
    }
    if let Some(v) = args.max_df_ratio {
        c.max_df_ratio = v;
    }
    if let Some(v) = args.ks_alpha {
        c.ks_alpha = v;
    }
    if let Some(v) = args.ks_rule {
        c.ks_rule = v;
    }
    if let Some(v) = args.bins {
        c.histogram_bins = v;
    }
    if let Some(v) = args.stopwords {
        c.stopwords = Some(v);
    }
    Ok(c)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = build_config(args).and_then(|c| run_pipeline(&c).map(|s| (c, s)));
    match result {
        Ok((config, s)) => {
            println!(
                "articles analysed: {} of {} ({} shares)",
                s.analysed_articles, s.articles, s.shares
            );
            println!(
                "topic documents:   {} (vocabulary {})",
                s.topic_documents, s.vocabulary_size
            );
            println!(
                "selected topics:   t={} (coherence {:.4})",
                s.selected_topics, s.selected_coherence
            );
            println!(
                "KS rejections:     {} of {} ({}, alpha={})",
                s.ks_rejections, s.ks_tests, s.ks_rule, s.ks_alpha
            );
            for w in &s.warnings {
                println!("warning: {w}");
            }
            println!("outputs written to {}", config.output_dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
