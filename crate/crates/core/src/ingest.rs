//! Loading share records from local JSONL/CSV files, aggregating them into
//! per-article records, and filtering to articles with special reactions.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::SystemTime;

/// The six click-based reaction types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reaction {
    Like,
    Love,
    Wow,
    Laughter,
    Sad,
    Anger,
}

impl Reaction {
    pub const ALL: [Reaction; 6] = [
        Reaction::Like,
        Reaction::Love,
        Reaction::Wow,
        Reaction::Laughter,
        Reaction::Sad,
        Reaction::Anger,
    ];

    /// Every reaction except `Like`, in the order used by special distributions.
    pub const SPECIAL: [Reaction; 5] = [
        Reaction::Love,
        Reaction::Wow,
        Reaction::Laughter,
        Reaction::Sad,
        Reaction::Anger,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Reaction::Like => "like",
            Reaction::Love => "love",
            Reaction::Wow => "wow",
            Reaction::Laughter => "laughter",
            Reaction::Sad => "sad",
            Reaction::Anger => "anger",
        }
    }

    /// Position in [`Reaction::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Reaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Reaction tallies for one share or one aggregated article.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReactionCounts {
    pub like: u64,
    pub love: u64,
    pub wow: u64,
    pub laughter: u64,
    pub sad: u64,
    pub anger: u64,
    pub reshares: u64,
}

impl ReactionCounts {
    /// Builds counts from `[like, love, wow, laughter, sad, anger]` and reshares.
    pub fn new(clicks: [u64; 6], reshares: u64) -> Self {
        let [like, love, wow, laughter, sad, anger] = clicks;
        Self {
            like,
            love,
            wow,
            laughter,
            sad,
            anger,
            reshares,
        }
    }

    pub fn get(&self, reaction: Reaction) -> u64 {
        match reaction {
            Reaction::Like => self.like,
            Reaction::Love => self.love,
            Reaction::Wow => self.wow,
            Reaction::Laughter => self.laughter,
            Reaction::Sad => self.sad,
            Reaction::Anger => self.anger,
        }
    }

    pub fn clicks(&self) -> [u64; 6] {
        [self.like, self.love, self.wow, self.laughter, self.sad, self.anger]
    }

    pub fn special(&self) -> [u64; 5] {
        [self.love, self.wow, self.laughter, self.sad, self.anger]
    }

    /// love + wow + laughter + sad + anger.
    pub fn special_total(&self) -> u64 {
        self.special().iter().sum()
    }

    /// Sum of the six click-based reactions; reshares are not included.
    pub fn total_reactions(&self) -> u64 {
        self.clicks().iter().sum()
    }

    /// Multiplies every count, reshares included, by `k`.
    pub fn scaled(&self, k: u64) -> Self {
        let c = self.clicks().map(|v| v * k);
        Self::new(c, self.reshares * k)
    }

    fn accumulate(&mut self, other: &ReactionCounts) {
        self.like += other.like;
        self.love += other.love;
        self.wow += other.wow;
        self.laughter += other.laughter;
        self.sad += other.sad;
        self.anger += other.anger;
        self.reshares += other.reshares;
    }
}

/// One share of an article onto a public page.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShareRecord {
    pub article_id: String,
    /// Pre-anonymised page identifier; raw page identities are never accepted.
    pub page_id_hash: String,
    pub lang: Option<String>,
    pub post_text: String,
    pub title: Option<String>,
    pub abstract_text: Option<String>,
    pub pub_date: Option<NaiveDate>,
    pub reactions: ReactionCounts,
}

impl ShareRecord {
    /// Whether the share text should feed the topic model. Untagged texts are kept.
    pub fn is_english(&self) -> bool {
        match &self.lang {
            None => true,
            Some(tag) => is_english_tag(tag),
        }
    }
}

fn is_english_tag(tag: &str) -> bool {
    let tag = tag.trim().to_ascii_lowercase();
    tag == "en" || tag == "eng" || tag == "english" || tag.starts_with("en-") || tag.starts_with("en_")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Jsonl,
    Csv,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "jsonl" | "json" | "ndjson" => Ok(InputFormat::Jsonl),
            "csv" => Ok(InputFormat::Csv),
            other => Err(format!("unknown input format `{other}` (expected jsonl or csv)")),
        }
    }
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFormat::Jsonl => "jsonl",
            InputFormat::Csv => "csv",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("input file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: field `{field}`: {reason}")]
    SchemaViolation { line: usize, field: String, reason: String },
    #[error("line {line}: field `{field}` is negative")]
    NegativeCount { line: usize, field: String },
}

/// Where a batch of shares came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Hex SHA-256 of the raw input bytes.
    pub source_digest: String,
    /// Seconds since the Unix epoch at load time.
    pub loaded_at: u64,
}

impl Provenance {
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let loaded_at = SystemTime::now()
            .duration_since(SystemTime::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            source_digest: hex::encode(Sha256::digest(bytes)),
            loaded_at,
        }
    }
}

/// Parsed shares plus any non-fatal diagnostics raised while reading them.
#[derive(Debug, Clone)]
pub struct ShareBatch {
    pub shares: Vec<ShareRecord>,
    pub warnings: Vec<String>,
    pub provenance: Provenance,
}

const COUNT_FIELDS: [&str; 7] = ["like", "love", "wow", "laughter", "sad", "anger", "reshares"];

/// Field access common to JSON objects and CSV rows.
trait RawRow {
    fn text(&self, field: &str, line: usize) -> Result<Option<String>, IngestError>;
    fn integer(&self, field: &str, line: usize) -> Result<Option<i64>, IngestError>;
}

struct JsonRow<'a>(&'a serde_json::Map<String, serde_json::Value>);

impl RawRow for JsonRow<'_> {
    fn text(&self, field: &str, line: usize) -> Result<Option<String>, IngestError> {
        match self.0.get(field) {
            None | Some(serde_json::Value::Null) => Ok(None),
            Some(serde_json::Value::String(s)) => Ok(Some(s.clone())),
            Some(other) => Err(schema(line, field, format!("expected string, found {other}"))),
        }
    }

    fn integer(&self, field: &str, line: usize) -> Result<Option<i64>, IngestError> {
        match self.0.get(field) {
            None | Some(serde_json::Value::Null) => Ok(None),
            Some(serde_json::Value::Number(n)) => match n.as_i64() {
                Some(v) => Ok(Some(v)),
                None => Err(schema(line, field, format!("expected integer, found {n}"))),
            },
            Some(other) => Err(schema(line, field, format!("expected integer, found {other}"))),
        }
    }
}

struct CsvRow<'a> {
    headers: &'a HashMap<String, usize>,
    record: &'a csv::StringRecord,
}

impl CsvRow<'_> {
    fn cell(&self, field: &str) -> Option<&str> {
        self.headers
            .get(field)
            .and_then(|&i| self.record.get(i))
            .filter(|s| !s.is_empty())
    }
}

impl RawRow for CsvRow<'_> {
    fn text(&self, field: &str, _line: usize) -> Result<Option<String>, IngestError> {
        Ok(self.cell(field).map(str::to_owned))
    }

    fn integer(&self, field: &str, line: usize) -> Result<Option<i64>, IngestError> {
        match self.cell(field) {
            None => Ok(None),
            Some(raw) => raw
                .trim()
                .parse::<i64>()
                .map(Some)
                .map_err(|e| schema(line, field, format!("expected integer, found `{raw}` ({e})"))),
        }
    }
}

fn schema(line: usize, field: &str, reason: impl Into<String>) -> IngestError {
    IngestError::SchemaViolation {
        line,
        field: field.to_owned(),
        reason: reason.into(),
    }
}

fn parse_row(row: &dyn RawRow, line: usize) -> Result<ShareRecord, IngestError> {
    let article_id = row
        .text("article_id", line)?
        .filter(|s| !s.trim().is_empty())
        .ok_or_else(|| schema(line, "article_id", "missing or empty"))?;
    let page_id_hash = row
        .text("page_id_hash", line)?
        .filter(|s| !s.trim().is_empty())
        .ok_or_else(|| schema(line, "page_id_hash", "missing or empty"))?;

    let mut counts = [0u64; 7];
    for (slot, field) in counts.iter_mut().zip(COUNT_FIELDS) {
        let value = row
            .integer(field, line)?
            .ok_or_else(|| schema(line, field, "missing required count"))?;
        if value < 0 {
            return Err(IngestError::NegativeCount {
                line,
                field: field.to_owned(),
            });
        }
        *slot = value as u64;
    }
    let [like, love, wow, laughter, sad, anger, reshares] = counts;

    let pub_date = match row.text("pub_date", line)? {
        None => None,
        Some(raw) => Some(
            NaiveDate::parse_from_str(raw.trim(), "%Y-%m-%d")
                .map_err(|e| schema(line, "pub_date", format!("expected YYYY-MM-DD ({e})")))?,
        ),
    };

    Ok(ShareRecord {
        article_id,
        page_id_hash,
        lang: row.text("lang", line)?,
        post_text: row.text("text", line)?.unwrap_or_default(),
        title: row.text("title", line)?,
        abstract_text: row.text("abstract", line)?,
        pub_date,
        reactions: ReactionCounts {
            like,
            love,
            wow,
            laughter,
            sad,
            anger,
            reshares,
        },
    })
}

/// Parses share records from an in-memory buffer.
pub fn parse_shares(bytes: &[u8], format: InputFormat) -> Result<ShareBatch, IngestError> {
    let text = std::str::from_utf8(bytes).map_err(|e| schema(0, "<file>", format!("input is not UTF-8: {e}")))?;
    let mut shares = Vec::new();
    match format {
        InputFormat::Jsonl => {
            for (idx, raw) in text.lines().enumerate() {
                let line = idx + 1;
                if raw.trim().is_empty() {
                    continue;
                }
                let value: serde_json::Value =
                    serde_json::from_str(raw).map_err(|e| schema(line, "<line>", format!("invalid JSON: {e}")))?;
                let object = value
                    .as_object()
                    .ok_or_else(|| schema(line, "<line>", "expected a JSON object"))?;
                shares.push(parse_row(&JsonRow(object), line)?);
            }
        }
        InputFormat::Csv => {
            let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
            let headers: HashMap<String, usize> = match reader.headers() {
                Ok(h) => h
                    .iter()
                    .enumerate()
                    .map(|(i, name)| (name.trim().to_owned(), i))
                    .collect(),
                Err(e) => return Err(schema(1, "<header>", e.to_string())),
            };
            if !text.trim().is_empty() {
                for field in ["article_id", "page_id_hash"].into_iter().chain(COUNT_FIELDS) {
                    if !headers.contains_key(field) {
                        return Err(schema(1, field, "column missing from header row"));
                    }
                }
            }
            for (idx, record) in reader.records().enumerate() {
                // Header occupies line 1.
                let line = record
                    .as_ref()
                    .ok()
                    .and_then(|r| r.position())
                    .map(|p| p.line() as usize)
                    .unwrap_or(idx + 2);
                let record = record.map_err(|e| schema(line, "<row>", e.to_string()))?;
                shares.push(parse_row(
                    &CsvRow {
                        headers: &headers,
                        record: &record,
                    },
                    line,
                )?);
            }
        }
    }

    let mut warnings = Vec::new();
    if shares.is_empty() {
        warnings.push("input contains no share records".to_owned());
    }
    let untagged = shares.iter().filter(|s| s.lang.is_none()).count();
    if untagged > 0 {
        warnings.push(format!(
            "{untagged} share(s) carry no language tag; their text is kept for topic modelling"
        ));
    }
    for w in &warnings {
        log::warn!("{w}");
    }

    Ok(ShareBatch {
        shares,
        warnings,
        provenance: Provenance::from_bytes(bytes),
    })
}

/// Reads and validates share records from `path`.
pub fn load_shares(path: &Path, format: InputFormat) -> Result<ShareBatch, IngestError> {
    let bytes = std::fs::read(path).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            IngestError::FileNotFound(path.to_owned())
        } else {
            IngestError::Io {
                path: path.to_owned(),
                source,
            }
        }
    })?;
    parse_shares(&bytes, format)
}

/// One article with all of its shares summed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArticleRecord {
    pub article_id: String,
    pub title: String,
    pub abstract_text: Option<String>,
    pub publication_date: Option<NaiveDate>,
    pub share_count: u64,
    /// English share texts joined with newlines, in input order.
    pub combined_text: String,
    pub reactions: ReactionCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Corpus {
    pub articles: Vec<ArticleRecord>,
    pub provenance: Provenance,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.articles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.articles.is_empty()
    }

    pub fn get(&self, article_id: &str) -> Option<&ArticleRecord> {
        self.articles.iter().find(|a| a.article_id == article_id)
    }
}

pub const TEXT_SEPARATOR: &str = "\n";

/// Groups shares by article id, preserving first-appearance order.
pub fn aggregate_articles(batch: &ShareBatch) -> Corpus {
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut articles: Vec<ArticleRecord> = Vec::new();

    for share in &batch.shares {
        let slot = *index.entry(share.article_id.as_str()).or_insert_with(|| {
            articles.push(ArticleRecord {
                article_id: share.article_id.clone(),
                title: String::new(),
                abstract_text: None,
                publication_date: None,
                share_count: 0,
                combined_text: String::new(),
                reactions: ReactionCounts::default(),
            });
            articles.len() - 1
        });
        let article = &mut articles[slot];
        article.share_count += 1;
        article.reactions.accumulate(&share.reactions);
        if article.title.is_empty() {
            if let Some(title) = share.title.as_deref().filter(|t| !t.is_empty()) {
                article.title = title.to_owned();
            }
        }
        if article.abstract_text.is_none() {
            article.abstract_text = share.abstract_text.clone().filter(|t| !t.is_empty());
        }
        if article.publication_date.is_none() {
            article.publication_date = share.pub_date;
        }
        if share.is_english() && !share.post_text.is_empty() {
            if !article.combined_text.is_empty() {
                article.combined_text.push_str(TEXT_SEPARATOR);
            }
            article.combined_text.push_str(&share.post_text);
        }
    }

    Corpus {
        articles,
        provenance: batch.provenance.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FilterReport {
    pub retained: usize,
    pub dropped: usize,
}

/// Keeps only articles with at least one special (non-like) reaction.
pub fn filter_special(corpus: &Corpus) -> (Corpus, FilterReport) {
    let articles: Vec<ArticleRecord> = corpus
        .articles
        .iter()
        .filter(|a| a.reactions.special_total() >= 1)
        .cloned()
        .collect();
    let report = FilterReport {
        retained: articles.len(),
        dropped: corpus.len() - articles.len(),
    };
    (
        Corpus {
            articles,
            provenance: corpus.provenance.clone(),
        },
        report,
    )
}
