//! Share-text preprocessing: cleaning, stopwords, suffix lemmatisation,
//! collocation joining and document-frequency vocabulary pruning.

use super::TopicError;
use crate::ingest::Corpus;
use rayon::prelude::*;
use regex::Regex;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::Path;
use std::sync::OnceLock;

/// Separator used when collocations are joined into one token.
pub const PHRASE_JOINER: char = '_';

const DEFAULT_STOPWORDS: &str = "\
i me my myself we our ours ourselves you youre youve youll youd your yours yourself yourselves \
he him his himself she shes her hers herself it its itself they them their theirs themselves \
what which who whom this that thatll these those am is are was were be been being have has had \
having do does did doing a an the and but if or because as until while of at by for with about \
against between into through during before after above below to from up down in out on off over \
under again further then once here there when where why how all any both each few more most other \
some such no nor not only own same so than too very s t can will just don dont should shouldve now \
d ll m o re ve y ain aren arent couldn couldnt didn didnt doesn doesnt hadn hadnt hasn hasnt haven \
havent isn isnt ma mightn mightnt mustn mustnt needn neednt shan shant shouldn shouldnt wasn wasnt \
weren werent won wont wouldn wouldnt";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopWords(HashSet<String>);

impl StopWords {
    pub fn english() -> Self {
        Self::from_words(DEFAULT_STOPWORDS.split_whitespace())
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self(
            words
                .into_iter()
                .map(|w| normalize_raw(w.as_ref()))
                .filter(|w| !w.is_empty())
                .collect(),
        )
    }

    /// One word per line; blank lines and `#` comments are ignored.
    pub fn from_file(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(Self::from_words(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        ))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Default for StopWords {
    fn default() -> Self {
        Self::english()
    }
}

fn normalize_raw(word: &str) -> String {
    word.trim()
        .to_lowercase()
        .chars()
        .filter(|c| !matches!(c, '\'' | '\u{2019}'))
        .collect()
}

/// Maps an inflected token to its normal form. Implementations must be
/// idempotent: `lemmatize(lemmatize(w)) == lemmatize(w)`.
pub trait Lemmatizer: Send + Sync {
    fn lemmatize(&self, token: &str) -> String;
}

/// Leaves tokens unchanged.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityLemmatizer;

impl Lemmatizer for IdentityLemmatizer {
    fn lemmatize(&self, token: &str) -> String {
        token.to_owned()
    }
}

/// Rule-based English normaliser: plural nouns to singular and `-ed` / `-ing`
/// verb forms to a stem, with a small irregular-form table. Rules are applied
/// until the token stops changing. Suffix rewrites always shorten the token
/// and irregular lemmas are never rewritten again, so this terminates.
#[derive(Debug, Clone, Copy, Default)]
pub struct SuffixLemmatizer;

const IRREGULAR: &[(&str, &str)] = &[
    ("using", "use"),
    ("used", "use"),
    ("uses", "use"),
    ("making", "make"),
    ("made", "make"),
    ("taking", "take"),
    ("took", "take"),
    ("taken", "take"),
    ("says", "say"),
    ("said", "say"),
    ("saying", "say"),
    ("does", "do"),
    ("did", "do"),
    ("done", "do"),
    ("doing", "do"),
    ("having", "have"),
    ("has", "have"),
    ("had", "have"),
    ("found", "find"),
    ("shown", "show"),
    ("children", "child"),
    ("women", "woman"),
    ("men", "man"),
    ("mice", "mouse"),
    ("people", "people"),
    ("teeth", "tooth"),
    ("feet", "foot"),
    ("geese", "goose"),
    ("was", "be"),
    ("were", "be"),
    ("is", "be"),
    ("are", "be"),
    ("been", "be"),
    ("being", "be"),
];

/// Words that look inflected but are not.
const PROTECTED: &[&str] = &[
    "news",
    "species",
    "series",
    "physics",
    "genetics",
    "mathematics",
    "economics",
    "politics",
    "ethics",
    "diabetes",
    "always",
    "perhaps",
    "whereas",
    "lens",
    "indeed",
    "thing",
    "nothing",
    "something",
    "anything",
    "everything",
    "morning",
    "evening",
    "during",
    "ceiling",
    "bring",
    "spring",
    "string",
    "king",
    "ring",
    "sing",
    "wing",
    "swing",
    "sting",
    "ongoing",
    "red",
    "bed",
    "need",
    "seed",
    "feed",
    "speed",
    "breed",
    "bleed",
    "proceed",
    "succeed",
    "exceed",
    "shed",
    "hundred",
    "sacred",
    "naked",
    "wicked",
    "wretched",
    "united",
    "kindred",
    "bias",
    "gas",
    "yes",
    "plus",
    "thus",
    "ais",
    "alzheimers",
    "parkinsons",
    "aids",
    "sars",
    "mers",
    "covid",
];

fn is_vowel_at(word: &[u8], i: usize) -> bool {
    match word[i] {
        b'a' | b'e' | b'i' | b'o' | b'u' => true,
        b'y' => i > 0 && !is_vowel_at(word, i - 1),
        _ => false,
    }
}

fn has_vowel(word: &[u8]) -> bool {
    (0..word.len()).any(|i| is_vowel_at(word, i))
}

/// Number of vowel-consonant sequences (Porter's measure).
fn measure(word: &[u8]) -> usize {
    let mut m = 0;
    let mut prev_vowel = false;
    for i in 0..word.len() {
        let v = is_vowel_at(word, i);
        if prev_vowel && !v {
            m += 1;
        }
        prev_vowel = v;
    }
    m
}

/// Ends consonant-vowel-consonant with the last consonant not w, x or y.
fn ends_cvc(word: &[u8]) -> bool {
    let n = word.len();
    n >= 3
        && !is_vowel_at(word, n - 3)
        && is_vowel_at(word, n - 2)
        && !is_vowel_at(word, n - 1)
        && !matches!(word[n - 1], b'w' | b'x' | b'y')
}

fn ends_double_consonant(word: &[u8]) -> bool {
    let n = word.len();
    n >= 2 && word[n - 1] == word[n - 2] && !is_vowel_at(word, n - 1)
}

/// Whether a stem left by removing `-ed` / `-ing` needs its silent `e` back.
fn restore_e(stem: &str) -> bool {
    let b = stem.as_bytes();
    let n = b.len();
    if ["at", "bl", "iz", "ys", "ur", "dg", "rg"]
        .iter()
        .any(|s| stem.ends_with(s))
    {
        return true;
    }
    match b[n - 1] {
        b'v' => return true,
        b'c' => return n >= 2 && (is_vowel_at(b, n - 2) || matches!(b[n - 2], b'n' | b'r')),
        b's' => {
            // "caus(e)" but not "focus".
            return n >= 2 && is_vowel_at(b, n - 2) && (b[n - 2] != b'u' || (n >= 3 && is_vowel_at(b, n - 3)));
        }
        b'g' if stem.ends_with("ag") && n >= 4 => return true,
        _ => {}
    }
    if stem.ends_with("hang") || stem.ends_with("rang") || stem.ends_with("leng") {
        return true;
    }
    measure(b) == 1 && ends_cvc(b)
}

impl SuffixLemmatizer {
    fn step(word: &str) -> Option<String> {
        if let Some(&(_, lemma)) = IRREGULAR.iter().find(|(w, _)| *w == word) {
            return (lemma != word).then(|| lemma.to_owned());
        }
        if PROTECTED.contains(&word) || IRREGULAR.iter().any(|(_, l)| *l == word) {
            return None;
        }
        let b = word.as_bytes();
        let n = b.len();

        // Plurals and third-person -s.
        if word.ends_with("sses") {
            return Some(word[..n - 2].to_owned());
        }
        if word.ends_with("ies") && n >= 4 {
            let stem = &word[..n - 3];
            return Some(if stem.len() >= 2 {
                format!("{stem}y")
            } else {
                format!("{stem}ie")
            });
        }
        if ["xes", "ches", "shes", "zzes"].iter().any(|s| word.ends_with(s)) && n >= 5 {
            return Some(word[..n - 2].to_owned());
        }
        if word.ends_with('s') && n > 3 && !matches!(b[n - 2], b's' | b'u' | b'i') {
            return Some(word[..n - 1].to_owned());
        }

        // Past tense and progressive forms.
        if word.ends_with("eed") {
            let stem = &word[..n - 3];
            return (measure(stem.as_bytes()) > 0).then(|| word[..n - 1].to_owned());
        }
        if word.ends_with("ied") && n >= 5 {
            return Some(format!("{}y", &word[..n - 3]));
        }
        let stem = if word.ends_with("ed") {
            &word[..n - 2]
        } else if word.ends_with("ing") {
            &word[..n - 3]
        } else {
            return None;
        };
        if stem.len() < 3 || !has_vowel(stem.as_bytes()) {
            return None;
        }
        let sb = stem.as_bytes();
        if ends_double_consonant(sb) && !matches!(sb[sb.len() - 1], b'l' | b's' | b'z') {
            return Some(stem[..stem.len() - 1].to_owned());
        }
        if restore_e(stem) {
            return Some(format!("{stem}e"));
        }
        Some(stem.to_owned())
    }

    fn lemmatize_word(word: &str) -> String {
        if !word.bytes().all(|c| c.is_ascii_lowercase()) {
            return word.to_owned();
        }
        let mut current = word.to_owned();
        while let Some(next) = Self::step(&current) {
            current = next;
        }
        current
    }
}

impl Lemmatizer for SuffixLemmatizer {
    fn lemmatize(&self, token: &str) -> String {
        // Joined phrases inflect on their last word only.
        match token.rfind(PHRASE_JOINER) {
            Some(pos) => format!("{}{}", &token[..=pos], Self::lemmatize_word(&token[pos + 1..])),
            None => Self::lemmatize_word(token),
        }
    }
}

fn url_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(?i)\b(?:https?://|ftp://|www\.)\S*").expect("valid regex"))
}

fn email_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"[\w.+-]+@[\w-]+(?:\.[\w-]+)+").expect("valid regex"))
}

fn hashtag_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"#\w+").expect("valid regex"))
}

/// Lowercases and strips hyperlinks, e-mail addresses, hashtags and
/// punctuation, returning the remaining word-like tokens.
pub fn clean_text(text: &str, min_len: usize) -> Vec<String> {
    let lowered = text.to_lowercase();
    let no_urls = url_re().replace_all(&lowered, " ");
    let no_emails = email_re().replace_all(&no_urls, " ");
    let no_tags = hashtag_re().replace_all(&no_emails, " ");
    let no_apostrophes: String = no_tags.chars().filter(|c| !matches!(c, '\'' | '\u{2019}')).collect();
    no_apostrophes
        .split(|c: char| !(c.is_alphanumeric() || c == PHRASE_JOINER))
        .map(|t| t.trim_matches(PHRASE_JOINER))
        .filter(|t| t.chars().count() >= min_len && t.chars().any(char::is_alphabetic))
        .map(str::to_owned)
        .collect()
}

/// Cleans, lemmatises and removes stopwords from one text.
pub fn tokenize(text: &str, stopwords: &StopWords, lemmatizer: &dyn Lemmatizer, min_len: usize) -> Vec<String> {
    clean_text(text, min_len)
        .into_iter()
        .filter(|raw| !stopwords.contains(raw))
        .map(|raw| lemmatizer.lemmatize(&raw))
        .filter(|lemma| lemma.chars().count() >= min_len && !stopwords.contains(lemma))
        .collect()
}

/// Adjacent-pair collocations scored by normalised pointwise mutual information.
#[derive(Debug, Clone, Default)]
pub struct PhraseModel {
    joined: HashSet<(String, String)>,
}

fn parts(token: &str) -> usize {
    token.split(PHRASE_JOINER).count()
}

impl PhraseModel {
    /// Learns which adjacent pairs to join: pairs seen at least `min_count`
    /// times whose NPMI is at least `threshold`, and whose joined token would
    /// span no more than `max_parts` words.
    pub fn learn(docs: &[Vec<String>], threshold: f64, min_count: usize, max_parts: usize) -> Self {
        let mut unigram: HashMap<&str, usize> = HashMap::new();
        let mut bigram: HashMap<(&str, &str), usize> = HashMap::new();
        let mut total = 0usize;
        for doc in docs {
            total += doc.len();
            for tok in doc {
                *unigram.entry(tok.as_str()).or_default() += 1;
            }
            for pair in doc.windows(2) {
                *bigram.entry((pair[0].as_str(), pair[1].as_str())).or_default() += 1;
            }
        }
        let n = total as f64;
        let joined = bigram
            .into_iter()
            .filter(|&((a, b), c)| c >= min_count.max(1) && a != b && parts(a) + parts(b) <= max_parts)
            .filter(|&((a, b), c)| {
                let p_ab = c as f64 / n;
                let p_a = unigram[a] as f64 / n;
                let p_b = unigram[b] as f64 / n;
                let npmi = if p_ab >= 1.0 {
                    1.0
                } else {
                    (p_ab / (p_a * p_b)).ln() / -p_ab.ln()
                };
                npmi >= threshold
            })
            .map(|((a, b), _)| (a.to_owned(), b.to_owned()))
            .collect();
        Self { joined }
    }

    pub fn len(&self) -> usize {
        self.joined.len()
    }

    pub fn is_empty(&self) -> bool {
        self.joined.is_empty()
    }

    /// Joins learned pairs greedily from left to right.
    pub fn apply(&self, tokens: &[String]) -> Vec<String> {
        let mut out = Vec::with_capacity(tokens.len());
        let mut i = 0;
        while i < tokens.len() {
            if i + 1 < tokens.len() && self.joined.contains(&(tokens[i].clone(), tokens[i + 1].clone())) {
                out.push(format!("{}{}{}", tokens[i], PHRASE_JOINER, tokens[i + 1]));
                i += 2;
            } else {
                out.push(tokens[i].clone());
                i += 1;
            }
        }
        out
    }
}

/// In-vocabulary tokens of one article, in text order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizedDoc {
    pub article_id: String,
    pub tokens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vocabulary {
    /// Terms in lexicographic order.
    pub terms: Vec<String>,
    pub doc_freq: Vec<usize>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl Vocabulary {
    /// Builds a vocabulary of every term appearing in `docs`, without pruning.
    pub fn from_docs(docs: &[TokenizedDoc]) -> Self {
        Self::pruned(docs, 1, 1.0)
    }

    /// Keeps terms with `doc_freq >= min_df` and `doc_freq <= max_df_ratio * |docs|`.
    pub fn pruned(docs: &[TokenizedDoc], min_df: usize, max_df_ratio: f64) -> Self {
        let mut df: HashMap<&str, usize> = HashMap::new();
        for doc in docs {
            let unique: BTreeSet<&str> = doc.tokens.iter().map(String::as_str).collect();
            for t in unique {
                *df.entry(t).or_default() += 1;
            }
        }
        let max_df = max_df_ratio * docs.len() as f64;
        let mut kept: Vec<(&str, usize)> = df
            .into_iter()
            .filter(|&(_, f)| f >= min_df && f as f64 <= max_df)
            .collect();
        kept.sort_unstable();
        Self::from_terms(
            kept.iter().map(|(t, _)| (*t).to_owned()).collect(),
            kept.iter().map(|(_, f)| *f).collect(),
        )
    }

    pub fn from_terms(terms: Vec<String>, doc_freq: Vec<usize>) -> Self {
        let index = terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Self { terms, doc_freq, index }
    }

    pub fn id(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.index.contains_key(term)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreprocessConfig {
    pub min_df: usize,
    pub max_df_ratio: f64,
    /// NPMI threshold on the [-1, 1] scale for joining collocations.
    pub phrase_threshold: f64,
    pub phrase_min_count: usize,
    pub min_token_len: usize,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        Self {
            min_df: 15,
            max_df_ratio: 0.5,
            phrase_threshold: 0.5,
            phrase_min_count: 5,
            min_token_len: 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Preprocessed {
    pub docs: Vec<TokenizedDoc>,
    pub vocab: Vocabulary,
    /// Articles left with no in-vocabulary tokens.
    pub dropped_docs: usize,
    pub phrases_learned: usize,
}

/// Turns each article's combined share text into in-vocabulary tokens with
/// bigram and trigram collocations joined.
pub fn preprocess(
    corpus: &Corpus,
    stopwords: &StopWords,
    lemmatizer: &dyn Lemmatizer,
    config: &PreprocessConfig,
) -> Result<Preprocessed, TopicError> {
    let token_lists: Vec<Vec<String>> = corpus
        .articles
        .par_iter()
        .map(|a| tokenize(&a.combined_text, stopwords, lemmatizer, config.min_token_len))
        .collect();

    let bigrams = PhraseModel::learn(&token_lists, config.phrase_threshold, config.phrase_min_count, 2);
    let pass1: Vec<Vec<String>> = token_lists.iter().map(|t| bigrams.apply(t)).collect();
    let trigrams = PhraseModel::learn(&pass1, config.phrase_threshold, config.phrase_min_count, 3);
    let pass2: Vec<TokenizedDoc> = corpus
        .articles
        .iter()
        .zip(&pass1)
        .map(|(a, t)| TokenizedDoc {
            article_id: a.article_id.clone(),
            tokens: trigrams.apply(t),
        })
        .collect();

    let vocab = Vocabulary::pruned(&pass2, config.min_df, config.max_df_ratio);
    let total = pass2.len();
    let docs: Vec<TokenizedDoc> = pass2
        .into_iter()
        .map(|d| TokenizedDoc {
            tokens: d.tokens.into_iter().filter(|t| vocab.contains(t)).collect(),
            article_id: d.article_id,
        })
        .filter(|d| !d.tokens.is_empty())
        .collect();
    let dropped_docs = total - docs.len();
    if dropped_docs > 0 {
        log::warn!("{dropped_docs} article(s) have no tokens left after vocabulary pruning and are excluded from topic modelling");
    }
    if docs.is_empty() || vocab.is_empty() {
        return Err(TopicError::EmptyCorpusAfterPreprocessing);
    }
    Ok(Preprocessed {
        docs,
        vocab,
        dropped_docs,
        phrases_learned: bigrams.len() + trigrams.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lemma(w: &str) -> String {
        SuffixLemmatizer.lemmatize(w)
    }

    #[test]
    fn cleaning_rules() {
        let toks = tokenize(
            "Read this! https://x.y #science e@x.com",
            &StopWords::english(),
            &SuffixLemmatizer,
            2,
        );
        assert_eq!(toks, vec!["read"]);
        assert_eq!(
            clean_text("Don't visit www.example.org, it's (fine).", 2),
            vec!["dont", "visit", "its", "fine"]
        );
        assert_eq!(clean_text("covid-19 in 2020", 2), vec!["covid", "in"]);
    }

    #[test]
    fn lemmatizer_forms() {
        let cases = [
            ("studies", "study"),
            ("studied", "study"),
            ("cells", "cell"),
            ("genes", "gene"),
            ("boxes", "box"),
            ("classes", "class"),
            ("virus", "virus"),
            ("analysis", "analysis"),
            ("running", "run"),
            ("hoping", "hope"),
            ("reading", "read"),
            ("increased", "increase"),
            ("increasing", "increase"),
            ("increases", "increase"),
            ("changes", "change"),
            ("changing", "change"),
            ("caused", "cause"),
            ("produced", "produce"),
            ("improving", "improve"),
            ("vaccines", "vaccine"),
            ("species", "species"),
            ("children", "child"),
            ("agreed", "agree"),
            ("need", "need"),
            ("climate_changes", "climate_change"),
        ];
        for (word, want) in cases {
            assert_eq!(lemma(word), want, "{word}");
        }
    }

    #[test]
    fn custom_stopwords() {
        let sw = StopWords::from_words(["Science", "it's"]);
        assert!(sw.contains("science") && sw.contains("its"));
        let toks = tokenize("science rocks", &sw, &IdentityLemmatizer, 2);
        assert_eq!(toks, vec!["rocks"]);
    }

    #[test]
    fn collocations_join() {
        let mut docs = Vec::new();
        for i in 0..40 {
            let mut d = vec!["climate".to_string(), "change".to_string(), format!("filler{i}")];
            d.push(format!("other{}", i % 7));
            docs.push(d);
        }
        let model = PhraseModel::learn(&docs, 0.5, 5, 2);
        let out = model.apply(&docs[0]);
        assert_eq!(out[0], "climate_change");
        assert_eq!(out.len(), 3);

        // Three-word phrases come from a second pass over joined tokens.
        let tri: Vec<Vec<String>> = (0..30)
            .map(|i| vec!["immune".into(), "system".into(), "response".into(), format!("w{i}")])
            .collect();
        let first = PhraseModel::learn(&tri, 0.5, 5, 2);
        let pass1: Vec<Vec<String>> = tri.iter().map(|d| first.apply(d)).collect();
        let second = PhraseModel::learn(&pass1, 0.5, 5, 3);
        assert_eq!(second.apply(&pass1[0])[0], "immune_system_response");
    }

    #[test]
    fn vocabulary_thresholds() {
        let mut docs = Vec::new();
        for i in 0..40 {
            let mut tokens = vec!["common".to_string()];
            if i < 14 {
                tokens.push("rare".into());
            }
            if i < 15 {
                tokens.push("edge".into());
            }
            if i < 20 {
                tokens.push("half".into());
            }
            if i < 21 {
                tokens.push("over".into());
            }
            docs.push(TokenizedDoc {
                article_id: format!("d{i}"),
                tokens,
            });
        }
        let v = Vocabulary::pruned(&docs, 15, 0.5);
        assert_eq!(v.terms, vec!["edge", "half"]);
        assert_eq!(v.doc_freq, vec![15, 20]);
        assert_eq!(v.id("half"), Some(1));
    }

    proptest! {
        #[test]
        fn lemmatizer_idempotent(word in "[a-z]{1,12}") {
            let once = lemma(&word);
            prop_assert_eq!(lemma(&once), once);
        }

        #[test]
        fn tokenize_idempotent(words in prop::collection::vec("[A-Za-z']{1,10}", 0..20)) {
            let sw = StopWords::english();
            let text = words.join(" ");
            let first = tokenize(&text, &sw, &SuffixLemmatizer, 2);
            let again = tokenize(&first.join(" "), &sw, &SuffixLemmatizer, 2);
            prop_assert_eq!(again, first);
        }

        #[test]
        fn pruning_bounds(
            docs in prop::collection::vec(prop::collection::vec(0u8..12, 0..8), 1..30),
            min_df in 1usize..6,
            ratio in 0.1f64..1.0,
        ) {
            let docs: Vec<TokenizedDoc> = docs.into_iter().enumerate()
                .map(|(i, t)| TokenizedDoc { article_id: i.to_string(), tokens: t.into_iter().map(|w| format!("w{w}")).collect() })
                .collect();
            let v = Vocabulary::pruned(&docs, min_df, ratio);
            for (term, &df) in v.terms.iter().zip(&v.doc_freq) {
                let actual = docs.iter().filter(|d| d.tokens.contains(term)).count();
                prop_assert_eq!(actual, df);
                prop_assert!(df >= min_df);
                prop_assert!(df as f64 <= ratio * docs.len() as f64);
            }
        }
    }
}
