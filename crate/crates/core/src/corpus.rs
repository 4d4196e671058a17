//! Participant corpus: loading, validation, text preprocessing, and
//! symptom-group stratification.
//!
//! The corpus file is UTF-8 line-delimited JSON, one participant per line:
//! `id` (string), `responses` (array of exactly 5 strings), `gold_items`
//! (object mapping `BFI_1`..`BFI_10` to integers 1-5), `symptom_count`
//! (non-negative integer). Field names are normative.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::psychometrics::{ItemId, ItemScores, ScoreError};

/// The embedded English stopword list (one word per line).
pub const ENGLISH_STOPWORDS: &str = include_str!("../assets/stopwords_en.txt");

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("failed to read corpus {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: malformed record: {message}")]
    MalformedLine { line: usize, message: String },
    #[error("line {line} ({id}): responses count {count}, expected 5")]
    ResponseCount { line: usize, id: String, count: usize },
    #[error("line {line} ({id}): response {index} is empty")]
    EmptyResponse { line: usize, id: String, index: usize },
    #[error("line {line} ({id}): gold item {item} out of Likert range: {source}")]
    GoldItem {
        line: usize,
        id: String,
        item: ItemId,
        source: ScoreError,
    },
    #[error("line {line}: duplicate participant id {id}")]
    DuplicateId { line: usize, id: String },
    #[error("corpus {path} contains no participants")]
    Empty { path: String },
}

/// Binary depressive-symptom cohort.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymptomGroup {
    Present,
    Absent,
}

impl fmt::Display for SymptomGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymptomGroup::Present => f.write_str("SymptomPresent"),
            SymptomGroup::Absent => f.write_str("SymptomAbsent"),
        }
    }
}

/// One interview participant: five ordered responses, gold item scores,
/// and a depressive-symptom count.
#[derive(Debug, Clone, PartialEq)]
pub struct Participant {
    pub id: String,
    pub responses: [String; 5],
    pub gold_items: ItemScores,
    pub symptom_count: u32,
}

impl Participant {
    /// Present iff at least one depressive symptom was reported.
    pub fn symptom_group(&self) -> SymptomGroup {
        if self.symptom_count >= 1 {
            SymptomGroup::Present
        } else {
            SymptomGroup::Absent
        }
    }
}

/// Present iff the participant reports at least one symptom.
pub fn classify_symptom_group(participant: &Participant) -> SymptomGroup {
    participant.symptom_group()
}

/// A validated, immutable participant corpus.
#[derive(Debug, Clone)]
pub struct Corpus {
    participants: Vec<Participant>,
    source_path: String,
    digest: String,
}

impl Corpus {
    /// Loads and validates a corpus file.
    pub fn load(path: &Path) -> Result<Corpus, CorpusError> {
        let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Corpus::parse(&text, &path.display().to_string())
    }

    /// Parses corpus text (used by `load` and by round-trip tests).
    pub fn parse(text: &str, source_path: &str) -> Result<Corpus, CorpusError> {
        let mut participants = Vec::new();
        let mut seen_ids: HashSet<String> = HashSet::new();
        for (index, raw_line) in text.lines().enumerate() {
            let line = index + 1;
            if raw_line.trim().is_empty() {
                continue;
            }
            let record: RawRecord =
                serde_json::from_str(raw_line).map_err(|e| CorpusError::MalformedLine {
                    line,
                    message: e.to_string(),
                })?;
            let participant = record.validate(line)?;
            if !seen_ids.insert(participant.id.clone()) {
                return Err(CorpusError::DuplicateId {
                    line,
                    id: participant.id,
                });
            }
            participants.push(participant);
        }
        if participants.is_empty() {
            return Err(CorpusError::Empty {
                path: source_path.to_string(),
            });
        }
        Ok(Corpus {
            participants,
            source_path: source_path.to_string(),
            digest: content_digest(text),
        })
    }

    pub fn participants(&self) -> &[Participant] {
        &self.participants
    }

    pub fn len(&self) -> usize {
        self.participants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.participants.is_empty()
    }

    pub fn source_path(&self) -> &str {
        &self.source_path
    }

    /// SHA-256 digest of the corpus file content, `sha256:<hex>`.
    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn get(&self, id: &str) -> Option<&Participant> {
        self.participants.iter().find(|p| p.id == id)
    }

    /// Serializes back to the normative line-delimited format.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for participant in &self.participants {
            let record = RawRecord::from_participant(participant);
            out.push_str(&serde_json::to_string(&record).expect("record serializes"));
            out.push('\n');
        }
        out
    }
}

/// SHA-256 of arbitrary content, rendered as `sha256:<hex>`.
pub fn content_digest(content: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(content.as_bytes());
    format!("sha256:{}", hex::encode(hasher.finalize()))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    id: String,
    responses: Vec<String>,
    gold_items: RawItems,
    symptom_count: u32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawItems {
    #[serde(rename = "BFI_1")]
    bfi_1: f64,
    #[serde(rename = "BFI_2")]
    bfi_2: f64,
    #[serde(rename = "BFI_3")]
    bfi_3: f64,
    #[serde(rename = "BFI_4")]
    bfi_4: f64,
    #[serde(rename = "BFI_5")]
    bfi_5: f64,
    #[serde(rename = "BFI_6")]
    bfi_6: f64,
    #[serde(rename = "BFI_7")]
    bfi_7: f64,
    #[serde(rename = "BFI_8")]
    bfi_8: f64,
    #[serde(rename = "BFI_9")]
    bfi_9: f64,
    #[serde(rename = "BFI_10")]
    bfi_10: f64,
}

impl RawItems {
    fn as_array(&self) -> [f64; 10] {
        [
            self.bfi_1, self.bfi_2, self.bfi_3, self.bfi_4, self.bfi_5, self.bfi_6, self.bfi_7,
            self.bfi_8, self.bfi_9, self.bfi_10,
        ]
    }

    fn from_array(values: [f64; 10]) -> RawItems {
        RawItems {
            bfi_1: values[0],
            bfi_2: values[1],
            bfi_3: values[2],
            bfi_4: values[3],
            bfi_5: values[4],
            bfi_6: values[5],
            bfi_7: values[6],
            bfi_8: values[7],
            bfi_9: values[8],
            bfi_10: values[9],
        }
    }
}

impl RawRecord {
    fn validate(self, line: usize) -> Result<Participant, CorpusError> {
        if self.responses.len() != 5 {
            return Err(CorpusError::ResponseCount {
                line,
                id: self.id,
                count: self.responses.len(),
            });
        }
        for (index, response) in self.responses.iter().enumerate() {
            if response.trim().is_empty() {
                return Err(CorpusError::EmptyResponse {
                    line,
                    id: self.id,
                    index: index + 1,
                });
            }
        }
        let values = self.gold_items.as_array();
        for (item, &value) in ItemId::ALL.iter().zip(values.iter()) {
            crate::psychometrics::validate_likert(value, true).map_err(|source| {
                CorpusError::GoldItem {
                    line,
                    id: self.id.clone(),
                    item: *item,
                    source,
                }
            })?;
        }
        let gold_items = ItemScores::gold(values).expect("items validated above");
        let responses: [String; 5] = self
            .responses
            .try_into()
            .expect("length checked above");
        Ok(Participant {
            id: self.id,
            responses,
            gold_items,
            symptom_count: self.symptom_count,
        })
    }

    fn from_participant(participant: &Participant) -> RawRecord {
        RawRecord {
            id: participant.id.clone(),
            responses: participant.responses.to_vec(),
            gold_items: RawItems::from_array(participant.gold_items.as_array()),
            symptom_count: participant.symptom_count,
        }
    }
}

/// Text normalization options. Each stage toggles independently; runs of
/// whitespace always collapse to single spaces.
#[derive(Debug, Clone)]
pub struct PreprocessOptions {
    pub lowercase: bool,
    pub remove_stopwords: bool,
    pub strip_punctuation: bool,
    pub stopwords: HashSet<String>,
}

impl PreprocessOptions {
    /// All stages enabled with the embedded English stopword list.
    pub fn enabled() -> PreprocessOptions {
        PreprocessOptions {
            lowercase: true,
            remove_stopwords: true,
            strip_punctuation: true,
            stopwords: default_stopwords(),
        }
    }

    /// All stages disabled (identity up to whitespace collapsing).
    pub fn disabled() -> PreprocessOptions {
        PreprocessOptions {
            lowercase: false,
            remove_stopwords: false,
            strip_punctuation: false,
            stopwords: HashSet::new(),
        }
    }
}

/// The embedded stopword list as a set.
pub fn default_stopwords() -> HashSet<String> {
    ENGLISH_STOPWORDS
        .lines()
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(str::to_string)
        .collect()
}

/// Normalizes text: lowercase, then punctuation stripping, then whole-token
/// stopword removal, then whitespace collapsing. Deterministic and idempotent.
pub fn preprocess_text(text: &str, options: &PreprocessOptions) -> String {
    let mut current = if options.lowercase {
        text.to_lowercase()
    } else {
        text.to_string()
    };
    if options.strip_punctuation {
        current = current
            .chars()
            .filter(|c| c.is_alphanumeric() || c.is_whitespace())
            .collect();
    }
    let tokens = current
        .split_whitespace()
        .filter(|token| !(options.remove_stopwords && options.stopwords.contains(*token)));
    tokens.collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record_line(id: &str, symptom_count: i64) -> String {
        format!(
            concat!(
                r#"{{"id":"{}","responses":["r1","r2","r3","r4","r5"],"#,
                r#""gold_items":{{"BFI_1":3,"BFI_2":3,"BFI_3":3,"BFI_4":3,"BFI_5":3,"#,
                r#""BFI_6":3,"BFI_7":3,"BFI_8":3,"BFI_9":3,"BFI_10":3}},"symptom_count":{}}}"#
            ),
            id, symptom_count
        )
    }

    #[test]
    fn loads_two_wellformed_records() {
        let text = format!("{}\n{}\n", record_line("P1", 0), record_line("P2", 2));
        let corpus = Corpus::parse(&text, "test").unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.participants()[0].id, "P1");
        assert_eq!(corpus.participants()[1].symptom_count, 2);
    }

    #[test]
    fn rejects_four_responses() {
        let line = record_line("P1", 0).replace(r#","r5""#, "");
        let err = Corpus::parse(&line, "test").unwrap_err();
        match err {
            CorpusError::ResponseCount { count, .. } => assert_eq!(count, 4),
            other => panic!("unexpected error: {other}"),
        }
        assert!(err.to_string().contains("responses count 4, expected 5"));
    }

    #[test]
    fn rejects_item_out_of_likert_range() {
        let line = record_line("P1", 0).replace(r#""BFI_3":3"#, r#""BFI_3":6"#);
        let err = Corpus::parse(&line, "test").unwrap_err();
        match &err {
            CorpusError::GoldItem { item, .. } => assert_eq!(item.label(), "BFI_3"),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn rejects_fractional_gold_item() {
        let line = record_line("P1", 0).replace(r#""BFI_2":3"#, r#""BFI_2":3.5"#);
        assert!(matches!(
            Corpus::parse(&line, "test"),
            Err(CorpusError::GoldItem { .. })
        ));
    }

    #[test]
    fn rejects_duplicate_ids() {
        let text = format!("{}\n{}\n", record_line("P1", 0), record_line("P1", 1));
        assert!(matches!(
            Corpus::parse(&text, "test"),
            Err(CorpusError::DuplicateId { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_unknown_field_with_line_number() {
        let good = record_line("P1", 0);
        let bad = record_line("P2", 0)
            .replace(r#""symptom_count":0"#, r#""symptom_count":0,"extra":1"#);
        let text = format!("{good}\n{bad}");
        match Corpus::parse(&text, "test").unwrap_err() {
            CorpusError::MalformedLine { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("extra"));
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn rejects_missing_item_field() {
        let line = record_line("P1", 0).replace(r#""BFI_7":3,"#, "");
        match Corpus::parse(&line, "test").unwrap_err() {
            CorpusError::MalformedLine { message, .. } => {
                assert!(message.contains("BFI_7"), "message was: {message}");
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn rejects_negative_symptom_count() {
        let line = record_line("P1", -1);
        assert!(matches!(
            Corpus::parse(&line, "test"),
            Err(CorpusError::MalformedLine { line: 1, .. })
        ));
    }

    #[test]
    fn rejects_empty_corpus() {
        assert!(matches!(
            Corpus::parse("\n\n", "test"),
            Err(CorpusError::Empty { .. })
        ));
    }

    #[test]
    fn round_trips_through_jsonl() {
        let text = format!("{}\n{}\n", record_line("P1", 0), record_line("P2", 3));
        let corpus = Corpus::parse(&text, "test").unwrap();
        let rewritten = corpus.to_jsonl();
        let reloaded = Corpus::parse(&rewritten, "test").unwrap();
        assert_eq!(corpus.participants(), reloaded.participants());
    }

    #[test]
    fn symptom_group_thresholds() {
        let text = format!(
            "{}\n{}\n{}\n",
            record_line("P1", 0),
            record_line("P2", 1),
            record_line("P3", 7)
        );
        let corpus = Corpus::parse(&text, "test").unwrap();
        let groups: Vec<SymptomGroup> = corpus
            .participants()
            .iter()
            .map(classify_symptom_group)
            .collect();
        assert_eq!(
            groups,
            vec![
                SymptomGroup::Absent,
                SymptomGroup::Present,
                SymptomGroup::Present
            ]
        );
    }

    #[test]
    fn preprocess_applies_rules_in_order() {
        let mut options = PreprocessOptions::enabled();
        options.stopwords = ["i".to_string()].into_iter().collect();
        assert_eq!(preprocess_text("I Went Running!", &options), "went running");
    }

    #[test]
    fn preprocess_empty_input() {
        assert_eq!(preprocess_text("", &PreprocessOptions::enabled()), "");
    }

    #[test]
    fn preprocess_removes_all_stopword_tokens() {
        let mut options = PreprocessOptions::enabled();
        options.stopwords = ["the".to_string()].into_iter().collect();
        assert_eq!(preprocess_text("The THE the", &options), "");
    }

    #[test]
    fn preprocess_disabled_is_identity_up_to_whitespace() {
        let options = PreprocessOptions::disabled();
        assert_eq!(
            preprocess_text("Keep  CASE and   punct!", &options),
            "Keep CASE and punct!"
        );
    }

    #[test]
    fn default_stopword_list_size() {
        assert_eq!(default_stopwords().len(), 179);
    }

    #[test]
    fn symptom_groups_partition_the_corpus() {
        let text = (1..=8)
            .map(|i| record_line(&format!("P{i}"), i64::from(i % 3)))
            .collect::<Vec<_>>()
            .join("\n");
        let corpus = Corpus::parse(&text, "test").unwrap();
        let present = corpus
            .participants()
            .iter()
            .filter(|p| p.symptom_group() == SymptomGroup::Present)
            .count();
        let absent = corpus
            .participants()
            .iter()
            .filter(|p| p.symptom_group() == SymptomGroup::Absent)
            .count();
        assert_eq!(present + absent, corpus.len());
    }
}
