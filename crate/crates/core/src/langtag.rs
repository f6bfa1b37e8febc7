//! Script-based language classification, dictionary-driven Mandarin word
//! segmentation and part-of-speech lookup.
//!
//! Classification is deliberately blunt: a token is English as soon as it
//! contains one ASCII letter, otherwise Mandarin. English is the guest
//! language here, so any Latin content marks a guest segment; digits and
//! punctuation stay with the host language.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LangtagError {
    #[error("cannot classify an empty token")]
    EmptyToken,
}

/// Token language. `Cn` is the host (Mandarin), `En` the guest (English).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lang {
    Cn,
    En,
}

impl fmt::Display for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lang::Cn => write!(f, "CN"),
            Lang::En => write!(f, "EN"),
        }
    }
}

/// Classify a whitespace-free token: `En` iff it contains at least one
/// ASCII letter, `Cn` otherwise.
pub fn classify_token(text: &str) -> Result<Lang, LangtagError> {
    if text.is_empty() {
        return Err(LangtagError::EmptyToken);
    }
    if text.chars().any(|c| c.is_ascii_alphabetic()) {
        Ok(Lang::En)
    } else {
        Ok(Lang::Cn)
    }
}

/// Word list for greedy longest-match segmentation.
///
/// Any single character is an implicit fallback entry, so segmentation
/// always succeeds and the output always concatenates back to the input.
#[derive(Debug, Clone, Default)]
pub struct SegmenterDict {
    entries: HashSet<String>,
    max_len: usize,
}

impl SegmenterDict {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut entries = HashSet::new();
        let mut max_len = 1;
        for w in words {
            let w = w.into();
            if w.is_empty() {
                continue;
            }
            max_len = max_len.max(w.chars().count());
            entries.insert(w);
        }
        Self { entries, max_len }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains(word)
    }

    /// Longest entry, in codepoints. At least 1 (the single-char fallback).
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Greedy longest-match segmentation, left to right. Each output word is
/// either a dictionary entry or a single character.
pub fn segment(text: &str, dict: &SegmenterDict) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut words = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let limit = dict.max_len().min(chars.len() - pos);
        let mut take = 1;
        for len in (2..=limit).rev() {
            let candidate: String = chars[pos..pos + len].iter().collect();
            if dict.contains(&candidate) {
                take = len;
                break;
            }
        }
        words.push(chars[pos..pos + take].iter().collect());
        pos += take;
    }
    words
}

/// Part-of-speech tags. Only noun/verb matter for augmentation; everything
/// else collapses into `Other`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosTag {
    Noun,
    Verb,
    Other,
}

impl PosTag {
    pub fn parse(s: &str) -> Option<PosTag> {
        match s {
            "noun" => Some(PosTag::Noun),
            "verb" => Some(PosTag::Verb),
            "other" => Some(PosTag::Other),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PosTag::Noun => "noun",
            PosTag::Verb => "verb",
            PosTag::Other => "other",
        }
    }
}

/// Word → part-of-speech lookup table.
#[derive(Debug, Clone, Default)]
pub struct PosTable {
    map: BTreeMap<String, PosTag>,
}

impl PosTable {
    pub fn new<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, PosTag)>,
        S: Into<String>,
    {
        Self {
            map: entries.into_iter().map(|(w, t)| (w.into(), t)).collect(),
        }
    }

    pub fn insert(&mut self, word: impl Into<String>, tag: PosTag) {
        self.map.insert(word.into(), tag);
    }
}

/// Table lookup; unknown words are `Other`.
pub fn pos_of(word: &str, table: &PosTable) -> PosTag {
    table.map.get(word).copied().unwrap_or(PosTag::Other)
}
