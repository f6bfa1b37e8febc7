//! Turn monolingual Mandarin transcripts into code-switching transcripts.
//!
//! Two transforms, each touching exactly one word per sentence: word
//! translation swaps one noun or verb for its English dictionary
//! translation, word insertion splices one English lexicon word into a
//! random gap. Randomness comes from per-record streams keyed by line id,
//! so regenerating any subset of lines, in any order, reproduces the same
//! output for the same master seed.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::corpus::Token;
use crate::langtag::{classify_token, segment, Lang, PosTag, SegmenterDict};
use crate::rng::Seeder;

#[derive(Debug, Error)]
pub enum TextgenError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{file}:{line}: {detail}")]
    BadLexicon { file: String, line: usize, detail: String },
    #[error("insertion lexicon has no word with count >= {min_count}")]
    EmptySupport { min_count: u64 },
    #[error("{file}:{line}: {detail}")]
    BadTextLine { file: String, line: usize, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilingualEntry {
    pub pos: PosTag,
    pub translation: String,
}

/// Mandarin to English dictionary with part-of-speech tags. Multi-word
/// translations are stored with underscores joining the words and expand
/// to several tokens on emission.
#[derive(Debug, Clone, Default)]
pub struct BilingualLexicon {
    entries: BTreeMap<String, BilingualEntry>,
}

fn validate_translation(translation: &str) -> Result<(), String> {
    if translation.is_empty() {
        return Err("empty translation".into());
    }
    if let Some(c) = translation
        .chars()
        .find(|c| !(c.is_ascii_alphanumeric() || matches!(c, '\'' | '-' | '_')))
    {
        return Err(format!("translation contains {c:?}"));
    }
    for part in translation.split('_') {
        if part.is_empty() {
            return Err("empty word around underscore".into());
        }
        if !part.chars().any(|c| c.is_ascii_alphabetic()) {
            return Err(format!("translation word {part:?} has no letters"));
        }
    }
    Ok(())
}

impl BilingualLexicon {
    pub fn new(
        entries: impl IntoIterator<Item = (String, BilingualEntry)>,
    ) -> Result<Self, TextgenError> {
        let mut map = BTreeMap::new();
        for (word, entry) in entries {
            let bad = |detail: String| TextgenError::BadLexicon {
                file: "lexicon".into(),
                line: 0,
                detail,
            };
            if word.is_empty() || classify_token(&word) != Ok(Lang::Cn) {
                return Err(bad(format!("word {word:?} is not a Mandarin word")));
            }
            validate_translation(&entry.translation)
                .map_err(|d| bad(format!("{word}: {d}")))?;
            if map.insert(word.clone(), entry).is_some() {
                return Err(bad(format!("duplicate word {word:?}")));
            }
        }
        Ok(Self { entries: map })
    }

    /// Parse TSV lines `<mandarin-word>\t<pos>\t<english-translation>`.
    pub fn from_tsv(path: &Path) -> Result<Self, TextgenError> {
        let file = path.display().to_string();
        let mut entries = BTreeMap::new();
        for (i, line) in non_empty_lines(path)?.iter().enumerate() {
            let bad = |detail: String| TextgenError::BadLexicon {
                file: file.clone(),
                line: i + 1,
                detail,
            };
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 || fields.iter().any(|f| f.is_empty()) {
                return Err(bad("expected 3 tab-separated fields".into()));
            }
            let (word, pos_s, translation) = (fields[0], fields[1], fields[2]);
            if classify_token(word) != Ok(Lang::Cn) {
                return Err(bad(format!("word {word:?} is not a Mandarin word")));
            }
            let pos = PosTag::parse(pos_s)
                .ok_or_else(|| bad(format!("unknown part-of-speech tag {pos_s:?}")))?;
            validate_translation(translation).map_err(&bad)?;
            let prev = entries.insert(
                word.to_string(),
                BilingualEntry { pos, translation: translation.to_string() },
            );
            if prev.is_some() {
                return Err(bad(format!("duplicate word {word:?}")));
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, word: &str) -> Option<&BilingualEntry> {
        self.entries.get(word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Segmentation dictionary over the lexicon's Mandarin words.
    pub fn segmenter_dict(&self) -> SegmenterDict {
        SegmenterDict::new(self.entries.keys().cloned())
    }
}

/// English word list filtered by a frequency threshold; sampling is
/// uniform over the words whose count reaches `min_count`.
#[derive(Debug, Clone)]
pub struct InsertionLexicon {
    support: Vec<String>,
    min_count: u64,
}

impl InsertionLexicon {
    pub fn new(
        counts: impl IntoIterator<Item = (String, u64)>,
        min_count: u64,
    ) -> Result<Self, TextgenError> {
        let mut support: Vec<String> = counts
            .into_iter()
            .filter(|(_, c)| *c >= min_count)
            .map(|(w, _)| w)
            .collect();
        support.sort();
        support.dedup();
        if support.is_empty() {
            return Err(TextgenError::EmptySupport { min_count });
        }
        Ok(Self { support, min_count })
    }

    /// Parse TSV lines `<word>\t<count>` and keep words with
    /// `count >= min_count`.
    pub fn from_tsv(path: &Path, min_count: u64) -> Result<Self, TextgenError> {
        let file = path.display().to_string();
        let mut counts = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (i, line) in non_empty_lines(path)?.iter().enumerate() {
            let bad = |detail: String| TextgenError::BadLexicon {
                file: file.clone(),
                line: i + 1,
                detail,
            };
            let (word, count_s) = line
                .split_once('\t')
                .ok_or_else(|| bad("expected 2 tab-separated fields".into()))?;
            if word.is_empty() || word.chars().any(char::is_whitespace) {
                return Err(bad(format!("bad word {word:?}")));
            }
            if !word.chars().any(|c| c.is_ascii_alphabetic()) {
                return Err(bad(format!("word {word:?} is not an English word")));
            }
            let count: u64 = count_s
                .parse()
                .ok()
                .filter(|&c| c > 0)
                .ok_or_else(|| bad(format!("bad count {count_s:?}")))?;
            if !seen.insert(word.to_string()) {
                return Err(bad(format!("duplicate word {word:?}")));
            }
            counts.push((word.to_string(), count));
        }
        Self::new(counts, min_count)
    }

    pub fn words(&self) -> &[String] {
        &self.support
    }

    pub fn min_count(&self) -> u64 {
        self.min_count
    }
}

fn non_empty_lines(path: &Path) -> Result<Vec<String>, TextgenError> {
    Ok(fs::read_to_string(path)?
        .split('\n')
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

fn token(text: &str) -> Token {
    Token::new(text).expect("segments and translations are non-empty")
}

/// Replace one randomly chosen noun or verb with its English translation.
/// Returns `None` when the segmentation contains no translatable word.
pub fn word_translate(
    sentence: &str,
    lexicon: &BilingualLexicon,
    dict: &SegmenterDict,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Token>> {
    let segs = segment(sentence, dict);
    let candidates: Vec<usize> = segs
        .iter()
        .enumerate()
        .filter(|(_, w)| {
            lexicon
                .get(w)
                .is_some_and(|e| matches!(e.pos, PosTag::Noun | PosTag::Verb))
        })
        .map(|(i, _)| i)
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let chosen = candidates[rng.gen_range(0..candidates.len())];

    let mut out = Vec::with_capacity(segs.len() + 1);
    for (i, seg) in segs.iter().enumerate() {
        if i == chosen {
            let translation = &lexicon.get(seg).unwrap().translation;
            out.extend(translation.split('_').map(token));
        } else {
            out.push(token(seg));
        }
    }
    Some(out)
}

/// Insert one uniformly drawn English word into one uniformly drawn gap
/// (before, between or after the segmented words). The word is drawn
/// first, then the gap.
pub fn word_insert(
    sentence: &str,
    lexicon: &InsertionLexicon,
    dict: &SegmenterDict,
    rng: &mut ChaCha8Rng,
) -> Vec<Token> {
    let segs = segment(sentence, dict);
    let word = &lexicon.words()[rng.gen_range(0..lexicon.words().len())];
    let gap = rng.gen_range(0..=segs.len());

    let mut out = Vec::with_capacity(segs.len() + 1);
    out.extend(segs[..gap].iter().map(|s| token(s)));
    out.push(token(word));
    out.extend(segs[gap..].iter().map(|s| token(s)));
    out
}

pub enum Transform<'a> {
    Translate { lexicon: &'a BilingualLexicon, dict: &'a SegmenterDict },
    Insert { lexicon: &'a InsertionLexicon, dict: &'a SegmenterDict },
}

impl Transform<'_> {
    fn id_suffix(&self) -> &'static str {
        match self {
            Transform::Translate { .. } => "_wt",
            Transform::Insert { .. } => "_wi",
        }
    }

    fn apply(&self, sentence: &str, rng: &mut ChaCha8Rng) -> Option<Vec<Token>> {
        match self {
            Transform::Translate { lexicon, dict } => word_translate(sentence, lexicon, dict, rng),
            Transform::Insert { lexicon, dict } => Some(word_insert(sentence, lexicon, dict, rng)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedText {
    /// `(generated id, tokens)` in input line order.
    pub records: Vec<(String, Vec<Token>)>,
    /// Lines that were not eligible (no candidate, empty, or not
    /// monolingual Mandarin).
    pub skipped: usize,
}

/// Apply a transform to each line of a `text`-format file of Mandarin
/// transcripts. The sentence is the concatenation of the line's tokens.
/// Lines with no tokens, lines containing non-Mandarin tokens and lines
/// the transform declines are skipped. Each line draws from its own
/// stream keyed by the line id, so output does not depend on processing
/// order; at most `max_n` results are emitted, truncated in input order.
pub fn generate_corpus_text(
    input: &Path,
    transform: &Transform,
    max_n: Option<usize>,
    seeder: &Seeder,
) -> Result<GeneratedText, TextgenError> {
    let file = input.display().to_string();
    let limit = max_n.unwrap_or(usize::MAX);
    let mut records = Vec::new();
    let mut skipped = 0usize;

    for (i, line) in non_empty_lines(input)?.iter().enumerate() {
        if records.len() >= limit {
            break;
        }
        let bad = |detail: String| TextgenError::BadTextLine {
            file: file.clone(),
            line: i + 1,
            detail,
        };
        let (id, rest) = match line.split_once(' ') {
            Some((id, rest)) if !id.is_empty() && !rest.is_empty() => (id, rest),
            Some(_) => return Err(bad("empty field".into())),
            None => (line.as_str(), ""),
        };
        let words: Vec<&str> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(' ').collect()
        };
        if words.iter().any(|w| w.is_empty()) {
            return Err(bad("consecutive spaces".into()));
        }
        if words.is_empty() || words.iter().any(|w| classify_token(w) != Ok(Lang::Cn)) {
            skipped += 1;
            continue;
        }
        let sentence: String = words.concat();
        let mut rng = seeder.stream(id);
        match transform.apply(&sentence, &mut rng) {
            Some(tokens) => records.push((format!("{id}{}", transform.id_suffix()), tokens)),
            None => skipped += 1,
        }
    }
    Ok(GeneratedText { records, skipped })
}

/// Write `(id, tokens)` records in `text` manifest format.
pub fn write_text_file(path: &Path, records: &[(String, Vec<Token>)]) -> Result<(), TextgenError> {
    let mut out = String::new();
    for (id, tokens) in records {
        out.push_str(id);
        for tok in tokens {
            out.push(' ');
            out.push_str(&tok.text);
        }
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lexicon() -> BilingualLexicon {
        BilingualLexicon::new([
            (
                "天气".to_string(),
                BilingualEntry { pos: PosTag::Noun, translation: "weather".into() },
            ),
            (
                "查".to_string(),
                BilingualEntry { pos: PosTag::Verb, translation: "check".into() },
            ),
            (
                "的".to_string(),
                BilingualEntry { pos: PosTag::Other, translation: "of".into() },
            ),
            (
                "明天".to_string(),
                BilingualEntry { pos: PosTag::Noun, translation: "tomorrow".into() },
            ),
        ])
        .unwrap()
    }

    fn texts(tokens: &[Token]) -> Vec<&str> {
        tokens.iter().map(|t| t.text.as_str()).collect()
    }

    #[test]
    fn single_candidate_translation_is_forced() {
        let lex = BilingualLexicon::new([(
            "天气".to_string(),
            BilingualEntry { pos: PosTag::Noun, translation: "weather".into() },
        )])
        .unwrap();
        let dict = SegmenterDict::new(["明天", "的", "天气"]);
        for seed in 0..20 {
            let mut rng = Seeder::new(seed).stream("u1");
            let out = word_translate("明天的天气", &lex, &dict, &mut rng).unwrap();
            assert_eq!(texts(&out), vec!["明天", "的", "weather"]);
            assert_eq!(out[2].lang, Lang::En);
            assert_eq!(out[0].lang, Lang::Cn);
        }
    }

    #[test]
    fn sentence_without_candidates_is_declined() {
        let lex = BilingualLexicon::new([(
            "天气".to_string(),
            BilingualEntry { pos: PosTag::Noun, translation: "weather".into() },
        )])
        .unwrap();
        let dict = SegmenterDict::new(["你", "的"]);
        let mut rng = Seeder::new(1).stream("u1");
        assert_eq!(word_translate("你的", &lex, &dict, &mut rng), None);
    }

    #[test]
    fn other_pos_words_are_not_candidates() {
        let lex = lexicon();
        let dict = lex.segmenter_dict();
        let mut rng = Seeder::new(3).stream("u9");
        let out = word_translate("明天的", &lex, &dict, &mut rng).unwrap();
        assert_eq!(texts(&out), vec!["tomorrow", "的"]);
    }

    #[test]
    fn two_candidate_choice_is_roughly_uniform() {
        let lex = lexicon();
        let dict = lex.segmenter_dict();
        let mut check_count = 0u32;
        let trials = 2_000u64;
        for seed in 0..trials {
            let mut rng = Seeder::new(seed).stream("line1");
            let out = word_translate("查天气", &lex, &dict, &mut rng).unwrap();
            match texts(&out).as_slice() {
                ["check", "天气"] => check_count += 1,
                ["查", "weather"] => {}
                other => panic!("unexpected output {other:?}"),
            }
        }
        let freq = f64::from(check_count) / trials as f64;
        assert!((freq - 0.5).abs() < 0.05, "frequency {freq}");
    }

    #[test]
    fn translation_changes_exactly_one_position_and_flips_lang() {
        let lex = lexicon();
        let dict = lex.segmenter_dict();
        for seed in 0..50 {
            let mut rng = Seeder::new(seed).stream("k");
            let out = word_translate("明天查天气的天气", &lex, &dict, &mut rng).unwrap();
            let segs = segment("明天查天气的天气", &dict);
            assert_eq!(out.len(), segs.len());
            let diffs: Vec<usize> = (0..segs.len()).filter(|&i| out[i].text != segs[i]).collect();
            assert_eq!(diffs.len(), 1, "{:?}", texts(&out));
            assert_eq!(out[diffs[0]].lang, Lang::En);
            assert!(segs.iter().all(|s| classify_token(s) == Ok(Lang::Cn)));
        }
    }

    #[test]
    fn multi_word_translation_expands_to_tokens() {
        let lex = BilingualLexicon::new([(
            "发短信".to_string(),
            BilingualEntry { pos: PosTag::Verb, translation: "send_a_text".into() },
        )])
        .unwrap();
        let dict = lex.segmenter_dict();
        let mut rng = Seeder::new(7).stream("u1");
        let out = word_translate("发短信", &lex, &dict, &mut rng).unwrap();
        assert_eq!(texts(&out), vec!["send", "a", "text"]);
        assert!(out.iter().all(|t| t.lang == Lang::En));
    }

    #[test]
    fn insertion_output_is_one_of_the_valid_gaps() {
        let lexicon = InsertionLexicon::new([("hello".to_string(), 20)], 10).unwrap();
        let dict = SegmenterDict::new(["你", "好"]);
        let valid: [Vec<&str>; 3] = [
            vec!["hello", "你", "好"],
            vec!["你", "hello", "好"],
            vec!["你", "好", "hello"],
        ];
        for seed in 0..30 {
            let mut rng = Seeder::new(seed).stream("u1");
            let out = word_insert("你好", &lexicon, &dict, &mut rng);
            assert!(valid.contains(&texts(&out)), "{:?}", texts(&out));
        }
    }

    #[test]
    fn insertion_gap_choice_is_roughly_uniform() {
        let lexicon = InsertionLexicon::new([("ok".to_string(), 11)], 11).unwrap();
        let dict = SegmenterDict::new(["好"]);
        let trials = 2_000u64;
        let mut first = 0u32;
        for seed in 0..trials {
            let mut rng = Seeder::new(seed).stream("u1");
            let out = word_insert("好", &lexicon, &dict, &mut rng);
            if texts(&out) == vec!["ok", "好"] {
                first += 1;
            } else {
                assert_eq!(texts(&out), vec!["好", "ok"]);
            }
        }
        let freq = f64::from(first) / trials as f64;
        assert!((freq - 0.5).abs() < 0.05, "frequency {freq}");
    }

    #[test]
    fn insertion_preserves_the_cn_token_multiset() {
        let lexicon =
            InsertionLexicon::new([("cat".to_string(), 30), ("dog".to_string(), 30)], 10).unwrap();
        let dict = SegmenterDict::new(["今天", "很", "热"]);
        for seed in 0..20 {
            let mut rng = Seeder::new(seed).stream("x");
            let out = word_insert("今天很热", &lexicon, &dict, &mut rng);
            assert_eq!(out.len(), 4);
            let cn: Vec<&str> = out
                .iter()
                .filter(|t| t.lang == Lang::Cn)
                .map(|t| t.text.as_str())
                .collect();
            assert_eq!(cn, vec!["今天", "很", "热"]);
        }
    }

    #[test]
    fn empty_support_is_rejected_at_construction() {
        let err = InsertionLexicon::new([("rare".to_string(), 3)], 10).unwrap_err();
        assert!(matches!(err, TextgenError::EmptySupport { min_count: 10 }));
    }

    #[test]
    fn insertion_support_respects_threshold() {
        let lexicon = InsertionLexicon::new(
            [
                ("often".to_string(), 11),
                ("edge".to_string(), 10),
                ("rare".to_string(), 9),
            ],
            10,
        )
        .unwrap();
        assert_eq!(lexicon.words(), ["edge", "often"]);
        assert_eq!(lexicon.min_count(), 10);
    }

    #[test]
    fn bilingual_tsv_parses_and_validates() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("lex.tsv");
        fs::write(&p, "天气\tnoun\tweather\n查\tverb\tcheck\n的\tother\tof\n").unwrap();
        let lex = BilingualLexicon::from_tsv(&p).unwrap();
        assert_eq!(lex.len(), 3);
        assert_eq!(lex.get("天气").unwrap().translation, "weather");
        assert_eq!(lex.get("查").unwrap().pos, PosTag::Verb);
        let dict = lex.segmenter_dict();
        assert!(dict.contains("天气") && dict.contains("的"));
    }

    #[test]
    fn bad_bilingual_rows_report_line_numbers() {
        for (content, needle) in [
            ("天气\tnoun\n", "3 tab-separated"),
            ("hello\tnoun\tweather\n", "not a Mandarin word"),
            ("天气\tadj\tnice\n", "unknown part-of-speech"),
            ("天气\tnoun\twea ther\n", "contains"),
            ("天气\tnoun\t_bad\n", "underscore"),
            ("天气\tnoun\t123\n", "no letters"),
            ("天气\tnoun\tweather\n天气\tnoun\tclimate\n", "duplicate"),
        ] {
            let dir = tempfile::tempdir().unwrap();
            let p = dir.path().join("lex.tsv");
            fs::write(&p, content).unwrap();
            let err = BilingualLexicon::from_tsv(&p).unwrap_err();
            assert!(err.to_string().contains(needle), "{content:?} -> {err}");
        }
    }

    #[test]
    fn insertion_tsv_rejects_bad_rows() {
        for (content, needle) in [
            ("hello\n", "2 tab-separated"),
            ("hello\tzero\n", "bad count"),
            ("hello\t0\n", "bad count"),
            ("你好\t20\n", "not an English word"),
            ("hello\t20\nhello\t30\n", "duplicate"),
        ] {
            let dir = tempfile::tempdir().unwrap();
            let p = dir.path().join("ins.tsv");
            fs::write(&p, content).unwrap();
            let err = InsertionLexicon::from_tsv(&p, 10).unwrap_err();
            assert!(err.to_string().contains(needle), "{content:?} -> {err}");
        }
    }

    fn write_text(lines: &str) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("text");
        fs::write(&p, lines).unwrap();
        (dir, p)
    }

    #[test]
    fn corpus_translate_emits_suffixed_ids() {
        let lex = lexicon();
        let dict = lex.segmenter_dict();
        let transform = Transform::Translate { lexicon: &lex, dict: &dict };
        let (_d, p) = write_text("u1 明天 天气\nu2 查 天气\nu3 明天\n");
        let out = generate_corpus_text(&p, &transform, None, &Seeder::new(5)).unwrap();
        assert_eq!(out.records.len(), 3);
        assert_eq!(out.skipped, 0);
        let ids: Vec<&str> = out.records.iter().map(|(id, _)| id.as_str()).collect();
        assert_eq!(ids, vec!["u1_wt", "u2_wt", "u3_wt"]);
    }

    #[test]
    fn ineligible_lines_are_skipped() {
        let lex = lexicon();
        let dict = lex.segmenter_dict();
        let transform = Transform::Translate { lexicon: &lex, dict: &dict };
        let (_d, p) = write_text("u1 你你\nu2 already english\nu3 天气\nu4\n");
        let out = generate_corpus_text(&p, &transform, None, &Seeder::new(5)).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].0, "u3_wt");
        assert_eq!(out.skipped, 3);
    }

    #[test]
    fn max_n_truncates_in_input_order() {
        let lex = lexicon();
        let dict = lex.segmenter_dict();
        let transform = Transform::Translate { lexicon: &lex, dict: &dict };
        let (_d, p) = write_text("u1 你你\nu2 天气\nu3 天气\n");
        let out = generate_corpus_text(&p, &transform, Some(1), &Seeder::new(5)).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].0, "u2_wt");
    }

    #[test]
    fn line_order_does_not_change_per_line_output() {
        let lex = lexicon();
        let dict = lex.segmenter_dict();
        let transform = Transform::Translate { lexicon: &lex, dict: &dict };
        let (_d1, p1) = write_text("u1 查 天气\nu2 明天 的 天气\nu3 查 明天\n");
        let (_d2, p2) = write_text("u3 查 明天\nu1 查 天气\nu2 明天 的 天气\n");
        let seeder = Seeder::new(42);
        let a = generate_corpus_text(&p1, &transform, None, &seeder).unwrap();
        let b = generate_corpus_text(&p2, &transform, None, &seeder).unwrap();
        let into_map = |g: GeneratedText| {
            g.records.into_iter().collect::<std::collections::HashMap<_, _>>()
        };
        assert_eq!(into_map(a), into_map(b));
    }

    #[test]
    fn reruns_are_identical() {
        let lexicon = InsertionLexicon::new(
            [("alpha".to_string(), 30), ("beta".to_string(), 30)],
            10,
        )
        .unwrap();
        let dict = SegmenterDict::new(["好", "冷"]);
        let transform = Transform::Insert { lexicon: &lexicon, dict: &dict };
        let (_d, p) = write_text("u1 好冷\nu2 好\n");
        let a = generate_corpus_text(&p, &transform, None, &Seeder::new(9)).unwrap();
        let b = generate_corpus_text(&p, &transform, None, &Seeder::new(9)).unwrap();
        assert_eq!(a, b);
        let ids: Vec<&str> = a.records.iter().map(|(id, _)| id.as_str()).collect();
        assert_eq!(ids, vec!["u1_wi", "u2_wi"]);
    }

    #[test]
    fn generated_sentences_code_switch() {
        let lex = lexicon();
        let dict = lex.segmenter_dict();
        let transform = Transform::Translate { lexicon: &lex, dict: &dict };
        let (_d, p) = write_text("u1 明天 的 天气\nu2 查 天气\n");
        let out = generate_corpus_text(&p, &transform, None, &Seeder::new(1)).unwrap();
        for (id, tokens) in &out.records {
            assert!(tokens.iter().any(|t| t.lang == Lang::En), "{id}");
            assert!(tokens.iter().any(|t| t.lang == Lang::Cn), "{id}");
        }
    }

    #[test]
    fn text_file_round_trip() {
        let records = vec![
            ("u1_wt".to_string(), vec![token("明天"), token("weather")]),
            ("u2_wi".to_string(), vec![token("hello"), token("你")]),
        ];
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("text");
        write_text_file(&p, &records).unwrap();
        assert_eq!(
            fs::read_to_string(&p).unwrap(),
            "u1_wt 明天 weather\nu2_wi hello 你\n"
        );
    }
}
