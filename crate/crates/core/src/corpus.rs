//! Utterance data model plus Kaldi-style manifest and CTM alignment I/O.
//!
//! A corpus directory holds three parallel files keyed by utterance id:
//! `wav.scp` (id and audio path), `text` (id and space-separated
//! transcript) and `utt2spk` (id and speaker). Fields are separated by a
//! single ASCII space, so ids, speakers and tokens may not contain
//! whitespace; audio paths may (the path is everything after the first
//! space). CTM files carry `<utt-id> <channel> <start> <dur> <token>`
//! per line with times in decimal seconds.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::dsp::{read_wav, write_wav, DspError, Waveform};
use crate::langtag::{classify_token, Lang, LangtagError};

/// Two alignment entries may overlap by at most this many seconds.
pub const CTM_OVERLAP_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{file}:{line}: {detail}")]
    Malformed { file: String, line: usize, detail: String },
    #[error("utt-id {utt} duplicated in {file}")]
    DuplicateUtt { utt: String, file: String },
    #[error("utt-id {utt} missing in {file}")]
    MissingUtt { utt: String, file: String },
    #[error("utterance {utt}: {detail}")]
    InvalidUtterance { utt: String, detail: String },
    #[error("utterance {utt}: alignment does not match transcript: {detail}")]
    CtmMismatch { utt: String, detail: String },
    #[error(transparent)]
    Audio(#[from] DspError),
    #[error(transparent)]
    Langtag(#[from] LangtagError),
}

/// One transcript word with its script-derived language tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub lang: Lang,
}

impl Token {
    pub fn new(text: &str) -> Result<Self, LangtagError> {
        Ok(Self { text: text.to_string(), lang: classify_token(text)? })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AudioSource {
    Path(PathBuf),
    Memory(Waveform),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Original,
    Spliced,
    Synthesized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Utterance {
    pub id: String,
    pub speaker: String,
    pub audio: AudioSource,
    pub transcript: Vec<Token>,
    pub provenance: Provenance,
}

impl Utterance {
    /// Read path-backed audio from disk; in-memory audio is cloned.
    pub fn load_audio(&self) -> Result<Waveform, CorpusError> {
        match &self.audio {
            AudioSource::Path(p) => Ok(read_wav(p)?),
            AudioSource::Memory(w) => Ok(w.clone()),
        }
    }

    pub fn transcript_texts(&self) -> Vec<&str> {
        self.transcript.iter().map(|t| t.text.as_str()).collect()
    }

    fn validate(&self) -> Result<(), CorpusError> {
        let bad = |detail: String| CorpusError::InvalidUtterance {
            utt: self.id.clone(),
            detail,
        };
        if self.id.is_empty() || self.id.chars().any(char::is_whitespace) {
            return Err(bad("id must be non-empty without whitespace".into()));
        }
        if self.speaker.is_empty() || self.speaker.chars().any(char::is_whitespace) {
            return Err(bad("speaker must be non-empty without whitespace".into()));
        }
        for tok in &self.transcript {
            if tok.text.is_empty() || tok.text.chars().any(char::is_whitespace) {
                return Err(bad(format!("token {:?} contains whitespace or is empty", tok.text)));
            }
            let lang = classify_token(&tok.text)?;
            if lang != tok.lang {
                return Err(bad(format!(
                    "token {:?} tagged {} but classifies as {}",
                    tok.text, tok.lang, lang
                )));
            }
        }
        Ok(())
    }
}

/// Ordered utterance collection with unique ids.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    utterances: Vec<Utterance>,
}

impl Corpus {
    pub fn new(utterances: Vec<Utterance>) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        for utt in &utterances {
            utt.validate()?;
            if !seen.insert(utt.id.clone()) {
                return Err(CorpusError::DuplicateUtt {
                    utt: utt.id.clone(),
                    file: "corpus".into(),
                });
            }
        }
        Ok(Self { utterances })
    }

    pub fn utterances(&self) -> &[Utterance] {
        &self.utterances
    }

    pub fn len(&self) -> usize {
        self.utterances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.utterances.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Utterance> {
        self.utterances.iter().find(|u| u.id == id)
    }

    /// Speaker to utterance ids, grouped in corpus order.
    pub fn speaker_index(&self) -> BTreeMap<&str, Vec<&str>> {
        let mut index: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for utt in &self.utterances {
            index.entry(&utt.speaker).or_default().push(&utt.id);
        }
        index
    }
}

/// One CTM line: `token` spans `[start_s, start_s + dur_s)` seconds of
/// utterance `utt_id`.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenAlignment {
    pub utt_id: String,
    pub channel: u32,
    pub start_s: f64,
    pub dur_s: f64,
    pub token: String,
}

fn file_lines(path: &Path) -> Result<Vec<String>, CorpusError> {
    let content = fs::read_to_string(path)?;
    let mut lines: Vec<String> = content.split('\n').map(str::to_string).collect();
    if lines.last().is_some_and(String::is_empty) {
        lines.pop();
    }
    Ok(lines)
}

fn split_id_rest<'a>(
    line: &'a str,
    file: &str,
    line_no: usize,
) -> Result<(&'a str, Option<&'a str>), CorpusError> {
    if line.is_empty() {
        return Err(CorpusError::Malformed {
            file: file.into(),
            line: line_no,
            detail: "empty line".into(),
        });
    }
    match line.split_once(' ') {
        Some((id, rest)) if id.is_empty() || rest.is_empty() => Err(CorpusError::Malformed {
            file: file.into(),
            line: line_no,
            detail: "empty field".into(),
        }),
        Some((id, rest)) => Ok((id, Some(rest))),
        None => Ok((line, None)),
    }
}

/// Parse one manifest file into (id, payload, line number) rows,
/// rejecting duplicate ids. `allow_empty_payload` admits lines holding
/// only an id, which is how an empty transcript is written.
fn read_keyed_file(
    path: &Path,
    file: &str,
    allow_empty_payload: bool,
) -> Result<Vec<(String, String, usize)>, CorpusError> {
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for (i, line) in file_lines(path)?.iter().enumerate() {
        let line_no = i + 1;
        let (id, rest) = split_id_rest(line, file, line_no)?;
        let payload = match rest {
            Some(r) => r,
            None if allow_empty_payload => "",
            None => {
                return Err(CorpusError::Malformed {
                    file: file.into(),
                    line: line_no,
                    detail: "expected two space-separated fields".into(),
                })
            }
        };
        if !seen.insert(id.to_string()) {
            return Err(CorpusError::DuplicateUtt { utt: id.into(), file: file.into() });
        }
        rows.push((id.to_string(), payload.to_string(), line_no));
    }
    Ok(rows)
}

fn parse_transcript(
    payload: &str,
    file: &str,
    line_no: usize,
    id: &str,
) -> Result<Vec<Token>, CorpusError> {
    let mut transcript = Vec::new();
    if !payload.is_empty() {
        for word in payload.split(' ') {
            if word.is_empty() {
                return Err(CorpusError::Malformed {
                    file: file.into(),
                    line: line_no,
                    detail: format!("consecutive spaces in transcript of {id}"),
                });
            }
            transcript.push(Token::new(word)?);
        }
    }
    Ok(transcript)
}

/// Read a standalone `wav.scp` into `(id, audio path)` rows in file order.
pub fn read_scp(path: &Path) -> Result<Vec<(String, PathBuf)>, CorpusError> {
    let file = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok(read_keyed_file(path, &file, false)?
        .into_iter()
        .map(|(id, payload, _)| (id, PathBuf::from(payload)))
        .collect())
}

/// Read a standalone `text` manifest into `(id, tokens)` rows in file
/// order. Lines holding only an id parse as empty transcripts.
pub fn read_text_file(path: &Path) -> Result<Vec<(String, Vec<Token>)>, CorpusError> {
    let file = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    read_keyed_file(path, &file, true)?
        .into_iter()
        .map(|(id, payload, line_no)| {
            let tokens = parse_transcript(&payload, &file, line_no, &id)?;
            Ok((id, tokens))
        })
        .collect()
}

pub fn read_manifests(dir: &Path) -> Result<Corpus, CorpusError> {
    let scp = read_keyed_file(&dir.join("wav.scp"), "wav.scp", false)?;
    let text = read_keyed_file(&dir.join("text"), "text", true)?;
    let spk = read_keyed_file(&dir.join("utt2spk"), "utt2spk", false)?;

    let text_map: HashMap<&str, (&str, usize)> =
        text.iter().map(|(id, t, n)| (id.as_str(), (t.as_str(), *n))).collect();
    let spk_map: HashMap<&str, (&str, usize)> =
        spk.iter().map(|(id, s, n)| (id.as_str(), (s.as_str(), *n))).collect();
    let scp_ids: HashSet<&str> = scp.iter().map(|(id, _, _)| id.as_str()).collect();

    for (id, _, _) in &scp {
        if !text_map.contains_key(id.as_str()) {
            return Err(CorpusError::MissingUtt { utt: id.clone(), file: "text".into() });
        }
        if !spk_map.contains_key(id.as_str()) {
            return Err(CorpusError::MissingUtt { utt: id.clone(), file: "utt2spk".into() });
        }
    }
    for rows in [&text, &spk] {
        for (id, _, _) in rows.iter() {
            if !scp_ids.contains(id.as_str()) {
                return Err(CorpusError::MissingUtt { utt: id.clone(), file: "wav.scp".into() });
            }
        }
    }

    let mut utterances = Vec::with_capacity(scp.len());
    for (id, wav_path, _) in &scp {
        let (speaker, spk_line) = spk_map[id.as_str()];
        if speaker.contains(' ') {
            return Err(CorpusError::Malformed {
                file: "utt2spk".into(),
                line: spk_line,
                detail: format!("speaker for {id} contains a space"),
            });
        }
        let (transcript_line, text_line) = text_map[id.as_str()];
        let transcript = parse_transcript(transcript_line, "text", text_line, id)?;
        utterances.push(Utterance {
            id: id.clone(),
            speaker: speaker.to_string(),
            audio: AudioSource::Path(PathBuf::from(wav_path)),
            transcript,
            provenance: Provenance::Original,
        });
    }
    Corpus::new(utterances)
}

/// Write `wav.scp`, `text` and `utt2spk` under `dir`. In-memory audio is
/// materialized to `dir/audio/<id>.wav` and the manifest points there, so
/// reading the result back yields a path-backed corpus.
pub fn write_manifests(corpus: &Corpus, dir: &Path) -> Result<(), CorpusError> {
    for utt in corpus.utterances() {
        utt.validate()?;
    }
    fs::create_dir_all(dir)?;

    let mut scp = String::new();
    let mut text = String::new();
    let mut spk = String::new();
    for utt in corpus.utterances() {
        let wav_path = match &utt.audio {
            AudioSource::Path(p) => p.clone(),
            AudioSource::Memory(wave) => {
                let audio_dir = dir.join("audio");
                fs::create_dir_all(&audio_dir)?;
                let p = audio_dir.join(format!("{}.wav", utt.id));
                write_wav(&p, wave)?;
                p
            }
        };
        let _ = writeln!(scp, "{} {}", utt.id, wav_path.display());
        let words = utt.transcript_texts().join(" ");
        if words.is_empty() {
            let _ = writeln!(text, "{}", utt.id);
        } else {
            let _ = writeln!(text, "{} {}", utt.id, words);
        }
        let _ = writeln!(spk, "{} {}", utt.id, utt.speaker);
    }
    fs::write(dir.join("wav.scp"), scp)?;
    fs::write(dir.join("text"), text)?;
    fs::write(dir.join("utt2spk"), spk)?;
    Ok(())
}

/// Read a CTM file, grouping entries per utterance and sorting them by
/// start time. Entries overlapping by more than [`CTM_OVERLAP_TOLERANCE`]
/// are rejected.
pub fn read_ctm(path: &Path) -> Result<BTreeMap<String, Vec<TokenAlignment>>, CorpusError> {
    let file = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let mut groups: BTreeMap<String, Vec<TokenAlignment>> = BTreeMap::new();

    for (i, line) in file_lines(path)?.iter().enumerate() {
        let line_no = i + 1;
        let bad = |detail: String| CorpusError::Malformed {
            file: file.clone(),
            line: line_no,
            detail,
        };
        let fields: Vec<&str> = line.split(' ').collect();
        if fields.len() != 5 || fields.iter().any(|f| f.is_empty()) {
            return Err(bad(format!("expected 5 space-separated fields, got {:?}", line)));
        }
        let channel: u32 = fields[1]
            .parse()
            .map_err(|_| bad(format!("bad channel {:?}", fields[1])))?;
        let start_s: f64 = fields[2]
            .parse()
            .map_err(|_| bad(format!("bad start time {:?}", fields[2])))?;
        let dur_s: f64 = fields[3]
            .parse()
            .map_err(|_| bad(format!("bad duration {:?}", fields[3])))?;
        if !start_s.is_finite() || start_s < 0.0 {
            return Err(bad(format!("start time {start_s} must be >= 0")));
        }
        if !dur_s.is_finite() || dur_s <= 0.0 {
            return Err(bad(format!("duration {dur_s} must be > 0")));
        }
        groups.entry(fields[0].to_string()).or_default().push(TokenAlignment {
            utt_id: fields[0].to_string(),
            channel,
            start_s,
            dur_s,
            token: fields[4].to_string(),
        });
    }

    for (utt, entries) in &mut groups {
        entries.sort_by(|a, b| a.start_s.total_cmp(&b.start_s));
        for pair in entries.windows(2) {
            let end = pair[0].start_s + pair[0].dur_s;
            if end > pair[1].start_s + CTM_OVERLAP_TOLERANCE {
                return Err(CorpusError::CtmMismatch {
                    utt: utt.clone(),
                    detail: format!(
                        "entry ending at {end}s overlaps entry starting at {}s",
                        pair[1].start_s
                    ),
                });
            }
        }
    }
    Ok(groups)
}

/// Serialize alignments in the 5-field CTM format, utterances in map
/// order. Times use the shortest decimal that parses back to the same
/// value, so write-read-write is byte-stable.
pub fn write_ctm(
    path: &Path,
    alignments: &BTreeMap<String, Vec<TokenAlignment>>,
) -> Result<(), CorpusError> {
    let mut out = String::new();
    for entries in alignments.values() {
        for e in entries {
            let _ = writeln!(out, "{} {} {} {} {}", e.utt_id, e.channel, e.start_s, e.dur_s, e.token);
        }
    }
    fs::write(path, out)?;
    Ok(())
}

/// Check that each utterance's alignment entries carry exactly its
/// transcript tokens, in order. Alignments for ids absent from the corpus
/// are ignored; corpus utterances without alignments pass (they are simply
/// not splicable).
pub fn validate_alignments(
    corpus: &Corpus,
    alignments: &BTreeMap<String, Vec<TokenAlignment>>,
) -> Result<(), CorpusError> {
    for utt in corpus.utterances() {
        let Some(entries) = alignments.get(&utt.id) else {
            continue;
        };
        if entries.len() != utt.transcript.len() {
            return Err(CorpusError::CtmMismatch {
                utt: utt.id.clone(),
                detail: format!(
                    "alignment has {} tokens, transcript has {}",
                    entries.len(),
                    utt.transcript.len()
                ),
            });
        }
        for (i, (entry, tok)) in entries.iter().zip(&utt.transcript).enumerate() {
            if entry.token != tok.text {
                return Err(CorpusError::CtmMismatch {
                    utt: utt.id.clone(),
                    detail: format!(
                        "token {i} is {:?} in the alignment but {:?} in the transcript",
                        entry.token, tok.text
                    ),
                });
            }
        }
    }
    Ok(())
}
