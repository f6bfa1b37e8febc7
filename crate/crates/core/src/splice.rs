//! Speaker-constrained audio splicing driven by word alignments.
//!
//! Alignments cut each utterance into maximal same-language spans. A
//! spliced utterance replaces an English span of a base utterance with an
//! English span taken from another utterance of the same speaker, in both
//! the waveform and the transcript.

use std::collections::BTreeMap;
use std::fs;
use std::ops::Range;
use std::path::Path;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::corpus::{
    AudioSource, Corpus, CorpusError, Provenance, TokenAlignment, Utterance,
};
use crate::dsp::Waveform;
use crate::exec::map_items;
use crate::langtag::Lang;
use crate::rng::Seeder;

/// Ten milliseconds at 16 kHz; longer crossfades start eating into
/// neighbouring words.
pub const MAX_CROSSFADE_SAMPLES: usize = 160;

#[derive(Debug, Error)]
pub enum SpliceError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("utterance {0} has no English span")]
    NoEnglishSpan(String),
    #[error("speaker mismatch: base {base} vs donor {donor}")]
    SpeakerMismatch { base: String, donor: String },
    #[error("sample-rate mismatch: base {base} Hz vs donor {donor} Hz")]
    SampleRateMismatch { base: u32, donor: u32 },
    #[error("crossfade of {0} samples exceeds the {MAX_CROSSFADE_SAMPLES}-sample limit")]
    CrossfadeTooLong(usize),
    #[error("fold count must be at least 1")]
    BadFolds,
}

/// A maximal run of same-language tokens with its sample extent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSpan {
    pub utt_id: String,
    pub lang: Lang,
    pub token_range: Range<usize>,
    pub start_sample: usize,
    pub end_sample: usize,
}

fn sample_at(seconds: f64, sample_rate: u32) -> usize {
    (seconds * f64::from(sample_rate)).round() as usize
}

/// Cut an utterance into maximal same-language spans.
///
/// Inter-token silence attaches to the preceding span and leading silence
/// to the first span, so consecutive spans share a boundary and the spans
/// tile `[0, end of last token)`.
pub fn spans_of(
    utt: &Utterance,
    align: &[TokenAlignment],
    sample_rate: u32,
) -> Result<Vec<LanguageSpan>, SpliceError> {
    let mismatch = |detail: String| {
        SpliceError::Corpus(CorpusError::CtmMismatch { utt: utt.id.clone(), detail })
    };
    if align.len() != utt.transcript.len() {
        return Err(mismatch(format!(
            "alignment has {} tokens, transcript has {}",
            align.len(),
            utt.transcript.len()
        )));
    }
    for (i, (a, t)) in align.iter().zip(&utt.transcript).enumerate() {
        if a.token != t.text {
            return Err(mismatch(format!(
                "token {i} is {:?} in the alignment but {:?} in the transcript",
                a.token, t.text
            )));
        }
    }

    let mut spans: Vec<LanguageSpan> = Vec::new();
    let mut run_start = 0usize;
    for i in 1..=utt.transcript.len() {
        if i < utt.transcript.len() && utt.transcript[i].lang == utt.transcript[run_start].lang {
            continue;
        }
        let start_sample = if run_start == 0 {
            0
        } else {
            sample_at(align[run_start].start_s, sample_rate)
        };
        let end_sample = if i < utt.transcript.len() {
            sample_at(align[i].start_s, sample_rate)
        } else {
            sample_at(align[i - 1].start_s + align[i - 1].dur_s, sample_rate)
        };
        if start_sample >= end_sample {
            return Err(mismatch(format!(
                "tokens [{run_start}, {i}) span zero samples at {sample_rate} Hz"
            )));
        }
        spans.push(LanguageSpan {
            utt_id: utt.id.clone(),
            lang: utt.transcript[run_start].lang,
            token_range: run_start..i,
            start_sample,
            end_sample,
        });
        run_start = i;
    }
    Ok(spans)
}

/// One replacement performed by a splice, for the audit log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceRecord {
    pub new_id: String,
    pub base_utt: String,
    pub donor_utt: String,
    pub replaced_span: LanguageSpan,
    pub donor_span: LanguageSpan,
    pub crossfade_samples: usize,
}

/// How many English spans of the base to replace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpanChoice {
    /// Replace one uniformly drawn English span.
    #[default]
    One,
    /// Replace every English span, each with its own donor-span draw.
    All,
}

/// A splice participant: the utterance, its audio and its spans.
#[derive(Debug, Clone, Copy)]
pub struct SpliceInput<'a> {
    pub utterance: &'a Utterance,
    pub waveform: &'a Waveform,
    pub spans: &'a [LanguageSpan],
}

fn en_spans(input: &SpliceInput) -> Result<Vec<usize>, SpliceError> {
    let idx: Vec<usize> = input
        .spans
        .iter()
        .enumerate()
        .filter(|(_, s)| s.lang == Lang::En)
        .map(|(i, _)| i)
        .collect();
    if idx.is_empty() {
        return Err(SpliceError::NoEnglishSpan(input.utterance.id.clone()));
    }
    for &i in &idx {
        let span = &input.spans[i];
        if span.end_sample > input.waveform.len() {
            return Err(SpliceError::Corpus(CorpusError::CtmMismatch {
                utt: span.utt_id.clone(),
                detail: format!(
                    "span ends at sample {} but the waveform has {}",
                    span.end_sample,
                    input.waveform.len()
                ),
            }));
        }
    }
    Ok(idx)
}

/// Append `incoming`, linearly blending its head into the current tail
/// over `crossfade` samples. Each junction shortens the output by the
/// blended length.
fn append_with_crossfade(out: &mut Vec<f32>, incoming: &[f32], crossfade: usize) {
    let c = crossfade.min(out.len()).min(incoming.len());
    let tail = out.len() - c;
    for i in 0..c {
        let w = (i + 1) as f32 / (c + 1) as f32;
        out[tail + i] = out[tail + i] * (1.0 - w) + incoming[i] * w;
    }
    out.extend_from_slice(&incoming[c..]);
}

/// Build one spliced utterance from a base and a same-speaker donor.
///
/// Draw order: base span index, then donor span index (per replacement
/// with [`SpanChoice::All`], left to right). With zero crossfade the
/// samples outside the replaced ranges are bit-identical to the base.
pub fn splice_one(
    base: SpliceInput,
    donor: SpliceInput,
    new_id: &str,
    crossfade_samples: usize,
    choice: SpanChoice,
    rng: &mut ChaCha8Rng,
) -> Result<(Utterance, Vec<SpliceRecord>), SpliceError> {
    if crossfade_samples > MAX_CROSSFADE_SAMPLES {
        return Err(SpliceError::CrossfadeTooLong(crossfade_samples));
    }
    if base.utterance.speaker != donor.utterance.speaker {
        return Err(SpliceError::SpeakerMismatch {
            base: base.utterance.speaker.clone(),
            donor: donor.utterance.speaker.clone(),
        });
    }
    if base.waveform.sample_rate != donor.waveform.sample_rate {
        return Err(SpliceError::SampleRateMismatch {
            base: base.waveform.sample_rate,
            donor: donor.waveform.sample_rate,
        });
    }
    let base_en = en_spans(&base)?;
    let donor_en = en_spans(&donor)?;

    let replaced: Vec<usize> = match choice {
        SpanChoice::One => vec![base_en[rng.gen_range(0..base_en.len())]],
        SpanChoice::All => base_en,
    };
    let pairs: Vec<(usize, usize)> = replaced
        .into_iter()
        .map(|b| (b, donor_en[rng.gen_range(0..donor_en.len())]))
        .collect();

    let mut samples: Vec<f32> = Vec::with_capacity(base.waveform.len());
    let mut tokens = Vec::with_capacity(base.utterance.transcript.len());
    let mut records = Vec::with_capacity(pairs.len());
    let mut sample_cursor = 0usize;
    let mut token_cursor = 0usize;
    for &(b, d) in &pairs {
        let replaced_span = &base.spans[b];
        let donor_span = &donor.spans[d];
        samples.extend_from_slice(&base.waveform.samples[sample_cursor..replaced_span.start_sample]);
        append_with_crossfade(
            &mut samples,
            &donor.waveform.samples[donor_span.start_sample..donor_span.end_sample],
            crossfade_samples,
        );
        sample_cursor = replaced_span.end_sample;
        tokens.extend_from_slice(
            &base.utterance.transcript[token_cursor..replaced_span.token_range.start],
        );
        tokens.extend_from_slice(&donor.utterance.transcript[donor_span.token_range.clone()]);
        token_cursor = replaced_span.token_range.end;
        records.push(SpliceRecord {
            new_id: new_id.to_string(),
            base_utt: base.utterance.id.clone(),
            donor_utt: donor.utterance.id.clone(),
            replaced_span: replaced_span.clone(),
            donor_span: donor_span.clone(),
            crossfade_samples,
        });
    }
    let suffix = &base.waveform.samples[sample_cursor..];
    append_with_crossfade(&mut samples, suffix, crossfade_samples);
    tokens.extend_from_slice(&base.utterance.transcript[token_cursor..]);

    let utterance = Utterance {
        id: new_id.to_string(),
        speaker: base.utterance.speaker.clone(),
        audio: AudioSource::Memory(Waveform::new(samples, base.waveform.sample_rate)),
        transcript: tokens,
        provenance: Provenance::Spliced,
    };
    Ok((utterance, records))
}

#[derive(Debug, Clone)]
pub struct SpliceConfig {
    /// Total fold count K; K-1 spliced copies are attempted per utterance.
    pub folds: u32,
    pub crossfade_samples: usize,
    pub span_choice: SpanChoice,
}

impl Default for SpliceConfig {
    fn default() -> Self {
        Self { folds: 2, crossfade_samples: 0, span_choice: SpanChoice::One }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpliceSummary {
    pub generated: usize,
    /// (fold, utterance) pairs that could not be spliced: no English span,
    /// no alignment, or no same-speaker donor.
    pub skipped: usize,
    /// Seconds of generated audio.
    pub total_audio_seconds: f64,
}

/// Augment a corpus to K folds: the original plus K-1 spliced copies of
/// every utterance that has an English span and a same-speaker donor.
///
/// Generated ids are `<base-id>_spl<fold>`. Per-utterance randomness comes
/// from streams keyed `splice/<base-id>/<fold>` (donor draw first, then
/// the span draws), so output does not depend on execution order.
pub fn splice_corpus(
    corpus: &Corpus,
    alignments: &BTreeMap<String, Vec<TokenAlignment>>,
    config: &SpliceConfig,
    seeder: &Seeder,
) -> Result<(Corpus, Vec<SpliceRecord>, SpliceSummary), SpliceError> {
    if config.folds < 1 {
        return Err(SpliceError::BadFolds);
    }
    if config.crossfade_samples > MAX_CROSSFADE_SAMPLES {
        return Err(SpliceError::CrossfadeTooLong(config.crossfade_samples));
    }

    let utts = corpus.utterances();
    let mut spans: Vec<Option<Vec<LanguageSpan>>> = Vec::with_capacity(utts.len());
    let mut waves: Vec<Option<Waveform>> = vec![None; utts.len()];
    for utt in utts {
        match alignments.get(&utt.id) {
            Some(align) => {
                let s = spans_of(utt, align, sample_rate_of(utt)?)?;
                spans.push(Some(s));
            }
            None => spans.push(None),
        }
    }
    let bearing: Vec<bool> = spans
        .iter()
        .map(|s| {
            s.as_ref()
                .is_some_and(|spans| spans.iter().any(|sp| sp.lang == Lang::En))
        })
        .collect();
    for (i, utt) in utts.iter().enumerate() {
        if bearing[i] {
            waves[i] = Some(utt.load_audio()?);
        }
    }
    let mut donors_of: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, utt) in utts.iter().enumerate() {
        if bearing[i] {
            donors_of.entry(&utt.speaker).or_default().push(i);
        }
    }

    let mut tasks: Vec<(u32, usize)> = Vec::new();
    let mut skipped = 0usize;
    for fold in 1..config.folds {
        for (i, utt) in utts.iter().enumerate() {
            let has_donor = bearing[i]
                && donors_of.get(utt.speaker.as_str()).map_or(0, |d| d.len()) > 1;
            if has_donor {
                tasks.push((fold, i));
            } else {
                skipped += 1;
            }
        }
    }

    let results = map_items(&tasks, |&(fold, i)| {
        let base_utt = &utts[i];
        let mut rng = seeder.stream(&format!("splice/{}/{fold}", base_utt.id));
        let donors: Vec<usize> = donors_of[base_utt.speaker.as_str()]
            .iter()
            .copied()
            .filter(|&j| j != i)
            .collect();
        let j = donors[rng.gen_range(0..donors.len())];
        let base = SpliceInput {
            utterance: base_utt,
            waveform: waves[i].as_ref().expect("bearing utterances are preloaded"),
            spans: spans[i].as_ref().expect("bearing utterances have spans"),
        };
        let donor = SpliceInput {
            utterance: &utts[j],
            waveform: waves[j].as_ref().expect("bearing utterances are preloaded"),
            spans: spans[j].as_ref().expect("bearing utterances have spans"),
        };
        splice_one(
            base,
            donor,
            &format!("{}_spl{fold}", base_utt.id),
            config.crossfade_samples,
            config.span_choice,
            &mut rng,
        )
    });

    let mut out = utts.to_vec();
    let mut records = Vec::new();
    let mut total_audio_seconds = 0.0;
    let mut generated = 0usize;
    for result in results {
        let (utt, mut recs) = result?;
        if let AudioSource::Memory(w) = &utt.audio {
            total_audio_seconds += w.duration_seconds();
        }
        generated += 1;
        out.push(utt);
        records.append(&mut recs);
    }
    let corpus = Corpus::new(out)?;
    Ok((corpus, records, SpliceSummary { generated, skipped, total_audio_seconds }))
}

fn sample_rate_of(utt: &Utterance) -> Result<u32, SpliceError> {
    match &utt.audio {
        AudioSource::Memory(w) => Ok(w.sample_rate),
        AudioSource::Path(_) => Ok(utt.load_audio()?.sample_rate),
    }
}

/// Write the audit log: one row per replacement, with sample ranges.
pub fn write_splice_log(path: &Path, records: &[SpliceRecord]) -> Result<(), SpliceError> {
    let mut out = String::from("new_id\tbase\tdonor\treplaced_range\tdonor_range\n");
    for r in records {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}..{}\t{}..{}\n",
            r.new_id,
            r.base_utt,
            r.donor_utt,
            r.replaced_span.start_sample,
            r.replaced_span.end_sample,
            r.donor_span.start_sample,
            r.donor_span.end_sample,
        ));
    }
    fs::write(path, out).map_err(CorpusError::from)?;
    Ok(())
}
