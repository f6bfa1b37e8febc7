//! Duration-target extraction and a pluggable text-to-speech interface.
//!
//! Alignments give per-token frame counts that a duration-aware
//! synthesizer can train on or respect at generation time. The shipped
//! synthesizer is a deterministic sine stub: it keeps the whole pipeline
//! runnable and testable, and real models plug in behind the same trait.

use std::collections::BTreeMap;
use std::f32::consts::TAU;
use std::fs;
use std::path::Path;

use rand::RngCore;
use thiserror::Error;

use crate::corpus::{
    AudioSource, Corpus, CorpusError, Provenance, Token, TokenAlignment, Utterance,
};
use crate::dsp::{write_wav, DspError, Waveform};
use crate::exec::map_items;
use crate::rng::{stable_hash, Seeder};

#[derive(Debug, Error)]
pub enum SynthError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Dsp(#[from] DspError),
    #[error("empty alignment")]
    EmptyAlignment,
    #[error("frame hop must be positive, got {0}")]
    BadHop(f64),
    #[error("empty token list")]
    EmptyTokens,
    #[error("{pred} predicted durations for {target} targets")]
    LengthMismatch { pred: usize, target: usize },
    #[error("no synthetic speakers configured")]
    NoSpeakers,
}

/// Per-token frame counts at a fixed hop. The counts always sum to the
/// utterance's total frame count; rounding slack lands on the last tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DurationSequence {
    pub frames: Vec<u32>,
    /// Frame hop in samples.
    pub hop: usize,
}

impl DurationSequence {
    pub fn total_frames(&self) -> u64 {
        self.frames.iter().map(|&f| u64::from(f)).sum()
    }

    pub fn total_samples(&self) -> u64 {
        self.total_frames() * self.hop as u64
    }
}

fn frames_at(seconds: f64, hop_s: f64) -> i64 {
    (seconds / hop_s + 1e-9).round() as i64
}

/// Turn a token alignment into per-token duration targets.
///
/// Token `i` covers its own extent plus any silence up to the next token,
/// so leading silence belongs to no token and inter-token gaps to the
/// preceding one. The last tokens absorb the rounding remainder, clamped
/// at zero, so the counts sum exactly to `round(total / hop)` frames.
pub fn extract_durations(
    align: &[TokenAlignment],
    hop_s: f64,
    sample_rate: u32,
) -> Result<DurationSequence, SynthError> {
    if align.is_empty() {
        return Err(SynthError::EmptyAlignment);
    }
    if hop_s <= 0.0 || !hop_s.is_finite() {
        return Err(SynthError::BadHop(hop_s));
    }
    let n = align.len();
    let mut frames: Vec<i64> = (0..n)
        .map(|i| {
            let end_s = if i + 1 < n {
                align[i + 1].start_s
            } else {
                align[i].start_s + align[i].dur_s
            };
            frames_at(end_s - align[i].start_s, hop_s)
        })
        .collect();

    let last = align[n - 1].start_s + align[n - 1].dur_s;
    let total = frames_at(last, hop_s);
    let before_last: i64 = frames[..n - 1].iter().sum();
    frames[n - 1] = total - before_last;
    let mut k = n - 1;
    while frames[k] < 0 && k > 0 {
        frames[k - 1] += frames[k];
        frames[k] = 0;
        k -= 1;
    }
    frames[0] = frames[0].max(0);

    let hop = (hop_s * f64::from(sample_rate)).round() as usize;
    Ok(DurationSequence {
        frames: frames.into_iter().map(|f| f as u32).collect(),
        hop,
    })
}

/// Mean squared error between predicted and target durations.
pub fn duration_mse(pred: &[f64], target: &DurationSequence) -> Result<f64, SynthError> {
    if pred.len() != target.frames.len() {
        return Err(SynthError::LengthMismatch {
            pred: pred.len(),
            target: target.frames.len(),
        });
    }
    let sum: f64 = pred
        .iter()
        .zip(&target.frames)
        .map(|(&p, &t)| (p - f64::from(t)).powi(2))
        .sum();
    Ok(sum / pred.len() as f64)
}

/// Text-to-speech backend. Implementations must be deterministic given
/// `(tokens, speaker_key, rng seed)` and safe to call from worker threads.
pub trait Synthesizer: Sync {
    fn synth(
        &self,
        tokens: &[Token],
        speaker_key: &str,
        durations: Option<&DurationSequence>,
        rng: &mut dyn RngCore,
    ) -> Result<Waveform, SynthError>;

    fn sample_rate(&self) -> u32;
}

/// Deterministic stand-in for a neural synthesizer. Each token becomes a
/// faded sine whose frequency is a stable hash of the token text and the
/// speaker key, so different texts and speakers are audibly and
/// spectrally distinct while every run is reproducible.
#[derive(Debug, Clone)]
pub struct SineSynth {
    pub sample_rate: u32,
    /// Frame hop in samples; token lengths are whole frames.
    pub hop: usize,
    /// Frames per token when no duration targets are supplied.
    pub default_frames: u32,
    pub amplitude: f32,
}

impl Default for SineSynth {
    fn default() -> Self {
        Self { sample_rate: 16_000, hop: 160, default_frames: 20, amplitude: 0.3 }
    }
}

impl SineSynth {
    pub fn token_frequency(&self, text: &str, speaker_key: &str) -> f64 {
        200.0 + (stable_hash(text, speaker_key) % 600) as f64
    }
}

impl Synthesizer for SineSynth {
    fn synth(
        &self,
        tokens: &[Token],
        speaker_key: &str,
        durations: Option<&DurationSequence>,
        _rng: &mut dyn RngCore,
    ) -> Result<Waveform, SynthError> {
        if tokens.is_empty() {
            return Err(SynthError::EmptyTokens);
        }
        if let Some(d) = durations {
            if d.frames.len() != tokens.len() {
                return Err(SynthError::LengthMismatch {
                    pred: d.frames.len(),
                    target: tokens.len(),
                });
            }
        }
        let fade = (f64::from(self.sample_rate) * 0.005).round() as usize;
        let mut samples = Vec::new();
        for (i, tok) in tokens.iter().enumerate() {
            let frames = durations.map_or(self.default_frames, |d| d.frames[i]);
            let len = frames as usize * self.hop;
            let freq = self.token_frequency(&tok.text, speaker_key);
            let step = TAU * freq as f32 / self.sample_rate as f32;
            let ramp = fade.min(len / 2);
            for n in 0..len {
                let env = if n < ramp {
                    n as f32 / ramp as f32
                } else if n >= len - ramp {
                    (len - 1 - n) as f32 / ramp as f32
                } else {
                    1.0
                };
                samples.push(self.amplitude * env * (step * n as f32).sin());
            }
        }
        Ok(Waveform::new(samples, self.sample_rate))
    }

    fn sample_rate(&self) -> u32 {
        self.sample_rate
    }
}

/// Ten synthetic speaker keys, `synth00` through `synth09`.
pub fn default_speakers() -> Vec<String> {
    (0..10).map(|i| format!("synth{i:02}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthSummary {
    pub synthesized: usize,
    /// `(id, error)` for texts that failed; they are absent from the
    /// output corpus.
    pub failed: Vec<(String, String)>,
}

/// Synthesize one utterance per `(id, tokens)` record and write the audio
/// under `out_dir/audio/`.
///
/// Speaker keys are assigned round-robin in input order. Records whose id
/// appears in `durations` are synthesized against those targets. Each
/// record draws from a stream keyed `synth/<id>`, so output does not
/// depend on execution order. Failures are reported in the summary and
/// skipped.
pub fn synth_corpus(
    texts: &[(String, Vec<Token>)],
    synth: &dyn Synthesizer,
    speakers: &[String],
    durations: &BTreeMap<String, DurationSequence>,
    out_dir: &Path,
    seeder: &Seeder,
) -> Result<(Corpus, SynthSummary), SynthError> {
    if speakers.is_empty() {
        return Err(SynthError::NoSpeakers);
    }
    let audio_dir = out_dir.join("audio");
    fs::create_dir_all(&audio_dir).map_err(CorpusError::from)?;

    let tasks: Vec<(usize, &(String, Vec<Token>))> = texts.iter().enumerate().collect();
    let results: Vec<Result<Utterance, SynthError>> = map_items(&tasks, |&(i, (id, tokens))| {
        let speaker = &speakers[i % speakers.len()];
        let mut rng = seeder.stream(&format!("synth/{id}"));
        let wave = synth.synth(tokens, speaker, durations.get(id), &mut rng)?;
        let path = audio_dir.join(format!("{id}.wav"));
        write_wav(&path, &wave)?;
        Ok(Utterance {
            id: id.clone(),
            speaker: speaker.clone(),
            audio: AudioSource::Path(path),
            transcript: tokens.clone(),
            provenance: Provenance::Synthesized,
        })
    });

    let mut utterances = Vec::new();
    let mut failed = Vec::new();
    for (result, (id, _)) in results.into_iter().zip(texts) {
        match result {
            Ok(utt) => utterances.push(utt),
            Err(e) => failed.push((id.clone(), e.to_string())),
        }
    }
    let synthesized = utterances.len();
    let corpus = Corpus::new(utterances)?;
    Ok((corpus, SynthSummary { synthesized, failed }))
}
