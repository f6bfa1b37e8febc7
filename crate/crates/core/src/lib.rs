//! Core library of `csaug`, a toolkit that manufactures Mandarin-English
//! code-switching ASR training data from an existing bilingual corpus and
//! monolingual text.
//!
//! The library is organised around three augmentation routes plus the
//! machinery they share:
//!
//! * [`splice`] — alignment-driven, speaker-constrained audio splicing:
//!   the English segment of one utterance is replaced with an English
//!   segment from another utterance of the same speaker.
//! * [`textgen`] — turns monolingual Mandarin transcripts into
//!   code-switching ones, either by translating one noun/verb with a
//!   bilingual lexicon or by inserting one English word at a random
//!   position.
//! * [`synth`] — duration-target extraction from forced alignments and a
//!   pluggable synthesizer interface (with a deterministic sine stub) so
//!   the text-to-speech leg runs end to end without a neural model.
//!
//! Supporting modules: [`corpus`] (Kaldi-style manifests, CTM alignments,
//! utterance model), [`langtag`] (script classification and dictionary
//! segmentation), [`dsp`] (WAV I/O, STFT/mel analysis, Griffin-Lim,
//! SpecAugment, speed perturbation), [`score`] (mixed-language CER/WER/MER
//! scoring), [`rng`] (per-record seed derivation) and [`exec`] (data
//! parallelism helpers).
//!
//! All randomised operations draw from per-record seeded streams, so a run
//! is reproducible bit for bit regardless of worker count or input order.

pub mod corpus;
pub mod dsp;
pub mod exec;
pub mod langtag;
pub mod rng;
pub mod score;
pub mod splice;
pub mod synth;
pub mod textgen;
