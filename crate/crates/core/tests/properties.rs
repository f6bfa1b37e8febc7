//! Randomized invariant checks for the format, DSP, and scoring layers.

use csaug_core::corpus::{
    read_manifests, write_manifests, AudioSource, Corpus, Provenance, Token, TokenAlignment,
    Utterance,
};
use csaug_core::dsp::{
    melfile, read_wav, spec_augment, speed_perturb, write_wav, FrameParams, MelSpectrogram,
    SpecAugmentParams, Waveform,
};
use csaug_core::score::score_tokens;
use csaug_core::synth::extract_durations;
use ndarray::Array2;
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;

const VOCAB: &[&str] = &["你好", "天气", "不错", "明天", "吃饭", "hello", "world", "ok"];

fn toks(picks: &[usize]) -> Vec<Token> {
    picks.iter().map(|&i| Token::new(VOCAB[i % VOCAB.len()]).unwrap()).collect()
}

proptest! {
    #[test]
    fn wav_files_round_trip_quantized_samples(
        raw in prop::collection::vec(any::<i16>(), 1..1500),
        sample_rate in 8_000u32..48_000,
    ) {
        let wave = Waveform::new(raw.iter().map(|&q| q as f32 / 32_768.0).collect(), sample_rate);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.wav");
        write_wav(&path, &wave).unwrap();
        let back = read_wav(&path).unwrap();
        prop_assert_eq!(&back.samples, &wave.samples);
        prop_assert_eq!(back.sample_rate, sample_rate);

        let first = std::fs::read(&path).unwrap();
        write_wav(&path, &back).unwrap();
        prop_assert_eq!(std::fs::read(&path).unwrap(), first);
    }

    #[test]
    fn manifests_round_trip_the_corpus(
        utts in prop::collection::vec(
            (0usize..4, prop::collection::vec(0usize..VOCAB.len(), 1..5)),
            1..5,
        ),
    ) {
        let utterances: Vec<Utterance> = utts
            .iter()
            .enumerate()
            .map(|(i, (spk, picks))| Utterance {
                id: format!("utt{i}"),
                speaker: format!("spk{spk}"),
                audio: AudioSource::Path(format!("/data/utt{i}.wav").into()),
                transcript: toks(picks),
                provenance: Provenance::Original,
            })
            .collect();
        let corpus = Corpus::new(utterances).unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_manifests(&corpus, dir.path()).unwrap();
        prop_assert_eq!(read_manifests(dir.path()).unwrap(), corpus);
    }

    #[test]
    fn spectrogram_files_round_trip(
        cells in prop::collection::vec(-1.0e6f32..1.0e6, 1..400),
        cols in 1usize..20,
    ) {
        let rows = cells.len().div_ceil(cols);
        let mut padded = cells;
        padded.resize(rows * cols, 0.0);
        let matrix = Array2::from_shape_vec((rows, cols), padded.iter().map(|&v| v as f64).collect())
            .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.mel");
        melfile::write_matrix(&path, &matrix).unwrap();
        prop_assert_eq!(melfile::read_matrix(&path).unwrap(), matrix);
    }

    #[test]
    fn speed_perturbation_obeys_the_length_law(
        len in 32usize..20_000,
        ratio in prop_oneof![Just(1.0f64), 0.6f64..1.9],
    ) {
        let wave = Waveform::new(
            (0..len).map(|n| ((n % 200) as f32 / 100.0) - 1.0).collect(),
            16_000,
        );
        let out = speed_perturb(&wave, ratio).unwrap();
        prop_assert_eq!(out.len(), (len as f64 / ratio).round() as usize);
        if ratio == 1.0 {
            prop_assert_eq!(&out.samples, &wave.samples);
        }
    }

    #[test]
    fn token_durations_sum_to_the_frame_total(
        spans in prop::collection::vec((0.0f64..0.3, 0.01f64..0.5), 1..12),
        hop_idx in 0usize..3,
    ) {
        let hop_s = [0.01, 0.0125, 0.02][hop_idx];
        let mut cursor = 0.0;
        let align: Vec<TokenAlignment> = spans
            .iter()
            .enumerate()
            .map(|(i, &(gap, dur))| {
                cursor += gap;
                let start_s = cursor;
                cursor += dur;
                TokenAlignment {
                    utt_id: "u".into(),
                    channel: 1,
                    start_s,
                    dur_s: dur,
                    token: format!("t{i}"),
                }
            })
            .collect();
        let durations = extract_durations(&align, hop_s, 16_000).unwrap();
        prop_assert_eq!(durations.frames.len(), align.len());
        let expected = (cursor / hop_s + 1e-9).round() as u64;
        prop_assert_eq!(durations.total_frames(), expected);
    }

    #[test]
    fn identical_transcripts_score_clean(picks in prop::collection::vec(0usize..VOCAB.len(), 1..8)) {
        let tokens = toks(&picks);
        let report = score_tokens("u", &tokens, &tokens).unwrap();
        prop_assert_eq!(report.cn_errors + report.en_errors, 0);
        prop_assert_eq!(report.cer, 0.0);
        prop_assert_eq!(report.wer, 0.0);
        prop_assert_eq!(report.mer, 0.0);
    }

    #[test]
    fn empty_hypothesis_scores_every_unit_deleted(
        picks in prop::collection::vec(0usize..VOCAB.len(), 1..8),
    ) {
        let tokens = toks(&picks);
        let en_units = tokens.iter().filter(|t| t.text.is_ascii()).count();
        let cn_units: usize = tokens
            .iter()
            .filter(|t| !t.text.is_ascii())
            .map(|t| t.text.chars().count())
            .sum();
        let report = score_tokens("u", &tokens, &[]).unwrap();
        prop_assert_eq!(report.cn_errors, cn_units);
        prop_assert_eq!(report.en_errors, en_units);
        prop_assert_eq!(report.mer, 1.0);
    }

    #[test]
    fn zeroed_specaugment_changes_nothing(
        cells in prop::collection::vec(-4.0f64..4.0, 1..600),
        cols in 1usize..24,
    ) {
        let rows = cells.len().div_ceil(cols);
        let mut padded = cells;
        padded.resize(rows * cols, 0.0);
        let spec = MelSpectrogram {
            data: Array2::from_shape_vec((rows, cols), padded).unwrap(),
            params: FrameParams::default(),
        };
        let off = SpecAugmentParams {
            freq_mask_width: 0,
            time_mask_width: 0,
            freq_masks: 0,
            time_masks: 0,
            time_warp: 0,
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let (out, log) = spec_augment(&spec, &off, &mut rng);
        prop_assert_eq!(out.data, spec.data);
        prop_assert!(log.masks.is_empty());
        prop_assert!(log.warp.is_none());
    }
}
