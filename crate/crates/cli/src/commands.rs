//! One function per subcommand. Each resolves its flags against the run
//! config, validates inputs up front (exit 2), then runs the stage and
//! writes its outputs (failures from here on exit 1). Summaries are
//! single-line JSON on stdout.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::Args;
use serde_json::json;

use csaug_core::corpus::{
    read_ctm, read_manifests, read_scp, read_text_file, write_manifests, AudioSource, Corpus,
    Token,
};
use csaug_core::dsp::{
    griffin_lim, mel_spectrogram, mel_to_linear, melfile, read_wav, spec_augment, speed_perturb,
    stft_mag, write_wav, AugmentLog, FrameParams, MaskAxis, MelSpectrogram, SpecAugmentParams,
};
use csaug_core::exec::map_items;
use csaug_core::langtag::SegmenterDict;
use csaug_core::rng::Seeder;
use csaug_core::score::{aggregate, score_tokens, ScoreReport};
use csaug_core::splice::{
    splice_corpus, write_splice_log, SpanChoice, SpliceConfig, MAX_CROSSFADE_SAMPLES,
};
use csaug_core::synth::{default_speakers, extract_durations, synth_corpus, SineSynth};
use csaug_core::textgen::{
    generate_corpus_text, write_text_file, BilingualLexicon, InsertionLexicon, Transform,
};

use crate::config::RunConfig;
use crate::{runtime, usage, CliError, FrameArgs};

fn need<T>(flag: Option<T>, flag_name: &str) -> Result<T, CliError> {
    flag.ok_or_else(|| usage(format!("missing {flag_name}")))
}

fn must_exist(path: &Path) -> Result<(), CliError> {
    if path.exists() {
        Ok(())
    } else {
        Err(usage(format!("no such file or directory: {}", path.display())))
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn absolute(path: &Path) -> Result<PathBuf, CliError> {
    std::path::absolute(path).map_err(runtime)
}

/// Output manifests must stay usable from any working directory, so audio
/// paths are absolutized before they are written.
fn absolute_audio_paths(corpus: &Corpus) -> Result<Corpus, CliError> {
    let utterances = corpus
        .utterances()
        .iter()
        .map(|utt| {
            let mut utt = utt.clone();
            if let AudioSource::Path(p) = &utt.audio {
                utt.audio = AudioSource::Path(absolute(p)?);
            }
            Ok(utt)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Corpus::new(utterances).map_err(runtime)
}

#[derive(Args)]
pub struct SpliceArgs {
    /// Input corpus directory holding wav.scp, text and utt2spk
    #[arg(long, value_name = "DIR")]
    corpus: Option<PathBuf>,
    /// Token alignments in CTM format
    #[arg(long, value_name = "FILE")]
    ctm: Option<PathBuf>,
    /// Output corpus directory
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Fold count K: the original plus K-1 spliced copies per utterance
    #[arg(long, value_name = "K")]
    folds: Option<u32>,
    /// Master seed
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Crossfade at each splice joint in milliseconds
    #[arg(long, value_name = "MS")]
    crossfade_ms: Option<f64>,
    /// Replace every English span instead of one random span
    #[arg(long)]
    replace_all: bool,
}

pub fn splice(args: &SpliceArgs, config: &RunConfig) -> Result<(), CliError> {
    let corpus_dir = config.require(args.corpus.clone(), "corpus", "--corpus")?;
    let ctm_path = config.require(args.ctm.clone(), "ctm", "--ctm")?;
    let out_dir = config.require(args.out.clone(), "out", "--out")?;
    let folds: u32 = config.require(args.folds, "folds", "--folds")?;
    let seed: u64 = config.require(args.seed, "seed", "--seed")?;
    let crossfade_ms: f64 = config.resolve(args.crossfade_ms, "crossfade_ms", 0.0)?;
    let replace_all = config.switch(args.replace_all, "replace_all")?;
    let sample_rate: u32 = config.resolve(None, "sample_rate", 16_000)?;

    must_exist(&corpus_dir)?;
    must_exist(&ctm_path)?;
    if folds < 1 {
        return Err(usage("--folds must be at least 1"));
    }
    if !crossfade_ms.is_finite() || crossfade_ms < 0.0 {
        return Err(usage(format!("--crossfade-ms must be >= 0, got {crossfade_ms}")));
    }
    let crossfade_samples = (crossfade_ms / 1000.0 * f64::from(sample_rate)).round() as usize;
    if crossfade_samples > MAX_CROSSFADE_SAMPLES {
        return Err(usage(format!(
            "--crossfade-ms {crossfade_ms} is {crossfade_samples} samples, limit is {MAX_CROSSFADE_SAMPLES}"
        )));
    }

    let corpus = absolute_audio_paths(&read_manifests(&corpus_dir).map_err(usage)?)?;
    let alignments = read_ctm(&ctm_path).map_err(usage)?;
    let out_dir = absolute(&out_dir)?;
    let splice_config = SpliceConfig {
        folds,
        crossfade_samples,
        span_choice: if replace_all { SpanChoice::All } else { SpanChoice::One },
    };
    let (augmented, records, summary) =
        splice_corpus(&corpus, &alignments, &splice_config, &Seeder::new(seed)).map_err(runtime)?;
    write_manifests(&augmented, &out_dir).map_err(runtime)?;
    write_splice_log(&out_dir.join("splice_log.tsv"), &records).map_err(runtime)?;
    println!(
        "{}",
        json!({
            "generated": summary.generated,
            "skipped": summary.skipped,
            "total_audio_seconds": summary.total_audio_seconds,
        })
    );
    Ok(())
}

#[derive(Args)]
pub struct TextgenArgs {
    /// translate: swap one noun/verb for English; insert: add one English word
    #[arg(long, value_name = "MODE")]
    mode: Option<String>,
    /// Input Mandarin transcripts in `text` manifest format
    #[arg(long, value_name = "FILE")]
    text: Option<PathBuf>,
    /// Bilingual TSV (translate) or word-count TSV (insert)
    #[arg(long, value_name = "FILE")]
    lexicon: Option<PathBuf>,
    /// Output `text` file
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Master seed
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Insert words seen more than this many times (insert mode)
    #[arg(long, value_name = "C")]
    min_count: Option<u64>,
    /// Read --min-count as `count >= C` instead of `count > C`
    #[arg(long)]
    min_count_inclusive: bool,
    /// Emit at most this many lines
    #[arg(long, value_name = "N")]
    max_n: Option<usize>,
}

pub fn textgen(args: &TextgenArgs, config: &RunConfig) -> Result<(), CliError> {
    let mode: String = config.require(args.mode.clone(), "mode", "--mode")?;
    let text_path = config.require(args.text.clone(), "text", "--text")?;
    let lexicon_path = config.require(args.lexicon.clone(), "lexicon", "--lexicon")?;
    let out_path = config.require(args.out.clone(), "out", "--out")?;
    let seed: u64 = config.require(args.seed, "seed", "--seed")?;
    let max_n: Option<usize> = config.optional(args.max_n, "max_n")?;

    must_exist(&text_path)?;
    must_exist(&lexicon_path)?;

    let (bilingual, insertion, dict);
    let transform = match mode.as_str() {
        "translate" => {
            bilingual = BilingualLexicon::from_tsv(&lexicon_path).map_err(usage)?;
            dict = bilingual.segmenter_dict();
            Transform::Translate { lexicon: &bilingual, dict: &dict }
        }
        "insert" => {
            let base: u64 = config.resolve(args.min_count, "min_count", 10)?;
            let inclusive = config.switch(args.min_count_inclusive, "min_count_inclusive")?;
            let threshold = if inclusive { base } else { base.saturating_add(1) };
            insertion = InsertionLexicon::from_tsv(&lexicon_path, threshold).map_err(usage)?;
            dict = SegmenterDict::new(Vec::<String>::new());
            Transform::Insert { lexicon: &insertion, dict: &dict }
        }
        other => {
            return Err(usage(format!("--mode must be translate or insert, got {other:?}")))
        }
    };
    let generated =
        generate_corpus_text(&text_path, &transform, max_n, &Seeder::new(seed)).map_err(usage)?;
    write_text_file(&out_path, &generated.records).map_err(runtime)?;
    println!(
        "{}",
        json!({ "emitted": generated.records.len(), "skipped": generated.skipped })
    );
    Ok(())
}

#[derive(Args)]
pub struct SynthArgs {
    /// Utterances to synthesize, in `text` manifest format
    #[arg(long, value_name = "FILE")]
    text: Option<PathBuf>,
    /// Output corpus directory
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Master seed
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// CTM alignments supplying per-token duration targets
    #[arg(long, value_name = "FILE")]
    durations: Option<PathBuf>,
    /// Frame hop for duration targets in milliseconds
    #[arg(long, value_name = "MS")]
    hop_ms: Option<f64>,
}

pub fn synth(args: &SynthArgs, config: &RunConfig) -> Result<(), CliError> {
    let text_path = config.require(args.text.clone(), "text", "--text")?;
    let out_dir = config.require(args.out.clone(), "out", "--out")?;
    let seed: u64 = config.require(args.seed, "seed", "--seed")?;
    let hop_ms: f64 = config.resolve(args.hop_ms, "hop_ms", 10.0)?;
    let sample_rate: u32 = config.resolve(None, "sample_rate", 16_000)?;

    must_exist(&text_path)?;
    if !hop_ms.is_finite() || hop_ms <= 0.0 {
        return Err(usage(format!("--hop-ms must be > 0, got {hop_ms}")));
    }
    let hop_s = hop_ms / 1000.0;
    let hop_samples = (hop_s * f64::from(sample_rate)).round() as usize;
    if hop_samples == 0 {
        return Err(usage(format!("--hop-ms {hop_ms} is below one sample at {sample_rate} Hz")));
    }

    let out_dir = absolute(&out_dir)?;
    let records = read_text_file(&text_path).map_err(usage)?;
    let mut durations = BTreeMap::new();
    if let Some(ctm_path) = &args.durations {
        must_exist(ctm_path)?;
        for (id, align) in read_ctm(ctm_path).map_err(usage)? {
            durations.insert(id, extract_durations(&align, hop_s, sample_rate).map_err(usage)?);
        }
    }

    let synth = SineSynth { sample_rate, hop: hop_samples, ..SineSynth::default() };
    let (corpus, summary) = synth_corpus(
        &records,
        &synth,
        &default_speakers(),
        &durations,
        &out_dir,
        &Seeder::new(seed),
    )
    .map_err(runtime)?;
    write_manifests(&corpus, &out_dir).map_err(runtime)?;
    for (id, err) in &summary.failed {
        eprintln!("warning: skipped {id}: {err}");
    }
    println!(
        "{}",
        json!({ "synthesized": summary.synthesized, "failed": summary.failed.len() })
    );
    Ok(())
}

#[derive(Args)]
pub struct MelArgs {
    /// One input WAV
    #[arg(long = "in", value_name = "WAV")]
    input: Option<PathBuf>,
    /// Output spectrogram file for --in
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Batch mode: wav.scp listing utterance ids and WAV paths
    #[arg(long, value_name = "SCP")]
    scp: Option<PathBuf>,
    /// Batch mode: directory receiving one <id>.mel per entry
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    #[command(flatten)]
    frames: FrameArgs,
}

pub fn mel(args: &MelArgs, config: &RunConfig) -> Result<(), CliError> {
    let params = args.frames.resolve(config)?;
    match (&args.input, &args.scp) {
        (Some(input), None) => {
            let out = need(args.out.clone(), "--out")?;
            must_exist(input)?;
            let wave = read_wav(input).map_err(usage)?;
            let spec = mel_spectrogram(&wave, &params).map_err(usage)?;
            melfile::write_matrix(&out, &spec.data).map_err(runtime)?;
            println!(
                "{}",
                json!({ "frames": spec.n_frames(), "mels": spec.n_mels() })
            );
            Ok(())
        }
        (None, Some(scp)) => {
            let out_dir = need(args.out_dir.clone(), "--out-dir")?;
            must_exist(scp)?;
            let entries = read_scp(scp).map_err(usage)?;
            fs::create_dir_all(&out_dir).map_err(runtime)?;
            let results = map_items(&entries, |(id, wav_path)| {
                let wave = read_wav(wav_path).map_err(|e| format!("{id}: {e}"))?;
                let spec = mel_spectrogram(&wave, &params).map_err(|e| format!("{id}: {e}"))?;
                melfile::write_matrix(&out_dir.join(format!("{id}.mel")), &spec.data)
                    .map_err(|e| format!("{id}: {e}"))
            });
            finish_batch(entries.len(), results)
        }
        _ => Err(usage("pass exactly one of --in or --scp")),
    }
}

fn finish_batch(total: usize, results: Vec<Result<(), String>>) -> Result<(), CliError> {
    let failures: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    for f in &failures {
        eprintln!("warning: {f}");
    }
    if !failures.is_empty() {
        return Err(runtime(format!("{} of {total} files failed", failures.len())));
    }
    println!("{}", json!({ "processed": total }));
    Ok(())
}

#[derive(Args)]
pub struct SpecaugArgs {
    /// One input spectrogram file
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output spectrogram file for --in
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Batch mode: directory of .mel files
    #[arg(long, value_name = "DIR")]
    in_dir: Option<PathBuf>,
    /// Batch mode: output directory, same file names
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// Master seed
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Max mel bands per frequency mask
    #[arg(long, value_name = "F")]
    freq_mask_width: Option<usize>,
    /// Max frames per time mask
    #[arg(long, value_name = "T")]
    time_mask_width: Option<usize>,
    /// Number of frequency masks
    #[arg(long, value_name = "N")]
    freq_masks: Option<usize>,
    /// Number of time masks
    #[arg(long, value_name = "N")]
    time_masks: Option<usize>,
    /// Max time-warp shift in frames
    #[arg(long, value_name = "W")]
    time_warp: Option<usize>,
    /// Write applied warp and mask coordinates to a TSV file
    #[arg(long, value_name = "FILE")]
    log_masks: Option<PathBuf>,
}

pub fn specaug(args: &SpecaugArgs, config: &RunConfig) -> Result<(), CliError> {
    let d = SpecAugmentParams::default();
    let params = SpecAugmentParams {
        freq_mask_width: config.resolve(args.freq_mask_width, "freq_mask_width", d.freq_mask_width)?,
        time_mask_width: config.resolve(args.time_mask_width, "time_mask_width", d.time_mask_width)?,
        freq_masks: config.resolve(args.freq_masks, "freq_masks", d.freq_masks)?,
        time_masks: config.resolve(args.time_masks, "time_masks", d.time_masks)?,
        time_warp: config.resolve(args.time_warp, "time_warp", d.time_warp)?,
    };
    let seed: u64 = config.resolve(args.seed, "seed", 0)?;
    let seeder = Seeder::new(seed);

    let augment_file = |input: &Path, out: &Path| -> Result<(String, AugmentLog), String> {
        let data = melfile::read_matrix(input).map_err(|e| e.to_string())?;
        let spec = MelSpectrogram { data, params: FrameParams::default() };
        let stem = file_stem(input);
        let mut rng = seeder.stream(&format!("specaug/{stem}"));
        let (augmented, log) = spec_augment(&spec, &params, &mut rng);
        melfile::write_matrix(out, &augmented.data).map_err(|e| e.to_string())?;
        Ok((stem, log))
    };

    match (&args.input, &args.in_dir) {
        (Some(input), None) => {
            let out = need(args.out.clone(), "--out")?;
            must_exist(input)?;
            let (stem, log) = augment_file(input, &out).map_err(usage)?;
            let n_masks = log.masks.len();
            let warped = log.warp.is_some();
            if let Some(log_path) = &args.log_masks {
                write_mask_log(log_path, &[(stem, log)])?;
            }
            println!("{}", json!({ "masks": n_masks, "warped": warped }));
            Ok(())
        }
        (None, Some(in_dir)) => {
            let out_dir = need(args.out_dir.clone(), "--out-dir")?;
            must_exist(in_dir)?;
            let files = mel_files_in(in_dir)?;
            fs::create_dir_all(&out_dir).map_err(runtime)?;
            let results = map_items(&files, |path| {
                let name = path.file_name().expect("listing yields file names");
                augment_file(path, &out_dir.join(name))
                    .map_err(|e| format!("{}: {e}", path.display()))
            });
            let mut logs = Vec::new();
            let mut failures = Vec::new();
            for result in results {
                match result {
                    Ok(entry) => logs.push(entry),
                    Err(e) => failures.push(e),
                }
            }
            for f in &failures {
                eprintln!("warning: {f}");
            }
            if !failures.is_empty() {
                return Err(runtime(format!("{} of {} files failed", failures.len(), files.len())));
            }
            if let Some(log_path) = &args.log_masks {
                write_mask_log(log_path, &logs)?;
            }
            println!("{}", json!({ "processed": files.len() }));
            Ok(())
        }
        _ => Err(usage("pass exactly one of --in or --in-dir")),
    }
}

fn mel_files_in(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(runtime)?.path();
        if path.extension().is_some_and(|e| e == "mel") {
            files.push(path);
        }
    }
    files.sort();
    if files.is_empty() {
        return Err(usage(format!("no .mel files in {}", dir.display())));
    }
    Ok(files)
}

/// One row per applied change. Warp rows carry the anchor frame and the
/// signed shift; mask rows carry the start index and width on their axis.
fn write_mask_log(path: &Path, logs: &[(String, AugmentLog)]) -> Result<(), CliError> {
    let mut out = String::from("id\tkind\tstart\twidth\n");
    for (id, log) in logs {
        if let Some((anchor, shift)) = log.warp {
            out.push_str(&format!("{id}\twarp\t{anchor}\t{shift}\n"));
        }
        for mask in &log.masks {
            let kind = match mask.axis {
                MaskAxis::Freq => "freq",
                MaskAxis::Time => "time",
            };
            out.push_str(&format!("{id}\t{kind}\t{}\t{}\n", mask.start, mask.width));
        }
    }
    fs::write(path, out).map_err(runtime)
}

#[derive(Args)]
pub struct GriffinlimArgs {
    /// Input WAV or serialized spectrogram
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output WAV
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Phase recovery iteration count
    #[arg(long, value_name = "N")]
    iterations: Option<usize>,
    /// Master seed for the initial phases
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    #[command(flatten)]
    frames: FrameArgs,
}

pub fn griffinlim(args: &GriffinlimArgs, config: &RunConfig) -> Result<(), CliError> {
    let params = args.frames.resolve(config)?;
    let input = need(args.input.clone(), "--in")?;
    let out = need(args.out.clone(), "--out")?;
    let iterations: usize = config.resolve(args.iterations, "iterations", 60)?;
    let seed: u64 = config.resolve(args.seed, "seed", 0)?;
    must_exist(&input)?;

    let mut header = [0u8; 8];
    let mut file = fs::File::open(&input)
        .map_err(|e| usage(format!("{}: {e}", input.display())))?;
    let got = file.read(&mut header).map_err(runtime)?;
    drop(file);

    let magnitudes = if got >= 4 && &header[..4] == b"RIFF" {
        let wave = read_wav(&input).map_err(usage)?;
        if wave.sample_rate != params.sample_rate {
            return Err(usage(format!(
                "{} is {} Hz but params say {} Hz",
                input.display(),
                wave.sample_rate,
                params.sample_rate
            )));
        }
        stft_mag(&wave.samples, &params).map_err(usage)?
    } else if got == 8 && &header == melfile::MAGIC {
        let data = melfile::read_matrix(&input).map_err(usage)?;
        mel_to_linear(&MelSpectrogram { data, params }).map_err(usage)?
    } else {
        return Err(usage(format!(
            "{}: neither a WAV nor a spectrogram file",
            input.display()
        )));
    };

    let mut rng = Seeder::new(seed).stream(&format!("griffinlim/{}", file_stem(&input)));
    let result = griffin_lim(&magnitudes, &params, iterations, &mut rng).map_err(usage)?;
    write_wav(&out, &result.waveform).map_err(runtime)?;
    println!(
        "{}",
        json!({ "iterations": iterations, "final_error": result.errors.last() })
    );
    Ok(())
}

#[derive(Args)]
pub struct SpeedArgs {
    /// Input WAV
    #[arg(long = "in", value_name = "WAV")]
    input: Option<PathBuf>,
    /// Output WAV
    #[arg(long, value_name = "WAV")]
    out: Option<PathBuf>,
    /// Playback rate factor; 1.1 speaks 10% faster, 0.9 slower
    #[arg(long, value_name = "R")]
    ratio: Option<f64>,
}

pub fn speed(args: &SpeedArgs, config: &RunConfig) -> Result<(), CliError> {
    let input = need(args.input.clone(), "--in")?;
    let out = need(args.out.clone(), "--out")?;
    let ratio: f64 = config.require(args.ratio, "ratio", "--ratio")?;
    must_exist(&input)?;
    let wave = read_wav(&input).map_err(usage)?;
    let perturbed = speed_perturb(&wave, ratio).map_err(usage)?;
    write_wav(&out, &perturbed).map_err(runtime)?;
    println!(
        "{}",
        json!({
            "ratio": ratio,
            "input_samples": wave.len(),
            "output_samples": perturbed.len(),
        })
    );
    Ok(())
}

#[derive(Args)]
pub struct ScoreArgs {
    /// Reference transcripts in `text` manifest format
    #[arg(long = "ref", value_name = "FILE")]
    reference: Option<PathBuf>,
    /// Hypothesis transcripts in `text` manifest format
    #[arg(long, value_name = "FILE")]
    hyp: Option<PathBuf>,
}

pub fn score(args: &ScoreArgs, _config: &RunConfig) -> Result<(), CliError> {
    let ref_path = need(args.reference.clone(), "--ref")?;
    let hyp_path = need(args.hyp.clone(), "--hyp")?;
    must_exist(&ref_path)?;
    must_exist(&hyp_path)?;

    let references = read_text_file(&ref_path).map_err(usage)?;
    let mut hypotheses: BTreeMap<String, Vec<Token>> = BTreeMap::new();
    for (id, tokens) in read_text_file(&hyp_path).map_err(usage)? {
        if hypotheses.insert(id.clone(), tokens).is_some() {
            return Err(usage(format!("duplicate hypothesis id {id}")));
        }
    }

    let mut seen = BTreeSet::new();
    let mut reports = Vec::with_capacity(references.len());
    let mut rows = String::from("utt\tcn_err\tcn_ref\ten_err\ten_ref\tcer\twer\tmer\n");
    for (id, ref_tokens) in &references {
        if !seen.insert(id.clone()) {
            return Err(usage(format!("duplicate reference id {id}")));
        }
        let hyp_tokens = hypotheses
            .remove(id)
            .ok_or_else(|| usage(format!("hypothesis file has no id {id}")))?;
        let report = score_tokens(id, ref_tokens, &hyp_tokens).map_err(usage)?;
        rows.push_str(&score_row(id, &report));
        reports.push(report);
    }
    if let Some(extra) = hypotheses.keys().next() {
        return Err(usage(format!("hypothesis id {extra} is not in the reference")));
    }

    let total = aggregate(&reports);
    rows.push_str(&score_row("TOTAL", &total));
    print!("{rows}");
    println!("MER {}", total.mer);
    Ok(())
}

fn score_row(id: &str, r: &ScoreReport) -> String {
    format!(
        "{id}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
        r.cn_errors, r.cn_refs, r.en_errors, r.en_refs, r.cer, r.wer, r.mer
    )
}
