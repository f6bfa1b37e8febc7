//! Numerical signal processing: WAV I/O, speed perturbation, STFT/mel
//! analysis, Griffin-Lim inversion and SpecAugment.
//!
//! Audio samples live in `f32`; spectral math runs in `f64` and
//! spectrogram files store 32-bit floats (see [`melfile`]).

mod griffin_lim;
mod mel;
pub mod melfile;
mod resample;
mod specaugment;
mod stft;
mod wav;

pub use griffin_lim::{griffin_lim, GriffinLimResult};
pub use mel::{mel_filterbank, mel_spectrogram, mel_to_linear};
pub use resample::speed_perturb;
pub use specaugment::{spec_augment, AugmentLog, MaskAxis, MaskRect};
pub use stft::{hann_window, istft, stft_complex, stft_mag};
pub use wav::{read_wav, write_wav};

use ndarray::Array2;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DspError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("unsupported WAV ({path}): {detail}")]
    UnsupportedWav { path: String, detail: String },
    #[error("truncated WAV ({path}): {detail}")]
    TruncatedWav { path: String, detail: String },
    #[error("speed ratio {0} outside (0.5, 2.0)")]
    RatioOutOfRange(f64),
    #[error("input of {len} samples is shorter than the {win_len}-sample analysis window")]
    InputTooShort { len: usize, win_len: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("bad spectrogram file ({path}): {detail}")]
    BadSpectrogramFile { path: String, detail: String },
}

/// Mono PCM sample buffer. Samples are nominally in [-1, 1]; values outside
/// that range are clamped when written to disk.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    pub samples: Vec<f32>,
    pub sample_rate: u32,
}

impl Waveform {
    pub fn new(samples: Vec<f32>, sample_rate: u32) -> Self {
        Self { samples, sample_rate }
    }

    pub fn silence(len: usize, sample_rate: u32) -> Self {
        Self { samples: vec![0.0; len], sample_rate }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_seconds(&self) -> f64 {
        self.samples.len() as f64 / f64::from(self.sample_rate)
    }
}

/// Analysis frame geometry shared by the STFT, mel and Griffin-Lim paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameParams {
    pub win_len: usize,
    pub hop: usize,
    pub n_fft: usize,
    pub n_mels: usize,
    pub fmin: f64,
    pub fmax: f64,
    pub sample_rate: u32,
}

impl Default for FrameParams {
    /// 25 ms window, 10 ms hop, 512-point FFT, 80 mel bins at 16 kHz.
    fn default() -> Self {
        Self {
            win_len: 400,
            hop: 160,
            n_fft: 512,
            n_mels: 80,
            fmin: 0.0,
            fmax: 8000.0,
            sample_rate: 16_000,
        }
    }
}

impl FrameParams {
    pub fn n_bins(&self) -> usize {
        self.n_fft / 2 + 1
    }

    pub fn validate(&self) -> Result<(), DspError> {
        if self.hop == 0 || self.hop > self.win_len || self.win_len > self.n_fft {
            return Err(DspError::InvalidParams(format!(
                "need 0 < hop <= win_len <= n_fft, got hop={} win_len={} n_fft={}",
                self.hop, self.win_len, self.n_fft
            )));
        }
        if self.n_mels == 0 {
            return Err(DspError::InvalidParams("n_mels must be positive".into()));
        }
        if self.sample_rate == 0 {
            return Err(DspError::InvalidParams("sample_rate must be positive".into()));
        }
        let nyquist = f64::from(self.sample_rate) / 2.0;
        if !(self.fmin >= 0.0 && self.fmin < self.fmax && self.fmax <= nyquist) {
            return Err(DspError::InvalidParams(format!(
                "need 0 <= fmin < fmax <= {nyquist}, got fmin={} fmax={}",
                self.fmin, self.fmax
            )));
        }
        Ok(())
    }
}

/// Log-mel spectrogram: `data[t, m]` is the log magnitude of frame `t` in
/// mel band `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct MelSpectrogram {
    pub data: Array2<f64>,
    pub params: FrameParams,
}

impl MelSpectrogram {
    pub fn n_frames(&self) -> usize {
        self.data.nrows()
    }

    pub fn n_mels(&self) -> usize {
        self.data.ncols()
    }
}

/// SpecAugment configuration: mask widths are upper bounds on uniformly
/// drawn widths, counts are numbers of masks, `time_warp` bounds the warp
/// shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecAugmentParams {
    pub freq_mask_width: usize,
    pub time_mask_width: usize,
    pub freq_masks: usize,
    pub time_masks: usize,
    pub time_warp: usize,
}

impl Default for SpecAugmentParams {
    fn default() -> Self {
        Self {
            freq_mask_width: 30,
            time_mask_width: 40,
            freq_masks: 2,
            time_masks: 2,
            time_warp: 5,
        }
    }
}
