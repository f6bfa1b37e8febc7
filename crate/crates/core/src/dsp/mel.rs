//! Mel filterbank analysis and its least-squares inverse.
//!
//! Uses the HTK mel scale `2595 log10(1 + f/700)` with triangular filters
//! peaking at 1. Forward analysis stores natural log magnitudes with a
//! 1e-10 floor; [`mel_to_linear`] lifts mel magnitudes back to linear
//! frequency via the minimum-norm least-squares solution, clamping
//! negatives to zero.

use nalgebra::DMatrix;
use ndarray::Array2;

use super::{stft_mag, DspError, FrameParams, MelSpectrogram, Waveform};

const LOG_FLOOR: f64 = 1e-10;

fn hz_to_mel(f: f64) -> f64 {
    2595.0 * (1.0 + f / 700.0).log10()
}

fn mel_to_hz(m: f64) -> f64 {
    700.0 * (10f64.powf(m / 2595.0) - 1.0)
}

/// Triangular mel filterbank, `n_mels x n_bins`. Every row has positive
/// mass: a filter too narrow to cover any FFT bin collapses to weight 1 at
/// the bin nearest its centre.
pub fn mel_filterbank(params: &FrameParams) -> Result<Array2<f64>, DspError> {
    params.validate()?;
    let n_bins = params.n_bins();
    let mel_lo = hz_to_mel(params.fmin);
    let mel_hi = hz_to_mel(params.fmax);
    let edges: Vec<f64> = (0..params.n_mels + 2)
        .map(|i| mel_to_hz(mel_lo + (mel_hi - mel_lo) * i as f64 / (params.n_mels + 1) as f64))
        .collect();
    let bin_hz = f64::from(params.sample_rate) / params.n_fft as f64;

    let mut fb = Array2::zeros((params.n_mels, n_bins));
    for m in 0..params.n_mels {
        let (lo, mid, hi) = (edges[m], edges[m + 1], edges[m + 2]);
        let mut mass = 0.0;
        for b in 0..n_bins {
            let f = b as f64 * bin_hz;
            let up = if mid > lo { (f - lo) / (mid - lo) } else { 0.0 };
            let down = if hi > mid { (hi - f) / (hi - mid) } else { 0.0 };
            let w = up.min(down).max(0.0);
            fb[[m, b]] = w;
            mass += w;
        }
        if mass == 0.0 {
            let nearest = (mid / bin_hz).round().clamp(0.0, (n_bins - 1) as f64) as usize;
            fb[[m, nearest]] = 1.0;
        }
    }
    Ok(fb)
}

/// Log-mel spectrogram of a waveform: magnitude STFT folded through the
/// filterbank, then `ln(x + 1e-10)`.
pub fn mel_spectrogram(wave: &Waveform, params: &FrameParams) -> Result<MelSpectrogram, DspError> {
    if wave.sample_rate != params.sample_rate {
        return Err(DspError::InvalidParams(format!(
            "waveform is {} Hz but params say {} Hz",
            wave.sample_rate, params.sample_rate
        )));
    }
    let mag = stft_mag(&wave.samples, params)?;
    let fb = mel_filterbank(params)?;
    let data = mag.dot(&fb.t()).mapv(|x| (x + LOG_FLOOR).ln());
    Ok(MelSpectrogram { data, params: *params })
}

/// Lift a log-mel spectrogram back to a linear magnitude spectrogram
/// (`n_frames x n_bins`), suitable for Griffin-Lim.
pub fn mel_to_linear(mel: &MelSpectrogram) -> Result<Array2<f64>, DspError> {
    let params = &mel.params;
    if mel.n_mels() != params.n_mels {
        return Err(DspError::InvalidParams(format!(
            "spectrogram has {} mel bands, params imply {}",
            mel.n_mels(),
            params.n_mels
        )));
    }
    let fb = mel_filterbank(params)?;
    let n_bins = params.n_bins();
    let n_frames = mel.n_frames();

    let f = DMatrix::from_fn(params.n_mels, n_bins, |r, c| fb[[r, c]]);
    let gram = &f * f.transpose();
    let chol = match gram.clone().cholesky() {
        Some(c) => c,
        None => {
            let ridge = 1e-8 * gram.trace() / params.n_mels as f64;
            let ridged = gram + DMatrix::identity(params.n_mels, params.n_mels) * ridge;
            ridged.cholesky().ok_or_else(|| {
                DspError::InvalidParams("mel filterbank gram matrix is singular".into())
            })?
        }
    };

    let rhs = DMatrix::from_fn(params.n_mels, n_frames, |m, t| {
        (mel.data[[t, m]].exp() - LOG_FLOOR).max(0.0)
    });
    let lifted = f.transpose() * chol.solve(&rhs);

    Ok(Array2::from_shape_fn((n_frames, n_bins), |(t, b)| {
        lifted[(b, t)].max(0.0)
    }))
}
