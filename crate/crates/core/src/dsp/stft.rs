//! Short-time Fourier analysis and overlap-add resynthesis.
//!
//! Frames are taken every `hop` samples from a reflection-padded signal
//! (pad = win_len / 2 on each side), windowed with a periodic Hann window
//! and zero-padded to `n_fft`. A signal of `len` samples yields
//! `1 + len / hop` frames. The inverse normalises the overlap-add by the
//! summed squared window, which makes `istft(stft(x))` reproduce `x` up to
//! FFT rounding for any hop that divides the window length.

use ndarray::Array2;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::{DspError, FrameParams};

/// Periodic Hann window: `0.5 - 0.5 cos(2 pi n / len)`.
pub fn hann_window(len: usize) -> Vec<f64> {
    (0..len)
        .map(|n| 0.5 - 0.5 * (2.0 * std::f64::consts::PI * n as f64 / len as f64).cos())
        .collect()
}

/// Index into a reflection-padded view of a `len`-sample signal where `i`
/// may fall outside `[0, len)`. Mirrors without repeating the edge sample.
fn reflect_idx(i: isize, len: usize) -> usize {
    debug_assert!(len > 0);
    if len == 1 {
        return 0;
    }
    let period = 2 * (len as isize - 1);
    let mut j = i.rem_euclid(period);
    if j >= len as isize {
        j = period - j;
    }
    j as usize
}

fn frame_count(len: usize, hop: usize) -> usize {
    1 + len / hop
}

pub fn stft_complex(
    samples: &[f32],
    params: &FrameParams,
) -> Result<Array2<Complex<f64>>, DspError> {
    let wide: Vec<f64> = samples.iter().map(|&x| f64::from(x)).collect();
    stft_complex_f64(&wide, params)
}

/// Full-precision variant used where the caller already works in `f64`,
/// such as inside the Griffin-Lim loop.
pub(crate) fn stft_complex_f64(
    samples: &[f64],
    params: &FrameParams,
) -> Result<Array2<Complex<f64>>, DspError> {
    params.validate()?;
    if samples.len() < params.win_len {
        return Err(DspError::InputTooShort {
            len: samples.len(),
            win_len: params.win_len,
        });
    }

    let len = samples.len();
    let pad = params.win_len / 2;
    let n_frames = frame_count(len, params.hop);
    let window = hann_window(params.win_len);
    let fft = FftPlanner::<f64>::new().plan_fft_forward(params.n_fft);

    let mut out = Array2::zeros((n_frames, params.n_bins()));
    let mut buf = vec![Complex::new(0.0, 0.0); params.n_fft];
    for t in 0..n_frames {
        let start = (t * params.hop) as isize - pad as isize;
        for (k, w) in window.iter().enumerate() {
            let idx = start + k as isize;
            let x = if idx >= 0 && (idx as usize) < len {
                samples[idx as usize]
            } else {
                samples[reflect_idx(idx, len)]
            };
            buf[k] = Complex::new(x * w, 0.0);
        }
        for slot in buf.iter_mut().skip(params.win_len) {
            *slot = Complex::new(0.0, 0.0);
        }
        fft.process(&mut buf);
        for (b, slot) in out.row_mut(t).iter_mut().enumerate() {
            *slot = buf[b];
        }
    }
    Ok(out)
}

/// Magnitude spectrogram, `n_frames x n_bins`.
pub fn stft_mag(samples: &[f32], params: &FrameParams) -> Result<Array2<f64>, DspError> {
    Ok(stft_complex(samples, params)?.mapv(Complex::norm))
}

/// Least-squares inverse of [`stft_complex`] truncated to `out_len`
/// samples. Windowed frames are overlap-added, contributions landing in
/// the reflection-padded margins are folded back onto the samples they
/// mirror, and the result is normalised by the accumulated squared
/// window. The folding matters for inconsistent spectrograms (Griffin-Lim
/// iterates): without it the edge frames can never be matched and the
/// reconstruction error plateaus.
pub fn istft(
    frames: &Array2<Complex<f64>>,
    params: &FrameParams,
    out_len: usize,
) -> Result<Vec<f64>, DspError> {
    params.validate()?;
    if frames.ncols() != params.n_bins() {
        return Err(DspError::InvalidParams(format!(
            "spectrogram has {} bins, params imply {}",
            frames.ncols(),
            params.n_bins()
        )));
    }
    let n_frames = frames.nrows();
    if n_frames == 0 || out_len == 0 {
        return Ok(vec![0.0; out_len]);
    }

    let pad = params.win_len / 2;
    let window = hann_window(params.win_len);
    let ifft = FftPlanner::<f64>::new().plan_fft_inverse(params.n_fft);
    let scale = 1.0 / params.n_fft as f64;

    let mut acc = vec![0.0f64; out_len];
    let mut norm = vec![0.0f64; out_len];
    let mut buf = vec![Complex::new(0.0, 0.0); params.n_fft];

    for t in 0..n_frames {
        let row = frames.row(t);
        buf[0] = Complex::new(row[0].re, 0.0);
        let nyq = params.n_fft / 2;
        buf[nyq] = Complex::new(row[nyq].re, 0.0);
        for b in 1..nyq {
            buf[b] = row[b];
            buf[params.n_fft - b] = row[b].conj();
        }
        ifft.process(&mut buf);
        let base = (t * params.hop) as isize - pad as isize;
        for (k, w) in window.iter().enumerate() {
            let j = base + k as isize;
            let i = if j >= 0 && (j as usize) < out_len {
                j as usize
            } else {
                reflect_idx(j, out_len)
            };
            acc[i] += buf[k].re * scale * w;
            norm[i] += w * w;
        }
    }

    let mut out = vec![0.0f64; out_len];
    for (i, slot) in out.iter_mut().enumerate() {
        if norm[i] > 1e-10 {
            *slot = acc[i] / norm[i];
        }
    }
    Ok(out)
}
