//! SpecAugment: time warp followed by frequency and time masking.
//!
//! Random draws happen in a fixed order so a seed fully determines the
//! output: warp anchor then shift (only when `time_warp > 0` and the
//! spectrogram is longer than twice the warp bound), then width and start
//! for each frequency mask, then width and start for each time mask.
//! Masked cells are filled with the mean of the input matrix.

use ndarray::{s, Array2};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{MelSpectrogram, SpecAugmentParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskAxis {
    Time,
    Freq,
}

/// One applied mask: `width` consecutive frames (time) or mel bands (freq)
/// starting at `start`. Zero-width masks are drawn and logged but change
/// nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaskRect {
    pub axis: MaskAxis,
    pub start: usize,
    pub width: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AugmentLog {
    /// Warp anchor frame and signed shift, when a warp was drawn.
    pub warp: Option<(usize, isize)>,
    pub masks: Vec<MaskRect>,
    pub fill_value: f64,
}

pub fn spec_augment(
    spec: &MelSpectrogram,
    params: &SpecAugmentParams,
    rng: &mut ChaCha8Rng,
) -> (MelSpectrogram, AugmentLog) {
    let n_frames = spec.n_frames();
    let n_mels = spec.n_mels();
    if n_frames == 0 || n_mels == 0 {
        return (
            spec.clone(),
            AugmentLog { warp: None, masks: Vec::new(), fill_value: 0.0 },
        );
    }

    let fill = spec.data.sum() / (n_frames * n_mels) as f64;
    let mut data = spec.data.clone();
    let mut warp = None;

    let w_bound = params.time_warp;
    if w_bound > 0 && n_frames > 2 * w_bound {
        let anchor = rng.gen_range(w_bound..n_frames - w_bound);
        let shift = rng.gen_range(-(w_bound as isize)..=w_bound as isize);
        warp = Some((anchor, shift));
        if shift != 0 {
            data = warp_time(&data, anchor, shift);
        }
    }

    let mut masks = Vec::with_capacity(params.freq_masks + params.time_masks);
    for _ in 0..params.freq_masks {
        let width = rng.gen_range(0..=params.freq_mask_width.min(n_mels));
        let start = rng.gen_range(0..=n_mels - width);
        data.slice_mut(s![.., start..start + width]).fill(fill);
        masks.push(MaskRect { axis: MaskAxis::Freq, start, width });
    }
    for _ in 0..params.time_masks {
        let width = rng.gen_range(0..=params.time_mask_width.min(n_frames));
        let start = rng.gen_range(0..=n_frames - width);
        data.slice_mut(s![start..start + width, ..]).fill(fill);
        masks.push(MaskRect { axis: MaskAxis::Time, start, width });
    }

    (
        MelSpectrogram { data, params: spec.params },
        AugmentLog { warp, masks, fill_value: fill },
    )
}

/// Piecewise-linear time warp: the frame at `anchor` moves to
/// `anchor + shift`, the first and last frames stay fixed, and everything
/// between stretches linearly with interpolation between source frames.
fn warp_time(data: &Array2<f64>, anchor: usize, shift: isize) -> Array2<f64> {
    let n_frames = data.nrows();
    let last = (n_frames - 1) as f64;
    let moved = (anchor as isize + shift).clamp(0, n_frames as isize - 1) as usize;

    Array2::from_shape_fn(data.dim(), |(t, m)| {
        let src = if t <= moved {
            if moved == 0 {
                0.0
            } else {
                t as f64 * anchor as f64 / moved as f64
            }
        } else {
            anchor as f64 + (t - moved) as f64 * (last - anchor as f64) / (last - moved as f64)
        };
        let src = src.clamp(0.0, last);
        let lo = src.floor() as usize;
        let hi = src.ceil() as usize;
        let frac = src - src.floor();
        data[[lo, m]] * (1.0 - frac) + data[[hi, m]] * frac
    })
}
