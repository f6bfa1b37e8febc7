//! Speed perturbation by linear-interpolation resampling.

use super::{DspError, Waveform};

/// Resample so playback runs `ratio` times faster: output sample `i` is the
/// input read at position `i * ratio`, and the output holds
/// `round(len / ratio)` samples. A ratio of exactly 1.0 returns the input
/// unchanged.
pub fn speed_perturb(wave: &Waveform, ratio: f64) -> Result<Waveform, DspError> {
    if !(ratio > 0.5 && ratio < 2.0) || !ratio.is_finite() {
        return Err(DspError::RatioOutOfRange(ratio));
    }
    if ratio == 1.0 {
        return Ok(wave.clone());
    }
    let len = wave.samples.len();
    let out_len = (len as f64 / ratio).round() as usize;
    let mut samples = Vec::with_capacity(out_len);
    for i in 0..out_len {
        let pos = i as f64 * ratio;
        let i0 = (pos.floor() as usize).min(len - 1);
        let i1 = (i0 + 1).min(len - 1);
        let frac = pos - pos.floor();
        let a = f64::from(wave.samples[i0]);
        let b = f64::from(wave.samples[i1]);
        samples.push((a + frac * (b - a)) as f32);
    }
    Ok(Waveform::new(samples, wave.sample_rate))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tone(freq: f64, len: usize) -> Waveform {
        let samples = (0..len)
            .map(|n| (0.5 * (2.0 * std::f64::consts::PI * freq * n as f64 / 16_000.0).sin()) as f32)
            .collect();
        Waveform::new(samples, 16_000)
    }

    #[test]
    fn unity_ratio_is_identity() {
        let w = tone(440.0, 1_000);
        assert_eq!(speed_perturb(&w, 1.0).unwrap().samples, w.samples);
    }

    #[test]
    fn output_length_follows_ratio() {
        let w = tone(440.0, 16_000);
        assert_eq!(speed_perturb(&w, 0.9).unwrap().len(), (16_000f64 / 0.9).round() as usize);
        assert_eq!(speed_perturb(&w, 1.1).unwrap().len(), (16_000f64 / 1.1).round() as usize);
    }

    #[test]
    fn speedup_shifts_tone_frequency() {
        let w = tone(400.0, 32_000);
        let fast = speed_perturb(&w, 1.1).unwrap();
        let zero_crossings = |s: &[f32]| {
            s.windows(2)
                .filter(|p| (p[0] < 0.0) != (p[1] < 0.0))
                .count() as f64
        };
        let f_in = zero_crossings(&w.samples) / 2.0 / w.duration_seconds();
        let f_out = zero_crossings(&fast.samples) / 2.0 / fast.duration_seconds();
        assert!((f_in - 400.0).abs() < 2.0);
        assert!((f_out - 440.0).abs() < 2.0, "got {f_out} Hz");
    }

    #[test]
    fn out_of_range_ratio_is_rejected() {
        let w = tone(440.0, 100);
        for r in [0.5, 2.0, 0.0, -1.0, f64::NAN] {
            assert!(matches!(speed_perturb(&w, r), Err(DspError::RatioOutOfRange(_))));
        }
    }

    #[test]
    fn empty_input_gives_empty_output() {
        let w = Waveform::new(vec![], 16_000);
        assert!(speed_perturb(&w, 1.1).unwrap().is_empty());
    }
}
