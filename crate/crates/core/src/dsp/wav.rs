//! Minimal RIFF/WAVE codec for mono 16-bit PCM.
//!
//! The reader walks the chunk list, so files with extra chunks (LIST, fact)
//! load fine; the writer always emits the canonical 44-byte header. Sample
//! values map as `i / 32768.0` on read and `round(x * 32768.0)` clamped to
//! the i16 range on write, so a read/modify/write cycle of in-range samples
//! is lossless.

use std::fs;
use std::path::Path;

use super::{DspError, Waveform};

pub fn read_wav(path: &Path) -> Result<Waveform, DspError> {
    let bytes = fs::read(path)?;
    let loc = || path.display().to_string();
    let truncated = |detail: &str| DspError::TruncatedWav {
        path: loc(),
        detail: detail.to_string(),
    };
    let unsupported = |detail: String| DspError::UnsupportedWav { path: loc(), detail };

    if bytes.len() < 12 {
        return Err(truncated("shorter than a RIFF header"));
    }
    if &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(unsupported("not a RIFF/WAVE file".into()));
    }

    let mut fmt: Option<(u16, u16, u32, u16)> = None;
    let mut data: Option<&[u8]> = None;
    let mut off = 12;
    while off + 8 <= bytes.len() {
        let id = &bytes[off..off + 4];
        let size = u32::from_le_bytes(bytes[off + 4..off + 8].try_into().unwrap()) as usize;
        let body_start = off + 8;
        if body_start + size > bytes.len() {
            return Err(truncated(&format!(
                "chunk {} declares {size} bytes past end of file",
                String::from_utf8_lossy(id)
            )));
        }
        let body = &bytes[body_start..body_start + size];
        match id {
            b"fmt " => {
                if size < 16 {
                    return Err(truncated("fmt chunk shorter than 16 bytes"));
                }
                fmt = Some((
                    u16::from_le_bytes(body[0..2].try_into().unwrap()),
                    u16::from_le_bytes(body[2..4].try_into().unwrap()),
                    u32::from_le_bytes(body[4..8].try_into().unwrap()),
                    u16::from_le_bytes(body[14..16].try_into().unwrap()),
                ));
            }
            b"data" => data = Some(body),
            _ => {}
        }
        off = body_start + size + (size & 1);
    }

    let (format, channels, sample_rate, bits) =
        fmt.ok_or_else(|| truncated("missing fmt chunk"))?;
    let data = data.ok_or_else(|| truncated("missing data chunk"))?;
    if format != 1 {
        return Err(unsupported(format!("format tag {format}, only PCM (1) is supported")));
    }
    if channels != 1 {
        return Err(unsupported(format!("{channels} channels, only mono is supported")));
    }
    if bits != 16 {
        return Err(unsupported(format!("{bits}-bit samples, only 16-bit is supported")));
    }
    if data.len() % 2 != 0 {
        return Err(truncated("data chunk has an odd byte count"));
    }

    let samples = data
        .chunks_exact(2)
        .map(|b| f32::from(i16::from_le_bytes([b[0], b[1]])) / 32768.0)
        .collect();
    Ok(Waveform { samples, sample_rate })
}

pub fn write_wav(path: &Path, wave: &Waveform) -> Result<(), DspError> {
    let data_len = wave.samples.len() * 2;
    let mut out = Vec::with_capacity(44 + data_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&wave.sample_rate.to_le_bytes());
    out.extend_from_slice(&(wave.sample_rate * 2).to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes());
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    for &x in &wave.samples {
        let q = (f64::from(x) * 32768.0).round().clamp(-32768.0, 32767.0) as i16;
        out.extend_from_slice(&q.to_le_bytes());
    }
    fs::write(path, out)?;
    Ok(())
}
