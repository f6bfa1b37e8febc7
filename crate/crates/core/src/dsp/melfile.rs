//! On-disk spectrogram format: an 8-byte magic, row and column counts as
//! little-endian u64, then the matrix row-major as little-endian f32.

use std::fs;
use std::path::Path;

use ndarray::Array2;

use super::DspError;

pub const MAGIC: &[u8; 8] = b"CSAUGMEL";
const HEADER_LEN: usize = 24;

pub fn write_matrix(path: &Path, matrix: &Array2<f64>) -> Result<(), DspError> {
    let (rows, cols) = matrix.dim();
    let mut out = Vec::with_capacity(HEADER_LEN + rows * cols * 4);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(rows as u64).to_le_bytes());
    out.extend_from_slice(&(cols as u64).to_le_bytes());
    for row in matrix.rows() {
        for &v in row {
            out.extend_from_slice(&(v as f32).to_le_bytes());
        }
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_matrix(path: &Path) -> Result<Array2<f64>, DspError> {
    let bytes = fs::read(path)?;
    let bad = |detail: String| DspError::BadSpectrogramFile {
        path: path.display().to_string(),
        detail,
    };
    if bytes.len() < HEADER_LEN {
        return Err(bad("shorter than the 24-byte header".into()));
    }
    if &bytes[0..8] != MAGIC {
        return Err(bad("bad magic".into()));
    }
    let rows = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    let cols = u64::from_le_bytes(bytes[16..24].try_into().unwrap());
    let cells = rows
        .checked_mul(cols)
        .filter(|&n| n <= (usize::MAX / 4) as u64)
        .ok_or_else(|| bad(format!("implausible shape {rows} x {cols}")))?;
    let expect = HEADER_LEN + cells as usize * 4;
    if bytes.len() != expect {
        return Err(bad(format!(
            "payload is {} bytes, shape {rows} x {cols} needs {}",
            bytes.len() - HEADER_LEN,
            expect - HEADER_LEN
        )));
    }
    let data: Vec<f64> = bytes[HEADER_LEN..]
        .chunks_exact(4)
        .map(|b| f64::from(f32::from_le_bytes([b[0], b[1], b[2], b[3]])))
        .collect();
    Array2::from_shape_vec((rows as usize, cols as usize), data)
        .map_err(|e| bad(e.to_string()))
}
