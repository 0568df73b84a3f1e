//! Binary field snapshots.
//!
//! Layout, all little-endian:
//!
//! | bytes | content                         |
//! |-------|---------------------------------|
//! | 4     | magic `ANS1`                    |
//! | 2     | format version (u16, = 1)       |
//! | 4     | N (u32)                         |
//! | 8     | L (f64)                         |
//! | 8     | time (f64)                      |
//! | 1     | component count (u8, = 2)       |
//! | 32 N² | (re, im) f64 pairs, component-major, each component row-major in FFT order |

use std::path::Path;

use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{make_grid, SpectralField};

pub const MAGIC: [u8; 4] = *b"ANS1";
pub const VERSION: u16 = 1;
const HEADER_LEN: usize = 4 + 2 + 4 + 8 + 8 + 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub field: SpectralField,
    pub time: f64,
}

pub fn encode_snapshot(field: &SpectralField, time: f64) -> Vec<u8> {
    let grid = field.grid();
    let mut out = Vec::with_capacity(HEADER_LEN + 32 * grid.len());
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(grid.n() as u32).to_le_bytes());
    out.extend_from_slice(&grid.length().to_le_bytes());
    out.extend_from_slice(&time.to_le_bytes());
    out.push(2);
    for c in 0..2 {
        for z in field.component(c) {
            out.extend_from_slice(&z.re.to_le_bytes());
            out.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    out
}

fn f64_at(bytes: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(bytes[at..at + 8].try_into().expect("8-byte slice"))
}

/// Decodes and validates a snapshot; invariant violations name the property.
pub fn decode_snapshot(bytes: &[u8]) -> Result<Snapshot> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Truncated {
            expected: HEADER_LEN,
            found: bytes.len(),
        });
    }
    let magic: [u8; 4] = bytes[0..4].try_into().expect("4-byte slice");
    if magic != MAGIC {
        return Err(Error::BadMagic(magic));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != VERSION {
        return Err(Error::BadVersion(version));
    }
    let n = u32::from_le_bytes(bytes[6..10].try_into().expect("4-byte slice")) as usize;
    let length = f64_at(bytes, 10);
    let time = f64_at(bytes, 18);
    let components = bytes[26];
    if components != 2 {
        return Err(Error::BadHeader(format!("component count {components}, expected 2")));
    }
    let grid = make_grid(n, length).map_err(|e| Error::BadHeader(e.to_string()))?;
    let expected = HEADER_LEN + 32 * n * n;
    if bytes.len() != expected {
        return Err(Error::Truncated {
            expected,
            found: bytes.len(),
        });
    }
    let read = |c: usize| -> Vec<Complex64> {
        (0..n * n)
            .map(|i| {
                let at = HEADER_LEN + 16 * (c * n * n + i);
                Complex64::new(f64_at(bytes, at), f64_at(bytes, at + 8))
            })
            .collect()
    };
    let field = SpectralField::from_coefficients(&grid, read(0), read(1))?;
    field.validate()?;
    Ok(Snapshot { field, time })
}

pub fn write_snapshot(field: &SpectralField, time: f64, path: &Path) -> Result<()> {
    std::fs::write(path, encode_snapshot(field, time)).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let bytes = std::fs::read(path).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })?;
    decode_snapshot(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Invariant;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn round_trip_is_bitwise(seed in any::<u64>(), time in -1e6f64..1e6, n in prop::sample::select(vec![8usize, 16, 32])) {
            let g = make_grid(n, 1.0 + (seed % 7) as f64).unwrap();
            let f = SpectralField::random(&g, 2.0, 1.0 + (seed % 3) as f64, seed).unwrap();
            let bytes = encode_snapshot(&f, time);
            let back = decode_snapshot(&bytes).unwrap();
            prop_assert_eq!(back.time.to_bits(), time.to_bits());
            prop_assert_eq!(encode_snapshot(&back.field, back.time), bytes);
        }
    }

    #[test]
    fn rejects_truncation_and_bad_magic() {
        let g = make_grid(8, 1.0).unwrap();
        let f = SpectralField::random(&g, 2.0, 1.0, 1).unwrap();
        let bytes = encode_snapshot(&f, 0.5);
        assert!(matches!(
            decode_snapshot(&bytes[..bytes.len() - 3]),
            Err(Error::Truncated { .. })
        ));
        assert!(matches!(decode_snapshot(&bytes[..10]), Err(Error::Truncated { .. })));
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(decode_snapshot(&bad), Err(Error::BadMagic(_))));
    }

    #[test]
    fn rejects_mean_mode() {
        let g = make_grid(8, 1.0).unwrap();
        let mut f = SpectralField::random(&g, 2.0, 1.0, 1).unwrap();
        f.component_mut(1)[0] = Complex64::new(0.25, 0.0);
        let bytes = encode_snapshot(&f, 0.0);
        assert!(matches!(
            decode_snapshot(&bytes),
            Err(Error::InvariantViolation(Invariant::ZeroMean))
        ));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.ans");
        let g = make_grid(16, 2.0).unwrap();
        let f = SpectralField::random(&g, 3.0, 1.0, 4).unwrap();
        write_snapshot(&f, 1.25, &path).unwrap();
        let s = read_snapshot(&path).unwrap();
        assert_eq!(s.field, f);
        assert_eq!(s.time, 1.25);
    }
}
