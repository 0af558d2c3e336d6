//! Minimal binary PNM encoders (P5 grayscale, P6 RGB).
//!
//! Output is byte-exact for identical inputs: header `P5`/`P6`, a single
//! `width height` line, `255` maxval, then the raw payload row-major from
//! the top-left pixel.

/// Encode an 8-bit grayscale image as binary PGM (P5, maxval 255).
///
/// `pixels` is row-major, length `width * height`.
pub fn encode_pgm(width: usize, height: usize, pixels: &[u8]) -> Vec<u8> {
    assert_eq!(pixels.len(), width * height, "pgm payload size mismatch");
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    out
}

/// Encode an 8-bit RGB image as binary PPM (P6, maxval 255).
///
/// `pixels` is row-major RGB triplets, length `width * height * 3`.
pub fn encode_ppm(width: usize, height: usize, pixels: &[u8]) -> Vec<u8> {
    assert_eq!(
        pixels.len(),
        width * height * 3,
        "ppm payload size mismatch"
    );
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pgm_header_and_payload() {
        let bytes = encode_pgm(2, 3, &[0, 1, 2, 3, 4, 5]);
        assert!(bytes.starts_with(b"P5\n2 3\n255\n"));
        assert_eq!(&bytes[bytes.len() - 6..], &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn ppm_header_and_payload_length() {
        let bytes = encode_ppm(4, 4, &[7u8; 48]);
        assert!(bytes.starts_with(b"P6\n4 4\n255\n"));
        assert_eq!(bytes.len(), b"P6\n4 4\n255\n".len() + 48);
    }

    #[test]
    #[should_panic]
    fn pgm_rejects_wrong_payload_size() {
        encode_pgm(2, 2, &[0u8; 3]);
    }
}
