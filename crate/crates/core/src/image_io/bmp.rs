//! Uncompressed Windows bitmap codec.
//!
//! Reads 24-bit `BI_RGB` and 32-bit `BI_RGB`/`BI_BITFIELDS` files with any of
//! the common DIB header revisions, top-down or bottom-up. Writes 24-bit
//! `BITMAPINFOHEADER` files, or 32-bit `BITMAPV4HEADER` files with an alpha
//! mask when the image carries alpha.

use super::{ImageError, RgbImage};

const FILE_HEADER_LEN: usize = 14;
const INFO_HEADER_LEN: usize = 40;
const V4_HEADER_LEN: usize = 108;

const BI_RGB: u32 = 0;
const BI_RLE8: u32 = 1;
const BI_RLE4: u32 = 2;
const BI_BITFIELDS: u32 = 3;
const BI_JPEG: u32 = 4;
const BI_PNG: u32 = 5;
const BI_ALPHABITFIELDS: u32 = 6;

const RED_MASK: u32 = 0x00FF_0000;
const GREEN_MASK: u32 = 0x0000_FF00;
const BLUE_MASK: u32 = 0x0000_00FF;
const ALPHA_MASK: u32 = 0xFF00_0000;

// 72 DPI
const PIXELS_PER_METRE: i32 = 2835;
const LCS_SRGB: u32 = 0x7352_4742;

fn truncated() -> ImageError {
    ImageError::Decode("truncated BMP header".into())
}

fn read_u16(bytes: &[u8], at: usize) -> Result<u16, ImageError> {
    bytes
        .get(at..at + 2)
        .map(|b| u16::from_le_bytes([b[0], b[1]]))
        .ok_or_else(truncated)
}

fn read_u32(bytes: &[u8], at: usize) -> Result<u32, ImageError> {
    bytes
        .get(at..at + 4)
        .map(|b| u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
        .ok_or_else(truncated)
}

fn read_i32(bytes: &[u8], at: usize) -> Result<i32, ImageError> {
    read_u32(bytes, at).map(|v| v as i32)
}

struct Layout {
    width: u32,
    height: u32,
    top_down: bool,
    bytes_per_pixel: usize,
    has_alpha: bool,
}

fn parse_header(bytes: &[u8]) -> Result<Layout, ImageError> {
    if bytes.get(..2) != Some(b"BM") {
        return Err(ImageError::Decode("missing BM signature".into()));
    }
    let dib_len = read_u32(bytes, FILE_HEADER_LEN)? as usize;

    let (width, height, bpp, compression) = match dib_len {
        12 => {
            let w = read_u16(bytes, 18)?;
            let h = read_u16(bytes, 20)?;
            (i32::from(w), i32::from(h), read_u16(bytes, 24)?, BI_RGB)
        }
        40 | 52 | 56 | 64 | 108 | 124 => (
            read_i32(bytes, 18)?,
            read_i32(bytes, 22)?,
            read_u16(bytes, 28)?,
            read_u32(bytes, 30)?,
        ),
        other => {
            return Err(ImageError::UnsupportedFormat(format!(
                "BMP header of {other} bytes"
            )))
        }
    };

    match bpp {
        1 | 4 | 8 => return Err(ImageError::UnsupportedColor("palette")),
        24 | 32 => {}
        other => return Err(ImageError::UnsupportedDepth(other)),
    }

    let has_alpha = match (bpp, compression) {
        (24, BI_RGB) | (32, BI_RGB) => false,
        (32, BI_BITFIELDS | BI_ALPHABITFIELDS) => {
            let base = FILE_HEADER_LEN + INFO_HEADER_LEN;
            let rgb = [
                read_u32(bytes, base)?,
                read_u32(bytes, base + 4)?,
                read_u32(bytes, base + 8)?,
            ];
            if rgb != [RED_MASK, GREEN_MASK, BLUE_MASK] {
                return Err(ImageError::UnsupportedFormat(
                    "BMP with non-standard channel masks".into(),
                ));
            }
            let alpha_mask = if dib_len >= 56 || compression == BI_ALPHABITFIELDS {
                read_u32(bytes, base + 12)?
            } else {
                0
            };
            match alpha_mask {
                0 => false,
                ALPHA_MASK => true,
                _ => {
                    return Err(ImageError::UnsupportedFormat(
                        "BMP with non-standard alpha mask".into(),
                    ))
                }
            }
        }
        (_, BI_JPEG) => return Err(ImageError::LossyUnsupported("JPEG-compressed BMP".into())),
        (_, BI_PNG) => return Err(ImageError::UnsupportedFormat("PNG-compressed BMP".into())),
        (_, BI_RLE8 | BI_RLE4) => {
            return Err(ImageError::UnsupportedFormat(
                "run-length encoded BMP".into(),
            ))
        }
        (_, other) => {
            return Err(ImageError::UnsupportedFormat(format!(
                "BMP compression {other} at {bpp} bits per pixel"
            )))
        }
    };

    if width <= 0 || height == 0 {
        return Err(ImageError::InvalidDimensions {
            width: width.max(0) as u32,
            height: height.unsigned_abs(),
        });
    }

    Ok(Layout {
        width: width as u32,
        height: height.unsigned_abs(),
        top_down: height < 0,
        bytes_per_pixel: usize::from(bpp / 8),
        has_alpha,
    })
}

fn row_stride(width: u32, bytes_per_pixel: usize) -> u64 {
    (u64::from(width) * bytes_per_pixel as u64).div_ceil(4) * 4
}

pub(super) fn decode(bytes: &[u8]) -> Result<RgbImage, ImageError> {
    let layout = parse_header(bytes)?;
    let data_offset = read_u32(bytes, 10)? as u64;
    let stride = row_stride(layout.width, layout.bytes_per_pixel);
    let data_len = stride * u64::from(layout.height);
    if data_offset.saturating_add(data_len) > bytes.len() as u64 {
        return Err(ImageError::Decode(format!(
            "pixel array needs {data_len} bytes at offset {data_offset}, file has {}",
            bytes.len()
        )));
    }
    // bounded by the file length from here on
    let data = &bytes[data_offset as usize..(data_offset + data_len) as usize];
    let stride = stride as usize;
    let (width, height) = (layout.width as usize, layout.height as usize);

    let mut channels = Vec::with_capacity(width * height * 3);
    let mut alpha = layout.has_alpha.then(|| Vec::with_capacity(width * height));
    for y in 0..height {
        let src_row = if layout.top_down { y } else { height - 1 - y };
        let row = &data[src_row * stride..][..width * layout.bytes_per_pixel];
        for px in row.chunks_exact(layout.bytes_per_pixel) {
            channels.extend_from_slice(&[px[2], px[1], px[0]]);
            if let Some(alpha) = alpha.as_mut() {
                alpha.push(px[3]);
            }
        }
    }

    match alpha {
        None => RgbImage::new(layout.width, layout.height, channels),
        Some(alpha) => RgbImage::with_alpha(layout.width, layout.height, channels, alpha),
    }
}

pub(super) fn encode(img: &RgbImage) -> Result<Vec<u8>, ImageError> {
    let (width, height) = (img.width(), img.height());
    let too_big = || ImageError::InvalidDimensions { width, height };
    let w = i32::try_from(width).map_err(|_| too_big())?;
    let h = i32::try_from(height).map_err(|_| too_big())?;

    let alpha = img.alpha();
    let (dib_len, bpp) = match alpha {
        None => (INFO_HEADER_LEN, 3usize),
        Some(_) => (V4_HEADER_LEN, 4usize),
    };
    let stride = row_stride(width, bpp);
    let image_len = stride
        .checked_mul(u64::from(height))
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(too_big)?;
    let offset = (FILE_HEADER_LEN + dib_len) as u32;
    let file_len = offset.checked_add(image_len).ok_or_else(too_big)?;

    let mut out = Vec::with_capacity(file_len as usize);
    out.extend_from_slice(b"BM");
    out.extend_from_slice(&file_len.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&offset.to_le_bytes());

    out.extend_from_slice(&(dib_len as u32).to_le_bytes());
    out.extend_from_slice(&w.to_le_bytes());
    out.extend_from_slice(&h.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&((bpp * 8) as u16).to_le_bytes());
    let compression = if alpha.is_some() {
        BI_BITFIELDS
    } else {
        BI_RGB
    };
    out.extend_from_slice(&compression.to_le_bytes());
    out.extend_from_slice(&image_len.to_le_bytes());
    out.extend_from_slice(&PIXELS_PER_METRE.to_le_bytes());
    out.extend_from_slice(&PIXELS_PER_METRE.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    if alpha.is_some() {
        for mask in [RED_MASK, GREEN_MASK, BLUE_MASK, ALPHA_MASK] {
            out.extend_from_slice(&mask.to_le_bytes());
        }
        out.extend_from_slice(&LCS_SRGB.to_le_bytes());
        // CIE endpoints and gamma, unused for sRGB
        out.resize(out.len() + 36 + 12, 0);
    }
    debug_assert_eq!(out.len(), offset as usize);

    let row_len = width as usize;
    let padding = stride as usize - row_len * bpp;
    let channels = img.channels();
    for y in (0..height as usize).rev() {
        let start = y * row_len;
        for x in start..start + row_len {
            let rgb = &channels[x * 3..x * 3 + 3];
            out.extend_from_slice(&[rgb[2], rgb[1], rgb[0]]);
            if let Some(alpha) = alpha {
                out.push(alpha[x]);
            }
        }
        out.resize(out.len() + padding, 0);
    }
    Ok(out)
}
