//! Lossless raster I/O and the channel-byte data model.
//!
//! An [`RgbImage`] is a flat run of R, G, B channel bytes in row-major pixel
//! order. Channel index `i` belongs to pixel `i / 3` and component `i % 3`
//! (0 = R, 1 = G, 2 = B); embedding walks the indices in ascending order.
//! Alpha, when the source has it, rides along in a separate plane and is
//! written back untouched.

mod bmp;
mod png_codec;

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ImageError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),
    #[error("lossy cover unsupported: {0}")]
    LossyUnsupported(String),
    #[error("unsupported bit depth: {0}-bit samples (8 bits per RGB channel required)")]
    UnsupportedDepth(u16),
    #[error("unsupported color type: {0} (RGB or RGBA required)")]
    UnsupportedColor(&'static str),
    #[error("corrupt image: {0}")]
    Decode(String),
    #[error("invalid image dimensions {width}x{height}")]
    InvalidDimensions { width: u32, height: u32 },
    #[error("channel buffer holds {actual} bytes, {width}x{height} needs {expected}")]
    ChannelLength {
        width: u32,
        height: u32,
        expected: usize,
        actual: usize,
    },
}

/// Color component of a channel byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Red,
    Green,
    Blue,
}

/// A rectangular 8-bit RGB image stored as flat channel bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: u32,
    height: u32,
    channels: Vec<u8>,
    alpha: Option<Vec<u8>>,
}

fn channel_len(width: u32, height: u32) -> Result<usize, ImageError> {
    if width == 0 || height == 0 {
        return Err(ImageError::InvalidDimensions { width, height });
    }
    (width as usize)
        .checked_mul(height as usize)
        .and_then(|n| n.checked_mul(3))
        .ok_or(ImageError::InvalidDimensions { width, height })
}

impl RgbImage {
    pub fn new(width: u32, height: u32, channels: Vec<u8>) -> Result<Self, ImageError> {
        let expected = channel_len(width, height)?;
        if channels.len() != expected {
            return Err(ImageError::ChannelLength {
                width,
                height,
                expected,
                actual: channels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            channels,
            alpha: None,
        })
    }

    /// Like [`RgbImage::new`] but with one alpha byte per pixel.
    pub fn with_alpha(
        width: u32,
        height: u32,
        channels: Vec<u8>,
        alpha: Vec<u8>,
    ) -> Result<Self, ImageError> {
        let mut img = Self::new(width, height, channels)?;
        let pixels = img.pixel_count();
        if alpha.len() != pixels {
            return Err(ImageError::ChannelLength {
                width,
                height,
                expected: pixels,
                actual: alpha.len(),
            });
        }
        img.alpha = Some(alpha);
        Ok(img)
    }

    /// An image with every channel byte set to `value`.
    pub fn filled(width: u32, height: u32, value: u8) -> Result<Self, ImageError> {
        let len = channel_len(width, height)?;
        Self::new(width, height, vec![value; len])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.channels.len() / 3
    }

    pub fn channels(&self) -> &[u8] {
        &self.channels
    }

    /// Mutable channel bytes. The slice length is fixed, so the shape
    /// invariant cannot be broken through it.
    pub fn channels_mut(&mut self) -> &mut [u8] {
        &mut self.channels
    }

    pub fn into_channels(self) -> Vec<u8> {
        self.channels
    }

    pub fn alpha(&self) -> Option<&[u8]> {
        self.alpha.as_deref()
    }

    pub fn same_shape(&self, other: &RgbImage) -> bool {
        self.width == other.width && self.height == other.height
    }

    pub fn pixel(&self, x: u32, y: u32) -> Option<[u8; 3]> {
        if x >= self.width || y >= self.height {
            return None;
        }
        let i = (y as usize * self.width as usize + x as usize) * 3;
        Some([self.channels[i], self.channels[i + 1], self.channels[i + 2]])
    }

    /// Maps a channel index to `(x, y, component)` under the fixed traversal.
    pub fn locate(&self, index: usize) -> Option<(u32, u32, Component)> {
        if index >= self.channels.len() {
            return None;
        }
        let pixel = index / 3;
        let w = self.width as usize;
        let component = match index % 3 {
            0 => Component::Red,
            1 => Component::Green,
            _ => Component::Blue,
        };
        Some(((pixel % w) as u32, (pixel / w) as u32, component))
    }
}

/// Supported lossless container formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Png,
    Bmp,
}

const PNG_SIGNATURE: &[u8] = b"\x89PNG\r\n\x1a\n";

impl ImageFormat {
    /// Picks the output format from a file extension.
    pub fn from_path(path: &Path) -> Result<Self, ImageError> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .unwrap_or_default();
        match ext.as_str() {
            "png" => Ok(Self::Png),
            "bmp" | "dib" => Ok(Self::Bmp),
            "jpg" | "jpeg" | "jpe" | "jfif" | "webp" | "avif" | "heic" => Err(
                ImageError::LossyUnsupported(format!(".{ext} output would destroy embedded bits")),
            ),
            "" => Err(ImageError::UnsupportedFormat(format!(
                "{} has no extension",
                path.display()
            ))),
            other => Err(ImageError::UnsupportedFormat(format!(".{other}"))),
        }
    }

    /// Sniffs the format from leading magic bytes.
    pub fn detect(bytes: &[u8]) -> Result<Self, ImageError> {
        if bytes.starts_with(PNG_SIGNATURE) {
            Ok(Self::Png)
        } else if bytes.starts_with(b"BM") {
            Ok(Self::Bmp)
        } else if bytes.starts_with(&[0xFF, 0xD8, 0xFF]) {
            Err(ImageError::LossyUnsupported("JPEG".into()))
        } else if bytes.len() >= 12 && &bytes[..4] == b"RIFF" && &bytes[8..12] == b"WEBP" {
            Err(ImageError::LossyUnsupported("WebP".into()))
        } else if bytes.starts_with(b"GIF8") {
            Err(ImageError::UnsupportedFormat("GIF".into()))
        } else {
            Err(ImageError::UnsupportedFormat(
                "unrecognised file signature".into(),
            ))
        }
    }
}

/// Decodes an in-memory PNG or BMP file.
pub fn decode_image(bytes: &[u8]) -> Result<RgbImage, ImageError> {
    match ImageFormat::detect(bytes)? {
        ImageFormat::Png => png_codec::decode(bytes),
        ImageFormat::Bmp => bmp::decode(bytes),
    }
}

pub fn encode_image(img: &RgbImage, format: ImageFormat) -> Result<Vec<u8>, ImageError> {
    match format {
        ImageFormat::Png => png_codec::encode(img),
        ImageFormat::Bmp => bmp::encode(img),
    }
}

pub fn load_image(path: impl AsRef<Path>) -> Result<RgbImage, ImageError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| ImageError::Io {
        path: path.to_owned(),
        source,
    })?;
    decode_image(&bytes)
}

/// Writes `img` as PNG or BMP according to the extension of `path`.
pub fn save_image(img: &RgbImage, path: impl AsRef<Path>) -> Result<(), ImageError> {
    let path = path.as_ref();
    let format = ImageFormat::from_path(path)?;
    let bytes = encode_image(img, format)?;
    fs::write(path, bytes).map_err(|source| ImageError::Io {
        path: path.to_owned(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            RgbImage::new(0, 4, vec![]),
            Err(ImageError::InvalidDimensions { .. })
        ));
        assert!(matches!(
            RgbImage::new(2, 2, vec![0; 11]),
            Err(ImageError::ChannelLength {
                expected: 12,
                actual: 11,
                ..
            })
        ));
        assert!(matches!(
            RgbImage::with_alpha(2, 2, vec![0; 12], vec![0; 3]),
            Err(ImageError::ChannelLength { expected: 4, .. })
        ));
    }

    #[test]
    fn traversal_is_row_major_rgb() {
        let img = RgbImage::filled(4, 3, 0).unwrap();
        assert_eq!(img.locate(0), Some((0, 0, Component::Red)));
        assert_eq!(img.locate(2), Some((0, 0, Component::Blue)));
        assert_eq!(img.locate(3), Some((1, 0, Component::Red)));
        assert_eq!(img.locate(12 + 4), Some((1, 1, Component::Green)));
        assert_eq!(img.locate(35), Some((3, 2, Component::Blue)));
        assert_eq!(img.locate(36), None);
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(
            ImageFormat::from_path(Path::new("a.PNG")).unwrap(),
            ImageFormat::Png
        );
        assert_eq!(
            ImageFormat::from_path(Path::new("a.bmp")).unwrap(),
            ImageFormat::Bmp
        );
        assert!(matches!(
            ImageFormat::from_path(Path::new("a.jpg")),
            Err(ImageError::LossyUnsupported(_))
        ));
        assert!(matches!(
            ImageFormat::from_path(Path::new("a.tiff")),
            Err(ImageError::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn jpeg_magic_is_lossy() {
        let jpeg = [0xFF, 0xD8, 0xFF, 0xE0, 0, 0x10, b'J', b'F', b'I', b'F', 0];
        assert!(matches!(
            decode_image(&jpeg),
            Err(ImageError::LossyUnsupported(_))
        ));
        assert!(matches!(
            decode_image(b"hello"),
            Err(ImageError::UnsupportedFormat(_))
        ));
        assert!(matches!(
            decode_image(&[]),
            Err(ImageError::UnsupportedFormat(_))
        ));
    }
}
