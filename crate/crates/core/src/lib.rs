//! Image steganography with weighted matching and simple LSB insertion.
//!
//! A payload is hidden one bit per RGB channel byte behind a 32-bit
//! big-endian length header. Extraction is blind: it needs the stego image
//! and the algorithm, never the cover.
//!
//! ```
//! use wmstego::{embed_weighted, extract_weighted, metrics, RgbImage};
//!
//! let cover = RgbImage::new(8, 8, (0..192).map(|i| (i * 37 % 256) as u8).collect()).unwrap();
//! let result = embed_weighted(&cover, b"hi").unwrap();
//! assert_eq!(extract_weighted(&result.stego).unwrap(), b"hi");
//! let report = metrics::psnr(&cover, &result.stego).unwrap();
//! assert!(report.mse <= 1.0);
//! ```

pub mod bitstream;
pub mod image_io;
pub mod metrics;
pub mod stego;

pub use bitstream::{
    bits_to_bytes, bytes_to_bits, decode_header, encode_header, BitStream, BitStreamError,
    HEADER_BITS,
};
pub use image_io::{
    decode_image, encode_image, load_image, save_image, ImageError, ImageFormat, RgbImage,
};
pub use metrics::{mse, psnr, Psnr, PsnrReport, ShapeMismatch};
pub use stego::{
    capacity, embed, embed_lsb, embed_weighted, extract, extract_lsb, extract_weighted,
    majority_bit, Algorithm, EmbedResult, StegoError,
};
