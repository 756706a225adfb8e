//! Embedding and blind extraction.
//!
//! Both algorithms carry one stream bit per channel byte and touch only bit 0.
//! The stream is the 32-bit length header followed by the payload bits,
//! written into channel bytes `0, 1, 2, ...` in traversal order.
//!
//! * [`Algorithm::SimpleLsb`] overwrites bit 0 with the stream bit.
//! * [`Algorithm::WeightedMatching`] takes the majority of bits 1..=3 (the
//!   "weighted bit") and overwrites bit 0 with 1 when it equals the stream
//!   bit, 0 when it does not. Since bits 1..=3 never change, the receiver can
//!   recompute the weighted bit from the stego image alone.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bitstream::{self, BitStream, BitStreamError, HEADER_BITS};
use crate::image_io::RgbImage;

#[derive(Debug, Error)]
pub enum StegoError {
    #[error(
        "payload of {payload_bytes} bytes exceeds cover capacity of {capacity_bytes} bytes \
         ({required_bits} channel bytes needed, {available_bits} available)"
    )]
    CapacityExceeded {
        payload_bytes: usize,
        capacity_bytes: usize,
        required_bits: u64,
        available_bits: usize,
    },
    #[error("corrupt stego image: header declares {declared_bytes} payload bytes, image holds at most {capacity_bytes}")]
    CorruptStego {
        declared_bytes: u64,
        capacity_bytes: usize,
    },
    #[error("corrupt stego image: {channel_bytes} channel bytes cannot hold the {HEADER_BITS}-bit header")]
    MissingHeader { channel_bytes: usize },
    #[error("stream of {stream_bits} bits does not fit in {channel_bytes} channel bytes")]
    StreamTooLong {
        stream_bits: usize,
        channel_bytes: usize,
    },
    #[error(transparent)]
    Header(#[from] BitStreamError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Algorithm {
    #[default]
    WeightedMatching,
    SimpleLsb,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::WeightedMatching, Algorithm::SimpleLsb];

    /// Short identifier used on the command line and in summaries.
    pub fn id(self) -> &'static str {
        match self {
            Algorithm::WeightedMatching => "weighted",
            Algorithm::SimpleLsb => "lsb",
        }
    }

    /// Human-readable name for result tables.
    pub fn display_name(self) -> &'static str {
        match self {
            Algorithm::WeightedMatching => "Proposed algorithm",
            Algorithm::SimpleLsb => "Simple LSB insertion",
        }
    }

    /// Returns `byte` carrying stream bit `bit`.
    #[inline]
    pub fn write_bit(self, byte: u8, bit: bool) -> u8 {
        match self {
            Algorithm::WeightedMatching => embed_weighted_bit(byte, bit),
            Algorithm::SimpleLsb => set_lsb(byte, bit),
        }
    }

    #[inline]
    pub fn read_bit(self, byte: u8) -> bool {
        match self {
            Algorithm::WeightedMatching => extract_weighted_bit(byte),
            Algorithm::SimpleLsb => byte & 1 == 1,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown algorithm {0:?} (expected \"weighted\" or \"lsb\")")]
pub struct ParseAlgorithmError(String);

impl FromStr for Algorithm {
    type Err = ParseAlgorithmError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "weighted" | "weighted-matching" | "wm" => Ok(Algorithm::WeightedMatching),
            "lsb" | "simple-lsb" => Ok(Algorithm::SimpleLsb),
            _ => Err(ParseAlgorithmError(s.to_owned())),
        }
    }
}

#[inline]
fn set_lsb(byte: u8, bit: bool) -> u8 {
    (byte & !1) | u8::from(bit)
}

/// Majority value of bits 1, 2 and 3. Three votes, so never a tie.
#[inline]
pub fn majority_bit(byte: u8) -> bool {
    let b1 = (byte >> 1) & 1;
    let b2 = (byte >> 2) & 1;
    let b3 = (byte >> 3) & 1;
    // majority(a, b, c) = ab | bc | ca
    (b1 & b2) | (b2 & b3) | (b3 & b1) == 1
}

/// Sets the LSB to the match flag `bit == majority_bit(byte)`.
#[inline]
pub fn embed_weighted_bit(byte: u8, bit: bool) -> u8 {
    set_lsb(byte, bit == majority_bit(byte))
}

/// LSB 1 means the weighted bit is the secret bit, LSB 0 means its negation.
#[inline]
pub fn extract_weighted_bit(byte: u8) -> bool {
    let flag = byte & 1 == 1;
    if flag {
        majority_bit(byte)
    } else {
        !majority_bit(byte)
    }
}

/// Stego image plus bookkeeping about what changed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedResult {
    pub stego: RgbImage,
    /// Stream length including the 32 header bits.
    pub bits_embedded: usize,
    pub channel_bytes_used: usize,
    /// Channel bytes whose LSB differs from the cover.
    pub lsb_flips: usize,
}

/// Payload capacity in bytes once the header is reserved.
pub fn capacity(img: &RgbImage) -> usize {
    capacity_for(img.channels().len())
}

fn capacity_for(channel_bytes: usize) -> usize {
    channel_bytes.saturating_sub(HEADER_BITS) / 8
}

fn check_capacity(cover: &RgbImage, payload_len: usize) -> Result<(), StegoError> {
    let available_bits = cover.channels().len();
    let required_bits = HEADER_BITS as u64 + 8 * payload_len as u64;
    if required_bits > available_bits as u64 {
        return Err(StegoError::CapacityExceeded {
            payload_bytes: payload_len,
            capacity_bytes: capacity(cover),
            required_bits,
            available_bits,
        });
    }
    Ok(())
}

/// Writes `bits` into the leading channel bytes, no header involved.
///
/// Returns the new channel bytes and the number of LSB flips.
pub fn embed_bits(
    algorithm: Algorithm,
    channels: &[u8],
    bits: &BitStream,
) -> Result<(Vec<u8>, usize), StegoError> {
    if bits.len() > channels.len() {
        return Err(StegoError::StreamTooLong {
            stream_bits: bits.len(),
            channel_bytes: channels.len(),
        });
    }
    let mut out = channels.to_vec();
    let mut flips = 0;
    for (byte, bit) in out.iter_mut().zip(bits.iter()) {
        let written = algorithm.write_bit(*byte, bit);
        flips += usize::from(written != *byte);
        *byte = written;
    }
    Ok((out, flips))
}

/// Reads `count` stream bits from the leading channel bytes.
pub fn extract_bits(
    algorithm: Algorithm,
    channels: &[u8],
    count: usize,
) -> Result<BitStream, StegoError> {
    if count > channels.len() {
        return Err(StegoError::StreamTooLong {
            stream_bits: count,
            channel_bytes: channels.len(),
        });
    }
    Ok(channels[..count]
        .iter()
        .map(|&b| algorithm.read_bit(b))
        .collect())
}

pub fn embed(
    algorithm: Algorithm,
    cover: &RgbImage,
    payload: &[u8],
) -> Result<EmbedResult, StegoError> {
    // size check strictly precedes any write
    check_capacity(cover, payload.len())?;
    let stream = bitstream::encode_stream(payload)?;

    let mut stego = cover.clone();
    let mut lsb_flips = 0;
    for (byte, bit) in stego.channels_mut().iter_mut().zip(stream.iter()) {
        let written = algorithm.write_bit(*byte, bit);
        lsb_flips += usize::from(written != *byte);
        *byte = written;
    }

    Ok(EmbedResult {
        stego,
        bits_embedded: stream.len(),
        channel_bytes_used: stream.len(),
        lsb_flips,
    })
}

pub fn extract(algorithm: Algorithm, stego: &RgbImage) -> Result<Vec<u8>, StegoError> {
    let channels = stego.channels();
    if channels.len() < HEADER_BITS {
        return Err(StegoError::MissingHeader {
            channel_bytes: channels.len(),
        });
    }
    let header = extract_bits(algorithm, channels, HEADER_BITS)?;
    let declared = bitstream::decode_header(&header)?;

    // bounds check before allocating anything sized by the header
    let capacity_bytes = capacity_for(channels.len());
    if declared > capacity_bytes as u64 {
        return Err(StegoError::CorruptStego {
            declared_bytes: declared,
            capacity_bytes,
        });
    }

    let body = &channels[HEADER_BITS..HEADER_BITS + declared as usize * 8];
    Ok(body
        .chunks_exact(8)
        .map(|chunk| {
            chunk
                .iter()
                .fold(0u8, |acc, &b| (acc << 1) | u8::from(algorithm.read_bit(b)))
        })
        .collect())
}

pub fn embed_weighted(cover: &RgbImage, payload: &[u8]) -> Result<EmbedResult, StegoError> {
    embed(Algorithm::WeightedMatching, cover, payload)
}

pub fn extract_weighted(stego: &RgbImage) -> Result<Vec<u8>, StegoError> {
    extract(Algorithm::WeightedMatching, stego)
}

pub fn embed_lsb(cover: &RgbImage, payload: &[u8]) -> Result<EmbedResult, StegoError> {
    embed(Algorithm::SimpleLsb, cover, payload)
}

pub fn extract_lsb(stego: &RgbImage) -> Result<Vec<u8>, StegoError> {
    extract(Algorithm::SimpleLsb, stego)
}
