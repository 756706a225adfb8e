//! Bit-level payload representation and the embedded length header.
//!
//! Every conversion here is most-significant-bit first: the byte `0x46`
//! (`'F'`) becomes `0 1 0 0 0 1 1 0`. The header is a fixed 32-bit unsigned
//! big-endian count of payload *bytes*, emitted ahead of the payload bits in
//! the same stream.

use std::fmt;

use thiserror::Error;

/// Number of stream bits occupied by the length header.
pub const HEADER_BITS: usize = 32;

/// Largest payload length, in bytes, the header can describe.
pub const MAX_PAYLOAD_LEN: u64 = u32::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitStreamError {
    #[error("malformed bit stream: {len} bits is not a whole number of bytes")]
    Malformed { len: usize },
    #[error("malformed header: expected {HEADER_BITS} bits, got {len}")]
    MalformedHeader { len: usize },
    #[error("payload length {len} does not fit in the 32-bit header")]
    HeaderOverflow { len: u64 },
    #[error("invalid bit value {value} at index {index}; bits must be 0 or 1")]
    InvalidBit { index: usize, value: u8 },
}

/// An ordered sequence of bits.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitStream {
    bits: Vec<bool>,
}

impl BitStream {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            bits: Vec::with_capacity(bits),
        }
    }

    /// Builds a stream from `0`/`1` digits, rejecting any other value.
    pub fn from_digits(digits: &[u8]) -> Result<Self, BitStreamError> {
        digits
            .iter()
            .enumerate()
            .map(|(index, &value)| match value {
                0 => Ok(false),
                1 => Ok(true),
                _ => Err(BitStreamError::InvalidBit { index, value }),
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend_from(&mut self, other: &BitStream) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn get(&self, index: usize) -> Option<bool> {
        self.bits.get(index).copied()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    /// The stream as `0`/`1` digits.
    pub fn to_digits(&self) -> Vec<u8> {
        self.bits.iter().map(|&b| u8::from(b)).collect()
    }
}

impl FromIterator<bool> for BitStream {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

impl From<Vec<bool>> for BitStream {
    fn from(bits: Vec<bool>) -> Self {
        Self { bits }
    }
}

impl fmt::Debug for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitStream(")?;
        for (i, bit) in self.bits.iter().enumerate() {
            if i > 0 && i % 8 == 0 {
                f.write_str("_")?;
            }
            f.write_str(if *bit { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// Iterates the bits of `byte`, most significant first.
pub(crate) fn byte_bits(byte: u8) -> impl Iterator<Item = bool> {
    (0..8).rev().map(move |shift| (byte >> shift) & 1 == 1)
}

pub fn bytes_to_bits(payload: &[u8]) -> BitStream {
    let mut out = BitStream::with_capacity(payload.len() * 8);
    for &byte in payload {
        out.bits.extend(byte_bits(byte));
    }
    out
}

pub fn bits_to_bytes(bits: &BitStream) -> Result<Vec<u8>, BitStreamError> {
    if !bits.len().is_multiple_of(8) {
        return Err(BitStreamError::Malformed { len: bits.len() });
    }
    Ok(pack_bits(bits.as_slice()))
}

/// Packs whole bytes MSB-first. Caller guarantees `bits.len() % 8 == 0`.
pub(crate) fn pack_bits(bits: &[bool]) -> Vec<u8> {
    bits.chunks_exact(8)
        .map(|chunk| chunk.iter().fold(0u8, |acc, &b| (acc << 1) | u8::from(b)))
        .collect()
}

/// Encodes a payload length (in bytes) as the 32-bit header.
pub fn encode_header(payload_len: u64) -> Result<BitStream, BitStreamError> {
    if payload_len > MAX_PAYLOAD_LEN {
        return Err(BitStreamError::HeaderOverflow { len: payload_len });
    }
    Ok((0..HEADER_BITS)
        .rev()
        .map(|shift| (payload_len >> shift) & 1 == 1)
        .collect())
}

pub fn decode_header(bits: &BitStream) -> Result<u64, BitStreamError> {
    if bits.len() != HEADER_BITS {
        return Err(BitStreamError::MalformedHeader { len: bits.len() });
    }
    Ok(bits.iter().fold(0u64, |acc, b| (acc << 1) | u64::from(b)))
}

/// Header bits followed by the payload bits: the full embedded stream.
pub fn encode_stream(payload: &[u8]) -> Result<BitStream, BitStreamError> {
    let mut stream = encode_header(payload.len() as u64)?;
    stream.bits.reserve(payload.len() * 8);
    for &byte in payload {
        stream.bits.extend(byte_bits(byte));
    }
    Ok(stream)
}
