//! MSE and PSNR over all channel bytes jointly, 8-bit peak (255).

use std::fmt;

use thiserror::Error;

use crate::image_io::RgbImage;

pub const PEAK: f64 = 255.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("image shapes differ: {}x{} vs {}x{}", .left.0, .left.1, .right.0, .right.1)]
pub struct ShapeMismatch {
    pub left: (u32, u32),
    pub right: (u32, u32),
}

/// PSNR in decibels, or `Identical` when the images match exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Identical,
    Decibels(f64),
}

impl Psnr {
    pub fn decibels(self) -> Option<f64> {
        match self {
            Psnr::Identical => None,
            Psnr::Decibels(db) => Some(db),
        }
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Identical => f.write_str("identical"),
            Psnr::Decibels(db) => write!(f, "{db:.4}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsnrReport {
    pub mse: f64,
    pub psnr: Psnr,
}

fn check_shape(a: &RgbImage, b: &RgbImage) -> Result<(), ShapeMismatch> {
    if a.same_shape(b) {
        Ok(())
    } else {
        Err(ShapeMismatch {
            left: (a.width(), a.height()),
            right: (b.width(), b.height()),
        })
    }
}

/// Exact integer sum of squared channel differences.
pub fn sum_squared_error(a: &RgbImage, b: &RgbImage) -> Result<u64, ShapeMismatch> {
    check_shape(a, b)?;
    Ok(a.channels()
        .iter()
        .zip(b.channels())
        .map(|(&x, &y)| {
            let d = u64::from(x.abs_diff(y));
            d * d
        })
        .sum())
}

pub fn mse(a: &RgbImage, b: &RgbImage) -> Result<f64, ShapeMismatch> {
    let sse = sum_squared_error(a, b)?;
    Ok(sse as f64 / a.channels().len() as f64)
}

/// PSNR for a given MSE; `Identical` at zero.
pub fn psnr_from_mse(mse: f64) -> Psnr {
    if mse == 0.0 {
        Psnr::Identical
    } else {
        Psnr::Decibels(10.0 * (PEAK * PEAK / mse).log10())
    }
}

pub fn psnr(a: &RgbImage, b: &RgbImage) -> Result<PsnrReport, ShapeMismatch> {
    let mse = mse(a, b)?;
    Ok(PsnrReport {
        mse,
        psnr: psnr_from_mse(mse),
    })
}
