use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use wmstego::{
    embed as embed_payload, extract as extract_payload, ImageError, ImageFormat, Psnr, RgbImage,
    ShapeMismatch, StegoError,
};
use wmstego::{metrics, Algorithm};

/// A command failure carrying its process exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const IO: u8 = 1;
    pub const CAPACITY: u8 = 2;
    pub const CORRUPT: u8 = 3;
    pub const USAGE: u8 = 64;

    fn io(message: impl Into<String>) -> Self {
        Self {
            code: Self::IO,
            message: message.into(),
        }
    }
}

impl From<ImageError> for Failure {
    fn from(e: ImageError) -> Self {
        Failure::io(e.to_string())
    }
}

impl From<ShapeMismatch> for Failure {
    fn from(e: ShapeMismatch) -> Self {
        Failure::io(e.to_string())
    }
}

impl From<StegoError> for Failure {
    fn from(e: StegoError) -> Self {
        let code = match e {
            StegoError::CapacityExceeded { .. } => Failure::CAPACITY,
            StegoError::CorruptStego { .. } | StegoError::MissingHeader { .. } => Failure::CORRUPT,
            _ => Failure::IO,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

pub enum MessageSource {
    Text(String),
    /// Raw bytes from a file; `-` is standard input.
    File(PathBuf),
}

impl MessageSource {
    fn read(&self) -> Result<Vec<u8>, Failure> {
        match self {
            MessageSource::Text(text) => Ok(text.as_bytes().to_vec()),
            MessageSource::File(path) if path.as_os_str() == "-" => {
                let mut buf = Vec::new();
                io::stdin()
                    .read_to_end(&mut buf)
                    .map_err(|e| Failure::io(format!("reading standard input: {e}")))?;
                Ok(buf)
            }
            MessageSource::File(path) => {
                fs::read(path).map_err(|e| Failure::io(format!("reading {}: {e}", path.display())))
            }
        }
    }
}

fn load(path: &Path) -> Result<RgbImage, Failure> {
    Ok(wmstego::load_image(path)?)
}

fn write_stdout(bytes: &[u8]) -> CmdResult {
    let mut out = io::stdout().lock();
    out.write_all(bytes)
        .and_then(|()| out.flush())
        .map_err(|e| Failure::io(format!("writing standard output: {e}")))
}

pub fn embed(algorithm: Algorithm, cover: &Path, message: &MessageSource, out: &Path) -> CmdResult {
    // reject a bad output extension before doing any work
    ImageFormat::from_path(out)?;
    let payload = message.read()?;
    let cover_img = load(cover)?;
    let result = embed_payload(algorithm, &cover_img, &payload)?;
    wmstego::save_image(&result.stego, out)?;
    let report = metrics::psnr(&cover_img, &result.stego)?;

    let summary = format!(
        "algorithm={}\npayload_bytes={}\nbits_embedded={}\nchannel_bytes_used={}\nlsb_flips={}\nmse={}\npsnr_db={}\noutput={}\n",
        algorithm.id(),
        payload.len(),
        result.bits_embedded,
        result.channel_bytes_used,
        result.lsb_flips,
        report.mse,
        report.psnr,
        out.display(),
    );
    write_stdout(summary.as_bytes())
}

pub fn extract(algorithm: Algorithm, stego: &Path, out: Option<&Path>) -> CmdResult {
    let payload = extract_payload(algorithm, &load(stego)?)?;
    match out {
        Some(path) => fs::write(path, &payload)
            .map_err(|e| Failure::io(format!("writing {}: {e}", path.display()))),
        None => write_stdout(&payload),
    }
}

pub fn capacity(image: &Path) -> CmdResult {
    let img = load(image)?;
    write_stdout(format!("{}\n", wmstego::capacity(&img)).as_bytes())
}

pub fn psnr(reference: &Path, distorted: &Path) -> CmdResult {
    let report = metrics::psnr(&load(reference)?, &load(distorted)?)?;
    write_stdout(format!("mse={}\npsnr_db={}\n", report.mse, report.psnr).as_bytes())
}

fn table_cell(psnr: Psnr) -> String {
    match psnr {
        Psnr::Identical => "identical".to_owned(),
        Psnr::Decibels(db) => format!("{db:.2}"),
    }
}

pub fn compare(cover: &Path, message: &MessageSource) -> CmdResult {
    let payload = message.read()?;
    let cover_img = load(cover)?;
    let name = cover
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| cover.display().to_string());

    let mut table = String::from("Cover Image\tAlgorithm used\tPSNR(dB)\n");
    for algorithm in Algorithm::ALL {
        let result = embed_payload(algorithm, &cover_img, &payload)?;
        let report = metrics::psnr(&cover_img, &result.stego)?;
        table.push_str(&format!(
            "{name}\t{}\t{}\n",
            algorithm.display_name(),
            table_cell(report.psnr)
        ));
    }
    write_stdout(table.as_bytes())
}
