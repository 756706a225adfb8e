use std::io::Cursor;

use png::{BitDepth, ColorType, Transformations};

use super::{ImageError, RgbImage};

pub(super) fn decode(bytes: &[u8]) -> Result<RgbImage, ImageError> {
    let mut decoder = png::Decoder::new(Cursor::new(bytes));
    // raw samples only: no palette expansion, no 16->8 stripping
    decoder.set_transformations(Transformations::IDENTITY);
    let mut reader = decoder.read_info().map_err(decode_err)?;

    let info = reader.info();
    let (width, height) = (info.width, info.height);
    match info.color_type {
        ColorType::Rgb | ColorType::Rgba => {}
        ColorType::Grayscale | ColorType::GrayscaleAlpha => {
            return Err(ImageError::UnsupportedColor("grayscale"))
        }
        ColorType::Indexed => return Err(ImageError::UnsupportedColor("palette")),
    }
    if info.bit_depth != BitDepth::Eight {
        return Err(ImageError::UnsupportedDepth(info.bit_depth as u16));
    }

    let mut buf = vec![0; reader.output_buffer_size()];
    let frame = reader.next_frame(&mut buf).map_err(decode_err)?;
    let samples = match frame.color_type {
        ColorType::Rgba => 4,
        _ => 3,
    };
    let row = width as usize * samples;
    let pixels = width as usize * height as usize;

    let mut channels = Vec::with_capacity(pixels * 3);
    let mut alpha = (samples == 4).then(|| Vec::with_capacity(pixels));
    for line in buf.chunks(frame.line_size).take(height as usize) {
        let line = line
            .get(..row)
            .ok_or_else(|| ImageError::Decode("short PNG scanline".into()))?;
        match alpha.as_mut() {
            None => channels.extend_from_slice(line),
            Some(alpha) => {
                for px in line.chunks_exact(4) {
                    channels.extend_from_slice(&px[..3]);
                    alpha.push(px[3]);
                }
            }
        }
    }

    match alpha {
        None => RgbImage::new(width, height, channels),
        Some(alpha) => RgbImage::with_alpha(width, height, channels, alpha),
    }
}

pub(super) fn encode(img: &RgbImage) -> Result<Vec<u8>, ImageError> {
    let mut out = Vec::new();
    {
        let mut encoder = png::Encoder::new(&mut out, img.width(), img.height());
        encoder.set_depth(BitDepth::Eight);
        let data = match img.alpha() {
            None => {
                encoder.set_color(ColorType::Rgb);
                img.channels().to_vec()
            }
            Some(alpha) => {
                encoder.set_color(ColorType::Rgba);
                img.channels()
                    .chunks_exact(3)
                    .zip(alpha)
                    .flat_map(|(rgb, &a)| [rgb[0], rgb[1], rgb[2], a])
                    .collect()
            }
        };
        let mut writer = encoder.write_header().map_err(encode_err)?;
        writer.write_image_data(&data).map_err(encode_err)?;
        writer.finish().map_err(encode_err)?;
    }
    Ok(out)
}

fn decode_err(e: png::DecodingError) -> ImageError {
    ImageError::Decode(e.to_string())
}

fn encode_err(e: png::EncodingError) -> ImageError {
    ImageError::Decode(format!("PNG encoding failed: {e}"))
}
