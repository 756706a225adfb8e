use std::path::Path;

use proptest::prelude::*;
use wmstego::{decode_image, load_image, save_image, ImageError, RgbImage};

fn fixture(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Decodes with the `image` crate, independent of our codecs.
fn reference_decode(path: &Path) -> (u32, u32, Vec<u8>) {
    let img = image::open(path).unwrap().to_rgb8();
    (img.width(), img.height(), img.into_raw())
}

#[test]
fn two_by_two_matches_independent_decoder() {
    let img = RgbImage::new(2, 2, vec![0, 1, 2, 253, 254, 255, 17, 34, 51, 128, 64, 32]).unwrap();
    let dir = tempfile::tempdir().unwrap();
    for ext in ["png", "bmp"] {
        let path = dir.path().join(format!("tiny.{ext}"));
        save_image(&img, &path).unwrap();
        let (w, h, raw) = reference_decode(&path);
        assert_eq!((w, h), (2, 2), "{ext}");
        assert_eq!(raw, img.channels(), "{ext}");
    }
}

#[test]
fn reads_what_the_independent_encoder_writes() {
    let dir = tempfile::tempdir().unwrap();
    let raw: Vec<u8> = (0..5 * 3 * 3).map(|i| (i * 11 % 256) as u8).collect();
    let buf = image::RgbImage::from_raw(5, 3, raw.clone()).unwrap();
    for ext in ["png", "bmp"] {
        let path = dir.path().join(format!("ref.{ext}"));
        buf.save(&path).unwrap();
        let ours = load_image(&path).unwrap();
        assert_eq!((ours.width(), ours.height()), (5, 3));
        assert_eq!(ours.channels(), &raw[..], "{ext}");
    }
}

#[test]
fn natural_cover_shape() {
    let img = load_image(fixture("astronaut_256.png")).unwrap();
    assert_eq!((img.width(), img.height()), (256, 256));
    assert_eq!(img.channels().len(), 196_608);
    let (_, _, raw) = reference_decode(&fixture("astronaut_256.png"));
    assert_eq!(img.channels(), &raw[..]);
}

#[test]
fn five_twelve_square_png() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.png");
    let raw: Vec<u8> = (0..512 * 512 * 3).map(|i| (i % 251) as u8).collect();
    image::RgbImage::from_raw(512, 512, raw)
        .unwrap()
        .save(&path)
        .unwrap();
    assert_eq!(load_image(&path).unwrap().channels().len(), 786_432);
}

#[test]
fn one_pixel_bmp_from_reference_encoder() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("px.bmp");
    image::RgbImage::from_raw(1, 1, vec![10, 20, 30])
        .unwrap()
        .save(&path)
        .unwrap();
    assert_eq!(load_image(&path).unwrap().channels(), &[10, 20, 30]);
}

#[test]
fn rgba_alpha_is_carried_through() {
    let dir = tempfile::tempdir().unwrap();
    let rgba: Vec<u8> = (0..4 * 4 * 4).map(|i| (i * 7 % 256) as u8).collect();
    let src = dir.path().join("rgba.png");
    image::RgbaImage::from_raw(4, 4, rgba.clone())
        .unwrap()
        .save(&src)
        .unwrap();

    let img = load_image(&src).unwrap();
    let expected_rgb: Vec<u8> = rgba.chunks(4).flat_map(|p| p[..3].to_vec()).collect();
    let expected_alpha: Vec<u8> = rgba.chunks(4).map(|p| p[3]).collect();
    assert_eq!(img.channels(), &expected_rgb[..]);
    assert_eq!(img.alpha().unwrap(), &expected_alpha[..]);
    // alpha never counts toward capacity
    assert_eq!(wmstego::capacity(&img), (48 - 32) / 8);

    for ext in ["png", "bmp"] {
        let out = dir.path().join(format!("rgba_out.{ext}"));
        save_image(&img, &out).unwrap();
        let back = load_image(&out).unwrap();
        assert_eq!(back, img, "{ext}");
        let reference = image::open(&out).unwrap().to_rgba8().into_raw();
        assert_eq!(reference, rgba, "{ext}");
    }
}

#[test]
fn rejects_jpeg_input_as_lossy() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cover.jpg");
    image::RgbImage::from_pixel(8, 8, image::Rgb([1, 2, 3]))
        .save(&path)
        .unwrap();
    assert!(matches!(
        load_image(&path),
        Err(ImageError::LossyUnsupported(_))
    ));
    // extension is irrelevant on load; content decides
    let disguised = dir.path().join("cover.png");
    std::fs::copy(&path, &disguised).unwrap();
    let err = load_image(&disguised).unwrap_err();
    assert!(err.to_string().contains("lossy cover unsupported"), "{err}");
}

#[test]
fn rejects_lossy_and_unknown_output_extensions() {
    let dir = tempfile::tempdir().unwrap();
    let img = RgbImage::filled(2, 2, 5).unwrap();
    assert!(matches!(
        save_image(&img, dir.path().join("x.jpg")),
        Err(ImageError::LossyUnsupported(_))
    ));
    assert!(matches!(
        save_image(&img, dir.path().join("x.gif")),
        Err(ImageError::UnsupportedFormat(_))
    ));
    assert!(!dir.path().join("x.jpg").exists());
}

#[test]
fn io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let img = RgbImage::filled(2, 2, 5).unwrap();
    assert!(matches!(
        save_image(&img, dir.path().join("missing/dir/x.png")),
        Err(ImageError::Io { .. })
    ));
    assert!(matches!(
        load_image(dir.path().join("nope.png")),
        Err(ImageError::Io { .. })
    ));
}

fn png_bytes(color: png::ColorType, depth: png::BitDepth, data: &[u8]) -> Vec<u8> {
    let mut out = Vec::new();
    {
        let mut enc = png::Encoder::new(&mut out, 2, 1);
        enc.set_color(color);
        enc.set_depth(depth);
        if color == png::ColorType::Indexed {
            enc.set_palette(vec![0, 0, 0, 255, 255, 255]);
        }
        let mut w = enc.write_header().unwrap();
        w.write_image_data(data).unwrap();
    }
    out
}

#[test]
fn rejects_grayscale_palette_and_deep_png() {
    use png::{BitDepth, ColorType};
    let gray = png_bytes(ColorType::Grayscale, BitDepth::Eight, &[1, 2]);
    assert!(matches!(
        decode_image(&gray),
        Err(ImageError::UnsupportedColor("grayscale"))
    ));
    let gray_alpha = png_bytes(ColorType::GrayscaleAlpha, BitDepth::Eight, &[1, 2, 3, 4]);
    assert!(matches!(
        decode_image(&gray_alpha),
        Err(ImageError::UnsupportedColor(_))
    ));
    let indexed = png_bytes(ColorType::Indexed, BitDepth::Eight, &[0, 1]);
    assert!(matches!(
        decode_image(&indexed),
        Err(ImageError::UnsupportedColor("palette"))
    ));
    let deep = png_bytes(ColorType::Rgb, BitDepth::Sixteen, &[0; 12]);
    assert!(matches!(
        decode_image(&deep),
        Err(ImageError::UnsupportedDepth(16))
    ));
    let rgb = png_bytes(ColorType::Rgb, BitDepth::Eight, &[1, 2, 3, 4, 5, 6]);
    assert_eq!(decode_image(&rgb).unwrap().channels(), &[1, 2, 3, 4, 5, 6]);
}

#[test]
fn corrupt_png_is_a_decode_error() {
    let rgb = png_bytes(
        png::ColorType::Rgb,
        png::BitDepth::Eight,
        &[1, 2, 3, 4, 5, 6],
    );
    let truncated = &rgb[..rgb.len() - 20];
    assert!(matches!(
        decode_image(truncated),
        Err(ImageError::Decode(_))
    ));
    let mut flipped = rgb.clone();
    let mid = flipped.len() / 2;
    flipped[mid] ^= 0xFF;
    assert!(decode_image(&flipped).is_err());
}

fn arb_image() -> impl Strategy<Value = RgbImage> {
    (1u32..17, 1u32..17, any::<bool>()).prop_flat_map(|(w, h, with_alpha)| {
        let n = (w * h) as usize;
        (
            proptest::collection::vec(any::<u8>(), n * 3),
            proptest::collection::vec(any::<u8>(), n),
        )
            .prop_map(move |(rgb, a)| {
                if with_alpha {
                    RgbImage::with_alpha(w, h, rgb, a).unwrap()
                } else {
                    RgbImage::new(w, h, rgb).unwrap()
                }
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn save_load_is_identity(img in arb_image()) {
        let dir = tempfile::tempdir().unwrap();
        for ext in ["png", "bmp"] {
            let path = dir.path().join(format!("p.{ext}"));
            save_image(&img, &path).unwrap();
            prop_assert_eq!(&load_image(&path).unwrap(), &img);
        }
    }
}
