#![no_main]

use libfuzzer_sys::fuzz_target;
use wmstego::{decode_image, encode_image, ImageFormat};

fuzz_target!(|data: &[u8]| {
    // Anything that decodes must survive a lossless re-encode in both formats.
    if let Ok(img) = decode_image(data) {
        assert_eq!(img.channels().len(), img.pixel_count() * 3);
        for format in [ImageFormat::Png, ImageFormat::Bmp] {
            let bytes = encode_image(&img, format).expect("re-encode");
            assert_eq!(decode_image(&bytes).expect("re-decode"), img);
        }
    }
});
