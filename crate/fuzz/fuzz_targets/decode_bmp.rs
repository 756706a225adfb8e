#![no_main]

use libfuzzer_sys::fuzz_target;
use wmstego::decode_image;

fuzz_target!(|data: &[u8]| {
    // Force the BMP path so the mutator spends its time inside the header parser.
    let mut file = Vec::with_capacity(data.len() + 2);
    file.extend_from_slice(b"BM");
    file.extend_from_slice(data);
    if let Ok(img) = decode_image(&file) {
        assert!(img.channels().len() <= file.len());
    }
});
