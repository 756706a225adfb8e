#![no_main]

use libfuzzer_sys::fuzz_target;
use wmstego::{capacity, extract, Algorithm, RgbImage, StegoError};

// First byte picks the width, the rest are channel bytes (truncated to whole rows).
fuzz_target!(|data: &[u8]| {
    let Some((&w, rest)) = data.split_first() else {
        return;
    };
    let width = u32::from(w.max(1));
    let row = width as usize * 3;
    let height = rest.len() / row;
    if height == 0 {
        return;
    }
    let img = RgbImage::new(width, height as u32, rest[..row * height].to_vec()).unwrap();
    for alg in Algorithm::ALL {
        match extract(alg, &img) {
            Ok(payload) => assert!(payload.len() <= capacity(&img)),
            Err(StegoError::CorruptStego { .. } | StegoError::MissingHeader { .. }) => {}
            Err(e) => panic!("unexpected extraction error: {e}"),
        }
    }
});
