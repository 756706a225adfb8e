#![no_main]

use libfuzzer_sys::fuzz_target;
use wmstego::{capacity, embed, extract, Algorithm, RgbImage};

// Layout: [width, payload_len, payload..., cover channels...]
fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let width = u32::from(data[0].max(1));
    let rest = &data[2..];
    let payload_len = usize::from(data[1]).min(rest.len());
    let (payload, channels) = rest.split_at(payload_len);
    let row = width as usize * 3;
    let height = channels.len() / row;
    if height == 0 {
        return;
    }
    let cover = RgbImage::new(width, height as u32, channels[..row * height].to_vec()).unwrap();
    for alg in Algorithm::ALL {
        match embed(alg, &cover, payload) {
            Ok(res) => {
                assert_eq!(extract(alg, &res.stego).unwrap(), payload);
                for (c, s) in cover.channels().iter().zip(res.stego.channels()) {
                    assert_eq!(c >> 1, s >> 1);
                }
            }
            Err(_) => assert!(payload.len() > capacity(&cover) || cover.channels().len() < 32),
        }
    }
});
