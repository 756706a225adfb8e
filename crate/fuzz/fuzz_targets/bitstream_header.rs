#![no_main]

use libfuzzer_sys::fuzz_target;
use wmstego::{bits_to_bytes, bytes_to_bits, decode_header, encode_header, BitStream};

fuzz_target!(|data: &[u8]| {
    let bits = bytes_to_bits(data);
    assert_eq!(bits.len(), data.len() * 8);
    assert_eq!(bits_to_bytes(&bits).unwrap(), data);

    // Treat each input byte as one digit: only 0/1 are accepted.
    if let Ok(stream) = BitStream::from_digits(data) {
        match decode_header(&stream) {
            Ok(n) => assert_eq!(encode_header(n).unwrap(), stream),
            Err(_) => assert_ne!(stream.len(), 32),
        }
        assert_eq!(bits_to_bytes(&stream).is_ok(), stream.len() % 8 == 0);
    }
});
