#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if s.len() > 4096 {
            return;
        }
        let _ = cantor_bases::parse::parse_rational(s);
        let _ = cantor_bases::parse::parse_element_coeffs(s);
    }
});
