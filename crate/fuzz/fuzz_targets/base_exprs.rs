#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = cantor_bases::parse::parse_base_exprs(s);
        let _ = cantor_bases::parse::parse_int_poly(s, 'x');
    }
});
