#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(w) = cantor_bases::parse::parse_up_word(s) {
            // canonical form is a fixed point and ordering is reflexive
            let again = cantor_bases::words::UpWord::new(
                w.preperiod().to_vec(),
                w.period().to_vec(),
            );
            assert_eq!(again, w);
            assert_eq!(w.lex_cmp(&again), std::cmp::Ordering::Equal);
            let _ = w.shift(3);
        }
    }
});
