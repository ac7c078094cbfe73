#![no_main]

use cantor_bases::parse::WordSpecText;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(WordSpecText::Inline(w)) = cantor_bases::parse::parse_word_spec(s) {
            // parsed specs must stream and shift without panicking
            let prefix = w.stream(64);
            let shifted = w.shift(7).stream(57);
            assert_eq!(&prefix[7..], &shifted[..]);
        }
    }
});
