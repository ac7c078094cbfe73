#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(a) = cantor_bases::parse::parse_automaton_table(s) {
            let w = cantor_bases::words::WordSpec::Automaton(a);
            let _ = w.stream(32);
        }
    }
});
