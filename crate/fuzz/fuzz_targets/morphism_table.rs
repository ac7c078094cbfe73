#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(psi) = cantor_bases::parse::parse_morphism(s) {
            // every digit decomposes and recomposes below the product
            for a in 0..psi.alphabet_len() {
                for c in (0..psi.delta()).take(16) {
                    let w = cantor_bases::morphisms::digit_decompose(c, &psi.images()[a]).unwrap();
                    assert_eq!(
                        cantor_bases::morphisms::digit_recompose(&w, &psi.images()[a]),
                        c
                    );
                }
            }
        }
    }
});
