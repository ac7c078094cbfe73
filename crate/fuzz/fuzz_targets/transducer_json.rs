#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        // pre-screen the field so adversarial minimal polynomials cannot
        // drive the factorization and root isolation into deep search;
        // everything else (states, edges, rationals) is fully exercised
        if let Ok(v) = serde_json::from_str::<serde_json::Value>(s) {
            if let Some(coeffs) = v.get("field").and_then(|f| f.get("minpoly")).and_then(|m| m.as_array()) {
                if coeffs.len() > 5 {
                    return;
                }
                for c in coeffs {
                    match c.as_str().and_then(|t| t.trim().parse::<i64>().ok()) {
                        Some(n) if n.abs() <= 1000 => {}
                        _ => return,
                    }
                }
            }
        }
        if let Ok(t) = cantor_bases::transducer::from_json(s) {
            let back = cantor_bases::transducer::to_json(&t);
            let t2 = cantor_bases::transducer::from_json(&back).unwrap();
            assert_eq!(t2.states, t.states);
            assert_eq!(t2.edges, t.edges);
        }
    }
});
