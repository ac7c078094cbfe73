//! The checked-in fuzz corpus seeds must all parse: this keeps the seeds
//! honest as the text formats evolve.

use cantor_bases::parse::{
    parse_automaton_table, parse_base_exprs, parse_field_spec, parse_morphism, parse_rational,
    parse_up_word, parse_word_spec,
};
use std::path::PathBuf;

fn corpus(dir: &str) -> Vec<(PathBuf, String)> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(dir);
    let mut out = Vec::new();
    for entry in std::fs::read_dir(&root).unwrap_or_else(|e| panic!("missing corpus {dir}: {e}")) {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        out.push((path, text));
    }
    assert!(!out.is_empty(), "corpus {dir} has no seeds");
    out
}

#[test]
fn field_spec_seeds_parse() {
    for (path, text) in corpus("field_spec") {
        parse_field_spec(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn base_expr_seeds_parse() {
    for (path, text) in corpus("base_exprs") {
        parse_base_exprs(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn word_spec_seeds_parse() {
    for (path, text) in corpus("word_spec") {
        parse_word_spec(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn up_word_seeds_parse() {
    for (path, text) in corpus("up_word") {
        parse_up_word(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn morphism_seeds_parse() {
    for (path, text) in corpus("morphism_table") {
        parse_morphism(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn automaton_seeds_parse() {
    for (path, text) in corpus("automaton_table") {
        parse_automaton_table(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn transducer_seeds_parse() {
    for (path, text) in corpus("transducer_json") {
        let t = cantor_bases::transducer::from_json(&text)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        t.verify().unwrap();
    }
}

#[test]
fn rational_seeds_parse() {
    for (path, text) in corpus("rational") {
        let ok = parse_rational(&text).is_ok()
            || cantor_bases::parse::parse_element_coeffs(&text).is_ok();
        assert!(ok, "{} parses as neither form", path.display());
    }
}
