//! Text formats: field descriptions, integer polynomial expressions in
//! one symbol, rationals, ultimately periodic words, word specs, block
//! morphism tables, and automaton transition tables. Everything here is
//! total over untrusted input and allocation-bounded by the input size.

use crate::morphisms::ConstantProductMorphism;
use crate::numberfield::RootSelector;
use crate::poly::Rat;
use crate::words::{AutomatonSpec, Letter, MorphicSpec, UpWord, WordSpec};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error: {0}")]
pub struct ParseError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

pub fn parse_rational(s: &str) -> Result<Rat, ParseError> {
    let t = s.trim();
    if t.is_empty() {
        return err("empty rational");
    }
    Rat::from_str(t).map_err(|e| ParseError(format!("bad rational {t:?}: {e}")))
}

// --- integer polynomial expressions -----------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex_poly(s: &str, var: char) -> Result<Vec<Tok>, ParseError> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '0'..='9' => {
                let mut num = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        num.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(BigInt::from_str(&num).unwrap()));
            }
            '+' => {
                out.push(Tok::Plus);
                chars.next();
            }
            '-' => {
                out.push(Tok::Minus);
                chars.next();
            }
            '*' => {
                out.push(Tok::Star);
                chars.next();
            }
            '^' => {
                out.push(Tok::Caret);
                chars.next();
            }
            '(' => {
                out.push(Tok::LParen);
                chars.next();
            }
            ')' => {
                out.push(Tok::RParen);
                chars.next();
            }
            c if c == var || c.to_ascii_lowercase() == var => {
                out.push(Tok::Var);
                chars.next();
            }
            other => return err(format!("unexpected character {other:?} in polynomial")),
        }
    }
    Ok(out)
}

struct PolyParser {
    toks: Vec<Tok>,
    pos: usize,
}

impl PolyParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // coefficients of the polynomial, constant first
    fn expr(&mut self, depth: usize) -> Result<Vec<BigInt>, ParseError> {
        if depth > 32 {
            return err("expression too deeply nested");
        }
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            negate = true;
        } else if self.peek() == Some(&Tok::Plus) {
            self.next();
        }
        let mut acc = self.term(depth)?;
        if negate {
            for c in acc.iter_mut() {
                *c = -c.clone();
            }
        }
        while let Some(op) = self.peek().cloned() {
            match op {
                Tok::Plus | Tok::Minus => {
                    self.next();
                    let rhs = self.term(depth)?;
                    let n = acc.len().max(rhs.len());
                    acc.resize(n, BigInt::zero());
                    for (i, c) in rhs.into_iter().enumerate() {
                        if op == Tok::Plus {
                            acc[i] += c;
                        } else {
                            acc[i] -= c;
                        }
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self, depth: usize) -> Result<Vec<BigInt>, ParseError> {
        let mut acc = self.factor(depth)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let rhs = self.factor(depth)?;
                    acc = poly_mul(&acc, &rhs)?;
                }
                // implicit multiplication: 2d, 2(d+1), d(d+1)
                Some(Tok::Var) | Some(Tok::LParen) | Some(Tok::Num(_)) => {
                    let rhs = self.factor(depth)?;
                    acc = poly_mul(&acc, &rhs)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self, depth: usize) -> Result<Vec<BigInt>, ParseError> {
        let base = match self.next() {
            Some(Tok::Num(n)) => vec![n],
            Some(Tok::Var) => vec![BigInt::zero(), BigInt::one()],
            Some(Tok::LParen) => {
                let inner = self.expr(depth + 1)?;
                if self.next() != Some(Tok::RParen) {
                    return err("missing closing parenthesis");
                }
                inner
            }
            Some(Tok::Minus) => {
                let mut inner = self.factor(depth)?;
                for c in inner.iter_mut() {
                    *c = -c.clone();
                }
                inner
            }
            other => return err(format!("unexpected token {other:?}")),
        };
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let exp = match self.next() {
                Some(Tok::Num(n)) => n,
                other => return err(format!("exponent must be a number, got {other:?}")),
            };
            // keep exponents small enough to bound allocation
            let exp: u32 = exp
                .try_into()
                .ok()
                .filter(|&e| e <= 64)
                .ok_or_else(|| ParseError("exponent out of range".into()))?;
            let mut acc = vec![BigInt::one()];
            for _ in 0..exp {
                acc = poly_mul(&acc, &base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Result<Vec<BigInt>, ParseError> {
    if a.len() + b.len() > 130 {
        return err("polynomial degree out of range");
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Ok(out)
}

/// Integer polynomial in one symbol (`x` for minimal polynomials, `d`
/// for base expressions), with `+ - * ^`, parentheses and implicit
/// multiplication. Returns coefficients, constant first, trailing zeros
/// trimmed.
pub fn parse_int_poly(s: &str, var: char) -> Result<Vec<BigInt>, ParseError> {
    let toks = lex_poly(s, var)?;
    if toks.is_empty() {
        return err("empty polynomial");
    }
    let mut p = PolyParser { toks, pos: 0 };
    let mut coeffs = p.expr(0)?;
    if p.pos != p.toks.len() {
        return err("trailing input after polynomial");
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

// --- field descriptions ------------------------------------------------

#[derive(Debug, Clone)]
pub struct FieldSpecText {
    pub minpoly: Vec<BigInt>,
    pub selector: RootSelector,
}

/// Accepts either a bare polynomial in x (largest real root implied) or
/// the structured form
/// `field { minpoly = [c0, c1, ..., 1]; root = largest | (lo, hi) }`.
pub fn parse_field_spec(s: &str) -> Result<FieldSpecText, ParseError> {
    let t = s.trim();
    if let Some(rest) = t.strip_prefix("field") {
        let body = rest.trim();
        let body = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| ParseError("field body must be wrapped in { }".into()))?;
        let mut minpoly = None;
        let mut selector = RootSelector::LargestReal;
        for item in body.split(';') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| ParseError(format!("expected key = value, got {item:?}")))?;
            match key.trim() {
                "minpoly" => {
                    let list = value.trim();
                    let list = list
                        .strip_prefix('[')
                        .and_then(|l| l.strip_suffix(']'))
                        .ok_or_else(|| ParseError("minpoly must be a [..] list".into()))?;
                    let coeffs: Result<Vec<BigInt>, _> = list
                        .split(',')
                        .map(|c| {
                            BigInt::from_str(c.trim())
                                .map_err(|e| ParseError(format!("bad coefficient {c:?}: {e}")))
                        })
                        .collect();
                    minpoly = Some(coeffs?);
                }
                "root" => {
                    let v = value.trim();
                    if v == "largest" {
                        selector = RootSelector::LargestReal;
                    } else {
                        let inner = v
                            .strip_prefix('(')
                            .and_then(|i| i.strip_suffix(')'))
                            .ok_or_else(|| ParseError("root must be largest or (lo, hi)".into()))?;
                        let (lo, hi) = inner
                            .split_once(',')
                            .ok_or_else(|| ParseError("root interval needs two endpoints".into()))?;
                        selector = RootSelector::Interval(parse_rational(lo)?, parse_rational(hi)?);
                    }
                }
                other => return err(format!("unknown field key {other:?}")),
            }
        }
        let minpoly = minpoly.ok_or_else(|| ParseError("field needs a minpoly".into()))?;
        Ok(FieldSpecText { minpoly, selector })
    } else {
        Ok(FieldSpecText { minpoly: parse_int_poly(t, 'x')?, selector: RootSelector::LargestReal })
    }
}

/// Element given as a coefficient list `[r0, ..., r_{d-1}]` of rationals.
pub fn parse_element_coeffs(s: &str) -> Result<Vec<Rat>, ParseError> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|i| i.strip_suffix(']'))
        .ok_or_else(|| ParseError("element must be a [..] coefficient list".into()))?;
    inner.split(',').map(parse_rational).collect()
}

/// Comma-separated base expressions, each an integer polynomial in d.
pub fn parse_base_exprs(s: &str) -> Result<Vec<(Vec<BigInt>, String)>, ParseError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return err("empty base expression");
        }
        out.push((parse_int_poly(part, 'd')?, part.to_string()));
    }
    if out.is_empty() {
        return err("no base expressions");
    }
    Ok(out)
}

// --- words --------------------------------------------------------------

/// `<pre letters> (<per letters>)`, letters as whitespace-separated
/// nonnegative integers, e.g. `1 (2 3 4 5)` or `(0 1)`.
pub fn parse_up_word(s: &str) -> Result<UpWord, ParseError> {
    let t = s.trim();
    let open = t.find('(').ok_or_else(|| ParseError("period must be parenthesized".into()))?;
    let close = t.rfind(')').ok_or_else(|| ParseError("missing closing parenthesis".into()))?;
    if close < open || !t[close + 1..].trim().is_empty() {
        return err("malformed ultimately periodic word");
    }
    let pre = parse_letters(&t[..open])?;
    let per = parse_letters(&t[open + 1..close])?;
    if per.is_empty() {
        return err("period must be nonempty");
    }
    Ok(UpWord::new(pre, per))
}

fn parse_letters(s: &str) -> Result<Vec<Letter>, ParseError> {
    s.split_whitespace()
        .map(|w| {
            w.parse::<Letter>()
                .map_err(|e| ParseError(format!("bad letter {w:?}: {e}")))
        })
        .collect()
}

/// A parsed word spec; automaton specs name a file whose contents the
/// caller resolves with `parse_automaton_table`.
#[derive(Debug, Clone)]
pub enum WordSpecText {
    Inline(WordSpec),
    AutomatonFile(String),
}

/// `up: ...`, `morphic: k=..; mu: ..; coding: ..; seed: ..`,
/// `blocks: mu: ..; seed: ..; map: ..`, or `automaton: <file>`.
pub fn parse_word_spec(s: &str) -> Result<WordSpecText, ParseError> {
    let t = s.trim();
    if let Some(body) = t.strip_prefix("up:") {
        return Ok(WordSpecText::Inline(WordSpec::Up(parse_up_word(body)?)));
    }
    if let Some(body) = t.strip_prefix("morphic:") {
        return Ok(WordSpecText::Inline(WordSpec::Morphic(parse_morphic_body(body)?)));
    }
    if let Some(body) = t.strip_prefix("blocks:") {
        return Ok(WordSpecText::Inline(parse_blocks_body(body)?));
    }
    if let Some(path) = t.strip_prefix("automaton:") {
        let path = path.trim();
        if path.is_empty() {
            return err("automaton needs a file");
        }
        return Ok(WordSpecText::AutomatonFile(path.to_string()));
    }
    err("word spec must start with up:, morphic:, blocks: or automaton:")
}

struct NameTable {
    names: Vec<String>,
}

impl NameTable {
    fn new() -> Self {
        NameTable { names: vec![] }
    }

    fn intern(&mut self, name: &str) -> usize {
        match self.names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        }
    }

    fn get(&self, name: &str) -> Result<usize, ParseError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ParseError(format!("unknown letter {name:?}")))
    }
}

fn split_rules(body: &str) -> Result<Vec<(String, String)>, ParseError> {
    body.split(',')
        .map(|rule| {
            let rule = rule.trim();
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| ParseError(format!("expected lhs->rhs, got {rule:?}")))?;
            Ok((lhs.trim().to_string(), rhs.trim().to_string()))
        })
        .collect()
}

fn parse_morphic_body(body: &str) -> Result<MorphicSpec, ParseError> {
    let mut k: Option<usize> = None;
    let mut mu: Option<Vec<(String, String)>> = None;
    let mut coding: Option<Vec<(String, String)>> = None;
    let mut seed: Option<String> = None;
    for item in body.split(';') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (key, value) = item
            .split_once([':', '='])
            .ok_or_else(|| ParseError(format!("expected key: value, got {item:?}")))?;
        match key.trim() {
            "k" => {
                k = Some(
                    value
                        .trim()
                        .parse::<usize>()
                        .map_err(|e| ParseError(format!("bad k: {e}")))?,
                )
            }
            "mu" => mu = Some(split_rules(value)?),
            "coding" => coding = Some(split_rules(value)?),
            "seed" => seed = Some(value.trim().to_string()),
            other => return err(format!("unknown morphic key {other:?}")),
        }
    }
    let mu = mu.ok_or_else(|| ParseError("morphic spec needs mu".into()))?;
    let seed = seed.ok_or_else(|| ParseError("morphic spec needs a seed".into()))?;
    let mut names = NameTable::new();
    for (lhs, _) in &mu {
        names.intern(lhs);
    }
    let mut images = vec![Vec::new(); names.names.len()];
    for (lhs, rhs) in &mu {
        let i = names.get(lhs)?;
        images[i] = rhs
            .split_whitespace()
            .map(|w| names.get(w).map(|x| x as Letter))
            .collect::<Result<Vec<_>, _>>()?;
    }
    let k = k.unwrap_or_else(|| images[0].len());
    let coding_rules = coding.ok_or_else(|| ParseError("morphic spec needs a coding".into()))?;
    let mut coding = vec![None; names.names.len()];
    for (lhs, rhs) in &coding_rules {
        let i = names.get(lhs)?;
        coding[i] = Some(
            rhs.parse::<Letter>()
                .map_err(|e| ParseError(format!("bad coding value {rhs:?}: {e}")))?,
        );
    }
    let coding: Option<Vec<Letter>> = coding.into_iter().collect();
    let coding = coding.ok_or_else(|| ParseError("coding must cover every letter".into()))?;
    let seed = names.get(&seed)? as Letter;
    MorphicSpec::new(k, images, coding, seed).map_err(|e| ParseError(e.to_string()))
}

fn parse_blocks_body(body: &str) -> Result<WordSpec, ParseError> {
    let mut mu: Option<Vec<(String, String)>> = None;
    let mut map: Option<Vec<(String, String)>> = None;
    let mut seed: Option<String> = None;
    for item in body.split(';') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (key, value) = item
            .split_once([':', '='])
            .ok_or_else(|| ParseError(format!("expected key: value, got {item:?}")))?;
        match key.trim() {
            "mu" => mu = Some(split_rules(value)?),
            "map" => map = Some(split_rules(value)?),
            "seed" => seed = Some(value.trim().to_string()),
            other => return err(format!("unknown blocks key {other:?}")),
        }
    }
    let mu = mu.ok_or_else(|| ParseError("blocks spec needs mu".into()))?;
    let map = map.ok_or_else(|| ParseError("blocks spec needs a map".into()))?;
    let seed = seed.ok_or_else(|| ParseError("blocks spec needs a seed".into()))?;
    let mut names = NameTable::new();
    for (lhs, _) in &mu {
        names.intern(lhs);
    }
    let mut images = vec![Vec::new(); names.names.len()];
    for (lhs, rhs) in &mu {
        let i = names.get(lhs)?;
        images[i] = rhs
            .split_whitespace()
            .map(|w| names.get(w).map(|x| x as Letter))
            .collect::<Result<Vec<_>, _>>()?;
    }
    let k = images.first().map(|i| i.len()).unwrap_or(0);
    let identity: Vec<Letter> = (0..names.names.len() as Letter).collect();
    let seed = names.get(&seed)? as Letter;
    let inner = MorphicSpec::new(k, images, identity, seed).map_err(|e| ParseError(e.to_string()))?;
    let mut blocks = vec![Vec::new(); names.names.len()];
    for (lhs, rhs) in &map {
        let i = names.get(lhs)?;
        blocks[i] = parse_letters(rhs)?;
    }
    WordSpec::Morphic(inner)
        .flatten_blocks(&blocks)
        .map_err(|e| ParseError(e.to_string()))
}

/// Block morphism table `a: 6 3 4; b: 3 2 4 3`.
pub fn parse_morphism(s: &str) -> Result<ConstantProductMorphism, ParseError> {
    let mut names = Vec::new();
    let mut images = Vec::new();
    for item in s.split(';') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (name, block) = item
            .split_once(':')
            .ok_or_else(|| ParseError(format!("expected name: entries, got {item:?}")))?;
        let entries: Result<Vec<u32>, _> = block
            .split_whitespace()
            .map(|w| {
                w.parse::<u32>()
                    .map_err(|e| ParseError(format!("bad block entry {w:?}: {e}")))
            })
            .collect();
        names.push(name.trim().to_string());
        images.push(entries?);
    }
    ConstantProductMorphism::new(names, images).map_err(|e| ParseError(e.to_string()))
}

/// Transition-table format, one directive per line:
/// `base <b>`, `states <n>`, `initial <q>`, `out <q> <letter>`,
/// `trans <q> <digit> <target>`. Blank lines and `#` comments allowed.
pub fn parse_automaton_table(text: &str) -> Result<AutomatonSpec, ParseError> {
    let mut base: Option<u32> = None;
    let mut n_states: Option<usize> = None;
    let mut initial = 0usize;
    let mut outs: Vec<(usize, Letter)> = Vec::new();
    let mut trans: Vec<(usize, usize, usize)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let head = it.next().unwrap();
        let rest: Vec<&str> = it.collect();
        let bad = |what: &str| ParseError(format!("line {}: bad {what}", lineno + 1));
        let as_usize = |w: &str, what: &str| w.parse::<usize>().map_err(|_| bad(what));
        match head {
            "base" if rest.len() == 1 => base = Some(rest[0].parse().map_err(|_| bad("base"))?),
            "states" if rest.len() == 1 => n_states = Some(as_usize(rest[0], "states")?),
            "initial" if rest.len() == 1 => initial = as_usize(rest[0], "initial")?,
            "out" if rest.len() == 2 => outs.push((
                as_usize(rest[0], "state")?,
                rest[1].parse().map_err(|_| bad("letter"))?,
            )),
            "trans" if rest.len() == 3 => trans.push((
                as_usize(rest[0], "state")?,
                as_usize(rest[1], "digit")?,
                as_usize(rest[2], "target")?,
            )),
            _ => return Err(bad("directive")),
        }
    }
    let base = base.ok_or_else(|| ParseError("automaton needs a base".into()))?;
    let n = n_states.ok_or_else(|| ParseError("automaton needs a state count".into()))?;
    if !(2..=4096).contains(&base) {
        return err("base out of range");
    }
    if n == 0 || n.saturating_mul(base as usize) > 1 << 22 {
        return err("state count out of range");
    }
    let mut outputs = vec![None; n];
    for (q, l) in outs {
        if q >= n {
            return err("output state out of range");
        }
        outputs[q] = Some(l);
    }
    let outputs: Option<Vec<Letter>> = outputs.into_iter().collect();
    let outputs = outputs.ok_or_else(|| ParseError("every state needs an output".into()))?;
    let mut transitions = vec![vec![None; base as usize]; n];
    for (q, d, target) in trans {
        if q >= n || d >= base as usize || target >= n {
            return err("transition out of range");
        }
        transitions[q][d] = Some(target);
    }
    let transitions: Option<Vec<Vec<usize>>> = transitions
        .into_iter()
        .map(|row| row.into_iter().collect::<Option<Vec<usize>>>())
        .collect();
    let transitions =
        transitions.ok_or_else(|| ParseError("transition table is incomplete".into()))?;
    AutomatonSpec::new(base, transitions, outputs, initial).map_err(|e| ParseError(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    #[test]
    fn poly_expressions() {
        assert_eq!(
            parse_int_poly("x^2-x-1", 'x').unwrap(),
            vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]
        );
        assert_eq!(
            parse_int_poly("2*d+1", 'd').unwrap(),
            vec![BigInt::from(1), BigInt::from(2)]
        );
        assert_eq!(parse_int_poly("3+2d", 'd').unwrap(), vec![BigInt::from(3), BigInt::from(2)]);
        assert_eq!(
            parse_int_poly("(d+1)(d-1)", 'd').unwrap(),
            vec![BigInt::from(-1), BigInt::from(0), BigInt::from(1)]
        );
        assert_eq!(parse_int_poly("d^3", 'd').unwrap(), vec![
            BigInt::from(0), BigInt::from(0), BigInt::from(0), BigInt::from(1)
        ]);
        assert_eq!(parse_int_poly("-d+2", 'd').unwrap(), vec![BigInt::from(2), BigInt::from(-1)]);
        assert!(parse_int_poly("d^9999", 'd').is_err());
        assert!(parse_int_poly("q+1", 'd').is_err());
        assert!(parse_int_poly("", 'd').is_err());
        assert!(parse_int_poly("((((", 'd').is_err());
    }

    #[test]
    fn field_specs() {
        let f = parse_field_spec("x^2-x-1").unwrap();
        assert_eq!(f.minpoly, vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]);
        assert!(matches!(f.selector, RootSelector::LargestReal));
        let f = parse_field_spec("field { minpoly = [-1, -1, 1]; root = (1, 2) }").unwrap();
        assert_eq!(f.minpoly.len(), 3);
        match f.selector {
            RootSelector::Interval(lo, hi) => {
                assert_eq!(lo, rat_int(1));
                assert_eq!(hi, rat_int(2));
            }
            _ => panic!("expected interval"),
        }
        assert!(parse_field_spec("field { root = largest }").is_err());
    }

    #[test]
    fn rationals_and_elements() {
        assert_eq!(parse_rational("932/3885").unwrap(), rat(932, 3885));
        assert_eq!(parse_rational(" 1 ").unwrap(), rat_int(1));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(
            parse_element_coeffs("[1/2, -3]").unwrap(),
            vec![rat(1, 2), rat_int(-3)]
        );
    }

    #[test]
    fn up_words() {
        let w = parse_up_word("1 (2 3 4 5)").unwrap();
        assert_eq!(w.preperiod(), &[1]);
        assert_eq!(w.period(), &[2, 3, 4, 5]);
        let w = parse_up_word("(0 1)").unwrap();
        assert_eq!(w.preperiod(), &[] as &[u32]);
        assert!(parse_up_word("1 2 3").is_err());
        assert!(parse_up_word("()").is_err());
    }

    #[test]
    fn word_specs() {
        let s = parse_word_spec("up: (0 1)").unwrap();
        match s {
            WordSpecText::Inline(w) => assert_eq!(w.stream(4), vec![0, 1, 0, 1]),
            _ => panic!(),
        }
        let s = parse_word_spec("morphic: k=2; mu: a->a b, b->b a; coding: a->0, b->1; seed: a").unwrap();
        match s {
            WordSpecText::Inline(w) => assert_eq!(w.stream(8), vec![0, 1, 1, 0, 1, 0, 0, 1]),
            _ => panic!(),
        }
        let s = parse_word_spec("blocks: mu: u->u v, v->v u; seed: u; map: u->1 0 1, v->1 1 0").unwrap();
        match s {
            WordSpecText::Inline(w) => {
                assert_eq!(w.stream(6), vec![1, 0, 1, 1, 1, 0])
            }
            _ => panic!(),
        }
        assert!(matches!(
            parse_word_spec("automaton: tm.aut").unwrap(),
            WordSpecText::AutomatonFile(p) if p == "tm.aut"
        ));
        assert!(parse_word_spec("nope").is_err());
    }

    #[test]
    fn morphism_tables() {
        let psi = parse_morphism("a: 6 3 4; b: 3 2 4 3; c: 4 3 3 2").unwrap();
        assert_eq!(psi.delta(), 72);
        assert_eq!(psi.alphabet_len(), 3);
        assert!(parse_morphism("a: 2 3; b: 2 2").is_err());
        assert!(parse_morphism("").is_err());
    }

    #[test]
    fn automaton_tables() {
        let text = "\
base 2
states 2
initial 0
out 0 0
out 1 1
trans 0 0 0
trans 0 1 1
trans 1 0 1
trans 1 1 0
";
        let a = parse_automaton_table(text).unwrap();
        let w = WordSpec::Automaton(a);
        // parity of ones in binary: 0 1 1 0 1 0 0 1
        assert_eq!(w.stream(8), vec![0, 1, 1, 0, 1, 0, 0, 1]);
        assert!(parse_automaton_table("base 2\nstates 1\ninitial 0\nout 0 0\n").is_err());
    }
}
