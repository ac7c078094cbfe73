//! Greedy and quasi-greedy step maps on [0, 1], breadth-first synthesis
//! of the finite reachable transducer for a base alphabet and a starting
//! point, streaming evaluation of expansions, ultimately-periodic runs,
//! and DOT/JSON serialization.

use crate::numberfield::{same_field, FieldElement, NumberField, PisotStatus, RootSelector};
use crate::poly::{rat_int, Rat};
use crate::words::{Letter, UpWord, WordSpec};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TransducerError {
    #[error("state cap of {0} exceeded")]
    StateCapExceeded(usize),
    #[error("point lies outside the unit interval")]
    PointOutOfRange,
    #[error("base letter must exceed 1")]
    LetterNotGreaterThanOne,
    #[error("letter {0} failed the Pisot verification: {1}")]
    NotPisot(usize, String),
    #[error("letter index {0} out of range")]
    LetterIndexOutOfRange(usize),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error(transparent)]
    Field(#[from] crate::numberfield::FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Greedy,
    QuasiGreedy,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Greedy => "greedy",
            Mode::QuasiGreedy => "quasi-greedy",
        }
    }
}

/// Finite alphabet of base letters, all exceeding 1, living in one field.
#[derive(Debug, Clone)]
pub struct BaseAlphabet {
    field: Arc<NumberField>,
    letters: Vec<FieldElement>,
    names: Vec<String>,
    pisot_verified: bool,
}

impl BaseAlphabet {
    /// Verifying constructor: every letter must pass the Pisot check.
    pub fn new(field: Arc<NumberField>, letters: Vec<FieldElement>) -> Result<Self, TransducerError> {
        Self::build(field, letters, true)
    }

    /// Skips the Pisot verification (state caps still apply downstream).
    pub fn new_forced(field: Arc<NumberField>, letters: Vec<FieldElement>) -> Result<Self, TransducerError> {
        Self::build(field, letters, false)
    }

    fn build(
        field: Arc<NumberField>,
        letters: Vec<FieldElement>,
        verify: bool,
    ) -> Result<Self, TransducerError> {
        for (i, l) in letters.iter().enumerate() {
            assert!(same_field(l.field(), &field), "letter in a different field");
            if l.cmp_rational(&Rat::one()) != Ordering::Greater {
                return Err(TransducerError::LetterNotGreaterThanOne);
            }
            if verify {
                match l.is_pisot_of_degree_d() {
                    PisotStatus::Pisot => {}
                    PisotStatus::WrongDegree => {
                        return Err(TransducerError::NotPisot(i, "wrong algebraic degree".into()))
                    }
                    PisotStatus::NotPisot(d) => return Err(TransducerError::NotPisot(i, d)),
                }
            }
        }
        let names = letters.iter().map(|l| render_coeffs(l.coeffs())).collect();
        Ok(BaseAlphabet { field, letters, names, pisot_verified: verify })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn letters(&self) -> &[FieldElement] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn set_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.letters.len());
        self.names = names;
    }

    pub fn pisot_verified(&self) -> bool {
        self.pisot_verified
    }
}

/// Renders a coefficient vector as a polynomial in the generator symbol d.
pub fn render_coeffs(coeffs: &[Rat]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
        let mag = c.abs();
        let coef = if mag == Rat::one() && i > 0 { String::new() } else { mag.to_string() };
        let var = match i {
            0 => String::new(),
            1 => "d".into(),
            _ => format!("d^{i}"),
        };
        let sep = if coef.is_empty() || var.is_empty() { "" } else { "*" };
        let _ = write!(out, "{sign}{coef}{sep}{var}");
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// One greedy step from a state q in [0, 1]: digit ⌊βq⌋ and successor
/// βq − ⌊βq⌋.
pub fn greedy_step(q: &FieldElement, beta: &FieldElement) -> Result<(u32, FieldElement), TransducerError> {
    check_unit_interval(q)?;
    let x = beta.mul(q);
    let digit = x.floor();
    let next = x.sub(&q.field().from_rational(Rat::from_integer(digit.clone())));
    Ok((big_to_u32(&digit), next))
}

/// One quasi-greedy step: digit ⌈βq − 1⌉ and successor βq − digit, with
/// the zero state fixed.
pub fn quasi_step(q: &FieldElement, beta: &FieldElement) -> Result<(u32, FieldElement), TransducerError> {
    check_unit_interval(q)?;
    if q.is_zero() {
        return Ok((0, q.clone()));
    }
    let x = beta.mul(q);
    let digit = x.sub(&q.field().one()).ceil();
    let next = x.sub(&q.field().from_rational(Rat::from_integer(digit.clone())));
    Ok((big_to_u32(&digit), next))
}

pub fn step(q: &FieldElement, beta: &FieldElement, mode: Mode) -> Result<(u32, FieldElement), TransducerError> {
    match mode {
        Mode::Greedy => greedy_step(q, beta),
        Mode::QuasiGreedy => quasi_step(q, beta),
    }
}

fn check_unit_interval(q: &FieldElement) -> Result<(), TransducerError> {
    if q.sign() < 0 || q.cmp_rational(&Rat::one()) == Ordering::Greater {
        return Err(TransducerError::PointOutOfRange);
    }
    Ok(())
}

fn big_to_u32(b: &BigInt) -> u32 {
    b.to_u32().expect("digit fits in u32")
}

/// The part of the infinite greedy (or quasi-greedy) machine reachable
/// from one starting state: a complete deterministic letter-to-letter
/// transducer whose states are exact field elements in [0, 1].
#[derive(Debug, Clone)]
pub struct Transducer {
    pub alphabet: BaseAlphabet,
    pub states: Vec<FieldElement>,
    pub initial: usize,
    /// edges[state][letter] = (output digit, target state)
    pub edges: Vec<Vec<(u32, usize)>>,
    pub mode: Mode,
}

pub const DEFAULT_STATE_CAP: usize = 100_000;

/// Breadth-first closure of {r} under the step maps, with exact
/// canonical-coefficient state identity. States are processed FIFO and
/// letters in alphabet order, so indices are reproducible.
pub fn build(
    alphabet: &BaseAlphabet,
    r: &FieldElement,
    mode: Mode,
    state_cap: usize,
) -> Result<Transducer, TransducerError> {
    check_unit_interval(r)?;
    let mut index: HashMap<Vec<Rat>, usize> = HashMap::new();
    let mut states = vec![r.clone()];
    index.insert(r.coeffs().to_vec(), 0);
    let mut edges: Vec<Vec<(u32, usize)>> = Vec::new();
    let mut head = 0usize;
    while head < states.len() {
        let q = states[head].clone();
        let mut row = Vec::with_capacity(alphabet.len());
        for beta in alphabet.letters() {
            let (digit, next) = step(&q, beta, mode)?;
            let target = match index.get(next.coeffs()) {
                Some(&t) => t,
                None => {
                    let t = states.len();
                    if t >= state_cap {
                        return Err(TransducerError::StateCapExceeded(state_cap));
                    }
                    index.insert(next.coeffs().to_vec(), t);
                    states.push(next);
                    t
                }
            };
            row.push((digit, target));
        }
        edges.push(row);
        head += 1;
    }
    Ok(Transducer {
        alphabet: alphabet.clone(),
        states,
        initial: 0,
        edges,
        mode,
    })
}

impl Transducer {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// Replays a letter word from a state through the edge table.
    pub fn run_edges(&self, from: usize, letters: &[usize]) -> (Vec<u32>, usize) {
        let mut out = Vec::with_capacity(letters.len());
        let mut s = from;
        for &l in letters {
            let (d, t) = self.edges[s][l];
            out.push(d);
            s = t;
        }
        (out, s)
    }

    /// Structural sanity: complete, deterministic, exact states in [0,1],
    /// every edge consistent with the step map.
    pub fn verify(&self) -> Result<(), TransducerError> {
        for (i, q) in self.states.iter().enumerate() {
            check_unit_interval(q)?;
            if self.edges[i].len() != self.alphabet.len() {
                return Err(TransducerError::ParseError(format!(
                    "state {i} is missing edges"
                )));
            }
            for (l, beta) in self.alphabet.letters().iter().enumerate() {
                let (digit, next) = step(q, beta, self.mode)?;
                let (d, t) = self.edges[i][l];
                if d != digit || self.states[t] != next {
                    return Err(TransducerError::ParseError(format!(
                        "edge ({i}, {l}) disagrees with the step map"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Streaming evaluation: the first n digits of the expansion of r in the
/// base spelled by `base`, along with the number of distinct states the
/// run visits. No transducer is prebuilt.
pub fn run(
    alphabet: &BaseAlphabet,
    r: &FieldElement,
    base: &WordSpec,
    n: usize,
    mode: Mode,
) -> Result<(Vec<u32>, usize), TransducerError> {
    check_unit_interval(r)?;
    let mut digits = Vec::with_capacity(n);
    let mut visited: HashMap<Vec<Rat>, ()> = HashMap::new();
    let mut q = r.clone();
    for i in 0..n as u64 {
        visited.entry(q.coeffs().to_vec()).or_insert(());
        let l = base.letter_at(i) as usize;
        let beta = alphabet
            .letters()
            .get(l)
            .ok_or(TransducerError::LetterIndexOutOfRange(l))?;
        let (d, next) = step(&q, beta, mode)?;
        digits.push(d);
        q = next;
    }
    visited.entry(q.coeffs().to_vec()).or_insert(());
    Ok((digits, visited.len()))
}

/// Evaluation of a finite base-letter word; returns the digits and the
/// final state.
pub fn run_word(
    alphabet: &BaseAlphabet,
    r: &FieldElement,
    letters: &[Letter],
    mode: Mode,
) -> Result<(Vec<u32>, FieldElement), TransducerError> {
    check_unit_interval(r)?;
    let mut digits = Vec::with_capacity(letters.len());
    let mut q = r.clone();
    for &l in letters {
        let beta = alphabet
            .letters()
            .get(l as usize)
            .ok_or(TransducerError::LetterIndexOutOfRange(l as usize))?;
        let (d, next) = step(&q, beta, mode)?;
        digits.push(d);
        q = next;
    }
    Ok((digits, q))
}

/// Exact ultimately periodic expansion for an ultimately periodic base:
/// the run stops as soon as a (state, position-within-base-period) pair
/// repeats, and the detected output is returned in canonical minimal
/// form.
pub fn run_up(
    alphabet: &BaseAlphabet,
    r: &FieldElement,
    base: &UpWord,
    mode: Mode,
    state_cap: usize,
) -> Result<UpWord, TransducerError> {
    check_unit_interval(r)?;
    let t = base.preperiod().len();
    let p = base.period().len();
    let mut digits: Vec<u32> = Vec::new();
    let mut q = r.clone();
    // position -> first index at which (state, phase) appeared
    let mut seen: HashMap<(Vec<Rat>, usize), usize> = HashMap::new();
    let mut pos = 0usize;
    loop {
        if pos >= t {
            let phase = (pos - t) % p;
            if let Some(&first) = seen.get(&(q.coeffs().to_vec(), phase)) {
                let pre = digits[..first].to_vec();
                let per = digits[first..].to_vec();
                return Ok(UpWord::new(pre, per));
            }
            seen.insert((q.coeffs().to_vec(), phase), pos);
        }
        if pos >= state_cap {
            return Err(TransducerError::StateCapExceeded(state_cap));
        }
        let l = base.letter_at(pos as u64) as usize;
        let beta = alphabet
            .letters()
            .get(l)
            .ok_or(TransducerError::LetterIndexOutOfRange(l))?;
        let (d, next) = step(&q, beta, mode)?;
        digits.push(d);
        q = next;
        pos += 1;
    }
}

/// Exact partial valuation of a digit prefix: Σ digits[i] / (β_0 ⋯ β_i).
pub fn partial_valuation(
    alphabet: &BaseAlphabet,
    base: &WordSpec,
    digits: &[u32],
) -> FieldElement {
    let field = alphabet.field();
    let mut acc = field.zero();
    let mut prod = field.one();
    for (i, &d) in digits.iter().enumerate() {
        let beta = &alphabet.letters()[base.letter_at(i as u64) as usize];
        prod = prod.mul(beta);
        acc = acc.add(&field.from_rational(rat_int(d as i64)).div(&prod).expect("base letters are nonzero"));
    }
    acc
}

// --- serialization ---------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FieldJson {
    minpoly: Vec<String>,
    root: RootJson,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RootJson {
    Largest(String),
    Interval { lo: String, hi: String },
}

#[derive(Serialize, Deserialize)]
struct TransducerJson {
    field: FieldJson,
    letters: Vec<Vec<String>>,
    mode: String,
    initial: usize,
    states: Vec<Vec<String>>,
    edges: Vec<[u64; 4]>,
}

fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

fn rat_from_string(s: &str) -> Result<Rat, TransducerError> {
    Rat::from_str(s.trim()).map_err(|e| TransducerError::ParseError(format!("bad rational {s:?}: {e}")))
}

/// JSON serialization; bit-exact round trip with `from_json`.
pub fn to_json(t: &Transducer) -> String {
    let field = t.alphabet.field();
    let minpoly = field
        .minpoly_int_coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect();
    let w = crate::poly::rat(1, 1 << 20);
    let (lo, hi) = field.root_interval(&w);
    let json = TransducerJson {
        field: FieldJson {
            minpoly,
            root: RootJson::Interval { lo: rat_to_string(&lo), hi: rat_to_string(&hi) },
        },
        letters: t
            .alphabet
            .letters()
            .iter()
            .map(|l| l.coeffs().iter().map(rat_to_string).collect())
            .collect(),
        mode: t.mode.as_str().into(),
        initial: t.initial,
        states: t
            .states
            .iter()
            .map(|s| s.coeffs().iter().map(rat_to_string).collect())
            .collect(),
        edges: t
            .edges
            .iter()
            .enumerate()
            .flat_map(|(s, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(l, (d, target))| [s as u64, l as u64, *d as u64, *target as u64])
            })
            .collect(),
    };
    serde_json::to_string_pretty(&json).expect("serializable")
}

/// Parses a transducer from its JSON form, validating shape, index
/// ranges, completeness and determinism.
pub fn from_json(text: &str) -> Result<Transducer, TransducerError> {
    let json: TransducerJson =
        serde_json::from_str(text).map_err(|e| TransducerError::ParseError(e.to_string()))?;
    let minpoly: Result<Vec<BigInt>, _> = json
        .field
        .minpoly
        .iter()
        .map(|s| BigInt::from_str(s.trim()).map_err(|e| TransducerError::ParseError(e.to_string())))
        .collect();
    let selector = match &json.field.root {
        RootJson::Largest(s) if s == "largest" => RootSelector::LargestReal,
        RootJson::Largest(s) => {
            return Err(TransducerError::ParseError(format!("unknown root selector {s:?}")))
        }
        RootJson::Interval { lo, hi } => {
            RootSelector::Interval(rat_from_string(lo)?, rat_from_string(hi)?)
        }
    };
    let field = NumberField::new(&minpoly?, selector)?;
    let d = field.degree();
    let parse_elem = |coeffs: &[String]| -> Result<FieldElement, TransducerError> {
        if coeffs.len() != d {
            return Err(TransducerError::ParseError(format!(
                "coefficient vector of length {} in a degree-{d} field",
                coeffs.len()
            )));
        }
        let mut v = Vec::with_capacity(d);
        for c in coeffs {
            v.push(rat_from_string(c)?);
        }
        Ok(field.element(v))
    };
    if json.letters.is_empty() {
        return Err(TransducerError::ParseError("empty base alphabet".into()));
    }
    let letters: Result<Vec<_>, _> = json.letters.iter().map(|c| parse_elem(c)).collect();
    let alphabet = BaseAlphabet::new_forced(field.clone(), letters?)?;
    let mode = match json.mode.as_str() {
        "greedy" => Mode::Greedy,
        "quasi-greedy" => Mode::QuasiGreedy,
        m => return Err(TransducerError::ParseError(format!("unknown mode {m:?}"))),
    };
    let states: Result<Vec<_>, _> = json.states.iter().map(|c| parse_elem(c)).collect();
    let states = states?;
    if states.is_empty() || json.initial >= states.len() {
        return Err(TransducerError::ParseError("initial state out of range".into()));
    }
    let mut edges: Vec<Vec<Option<(u32, usize)>>> =
        vec![vec![None; alphabet.len()]; states.len()];
    for [s, l, d, t] in &json.edges {
        let (s, l, t) = (*s as usize, *l as usize, *t as usize);
        if s >= states.len() || t >= states.len() || l >= alphabet.len() {
            return Err(TransducerError::ParseError("edge index out of range".into()));
        }
        if edges[s][l].replace((*d as u32, t)).is_some() {
            return Err(TransducerError::ParseError(format!(
                "duplicate edge for state {s}, letter {l}"
            )));
        }
    }
    let edges: Result<Vec<Vec<(u32, usize)>>, _> = edges
        .into_iter()
        .enumerate()
        .map(|(s, row)| {
            row.into_iter()
                .map(|e| e.ok_or_else(|| TransducerError::ParseError(format!("state {s} is incomplete"))))
                .collect()
        })
        .collect();
    Ok(Transducer {
        alphabet,
        states,
        initial: json.initial,
        edges: edges?,
        mode,
    })
}

/// DOT digraph with edge labels `name|digit`.
pub fn to_dot(t: &Transducer) -> String {
    let mut out = String::from("digraph transducer {\n  rankdir=LR;\n");
    for (i, s) in t.states.iter().enumerate() {
        let label = render_coeffs(s.coeffs());
        let shape = if i == t.initial { ", shape=doublecircle" } else { "" };
        let _ = writeln!(out, "  q{i} [label=\"{label}\"{shape}];");
    }
    for (i, row) in t.edges.iter().enumerate() {
        for (l, (d, target)) in row.iter().enumerate() {
            let name = &t.alphabet.names()[l];
            let _ = writeln!(out, "  q{i} -> q{target} [label=\"{name}|{d}\"];");
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn int_field() -> Arc<NumberField> {
        NumberField::from_int_minpoly(&[-1, 1], RootSelector::LargestReal).unwrap()
    }

    fn int_alphabet(values: &[i64]) -> BaseAlphabet {
        let f = int_field();
        let letters = values.iter().map(|&v| f.from_rational(rat_int(v))).collect();
        BaseAlphabet::new(f, letters).unwrap()
    }

    fn golden_alphabet() -> BaseAlphabet {
        let f = NumberField::from_int_minpoly(&[-1, -1, 1], RootSelector::LargestReal).unwrap();
        let phi = f.generator();
        BaseAlphabet::new(f, vec![phi.clone(), phi.pow(3)]).unwrap()
    }

    #[test]
    fn greedy_step_examples() {
        let a = int_alphabet(&[2, 3]);
        let f = a.field().clone();
        let (d, next) = greedy_step(&f.one(), &a.letters()[0]).unwrap();
        assert_eq!(d, 2);
        assert!(next.is_zero());
        let fifth = f.from_rational(rat(1, 5));
        let (d, next) = greedy_step(&fifth, &a.letters()[0]).unwrap();
        assert_eq!(d, 0);
        assert_eq!(next, f.from_rational(rat(2, 5)));
        let (d, next) = greedy_step(&f.zero(), &a.letters()[1]).unwrap();
        assert_eq!(d, 0);
        assert!(next.is_zero());
    }

    #[test]
    fn quasi_step_examples() {
        let a = int_alphabet(&[2, 3]);
        let f = a.field().clone();
        let (d, next) = quasi_step(&f.one(), &a.letters()[1]).unwrap();
        assert_eq!(d, 2);
        assert_eq!(next, f.one());
        let (d, next) = quasi_step(&f.zero(), &a.letters()[0]).unwrap();
        assert_eq!(d, 0);
        assert!(next.is_zero());
        // state 1 under φ³: digit 4, successor φ³ − 4 = 2φ − 3
        let g = golden_alphabet();
        let gf = g.field().clone();
        let (d, next) = quasi_step(&gf.one(), &g.letters()[1]).unwrap();
        assert_eq!(d, 4);
        assert_eq!(next, gf.element(vec![rat_int(-3), rat_int(2)]));
    }

    #[test]
    fn out_of_range_rejected() {
        let a = int_alphabet(&[2]);
        let f = a.field().clone();
        let two = f.from_rational(rat_int(2));
        assert!(matches!(
            greedy_step(&two, &a.letters()[0]),
            Err(TransducerError::PointOutOfRange)
        ));
    }

    #[test]
    fn build_two_three_from_one() {
        let a = int_alphabet(&[2, 3]);
        let f = a.field().clone();
        let t = build(&a, &f.one(), Mode::Greedy, 100).unwrap();
        assert_eq!(t.state_count(), 2);
        // state 0 is the initial state 1, state 1 is 0
        assert_eq!(t.edges[0], vec![(2, 1), (3, 1)]);
        assert_eq!(t.edges[1], vec![(0, 1), (0, 1)]);
        let tq = build(&a, &f.one(), Mode::QuasiGreedy, 100).unwrap();
        assert_eq!(tq.state_count(), 1);
        assert_eq!(tq.edges[0], vec![(1, 0), (2, 0)]);
        t.verify().unwrap();
        tq.verify().unwrap();
    }

    #[test]
    fn build_two_three_from_one_fifth() {
        let a = int_alphabet(&[2, 3]);
        let f = a.field().clone();
        let r = f.from_rational(rat(1, 5));
        let tg = build(&a, &r, Mode::Greedy, 100).unwrap();
        let tq = build(&a, &r, Mode::QuasiGreedy, 100).unwrap();
        assert_eq!(tg.state_count(), 4);
        assert_eq!(tq.state_count(), 4);
        // identical machines in both modes
        assert_eq!(tg.edges, tq.edges);
        let states: Vec<Rat> = tg.states.iter().map(|s| s.coeffs()[0].clone()).collect();
        assert_eq!(states, vec![rat(1, 5), rat(2, 5), rat(3, 5), rat(4, 5)]);
    }

    #[test]
    fn golden_mean_quasi_builds() {
        let g = golden_alphabet();
        let f = g.field().clone();
        let t1 = build(&g, &f.one(), Mode::QuasiGreedy, 100).unwrap();
        assert_eq!(t1.state_count(), 4);
        t1.verify().unwrap();
        // states: 1, φ-1, 2φ-3, 2-φ
        let states: Vec<Vec<Rat>> = t1.states.iter().map(|s| s.coeffs().to_vec()).collect();
        assert_eq!(states, vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(-1), rat_int(1)],
            vec![rat_int(-3), rat_int(2)],
            vec![rat_int(2), rat_int(-1)],
        ]);
        assert_eq!(t1.edges, vec![
            vec![(1, 1), (4, 2)],
            vec![(0, 0), (2, 1)],
            vec![(0, 3), (0, 0)],
            vec![(0, 1), (1, 1)],
        ]);
        let t2 = build(&g, &f.from_rational(rat(1, 2)), Mode::QuasiGreedy, 100).unwrap();
        assert_eq!(t2.state_count(), 8);
        // states: 1/2, φ/2, φ-3/2, (φ-1)/2, (3φ-4)/2, 1-φ/2, (3-φ)/2, 3(φ-1)/2
        let states: Vec<Vec<Rat>> = t2.states.iter().map(|s| s.coeffs().to_vec()).collect();
        assert_eq!(states, vec![
            vec![rat(1, 2), rat_int(0)],
            vec![rat_int(0), rat(1, 2)],
            vec![rat(-3, 2), rat_int(1)],
            vec![rat(-1, 2), rat(1, 2)],
            vec![rat_int(-2), rat(3, 2)],
            vec![rat_int(1), rat(-1, 2)],
            vec![rat(3, 2), rat(-1, 2)],
            vec![rat(-3, 2), rat(3, 2)],
        ]);
        assert_eq!(t2.edges, vec![
            vec![(0, 1), (2, 2)],
            vec![(1, 3), (3, 4)],
            vec![(0, 5), (0, 0)],
            vec![(0, 0), (1, 3)],
            vec![(0, 6), (1, 1)],
            vec![(0, 3), (0, 1)],
            vec![(1, 2), (2, 7)],
            vec![(1, 0), (3, 7)],
        ]);
    }

    #[test]
    fn smallest_pisot_machine_edges() {
        let f = NumberField::from_int_minpoly(&[-1, -1, 0, 1], RootSelector::LargestReal).unwrap();
        let beta = f.generator();
        let a = BaseAlphabet::new(f.clone(), vec![beta.clone(), beta.pow(3)]).unwrap();
        let t = build(&a, &f.one(), Mode::QuasiGreedy, 100).unwrap();
        // states: 1, β-1, β²-β, β²-1, β+1-β²
        let states: Vec<Vec<Rat>> = t.states.iter().map(|s| s.coeffs().to_vec()).collect();
        assert_eq!(states, vec![
            vec![rat_int(1), rat_int(0), rat_int(0)],
            vec![rat_int(-1), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(-1), rat_int(1)],
            vec![rat_int(-1), rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(1), rat_int(-1)],
        ]);
        assert_eq!(t.edges, vec![
            vec![(1, 1), (2, 1)],
            vec![(0, 2), (0, 3)],
            vec![(0, 4), (0, 0)],
            vec![(0, 0), (1, 3)],
            vec![(0, 3), (1, 1)],
        ]);
    }

    #[test]
    fn silver_pair_machine_edges() {
        let f = NumberField::from_int_minpoly(&[-2, 0, 1], RootSelector::LargestReal).unwrap();
        let s1 = f.element(vec![rat_int(1), rat_int(1)]);
        let s2 = f.element(vec![rat_int(3), rat_int(2)]);
        let a = BaseAlphabet::new(f.clone(), vec![s1, s2]).unwrap();
        let t = build(&a, &f.one(), Mode::QuasiGreedy, 100).unwrap();
        // states: 1, √2-1, 2√2-2
        let states: Vec<Vec<Rat>> = t.states.iter().map(|s| s.coeffs().to_vec()).collect();
        assert_eq!(states, vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(-1), rat_int(1)],
            vec![rat_int(-2), rat_int(2)],
        ]);
        assert_eq!(t.edges, vec![
            vec![(2, 1), (5, 2)],
            vec![(0, 0), (2, 1)],
            vec![(1, 0), (4, 2)],
        ]);
    }

    #[test]
    fn shifted_alternate_base_expansion() {
        // base (4φ+1, φ)^ω from 1: greedy and quasi-greedy agree
        let f = NumberField::from_int_minpoly(&[-1, -1, 1], RootSelector::LargestReal).unwrap();
        let phi = f.generator();
        let other = f.element(vec![rat_int(1), rat_int(4)]);
        let a = BaseAlphabet::new_forced(f.clone(), vec![phi, other]).unwrap();
        let base = UpWord::periodic(vec![1, 0]);
        let g = run_up(&a, &f.one(), &base, Mode::Greedy, 10_000).unwrap();
        let expect = UpWord::new(vec![7, 0, 5, 1], vec![1, 0]);
        assert_eq!(g, expect);
        let q = run_up(&a, &f.one(), &base, Mode::QuasiGreedy, 10_000).unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn mixed_degree_alphabet_exceeds_cap() {
        let f = NumberField::from_int_minpoly(&[-1, -1, 1], RootSelector::LargestReal).unwrap();
        let phi = f.generator();
        let two = f.from_rational(rat_int(2));
        let a = BaseAlphabet::new_forced(f.clone(), vec![phi, two]).unwrap();
        let res = build(&a, &f.one(), Mode::Greedy, 300);
        assert!(matches!(res, Err(TransducerError::StateCapExceeded(_))));
        let res = build(&a, &f.one(), Mode::QuasiGreedy, 300);
        assert!(matches!(res, Err(TransducerError::StateCapExceeded(_))));
    }

    #[test]
    fn run_thue_morse_golden() {
        let g = golden_alphabet();
        let f = g.field().clone();
        let tm = WordSpec::Morphic(crate::words::thue_morse());
        let (digits, _) = run(&g, &f.one(), &tm, 8, Mode::QuasiGreedy).unwrap();
        assert_eq!(digits, vec![1, 2, 2, 0, 4, 0, 0, 2]);
        let (digits, _) = run(&g, &f.from_rational(rat(1, 2)), &tm, 8, Mode::QuasiGreedy).unwrap();
        assert_eq!(digits, vec![0, 3, 1, 1, 1, 0, 0, 3]);
        let (digits, _) = run(&g, &f.zero(), &tm, 5, Mode::QuasiGreedy).unwrap();
        assert_eq!(digits, vec![0; 5]);
    }

    #[test]
    fn run_up_forced_alternate() {
        // alphabet {φ, 4φ+1}, base (φ, 4φ+1)^ω from 1
        let f = NumberField::from_int_minpoly(&[-1, -1, 1], RootSelector::LargestReal).unwrap();
        let phi = f.generator();
        let other = f.element(vec![rat_int(1), rat_int(4)]);
        let a = BaseAlphabet::new_forced(f.clone(), vec![phi, other]).unwrap();
        let base = UpWord::periodic(vec![0, 1]);
        let g = run_up(&a, &f.one(), &base, Mode::Greedy, 10_000).unwrap();
        assert_eq!(g, UpWord::new(vec![1, 4, 1], vec![0]));
        let q = run_up(&a, &f.one(), &base, Mode::QuasiGreedy, 10_000).unwrap();
        assert_eq!(q, UpWord::new(vec![1, 4, 0, 7, 0, 5, 1], vec![1, 0]));
    }

    #[test]
    fn run_up_quasi_two_three() {
        let a = int_alphabet(&[2, 3]);
        let f = a.field().clone();
        let base = UpWord::periodic(vec![0, 1]);
        let out = run_up(&a, &f.one(), &base, Mode::QuasiGreedy, 100).unwrap();
        assert_eq!(out, UpWord::periodic(vec![1, 2]));
    }

    #[test]
    fn run_up_agrees_with_streaming_run() {
        let a = int_alphabet(&[2, 3]);
        let f = a.field().clone();
        for (pre, per) in [(vec![], vec![0, 1]), (vec![1], vec![0, 0, 1]), (vec![0, 0], vec![1])] {
            let base = UpWord::new(pre, per);
            for mode in [Mode::Greedy, Mode::QuasiGreedy] {
                for r in [f.one(), f.from_rational(rat(1, 5)), f.from_rational(rat(932, 3885))] {
                    let up = run_up(&a, &r, &base, mode, 10_000).unwrap();
                    let (digits, _) =
                        run(&a, &r, &WordSpec::Up(base.clone()), 40, mode).unwrap();
                    assert_eq!(up.prefix(40), digits);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let a = int_alphabet(&[2, 3]);
        let f = a.field().clone();
        let t = build(&a, &f.from_rational(rat(1, 5)), Mode::Greedy, 100).unwrap();
        let text = to_json(&t);
        let back = from_json(&text).unwrap();
        assert_eq!(back.state_count(), t.state_count());
        assert_eq!(back.edges, t.edges);
        assert_eq!(back.states, t.states);
        assert_eq!(to_json(&back), text);
        back.verify().unwrap();
    }

    #[test]
    fn json_rejects_empty_alphabet() {
        let text = r#"{
            "field": {"minpoly": ["-1", "1"], "root": "largest"},
            "letters": [],
            "mode": "greedy",
            "initial": 0,
            "states": [["1"]],
            "edges": []
        }"#;
        assert!(matches!(from_json(text), Err(TransducerError::ParseError(_))));
        assert!(matches!(from_json("not json"), Err(TransducerError::ParseError(_))));
    }

    #[test]
    fn dot_output_shape() {
        let a = int_alphabet(&[2, 3]);
        let f = a.field().clone();
        let t = build(&a, &f.one(), Mode::Greedy, 100).unwrap();
        let dot = to_dot(&t);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert_eq!(dot.matches("label=").count(), 6); // 2 nodes + 4 edges
    }

    #[test]
    fn quasi_agrees_with_greedy_until_zero() {
        let a = int_alphabet(&[2, 3]);
        let f = a.field().clone();
        let tm = WordSpec::Morphic(crate::words::thue_morse());
        // never hits the zero state: both expansions coincide
        let r = f.from_rational(rat(932, 3885));
        let (g, _) = run(&a, &r, &tm, 40, Mode::Greedy).unwrap();
        let (q, _) = run(&a, &r, &tm, 40, Mode::QuasiGreedy).unwrap();
        assert_eq!(g, q);
        // from 1 the greedy run drops to zero at once and stays there
        let (g, _) = run(&a, &f.one(), &tm, 12, Mode::Greedy).unwrap();
        let (q, _) = run(&a, &f.one(), &tm, 12, Mode::QuasiGreedy).unwrap();
        let first_diff = g.iter().zip(&q).position(|(x, y)| x != y).unwrap();
        assert!(g[first_diff + 1..].iter().all(|&d| d == 0));
    }

    #[test]
    fn valuation_reconstruction() {
        let a = int_alphabet(&[2, 3]);
        let f = a.field().clone();
        let tm = WordSpec::Morphic(crate::words::thue_morse());
        let r = f.from_rational(rat(932, 3885));
        let n = 16;
        let (digits, _) = run(&a, &r, &tm, n, Mode::Greedy).unwrap();
        let val = partial_valuation(&a, &tm, &digits);
        let diff = r.sub(&val);
        // 0 <= r - val < 1/(β_0⋯β_{n-1})
        assert!(diff.sign() >= 0);
        let mut prod = f.one();
        for i in 0..n {
            prod = prod.mul(&a.letters()[tm.letter_at(i as u64) as usize]);
        }
        let bound = f.one().div(&prod).unwrap();
        assert_eq!(diff.cmp_elem(&bound), Ordering::Less);
    }
}
