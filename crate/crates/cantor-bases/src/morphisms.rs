//! Integer Cantor bases built from blocks of constant product δ: the
//! per-letter digit morphisms given by mixed-radix decomposition, block
//! expansion of a δ-expansion into a block-base expansion, the finite
//! word-output machine storing an ultimately periodic δ-expansion, and
//! its letter-to-letter transformation.

use crate::poly::{rat_int, Rat};
use crate::words::{Letter, UpWord, WordSpec};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("digit {digit} out of range for block product {product}")]
    DigitOutOfRange { digit: u64, product: u64 },
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("invalid delta-expansion: {0}")]
    InvalidDeltaExpansion(String),
    #[error("morphism is not uniform")]
    NonUniformMorphism,
    #[error("value out of range for an expansion: {0}")]
    ValueOutOfRange(String),
}

/// Mixed-radix decomposition of c with respect to a block (b_0,…,b_{ℓ-1})
/// of integers ≥ 2: the unique word c_0…c_{ℓ-1} with c_j < b_j and
/// c = Σ_j c_j · b_{j+1} ⋯ b_{ℓ-1}.
pub fn digit_decompose(c: u64, block: &[u32]) -> Result<Vec<Letter>, MorphismError> {
    let product = block_product(block)?;
    if c >= product {
        return Err(MorphismError::DigitOutOfRange { digit: c, product });
    }
    let mut out = Vec::with_capacity(block.len());
    let mut rem = c;
    let mut weight = product;
    for &b in block {
        weight /= b as u64;
        out.push((rem / weight) as Letter);
        rem %= weight;
    }
    Ok(out)
}

fn block_product(block: &[u32]) -> Result<u64, MorphismError> {
    if block.is_empty() || block.iter().any(|&b| b < 2) {
        return Err(MorphismError::InvalidBlock("entries must be at least 2".into()));
    }
    let mut product = 1u64;
    for &b in block {
        product = product
            .checked_mul(b as u64)
            .filter(|&p| p <= 1 << 32)
            .ok_or_else(|| MorphismError::InvalidBlock("block product out of range".into()))?;
    }
    Ok(product)
}

/// Recomposition inverse to `digit_decompose`.
pub fn digit_recompose(word: &[Letter], block: &[u32]) -> u64 {
    let mut acc = 0u64;
    for (d, &b) in word.iter().zip(block) {
        acc = acc * b as u64 + *d as u64;
    }
    acc
}

/// A morphism ψ from a source alphabet into blocks of integers ≥ 2 whose
/// per-block product is one constant δ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantProductMorphism {
    delta: u64,
    names: Vec<String>,
    images: Vec<Vec<u32>>,
}

impl ConstantProductMorphism {
    pub fn new(names: Vec<String>, images: Vec<Vec<u32>>) -> Result<Self, MorphismError> {
        if images.is_empty() {
            return Err(MorphismError::InvalidBlock("no blocks".into()));
        }
        if names.len() != images.len() {
            return Err(MorphismError::InvalidBlock("one name per block required".into()));
        }
        let mut delta = None;
        for img in &images {
            let p = block_product(img)?;
            match delta {
                None => delta = Some(p),
                Some(d) if d == p => {}
                Some(d) => {
                    return Err(MorphismError::InvalidBlock(format!(
                        "block products differ: {d} vs {p}"
                    )))
                }
            }
        }
        Ok(ConstantProductMorphism { delta: delta.unwrap(), names, images })
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn images(&self) -> &[Vec<u32>] {
        &self.images
    }

    pub fn alphabet_len(&self) -> usize {
        self.images.len()
    }

    /// The digit morphism h_a for source letter a, tabulated over
    /// {0,…,δ−1}.
    pub fn digit_morphism(&self, a: usize) -> Vec<Vec<Letter>> {
        (0..self.delta)
            .map(|c| digit_decompose(c, &self.images[a]).expect("c < delta"))
            .collect()
    }

    /// True when every image block has the same length.
    pub fn uniform_length(&self) -> Option<usize> {
        let l = self.images[0].len();
        if self.images.iter().all(|img| img.len() == l) {
            Some(l)
        } else {
            None
        }
    }
}

/// Greedy base-δ expansion of a rational in [0, 1), detected ultimately
/// periodic by remainder repetition.
pub fn delta_expansion(r: &Rat, delta: u64) -> Result<UpWord, MorphismError> {
    if delta < 2 {
        return Err(MorphismError::InvalidBlock("delta must be at least 2".into()));
    }
    if r.is_negative() || r >= &Rat::one() {
        return Err(MorphismError::ValueOutOfRange(format!("{r} not in [0, 1)")));
    }
    let delta_big = BigInt::from(delta);
    let q = r.denom().clone();
    if q > BigInt::from(1u64 << 40) {
        return Err(MorphismError::ValueOutOfRange(
            "denominator too large for expansion detection".into(),
        ));
    }
    let mut p = r.numer().clone();
    let mut digits: Vec<Letter> = Vec::new();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    loop {
        if digits.len() > 1 << 24 {
            return Err(MorphismError::ValueOutOfRange(
                "expansion period exceeds the detection limit".into(),
            ));
        }
        if let Some(&first) = seen.get(&p) {
            let pre = digits[..first].to_vec();
            let per = digits[first..].to_vec();
            return Ok(UpWord::new(pre, per));
        }
        seen.insert(p.clone(), digits.len());
        let scaled = &p * &delta_big;
        let digit = (&scaled / &q).to_u32().expect("digit below delta");
        digits.push(digit);
        p = scaled % &q;
    }
}

/// Checks that an ultimately periodic digit word is a valid greedy
/// δ-expansion: digits below δ and no (δ−1)^ω tail.
pub fn validate_delta_expansion(w: &UpWord, delta: u64) -> Result<(), MorphismError> {
    let top = (delta - 1) as Letter;
    for i in 0..(w.preperiod().len() + w.period().len()) as u64 {
        if w.letter_at(i) as u64 >= delta {
            return Err(MorphismError::InvalidDeltaExpansion(format!(
                "digit {} at position {i} is not below {delta}",
                w.letter_at(i)
            )));
        }
    }
    if w.period().iter().all(|&d| d == top) {
        return Err(MorphismError::InvalidDeltaExpansion(format!(
            "expansion ends in ({top})^ω"
        )));
    }
    Ok(())
}

/// First n digits of the block-base expansion obtained by applying the
/// digit morphisms h_a to a δ-expansion, in the order prescribed by the
/// preimage word.
pub fn block_expand(
    d_delta_r: &UpWord,
    preimage: &WordSpec,
    psi: &ConstantProductMorphism,
    n: usize,
) -> Result<Vec<Letter>, MorphismError> {
    validate_delta_expansion(d_delta_r, psi.delta)?;
    let mut out = Vec::with_capacity(n);
    let mut k = 0u64;
    while out.len() < n {
        let a = preimage.letter_at(k) as usize;
        if a >= psi.alphabet_len() {
            return Err(MorphismError::InvalidBlock(format!(
                "preimage letter {a} has no block"
            )));
        }
        let c = d_delta_r.letter_at(k) as u64;
        let word = digit_decompose(c, &psi.images[a])?;
        out.extend_from_slice(&word);
        k += 1;
    }
    out.truncate(n);
    Ok(out)
}

/// Finite machine storing an ultimately periodic δ-expansion: the state
/// for position i emits h_a(c_i) on source letter a and advances,
/// wrapping inside the period. Each state carries its exact remainder.
#[derive(Debug, Clone)]
pub struct ExpansionMachine {
    psi: ConstantProductMorphism,
    digits: Vec<Letter>,
    residues: Vec<Rat>,
    pre_len: usize,
}

impl ExpansionMachine {
    /// Builds the machine from a canonical δ-expansion. Residues are the
    /// exact tail values Σ_{k≥0} c_{i+k} / δ^{k+1}.
    pub fn new(d_delta_r: &UpWord, psi: &ConstantProductMorphism) -> Result<Self, MorphismError> {
        validate_delta_expansion(d_delta_r, psi.delta)?;
        let pre = d_delta_r.preperiod();
        let per = d_delta_r.period();
        let delta = rat_int(psi.delta as i64);
        // value of the purely periodic tail: (Σ per[j] δ^{p-1-j}) / (δ^p − 1)
        let mut num = Rat::zero();
        for &d in per {
            num = num * &delta + rat_int(d as i64);
        }
        let mut dp = Rat::one();
        for _ in 0..per.len() {
            dp *= &delta;
        }
        let per_value = num / (dp - Rat::one());
        let mut residues = Vec::with_capacity(pre.len() + per.len());
        // preperiod residues, walking backwards from the periodic value
        let mut vals_rev: Vec<Rat> = Vec::new();
        let mut cur = per_value.clone();
        for &d in pre.iter().rev() {
            cur = (cur + rat_int(d as i64)) / &delta;
            vals_rev.push(cur.clone());
        }
        residues.extend(vals_rev.into_iter().rev());
        // period residues
        let mut cur = per_value;
        for &d in per {
            residues.push(cur.clone());
            cur = cur * &delta - rat_int(d as i64);
        }
        let digits: Vec<Letter> = pre.iter().chain(per.iter()).copied().collect();
        Ok(ExpansionMachine {
            psi: psi.clone(),
            digits,
            residues,
            pre_len: pre.len(),
        })
    }

    pub fn state_count(&self) -> usize {
        self.digits.len()
    }

    pub fn residues(&self) -> &[Rat] {
        &self.residues
    }

    pub fn next_state(&self, i: usize) -> usize {
        if i + 1 < self.digits.len() {
            i + 1
        } else {
            self.pre_len
        }
    }

    /// Output word of the transition from state i on source letter a.
    pub fn output(&self, i: usize, a: usize) -> Result<Vec<Letter>, MorphismError> {
        digit_decompose(self.digits[i] as u64, &self.psi.images[a])
    }

    /// Feeds a preimage word through the machine.
    pub fn run(&self, preimage: &WordSpec, n: usize) -> Result<Vec<Letter>, MorphismError> {
        let mut out = Vec::with_capacity(n);
        let mut state = 0usize;
        let mut k = 0u64;
        while out.len() < n {
            let a = preimage.letter_at(k) as usize;
            out.extend_from_slice(&self.output(state, a)?);
            state = self.next_state(state);
            k += 1;
        }
        out.truncate(n);
        Ok(out)
    }

    /// Letter-to-letter transformation: every length-L output edge is
    /// replaced by a chain of L single-digit edges through fresh
    /// intermediate states whose inputs spell ψ(a). Requires ψ uniform.
    pub fn letter_to_letter(&self) -> Result<LetterMachine, MorphismError> {
        let len = self.psi.uniform_length().ok_or(MorphismError::NonUniformMorphism)?;
        let mut residues: Vec<Rat> = self.residues.clone();
        let mut edges: Vec<Vec<(u32, Letter, usize)>> = vec![vec![]; self.state_count()];
        for i in 0..self.state_count() {
            for a in 0..self.psi.alphabet_len() {
                let word = self.output(i, a)?;
                let block = &self.psi.images[a];
                let target = self.next_state(i);
                let mut cur = i;
                let mut val = self.residues[i].clone();
                for j in 0..len {
                    let next = if j + 1 == len {
                        target
                    } else {
                        // fresh intermediate state carrying the exact
                        // intermediate remainder
                        val = val * rat_int(block[j] as i64) - rat_int(word[j] as i64);
                        residues.push(val.clone());
                        edges.push(vec![]);
                        residues.len() - 1
                    };
                    edges[cur].push((block[j], word[j], next));
                    cur = next;
                }
            }
        }
        Ok(LetterMachine { residues, edges, initial: 0 })
    }
}

/// A letter-to-letter machine over integer base letters with one digit
/// output per edge. Partial: only the inputs that continue a block are
/// defined from intermediate states.
#[derive(Debug, Clone)]
pub struct LetterMachine {
    /// Exact remainder represented by each state.
    pub residues: Vec<Rat>,
    /// edges[state] = (input base letter value, output digit, target)
    pub edges: Vec<Vec<(u32, Letter, usize)>>,
    pub initial: usize,
}

impl LetterMachine {
    pub fn state_count(&self) -> usize {
        self.residues.len()
    }

    /// Merges states carrying the same exact remainder. Outgoing edges
    /// of merged states agree wherever both are defined, because digit
    /// and successor are functions of the remainder and the input letter.
    pub fn merge_by_residue(&self) -> LetterMachine {
        let mut repr: HashMap<Rat, usize> = HashMap::new();
        let mut order: Vec<Rat> = Vec::new();
        let mut class_of = vec![0usize; self.state_count()];
        for (i, r) in self.residues.iter().enumerate() {
            let c = *repr.entry(r.clone()).or_insert_with(|| {
                order.push(r.clone());
                order.len() - 1
            });
            class_of[i] = c;
        }
        let mut edges: Vec<Vec<(u32, Letter, usize)>> = vec![vec![]; order.len()];
        for (i, row) in self.edges.iter().enumerate() {
            let c = class_of[i];
            for &(input, digit, target) in row {
                let edge = (input, digit, class_of[target]);
                if !edges[c].contains(&edge) {
                    if let Some(&(_, d0, t0)) = edges[c].iter().find(|(inp, _, _)| *inp == input) {
                        assert_eq!(
                            (d0, t0),
                            (digit, class_of[target]),
                            "conflicting edges for one remainder"
                        );
                    } else {
                        edges[c].push(edge);
                    }
                }
            }
        }
        LetterMachine {
            residues: order,
            edges,
            initial: class_of[self.initial],
        }
    }

    /// Follows the unique edge for a base letter value.
    pub fn step(&self, state: usize, input: u32) -> Option<(Letter, usize)> {
        self.edges[state]
            .iter()
            .find(|(i, _, _)| *i == input)
            .map(|&(_, d, t)| (d, t))
    }

    /// Runs a stream of base letter values.
    pub fn run_values(&self, values: impl Iterator<Item = u32>, n: usize) -> Option<Vec<Letter>> {
        let mut out = Vec::with_capacity(n);
        let mut s = self.initial;
        for v in values {
            if out.len() >= n {
                break;
            }
            let (d, t) = self.step(s, v)?;
            out.push(d);
            s = t;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::words::thue_morse;

    fn tm_psi() -> ConstantProductMorphism {
        ConstantProductMorphism::new(
            vec!["2".into(), "3".into()],
            vec![vec![2, 3], vec![3, 2]],
        )
        .unwrap()
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(digit_decompose(61, &[6, 3, 4]).unwrap(), vec![5, 0, 1]);
        assert_eq!(digit_decompose(61, &[3, 2, 4, 3]).unwrap(), vec![2, 1, 0, 1]);
        assert_eq!(digit_decompose(61, &[4, 3, 3, 2]).unwrap(), vec![3, 1, 0, 1]);
        assert_eq!(digit_decompose(3, &[2, 3]).unwrap(), vec![1, 0]);
        assert_eq!(digit_decompose(5, &[3, 2]).unwrap(), vec![2, 1]);
        assert_eq!(digit_decompose(0, &[5, 7]).unwrap(), vec![0, 0]);
        assert!(matches!(
            digit_decompose(72, &[6, 3, 4]),
            Err(MorphismError::DigitOutOfRange { .. })
        ));
    }

    #[test]
    fn digit_morphism_tables() {
        let psi = tm_psi();
        let h2: Vec<Vec<Letter>> = psi.digit_morphism(0);
        assert_eq!(h2, vec![
            vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]
        ]);
        let h3 = psi.digit_morphism(1);
        assert_eq!(h3, vec![
            vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 0], vec![2, 1]
        ]);
    }

    #[test]
    fn recompose_round_trip() {
        for c in 0..72 {
            let w = digit_decompose(c, &[6, 3, 4]).unwrap();
            assert_eq!(digit_recompose(&w, &[6, 3, 4]), c);
        }
    }

    #[test]
    fn rational_delta_expansion() {
        let w = delta_expansion(&rat(932, 3885), 6).unwrap();
        assert_eq!(w, UpWord::new(vec![1], vec![2, 3, 4, 5]));
        let z = delta_expansion(&rat(0, 1), 6).unwrap();
        assert_eq!(z, UpWord::periodic(vec![0]));
        assert!(delta_expansion(&rat_int(1), 6).is_err());
    }

    #[test]
    fn block_expand_thue_morse() {
        let d6 = UpWord::new(vec![1], vec![2, 3, 4, 5]);
        let tm = WordSpec::Morphic(thue_morse());
        let out = block_expand(&d6, &tm, &tm_psi(), 16).unwrap();
        let expect: Vec<Letter> = "0110111121021020".chars().map(|c| c.to_digit(10).unwrap()).collect();
        assert_eq!(out, expect);
    }

    #[test]
    fn block_expand_trivial_cases() {
        let zero = UpWord::periodic(vec![0]);
        let tm = WordSpec::Morphic(thue_morse());
        assert_eq!(block_expand(&zero, &tm, &tm_psi(), 6).unwrap(), vec![0; 6]);
        // single length-1 block: output equals the delta expansion itself
        let psi = ConstantProductMorphism::new(vec!["a".into()], vec![vec![6]]).unwrap();
        let d6 = UpWord::new(vec![1], vec![2, 3, 4, 5]);
        let ones = WordSpec::Up(UpWord::periodic(vec![0]));
        assert_eq!(block_expand(&d6, &ones, &psi, 9).unwrap(), vec![1, 2, 3, 4, 5, 2, 3, 4, 5]);
    }

    #[test]
    fn rejects_top_digit_tail() {
        let bad = UpWord::new(vec![1], vec![5]);
        assert!(matches!(
            validate_delta_expansion(&bad, 6),
            Err(MorphismError::InvalidDeltaExpansion(_))
        ));
        let big = UpWord::periodic(vec![7]);
        assert!(validate_delta_expansion(&big, 6).is_err());
    }

    #[test]
    fn machine_shape_and_residues() {
        let d6 = UpWord::new(vec![1], vec![2, 3, 4, 5]);
        let m = ExpansionMachine::new(&d6, &tm_psi()).unwrap();
        assert_eq!(m.state_count(), 5);
        assert_eq!(m.residues()[0], rat(932, 3885));
        // the handle feeds the cycle, which wraps to position 1
        assert_eq!(m.next_state(0), 1);
        assert_eq!(m.next_state(4), 1);
        // trivial all-zero machine
        let z = ExpansionMachine::new(&UpWord::periodic(vec![0]), &tm_psi()).unwrap();
        assert_eq!(z.state_count(), 1);
        assert_eq!(z.residues()[0], Rat::zero());
    }

    #[test]
    fn machine_matches_block_expand() {
        let d6 = UpWord::new(vec![1], vec![2, 3, 4, 5]);
        let m = ExpansionMachine::new(&d6, &tm_psi()).unwrap();
        let tm = WordSpec::Morphic(thue_morse());
        let got = m.run(&tm, 16).unwrap();
        let expect = block_expand(&d6, &tm, &tm_psi(), 16).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn letter_to_letter_counts() {
        let d6 = UpWord::new(vec![1], vec![2, 3, 4, 5]);
        let m = ExpansionMachine::new(&d6, &tm_psi()).unwrap();
        let ltl = m.letter_to_letter().unwrap();
        assert_eq!(ltl.state_count(), 15);
        let merged = ltl.merge_by_residue();
        assert_eq!(merged.state_count(), 14);
        // all-zero machine becomes an L-cycle of zero outputs
        let z = ExpansionMachine::new(&UpWord::periodic(vec![0]), &tm_psi()).unwrap();
        let zl = z.letter_to_letter().unwrap();
        assert_eq!(zl.state_count(), 1 + 2);
        assert!(zl.edges.iter().flatten().all(|&(_, d, _)| d == 0));
    }

    #[test]
    fn letter_machine_replays_blocks() {
        let d6 = UpWord::new(vec![1], vec![2, 3, 4, 5]);
        let psi = tm_psi();
        let m = ExpansionMachine::new(&d6, &psi).unwrap();
        let ltl = m.letter_to_letter().unwrap();
        let tm = WordSpec::Morphic(thue_morse());
        // flatten the preimage through ψ to feed the letter machine
        let flat: Vec<u32> = (0..8)
            .flat_map(|k| psi.images()[tm.letter_at(k) as usize].clone())
            .collect();
        let got = ltl.run_values(flat.into_iter(), 16).unwrap();
        let expect = block_expand(&d6, &tm, &psi, 16).unwrap();
        assert_eq!(got, expect);
        let merged = ltl.merge_by_residue();
        let flat: Vec<u32> = (0..8)
            .flat_map(|k| psi.images()[tm.letter_at(k) as usize].clone())
            .collect();
        assert_eq!(merged.run_values(flat.into_iter(), 16).unwrap(), expect);
    }

    #[test]
    fn non_uniform_rejected() {
        let psi = ConstantProductMorphism::new(
            vec!["a".into(), "b".into()],
            vec![vec![6], vec![2, 3]],
        )
        .unwrap();
        let d6 = UpWord::new(vec![1], vec![2, 3, 4, 5]);
        let m = ExpansionMachine::new(&d6, &psi).unwrap();
        assert!(matches!(m.letter_to_letter(), Err(MorphismError::NonUniformMorphism)));
    }

    #[test]
    fn constant_product_enforced() {
        assert!(ConstantProductMorphism::new(
            vec!["a".into(), "b".into()],
            vec![vec![2, 3], vec![2, 2]]
        )
        .is_err());
    }
}
