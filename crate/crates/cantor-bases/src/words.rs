//! Finitely described infinite words over small integer alphabets:
//! ultimately periodic words in canonical minimal form, fixed points of
//! uniform morphisms with codings, base-b automaton-indexed sequences,
//! and explicit prefix-plus-generator words.

use std::sync::Arc;
use thiserror::Error;

/// Letters and digits are small nonnegative integers throughout.
pub type Letter = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("malformed word spec: {0}")]
    MalformedSpec(String),
}

/// An ultimately periodic word  pre · per^ω  in canonical minimal form:
/// the period is primitive and the preperiod cannot be shortened by
/// absorbing its last letter into a rotation of the period.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UpWord {
    pre: Vec<Letter>,
    per: Vec<Letter>,
}

impl UpWord {
    pub fn new(pre: Vec<Letter>, per: Vec<Letter>) -> UpWord {
        assert!(!per.is_empty(), "period must be nonempty");
        let mut w = UpWord { pre, per };
        w.canonicalize();
        w
    }

    pub fn periodic(per: Vec<Letter>) -> UpWord {
        UpWord::new(vec![], per)
    }

    pub fn preperiod(&self) -> &[Letter] {
        &self.pre
    }

    pub fn period(&self) -> &[Letter] {
        &self.per
    }

    pub fn letter_at(&self, i: u64) -> Letter {
        let p = self.pre.len() as u64;
        if i < p {
            self.pre[i as usize]
        } else {
            self.per[((i - p) % self.per.len() as u64) as usize]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<Letter> {
        (0..n as u64).map(|i| self.letter_at(i)).collect()
    }

    fn canonicalize(&mut self) {
        // primitive period: smallest divisor length that tiles it
        let n = self.per.len();
        for d in 1..=n / 2 {
            if n.is_multiple_of(d) && self.per.iter().zip(self.per.iter().cycle().skip(d).take(n)).all(|(a, b)| a == b) {
                self.per.truncate(d);
                break;
            }
        }
        // absorb preperiod tail into the period by rotation
        while let Some(&last) = self.pre.last() {
            if last != *self.per.last().unwrap() {
                break;
            }
            self.pre.pop();
            let l = self.per.pop().unwrap();
            self.per.insert(0, l);
        }
    }

    pub fn shift(&self, n: u64) -> UpWord {
        let p = self.pre.len() as u64;
        if n <= p {
            UpWord::new(self.pre[n as usize..].to_vec(), self.per.clone())
        } else {
            let k = ((n - p) % self.per.len() as u64) as usize;
            let mut per = self.per[k..].to_vec();
            per.extend_from_slice(&self.per[..k]);
            UpWord::new(vec![], per)
        }
    }

    /// Exact lexicographic comparison of the represented infinite words.
    pub fn lex_cmp(&self, other: &UpWord) -> std::cmp::Ordering {
        let horizon = self.pre.len().max(other.pre.len())
            + num_integer::lcm(self.per.len(), other.per.len())
            + 1;
        for i in 0..horizon as u64 {
            let c = self.letter_at(i).cmp(&other.letter_at(i));
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl std::fmt::Display for UpWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for l in &self.pre {
            write!(f, "{l} ")?;
        }
        write!(f, "(")?;
        let mut first = true;
        for l in &self.per {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Fixed point of a k-uniform morphism (prolongable on the seed) followed
/// by a letter-to-letter coding, read from a position offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphicSpec {
    pub k: usize,
    pub images: Vec<Vec<Letter>>,
    pub coding: Vec<Letter>,
    pub seed: Letter,
    pub offset: u64,
}

impl MorphicSpec {
    pub fn new(
        k: usize,
        images: Vec<Vec<Letter>>,
        coding: Vec<Letter>,
        seed: Letter,
    ) -> Result<MorphicSpec, WordError> {
        if k == 0 {
            return Err(WordError::MalformedSpec("morphism length must be positive".into()));
        }
        if images.is_empty() || images.len() != coding.len() {
            return Err(WordError::MalformedSpec(
                "coding must cover exactly the morphism alphabet".into(),
            ));
        }
        for img in &images {
            if img.len() != k {
                return Err(WordError::MalformedSpec("morphism is not uniform".into()));
            }
            if img.iter().any(|&l| l as usize >= images.len()) {
                return Err(WordError::MalformedSpec("image letter out of range".into()));
            }
        }
        if seed as usize >= images.len() {
            return Err(WordError::MalformedSpec("seed letter out of range".into()));
        }
        if images[seed as usize][0] != seed {
            return Err(WordError::MalformedSpec(
                "morphism is not prolongable on the seed".into(),
            ));
        }
        Ok(MorphicSpec { k, images, coding, seed, offset: 0 })
    }

    /// Letter of the uncoded fixed point at position i, by reading the
    /// base-k digits of i most significant first.
    fn fixed_point_letter(&self, i: u64) -> Letter {
        let mut digits = Vec::new();
        let mut n = i;
        while n > 0 {
            digits.push((n % self.k as u64) as usize);
            n /= self.k as u64;
        }
        let mut state = self.seed;
        for &d in digits.iter().rev() {
            state = self.images[state as usize][d];
        }
        state
    }
}

/// A deterministic complete automaton reading base-b digits, most
/// significant first, with an output letter per state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonSpec {
    pub base: u32,
    pub transitions: Vec<Vec<usize>>,
    pub outputs: Vec<Letter>,
    pub initial: usize,
    pub offset: u64,
}

impl AutomatonSpec {
    pub fn new(
        base: u32,
        transitions: Vec<Vec<usize>>,
        outputs: Vec<Letter>,
        initial: usize,
    ) -> Result<AutomatonSpec, WordError> {
        if base < 2 {
            return Err(WordError::MalformedSpec("automaton base must be at least 2".into()));
        }
        let n = transitions.len();
        if n == 0 || outputs.len() != n || initial >= n {
            return Err(WordError::MalformedSpec("automaton shape is inconsistent".into()));
        }
        for row in &transitions {
            if row.len() != base as usize || row.iter().any(|&t| t >= n) {
                return Err(WordError::MalformedSpec("automaton is not complete".into()));
            }
        }
        let spec = AutomatonSpec { base, transitions, outputs, initial, offset: 0 };
        // leading-zero invariance, sampled
        for i in 0..64u64 {
            let plain = spec.letter_plain(i);
            let padded = spec.run_digits(&spec.digits_with_leading_zeros(i, 3));
            if plain != padded {
                return Err(WordError::MalformedSpec(
                    "automaton output is not invariant under leading zeros".into(),
                ));
            }
        }
        Ok(spec)
    }

    fn digits_with_leading_zeros(&self, i: u64, pad: usize) -> Vec<usize> {
        let mut digits = vec![0usize; pad];
        let mut tail = Vec::new();
        let mut n = i;
        while n > 0 {
            tail.push((n % self.base as u64) as usize);
            n /= self.base as u64;
        }
        tail.reverse();
        digits.extend(tail);
        digits
    }

    fn run_digits(&self, digits: &[usize]) -> Letter {
        let mut state = self.initial;
        for &d in digits {
            state = self.transitions[state][d];
        }
        self.outputs[state]
    }

    fn letter_plain(&self, i: u64) -> Letter {
        self.run_digits(&self.digits_with_leading_zeros(i, 0))
    }
}

/// Finite prefix plus a total generator callback.
#[derive(Clone)]
pub struct ExplicitSpec {
    pub prefix: Vec<Letter>,
    pub generator: Arc<dyn Fn(u64) -> Letter + Send + Sync>,
    pub offset: u64,
}

impl std::fmt::Debug for ExplicitSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExplicitSpec")
            .field("prefix", &self.prefix)
            .field("offset", &self.offset)
            .finish()
    }
}

/// A finitely described infinite word.
#[derive(Debug, Clone)]
pub enum WordSpec {
    Up(UpWord),
    Morphic(MorphicSpec),
    Automaton(AutomatonSpec),
    Explicit(ExplicitSpec),
}

impl WordSpec {
    pub fn letter_at(&self, i: u64) -> Letter {
        match self {
            WordSpec::Up(w) => w.letter_at(i),
            WordSpec::Morphic(m) => {
                let l = m.fixed_point_letter(i + m.offset);
                m.coding[l as usize]
            }
            WordSpec::Automaton(a) => a.letter_plain(i + a.offset),
            WordSpec::Explicit(e) => {
                let i = i + e.offset;
                if (i as usize) < e.prefix.len() {
                    e.prefix[i as usize]
                } else {
                    (e.generator)(i)
                }
            }
        }
    }

    /// First n letters of the word.
    pub fn stream(&self, n: usize) -> Vec<Letter> {
        (0..n as u64).map(|i| self.letter_at(i)).collect()
    }

    /// The spec denoting the n-fold shift of the word.
    pub fn shift(&self, n: u64) -> WordSpec {
        match self {
            WordSpec::Up(w) => WordSpec::Up(w.shift(n)),
            WordSpec::Morphic(m) => {
                let mut m = m.clone();
                m.offset += n;
                WordSpec::Morphic(m)
            }
            WordSpec::Automaton(a) => {
                let mut a = a.clone();
                a.offset += n;
                WordSpec::Automaton(a)
            }
            WordSpec::Explicit(e) => {
                let mut e = e.clone();
                e.offset += n;
                WordSpec::Explicit(e)
            }
        }
    }

    /// The image of the word under a letter-to-block substitution with
    /// blocks of one common length (the flattened word).
    pub fn flatten_blocks(&self, blocks: &[Vec<Letter>]) -> Result<WordSpec, WordError> {
        if blocks.is_empty() {
            return Err(WordError::MalformedSpec("no blocks".into()));
        }
        let len = blocks[0].len();
        if len == 0 || blocks.iter().any(|b| b.len() != len) {
            return Err(WordError::MalformedSpec("blocks must share one nonzero length".into()));
        }
        let inner = self.clone();
        let blocks = blocks.to_vec();
        Ok(WordSpec::Explicit(ExplicitSpec {
            prefix: vec![],
            generator: Arc::new(move |i| {
                let b = inner.letter_at(i / len as u64) as usize;
                blocks[b][(i % len as u64) as usize]
            }),
            offset: 0,
        }))
    }
}

/// The fixed point of 0 -> 01, 1 -> 10 over the letters {0, 1}.
pub fn thue_morse() -> MorphicSpec {
    MorphicSpec::new(2, vec![vec![0, 1], vec![1, 0]], vec![0, 1], 0).unwrap()
}
