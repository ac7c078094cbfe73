//! Structural decision procedures on built transducers: the two-walk
//! property via backward pair-set closure, strongly connected components,
//! restriction to block inputs with the visited-state complexity ratio,
//! prefix tables of shifted quasi-greedy expansions, admissibility of
//! ultimately periodic digit words, and transduction of uniform-morphic
//! bases into uniform-morphic digit streams.

use crate::numberfield::FieldElement;
use crate::poly::{rat_int, Rat};
use crate::transducer::{run, run_up, BaseAlphabet, Mode, Transducer, TransducerError, DEFAULT_STATE_CAP};
use crate::words::{Letter, MorphicSpec, UpWord, WordSpec, WordError};
use num_rational::Ratio;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("input spec must be an unshifted uniform-morphic word")]
    NonUniformInput,
    #[error("transduced morphic description exceeds size limits")]
    TransductionTooLarge,
    #[error(transparent)]
    Transducer(#[from] TransducerError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Two equal-length closed walks from one state with distinct inputs and
/// identical outputs; replayable against the transducer that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoWalkWitness {
    pub state: usize,
    pub input_u: Vec<usize>,
    pub input_v: Vec<usize>,
    pub output: Vec<u32>,
}

impl TwoWalkWitness {
    /// Both inputs must label closed walks from the witness state with the
    /// recorded common output.
    pub fn replay(&self, t: &Transducer) -> bool {
        if self.input_u == self.input_v || self.input_u.len() != self.input_v.len() {
            return false;
        }
        let (out_u, end_u) = t.run_edges(self.state, &self.input_u);
        let (out_v, end_v) = t.run_edges(self.state, &self.input_v);
        end_u == self.state && end_v == self.state && out_u == self.output && out_v == self.output
    }
}

#[derive(Clone, Copy)]
struct Derivation {
    letters: (usize, usize),
    parent: Option<(usize, usize)>,
}

/// Decides whether some state carries two closed walks with distinct
/// inputs and one output, by the per-anchor backward pair closure:
/// seed with pairs of same-digit distinct-letter transitions into the
/// anchor, close backward under same-digit transition pairs, and test
/// whether the anchor pairs with itself.
pub fn two_walk(t: &Transducer) -> (bool, Option<TwoWalkWitness>) {
    let n = t.state_count();
    let letters = t.alphabet.len();
    // incoming[state][digit] -> list of (source, letter); ordered maps
    // keep the search deterministic, and digits are explored largest
    // first so the reported witness prefers larger output digits
    let mut incoming: Vec<BTreeMap<u32, Vec<(usize, usize)>>> = vec![BTreeMap::new(); n];
    for (s, row) in t.edges.iter().enumerate() {
        for (l, &(d, target)) in row.iter().enumerate() {
            incoming[target].entry(d).or_default().push((s, l));
        }
    }
    if letters < 2 {
        return (false, None);
    }
    for anchor in 0..n {
        let mut derivations: HashMap<(usize, usize), Derivation> = HashMap::new();
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        for sources in incoming[anchor].values().rev() {
            for &(t1, l1) in sources {
                for &(t2, l2) in sources {
                    if l1 == l2 {
                        continue;
                    }
                    let pair = (t1, t2);
                    derivations.entry(pair).or_insert_with(|| {
                        queue.push_back(pair);
                        Derivation { letters: (l1, l2), parent: None }
                    });
                }
            }
        }
        while let Some((q1, q2)) = queue.pop_front() {
            let keys: Vec<u32> = incoming[q1].keys().rev().copied().collect();
            for d in keys {
                let Some(src2) = incoming[q2].get(&d) else { continue };
                let src2 = src2.clone();
                for &(t1, l1) in &incoming[q1][&d] {
                    for &(t2, l2) in &src2 {
                        let pair = (t1, t2);
                        derivations.entry(pair).or_insert_with(|| {
                            queue.push_back(pair);
                            Derivation { letters: (l1, l2), parent: Some((q1, q2)) }
                        });
                    }
                }
            }
        }
        if derivations.contains_key(&(anchor, anchor)) {
            // walk the derivation forward to the anchor, collecting letters
            let mut input_u = Vec::new();
            let mut input_v = Vec::new();
            let mut cur = (anchor, anchor);
            loop {
                let der = derivations[&cur];
                input_u.push(der.letters.0);
                input_v.push(der.letters.1);
                match der.parent {
                    Some(p) => cur = p,
                    None => break,
                }
            }
            let (output, end) = t.run_edges(anchor, &input_u);
            debug_assert_eq!(end, anchor);
            let witness = TwoWalkWitness { state: anchor, input_u, input_v, output };
            debug_assert!(witness.replay(t));
            return (true, Some(witness));
        }
    }
    (false, None)
}

/// Strongly connected components of the underlying digraph (labels
/// ignored), iterative Tarjan, components in reverse topological order.
pub fn scc(t: &Transducer) -> Vec<Vec<usize>> {
    let n = t.state_count();
    let adj: Vec<Vec<usize>> = t
        .edges
        .iter()
        .map(|row| row.iter().map(|&(_, target)| target).collect())
        .collect();
    let mut index = vec![usize::MAX; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut sccs: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0usize;
    // explicit DFS stack: (node, next child index)
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut dfs: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        lowlink[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut child)) = dfs.last_mut() {
            if *child < adj[v].len() {
                let w = adj[v][*child];
                *child += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    lowlink[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    dfs.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                dfs.pop();
                if let Some(&(parent, _)) = dfs.last() {
                    lowlink[parent] = lowlink[parent].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    sccs.push(comp);
                }
            }
        }
    }
    sccs
}

pub fn is_strongly_connected(t: &Transducer) -> bool {
    scc(t).len() == 1
}

/// Reachable product of a transducer with the cyclic automaton of a block
/// set: which original states are visited when inputs are restricted to
/// infinite concatenations of the given blocks.
#[derive(Debug, Clone)]
pub struct BlockRestriction {
    /// Original states visited under restricted inputs.
    pub visited: BTreeSet<usize>,
    /// Product states: original state at a block boundary (None) or
    /// mid-block position (block index, letters consumed).
    pub states: Vec<(usize, Option<(usize, usize)>)>,
    /// edges[product state] = (letter, digit, target product state)
    pub edges: Vec<Vec<(usize, u32, usize)>>,
}

pub fn restrict(t: &Transducer, blocks: &[Vec<usize>]) -> BlockRestriction {
    assert!(!blocks.is_empty() && blocks.iter().all(|b| !b.is_empty()));
    let mut visited: BTreeSet<usize> = BTreeSet::new();
    let mut states: Vec<(usize, Option<(usize, usize)>)> = Vec::new();
    let mut ids: HashMap<(usize, Option<(usize, usize)>), usize> = HashMap::new();
    let mut edges: Vec<Vec<(usize, u32, usize)>> = Vec::new();
    let mut intern = |key: (usize, Option<(usize, usize)>),
                      states: &mut Vec<(usize, Option<(usize, usize)>)>,
                      edges: &mut Vec<Vec<(usize, u32, usize)>>|
     -> usize {
        *ids.entry(key).or_insert_with(|| {
            states.push(key);
            edges.push(Vec::new());
            states.len() - 1
        })
    };
    let start = intern((t.initial, None), &mut states, &mut edges);
    visited.insert(t.initial);
    let mut queue: VecDeque<usize> = VecDeque::from([start]);
    let mut seen_products: HashSet<usize> = HashSet::from([start]);
    while let Some(pid) = queue.pop_front() {
        let (state, pos) = states[pid];
        let continuations: Vec<(usize, usize)> = match pos {
            // at a boundary every block may start
            None => (0..blocks.len()).map(|b| (b, 0)).collect(),
            Some((b, consumed)) => vec![(b, consumed)],
        };
        for (b, consumed) in continuations {
            let letter = blocks[b][consumed];
            let (digit, target) = t.edges[state][letter];
            visited.insert(target);
            let next_key = if consumed + 1 == blocks[b].len() {
                (target, None)
            } else {
                (target, Some((b, consumed + 1)))
            };
            let next = intern(next_key, &mut states, &mut edges);
            edges[pid].push((letter, digit, next));
            if seen_products.insert(next) {
                queue.push_back(next);
            }
        }
    }
    BlockRestriction { visited, states, edges }
}

/// |visited states| / |states|, exact.
pub fn complexity_ratio(t: &Transducer, blocks: &[Vec<usize>]) -> Rat {
    let r = restrict(t, blocks);
    Ratio::new(
        rat_int(r.visited.len() as i64).to_integer(),
        rat_int(t.state_count() as i64).to_integer(),
    )
}

/// Grouping of shift indices by the shortest prefix w for which the
/// quasi-greedy expansion of r in the n-shifted base matches w · tail^ω
/// across the whole horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixTable {
    pub groups: BTreeMap<Vec<Letter>, Vec<u64>>,
    pub undetected: Vec<u64>,
    pub horizon: usize,
}

pub fn prefix_table(
    alphabet: &BaseAlphabet,
    r: &FieldElement,
    base: &WordSpec,
    n_max: u64,
    tail: &[Letter],
    horizon: usize,
) -> Result<PrefixTable, TransducerError> {
    assert!(!tail.is_empty(), "tail must be nonempty");
    assert!(horizon >= tail.len() * 4, "horizon too small for the tail");
    let mut groups: BTreeMap<Vec<Letter>, Vec<u64>> = BTreeMap::new();
    let mut undetected = Vec::new();
    for n in 0..=n_max {
        let shifted = base.shift(n);
        let (digits, _) = run(alphabet, r, &shifted, horizon, Mode::QuasiGreedy)?;
        match detect_prefix(&digits, tail, horizon) {
            Some(len) => groups.entry(digits[..len].to_vec()).or_default().push(n),
            None => undetected.push(n),
        }
    }
    Ok(PrefixTable { groups, undetected, horizon })
}

/// Shortest prefix length L such that digits[L..horizon] equals the
/// aligned periodic tail; requires the periodic part to cover at least
/// two tail lengths.
fn detect_prefix(digits: &[Letter], tail: &[Letter], horizon: usize) -> Option<usize> {
    let max_len = horizon.checked_sub(2 * tail.len())?;
    (0..=max_len).find(|&l| {
        (l..horizon).all(|j| digits[j] == tail[(j - l) % tail.len()])
    })
}

/// Admissibility of an ultimately periodic digit word with respect to an
/// ultimately periodic base: strict lexicographic dominance of every
/// shifted quasi-greedy expansion of 1 over the matching shift of the
/// candidate, checked over one full period of the pair.
pub fn admissible_up(
    candidate: &UpWord,
    base: &UpWord,
    alphabet: &BaseAlphabet,
) -> Result<bool, TransducerError> {
    let t = base.preperiod().len() as u64;
    let p = base.period().len();
    let pa = candidate.period().len();
    let bound = t
        + num_integer::lcm(p, pa) as u64
        + (candidate.preperiod().len().max(p)) as u64;
    let one = alphabet.field().one();
    for n in 0..=bound {
        let d_star = run_up(alphabet, &one, &base.shift(n), Mode::QuasiGreedy, DEFAULT_STATE_CAP)?;
        let shifted = candidate.shift(n);
        if shifted.lex_cmp(&d_star) != std::cmp::Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Annotated-morphism transduction: for a base that is the coding of a
/// k-uniform fixed point, produces a uniform morphic spec whose stream
/// is the digit stream of the expansion.
///
/// The input morphism is first raised to a power t at which the
/// state-transformation maps of coded images stabilize level-wise
/// (f∘μ^t and f∘μ^2t act identically), so that annotating each letter
/// with the machine state at the start of its image block closes under
/// the morphism. The result is then converted to coding form over
/// (annotated letter, block position) pairs.
pub fn transduce_uniform_morphic(
    alphabet: &BaseAlphabet,
    r: &FieldElement,
    base: &MorphicSpec,
    mode: Mode,
    state_cap: usize,
) -> Result<MorphicSpec, AnalysisError> {
    if base.offset != 0 {
        return Err(AnalysisError::NonUniformInput);
    }
    let mach = crate::transducer::build(alphabet, r, mode, state_cap)?;
    let nq = mach.state_count();
    let na = base.images.len();
    for &c in &base.coding {
        if c as usize >= alphabet.len() {
            return Err(AnalysisError::Transducer(TransducerError::LetterIndexOutOfRange(c as usize)));
        }
    }
    // state maps of coded images, per level: level[e][a][q] = state after
    // reading the coding of μ^e(a) from q; level 0 reads the letter itself
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..na)
        .map(|a| (0..nq).map(|q| mach.edges[q][base.coding[a] as usize].1).collect())
        .collect()];
    let (rho, pi) = loop {
        let prev = levels.last().unwrap();
        let next: Vec<Vec<usize>> = (0..na)
            .map(|a| {
                let mut f: Vec<usize> = (0..nq).collect();
                for &b in &base.images[a] {
                    let g = &prev[b as usize];
                    for q in f.iter_mut() {
                        *q = g[*q];
                    }
                }
                f
            })
            .collect();
        if let Some(pos) = levels.iter().position(|l| *l == next) {
            break (pos, levels.len() - pos);
        }
        if levels.len() > 64 {
            return Err(AnalysisError::TransductionTooLarge);
        }
        levels.push(next);
    };
    // smallest positive multiple of the period at or above the preperiod
    let t_pow = {
        let m = rho.max(1);
        pi * m.div_ceil(pi)
    };
    let level_index = |e: usize| -> usize {
        if e < levels.len() {
            e
        } else {
            rho + (e - rho) % pi
        }
    };
    let m_t = levels[level_index(t_pow)].clone();
    // block length of μ^t
    let mut block_len = 1usize;
    for _ in 0..t_pow {
        block_len = block_len
            .checked_mul(base.k)
            .filter(|&x| x <= 1 << 12)
            .ok_or(AnalysisError::TransductionTooLarge)?;
    }
    // μ^t images
    let nu: Vec<Vec<Letter>> = (0..na)
        .map(|a| {
            let mut w = vec![a as Letter];
            for _ in 0..t_pow {
                w = w
                    .iter()
                    .flat_map(|&b| base.images[b as usize].iter().copied())
                    .collect();
            }
            w
        })
        .collect();
    // annotated pairs (letter, state at the start of its μ^t image block)
    let mut pair_ids: HashMap<(Letter, usize), usize> = HashMap::new();
    let mut pairs: Vec<(Letter, usize)> = Vec::new();
    let mut intern = |key: (Letter, usize), pairs: &mut Vec<(Letter, usize)>| -> usize {
        *pair_ids.entry(key).or_insert_with(|| {
            pairs.push(key);
            pairs.len() - 1
        })
    };
    let seed_pair = intern((base.seed, mach.initial), &mut pairs);
    // per pair: the digit block and the annotated image blocks
    let mut pair_blocks: Vec<(Vec<Letter>, Vec<usize>)> = Vec::new();
    let mut head = 0usize;
    while head < pairs.len() {
        let (a, p) = pairs[head];
        let word = &nu[a as usize];
        let mut digits = Vec::with_capacity(block_len);
        let mut image_pairs = Vec::with_capacity(block_len);
        let mut q = p; // exact machine state inside the block
        let mut ann = p; // annotation: state at the start of the child block
        for &b in word {
            image_pairs.push(intern((b, ann), &mut pairs));
            let (d, next) = mach.edges[q][base.coding[b as usize] as usize];
            digits.push(d);
            q = next;
            ann = m_t[b as usize][ann];
        }
        pair_blocks.push((digits, image_pairs));
        if pairs.len() * block_len > 1 << 22 {
            return Err(AnalysisError::TransductionTooLarge);
        }
        head += 1;
    }
    // final alphabet: (pair, block position), with the digit as coding
    let id = |pair: usize, j: usize| (pair * block_len + j) as u32;
    let mut images: Vec<Vec<u32>> = Vec::with_capacity(pairs.len() * block_len);
    let mut coding: Vec<u32> = Vec::with_capacity(pairs.len() * block_len);
    for (digits, image_pairs) in &pair_blocks {
        for j in 0..block_len {
            images.push((0..block_len).map(|l| id(image_pairs[j], l)).collect());
            coding.push(digits[j]);
        }
    }
    Ok(MorphicSpec::new(block_len, images, coding, id(seed_pair, 0))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::{NumberField, RootSelector};
    use crate::poly::rat;
    use crate::transducer::{build, run_word};
    use crate::words::thue_morse;
    

    fn sqrt2_alphabet(pairs: &[(i64, i64)]) -> BaseAlphabet {
        let f = NumberField::from_int_minpoly(&[-2, 0, 1], RootSelector::LargestReal).unwrap();
        let letters = pairs
            .iter()
            .map(|&(a, b)| f.element(vec![rat_int(a), rat_int(b)]))
            .collect();
        BaseAlphabet::new(f, letters).unwrap()
    }

    fn smallest_pisot_alphabet() -> BaseAlphabet {
        let f = NumberField::from_int_minpoly(&[-1, -1, 0, 1], RootSelector::LargestReal).unwrap();
        let beta = f.generator();
        BaseAlphabet::new(f, vec![beta.clone(), beta.pow(3)]).unwrap()
    }

    fn int_alphabet(values: &[i64]) -> BaseAlphabet {
        let f = NumberField::from_int_minpoly(&[-1, 1], RootSelector::LargestReal).unwrap();
        let letters = values.iter().map(|&v| f.from_rational(rat_int(v))).collect();
        BaseAlphabet::new(f, letters).unwrap()
    }

    #[test]
    fn two_walk_on_smallest_pisot_pair() {
        let a = smallest_pisot_alphabet();
        let t = build(&a, &a.field().one(), Mode::QuasiGreedy, 1000).unwrap();
        assert_eq!(t.state_count(), 5);
        let (found, witness) = two_walk(&t);
        assert!(found);
        let w = witness.unwrap();
        assert!(w.replay(&t));
        // output is a power of a rotation of 2 0 0
        assert_eq!(w.output.len() % 3, 0);
        let k = w.output.len() / 3;
        let rotations = [[2u32, 0, 0], [0, 0, 2], [0, 2, 0]];
        assert!(rotations.iter().any(|rot| {
            w.output == rot.iter().copied().cycle().take(3 * k).collect::<Vec<_>>()
        }));
    }

    #[test]
    fn no_two_walk_for_silver_pair() {
        let a = sqrt2_alphabet(&[(1, 1), (3, 2)]);
        let t = build(&a, &a.field().one(), Mode::QuasiGreedy, 1000).unwrap();
        assert_eq!(t.state_count(), 3);
        let (found, witness) = two_walk(&t);
        assert!(!found);
        assert!(witness.is_none());
    }

    #[test]
    fn unary_alphabet_never_has_two_walks() {
        let a = int_alphabet(&[3]);
        let t = build(&a, &a.field().one(), Mode::QuasiGreedy, 100).unwrap();
        assert!(!two_walk(&t).0);
    }

    #[test]
    fn scc_single_state_loops() {
        let a = int_alphabet(&[2, 3]);
        let t = build(&a, &a.field().one(), Mode::QuasiGreedy, 100).unwrap();
        assert_eq!(t.state_count(), 1);
        assert_eq!(scc(&t).len(), 1);
        assert!(is_strongly_connected(&t));
    }

    #[test]
    fn connectivity_verdicts_quadratic() {
        // 1+√2 with 2+2√2: connected
        let a = sqrt2_alphabet(&[(1, 1), (2, 2)]);
        let t = build(&a, &a.field().one(), Mode::QuasiGreedy, 10_000).unwrap();
        assert!(is_strongly_connected(&t));
        // 4+3√2 with 5+4√2: not connected
        let a = sqrt2_alphabet(&[(4, 3), (5, 4)]);
        let t = build(&a, &a.field().one(), Mode::QuasiGreedy, 10_000).unwrap();
        assert!(!is_strongly_connected(&t));
        // 3+2√2 with 12+8√2: not connected
        let a = sqrt2_alphabet(&[(3, 2), (12, 8)]);
        let t = build(&a, &a.field().one(), Mode::QuasiGreedy, 10_000).unwrap();
        assert!(!is_strongly_connected(&t));
    }

    #[test]
    fn restrict_rational_machine() {
        let a = int_alphabet(&[2, 3]);
        let f = a.field().clone();
        let t = build(&a, &f.from_rational(rat(1, 5)), Mode::Greedy, 100).unwrap();
        assert_eq!(t.state_count(), 4);
        // block 23 cycles between 1/5 and 2/5
        let r = restrict(&t, &[vec![0, 1]]);
        assert_eq!(r.visited.len(), 2);
        assert_eq!(complexity_ratio(&t, &[vec![0, 1]]), rat(1, 2));
        // single-letter blocks reach everything
        let r = restrict(&t, &[vec![0], vec![1]]);
        assert_eq!(r.visited.len(), 4);
        assert_eq!(complexity_ratio(&t, &[vec![0], vec![1]]), rat_int(1));
    }

    #[test]
    fn restrict_visits_witness_cycles() {
        let a = smallest_pisot_alphabet();
        let t = build(&a, &a.field().one(), Mode::QuasiGreedy, 1000).unwrap();
        let u = vec![1usize, 0, 1];
        let v = vec![1usize, 1, 0];
        let r = restrict(&t, &[u.clone(), v.clone()]);
        assert!(r.visited.contains(&t.initial));
        // replaying each block from the initial state outputs 2 0 0
        let (out_u, end_u) = t.run_edges(t.initial, &u);
        let (out_v, end_v) = t.run_edges(t.initial, &v);
        assert_eq!(end_u, t.initial);
        assert_eq!(end_v, t.initial);
        assert_eq!(out_u, vec![2, 0, 0]);
        assert_eq!(out_v, vec![2, 0, 0]);
    }

    #[test]
    fn prefix_table_smallest_pisot_blocks() {
        let a = smallest_pisot_alphabet();
        let tm = WordSpec::Morphic(thue_morse());
        let base = tm.flatten_blocks(&[vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        let table = prefix_table(&a, &a.field().one(), &base, 6, &[2, 0, 0], 120).unwrap();
        assert!(table.undetected.is_empty());
        assert_eq!(table.groups[&vec![]], vec![0, 3, 6]);
        assert_eq!(table.groups[&vec![1, 0, 1, 1, 0]], vec![1]);
        assert_eq!(table.groups[&vec![2, 0, 1, 0]], vec![2]);
        assert_eq!(table.groups[&vec![2, 0, 0, 2, 0, 0, 1, 0, 1, 1, 0]], vec![4]);
        assert_eq!(table.groups[&vec![1, 0, 1, 0]], vec![5]);
    }

    #[test]
    fn admissibility_examples() {
        let a = int_alphabet(&[2, 3]);
        let base = UpWord::periodic(vec![0, 1]);
        let ok = UpWord::periodic(vec![0, 1]);
        assert!(admissible_up(&ok, &base, &a).unwrap());
        let eq = UpWord::periodic(vec![1, 2]);
        assert!(!admissible_up(&eq, &base, &a).unwrap());
        let big = UpWord::new(vec![2], vec![0]);
        assert!(!admissible_up(&big, &base, &a).unwrap());
    }

    #[test]
    fn transduced_morphic_matches_run() {
        let f = NumberField::from_int_minpoly(&[-1, -1, 1], RootSelector::LargestReal).unwrap();
        let phi = f.generator();
        let a = BaseAlphabet::new(f.clone(), vec![phi.clone(), phi.pow(3)]).unwrap();
        let tm = thue_morse();
        let spec = transduce_uniform_morphic(&a, &f.one(), &tm, Mode::QuasiGreedy, 1000).unwrap();
        let stream = WordSpec::Morphic(spec).stream(8);
        assert_eq!(stream, vec![1, 2, 2, 0, 4, 0, 0, 2]);
        let (digits, _) = run(&a, &f.one(), &WordSpec::Morphic(tm), 8, Mode::QuasiGreedy).unwrap();
        assert_eq!(stream, digits);
    }

    #[test]
    fn transduced_zero_point_is_constant() {
        let a = int_alphabet(&[2, 3]);
        let f = a.field().clone();
        let spec = transduce_uniform_morphic(&a, &f.zero(), &thue_morse(), Mode::Greedy, 100).unwrap();
        assert_eq!(WordSpec::Morphic(spec).stream(10), vec![0; 10]);
    }

    #[test]
    fn run_word_produces_finite_digits() {
        let a = smallest_pisot_alphabet();
        let one = a.field().one();
        // shifted block: β β³ then β³β³β: outputs 1 0 then 1 1 0
        let word = vec![0u32, 1, 1, 1, 0];
        let (digits, _) = run_word(&a, &one, &word, Mode::QuasiGreedy).unwrap();
        assert_eq!(digits, vec![1, 0, 1, 1, 0]);
    }
}
