//! Exact synthesis and analysis of the finite transducers that compute
//! greedy and quasi-greedy expansions of a fixed real number across every
//! Cantor real base drawn from a finite alphabet of Pisot numbers in a
//! common number field.
//!
//! The crate is organized around the pipeline it models:
//!
//! - [`numberfield`]: exact arithmetic in Q(δ) with order operations,
//!   conjugate enclosures, the conjugate max norm and Pisot verification;
//! - [`words`]: finitely described infinite words (ultimately periodic,
//!   uniform-morphic, automaton-indexed) used as bases and digit streams;
//! - [`morphisms`]: integer Cantor bases built from constant-product
//!   blocks, digit morphisms and the word-output machine they induce;
//! - [`transducer`]: greedy/quasi-greedy step maps, breadth-first
//!   synthesis of the reachable transducer, streaming evaluation and
//!   ultimately-periodic runs, DOT/JSON serialization;
//! - [`analysis`]: structural decision procedures (two-walk property,
//!   strong connectedness, restriction to block inputs, complexity
//!   ratios, prefix tables, admissibility, morphic transduction);
//! - [`parse`]: the text formats accepted by the CLI and fuzz targets.

pub mod analysis;
pub mod interval;
pub mod morphisms;
pub mod numberfield;
pub mod parse;
pub mod poly;
pub mod roots;
pub mod transducer;
pub mod words;

pub use numberfield::{ArithKind, FieldElement, FieldError, NumberField, PisotStatus, RootSelector};
pub use transducer::{BaseAlphabet, Mode, Transducer, TransducerError};
pub use words::{Letter, UpWord, WordSpec};
