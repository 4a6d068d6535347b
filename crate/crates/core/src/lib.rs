//! Korean UD treebank tooling: a CoNLL-U model that keeps morpheme-level
//! LEMMA and XPOS, eojeol construction mining, XPOS-to-UPOS alignment with
//! a reviewable mapping table, and treebank scoring.

pub mod align;
pub mod conllu;
pub mod error;
pub mod eval;
pub mod miner;
pub mod review;
pub mod shuffle;
pub mod tagset;

pub use error::{Error, Result};
pub use tagset::{SejongTag, UposTag, XposSeq};
