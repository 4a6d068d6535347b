//! In-memory CoNLL-U treebank model.
//!
//! All ten columns and every comment line survive a parse/serialize cycle.
//! LEMMA and XPOS are split on `+` into parallel morpheme lists; a literal
//! `+` inside a morpheme is written `\+`. Multiword ranges and empty nodes
//! are kept as rows but are not plain tokens.

mod model;
mod read;
mod validate;
mod write;

pub(crate) use model::label_for;
pub use model::{Corpus, Misc, Morpheme, Sentence, Token, TokenId};
pub use read::{parse_reader, parse_str};
pub use validate::{blocking_issues, validate, IssueCode, ValidationIssue};
pub use write::{serialize, write_sentence};

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use crate::error::Result;

pub fn read_file(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    let reader = BufReader::new(File::open(path)?);
    parse_reader(reader, &path.display().to_string())
}
