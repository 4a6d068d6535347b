//! Scoring system output against gold, and reproducible corpus splits.
//!
//! Tokens are matched by exact character span over the whitespace-free
//! sentence text. This is stricter than the CoNLL 2018 scorer, which also
//! aligns multiword tokens by LCS; the treebanks handled here have none.

mod metrics;
mod split;

pub use metrics::{align_tokens, f1_percent, score, Scores};
pub use split::{split, Split, SplitSpec};
