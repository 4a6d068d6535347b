//! XPOS-to-UPOS alignment.
//!
//! Each eojeol gets its UPOS from the first source that applies: an exact
//! entry in the [`MappingTable`], then a context rule, then the
//! head-morpheme default. Every applied decision carries a rule id
//! (`table:<seq>`, `special:*`, or `default`).

mod base;
mod delta;
mod engine;
mod rules;
mod table;

pub use base::{base_upos, default_upos, head_morpheme};
pub use delta::{delta_report, DeltaReport, DeltaRow};
pub use engine::{
    align_corpus, change_log_tsv, resolve_upos, ChangeRecord, Resolution, CHANGE_LOG_HEADER,
    MISC_ALIGNED, MISC_PREVIOUS, RULE_DEFAULT,
};
pub use rules::{
    apply_special_rules, RuleConfig, LOW_CONFIDENCE, RULE_ADV, RULE_ADV_JKB, RULE_AUX,
    RULE_AUX_MAIN, RULE_AUX_ROOT, RULE_DOEDA, RULE_ETM,
};
pub use table::{
    seed_table, EntryStatus, HistoryEntry, MappingEntry, MappingTable, HEADER as TABLE_HEADER,
    SEED_ROWS,
};

use crate::tagset::{SejongTag, XposSeq};

/// Reasons a construction should be looked at by a reviewer no matter what
/// the rules propose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReviewFlag {
    /// Contains a copula (VCP/VCN); the ADJ default is a guess.
    Copula,
    /// Nominal with an adverbial postposition; ADP versus ADV is unsettled.
    AdverbialPostposition,
    /// Contains a symbol outside the Sejong inventory.
    UnknownTag,
}

pub fn review_flags(seq: &XposSeq) -> Vec<ReviewFlag> {
    let tags = seq.tags();
    let mut flags = Vec::new();
    if tags
        .iter()
        .any(|t| matches!(t, SejongTag::Vcp | SejongTag::Vcn))
    {
        flags.push(ReviewFlag::Copula);
    }
    if !tags.is_empty() && base::nominal_with_jkb(tags, head_morpheme(tags)) {
        flags.push(ReviewFlag::AdverbialPostposition);
    }
    if tags.iter().any(SejongTag::is_unknown) {
        flags.push(ReviewFlag::UnknownTag);
    }
    flags
}
