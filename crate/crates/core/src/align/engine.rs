use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::conllu::{blocking_issues, label_for, Corpus, Sentence};
use crate::error::{Error, Result};
use crate::tagset::{UposTag, XposSeq};

use super::base::default_upos;
use super::rules::{apply_special_rules, RuleConfig};
use super::table::MappingTable;

pub const RULE_DEFAULT: &str = "default";
pub const MISC_ALIGNED: &str = "UposAligned";
pub const MISC_PREVIOUS: &str = "UposPrev";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub upos: UposTag,
    pub rule_id: String,
}

/// UPOS for `sentence.tokens[index]`. The table wins over the context rules,
/// which win over the sequence default.
///
/// Returns `None` for tokens without an XPOS layer and for multiword or
/// empty-node rows.
pub fn resolve_upos(
    sentence: &Sentence,
    index: usize,
    table: &MappingTable,
    config: &RuleConfig,
) -> Option<Resolution> {
    let token = sentence.tokens.get(index)?;
    if !token.is_plain() || !token.has_xpos() {
        return None;
    }
    let seq = token.xpos_seq();
    if let Some(entry) = table.get(&seq) {
        return Some(Resolution {
            upos: entry.upos,
            rule_id: format!("table:{seq}"),
        });
    }
    if let Some((upos, rule_id)) = apply_special_rules(sentence, index, config) {
        return Some(Resolution { upos, rule_id });
    }
    Some(Resolution {
        upos: default_upos(&token.xpos),
        rule_id: RULE_DEFAULT.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChangeRecord {
    pub sent_id: String,
    pub token_id: u32,
    pub xpos_seq: XposSeq,
    pub old_upos: Option<UposTag>,
    pub new_upos: UposTag,
    pub rule_id: String,
    pub table_version: u64,
}

pub const CHANGE_LOG_HEADER: &str =
    "sent_id\ttoken_id\txpos_seq\told_upos\tnew_upos\trule_id\ttable_version";

pub fn change_log_tsv(changes: &[ChangeRecord]) -> String {
    let mut out = format!("{CHANGE_LOG_HEADER}\n");
    for c in changes {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            c.sent_id,
            c.token_id,
            c.xpos_seq,
            c.old_upos.map_or("_", UposTag::as_str),
            c.new_upos,
            c.rule_id,
            c.table_version
        );
    }
    out
}

fn align_sentence(
    label: &str,
    sentence: &Sentence,
    table: &MappingTable,
    config: &RuleConfig,
) -> (Sentence, Vec<ChangeRecord>) {
    let mut out = sentence.clone();
    let mut changes = Vec::new();
    for index in 0..sentence.tokens.len() {
        // Rules read the input sentence, so earlier edits never feed later
        // decisions.
        let Some(r) = resolve_upos(sentence, index, table, config) else {
            continue;
        };
        let token = &mut out.tokens[index];
        if token.upos == Some(r.upos) {
            continue;
        }
        let old = token.upos;
        token.upos = Some(r.upos);
        token.misc.set(MISC_ALIGNED, "Yes");
        token
            .misc
            .set(MISC_PREVIOUS, old.map_or("_", UposTag::as_str));
        changes.push(ChangeRecord {
            sent_id: label.to_string(),
            token_id: token.id.as_single().expect("plain token"),
            xpos_seq: token.xpos_seq(),
            old_upos: old,
            new_upos: r.upos,
            rule_id: r.rule_id,
            table_version: table.version(),
        });
    }
    (out, changes)
}

/// Re-tags every plain token that has an XPOS layer.
///
/// Only UPOS and MISC change: a changed token gains `UposAligned=Yes` and
/// `UposPrev=<old>`. Sentences are processed on the rayon pool; the result
/// and the change log order do not depend on the number of threads.
pub fn align_corpus(
    corpus: &Corpus,
    table: &MappingTable,
    config: &RuleConfig,
) -> Result<(Corpus, Vec<ChangeRecord>)> {
    let issues = blocking_issues(corpus);
    if !issues.is_empty() {
        return Err(Error::InvalidCorpus(issues));
    }
    config.validate()?;
    let results: Vec<(Sentence, Vec<ChangeRecord>)> = corpus
        .sentences
        .par_iter()
        .enumerate()
        .map(|(i, s)| align_sentence(&label_for(s, i), s, table, config))
        .collect();
    let mut aligned = Corpus::new(corpus.source.clone());
    let mut changes = Vec::new();
    for (s, c) in results {
        aligned.sentences.push(s);
        changes.extend(c);
    }
    Ok((aligned, changes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::align::table::{seed_table, EntryStatus, MappingEntry};
    use crate::conllu::{parse_str, serialize};

    const TWO: &str = "# sent_id = a\n1\t학교에\t학교+에\tNOUN\tNNG+JKB\t_\t2\tobl\t_\t_\n2\t예쁘다\t예쁘+다\tX\tVA+EF\t_\t0\troot\t_\tSpaceAfter=No\n\n";

    #[test]
    fn precedence_table_over_rules() {
        let c = parse_str(TWO, "t").unwrap();
        let s = &c.sentences[0];
        let cfg = RuleConfig::default();
        let empty = MappingTable::new();
        let r = resolve_upos(s, 0, &empty, &cfg).unwrap();
        assert_eq!(
            (r.upos, r.rule_id.as_str()),
            (UposTag::ADP, "special:adv-jkb")
        );
        let r = resolve_upos(s, 1, &empty, &cfg).unwrap();
        assert_eq!((r.upos, r.rule_id.as_str()), (UposTag::ADJ, "default"));

        let mut table = MappingTable::new();
        table.upsert(
            MappingEntry {
                xpos_seq: "NNG+JKB".parse().unwrap(),
                upos: UposTag::ADV,
                status: EntryStatus::Reviewed,
                frequency: 0,
                note: String::new(),
            },
            "test",
        );
        let r = resolve_upos(s, 0, &table, &cfg).unwrap();
        assert_eq!(
            (r.upos, r.rule_id.as_str()),
            (UposTag::ADV, "table:NNG+JKB")
        );
    }

    #[test]
    fn changes_are_logged_and_marked() {
        let c = parse_str(TWO, "t").unwrap();
        let (out, changes) = align_corpus(&c, &seed_table(), &RuleConfig::default()).unwrap();
        assert_eq!(changes.len(), 2);
        assert_eq!(changes[0].old_upos, Some(UposTag::NOUN));
        assert_eq!(changes[0].new_upos, UposTag::ADP);
        assert_eq!(changes[0].table_version, 1);
        let text = serialize(&out);
        assert!(text.contains("\tADP\tNNG+JKB\t_\t2\tobl\t_\tUposAligned=Yes|UposPrev=NOUN\n"));
        assert!(text.contains("\tSpaceAfter=No|UposAligned=Yes|UposPrev=X\n"));
        assert_eq!(
            change_log_tsv(&changes).lines().nth(1).unwrap(),
            "a\t1\tNNG+JKB\tNOUN\tADP\ttable:NNG+JKB\t1"
        );
    }

    #[test]
    fn second_pass_is_a_fixpoint() {
        let c = parse_str(TWO, "t").unwrap();
        let (once, _) = align_corpus(&c, &seed_table(), &RuleConfig::default()).unwrap();
        let (twice, changes) = align_corpus(&once, &seed_table(), &RuleConfig::default()).unwrap();
        assert!(changes.is_empty());
        assert_eq!(once, twice);
    }

    #[test]
    fn invalid_corpus_is_refused() {
        let c = parse_str("1\t학생이\t학생+이\tNOUN\tNNG\t_\t0\troot\t_\t_\n", "t").unwrap();
        assert!(matches!(
            align_corpus(&c, &seed_table(), &RuleConfig::default()),
            Err(Error::InvalidCorpus(_))
        ));
    }

    #[test]
    fn tokens_without_xpos_are_left_alone() {
        let c = parse_str("1\t책\t책\tX\t_\t_\t0\troot\t_\t_\n", "t").unwrap();
        let (out, changes) = align_corpus(&c, &seed_table(), &RuleConfig::default()).unwrap();
        assert!(changes.is_empty());
        assert_eq!(out, c);
    }
}
