use std::fmt;

use serde::Serialize;

use super::model::{label_for, Corpus, Sentence, TokenId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IssueCode {
    /// LEMMA and XPOS have different segment counts.
    LenMismatch,
    /// An empty lemma segment, e.g. from `학생++이`.
    EmptyMorpheme,
    /// An XPOS symbol outside the Sejong inventory.
    UnknownTag,
    SelfHead,
    HeadRange,
    /// Some plain tokens have a HEAD and some do not.
    MissingHead,
    MultiRoot,
    NoRoot,
    /// Plain token ids are not 1..n.
    IdSequence,
}

impl IssueCode {
    pub fn as_str(self) -> &'static str {
        match self {
            IssueCode::LenMismatch => "LEN_MISMATCH",
            IssueCode::EmptyMorpheme => "EMPTY_MORPHEME",
            IssueCode::UnknownTag => "UNKNOWN_TAG",
            IssueCode::SelfHead => "SELF_HEAD",
            IssueCode::HeadRange => "HEAD_RANGE",
            IssueCode::MissingHead => "MISSING_HEAD",
            IssueCode::MultiRoot => "MULTI_ROOT",
            IssueCode::NoRoot => "NO_ROOT",
            IssueCode::IdSequence => "ID_SEQUENCE",
        }
    }

    /// Unknown tags are expected noise in learner data and do not block
    /// processing; every other issue does.
    pub fn is_blocking(self) -> bool {
        !matches!(self, IssueCode::UnknownTag)
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationIssue {
    pub sent_id: String,
    pub token_id: Option<String>,
    pub code: IssueCode,
    pub message: String,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", self.code, self.sent_id)?;
        if let Some(t) = &self.token_id {
            write!(f, "\t{t}")?;
        }
        write!(f, "\t{}", self.message)
    }
}

/// Every invariant violation in the corpus; empty iff the corpus is clean.
pub fn validate(corpus: &Corpus) -> Vec<ValidationIssue> {
    let mut issues = Vec::new();
    for (i, sentence) in corpus.sentences.iter().enumerate() {
        validate_sentence(&label_for(sentence, i), sentence, &mut issues);
    }
    issues
}

/// Only the issues that should stop further processing.
pub fn blocking_issues(corpus: &Corpus) -> Vec<ValidationIssue> {
    validate(corpus)
        .into_iter()
        .filter(|i| i.code.is_blocking())
        .collect()
}

fn validate_sentence(label: &str, sentence: &Sentence, issues: &mut Vec<ValidationIssue>) {
    let mut push = |token_id: Option<TokenId>, code: IssueCode, message: String| {
        issues.push(ValidationIssue {
            sent_id: label.to_string(),
            token_id: token_id.map(|t| t.to_string()),
            code,
            message,
        })
    };

    let plain: Vec<_> = sentence.plain_tokens().collect();
    let n = plain.len() as u32;

    for (expected, t) in (1..).zip(&plain) {
        if t.id != TokenId::Single(expected) {
            push(
                Some(t.id),
                IssueCode::IdSequence,
                format!("expected id {expected}"),
            );
            break;
        }
    }

    for t in &sentence.tokens {
        if !t.lemma.is_empty() && !t.xpos.is_empty() && t.lemma.len() != t.xpos.len() {
            push(
                Some(t.id),
                IssueCode::LenMismatch,
                format!(
                    "{} lemma segment(s) but {} XPOS tag(s)",
                    t.lemma.len(),
                    t.xpos.len()
                ),
            );
        }
        if t.lemma.len() > 1 && t.lemma.iter().any(String::is_empty) {
            push(
                Some(t.id),
                IssueCode::EmptyMorpheme,
                "empty lemma segment".into(),
            );
        }
        for tag in t.xpos.iter().filter(|tag| tag.is_unknown()) {
            push(
                Some(t.id),
                IssueCode::UnknownTag,
                format!(
                    "XPOS symbol {tag:?} is not a Sejong tag",
                    tag = tag.as_str()
                ),
            );
        }
    }

    let with_head = plain.iter().filter(|t| t.head.is_some()).count();
    if with_head == 0 {
        return;
    }
    if with_head < plain.len() {
        push(
            None,
            IssueCode::MissingHead,
            format!(
                "{} of {} tokens lack a HEAD",
                plain.len() - with_head,
                plain.len()
            ),
        );
    }
    let mut roots = 0;
    for t in &plain {
        let Some(head) = t.head else { continue };
        if head == 0 {
            roots += 1;
        } else if TokenId::Single(head) == t.id {
            push(
                Some(t.id),
                IssueCode::SelfHead,
                "token is its own head".into(),
            );
        } else if head > n {
            push(
                Some(t.id),
                IssueCode::HeadRange,
                format!("head {head} beyond sentence length {n}"),
            );
        }
    }
    match roots {
        0 => push(
            None,
            IssueCode::NoRoot,
            "no token attaches to the root".into(),
        ),
        1 => {}
        k => push(
            None,
            IssueCode::MultiRoot,
            format!("{k} tokens attach to the root"),
        ),
    }
}
