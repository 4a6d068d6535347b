use std::fmt::Write as _;

use super::model::{Corpus, Sentence, Token};

/// Renders a corpus as canonical CoNLL-U: LF line endings and one blank line
/// after every sentence.
pub fn serialize(corpus: &Corpus) -> String {
    let mut out = String::new();
    for sentence in &corpus.sentences {
        write_sentence(&mut out, sentence);
    }
    out
}

pub fn write_sentence(out: &mut String, sentence: &Sentence) {
    for comment in &sentence.comments {
        out.push_str(comment);
        out.push('\n');
    }
    for token in &sentence.tokens {
        write_token(out, token);
        out.push('\n');
    }
    out.push('\n');
}

fn opt(col: Option<&str>) -> &str {
    col.unwrap_or("_")
}

/// Joins morphemes with `+`, escaping literal pluses. A lone morpheme of a
/// single-tag token is written bare when the reader would take it back
/// literally anyway (`+`, `++`).
fn render_lemma(lemma: &[String], xpos_len: usize) -> String {
    if lemma.is_empty() {
        return "_".into();
    }
    if let [only] = lemma {
        if xpos_len == 1
            && !only.contains('\\')
            && only.split('+').count() > 1
            && only.split('+').any(str::is_empty)
        {
            return only.clone();
        }
    }
    lemma
        .iter()
        .map(|s| s.replace('+', "\\+"))
        .collect::<Vec<_>>()
        .join("+")
}

pub(crate) fn render_xpos(token: &Token) -> String {
    if token.xpos.is_empty() {
        return "_".into();
    }
    token.xpos_seq().to_string()
}

fn write_token(out: &mut String, t: &Token) {
    let head = t.head.map(|h| h.to_string());
    // Writing to a String cannot fail.
    let _ = write!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        t.id,
        t.form,
        render_lemma(&t.lemma, t.xpos.len()),
        t.upos.map_or("_", |u| u.as_str()),
        render_xpos(t),
        opt(t.feats.as_deref()),
        opt(head.as_deref()),
        opt(t.deprel.as_deref()),
        opt(t.deps.as_deref()),
        t.misc,
    );
}
