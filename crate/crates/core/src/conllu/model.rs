use std::fmt;

use crate::tagset::{SejongTag, UposTag, XposSeq};

/// The ID column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TokenId {
    /// A plain word row, `n`.
    Single(u32),
    /// A multiword token range, `a-b`.
    Range(u32, u32),
    /// An empty node, `a.b`.
    Empty(u32, u32),
}

impl TokenId {
    pub fn as_single(self) -> Option<u32> {
        match self {
            TokenId::Single(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for TokenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenId::Single(n) => write!(f, "{n}"),
            TokenId::Range(a, b) => write!(f, "{a}-{b}"),
            TokenId::Empty(a, b) => write!(f, "{a}.{b}"),
        }
    }
}

/// One segment of a lemma with its XPOS tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Morpheme<'a> {
    pub form: &'a str,
    pub tag: &'a SejongTag,
}

/// The MISC column as an ordered list of `key=value` (or bare `key`) items.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Misc(Vec<(String, Option<String>)>);

impl Misc {
    pub fn new() -> Self {
        Misc::default()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0
            .iter()
            .find(|(k, _)| k == key)
            .and_then(|(_, v)| v.as_deref())
    }

    pub fn contains_key(&self, key: &str) -> bool {
        self.0.iter().any(|(k, _)| k == key)
    }

    /// Sets `key=value`, replacing an existing item in place or appending.
    pub fn set(&mut self, key: &str, value: &str) {
        match self.0.iter_mut().find(|(k, _)| k == key) {
            Some(item) => item.1 = Some(value.to_string()),
            None => self.0.push((key.to_string(), Some(value.to_string()))),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Option<&str>)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_deref()))
    }

    pub(crate) fn parse(column: &str) -> Misc {
        if column == "_" {
            return Misc::default();
        }
        Misc(
            column
                .split('|')
                .map(|item| match item.split_once('=') {
                    Some((k, v)) => (k.to_string(), Some(v.to_string())),
                    None => (item.to_string(), None),
                })
                .collect(),
        )
    }
}

impl fmt::Display for Misc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("_");
        }
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            f.write_str(k)?;
            if let Some(v) = v {
                write!(f, "={v}")?;
            }
        }
        Ok(())
    }
}

/// One CoNLL-U row. In this treebank a plain row is one eojeol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub id: TokenId,
    pub form: String,
    /// Lemma segments, one per morpheme. Empty when the column is `_`.
    pub lemma: Vec<String>,
    pub upos: Option<UposTag>,
    /// XPOS tags parallel to `lemma`. Empty when the column is `_`.
    pub xpos: Vec<SejongTag>,
    pub feats: Option<String>,
    pub head: Option<u32>,
    pub deprel: Option<String>,
    pub deps: Option<String>,
    pub misc: Misc,
}

impl Token {
    /// A plain row with every optional column empty.
    pub fn new(id: u32, form: impl Into<String>) -> Self {
        Token {
            id: TokenId::Single(id),
            form: form.into(),
            lemma: Vec::new(),
            upos: None,
            xpos: Vec::new(),
            feats: None,
            head: None,
            deprel: None,
            deps: None,
            misc: Misc::default(),
        }
    }

    pub fn is_plain(&self) -> bool {
        matches!(self.id, TokenId::Single(_))
    }

    pub fn has_xpos(&self) -> bool {
        !self.xpos.is_empty()
    }

    pub fn xpos_seq(&self) -> XposSeq {
        XposSeq(self.xpos.clone())
    }

    /// Morphemes in order; stops at the shorter of the two layers.
    pub fn morphemes(&self) -> impl Iterator<Item = Morpheme<'_>> {
        self.lemma
            .iter()
            .zip(&self.xpos)
            .map(|(form, tag)| Morpheme { form, tag })
    }

    /// Universal part of DEPREL, before any `:` subtype.
    pub fn universal_deprel(&self) -> Option<&str> {
        self.deprel
            .as_deref()
            .map(|d| d.split_once(':').map_or(d, |(u, _)| u))
    }
}

/// A sentence with its comment lines kept verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sentence {
    /// Comment lines including the leading `#`.
    pub comments: Vec<String>,
    pub tokens: Vec<Token>,
}

impl Sentence {
    pub fn new(sent_id: &str, text: &str) -> Self {
        Sentence {
            comments: vec![format!("# sent_id = {sent_id}"), format!("# text = {text}")],
            tokens: Vec::new(),
        }
    }

    fn comment_value(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| {
            let body = c.strip_prefix('#')?.trim_start();
            let rest = body.strip_prefix(key)?.trim_start();
            Some(rest.strip_prefix('=')?.trim())
        })
    }

    pub fn sent_id(&self) -> Option<&str> {
        self.comment_value("sent_id")
    }

    pub fn text(&self) -> Option<&str> {
        self.comment_value("text")
    }

    pub fn plain_tokens(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.is_plain())
    }

    /// Position in `tokens` of the plain token with the given id.
    pub fn position_of(&self, id: u32) -> Option<usize> {
        self.tokens.iter().position(|t| t.id == TokenId::Single(id))
    }

    /// The closest plain token before `index`, if any.
    pub fn previous_plain(&self, index: usize) -> Option<&Token> {
        self.tokens[..index].iter().rev().find(|t| t.is_plain())
    }

    /// The closest plain token after `index`, if any.
    pub fn next_plain(&self, index: usize) -> Option<&Token> {
        self.tokens[index + 1..].iter().find(|t| t.is_plain())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    pub sentences: Vec<Sentence>,
    /// Where the corpus came from, e.g. a file path. Not serialized.
    pub source: String,
}

impl Corpus {
    pub fn new(source: impl Into<String>) -> Self {
        Corpus {
            sentences: Vec::new(),
            source: source.into(),
        }
    }

    /// The sentence's `sent_id`, or its 1-based ordinal when it has none.
    pub fn sentence_label(&self, index: usize) -> String {
        label_for(&self.sentences[index], index)
    }

    pub fn plain_token_count(&self) -> usize {
        self.sentences
            .iter()
            .map(|s| s.plain_tokens().count())
            .sum()
    }
}

pub(crate) fn label_for(sentence: &Sentence, index: usize) -> String {
    sentence
        .sent_id()
        .map(str::to_string)
        .unwrap_or_else(|| format!("#{}", index + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn misc_set_replaces_in_place() {
        let mut m = Misc::parse("SpaceAfter=No|UposPrev=X");
        m.set("UposPrev", "NOUN");
        m.set("UposAligned", "Yes");
        assert_eq!(m.to_string(), "SpaceAfter=No|UposPrev=NOUN|UposAligned=Yes");
        assert_eq!(Misc::parse("_").to_string(), "_");
        assert_eq!(Misc::parse("Bare|K=a=b").to_string(), "Bare|K=a=b");
        assert_eq!(Misc::parse("K=a=b").get("K"), Some("a=b"));
    }

    #[test]
    fn comment_values() {
        let s = Sentence {
            comments: vec!["# sent_id = s1".into(), "#text=학생이 먹었다".into()],
            tokens: vec![],
        };
        assert_eq!(s.sent_id(), Some("s1"));
        assert_eq!(s.text(), Some("학생이 먹었다"));
    }

    #[test]
    fn universal_deprel_strips_subtype() {
        let mut t = Token::new(1, "x");
        t.deprel = Some("nsubj:pass".into());
        assert_eq!(t.universal_deprel(), Some("nsubj"));
    }
}
