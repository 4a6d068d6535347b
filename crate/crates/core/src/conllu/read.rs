use std::io::BufRead;

use crate::error::{Error, Result};
use crate::tagset::{SejongTag, UposTag};

use super::model::{Corpus, Misc, Sentence, Token, TokenId};

/// Parses CoNLL-U text. CRLF line endings are accepted.
pub fn parse_str(input: &str, source: &str) -> Result<Corpus> {
    let mut parser = Parser::new(source);
    for (i, line) in input.lines().enumerate() {
        parser.line(i + 1, line)?;
    }
    Ok(parser.finish())
}

/// Parses CoNLL-U from a reader.
pub fn parse_reader<R: BufRead>(reader: R, source: &str) -> Result<Corpus> {
    let mut parser = Parser::new(source);
    for (i, line) in reader.lines().enumerate() {
        parser.line(i + 1, &line?)?;
    }
    Ok(parser.finish())
}

struct Parser {
    corpus: Corpus,
    current: Sentence,
}

impl Parser {
    fn new(source: &str) -> Self {
        Parser {
            corpus: Corpus::new(source),
            current: Sentence::default(),
        }
    }

    fn line(&mut self, lineno: usize, line: &str) -> Result<()> {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() {
            self.flush();
        } else if line.starts_with('#') {
            if !self.current.tokens.is_empty() {
                return Err(Error::Parse {
                    line: lineno,
                    message: "comment line inside a sentence".into(),
                });
            }
            self.current.comments.push(line.to_string());
        } else {
            let token = parse_row(line).map_err(|message| Error::Parse {
                line: lineno,
                message,
            })?;
            self.current.tokens.push(token);
        }
        Ok(())
    }

    fn flush(&mut self) {
        if !self.current.tokens.is_empty() || !self.current.comments.is_empty() {
            self.corpus
                .sentences
                .push(std::mem::take(&mut self.current));
        }
    }

    fn finish(mut self) -> Corpus {
        self.flush();
        self.corpus
    }
}

fn empty_to_none(col: &str) -> Option<String> {
    (col != "_").then(|| col.to_string())
}

fn parse_row(line: &str) -> std::result::Result<Token, String> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 10 {
        return Err(format!("expected 10 columns, found {}", cols.len()));
    }
    let id = parse_id(cols[0])?;
    let xpos: Vec<SejongTag> = if cols[4] == "_" {
        Vec::new()
    } else {
        cols[4].split('+').map(SejongTag::parse).collect()
    };
    let lemma = split_lemma(cols[2], xpos.len());
    let upos = match cols[3] {
        "_" => None,
        s => Some(s.parse::<UposTag>().map_err(|e| e.to_string())?),
    };
    let head = match cols[6] {
        "_" => None,
        s => Some(
            s.parse::<u32>()
                .map_err(|_| format!("bad HEAD value {s:?}"))?,
        ),
    };
    Ok(Token {
        id,
        form: cols[1].to_string(),
        lemma,
        upos,
        xpos,
        feats: empty_to_none(cols[5]),
        head,
        deprel: empty_to_none(cols[7]),
        deps: empty_to_none(cols[8]),
        misc: Misc::parse(cols[9]),
    })
}

fn parse_id(col: &str) -> std::result::Result<TokenId, String> {
    let num = |s: &str| {
        s.parse::<u32>()
            .map_err(|_| format!("bad ID value {col:?}"))
    };
    if let Some((a, b)) = col.split_once('-') {
        Ok(TokenId::Range(num(a)?, num(b)?))
    } else if let Some((a, b)) = col.split_once('.') {
        Ok(TokenId::Empty(num(a)?, num(b)?))
    } else {
        let n = num(col)?;
        if n == 0 {
            return Err("token ID 0 is reserved for the root".into());
        }
        Ok(TokenId::Single(n))
    }
}

/// Splits a lemma column on unescaped `+`. A literal plus is written `\+`.
///
/// A column whose naive split would produce empty segments against a single
/// XPOS tag (e.g. the lemma `+` tagged `SW`) is kept whole.
pub(crate) fn split_lemma(col: &str, xpos_len: usize) -> Vec<String> {
    if col == "_" {
        return Vec::new();
    }
    let mut segments = Vec::new();
    let mut cur = String::new();
    let mut chars = col.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\\' if chars.peek() == Some(&'+') => {
                cur.push('+');
                chars.next();
            }
            '+' => segments.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    segments.push(cur);
    if xpos_len == 1 && segments.len() > 1 && segments.iter().any(String::is_empty) {
        return vec![col.replace("\\+", "+")];
    }
    segments
}
