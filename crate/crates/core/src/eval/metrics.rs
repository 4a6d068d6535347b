use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::conllu::{label_for, Corpus, Sentence, Token};
use crate::error::{Error, Result};

/// Character spans of the plain tokens, over the sentence with all
/// whitespace removed.
fn spans(tokens: &[&Token]) -> (Vec<(usize, usize)>, String) {
    let mut text = String::new();
    let mut pos = 0;
    let spans = tokens
        .iter()
        .map(|t| {
            let start = pos;
            for c in t.form.chars().filter(|c| !c.is_whitespace()) {
                text.push(c);
                pos += 1;
            }
            (start, pos)
        })
        .collect();
    (spans, text)
}

/// Pairs of (gold, system) positions among the plain tokens whose character
/// spans are identical. Tags play no part.
pub fn align_tokens(gold: &Sentence, system: &Sentence) -> Result<Vec<(usize, usize)>> {
    let g: Vec<&Token> = gold.plain_tokens().collect();
    let s: Vec<&Token> = system.plain_tokens().collect();
    align_plain(&g, &s).ok_or_else(|| Error::TextMismatch {
        sent_id: gold.sent_id().unwrap_or("?").to_string(),
    })
}

fn align_plain(gold: &[&Token], system: &[&Token]) -> Option<Vec<(usize, usize)>> {
    let (gs, gtext) = spans(gold);
    let (ss, stext) = spans(system);
    if gtext != stext {
        return None;
    }
    let mut pairs = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < gs.len() && j < ss.len() {
        let (a, b) = (gs[i], ss[j]);
        if a == b {
            pairs.push((i, j));
        }
        // Spans tile the same text, so the one ending first can match nothing
        // further on the other side.
        if a.1 <= b.1 {
            i += 1;
        }
        if b.1 <= a.1 {
            j += 1;
        }
    }
    Some(pairs)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Counts {
    gold: u64,
    system: u64,
    aligned: u64,
    upos: u64,
    xpos: u64,
    lemma: u64,
    uas: u64,
    las: u64,
}

impl std::ops::Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts {
            gold: self.gold + o.gold,
            system: self.system + o.system,
            aligned: self.aligned + o.aligned,
            upos: self.upos + o.upos,
            xpos: self.xpos + o.xpos,
            lemma: self.lemma + o.lemma,
            uas: self.uas + o.uas,
            las: self.las + o.las,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scores {
    pub upos_f1: f64,
    pub xpos_f1: f64,
    /// Aligned F1 over lemmas (morphemes joined with `+`), reported under
    /// the LEMMA heading.
    pub lemma_acc: f64,
    pub uas: f64,
    pub las: f64,
    pub gold_tokens: u64,
    pub system_tokens: u64,
    pub aligned_tokens: u64,
}

/// F1 as a percentage, 0 when both precision and recall are 0.
pub fn f1_percent(correct: u64, system: u64, gold: u64) -> f64 {
    if correct == 0 || system == 0 || gold == 0 {
        return 0.0;
    }
    let p = correct as f64 / system as f64;
    let r = correct as f64 / gold as f64;
    100.0 * 2.0 * p * r / (p + r)
}

impl Scores {
    fn from_counts(c: Counts) -> Scores {
        let f = |k| f1_percent(k, c.system, c.gold);
        Scores {
            upos_f1: f(c.upos),
            xpos_f1: f(c.xpos),
            lemma_acc: f(c.lemma),
            uas: f(c.uas),
            las: f(c.las),
            gold_tokens: c.gold,
            system_tokens: c.system,
            aligned_tokens: c.aligned,
        }
    }

    /// TSV with one row per metric, values to two decimals.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("metric\tscore\n");
        for (name, v) in [
            ("UPOS", self.upos_f1),
            ("XPOS", self.xpos_f1),
            ("LEMMA", self.lemma_acc),
            ("UAS", self.uas),
            ("LAS", self.las),
        ] {
            let _ = writeln!(out, "{name}\t{v:.2}");
        }
        let _ = writeln!(out, "GOLD_TOKENS\t{}", self.gold_tokens);
        let _ = writeln!(out, "SYSTEM_TOKENS\t{}", self.system_tokens);
        let _ = writeln!(out, "ALIGNED_TOKENS\t{}", self.aligned_tokens);
        out
    }
}

fn head_matches(
    g: &Token,
    s: &Token,
    gold_pos: &HashMap<u32, usize>,
    sys_pos: &HashMap<u32, usize>,
    g_to_s: &HashMap<usize, usize>,
) -> bool {
    match (g.head, s.head) {
        (Some(0), Some(0)) => true,
        (Some(gh), Some(sh)) if gh > 0 && sh > 0 => match (gold_pos.get(&gh), sys_pos.get(&sh)) {
            (Some(gi), Some(si)) => g_to_s.get(gi) == Some(si),
            _ => false,
        },
        _ => false,
    }
}

fn score_sentence(label: &str, gold: &Sentence, system: &Sentence) -> Result<Counts> {
    let g: Vec<&Token> = gold.plain_tokens().collect();
    let s: Vec<&Token> = system.plain_tokens().collect();
    let pairs = align_plain(&g, &s).ok_or_else(|| Error::TextMismatch {
        sent_id: label.to_string(),
    })?;
    let positions = |ts: &[&Token]| -> HashMap<u32, usize> {
        ts.iter()
            .enumerate()
            .filter_map(|(i, t)| t.id.as_single().map(|id| (id, i)))
            .collect()
    };
    let (gold_pos, sys_pos) = (positions(&g), positions(&s));
    let g_to_s: HashMap<usize, usize> = pairs.iter().copied().collect();

    let mut c = Counts {
        gold: g.len() as u64,
        system: s.len() as u64,
        aligned: pairs.len() as u64,
        ..Counts::default()
    };
    for &(gi, si) in &pairs {
        let (gt, st) = (g[gi], s[si]);
        c.upos += u64::from(gt.upos == st.upos);
        c.xpos += u64::from(gt.xpos == st.xpos);
        c.lemma += u64::from(gt.lemma == st.lemma);
        if head_matches(gt, st, &gold_pos, &sys_pos, &g_to_s) {
            c.uas += 1;
            c.las += u64::from(gt.universal_deprel() == st.universal_deprel());
        }
    }
    Ok(c)
}

/// Scores a system corpus against gold, sentence by sentence.
pub fn score(gold: &Corpus, system: &Corpus) -> Result<Scores> {
    if gold.sentences.len() != system.sentences.len() {
        return Err(Error::ShapeMismatch(format!(
            "gold has {} sentences, system has {}",
            gold.sentences.len(),
            system.sentences.len()
        )));
    }
    let counts: Vec<Counts> = gold
        .sentences
        .par_iter()
        .zip(&system.sentences)
        .enumerate()
        .map(|(i, (g, s))| score_sentence(&label_for(g, i), g, s))
        .collect::<Result<_>>()?;
    Ok(Scores::from_counts(
        counts.into_iter().fold(Counts::default(), |a, b| a + b),
    ))
}
