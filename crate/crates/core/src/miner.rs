//! Eojeol-level construction mining.
//!
//! A construction is the XPOS tag sequence of one eojeol; surface forms do
//! not take part in its identity. Mining counts every plain token that has
//! an XPOS layer, punctuation included.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::conllu::{label_for, Corpus, Sentence};
use crate::error::{Error, Result};
use crate::tagset::XposSeq;

pub const DEFAULT_EXAMPLE_CAP: usize = 5;
pub const DEFAULT_THRESHOLD: u64 = 5;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Example {
    pub form: String,
    pub sent_id: String,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Construction {
    pub xpos_seq: XposSeq,
    pub frequency: u64,
    /// The first occurrences in corpus order, at most the table's cap.
    pub examples: Vec<Example>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionTable {
    pub entries: BTreeMap<XposSeq, Construction>,
    pub total_eojeols: u64,
    pub example_cap: usize,
}

impl ConstructionTable {
    pub fn new(example_cap: usize) -> Self {
        ConstructionTable {
            entries: BTreeMap::new(),
            total_eojeols: 0,
            example_cap,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, seq: &XposSeq) -> Option<&Construction> {
        self.entries.get(seq)
    }

    fn record(&mut self, seq: XposSeq, form: &str, sent_id: &str) {
        self.total_eojeols += 1;
        let cap = self.example_cap;
        let entry = self
            .entries
            .entry(seq)
            .or_insert_with_key(|k| Construction {
                xpos_seq: k.clone(),
                frequency: 0,
                examples: Vec::new(),
            });
        entry.frequency += 1;
        if entry.examples.len() < cap {
            entry.examples.push(Example {
                form: form.to_string(),
                sent_id: sent_id.to_string(),
            });
        }
    }

    fn add_sentence(&mut self, label: &str, sentence: &Sentence) {
        for token in sentence.plain_tokens().filter(|t| t.has_xpos()) {
            self.record(token.xpos_seq(), &token.form, label);
        }
    }

    /// Folds `later` into `self`; `later` must cover sentences after `self`'s.
    fn merge(mut self, later: ConstructionTable) -> ConstructionTable {
        self.total_eojeols += later.total_eojeols;
        let cap = self.example_cap;
        for (seq, c) in later.entries {
            match self.entries.get_mut(&seq) {
                Some(mine) => {
                    mine.frequency += c.frequency;
                    let room = cap.saturating_sub(mine.examples.len());
                    mine.examples.extend(c.examples.into_iter().take(room));
                }
                None => {
                    self.entries.insert(seq, c);
                }
            }
        }
        self
    }

    /// All constructions by descending frequency, ties by tag sequence.
    pub fn sorted(&self) -> Vec<&Construction> {
        let mut all: Vec<&Construction> = self.entries.values().collect();
        all.sort_by(|a, b| {
            b.frequency
                .cmp(&a.frequency)
                .then_with(|| a.xpos_seq.cmp(&b.xpos_seq))
        });
        all
    }

    /// TSV with columns `xpos_seq`, `frequency`, `examples`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("xpos_seq\tfrequency\texamples\n");
        for c in self.sorted() {
            let examples: Vec<&str> = c.examples.iter().map(|e| e.form.as_str()).collect();
            let _ = writeln!(
                out,
                "{}\t{}\t{}",
                c.xpos_seq,
                c.frequency,
                examples.join(",")
            );
        }
        out
    }
}

fn check_layer(corpus: &Corpus) -> Result<()> {
    let mut plain = corpus
        .sentences
        .iter()
        .flat_map(|s| s.plain_tokens())
        .peekable();
    if plain.peek().is_some() && !plain.any(|t| t.has_xpos()) {
        return Err(Error::MissingLayer);
    }
    Ok(())
}

pub fn mine(corpus: &Corpus) -> Result<ConstructionTable> {
    mine_with_cap(corpus, DEFAULT_EXAMPLE_CAP)
}

pub fn mine_with_cap(corpus: &Corpus, example_cap: usize) -> Result<ConstructionTable> {
    check_layer(corpus)?;
    let mut table = ConstructionTable::new(example_cap);
    for (i, s) in corpus.sentences.iter().enumerate() {
        table.add_sentence(&label_for(s, i), s);
    }
    Ok(table)
}

/// Same result as [`mine_with_cap`], counting sentence chunks on the rayon
/// pool and merging them in corpus order.
pub fn mine_parallel(corpus: &Corpus, example_cap: usize) -> Result<ConstructionTable> {
    check_layer(corpus)?;
    const CHUNK: usize = 256;
    let parts: Vec<ConstructionTable> = corpus
        .sentences
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(chunk, sentences)| {
            let mut t = ConstructionTable::new(example_cap);
            for (j, s) in sentences.iter().enumerate() {
                t.add_sentence(&label_for(s, chunk * CHUNK + j), s);
            }
            t
        })
        .collect();
    Ok(parts.into_iter().fold(
        ConstructionTable::new(example_cap),
        ConstructionTable::merge,
    ))
}

/// Splits constructions into those seen more than `threshold` times
/// (reviewed) and the rest (heuristic). Both lists are sorted like
/// [`ConstructionTable::sorted`].
pub fn partition(
    table: &ConstructionTable,
    threshold: u64,
) -> (Vec<Construction>, Vec<Construction>) {
    table
        .sorted()
        .into_iter()
        .cloned()
        .partition(|c| c.frequency > threshold)
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CoverageReport {
    pub threshold: u64,
    pub covered_eojeols: u64,
    pub total_eojeols: u64,
    pub reviewed_constructions: usize,
    pub heuristic_constructions: usize,
}

impl CoverageReport {
    /// Exact covered fraction.
    pub fn covered_fraction(&self) -> Ratio<u64> {
        Ratio::new(self.covered_eojeols, self.total_eojeols)
    }

    /// Coverage as a percentage rounded to two decimals, e.g. `96.41`.
    pub fn percent_string(&self) -> String {
        format_percent(self.covered_fraction())
    }

    pub fn to_tsv(&self) -> String {
        format!(
            "threshold\tcovered_eojeols\ttotal_eojeols\tcovered_percent\treviewed_constructions\theuristic_constructions\n{}\t{}\t{}\t{}\t{}\t{}\n",
            self.threshold,
            self.covered_eojeols,
            self.total_eojeols,
            self.percent_string(),
            self.reviewed_constructions,
            self.heuristic_constructions
        )
    }
}

/// Formats a ratio as a percentage with two decimals, rounding half up, using
/// integer arithmetic only.
pub fn format_percent(r: Ratio<u64>) -> String {
    let (n, d) = (*r.numer() as u128, *r.denom() as u128);
    let hundredths = (n * 10_000 * 2 + d) / (2 * d);
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

pub fn coverage(table: &ConstructionTable, threshold: u64) -> Result<CoverageReport> {
    if table.is_empty() || table.total_eojeols == 0 {
        return Err(Error::EmptyTable);
    }
    let (reviewed, heuristic) = partition(table, threshold);
    Ok(CoverageReport {
        threshold,
        covered_eojeols: reviewed.iter().map(|c| c.frequency).sum(),
        total_eojeols: table.total_eojeols,
        reviewed_constructions: reviewed.len(),
        heuristic_constructions: heuristic.len(),
    })
}
