use std::fmt::Write as _;

use serde::Serialize;

use crate::conllu::{Corpus, Token};
use crate::error::{Error, Result};
use crate::tagset::UposTag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeltaRow {
    /// `None` counts tokens whose UPOS column is empty.
    pub upos: Option<UposTag>,
    pub before: u64,
    pub after: u64,
}

impl DeltaRow {
    pub fn delta(&self) -> i64 {
        self.after as i64 - self.before as i64
    }
}

/// Per-tag UPOS frequencies before and after alignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    /// One row per UPOS tag in enumeration order, then the empty row.
    pub rows: Vec<DeltaRow>,
}

impl DeltaReport {
    pub fn before_total(&self) -> u64 {
        self.rows.iter().map(|r| r.before).sum()
    }

    pub fn after_total(&self) -> u64 {
        self.rows.iter().map(|r| r.after).sum()
    }

    pub fn delta_sum(&self) -> i64 {
        self.rows.iter().map(DeltaRow::delta).sum()
    }

    pub fn row(&self, upos: Option<UposTag>) -> &DeltaRow {
        self.rows
            .iter()
            .find(|r| r.upos == upos)
            .expect("every tag has a row")
    }

    /// Sum of |delta| over all rows. Each change moves one token between
    /// rows, so this is at most twice the number of changes.
    pub fn total_absolute_delta(&self) -> u64 {
        self.rows.iter().map(|r| r.delta().unsigned_abs()).sum()
    }

    /// TSV with columns `upos`, `unaligned`, `aligned`, `delta`. Rows that
    /// are zero on both sides are omitted; a `TOTAL` row closes the table.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("upos\tunaligned\taligned\tdelta\n");
        for r in self.rows.iter().filter(|r| r.before != 0 || r.after != 0) {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                r.upos.map_or("_", UposTag::as_str),
                r.before,
                r.after,
                signed(r.delta())
            );
        }
        let _ = writeln!(
            out,
            "TOTAL\t{}\t{}\t{}",
            self.before_total(),
            self.after_total(),
            signed(self.delta_sum())
        );
        out
    }
}

fn signed(d: i64) -> String {
    if d > 0 {
        format!("+{d}")
    } else {
        d.to_string()
    }
}

fn slot(upos: Option<UposTag>) -> usize {
    upos.map_or(UposTag::ALL.len(), |u| u as usize)
}

fn same_token(a: &Token, b: &Token) -> bool {
    a.id == b.id && a.form == b.form
}

/// Compares UPOS frequencies over the plain tokens of two versions of the
/// same corpus.
pub fn delta_report(before: &Corpus, after: &Corpus) -> Result<DeltaReport> {
    if before.sentences.len() != after.sentences.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} sentences before, {} after",
            before.sentences.len(),
            after.sentences.len()
        )));
    }
    let mut counts = [(0u64, 0u64); 18];
    for (i, (b, a)) in before.sentences.iter().zip(&after.sentences).enumerate() {
        let bt: Vec<&Token> = b.plain_tokens().collect();
        let at: Vec<&Token> = a.plain_tokens().collect();
        if bt.len() != at.len() || bt.iter().zip(&at).any(|(x, y)| !same_token(x, y)) {
            return Err(Error::ShapeMismatch(format!(
                "sentence {} has different tokens",
                before.sentence_label(i)
            )));
        }
        for (x, y) in bt.iter().zip(&at) {
            counts[slot(x.upos)].0 += 1;
            counts[slot(y.upos)].1 += 1;
        }
    }
    let rows = UposTag::ALL
        .iter()
        .map(|&u| Some(u))
        .chain(std::iter::once(None))
        .map(|upos| {
            let (before, after) = counts[slot(upos)];
            DeltaRow {
                upos,
                before,
                after,
            }
        })
        .collect();
    Ok(DeltaReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::parse_str;

    #[test]
    fn identical_corpora_have_zero_deltas() {
        let c = parse_str("1\t책\t책\tNOUN\tNNG\t_\t0\troot\t_\t_\n", "t").unwrap();
        let r = delta_report(&c, &c).unwrap();
        assert!(r.rows.iter().all(|row| row.delta() == 0));
        assert_eq!(
            r.to_tsv(),
            "upos\tunaligned\taligned\tdelta\nNOUN\t1\t1\t0\nTOTAL\t1\t1\t0\n"
        );
    }

    #[test]
    fn shape_mismatch() {
        let a = parse_str("1\t책\t책\tNOUN\tNNG\t_\t0\troot\t_\t_\n", "t").unwrap();
        let b = parse_str("1\t꽃\t꽃\tNOUN\tNNG\t_\t0\troot\t_\t_\n", "t").unwrap();
        assert!(matches!(delta_report(&a, &b), Err(Error::ShapeMismatch(_))));
        assert!(matches!(
            delta_report(&a, &Corpus::new("t")),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
