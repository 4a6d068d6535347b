//! The versioned construction-to-UPOS lookup table.
//!
//! File format (UTF-8 TSV):
//!
//! ```text
//! # version	2
//! # history	1	seed
//! # history	2	adjudicated VX+EF -> AUX
//! xpos_seq	upos	status	frequency	note
//! NNG+JKB	ADP	reviewed	2706
//! ```
//!
//! The `#` lines are optional on input. Rows may omit the `note` column.
//! Output is canonical: entries sorted by tag sequence, five columns.

#![allow(clippy::tabs_in_doc_comments)]

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tagset::{UposTag, XposSeq};

pub const HEADER: &str = "xpos_seq\tupos\tstatus\tfrequency\tnote";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Reviewed,
    Heuristic,
    Adjudicated,
}

impl EntryStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryStatus::Reviewed => "reviewed",
            EntryStatus::Heuristic => "heuristic",
            EntryStatus::Adjudicated => "adjudicated",
        }
    }
}

impl fmt::Display for EntryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EntryStatus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reviewed" => Ok(EntryStatus::Reviewed),
            "heuristic" => Ok(EntryStatus::Heuristic),
            "adjudicated" => Ok(EntryStatus::Adjudicated),
            other => Err(format!("unknown status {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingEntry {
    pub xpos_seq: XposSeq,
    pub upos: UposTag,
    pub status: EntryStatus,
    pub frequency: u64,
    #[serde(default)]
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub version: u64,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MappingTable {
    entries: BTreeMap<XposSeq, MappingEntry>,
    version: u64,
    history: Vec<HistoryEntry>,
}

fn one_line(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

impl MappingTable {
    pub fn new() -> Self {
        MappingTable::default()
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn history(&self) -> &[HistoryEntry] {
        &self.history
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, seq: &XposSeq) -> Option<&MappingEntry> {
        self.entries.get(seq)
    }

    pub fn entries(&self) -> impl Iterator<Item = &MappingEntry> {
        self.entries.values()
    }

    fn bump(&mut self, description: String) {
        self.version += 1;
        self.history.push(HistoryEntry {
            version: self.version,
            description: one_line(&description),
        });
    }

    /// Inserts or replaces the entry for its sequence. Always a new version.
    pub fn upsert(&mut self, entry: MappingEntry, description: impl Into<String>) {
        self.entries.insert(entry.xpos_seq.clone(), entry);
        self.bump(description.into());
    }

    /// Inserts several entries as one version.
    pub fn upsert_all(
        &mut self,
        entries: impl IntoIterator<Item = MappingEntry>,
        description: impl Into<String>,
    ) {
        for e in entries {
            self.entries.insert(e.xpos_seq.clone(), e);
        }
        self.bump(description.into());
    }

    /// Records a human decision for a construction with status
    /// `adjudicated`. Returns `false`, leaving the version alone, when the
    /// table already holds exactly that decision.
    pub fn adjudicate(&mut self, seq: &XposSeq, upos: UposTag, frequency: u64, note: &str) -> bool {
        if let Some(e) = self.entries.get(seq) {
            if e.upos == upos && e.status == EntryStatus::Adjudicated {
                return false;
            }
        }
        let entry = MappingEntry {
            xpos_seq: seq.clone(),
            upos,
            status: EntryStatus::Adjudicated,
            frequency,
            note: one_line(note),
        };
        self.upsert(entry, format!("adjudicated {seq} -> {upos}"));
        true
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# version\t{}", self.version);
        for h in &self.history {
            let _ = writeln!(out, "# history\t{}\t{}", h.version, h.description);
        }
        out.push_str(HEADER);
        out.push('\n');
        for e in self.entries.values() {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                e.xpos_seq, e.upos, e.status, e.frequency, e.note
            );
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<MappingTable> {
        let mut table = MappingTable::new();
        let mut rows: BTreeMap<XposSeq, usize> = BTreeMap::new();
        let mut seen_header = false;
        for (i, raw) in text.lines().enumerate() {
            let row = i + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            let bad = |message: String| Error::BadTableRow { row, message };
            if line.trim().is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix("# ") {
                let cols: Vec<&str> = meta.split('\t').collect();
                match cols.as_slice() {
                    ["version", v] => {
                        table.version = v.parse().map_err(|_| bad(format!("bad version {v:?}")))?;
                    }
                    ["history", v, desc] => table.history.push(HistoryEntry {
                        version: v.parse().map_err(|_| bad(format!("bad version {v:?}")))?,
                        description: desc.to_string(),
                    }),
                    _ => return Err(bad(format!("unrecognized metadata line {line:?}"))),
                }
                continue;
            }
            if !seen_header {
                if line != HEADER && line != HEADER.rsplit_once('\t').unwrap().0 {
                    return Err(bad(format!("expected header {HEADER:?}")));
                }
                seen_header = true;
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if !(4..=5).contains(&cols.len()) {
                return Err(bad(format!(
                    "expected 4 or 5 columns, found {}",
                    cols.len()
                )));
            }
            let xpos_seq: XposSeq = cols[0].parse()?;
            let upos: UposTag = cols[1].parse()?;
            let status: EntryStatus = cols[2].parse().map_err(bad)?;
            let frequency: u64 = cols[3]
                .parse()
                .map_err(|_| bad(format!("bad frequency {:?}", cols[3])))?;
            let note = cols.get(4).copied().unwrap_or_default().to_string();
            match rows.entry(xpos_seq.clone()) {
                Entry::Occupied(first) => {
                    return Err(Error::DuplicateKey {
                        key: xpos_seq.to_string(),
                        first: *first.get(),
                        second: row,
                    })
                }
                Entry::Vacant(v) => {
                    v.insert(row);
                }
            }
            table.entries.insert(
                xpos_seq.clone(),
                MappingEntry {
                    xpos_seq,
                    upos,
                    status,
                    frequency,
                    note,
                },
            );
        }
        if !seen_header && table.version == 0 && table.history.is_empty() {
            return Err(Error::BadTableRow {
                row: 1,
                message: "missing header".into(),
            });
        }
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<MappingTable> {
        MappingTable::from_tsv(&std::fs::read_to_string(path)?)
    }

    /// Writes via a temporary file and rename, so readers never see a
    /// partial table.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let tmp = path.with_extension("tsv.tmp");
        std::fs::write(&tmp, self.to_tsv())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// The 16 gold alignments with their treebank frequencies.
pub const SEED_ROWS: [(&str, &str, &str, UposTag, u64); 16] = [
    ("학교에", "학교+에", "NNG+JKB", UposTag::ADP, 2706),
    ("곳에", "곳+에", "NNB+JKB", UposTag::ADP, 284),
    ("이", "이", "MM", UposTag::DET, 176),
    ("정말", "정말", "MAG", UposTag::ADV, 4077),
    ("빠르게", "빠르+게", "VA+EC", UposTag::ADV, 326),
    ("예쁘다", "예쁘+다", "VA+EF", UposTag::ADJ, 615),
    ("예쁜", "예쁘+ㄴ", "VA+ETM", UposTag::ADJ, 589),
    ("책을", "책+을", "NNG+JKO", UposTag::NOUN, 3679),
    ("책", "책", "NNG", UposTag::NOUN, 2546),
    ("학생이", "학생+이", "NNG+JKS", UposTag::NOUN, 2536),
    ("내가", "나+가", "NP+JKS", UposTag::PRON, 326),
    ("나도", "나+도", "NP+JX", UposTag::PRON, 759),
    ("먹고", "먹+고", "VV+EC", UposTag::VERB, 3553),
    ("먹는", "먹+는", "VV+ETM", UposTag::VERB, 2553),
    ("싶다", "싶+다", "VX+EF", UposTag::AUX, 639),
    ("싶어서", "싶+어서", "VX+EC", UposTag::AUX, 303),
];

/// The shipped seed table: one reviewed entry per gold example, version 1.
pub fn seed_table() -> MappingTable {
    let mut table = MappingTable::new();
    table.upsert_all(
        SEED_ROWS
            .iter()
            .map(|&(form, _, seq, upos, frequency)| MappingEntry {
                xpos_seq: seq.parse().expect("seed sequence"),
                upos,
                status: EntryStatus::Reviewed,
                frequency,
                note: format!("gold example {form}"),
            }),
        "seed: 16 gold alignment examples",
    );
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_round_trips_byte_identically() {
        let t = seed_table();
        assert_eq!(t.len(), 16);
        assert_eq!(t.version(), 1);
        let text = t.to_tsv();
        let back = MappingTable::from_tsv(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_tsv(), text);
    }

    #[test]
    fn four_column_row_loads() {
        let t =
            MappingTable::from_tsv(&format!("{HEADER}\nNNG+JKO\tNOUN\treviewed\t3679\n")).unwrap();
        let e = t.get(&"NNG+JKO".parse().unwrap()).unwrap();
        assert_eq!(e.frequency, 3679);
        assert_eq!(e.upos, UposTag::NOUN);
        assert_eq!(e.status, EntryStatus::Reviewed);
        assert_eq!(t.version(), 0);
    }

    #[test]
    fn duplicate_key_reports_rows() {
        let text =
            format!("{HEADER}\nNNG+JKS\tNOUN\treviewed\t1\t\nNNG+JKS\tPRON\treviewed\t2\t\n");
        match MappingTable::from_tsv(&text) {
            Err(Error::DuplicateKey { key, first, second }) => {
                assert_eq!((key.as_str(), first, second), ("NNG+JKS", 2, 3));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_upos_is_rejected() {
        let text = format!("{HEADER}\nNNG\tNOUNISH\treviewed\t1\t\n");
        assert!(matches!(
            MappingTable::from_tsv(&text),
            Err(Error::BadUpos(_))
        ));
    }

    #[test]
    fn adjudication_bumps_version_once() {
        let mut t = seed_table();
        let seq: XposSeq = "VX+EF".parse().unwrap();
        assert!(t.adjudicate(&seq, UposTag::AUX, 639, "round 1"));
        assert_eq!(t.version(), 2);
        assert!(!t.adjudicate(&seq, UposTag::AUX, 639, "round 1"));
        assert_eq!(t.version(), 2);
        assert_eq!(t.get(&seq).unwrap().status, EntryStatus::Adjudicated);
        assert_eq!(t.history().len(), 2);
        assert!(t
            .to_tsv()
            .contains("VX+EF\tAUX\tadjudicated\t639\tround 1\n"));
    }
}
