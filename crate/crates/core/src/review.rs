//! Review sessions over alignment changes.
//!
//! A session samples a fraction of the change records of one alignment run
//! and groups the sampled tokens by construction, so one decision covers
//! every token of that construction. Decisions are immutable once made and
//! are replayed in order to rebuild a session after a restart.

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::align::{review_flags, ChangeRecord, MappingTable, ReviewFlag};
use crate::conllu::{label_for, Corpus};
use crate::error::{Error, Result};
use crate::miner::{Construction, ConstructionTable, DEFAULT_EXAMPLE_CAP};
use crate::shuffle::sample_indices;
use crate::tagset::{UposTag, XposSeq};

pub fn default_sample_fraction() -> Ratio<u64> {
    Ratio::new(1, 10)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemStatus {
    Pending,
    Accepted,
    Overridden,
}

impl ItemStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ItemStatus::Pending => "pending",
            ItemStatus::Accepted => "accepted",
            ItemStatus::Overridden => "overridden",
        }
    }
}

impl std::str::FromStr for ItemStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pending" => Ok(ItemStatus::Pending),
            "accepted" => Ok(ItemStatus::Accepted),
            "overridden" => Ok(ItemStatus::Overridden),
            other => Err(Error::BadDecision(format!("unknown status {other:?}"))),
        }
    }
}

/// A sampled token shown with its sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenContext {
    pub sent_id: String,
    pub token_id: u32,
    pub form: String,
    pub text: String,
    pub old_upos: Option<UposTag>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReviewItem {
    /// The construction string, e.g. `VX+EF`.
    pub id: String,
    pub construction: Construction,
    pub proposed_upos: UposTag,
    pub proposal_source: String,
    pub status: ItemStatus,
    pub decided_upos: Option<UposTag>,
    pub annotator: Option<String>,
    pub round: u32,
    /// Milliseconds since the Unix epoch.
    pub timestamp: Option<u64>,
    pub flags: Vec<ReviewFlag>,
    /// Number of sampled change records under this construction.
    pub sampled_tokens: usize,
    pub contexts: Vec<TokenContext>,
}

/// One line of the decision log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub item_id: String,
    pub decision: UposTag,
    pub annotator: String,
    pub timestamp: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionParams {
    pub sample_fraction: Ratio<u64>,
    pub seed: u64,
    pub round: u32,
}

impl Default for SessionParams {
    fn default() -> Self {
        SessionParams {
            sample_fraction: default_sample_fraction(),
            seed: 0,
            round: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReviewSession {
    pub items: Vec<ReviewItem>,
    pub sample_fraction: Ratio<u64>,
    pub seed: u64,
    pub round: u32,
    pub table_version_at_open: u64,
    pub total_changes: usize,
    pub sampled_changes: usize,
}

/// `ceil(n * fraction)`, capped at `n`.
pub fn sample_size(n: usize, fraction: Ratio<u64>) -> usize {
    let num = n as u128 * u128::from(*fraction.numer());
    let den = u128::from(*fraction.denom());
    (num.div_ceil(den) as usize).min(n)
}

impl ReviewSession {
    /// Samples `changes` and groups the sample by construction. `corpus` is
    /// the corpus the changes were computed on; `mined` supplies the
    /// corpus-wide frequency and examples of each construction.
    pub fn open(
        corpus: &Corpus,
        changes: &[ChangeRecord],
        mined: &ConstructionTable,
        table_version: u64,
        params: &SessionParams,
    ) -> Result<ReviewSession> {
        let zero = Ratio::from_integer(0);
        if params.sample_fraction <= zero || params.sample_fraction > Ratio::from_integer(1) {
            return Err(Error::BadConfig(format!(
                "sample fraction {} is outside (0, 1]",
                params.sample_fraction
            )));
        }
        if params.round == 0 {
            return Err(Error::BadConfig("review rounds start at 1".into()));
        }
        let k = sample_size(changes.len(), params.sample_fraction);
        let sampled = sample_indices(changes.len(), k, params.seed);

        let by_label: HashMap<String, usize> = corpus
            .sentences
            .iter()
            .enumerate()
            .map(|(i, s)| (label_for(s, i), i))
            .collect();

        let mut groups: BTreeMap<&XposSeq, Vec<&ChangeRecord>> = BTreeMap::new();
        for &i in &sampled {
            groups
                .entry(&changes[i].xpos_seq)
                .or_default()
                .push(&changes[i]);
        }

        let mut items: Vec<ReviewItem> = groups
            .into_iter()
            .map(|(seq, records)| {
                let (proposed_upos, proposal_source) = majority(&records);
                let construction = mined.get(seq).cloned().unwrap_or_else(|| Construction {
                    xpos_seq: seq.clone(),
                    frequency: records.len() as u64,
                    examples: Vec::new(),
                });
                let contexts = records
                    .iter()
                    .take(DEFAULT_EXAMPLE_CAP)
                    .filter_map(|r| {
                        let s = &corpus.sentences[*by_label.get(&r.sent_id)?];
                        let t = s
                            .tokens
                            .iter()
                            .find(|t| t.id.as_single() == Some(r.token_id))?;
                        Some(TokenContext {
                            sent_id: r.sent_id.clone(),
                            token_id: r.token_id,
                            form: t.form.clone(),
                            text: s.text().unwrap_or_default().to_string(),
                            old_upos: r.old_upos,
                        })
                    })
                    .collect();
                ReviewItem {
                    id: seq.to_string(),
                    flags: review_flags(seq),
                    construction,
                    proposed_upos,
                    proposal_source,
                    status: ItemStatus::Pending,
                    decided_upos: None,
                    annotator: None,
                    round: params.round,
                    timestamp: None,
                    sampled_tokens: records.len(),
                    contexts,
                }
            })
            .collect();
        items.sort_by(|a, b| {
            b.construction
                .frequency
                .cmp(&a.construction.frequency)
                .then_with(|| a.construction.xpos_seq.cmp(&b.construction.xpos_seq))
        });

        Ok(ReviewSession {
            items,
            sample_fraction: params.sample_fraction,
            seed: params.seed,
            round: params.round,
            table_version_at_open: table_version,
            total_changes: changes.len(),
            sampled_changes: k,
        })
    }

    pub fn item(&self, id: &str) -> Option<&ReviewItem> {
        self.items.iter().find(|i| i.id == id)
    }

    pub fn items_with_status(&self, status: Option<ItemStatus>) -> Vec<&ReviewItem> {
        self.items
            .iter()
            .filter(|i| status.is_none_or(|s| i.status == s))
            .collect()
    }

    /// Checks a decision without applying it.
    pub fn check(&self, d: &Decision) -> Result<&ReviewItem> {
        let item = self
            .item(&d.item_id)
            .ok_or_else(|| Error::NoSuchItem(d.item_id.clone()))?;
        if item.status != ItemStatus::Pending {
            return Err(Error::Conflict(d.item_id.clone()));
        }
        if d.annotator.trim().is_empty() {
            return Err(Error::BadDecision("annotator is required".into()));
        }
        Ok(item)
    }

    /// Records a decision. A second decision on the same item is a
    /// [`Error::Conflict`] and leaves the session unchanged.
    pub fn decide(&mut self, d: &Decision) -> Result<&ReviewItem> {
        self.check(d)?;
        let item = self
            .items
            .iter_mut()
            .find(|i| i.id == d.item_id)
            .expect("checked above");
        item.status = if d.decision == item.proposed_upos {
            ItemStatus::Accepted
        } else {
            ItemStatus::Overridden
        };
        item.decided_upos = Some(d.decision);
        item.annotator = Some(d.annotator.clone());
        item.timestamp = Some(d.timestamp);
        Ok(item)
    }

    pub fn replay<'a>(&mut self, log: impl IntoIterator<Item = &'a Decision>) -> Result<usize> {
        let mut n = 0;
        for d in log {
            self.decide(d)?;
            n += 1;
        }
        Ok(n)
    }

    /// Writes every decided item into `table` as adjudicated. Returns the
    /// number of entries that changed.
    pub fn apply_to_table(&self, table: &mut MappingTable) -> usize {
        self.items
            .iter()
            .filter_map(|i| Some((i, i.decided_upos?)))
            .filter(|(i, upos)| {
                table.adjudicate(
                    &i.construction.xpos_seq,
                    *upos,
                    i.construction.frequency,
                    &decision_note(i),
                )
            })
            .count()
    }
}

pub fn decision_note(item: &ReviewItem) -> String {
    format!(
        "round {} by {} ({} from {})",
        item.round,
        item.annotator.as_deref().unwrap_or("?"),
        item.status.as_str(),
        item.proposal_source
    )
}

/// Most frequent proposed tag, ties to the smaller tag; with the rule id of
/// its first record.
fn majority(records: &[&ChangeRecord]) -> (UposTag, String) {
    let mut counts: BTreeMap<UposTag, (usize, &str)> = BTreeMap::new();
    for r in records {
        counts.entry(r.new_upos).or_insert((0, &r.rule_id)).0 += 1;
    }
    let mut best: Option<(UposTag, usize, &str)> = None;
    for (upos, (n, rule)) in counts {
        if best.is_none_or(|(_, m, _)| n > m) {
            best = Some((upos, n, rule));
        }
    }
    let (upos, _, rule) = best.expect("groups are never empty");
    (upos, rule.to_string())
}
