//! Context-sensitive rules for the constructions that have no direct
//! XPOS-to-UPOS equivalent: adverbials, split auxiliary constructions,
//! adnominal predicates, and 되다.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::conllu::{Sentence, Token};
use crate::error::{Error, Result};
use crate::tagset::{SejongTag, UposTag};

use super::base::{head_morpheme, nominal_with_jkb};

pub const RULE_ADV: &str = "special:adv";
pub const RULE_ADV_JKB: &str = "special:adv-jkb";
pub const RULE_ETM: &str = "special:etm";
pub const RULE_AUX: &str = "special:aux";
pub const RULE_AUX_MAIN: &str = "special:aux-main";
pub const RULE_AUX_ROOT: &str = "special:aux-root";
pub const RULE_DOEDA: &str = "special:doeda";

/// Appended to a rule id when the decision was made from word adjacency
/// because the sentence has no dependency layer.
pub const LOW_CONFIDENCE: &str = "@adjacency";

/// Connective endings that turn a predicate into an adverbial.
const ADVERBIALIZERS: &[&str] = &["게"];

const DOEDA: &str = "되";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RuleConfig {
    /// Auxiliary roots that take AUX when they follow a main predicate in a
    /// separate eojeol.
    pub aux_lemmas: BTreeSet<String>,
    /// Auxiliary roots whose own lexical category is adjectival. Used when
    /// such an auxiliary is the clause root and cannot be AUX.
    pub adjectival_aux_lemmas: BTreeSet<String>,
    /// UPOS for a nominal with an adverbial postposition (JKB).
    pub adverbial_jkb_upos: UposTag,
    /// Review threshold; constructions seen more often are reviewed.
    pub threshold: u64,
}

impl Default for RuleConfig {
    fn default() -> Self {
        let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        RuleConfig {
            aux_lemmas: set(&[
                "싶", "않", "있", "보", "주", "지", "하", "내", "버리", "두", "놓", "오", "가",
            ]),
            adjectival_aux_lemmas: set(&["싶", "있", "없"]),
            adverbial_jkb_upos: UposTag::ADP,
            threshold: crate::miner::DEFAULT_THRESHOLD,
        }
    }
}

impl RuleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.aux_lemmas.is_empty() {
            return Err(Error::BadConfig("aux_lemmas must not be empty".into()));
        }
        Ok(())
    }
}

/// What a rule needs to know about one eojeol.
struct View<'a> {
    token: &'a Token,
    head_tag: &'a SejongTag,
    head_lemma: Option<&'a str>,
}

impl<'a> View<'a> {
    fn of(token: &'a Token) -> Option<View<'a>> {
        if !token.is_plain() || token.xpos.is_empty() {
            return None;
        }
        let h = head_morpheme(&token.xpos);
        Some(View {
            token,
            head_tag: &token.xpos[h],
            head_lemma: token.lemma.get(h).map(String::as_str),
        })
    }

    /// VERB or ADJ from a lexical predicate head.
    fn predicate_category(&self) -> Option<UposTag> {
        match self.head_tag {
            SejongTag::Vv | SejongTag::Xsv => Some(UposTag::VERB),
            SejongTag::Va | SejongTag::Xsa => Some(UposTag::ADJ),
            _ => None,
        }
    }

    fn last_tag(&self) -> &SejongTag {
        self.token.xpos.last().expect("non-empty xpos")
    }

    fn last_lemma(&self) -> Option<&str> {
        (self.token.lemma.len() == self.token.xpos.len())
            .then(|| self.token.lemma.last().map(String::as_str))
            .flatten()
    }

    fn ends_in_connective(&self) -> bool {
        *self.last_tag() == SejongTag::Ec
    }

    fn is_listed_aux(&self, config: &RuleConfig) -> bool {
        *self.head_tag == SejongTag::Vx
            && self
                .head_lemma
                .is_some_and(|l| config.aux_lemmas.contains(l))
    }

    fn is_doeda(&self) -> bool {
        matches!(self.head_tag, SejongTag::Vv | SejongTag::Vx) && self.head_lemma == Some(DOEDA)
    }

    fn id(&self) -> Option<u32> {
        self.token.id.as_single()
    }
}

fn has_dependency_layer(sentence: &Sentence) -> bool {
    sentence.plain_tokens().any(|t| t.deprel.is_some())
}

fn with_confidence(rule: &str, adjacency: bool) -> String {
    if adjacency {
        format!("{rule}{LOW_CONFIDENCE}")
    } else {
        rule.to_string()
    }
}

/// `aux` is attached to `main` as its auxiliary: by dependency when the
/// sentence has that layer, otherwise by immediate adjacency.
fn attaches_as_aux(main: &View, aux: &View, dep_layer: bool) -> bool {
    if dep_layer {
        aux.token.universal_deprel() == Some("aux") && aux.token.head == main.id()
    } else {
        main.ends_in_connective()
    }
}

/// 되다 following a connective predicate, or attached as `aux`.
fn doeda_in_aux_position(sentence: &Sentence, index: usize, view: &View) -> bool {
    if !view.is_doeda() {
        return false;
    }
    if view.token.universal_deprel() == Some("aux") {
        return true;
    }
    sentence
        .previous_plain(index)
        .and_then(View::of)
        .is_some_and(|p| p.predicate_category().is_some() && p.ends_in_connective())
}

fn next_is_doeda_aux(sentence: &Sentence, index: usize) -> bool {
    let Some(next_index) = sentence.tokens[index + 1..]
        .iter()
        .position(Token::is_plain)
        .map(|p| p + index + 1)
    else {
        return false;
    };
    View::of(&sentence.tokens[next_index])
        .is_some_and(|n| doeda_in_aux_position(sentence, next_index, &n))
}

/// First matching context rule for `sentence.tokens[index]`, in fixed order:
/// adverbial, adnominal predicate, split auxiliary, 되다.
pub fn apply_special_rules(
    sentence: &Sentence,
    index: usize,
    config: &RuleConfig,
) -> Option<(UposTag, String)> {
    let view = View::of(sentence.tokens.get(index)?)?;
    let dep_layer = has_dependency_layer(sentence);

    // 1. Adverbials. 하+게 before 되다 belongs to the 되다 construction.
    if view.predicate_category().is_some()
        && view.ends_in_connective()
        && view
            .last_lemma()
            .is_some_and(|l| ADVERBIALIZERS.contains(&l))
        && !next_is_doeda_aux(sentence, index)
    {
        return Some((UposTag::ADV, RULE_ADV.into()));
    }
    if nominal_with_jkb(&view.token.xpos, head_morpheme(&view.token.xpos)) {
        return Some((config.adverbial_jkb_upos, RULE_ADV_JKB.into()));
    }

    // 2. Predicate with a determinative ending.
    if *view.last_tag() == SejongTag::Etm {
        if let Some(cat) = view.predicate_category() {
            return Some((cat, RULE_ETM.into()));
        }
    }

    // 3. Auxiliary split from its main predicate.
    if view.is_listed_aux(config) {
        if dep_layer {
            let after_predicate = sentence.tokens[..index]
                .iter()
                .filter_map(View::of)
                .any(|p| p.predicate_category().is_some());
            if after_predicate {
                if view.token.universal_deprel() == Some("root") {
                    let lemma = view.head_lemma.unwrap_or_default();
                    let cat = if config.adjectival_aux_lemmas.contains(lemma) {
                        UposTag::ADJ
                    } else {
                        UposTag::VERB
                    };
                    return Some((cat, RULE_AUX_ROOT.into()));
                }
                return Some((UposTag::AUX, RULE_AUX.into()));
            }
        } else if sentence
            .previous_plain(index)
            .and_then(View::of)
            .is_some_and(|p| p.predicate_category().is_some() && p.ends_in_connective())
        {
            return Some((UposTag::AUX, with_confidence(RULE_AUX, true)));
        }
    }
    if let Some(cat) = view.predicate_category() {
        let next = sentence.next_plain(index).and_then(View::of);
        if let Some(next) = next {
            if view.ends_in_connective()
                && next.is_listed_aux(config)
                && attaches_as_aux(&view, &next, dep_layer)
            {
                return Some((cat, with_confidence(RULE_AUX_MAIN, !dep_layer)));
            }
        }
    }

    // 4. 되다 in auxiliary position, and the predicate it completes.
    if doeda_in_aux_position(sentence, index, &view) {
        return Some((UposTag::VERB, RULE_DOEDA.into()));
    }
    if view.predicate_category().is_some()
        && view.ends_in_connective()
        && next_is_doeda_aux(sentence, index)
    {
        return Some((UposTag::VERB, RULE_DOEDA.into()));
    }

    None
}
