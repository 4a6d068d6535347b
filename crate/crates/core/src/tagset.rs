//! Tag inventories: the Sejong XPOS tagset and the 17 UD UPOS categories.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

macro_rules! sejong_tags {
    ($( $variant:ident => $sym:literal, $desc:literal; )*) => {
        /// One morpheme-level tag of the Sejong tagset.
        ///
        /// The set is closed. Symbols outside the inventory parse to
        /// [`SejongTag::Unknown`], which keeps the original symbol so that a
        /// corpus can be written back unchanged, but which never matches a
        /// known tag and maps to `X`.
        #[derive(Debug, Clone, PartialEq, Eq, Hash)]
        pub enum SejongTag {
            $( #[doc = $desc] $variant, )*
            /// A symbol outside the inventory.
            Unknown(String),
        }

        impl SejongTag {
            /// All 44 known tags in inventory order.
            pub const ALL: &'static [SejongTag] = &[$( SejongTag::$variant, )*];

            pub fn as_str(&self) -> &str {
                match self {
                    $( SejongTag::$variant => $sym, )*
                    SejongTag::Unknown(s) => s,
                }
            }

            pub fn description(&self) -> &'static str {
                match self {
                    $( SejongTag::$variant => $desc, )*
                    SejongTag::Unknown(_) => "Unknown",
                }
            }

            /// Parses a symbol; unlisted symbols become `Unknown`.
            pub fn parse(symbol: &str) -> SejongTag {
                match symbol {
                    $( $sym => SejongTag::$variant, )*
                    other => SejongTag::Unknown(other.to_string()),
                }
            }
        }
    };
}

sejong_tags! {
    Nng => "NNG", "Noun, common";
    Nnp => "NNP", "Noun, proper";
    Nnb => "NNB", "Noun, bound";
    Nr => "NR", "Numeral";
    Np => "NP", "Pronoun";
    Vv => "VV", "Verb, main";
    Va => "VA", "Adjective";
    Vx => "VX", "Verb, auxiliary";
    Vcp => "VCP", "Copular, positive";
    Vcn => "VCN", "Copular, negative";
    Mm => "MM", "Determiner";
    Mag => "MAG", "Adverb, common";
    Maj => "MAJ", "Adverb, conjunctive";
    Ic => "IC", "Exclamation";
    Jks => "JKS", "Case particle, nominative";
    Jkg => "JKG", "Case particle, prenominal";
    Jko => "JKO", "Case particle, objectival";
    Jkb => "JKB", "Case particle, adverbial";
    Jkc => "JKC", "Case particle, complement";
    Jkv => "JKV", "Case particle, vocative";
    Jkq => "JKQ", "Case particle, conjunctive";
    Jx => "JX", "Case particle, auxiliary";
    Ep => "EP", "Ending, prefinal";
    Ef => "EF", "Ending, closing";
    Ec => "EC", "Ending, connecting";
    Etn => "ETN", "Ending, nounal";
    Etm => "ETM", "Ending, determinative";
    Xpn => "XPN", "Prefix, nounal";
    Xsn => "XSN", "Suffix, noun derivative";
    Xsv => "XSV", "Suffix, verb derivative";
    Xsa => "XSA", "Suffix, adjective derivative";
    Xr => "XR", "Root";
    Nf => "NF", "Undecided (considered as a noun)";
    Nv => "NV", "Undecided (considered as a predicate)";
    Na => "NA", "Undecided";
    Sf => "SF", "Period, Question, Exclamation";
    Se => "SE", "Ellipsis";
    Sp => "SP", "Comma, Colon, Slash";
    So => "SO", "Hyphen, Swung Dash";
    Sw => "SW", "Symbol";
    Ss => "SS", "Quotation, Bracket, Dash";
    Sh => "SH", "Chinese characters";
    Sl => "SL", "Foreign characters";
    Sn => "SN", "Number";
}

impl SejongTag {
    pub fn is_unknown(&self) -> bool {
        matches!(self, SejongTag::Unknown(_))
    }

    /// NNG, NNP, NNB, NR, NP.
    pub fn is_nominal(&self) -> bool {
        use SejongTag::*;
        matches!(self, Nng | Nnp | Nnb | Nr | Np)
    }

    /// VV, VA, VX, VCP, VCN.
    pub fn is_predicate(&self) -> bool {
        use SejongTag::*;
        matches!(self, Vv | Va | Vx | Vcp | Vcn)
    }

    /// Any J* case particle.
    pub fn is_particle(&self) -> bool {
        self.as_str().starts_with('J') && !self.is_unknown()
    }

    /// Any E* ending.
    pub fn is_ending(&self) -> bool {
        self.as_str().starts_with('E') && !self.is_unknown()
    }

    /// Punctuation proper: SF, SP, SS, SE, SO.
    pub fn is_punctuation(&self) -> bool {
        use SejongTag::*;
        matches!(self, Sf | Sp | Ss | Se | So)
    }
}

// Tag order is the lexical order of the symbols, so sorted tag sequences
// agree with sorting their "+"-joined renderings.
impl Ord for SejongTag {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_str().cmp(other.as_str())
    }
}

impl PartialOrd for SejongTag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SejongTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SejongTag {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(SejongTag::parse(s))
    }
}

/// The 17 universal part-of-speech categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UposTag {
    ADJ,
    ADP,
    ADV,
    AUX,
    CCONJ,
    DET,
    INTJ,
    NOUN,
    NUM,
    PART,
    PRON,
    PROPN,
    PUNCT,
    SCONJ,
    SYM,
    VERB,
    X,
}

impl UposTag {
    pub const ALL: [UposTag; 17] = [
        UposTag::ADJ,
        UposTag::ADP,
        UposTag::ADV,
        UposTag::AUX,
        UposTag::CCONJ,
        UposTag::DET,
        UposTag::INTJ,
        UposTag::NOUN,
        UposTag::NUM,
        UposTag::PART,
        UposTag::PRON,
        UposTag::PROPN,
        UposTag::PUNCT,
        UposTag::SCONJ,
        UposTag::SYM,
        UposTag::VERB,
        UposTag::X,
    ];

    pub fn as_str(self) -> &'static str {
        use UposTag::*;
        match self {
            ADJ => "ADJ",
            ADP => "ADP",
            ADV => "ADV",
            AUX => "AUX",
            CCONJ => "CCONJ",
            DET => "DET",
            INTJ => "INTJ",
            NOUN => "NOUN",
            NUM => "NUM",
            PART => "PART",
            PRON => "PRON",
            PROPN => "PROPN",
            PUNCT => "PUNCT",
            SCONJ => "SCONJ",
            SYM => "SYM",
            VERB => "VERB",
            X => "X",
        }
    }
}

impl fmt::Display for UposTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for UposTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        UposTag::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::BadUpos(s.to_string()))
    }
}

/// An eojeol's XPOS layer: the ordered tags of its morphemes.
///
/// This is also the identity of a construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct XposSeq(pub Vec<SejongTag>);

impl XposSeq {
    pub fn new(tags: Vec<SejongTag>) -> Self {
        XposSeq(tags)
    }

    pub fn tags(&self) -> &[SejongTag] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for XposSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, tag) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            f.write_str(tag.as_str())?;
        }
        Ok(())
    }
}

impl FromStr for XposSeq {
    type Err = Error;

    /// Parses a "+"-joined tag sequence such as `NNG+JKS`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || s == "_" {
            return Err(Error::BadXposSeq(s.to_string()));
        }
        let tags: Vec<SejongTag> = s.split('+').map(SejongTag::parse).collect();
        if tags.iter().any(|t| t.as_str().is_empty()) {
            return Err(Error::BadXposSeq(s.to_string()));
        }
        Ok(XposSeq(tags))
    }
}

impl Serialize for XposSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for XposSeq {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inventory_has_44_distinct_tags() {
        assert_eq!(SejongTag::ALL.len(), 44);
        let mut syms: Vec<&str> = SejongTag::ALL.iter().map(|t| t.as_str()).collect();
        syms.sort();
        syms.dedup();
        assert_eq!(syms.len(), 44);
    }

    #[test]
    fn no_tag_is_a_prefix_of_another() {
        for a in SejongTag::ALL {
            for b in SejongTag::ALL {
                if a != b {
                    assert!(!b.as_str().starts_with(a.as_str()), "{a} prefixes {b}");
                }
            }
        }
    }

    #[test]
    fn unlisted_symbol_is_unknown() {
        let t = SejongTag::parse("NNX");
        assert!(t.is_unknown());
        assert_eq!(t.as_str(), "NNX");
        assert_eq!(SejongTag::parse("JKB"), SejongTag::Jkb);
    }

    #[test]
    fn xpos_seq_round_trips() {
        let seq: XposSeq = "NNG+JKS".parse().unwrap();
        assert_eq!(seq.tags(), &[SejongTag::Nng, SejongTag::Jks]);
        assert_eq!(seq.to_string(), "NNG+JKS");
        assert!("".parse::<XposSeq>().is_err());
        assert!("NNG++JKS".parse::<XposSeq>().is_err());
    }

    #[test]
    fn upos_parses_all_and_rejects_others() {
        for t in UposTag::ALL {
            assert_eq!(t.as_str().parse::<UposTag>().unwrap(), t);
        }
        assert!("NOUNS".parse::<UposTag>().is_err());
    }
}
