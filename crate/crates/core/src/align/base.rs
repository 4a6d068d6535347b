//! Tag-level defaults: the base XPOS-to-UPOS map, head-morpheme selection,
//! and the sequence-only fallback used for sub-threshold constructions.

use crate::tagset::{SejongTag, UposTag};

/// UPOS category of a single Sejong tag.
pub fn base_upos(tag: &SejongTag) -> UposTag {
    use SejongTag::*;
    match tag {
        Nng | Nnb | Nf | Xsn => UposTag::NOUN,
        Nnp => UposTag::PROPN,
        Nr | Sn => UposTag::NUM,
        Np => UposTag::PRON,
        Vv | Nv | Xsv => UposTag::VERB,
        Va | Vcp | Vcn | Xsa => UposTag::ADJ,
        Vx => UposTag::AUX,
        Mm => UposTag::DET,
        Mag | Maj => UposTag::ADV,
        Ic => UposTag::INTJ,
        Jks | Jkg | Jko | Jkb | Jkc | Jkv | Jkq | Jx => UposTag::ADP,
        Ep | Ef | Ec | Etn | Etm => UposTag::PART,
        Sf | Se | Sp | So | Ss => UposTag::PUNCT,
        Sw => UposTag::SYM,
        Xpn | Xr | Sh | Sl | Na | Unknown(_) => UposTag::X,
    }
}

fn is_content(tag: &SejongTag) -> bool {
    use SejongTag::*;
    matches!(
        tag,
        Nng | Nnp
            | Nnb
            | Nr
            | Np
            | Vv
            | Va
            | Vx
            | Vcp
            | Vcn
            | Mm
            | Mag
            | Maj
            | Ic
            | Xr
            | Sl
            | Sh
            | Sn
            | Nf
            | Nv
    )
}

/// Tags that make the eojeol a predicate when they are its head.
pub(crate) fn is_predicative(tag: &SejongTag) -> bool {
    use SejongTag::*;
    matches!(tag, Vv | Va | Vx | Vcp | Vcn | Xsv | Xsa | Nv)
}

/// Index of the morpheme whose category decides the eojeol's UPOS.
///
/// This is the last content morpheme, with three adjustments:
/// - XSV, XSA and XSN take the head themselves, since they change category
///   (공부+하+다 heads at 하);
/// - ETN takes the head from a predicate, nominalizing it;
/// - VX does not take the head from a predicate it follows inside one
///   eojeol (먹+어+보+다 stays headed by 먹).
///
/// Returns 0 when no morpheme qualifies.
pub fn head_morpheme(xpos: &[SejongTag]) -> usize {
    let mut head: Option<usize> = None;
    for (i, tag) in xpos.iter().enumerate() {
        let current = head.map(|h| &xpos[h]);
        let takes = match tag {
            SejongTag::Xsv | SejongTag::Xsa | SejongTag::Xsn => true,
            SejongTag::Etn => current.is_some_and(is_predicative),
            SejongTag::Vx => !current.is_some_and(is_predicative),
            t => is_content(t),
        };
        if takes {
            head = Some(i);
        }
    }
    head.unwrap_or(0)
}

/// Category contributed by the head morpheme. Same as [`base_upos`] except
/// that a nominalizing ETN head yields NOUN.
pub(crate) fn head_category(tag: &SejongTag) -> UposTag {
    match tag {
        SejongTag::Etn => UposTag::NOUN,
        t => base_upos(t),
    }
}

/// Tags whose eojeol counts as nominal for case-particle purposes.
pub(crate) fn is_nominal_head(tag: &SejongTag) -> bool {
    use SejongTag::*;
    tag.is_nominal() || matches!(tag, Xsn | Etn | Nf)
}

/// Adverbial-postposition eojeol: a nominal head followed by a JKB.
pub(crate) fn nominal_with_jkb(xpos: &[SejongTag], head: usize) -> bool {
    is_nominal_head(&xpos[head]) && xpos[head + 1..].contains(&SejongTag::Jkb)
}

/// Sequence-only UPOS for an eojeol, applied in order:
/// punctuation, then the sequence patterns below, then the head category.
///
/// Patterns: a nominal head with an adverbial postposition gives ADP; an
/// adjective head immediately followed by a final connective ending gives
/// ADV (빠르+게).
pub fn default_upos(xpos: &[SejongTag]) -> UposTag {
    if xpos.is_empty() {
        return UposTag::X;
    }
    if xpos.iter().all(SejongTag::is_punctuation) {
        return UposTag::PUNCT;
    }
    if xpos
        .iter()
        .all(|t| t.is_punctuation() || *t == SejongTag::Sw)
    {
        return UposTag::SYM;
    }
    let head = head_morpheme(xpos);
    if nominal_with_jkb(xpos, head) {
        return UposTag::ADP;
    }
    if matches!(xpos[head], SejongTag::Va | SejongTag::Xsa)
        && head + 2 == xpos.len()
        && xpos[head + 1] == SejongTag::Ec
    {
        return UposTag::ADV;
    }
    head_category(&xpos[head])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagset::XposSeq;

    fn seq(s: &str) -> Vec<SejongTag> {
        s.parse::<XposSeq>().unwrap().0
    }

    #[test]
    fn base_map_examples() {
        assert_eq!(base_upos(&SejongTag::Nng), UposTag::NOUN);
        assert_eq!(base_upos(&SejongTag::Mag), UposTag::ADV);
        assert_eq!(base_upos(&SejongTag::Mm), UposTag::DET);
        assert_eq!(base_upos(&SejongTag::Nnp), UposTag::PROPN);
        assert_eq!(base_upos(&SejongTag::parse("ZZ")), UposTag::X);
    }

    #[test]
    fn base_map_is_total() {
        for t in SejongTag::ALL {
            let _ = base_upos(t);
        }
    }

    #[test]
    fn head_examples() {
        assert_eq!(head_morpheme(&seq("NNG+JKS")), 0);
        assert_eq!(head_morpheme(&seq("MAG")), 0);
        assert_eq!(head_morpheme(&seq("NNG+XSV+EF")), 1);
        assert_eq!(head_morpheme(&seq("VV+EC+VX+EF")), 0);
        assert_eq!(head_morpheme(&seq("VV+ETN+JKO")), 1);
        assert_eq!(head_morpheme(&seq("XPN+NNG+JKS")), 1);
        assert_eq!(head_morpheme(&seq("NNG+VCP+EF")), 1);
        assert_eq!(head_morpheme(&seq("JKS+EF")), 0);
    }

    #[test]
    fn default_examples() {
        assert_eq!(default_upos(&seq("VA+EC")), UposTag::ADV);
        assert_eq!(default_upos(&seq("SF")), UposTag::PUNCT);
        assert_eq!(default_upos(&seq("SS+SF")), UposTag::PUNCT);
        assert_eq!(default_upos(&seq("SW")), UposTag::SYM);
        assert_eq!(default_upos(&seq("NP+JX")), UposTag::PRON);
        assert_eq!(default_upos(&seq("NNG+JKB")), UposTag::ADP);
        assert_eq!(default_upos(&seq("NNG+JKB+JX")), UposTag::ADP);
        assert_eq!(default_upos(&seq("NNG+XSV+EF")), UposTag::VERB);
        assert_eq!(default_upos(&seq("XR+XSA+ETM")), UposTag::ADJ);
        assert_eq!(default_upos(&seq("VV+ETN+JKO")), UposTag::NOUN);
        assert_eq!(default_upos(&seq("NNG+VCP+EF")), UposTag::ADJ);
        assert_eq!(default_upos(&seq("VA+EP+EC")), UposTag::ADJ);
        assert_eq!(default_upos(&seq("VV+EC+VX+EF")), UposTag::VERB);
        assert_eq!(default_upos(&seq("VX+EC")), UposTag::AUX);
    }
}
