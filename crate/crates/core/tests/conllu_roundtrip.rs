mod common;

use koalign::conllu::{parse_str, serialize, validate, IssueCode};
use proptest::prelude::*;

#[test]
fn fixtures_round_trip_byte_for_byte() {
    for name in [
        "table1.conllu",
        "learner.conllu",
        "context_rules.conllu",
        "delta.conllu",
        "eval_gold.conllu",
    ] {
        let text = common::fixture_text(name);
        let corpus = parse_str(&text, name).unwrap();
        assert_eq!(serialize(&corpus), text, "{name}");
        assert!(
            validate(&corpus).is_empty(),
            "{name}: {:?}",
            validate(&corpus)
        );
    }
}

#[test]
fn unknown_tag_is_reported_but_not_blocking() {
    let c = parse_str("1\tㅋㅋ\tㅋㅋ\tX\tZZ\t_\t0\troot\t_\t_\n\n", "t").unwrap();
    let issues = validate(&c);
    assert_eq!(issues.len(), 1);
    assert_eq!(issues[0].code, IssueCode::UnknownTag);
    assert!(!issues[0].code.is_blocking());
}

#[test]
fn crlf_input_parses_like_lf() {
    let lf = common::fixture_text("context_rules.conllu");
    let crlf = lf.replace('\n', "\r\n");
    assert_eq!(
        parse_str(&crlf, "t").unwrap().sentences,
        parse_str(&lf, "t").unwrap().sentences
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_corpora_round_trip(seed in any::<u64>(), n in 1usize..12) {
        let text = common::random_corpus_text(seed, n);
        let corpus = parse_str(&text, "r").unwrap();
        prop_assert_eq!(serialize(&corpus), text);
        prop_assert_eq!(parse_str(&serialize(&corpus), "r").unwrap(), corpus);
    }

    #[test]
    fn generated_corpora_have_no_blocking_issues(seed in any::<u64>()) {
        let corpus = common::random_corpus(seed, 8);
        prop_assert!(validate(&corpus).iter().all(|i| !i.code.is_blocking()));
    }
}
