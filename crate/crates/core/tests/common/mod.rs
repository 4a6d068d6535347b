#![allow(dead_code)]

use std::path::{Path, PathBuf};

use koalign::conllu::{parse_str, Corpus};
use koalign::shuffle::SeededRng;
use koalign::UposTag;

pub fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> Corpus {
    koalign::conllu::read_file(fixture_path(name)).expect("fixture parses")
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture readable")
}

/// Rows of a TSV fixture, header skipped.
pub fn tsv_rows(name: &str) -> Vec<Vec<String>> {
    fixture_text(name)
        .lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

/// (form, lemma column, xpos column)
const POOL: &[(&str, &str, &str)] = &[
    ("학교에", "학교+에", "NNG+JKB"),
    ("집에서", "집+에서", "NNG+JKB"),
    ("곳에", "곳+에", "NNB+JKB"),
    ("이", "이", "MM"),
    ("정말", "정말", "MAG"),
    ("빠르게", "빠르+게", "VA+EC"),
    ("좋지", "좋+지", "VA+EC"),
    ("예쁘다", "예쁘+다", "VA+EF"),
    ("예쁜", "예쁘+ㄴ", "VA+ETM"),
    ("책을", "책+을", "NNG+JKO"),
    ("책", "책", "NNG"),
    ("학생이", "학생+이", "NNG+JKS"),
    ("내가", "나+가", "NP+JKS"),
    ("나도", "나+도", "NP+JX"),
    ("먹고", "먹+고", "VV+EC"),
    ("가고", "가+고", "VV+EC"),
    ("하게", "하+게", "VV+EC"),
    ("먹는", "먹+는", "VV+ETM"),
    ("먹을", "먹+을", "VV+ETM"),
    ("수", "수", "NNB"),
    ("싶다", "싶+다", "VX+EF"),
    ("않다", "않+다", "VX+EF"),
    ("있다", "있+다", "VX+EF"),
    ("되다", "되+다", "VX+EF"),
    ("되었다", "되+었+다", "VV+EP+EF"),
    ("싶어서", "싶+어서", "VX+EC"),
    ("먹어보다", "먹+어+보+다", "VV+EC+VX+EF"),
    ("공부했다", "공부+하+었+다", "NNG+XSV+EP+EF"),
    ("학생이다", "학생+이+다", "NNG+VCP+EF"),
    ("먹기를", "먹+기+를", "VV+ETN+JKO"),
    ("서울", "서울", "NNP"),
    ("3", "3", "SN"),
    ("셋", "셋", "NR"),
    ("아", "아", "IC"),
    ("그리고", "그리고", "MAJ"),
    (".", ".", "SF"),
    (",", ",", "SP"),
    ("+", "+", "SW"),
    ("C++를", "C\\+\\++를", "SL+JKO"),
    ("ㅋㅋ", "ㅋㅋ", "ZZ"),
];

const MISC: &[&str] = &["_", "SpaceAfter=No", "Gloss=x|SpaceAfter=No", "Translit"];

fn pick<'a, T>(rng: &mut SeededRng, items: &'a [T]) -> &'a T {
    &items[rng.below(items.len() as u64) as usize]
}

fn random_upos(rng: &mut SeededRng) -> String {
    let k = rng.below(UposTag::ALL.len() as u64 + 1) as usize;
    UposTag::ALL
        .get(k)
        .map_or("_".to_string(), |u| u.to_string())
}

/// A CoNLL-U text that passes blocking validation. Some sentences carry no
/// dependency layer; some carry a multiword range or an empty node.
pub fn random_corpus_text(seed: u64, sentences: usize) -> String {
    let mut rng = SeededRng::new(seed);
    let mut out = String::new();
    for s in 0..sentences {
        let n = 1 + rng.below(7) as u32;
        let deps = rng.below(5) != 0;
        let root = 1 + rng.below(u64::from(n)) as u32;
        let rows: Vec<&(&str, &str, &str)> = (0..n).map(|_| pick(&mut rng, POOL)).collect();
        let text: Vec<&str> = rows.iter().map(|r| r.0).collect();
        out.push_str(&format!(
            "# sent_id = r{seed}-{s}\n# text = {}\n",
            text.join(" ")
        ));
        if rng.below(6) == 0 {
            out.push_str("# note = generated\n");
        }
        let range_at =
            (n >= 2 && rng.below(8) == 0).then(|| 1 + rng.below(u64::from(n - 1)) as u32);
        for (i, (form, lemma, xpos)) in (1u32..).zip(rows) {
            if range_at == Some(i) {
                out.push_str(&format!("{i}-{}\t{form}_\t_\t_\t_\t_\t_\t_\t_\t_\n", i + 1));
            }
            let (head, rel) = if !deps {
                ("_".to_string(), "_".to_string())
            } else if i == root {
                ("0".into(), "root".into())
            } else {
                let rel = *pick(
                    &mut rng,
                    &["aux", "nsubj", "obj", "obl:tmod", "acl", "punct"],
                );
                (root.to_string(), rel.to_string())
            };
            let upos = random_upos(&mut rng);
            let misc = pick(&mut rng, MISC);
            out.push_str(&format!(
                "{i}\t{form}\t{lemma}\t{upos}\t{xpos}\t_\t{head}\t{rel}\t_\t{misc}\n"
            ));
            if rng.below(12) == 0 {
                out.push_str(&format!("{i}.1\t_\t_\t_\t_\t_\t_\t_\t{root}:dep\t_\n"));
            }
        }
        out.push('\n');
    }
    out
}

pub fn random_corpus(seed: u64, sentences: usize) -> Corpus {
    parse_str(&random_corpus_text(seed, sentences), "random").expect("generated corpus parses")
}

/// Changes heads, labels and tags of random tokens; tokenization is kept.
pub fn perturb(c: &Corpus, seed: u64) -> Corpus {
    let mut rng = SeededRng::new(seed);
    let mut out = c.clone();
    for s in &mut out.sentences {
        let n = s.plain_tokens().count() as u64;
        for t in s.tokens.iter_mut().filter(|t| t.is_plain()) {
            match rng.below(6) {
                0 => t.head = Some(rng.below(n + 1) as u32),
                1 => {
                    t.deprel =
                        Some(["nsubj", "obj", "obl", "aux", "root"][rng.below(5) as usize].into())
                }
                2 => t.upos = Some(UposTag::ALL[rng.below(17) as usize]),
                3 => t.lemma.reverse(),
                _ => {}
            }
        }
    }
    out
}
