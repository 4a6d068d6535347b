use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context as _;
use koalign::align::{align_corpus, change_log_tsv, delta_report, seed_table as builtin_table};
use koalign::align::{MappingTable, RuleConfig};
use koalign::conllu::{read_file, serialize};
use koalign::eval::{score, SplitSpec};
use koalign::miner::{coverage, mine_parallel};
use num_rational::Ratio;

use crate::failure::UserError;

pub fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents)
        .map_err(koalign::Error::from)
        .with_context(|| format!("writing {}", path.display()))
}

fn read_corpus(path: &Path) -> anyhow::Result<koalign::conllu::Corpus> {
    read_file(path).with_context(|| format!("reading {}", path.display()))
}

/// `out.conllu` -> `out.<suffix>`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    path.with_extension(suffix)
}

/// Parses `n/d` or a bare integer. Decimals are rejected so the recorded
/// value is exact.
pub fn parse_fraction(s: &str) -> anyhow::Result<Ratio<u64>> {
    let bad = || UserError::new("BAD_ARGS", format!("{s:?} is not a fraction like 1/10"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<u64>(), d.trim().parse::<u64>()),
        None => (s.trim().parse::<u64>(), Ok(1)),
    };
    match (n, d) {
        (Ok(n), Ok(d)) if d > 0 => Ok(Ratio::new(n, d)),
        _ => Err(bad().into()),
    }
}

pub fn load_config(path: Option<&Path>) -> anyhow::Result<RuleConfig> {
    let Some(path) = path else {
        return Ok(RuleConfig::default());
    };
    let text = fs::read_to_string(path)
        .map_err(koalign::Error::from)
        .with_context(|| format!("reading {}", path.display()))?;
    let config: RuleConfig = toml::from_str(&text)
        .map_err(|e| koalign::Error::BadConfig(e.message().to_string()))
        .with_context(|| format!("parsing {}", path.display()))?;
    config.validate()?;
    Ok(config)
}

pub fn load_table(path: Option<&Path>) -> anyhow::Result<MappingTable> {
    match path {
        None => Ok(builtin_table()),
        Some(p) => MappingTable::load(p).with_context(|| format!("reading {}", p.display())),
    }
}

pub fn mine(
    input: &Path,
    output: &Path,
    threshold: u64,
    examples: usize,
    coverage_path: Option<&Path>,
) -> anyhow::Result<()> {
    let corpus = read_corpus(input)?;
    let table = mine_parallel(&corpus, examples)?;
    let report = coverage(&table, threshold)?;
    write(output, &table.to_tsv())?;
    match coverage_path {
        Some(p) => write(p, &report.to_tsv()),
        None => {
            print!("{}", report.to_tsv());
            Ok(())
        }
    }
}

pub struct AlignPaths {
    pub input: PathBuf,
    pub output: PathBuf,
    pub table: Option<PathBuf>,
    pub config: Option<PathBuf>,
    pub changes: PathBuf,
    pub delta: PathBuf,
}

pub fn align(p: &AlignPaths) -> anyhow::Result<()> {
    let config = load_config(p.config.as_deref())?;
    let table = load_table(p.table.as_deref())?;
    let corpus = read_corpus(&p.input)?;
    let (aligned, changes) = align_corpus(&corpus, &table, &config)?;
    let delta = delta_report(&corpus, &aligned)?;
    write(&p.output, &serialize(&aligned))?;
    write(&p.changes, &change_log_tsv(&changes))?;
    write(&p.delta, &delta.to_tsv())?;
    println!(
        "changed\t{}\ntokens\t{}\ntable_version\t{}",
        changes.len(),
        corpus.plain_token_count(),
        table.version()
    );
    Ok(())
}

pub fn eval(gold: &Path, system: &Path, json: bool) -> anyhow::Result<()> {
    let scores = score(&read_corpus(gold)?, &read_corpus(system)?)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&scores)?);
    } else {
        print!("{}", scores.to_tsv());
    }
    Ok(())
}

pub fn split(input: &Path, out_dir: &Path, seed: u64, ratios: &str) -> anyhow::Result<()> {
    let spec = SplitSpec::parse(ratios, seed)?;
    let corpus = read_corpus(input)?;
    let parts = koalign::eval::split(&corpus, &spec)?;
    fs::create_dir_all(out_dir)
        .map_err(koalign::Error::from)
        .with_context(|| format!("creating {}", out_dir.display()))?;
    for (name, part) in [
        ("train", &parts.train),
        ("dev", &parts.dev),
        ("test", &parts.test),
    ] {
        write(&out_dir.join(format!("{name}.conllu")), &serialize(part))?;
    }
    write(&out_dir.join("split.tsv"), &parts.manifest(&corpus, &spec))?;
    println!(
        "train\t{}\ndev\t{}\ntest\t{}\nseed\t{seed}",
        parts.train.sentences.len(),
        parts.dev.sentences.len(),
        parts.test.sentences.len()
    );
    Ok(())
}

pub fn report(before: &Path, after: &Path, output: Option<&Path>) -> anyhow::Result<()> {
    let delta = delta_report(&read_corpus(before)?, &read_corpus(after)?)?;
    match output {
        Some(p) => write(p, &delta.to_tsv()),
        None => {
            print!("{}", delta.to_tsv());
            Ok(())
        }
    }
}

pub fn seed_table(output: &Path) -> anyhow::Result<()> {
    builtin_table()
        .save(output)
        .with_context(|| format!("writing {}", output.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions() {
        assert_eq!(parse_fraction("1/10").unwrap(), Ratio::new(1, 10));
        assert_eq!(parse_fraction("1").unwrap(), Ratio::from_integer(1));
        assert!(parse_fraction("0.1").is_err());
        assert!(parse_fraction("1/0").is_err());
    }

    #[test]
    fn sibling_paths() {
        assert_eq!(
            sibling(Path::new("out/a.conllu"), "changes.tsv"),
            PathBuf::from("out/a.changes.tsv")
        );
    }
}
