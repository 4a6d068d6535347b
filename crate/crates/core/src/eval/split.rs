use std::fmt::Write as _;

use num_rational::Ratio;

use crate::conllu::{Corpus, Sentence};
use crate::error::{Error, Result};
use crate::shuffle::permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSpec {
    /// Train, dev, test fractions; positive and summing to exactly 1.
    pub ratios: [Ratio<u64>; 3],
    pub seed: u64,
}

impl SplitSpec {
    /// From integer parts, e.g. `(8, 1, 1)`.
    pub fn from_parts(train: u64, dev: u64, test: u64, seed: u64) -> Result<SplitSpec> {
        if train == 0 || dev == 0 || test == 0 {
            return Err(Error::BadSplit(format!(
                "{train}:{dev}:{test} has a zero part"
            )));
        }
        let total = train + dev + test;
        Ok(SplitSpec {
            ratios: [
                Ratio::new(train, total),
                Ratio::new(dev, total),
                Ratio::new(test, total),
            ],
            seed,
        })
    }

    /// Parses `a:b:c`.
    pub fn parse(ratios: &str, seed: u64) -> Result<SplitSpec> {
        let parts: Vec<u64> = ratios
            .split(':')
            .map(|p| p.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::BadSplit(format!("{ratios:?} is not a:b:c")))?;
        match parts.as_slice() {
            [a, b, c] => SplitSpec::from_parts(*a, *b, *c, seed),
            _ => Err(Error::BadSplit(format!("{ratios:?} needs three parts"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let zero = Ratio::from_integer(0);
        if self.ratios.iter().any(|r| *r <= zero) {
            return Err(Error::BadSplit("ratios must be positive".into()));
        }
        if self.ratios.iter().copied().sum::<Ratio<u64>>() != Ratio::from_integer(1) {
            return Err(Error::BadSplit("ratios must sum to 1".into()));
        }
        Ok(())
    }

    /// Part sizes for `n` sentences: dev and test are floored, train takes
    /// the remainder.
    pub fn sizes(&self, n: usize) -> (usize, usize, usize) {
        let floor = |r: Ratio<u64>| (n as u128 * *r.numer() as u128 / *r.denom() as u128) as usize;
        let dev = floor(self.ratios[1]);
        let test = floor(self.ratios[2]);
        (n - dev - test, dev, test)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train: Corpus,
    pub dev: Corpus,
    pub test: Corpus,
    /// Original sentence index for each position of train, then dev, then
    /// test.
    pub order: Vec<usize>,
}

impl Split {
    /// One line per sentence: part name, original index, sentence label.
    pub fn manifest(&self, original: &Corpus, spec: &SplitSpec) -> String {
        let (tr, de, te) = spec.sizes(self.order.len());
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# seed\t{}\n# ratios\t{}:{}:{}\n# sizes\t{tr}\t{de}\t{te}\npart\tindex\tsent_id",
            spec.seed, spec.ratios[0], spec.ratios[1], spec.ratios[2]
        );
        for (pos, &idx) in self.order.iter().enumerate() {
            let part = if pos < tr {
                "train"
            } else if pos < tr + de {
                "dev"
            } else {
                "test"
            };
            let _ = writeln!(out, "{part}\t{idx}\t{}", original.sentence_label(idx));
        }
        out
    }
}

/// Seeded shuffle of the sentences cut into train/dev/test. See
/// [`crate::shuffle`] for the generator contract.
pub fn split(corpus: &Corpus, spec: &SplitSpec) -> Result<Split> {
    spec.validate()?;
    let n = corpus.sentences.len();
    let order = permutation(n, spec.seed);
    let (tr, de, _) = spec.sizes(n);
    let part = |range: &[usize], name: &str| Corpus {
        sentences: range
            .iter()
            .map(|&i| corpus.sentences[i].clone())
            .collect::<Vec<Sentence>>(),
        source: format!("{}#{name}", corpus.source),
    };
    Ok(Split {
        train: part(&order[..tr], "train"),
        dev: part(&order[tr..tr + de], "dev"),
        test: part(&order[tr + de..], "test"),
        order,
    })
}
