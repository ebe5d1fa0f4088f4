#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use affect_mosaic::{parse_lexicon, DuplicatePolicy, Lexicon, Scale, SourceText, TextSpan, VadVector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use regex::Regex;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn sample_lexicon() -> Lexicon {
    let src = std::fs::read(data_dir().join("sample-vad.tsv")).unwrap();
    parse_lexicon(&src[..], Scale::UNIT, DuplicatePolicy::Reject).unwrap()
}

/// Every fixture text under data/fixtures, by file name.
pub fn fixture_texts() -> Vec<(String, String)> {
    let mut out: Vec<_> = std::fs::read_dir(data_dir().join("fixtures"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

pub const VOCAB_HIT: [&str; 8] = ["joy", "grief", "calm", "rage", "hope", "dread", "kind", "storm"];
pub const VOCAB_MISS: [&str; 8] = ["the", "table", "walked", "over", "seven", "blue", "and", "x-ray"];

/// Lexicon over `VOCAB_HIT` with random ratings.
pub fn synthetic_lexicon(seed: u64) -> Lexicon {
    let mut rng = StdRng::seed_from_u64(seed);
    let src: String = VOCAB_HIT
        .iter()
        .map(|w| {
            format!(
                "{w}\t{}\t{}\t{}\n",
                rng.random::<f64>(),
                rng.random::<f64>(),
                rng.random::<f64>()
            )
        })
        .collect();
    parse_lexicon(src.as_bytes(), Scale::UNIT, DuplicatePolicy::Reject).unwrap()
}

/// Random prose of at most `max_tokens` words with sentence and paragraph breaks.
pub fn synthetic_text(rng: &mut StdRng, max_tokens: usize) -> String {
    let n = rng.random_range(0..=max_tokens);
    let mut out = String::new();
    let mut sentence_start = true;
    for i in 0..n {
        let pool: &[&str] = if rng.random_bool(0.4) { &VOCAB_HIT } else { &VOCAB_MISS };
        let word = pool[rng.random_range(0..pool.len())];
        if i > 0 {
            out.push(' ');
        }
        if sentence_start {
            let mut cs = word.chars();
            let first = cs.next().unwrap().to_uppercase().collect::<String>();
            out.push_str(&first);
            out.push_str(cs.as_str());
        } else {
            out.push_str(word);
        }
        sentence_start = false;
        match rng.random_range(0..20) {
            0..=2 => {
                out.push(['.', '!', '?'][rng.random_range(0..3)]);
                sentence_start = true;
            }
            3 => {
                out.push_str(".\n\n");
                sentence_start = true;
            }
            4 => out.push(','),
            5 => out.push_str(" 12"),
            _ => {}
        }
    }
    out
}

/// Independent scorer: regex tokenization of each span's text, plain map
/// lookup, mean per group in text order.
pub struct BruteForce {
    words: HashMap<String, VadVector>,
    token: Regex,
}

impl BruteForce {
    pub fn new(lexicon: &Lexicon) -> Self {
        BruteForce {
            words: lexicon.entries().into_iter().map(|e| (e.term, e.vad)).collect(),
            token: Regex::new(r"\p{Alphabetic}+(?:['\x{2019}-]\p{Alphabetic}+)*").unwrap(),
        }
    }

    pub fn tokens<'a>(&self, text: &'a str) -> Vec<&'a str> {
        self.token.find_iter(text).map(|m| m.as_str()).collect()
    }

    /// (matched, total, mean) for the text under one span.
    pub fn score(&self, text: &str, span: TextSpan) -> (usize, usize, Option<[f64; 3]>) {
        let slice = SourceText::new(text).slice(span);
        let tokens = self.tokens(slice);
        let hits: Vec<[f64; 3]> = tokens
            .iter()
            .filter_map(|t| self.words.get(&t.to_lowercase()))
            .map(|v| v.to_array())
            .collect();
        let mean = (!hits.is_empty()).then(|| {
            let mut sum = [0.0; 3];
            for h in &hits {
                for k in 0..3 {
                    sum[k] += h[k];
                }
            }
            sum.map(|s| s / hits.len() as f64)
        });
        (hits.len(), tokens.len(), mean)
    }
}

pub fn max_abs_diff(a: [f64; 3], b: [f64; 3]) -> f64 {
    (0..3).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max)
}
