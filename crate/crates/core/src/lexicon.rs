//! Word-level valence/arousal/dominance ratings.
//!
//! A [`Lexicon`] is built once from a TSV file (`term<TAB>valence<TAB>arousal<TAB>dominance`)
//! and is read-only afterwards. Ratings are rescaled from the declared input
//! [`Scale`] onto the unit cube at parse time.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{LexiconError, ScaleError};

/// A point in the valence/arousal/dominance unit cube.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct VadVector {
    valence: f64,
    arousal: f64,
    dominance: f64,
}

impl VadVector {
    pub const NEUTRAL: VadVector = VadVector {
        valence: 0.5,
        arousal: 0.5,
        dominance: 0.5,
    };

    /// Returns `None` unless every component is a finite value in `[0, 1]`.
    pub fn new(valence: f64, arousal: f64, dominance: f64) -> Option<Self> {
        let ok = |x: f64| (0.0..=1.0).contains(&x);
        (ok(valence) && ok(arousal) && ok(dominance)).then_some(VadVector {
            valence,
            arousal,
            dominance,
        })
    }

    /// Builds a vector from an aggregate that is mathematically inside the cube
    /// but may sit an ulp outside after rounding.
    pub(crate) fn from_aggregate(valence: f64, arousal: f64, dominance: f64) -> Self {
        debug_assert!(valence.is_finite() && arousal.is_finite() && dominance.is_finite());
        VadVector {
            valence: valence.clamp(0.0, 1.0),
            arousal: arousal.clamp(0.0, 1.0),
            dominance: dominance.clamp(0.0, 1.0),
        }
    }

    pub fn valence(&self) -> f64 {
        self.valence
    }

    pub fn arousal(&self) -> f64 {
        self.arousal
    }

    pub fn dominance(&self) -> f64 {
        self.dominance
    }

    pub fn get(&self, axis: Axis) -> f64 {
        match axis {
            Axis::Valence => self.valence,
            Axis::Arousal => self.arousal,
            Axis::Dominance => self.dominance,
        }
    }

    /// Copy with one component replaced. `None` if `value` is outside `[0, 1]`.
    pub fn with(&self, axis: Axis, value: f64) -> Option<Self> {
        let mut out = *self;
        match axis {
            Axis::Valence => out.valence = value,
            Axis::Arousal => out.arousal = value,
            Axis::Dominance => out.dominance = value,
        }
        Self::new(out.valence, out.arousal, out.dominance)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.valence, self.arousal, self.dominance]
    }

    /// Euclidean distance from the neutral point.
    pub fn intensity(&self) -> f64 {
        let [v, a, d] = self.to_array();
        ((v - 0.5).powi(2) + (a - 0.5).powi(2) + (d - 0.5).powi(2)).sqrt()
    }
}

impl From<VadVector> for [f64; 3] {
    fn from(v: VadVector) -> Self {
        v.to_array()
    }
}

impl TryFrom<[f64; 3]> for VadVector {
    type Error = String;

    fn try_from([v, a, d]: [f64; 3]) -> Result<Self, Self::Error> {
        VadVector::new(v, a, d).ok_or_else(|| format!("VAD ({v}, {a}, {d}) outside unit cube"))
    }
}

/// One of the three emotion axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Valence,
    Arousal,
    Dominance,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Valence, Axis::Arousal, Axis::Dominance];

    pub fn name(self) -> &'static str {
        match self {
            Axis::Valence => "valence",
            Axis::Arousal => "arousal",
            Axis::Dominance => "dominance",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "valence" => Ok(Axis::Valence),
            "arousal" => Ok(Axis::Arousal),
            "dominance" => Ok(Axis::Dominance),
            other => Err(format!(
                "unknown axis {other:?}: expected valence, arousal or dominance"
            )),
        }
    }
}

/// Declared rating scale of a lexicon file, a closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scale {
    lo: f64,
    hi: f64,
}

impl Scale {
    pub const UNIT: Scale = Scale { lo: 0.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self, ScaleError> {
        if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
            return Err(ScaleError::EmptyRange { lo, hi });
        }
        Ok(Scale { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn normalize(&self, value: f64) -> Result<f64, ScaleError> {
        normalize_scale(value, self.lo, self.hi)
    }
}

impl Default for Scale {
    fn default() -> Self {
        Scale::UNIT
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl FromStr for Scale {
    type Err = ScaleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || ScaleError::Syntax(s.to_string());
        let (lo, hi) = s.split_once('-').ok_or_else(syntax)?;
        let lo: f64 = lo.trim().parse().map_err(|_| syntax())?;
        let hi: f64 = hi.trim().parse().map_err(|_| syntax())?;
        Scale::new(lo, hi)
    }
}

/// Affine map of `value` from `[lo, hi]` onto `[0, 1]`. Both bounds are accepted.
pub fn normalize_scale(value: f64, lo: f64, hi: f64) -> Result<f64, ScaleError> {
    if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
        return Err(ScaleError::EmptyRange { lo, hi });
    }
    if !(lo..=hi).contains(&value) {
        return Err(ScaleError::OutOfRange { value, lo, hi });
    }
    Ok(((value - lo) / (hi - lo)).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DuplicatePolicy {
    #[default]
    Reject,
    LastWins,
}

impl FromStr for DuplicatePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reject" => Ok(DuplicatePolicy::Reject),
            "last-wins" => Ok(DuplicatePolicy::LastWins),
            other => Err(format!(
                "unknown duplicate policy {other:?}: expected reject or last-wins"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexiconEntry {
    pub term: String,
    pub vad: VadVector,
}

/// Immutable term → [`VadVector`] lookup.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: HashMap<String, VadVector>,
    source_scale: Scale,
}

impl Lexicon {
    /// Builds a lexicon from already-normalized entries. Terms are case-folded.
    pub fn from_entries<I>(
        entries: I,
        source_scale: Scale,
        policy: DuplicatePolicy,
    ) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = LexiconEntry>,
    {
        let mut map = HashMap::new();
        for (i, entry) in entries.into_iter().enumerate() {
            let term = fold_term(&entry.term, i + 1)?;
            insert(&mut map, term, entry.vad, policy, i + 1)?;
        }
        Ok(Lexicon {
            entries: map,
            source_scale,
        })
    }

    pub fn lookup(&self, normalized_token: &str) -> Option<VadVector> {
        self.entries.get(normalized_token).copied()
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn source_scale(&self) -> Scale {
        self.source_scale
    }

    /// Entries sorted by term.
    pub fn entries(&self) -> Vec<LexiconEntry> {
        let mut out: Vec<_> = self
            .entries
            .iter()
            .map(|(term, vad)| LexiconEntry {
                term: term.clone(),
                vad: *vad,
            })
            .collect();
        out.sort_by(|a, b| a.term.cmp(&b.term));
        out
    }

    /// Re-emits the lexicon as unit-scale TSV with a header row, terms sorted.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("term\tvalence\tarousal\tdominance\n");
        for LexiconEntry { term, vad } in self.entries() {
            let [v, a, d] = vad.to_array();
            out.push_str(&format!("{term}\t{v}\t{a}\t{d}\n"));
        }
        out
    }
}

/// Parses TSV lexicon rows, rescaling ratings from `scale` to the unit interval.
///
/// `#` lines and blank lines are skipped. If the first non-comment row has a
/// non-numeric second field it is taken as a header.
pub fn parse_lexicon<R: BufRead>(
    source: R,
    scale: Scale,
    policy: DuplicatePolicy,
) -> Result<Lexicon, LexiconError> {
    let mut map = HashMap::new();
    let mut seen_data_row = false;

    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }

        let fields: Vec<&str> = line.split('\t').collect();
        if !seen_data_row {
            seen_data_row = true;
            if fields.get(1).is_some_and(|f| parse_number(f).is_none()) {
                continue;
            }
        }
        if fields.len() != 4 {
            return Err(LexiconError::Arity {
                line: line_no,
                found: fields.len(),
            });
        }

        let term = fold_term(fields[0], line_no)?;
        let mut components = [0.0; 3];
        for (slot, (raw, column)) in components
            .iter_mut()
            .zip(fields[1..].iter().zip(["valence", "arousal", "dominance"]))
        {
            let value = parse_number(raw).ok_or_else(|| LexiconError::Malformed {
                line: line_no,
                column,
                reason: format!("non-numeric rating {raw:?}"),
            })?;
            *slot = scale
                .normalize(value)
                .map_err(|e| LexiconError::Malformed {
                    line: line_no,
                    column,
                    reason: e.to_string(),
                })?;
        }
        let [v, a, d] = components;
        let vad = VadVector::new(v, a, d).expect("normalized ratings lie in the unit cube");
        insert(&mut map, term, vad, policy, line_no)?;
    }

    Ok(Lexicon {
        entries: map,
        source_scale: scale,
    })
}

fn parse_number(raw: &str) -> Option<f64> {
    raw.trim().parse::<f64>().ok().filter(|x| x.is_finite())
}

fn fold_term(raw: &str, line: usize) -> Result<String, LexiconError> {
    let term = raw.trim().to_lowercase();
    if term.is_empty() {
        return Err(LexiconError::Malformed {
            line,
            column: "term",
            reason: "empty term".into(),
        });
    }
    if term.chars().any(char::is_whitespace) {
        return Err(LexiconError::Malformed {
            line,
            column: "term",
            reason: format!("term {term:?} contains whitespace"),
        });
    }
    Ok(term)
}

fn insert(
    map: &mut HashMap<String, VadVector>,
    term: String,
    vad: VadVector,
    policy: DuplicatePolicy,
    line: usize,
) -> Result<(), LexiconError> {
    if policy == DuplicatePolicy::Reject && map.contains_key(&term) {
        return Err(LexiconError::Duplicate { line, term });
    }
    map.insert(term, vad);
    Ok(())
}
