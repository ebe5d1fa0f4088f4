//! Aggregation of word ratings into segment and document scores.

use crate::error::InvariantError;
use crate::lexicon::{Lexicon, VadVector};
use crate::segmenter::{tokenize_and_segment, Granularity, Segment, Token};

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentScore {
    pub segment: Segment,
    /// Mean of the contributors; `None` when no token matched.
    pub vad: Option<VadVector>,
    pub matched: usize,
    pub total: usize,
    /// Matched tokens in text order, one entry per occurrence.
    pub contributors: Vec<(String, VadVector)>,
}

/// Running component sums for a mean over VAD vectors.
#[derive(Debug, Clone, Copy, Default)]
struct VadSum {
    sum: [f64; 3],
    weight: f64,
}

impl VadSum {
    fn add(&mut self, vad: VadVector, weight: f64) {
        for (s, x) in self.sum.iter_mut().zip(vad.to_array()) {
            *s += weight * x;
        }
        self.weight += weight;
    }

    fn mean(&self) -> Option<VadVector> {
        (self.weight > 0.0).then(|| {
            let [v, a, d] = self.sum.map(|s| s / self.weight);
            VadVector::from_aggregate(v, a, d)
        })
    }
}

/// Scores the tokens of one segment.
pub fn score_segment(segment: Segment, tokens: &[Token], lexicon: &Lexicon) -> SegmentScore {
    let mut acc = VadSum::default();
    let contributors: Vec<(String, VadVector)> = tokens
        .iter()
        .filter_map(|t| lexicon.lookup(&t.normalized).map(|vad| (t.normalized.clone(), vad)))
        .inspect(|(_, vad)| acc.add(*vad, 1.0))
        .collect();
    SegmentScore {
        segment,
        vad: acc.mean(),
        matched: contributors.len(),
        total: tokens.len(),
        contributors,
    }
}

/// One score per segment of `text` at `granularity`, in text order.
pub fn score_all(text: &str, granularity: Granularity, lexicon: &Lexicon) -> Vec<SegmentScore> {
    let (tokens, segments) = tokenize_and_segment(text, granularity);
    score_segments(segments, &tokens, lexicon)
}

/// Scores pre-computed segments against the token list they index into.
pub fn score_segments(
    segments: Vec<Segment>,
    tokens: &[Token],
    lexicon: &Lexicon,
) -> Vec<SegmentScore> {
    segments
        .into_iter()
        .map(|seg| {
            let range = seg.token_range.clone();
            score_segment(seg, &tokens[range], lexicon)
        })
        .collect()
}

/// Document-level mean over every contributor, i.e. the matched-weighted
/// mean of segment scores. `None` if nothing matched.
pub fn weighted_summary(scores: &[SegmentScore]) -> Option<VadVector> {
    let mut acc = VadSum::default();
    for score in scores {
        if let Some(vad) = score.vad {
            acc.add(vad, score.matched as f64);
        }
    }
    acc.mean()
}

/// Rolls fine-grained scores up into coarser segments without re-tokenizing.
///
/// Both inputs must be in text order and every fine span must lie inside
/// exactly one coarse span.
pub fn reaggregate(
    fine: &[SegmentScore],
    coarse_segments: Vec<Segment>,
) -> Result<Vec<SegmentScore>, InvariantError> {
    let mut out = Vec::with_capacity(coarse_segments.len());
    let mut next = 0;
    for segment in coarse_segments {
        let mut acc = VadSum::default();
        let mut matched = 0;
        let mut total = 0;
        let mut contributors = Vec::new();
        while let Some(f) = fine.get(next) {
            if !segment.span.contains(&f.segment.span) {
                if f.segment.span.start < segment.span.end {
                    return Err(InvariantError(format!(
                        "fine segment {} not contained in coarse segment {}",
                        f.segment.span, segment.span
                    )));
                }
                break;
            }
            if let Some(vad) = f.vad {
                acc.add(vad, f.matched as f64);
            }
            matched += f.matched;
            total += f.total;
            contributors.extend(f.contributors.iter().cloned());
            next += 1;
        }
        out.push(SegmentScore {
            segment,
            vad: acc.mean(),
            matched,
            total,
            contributors,
        });
    }
    if let Some(f) = fine.get(next) {
        return Err(InvariantError(format!(
            "fine segment {} lies outside every coarse segment",
            f.segment.span
        )));
    }
    Ok(out)
}
