//! End-to-end analysis: tokenize, segment, score, map to color.

use crate::affect::score_segments;
use crate::colormap::MappingConfig;
use crate::lexicon::Lexicon;
use crate::render::AnalysisResult;
use crate::segmenter::{tokenize_and_segment, Granularity};

pub fn analyze(
    text: &str,
    granularity: Granularity,
    lexicon: &Lexicon,
    cfg: &MappingConfig,
) -> AnalysisResult {
    let (tokens, segments) = tokenize_and_segment(text, granularity);
    let scores = score_segments(segments, &tokens, lexicon);
    AnalysisResult::from_scores(text.chars().count(), granularity, &scores, cfg)
}
